use std::process::{Command, Output};

use hyposhift::exact_linalg::{parse_rational, rat};
use hyposhift::Rational;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyposhift"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn frac(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

#[test]
fn det_hilbert_examples() {
    let o = run(&["det-hilbert", "--k", "2", "--x", "1", "--h", "1", "--oracle"]);
    assert_eq!((stdout(&o).trim(), code(&o)), ("1/2160 MATCH", 0));
    let o = run(&["det-hilbert", "--k", "1", "--x", "1", "--h", "1"]);
    assert_eq!(stdout(&o).trim(), "1/12");
    let o = run(&["det-hilbert", "--k", "1", "--x", "0", "--h", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("x must be positive"));
}

#[test]
fn decimals_only_on_request() {
    let o = run(&["det-hilbert", "--k", "2", "--x", "1", "--h", "1", "--decimal", "6"]);
    assert_eq!(stdout(&o).trim(), "1/2160 = 0.000463");
    // 1/8 = 0.125 rounds half to even
    let o = run(&["psd", "1/8", "--decimal", "2"]);
    assert!(stdout(&o).contains("det 1/8 = 0.12"), "{}", stdout(&o));
    let o = run(&["det-hilbert", "--k", "1", "--x", "0.5", "--h", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("decimal notation"));
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "--family", "kappa", "--kappa2", "9025/10257", "--k", "2", "--h", "9"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(code(&o), 0);
    assert!(lines[0].starts_with("original: NOT H2 (threshold^2 9/13)"), "{out}");
    assert!(lines[1].starts_with("power (9,1): H2 (threshold^2 9025/10257, boundary)"), "{out}");

    let o = run(&["classify", "--family", "s1", "--x2", "3/4", "--y2", "1/2", "--a2", "1/2"]);
    let out = stdout(&o);
    assert!(out.contains("every power: H2 = Hinf (") && out.contains("f2 = 0"), "{out}");

    let o = run(&["classify", "--family", "classA", "--p", "1/6", "--q", "1/3", "--y2", "1/2", "--a2", "1/2", "--k", "inf"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("original: NOT Hinf (threshold^2 1/3)"), "{}", stdout(&o));

    let o = run(&["classify", "--family", "kappa", "--kappa2", "1"]);
    assert_eq!(code(&o), 1);
    let o = run(&["classify", "--family", "nope"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn threshold_values() {
    let o = run(&["threshold", "g", "--h", "2"]);
    assert_eq!(stdout(&o).trim(), "G(h=2)^2 = 63/68");
    let o = run(&["threshold", "h2_21", "--a2", "1/2"]);
    assert_eq!(stdout(&o).trim(), "h2_21(a^2=1/2)^2 = 450/611");
    let o = run(&["threshold", "power", "--k", "2", "--h", "9", "--decimal", "6"]);
    let out = stdout(&o);
    assert!(out.contains("= 9025/10257 = 0.879887") && out.contains("= 0.938023"), "{out}");
    assert_eq!(code(&run(&["threshold", "zzz", "--a2", "1/2"])), 1);
}

#[test]
fn psd_command() {
    let out = stdout(&run(&["psd", "2,1;1,2"]));
    assert_eq!(out, "PSD\ndet 3\nleading minors 2, 3\n");
    let out = stdout(&run(&["psd", "1,2;2,1"]));
    assert!(out.starts_with("NOT PSD"));
    assert_eq!(code(&run(&["psd", "1,2;3,4"])), 1);
}

const KAPPA_SWEEP: [&str; 14] = [
    "sweep", "--family", "kappa", "--vary", "kappa2", "--start", "17/20", "--stop", "19/20", "--step", "1/100",
    "--tests", "H1,H1@2", "--kappa2",
];

#[test]
fn sweep_flips_at_known_fractions() {
    let mut args = KAPPA_SWEEP.to_vec();
    args.push("1/2");
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    let (kc, h1, p1) = (column(&header, "kappa2"), column(&header, "H1"), column(&header, "H1@2:1"));
    let mut saw = [false; 4];
    for row in &rows {
        let k = frac(&row[kc]);
        assert_eq!(row[h1] == "true", k <= rat(20, 23));
        assert_eq!(row[p1] == "true", k <= rat(63, 68));
        saw[(row[h1] == "true") as usize] = true;
        saw[2 + (row[p1] == "true") as usize] = true;
    }
    assert!(saw.iter().all(|&b| b));
    assert_eq!(rows[0][column(&header, "H1_threshold2")], "20/23");
}

#[test]
fn sweep_two_one_thresholds_ordered() {
    let o = run(&[
        "sweep", "--family", "kappa", "--kappa2", "1/2", "--vary", "a2", "--start", "1/100", "--stop", "1/2", "--step",
        "1/100", "--tests", "H2,H2@2:1",
    ]);
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 50);
    let (a, b) = (column(&header, "H2_threshold2"), column(&header, "H2@2:1_threshold2"));
    for row in &rows {
        assert!(frac(&row[a]) < frac(&row[b]), "{row:?}");
    }
}

#[test]
fn sweep_single_point_and_json() {
    let base = [
        "sweep", "--family", "s1", "--x2", "3/4", "--y2", "1/2", "--a2", "1/2", "--vary", "y2", "--start", "1/2",
        "--stop", "1/2", "--step", "1/10", "--tests", "H1,H2",
    ];
    let o = run(&base);
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&json_args))).unwrap();
    let obj = v.as_array().unwrap()[0].as_object().unwrap();
    let keys: Vec<&String> = obj.keys().collect();
    assert_eq!(keys, header.iter().collect::<Vec<_>>());
    assert_eq!(obj["H2"], serde_json::Value::Bool(true));
    assert_eq!(obj["H1_threshold2"], serde_json::Value::Null);
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let args = [
        "sweep", "--family", "kappa", "--kappa2", "1/2", "--vary", "kappa2", "--start", "1/100", "--stop", "99/100",
        "--step", "1/100", "--tests", "H1,H3,H2@3,Hinf@2:2",
    ];
    let one = run_env(&args, &[("HYPOSHIFT_THREADS", "1")]);
    let four = run_env(&args, &[("HYPOSHIFT_THREADS", "4")]);
    let again = run_env(&args, &[("HYPOSHIFT_THREADS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    assert_eq!(code(&run_env(&args, &[("HYPOSHIFT_THREADS", "zero")])), 1);
}

#[test]
fn sweep_rejects_bad_specs() {
    let mut args = KAPPA_SWEEP.to_vec();
    args.extend(["1/2", "--step", "0"]);
    assert_eq!(code(&run(&args)), 1);
    let o = run(&["sweep", "--family", "kappa", "--vary", "a2", "--start", "1", "--stop", "1/2", "--step", "1/10", "--tests", "H1", "--kappa2", "1/2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# kappa member\nfamily = kappa\nkappa2 = 9025/10257\nk = 2\nh = 9\n").unwrap();
    let conf = conf.to_str().unwrap();
    let o = run(&["classify", "--config", conf]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("power (9,1): H2 (threshold^2 9025/10257, boundary)"));
    assert!(stderr(&o).is_empty());

    let o = run(&["classify", "--config", conf, "--h", "2"]);
    assert!(stdout(&o).contains("power (2,1): NOT H2"), "{}", stdout(&o));
    assert!(stderr(&o).contains("--h 2 overrides h = 9"), "{}", stderr(&o));

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = red\n").unwrap();
    let o = run(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("unknown key"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("det.txt");
    let o = run(&["det-hilbert", "--k", "1", "--x", "1", "--h", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1/12\n");
}

#[test]
fn verify_filters_and_reports() {
    let o = run(&["verify", "--only", "hilbert"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 4);
    assert!(out.lines().all(|l| !l.starts_with("[FAIL]")));
    assert!(out.contains("4 passed, 0 failed"));
    assert_eq!(code(&run(&["verify", "--only", "nothing"])), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["det-hilbert", "--k"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
