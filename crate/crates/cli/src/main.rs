use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use hyposhift::exact_linalg::{det, is_psd, leading_minors, parse_rational, Rational, SymMatrix};
use hyposhift::hilbert::{build_generalized_hilbert, det_generalized_hilbert, GenHilbertParams};
use hyposhift::regression::{select, GROUPS};
use hyposhift::shift_model::{FamilyParams, Property};

mod args;
mod eval;
mod settings;
mod sweep;

use args::{Cli, Command};
use eval::{evaluate, family_from, number, parse_property, render_threshold, render_verdict, render_verdict_with, s1_margin, TestSpec};
use settings::Settings;

/// Exit status for a failed oracle comparison or regression check.
const MISMATCH: u8 = 2;

struct Report {
    text: String,
    status: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, status: 0 }
    }
}

fn det_hilbert(s: &Settings, oracle: bool) -> Result<Report> {
    let k = s.count("k")?.context("missing --k")?;
    let params = GenHilbertParams::new(k, s.require_rational("x")?, s.require_rational("h")?)?;
    let d = det_generalized_hilbert(&params);
    let mut text = number(&d, s.decimal()?);
    let mut status = 0;
    if oracle {
        let brute = det(&build_generalized_hilbert(&params));
        if brute == d {
            text.push_str(" MATCH");
        } else {
            text.push_str(&format!(" MISMATCH (elimination gives {brute})"));
            status = MISMATCH;
        }
    }
    Ok(Report { text, status })
}

fn classify(s: &Settings) -> Result<Report> {
    let family = family_from(s)?;
    let decimal = s.decimal()?;
    let mut lines = Vec::new();
    match &family {
        FamilyParams::Kappa { .. } => {
            let property = parse_property(s.get("k").unwrap_or("1"))?;
            lines.push(render_verdict("original", &evaluate(&family, &TestSpec { property, power: None })?, decimal));
            let h = s.count("h")?.unwrap_or(1);
            let l = s.count("l")?.unwrap_or(1);
            if (h, l) != (1, 1) {
                let v = evaluate(&family, &TestSpec { property, power: Some((h, l)) })?;
                lines.push(render_verdict(&format!("power ({h},{l})"), &v, decimal));
            }
        }
        FamilyParams::S1 { .. } => {
            let h1 = evaluate(&family, &TestSpec { property: Property::H1, power: None })?;
            lines.push(render_verdict("original", &h1, decimal));
            let h2 = evaluate(&family, &TestSpec { property: Property::Hk(2), power: None })?;
            let f2 = s1_margin(&family).expect("s1 family");
            let f2 = format!("f2 = {}", number(&f2, decimal));
            lines.push(render_verdict_with("every power", "H2 = Hinf", &h2, decimal, vec![f2]));
        }
        FamilyParams::ClassA { .. } => {
            let property = parse_property(s.get("k").unwrap_or("inf"))?;
            let label = if property == Property::HInf { "original" } else { "every power (necessary)" };
            lines.push(render_verdict(label, &evaluate(&family, &TestSpec { property, power: None })?, decimal));
        }
    }
    Ok(Report::ok(lines.join("\n")))
}

fn threshold(s: &Settings, name: &str) -> Result<Report> {
    let t = eval::threshold_from(name, s)?;
    Ok(Report::ok(render_threshold(&t, s.decimal()?)?))
}

fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let rows = text
        .split(';')
        .map(|row| row.split(',').map(|v| parse_rational(v).map_err(Into::into)).collect::<Result<Vec<Rational>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SymMatrix::from_rows(rows)?)
}

fn psd(s: &Settings, matrix: &str) -> Result<Report> {
    let m = parse_matrix(matrix).context("matrix must be symmetric rows `a,b;c,d`")?;
    let decimal = s.decimal()?;
    let minors: Vec<String> = leading_minors(&m).iter().map(|d| number(d, decimal)).collect();
    let verdict = if is_psd(&m) { "PSD" } else { "NOT PSD" };
    Ok(Report::ok(format!("{verdict}\ndet {}\nleading minors {}", number(&det(&m), decimal), minors.join(", "))))
}

fn verify(only: Option<&str>) -> Result<Report> {
    if let Some(g) = only {
        if !GROUPS.contains(&g) {
            bail!("unknown group {g:?}; expected one of {}", GROUPS.join(", "));
        }
    }
    let mut lines = Vec::new();
    let mut failed = 0;
    for check in select(only) {
        let t = Instant::now();
        let outcome = check.run();
        if !outcome.passed {
            failed += 1;
        }
        lines.push(format!(
            "[{}] {} ({}): {} -- {} [{:.2}s]",
            if outcome.passed { "PASS" } else { "FAIL" },
            check.id,
            check.group,
            check.name,
            outcome.detail,
            t.elapsed().as_secs_f64()
        ));
    }
    lines.push(format!("{} passed, {failed} failed", lines.len() - failed));
    Ok(Report { text: lines.join("\n"), status: if failed == 0 { 0 } else { MISMATCH } })
}

fn run(cli: Cli) -> Result<Report> {
    let mut flags = cli.common.pairs();
    if let Command::Sweep(sw) = &cli.command {
        flags.extend(sw.pairs());
    }
    let (settings, notes) = Settings::load(&flags, cli.common.config.as_deref())?;
    for note in notes {
        eprintln!("{note}");
    }
    let report = match &cli.command {
        Command::DetHilbert { oracle } => det_hilbert(&settings, *oracle)?,
        Command::Classify => classify(&settings)?,
        Command::Threshold { name } => threshold(&settings, name)?,
        Command::Psd { matrix } => psd(&settings, matrix)?,
        Command::Sweep(_) => Report::ok(sweep::run(&sweep::SweepSpec::from_settings(&settings)?)?),
        Command::Verify { only } => verify(only.as_deref())?,
    };
    if let Some(path) = settings.get("out") {
        let mut text = report.text.clone();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        std::fs::write(path, text).with_context(|| format!("writing {path}"))?;
        return Ok(Report { text: String::new(), status: report.status });
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            if !report.text.is_empty() {
                print!("{}", report.text);
                if !report.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
