//! The regression suite: every published value and threshold the library
//! reproduces, as named checks that can be run selectively.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_linalg::{det, int, is_psd, leading_minors, rat, smuljan_psd, sqrt_decimal, Rational};
use crate::hilbert::{
    b_threshold, build_generalized_hilbert, classical_hilbert_det, det_generalized_hilbert, GenHilbertParams,
};
use crate::hypotests::{
    build_jk, class_a_limit_h, class_a_limit_p, classify_kappa, classify_s1, k_hyponormal_window,
    kappa_power_subnormal, moment_matrix, reduce_lk_to_ak, two_one_power_matrix, Threshold,
};
use crate::powers::{power_restriction, s1_power_decompose, PowerSpec, SummandKind};
use crate::shift_model::{class_a_of_kappa, make_kappa_shift, make_s1};

/// Result of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        match failures.first() {
            None => Outcome { passed: true, detail: summary },
            Some(first) => Outcome {
                passed: false,
                detail: format!("{} failure(s); first: {first}", failures.len()),
            },
        }
    }
}

/// A named check of the regression suite.
#[derive(Clone, Copy, Debug)]
pub struct Check {
    pub id: u32,
    pub group: &'static str,
    pub name: &'static str,
    run: fn() -> Outcome,
}

impl Check {
    pub fn run(&self) -> Outcome {
        (self.run)()
    }
}

pub const GROUPS: [&str; 5] = ["hilbert", "kappa", "two-one", "s1", "class-a"];

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, group: "hilbert", name: "classical Hilbert determinant equals (k^!)^4/(2k+1)^!", run: classical_identity },
        Check { id: 2, group: "hilbert", name: "closed-form determinant matches elimination", run: determinant_oracle },
        Check { id: 3, group: "hilbert", name: "positivity flips exactly at x = b(k,h)", run: positivity_threshold },
        Check { id: 4, group: "hilbert", name: "b(k,1) = k(k+2)/(k+1)^2 and b(2,9) = 2464/9025", run: b_values },
        Check { id: 5, group: "kappa", name: "kappa family hyponormality boundary at 20/23", run: kappa_h1_boundary },
        Check { id: 6, group: "kappa", name: "J_k positivity agrees with the A_k corner test", run: jk_reduction },
        Check { id: 7, group: "kappa", name: "power-only region is (F^2, 2/(2+b(k,h))]", run: non_invariance_region },
        Check { id: 8, group: "two-one", name: "(2,1) power thresholds and nested minors", run: two_one_consistency },
        Check { id: 9, group: "s1", name: "S1 2-hyponormality and power decomposition", run: s1_suite },
        Check { id: 10, group: "class-a", name: "class C limit matrices match m1 and m2", run: class_a_limits },
        Check { id: 11, group: "kappa", name: "kappa family powers subnormal iff kappa^2 <= 2/3", run: kappa_subnormal },
    ]
}

/// Checks in `group`, or all checks for `None`. Unknown groups select
/// nothing.
pub fn select(group: Option<&str>) -> Vec<Check> {
    checks().into_iter().filter(|c| group.is_none_or(|g| c.group == g)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish rational in `(lo, hi]` with denominator at most `max_den`.
pub fn random_rational(r: &mut impl Rng, lo: &Rational, hi: &Rational, max_den: i64) -> Rational {
    let d = r.random_range(1..=max_den);
    let span = (hi - lo) * int(d);
    let steps = span.floor().to_integer();
    let steps: i64 = steps.try_into().unwrap_or(i64::MAX).max(1);
    let n = r.random_range(1..=steps);
    lo + rat(n, d)
}

fn params(k: usize, x: Rational, h: Rational) -> GenHilbertParams {
    GenHilbertParams::new(k, x, h).expect("valid generalized Hilbert parameters")
}

fn classical_identity() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=8 {
        let expected = classical_hilbert_det(k).expect("k >= 1");
        let p = params(k, int(1), int(1));
        let brute = det(&build_generalized_hilbert(&p));
        if brute != expected || det_generalized_hilbert(&p) != expected {
            failures.push(format!("k={k}: elimination {brute}, identity {expected}"));
        }
    }
    Outcome::from_failures(failures, "k = 1..8 exact".into())
}

fn determinant_oracle() -> Outcome {
    let mut r = rng(2);
    let mut failures = Vec::new();
    let mut count = 0;
    for _ in 0..100 {
        let x = random_rational(&mut r, &int(0), &int(4), 12);
        let h = int(1) + random_rational(&mut r, &int(0), &int(9), 12);
        for k in 1..=6 {
            let p = params(k, x.clone(), h.clone());
            let brute = det(&build_generalized_hilbert(&p));
            let closed = det_generalized_hilbert(&p);
            if brute != closed {
                failures.push(format!("k={k}, x={x}, h={h}: {closed} vs {brute}"));
            }
            count += 1;
        }
    }
    Outcome::from_failures(failures, format!("{count} exact comparisons"))
}

fn straddle_offsets() -> Vec<Rational> {
    let mut v = vec![Rational::zero()];
    for d in [10, 100, 1000, 1_000_000, 1_000_000_000_000] {
        v.push(rat(1, d));
        v.push(rat(-1, d));
    }
    v
}

fn positivity_threshold() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=5 {
        for h in 1..=3 {
            let b = b_threshold(k, &int(h)).expect("h >= 1");
            for d in straddle_offsets() {
                let x = &b + &d;
                if !x.is_positive() {
                    continue;
                }
                let psd = is_psd(&build_generalized_hilbert(&params(k, x.clone(), int(h))));
                if psd != !d.is_negative() {
                    failures.push(format!("k={k}, h={h}, x=b{d:+}: positive = {psd}"));
                }
                count += 1;
            }
        }
    }
    Outcome::from_failures(failures, format!("{count} grid points, PSD at the boundary"))
}

fn b_values() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=10i64 {
        let b = b_threshold(k as usize, &int(1)).expect("h >= 1");
        if b != rat(k * (k + 2), (k + 1) * (k + 1)) {
            failures.push(format!("b({k},1) = {b}"));
        }
    }
    let b29 = b_threshold(2, &int(9)).expect("h >= 1");
    if b29 != rat(2464, 9025) {
        failures.push(format!("b(2,9) = {b29}"));
    }
    let t = int(2) / (int(2) + &b29);
    if t != rat(9025, 10257) {
        failures.push(format!("2/(2+b(2,9)) = {t}"));
    }
    let shown = sqrt_decimal(&t, 6).expect("nonnegative");
    // |sqrt(t) - 0.938023| <= 1e-6, checked on squares
    let (lo, hi) = (rat(938022, 1_000_000), rat(938024, 1_000_000));
    if shown != "0.938023" || t < &lo * &lo || t > &hi * &hi {
        failures.push(format!("sqrt(2/(2+b(2,9))) renders as {shown}"));
    }
    Outcome::from_failures(failures, "sqrt(9025/10257) = 0.938023".into())
}

fn kappa_h1_boundary() -> Outcome {
    let mut failures = Vec::new();
    let edge = rat(20, 23);
    if (Threshold::H1 { a_sq: rat(1, 2) }).value_sq().ok() != Some(edge.clone()) {
        failures.push("h1(a^2=1/2) is not 20/23".into());
    }
    for (kappa_sq, expect) in [(edge.clone(), true), (&edge + rat(1, 1000), false)] {
        let s = make_kappa_shift(&rat(1, 2), &kappa_sq).expect("valid kappa");
        let v = k_hyponormal_window(&s, 1, 5).expect("k >= 1");
        if v.holds != expect {
            failures.push(format!("kappa^2 = {kappa_sq}: window verdict {}", v.holds));
        }
    }
    Outcome::from_failures(failures, "holds at 20/23, fails at 20/23 + 1/1000".into())
}

/// 20 values in `(0,1)` clustered around `center`.
fn kappa_samples(center: &Rational, r: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut v: Vec<Rational> =
        straddle_offsets().into_iter().map(|d| center + d).filter(|x| x.is_positive() && *x < Rational::one()).collect();
    while v.len() < 20 {
        v.push(random_rational(r, &int(0), &rat(99, 100), 97));
    }
    v.truncate(20);
    v
}

fn jk_reduction() -> Outcome {
    let mut r = rng(6);
    let mut failures = Vec::new();
    let mut count = 0;
    for k in [2, 3] {
        for h in [1usize, 2, 9] {
            let b = b_threshold(k, &int(h as i64)).expect("h >= 1");
            let center = int(2) / (int(2) + &b);
            for kappa_sq in kappa_samples(&center, &mut r) {
                let j = build_jk(&kappa_sq, h, k).expect("valid parameters");
                let a = reduce_lk_to_ak(&kappa_sq, h, k).expect("valid parameters");
                if is_psd(&j) != (*a.x() >= b) {
                    failures.push(format!("k={k}, h={h}, kappa^2={kappa_sq}"));
                }
                count += 1;
            }
        }
    }
    Outcome::from_failures(failures, format!("{count} cases"))
}

fn non_invariance_region() -> Outcome {
    let mut failures = Vec::new();
    let eps = rat(1, 1_000_000);
    for k in 2..=5usize {
        let ki = k as i64;
        let f = Threshold::F { a_sq: rat(1, 2), k }.value_sq().expect("k >= 2");
        if f != rat(2 * (ki + 1) * (ki + 1), 3 * ki * ki + 6 * ki + 2) {
            failures.push(format!("F(1/2,{k})^2 = {f}"));
        }
        for h in [2usize, 3, 9] {
            let top = Threshold::Power { k, h: int(h as i64) }.value_sq().expect("h >= 1");
            if f >= top {
                failures.push(format!("empty region for k={k}, h={h}"));
                continue;
            }
            let mid = (&f + &top) / int(2);
            for (kappa_sq, inside) in
                [(f.clone(), false), (&f + &eps, true), (mid, true), (top.clone(), true), (&top + &eps, false)]
            {
                let gains = classify_kappa(&kappa_sq, k, h).expect("valid parameters").power_gains();
                if gains != inside {
                    failures.push(format!("k={k}, h={h}, kappa^2={kappa_sq}: power-only = {gains}"));
                }
            }
        }
    }
    Outcome::from_failures(failures, "k = 2..5, h in {2,3,9}".into())
}

/// The five nested minors of the reduced (2,1)-power moment matrix, as
/// closed forms in `a^2` and `kappa^2`.
pub fn two_one_minor_formulas(a_sq: &Rational, kappa_sq: &Rational) -> [Rational; 5] {
    let (a2, k2) = (a_sq, kappa_sq);
    let (a4, a6) = (a2 * a2, a2 * a2 * a2);
    let a8 = &a4 * &a4;
    [
        k2.recip(),
        (int(27) - int(20) * k2) / (int(45) * k2),
        (int(27) - int(45) * &a4 - int(47) * k2 + int(60) * a2 * k2) / (int(45) * k2),
        (int(3375) - int(6300) * &a4 - int(6238) * k2 + int(6510) * a2 * k2 + int(2205) * &a4 * k2)
            / (int(496125) * k2),
        (int(3375) * a2 - int(9675) * &a4 + int(6300) * &a6 - int(6238) * a2 * k2 + int(21253) * &a4 * k2
            - int(21315) * &a6 * k2
            + int(6300) * a8 * k2)
            / (int(496125) * k2),
    ]
}

fn two_one_consistency() -> Outcome {
    let mut failures = Vec::new();
    let half = rat(1, 2);
    let h2 = Threshold::H2 { a_sq: half.clone() }.value_sq().expect("in range");
    let f2 = Threshold::F { a_sq: half.clone(), k: 2 }.value_sq().expect("in range");
    if h2 != rat(9, 13) || f2 != rat(9, 13) {
        failures.push(format!("h2^2 = {h2}, F^2 = {f2}"));
    }
    let h21 = Threshold::H2Power21 { a_sq: half }.value_sq().expect("in range");
    if h21 != rat(450, 611) {
        failures.push(format!("h2_21^2 = {h21}"));
    }
    for i in 1..=50 {
        let a_sq = rat(i, 100);
        let lo = Threshold::H2 { a_sq: a_sq.clone() }.value_sq().expect("in range");
        let hi = Threshold::H2Power21 { a_sq: a_sq.clone() }.value_sq().expect("in range");
        if lo >= hi {
            failures.push(format!("a^2 = {a_sq}: h2^2 = {lo} >= h2_21^2 = {hi}"));
        }
    }
    let a_sq = rat(1, 4);
    let edge = Threshold::H2Power21 { a_sq: a_sq.clone() }.value_sq().expect("in range");
    for kappa_sq in [rat(1, 10), rat(1, 2), rat(45, 76), edge.clone(), &edge + rat(1, 1000), rat(9, 10)] {
        let m = two_one_power_matrix(&a_sq, &kappa_sq).expect("valid parameters");
        let got = leading_minors(&m);
        let want = two_one_minor_formulas(&a_sq, &kappa_sq);
        if got[..] != want[..] {
            failures.push(format!("kappa^2 = {kappa_sq}: minors {got:?}"));
        }
        let psd = is_psd(&m);
        if psd != (kappa_sq <= edge) {
            failures.push(format!("kappa^2 = {kappa_sq}: positive = {psd}"));
        }
    }
    Outcome::from_failures(failures, "thresholds, 50-point ordering, minors at a^2 = 1/4".into())
}

/// `(x^2, y^2, a^2)` triples with `a^2 y^2 <= x^2`, including points with
/// `f2 = 0`.
pub fn s1_grid(count: usize, seed: u64) -> Vec<(Rational, Rational, Rational)> {
    let mut r = rng(seed);
    let mut out = vec![
        (rat(3, 4), rat(1, 2), rat(1, 2)),
        (int(1), int(1), int(1)),
        (rat(1, 2), int(1), rat(1, 2)),
        (rat(1, 2), rat(5, 8), rat(1, 5)),
    ];
    while out.len() < count {
        let x = random_rational(&mut r, &int(0), &int(1), 16);
        let a = random_rational(&mut r, &int(0), &int(1), 16);
        let y = if out.len() % 5 == 0 && a < int(1) {
            (int(1) - &x) / (int(1) - &a)
        } else {
            random_rational(&mut r, &int(0), &int(1), 16)
        };
        if y.is_positive() && y <= int(1) && &a * &y <= x {
            out.push((x, y, a));
        }
    }
    out
}

fn s1_suite() -> Outcome {
    let mut failures = Vec::new();
    for (x, y, a) in s1_grid(200, 9) {
        let verdict = classify_s1(&x, &y, &a).expect("valid S1 parameters").h2_equals_subnormal.holds;
        let s = make_s1(&x, &y, &a).expect("valid S1 parameters");
        let psd = is_psd(&moment_matrix(&s, (0, 0), 2));
        if verdict != psd {
            failures.push(format!("<{x},{y},{a}>: classifier {verdict}, moment matrix {psd}"));
        }
    }
    for (x, y, a) in s1_grid(6, 90) {
        let s = make_s1(&x, &y, &a).expect("valid S1 parameters");
        for h in 1..=4 {
            for l in 1..=4 {
                let summands = s1_power_decompose(&x, &y, &a, h, l).expect("valid");
                let total: usize = summands.iter().map(|t| t.multiplicity).sum();
                if total != h * l {
                    failures.push(format!("({h},{l}): multiplicities sum to {total}"));
                }
                for spec in PowerSpec::all(h, l).expect("valid powers") {
                    let (m, n) = spec.offset();
                    let kind = SummandKind::for_offset(m, n);
                    let summand = summands.iter().find(|t| t.kind == kind).expect("summand present");
                    let expect = summand.build().expect("summand parameters valid");
                    let got = power_restriction(&s, &spec);
                    let same = (0..=5).all(|k1| (0..=5).all(|k2| got.gamma2(k1, k2) == expect.gamma2(k1, k2)));
                    if !same {
                        failures.push(format!("<{x},{y},{a}> power ({h},{l}) offset ({m},{n})"));
                    }
                }
            }
        }
    }
    Outcome::from_failures(failures, "200-point grid and decomposition for (h,l) <= (4,4)".into())
}

/// `(a^2, q, y^2)` points around the `m1` and `m2` bounds.
pub fn class_a_grid(count: usize) -> Vec<(Rational, Rational, Rational)> {
    let a_values = [rat(1, 10), rat(1, 4), rat(1, 2), rat(3, 4), int(1)];
    let q_values = [rat(1, 10), rat(1, 4), rat(3, 10), rat(2, 5), rat(49, 100)];
    let mut out = Vec::new();
    for q in &q_values {
        for a_sq in &a_values {
            let m1 = Threshold::M1 { a_sq: a_sq.clone(), q: q.clone() }.value_sq().expect("in range");
            let m2 = Threshold::M2 { a_sq: a_sq.clone(), q: q.clone() }.value_sq().expect("in range");
            for y_sq in [&m1 - rat(1, 100), m1.clone(), &m1 + rat(1, 100), m2.clone(), &m2 + rat(1, 100)] {
                if y_sq.is_positive() && y_sq <= int(1) {
                    out.push((a_sq.clone(), q.clone(), y_sq));
                }
            }
        }
    }
    out.truncate(count);
    out
}

fn class_a_limits() -> Outcome {
    let mut failures = Vec::new();
    let grid = class_a_grid(100);
    if grid.len() != 100 {
        failures.push(format!("grid has {} points", grid.len()));
    }
    for (a_sq, q, y_sq) in &grid {
        let m1 = Threshold::M1 { a_sq: a_sq.clone(), q: q.clone() }.value_sq().expect("in range");
        let m2 = Threshold::M2 { a_sq: a_sq.clone(), q: q.clone() }.value_sq().expect("in range");
        let s = class_a_of_kappa(&(q * int(2)), y_sq, a_sq).expect("valid class C parameters");
        let tail = s.row0().moment(200);
        if (&tail - q).abs() > rat(1, 100) {
            failures.push(format!("gamma_200 = {tail} is not near q = {q}"));
        }
        if is_psd(&class_a_limit_h(q, y_sq, a_sq)) != (*y_sq <= m1) {
            failures.push(format!("H at a^2={a_sq}, q={q}, y^2={y_sq}"));
        }
        let (pa, pb, pc) = class_a_limit_p(q, y_sq, a_sq);
        let sm = smuljan_psd(&pa, &pb, &pc).expect("block shapes agree");
        if sm != (*y_sq <= m2) {
            failures.push(format!("P at a^2={a_sq}, q={q}, y^2={y_sq}: block test {sm}"));
        }
    }
    Outcome::from_failures(failures, format!("{} grid points", grid.len()))
}

fn kappa_subnormal() -> Outcome {
    let mut failures = Vec::new();
    let edge = rat(2, 3);
    if (Threshold::HInf { a_sq: rat(1, 2) }).value_sq().ok() != Some(edge.clone()) {
        failures.push("hinf(a^2=1/2) is not 2/3".into());
    }
    for (h, l) in [(1, 1), (2, 1), (3, 2), (9, 4)] {
        for (kappa_sq, expect) in [(&edge - rat(1, 1000), true), (edge.clone(), true), (&edge + rat(1, 1000), false)] {
            let got = kappa_power_subnormal(&rat(1, 2), &kappa_sq, h, l).expect("valid parameters");
            if got != expect {
                failures.push(format!("({h},{l}), kappa^2 = {kappa_sq}: {got}"));
            }
        }
    }
    Outcome::from_failures(failures, "boundary exact at 2/3".into())
}
