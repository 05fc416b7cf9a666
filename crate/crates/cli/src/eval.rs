//! Family parameters and property tests as the CLI sees them.

use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use hyposhift::exact_linalg::{fraction_string, int, rat, sqrt_decimal, to_decimal};
use hyposhift::hypotests::{
    classify_class_a_necessary, classify_s1, kappa_power_subnormal, s1_f2, ClassALevel, Threshold,
};
use hyposhift::powers::s1_power_decompose;
use hyposhift::shift_model::{FamilyParams, Property, Verdict};
use hyposhift::Rational;
use num_traits::One;

use crate::settings::Settings;

/// Which member of which family, read from `--family` and its parameters.
/// The kappa family defaults to `a^2 = 1/2`.
pub fn family_from(settings: &Settings) -> Result<FamilyParams> {
    let family = settings.require("family")?;
    let mut record = vec![("family".to_string(), family.to_string())];
    let keys: &[&str] = match family {
        "kappa" => &["a2", "kappa2"],
        "s1" => &["x2", "y2", "a2"],
        "classA" => &["p", "q", "y2", "a2"],
        other => bail!("unknown family {other:?}; expected kappa, s1 or classA"),
    };
    for key in keys {
        let value = match (settings.get(key), family, *key) {
            (Some(v), _, _) => v.to_string(),
            (None, "kappa", "a2") => "1/2".to_string(),
            (None, _, _) => bail!("family {family} needs --{key}"),
        };
        record.push((key.to_string(), value));
    }
    if family == "classA" {
        let uniform = settings.require_rational("p")? + settings.require_rational("q")? != Rational::one();
        record.push(("uniform".to_string(), uniform.to_string()));
    }
    let params = FamilyParams::from_record(&record)?;
    params.build()?;
    Ok(params)
}

/// A property, optionally of the power `(h, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestSpec {
    pub property: Property,
    pub power: Option<(usize, usize)>,
}

pub fn parse_property(s: &str) -> Result<Property> {
    let body = s.trim().trim_start_matches(['H', 'h']);
    if body.eq_ignore_ascii_case("inf") {
        return Ok(Property::HInf);
    }
    match body.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(Property::level(k)),
        _ => bail!("expected a level 1, 2, ... or inf, got {s:?}"),
    }
}

fn positive(s: &str, what: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => bail!("{what} must be a positive integer, got {s:?}"),
    }
}

impl TestSpec {
    /// `H2`, `Hinf`, `H1@2` or `H2@2:1`.
    pub fn parse(s: &str) -> Result<Self> {
        let (prop, power) = match s.split_once('@') {
            None => (s, None),
            Some((prop, pw)) => {
                let (h, l) = pw.split_once(':').unwrap_or((pw, "1"));
                (prop, Some((positive(h, "h")?, positive(l, "l")?)))
            }
        };
        let power = power.filter(|&p| p != (1, 1));
        Ok(TestSpec { property: parse_property(prop).with_context(|| format!("test {s:?}"))?, power })
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        let tests = s.split(',').filter(|t| !t.trim().is_empty()).map(TestSpec::parse).collect::<Result<Vec<_>>>()?;
        if tests.is_empty() {
            bail!("no tests given");
        }
        Ok(tests)
    }
}

impl fmt::Display for TestSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.property)?;
        if let Some((h, l)) = self.power {
            write!(f, "@{h}:{l}")?;
        }
        Ok(())
    }
}

fn need_half(a_sq: &Rational, what: &str) -> Result<()> {
    if *a_sq != rat(1, 2) {
        bail!("{what} has a closed form only at a2 = 1/2");
    }
    Ok(())
}

fn kappa_verdict(a_sq: &Rational, kappa_sq: &Rational, test: &TestSpec) -> Result<Verdict> {
    let by = |threshold: Threshold, rule: &str| -> Result<Verdict> {
        Ok(Verdict::by_threshold(test.property, kappa_sq, threshold.value_sq()?, rule))
    };
    let a = a_sq.clone();
    match (test.property, test.power) {
        (Property::H1, None) => by(Threshold::H1 { a_sq: a }, "hyponormal iff kappa^2 <= (32-48a^4)/(59-72a^2)"),
        (Property::Hk(k), None) => by(Threshold::F { a_sq: a, k }, "k-hyponormal iff kappa^2 <= F(a,k)^2"),
        (Property::HInf, None) => by(Threshold::HInf { a_sq: a }, "subnormal iff kappa^2 <= 1/(2-a^2)"),
        (Property::Hk(2), Some((2, 1))) => by(
            Threshold::H2Power21 { a_sq: a },
            "(2,1) power 2-hyponormal iff kappa^2 <= 225(15-28a^2)/(6238-15015a^2+6300a^4)",
        ),
        (Property::H1, Some((h, _))) => {
            need_half(a_sq, "hyponormality of a power")?;
            by(Threshold::G { h: int(h as i64) }, "power hyponormal iff kappa^2 <= (2h^3+7h^2+8h+3)/(2h^3+7h^2+10h+4)")
        }
        (Property::Hk(k), Some((h, _))) => {
            need_half(a_sq, "k-hyponormality of a power")?;
            by(
                Threshold::Power { k, h: int(h as i64) },
                "power k-hyponormal iff kappa^2 <= 2/(2+b(k,h)), via the generalized Hilbert matrix corner",
            )
        }
        (Property::HInf, Some((h, l))) => {
            let holds = kappa_power_subnormal(a_sq, kappa_sq, h, l)?;
            let threshold = Threshold::HInf { a_sq: a }.value_sq()?;
            Ok(Verdict {
                property: Property::HInf,
                holds,
                margin: Some(&threshold - kappa_sq),
                threshold_sq: Some(threshold),
                rule: "subnormal iff the backward extension of the rows above 0 is dominated by the row 0 measure".into(),
                window_limited: false,
            })
        }
    }
}

fn s1_verdict(x_sq: &Rational, y_sq: &Rational, a_sq: &Rational, test: &TestSpec) -> Result<Verdict> {
    match (test.property, test.power) {
        (Property::H1, None) => Ok(classify_s1(x_sq, y_sq, a_sq)?.h1),
        (Property::H1, Some((h, l))) => {
            let mut holds = true;
            for part in s1_power_decompose(x_sq, y_sq, a_sq, h, l)? {
                let (px, py, pa) = &part.params_sq;
                holds &= classify_s1(px, py, pa)?.h1.holds;
            }
            Ok(Verdict {
                property: Property::H1,
                holds,
                threshold_sq: None,
                margin: None,
                rule: "every summand of the power passes the six-point test at its origin".into(),
                window_limited: false,
            })
        }
        (property, _) => {
            let mut v = classify_s1(x_sq, y_sq, a_sq)?.h2_equals_subnormal;
            v.property = property;
            Ok(v)
        }
    }
}

fn class_a_verdict(p: &Rational, q: &Rational, y_sq: &Rational, a_sq: &Rational, test: &TestSpec) -> Result<Verdict> {
    if test.power.is_some() {
        bail!("class A conditions already range over every power; drop the @h:l suffix");
    }
    let level = match test.property {
        Property::H1 => ClassALevel::One,
        Property::Hk(2) => ClassALevel::Two,
        Property::HInf => ClassALevel::Inf,
        Property::Hk(k) => bail!("class A has conditions for levels 1, 2 and inf only, not {k}"),
    };
    Ok(classify_class_a_necessary(p, q, y_sq, a_sq, level)?)
}

pub fn evaluate(family: &FamilyParams, test: &TestSpec) -> Result<Verdict> {
    match family {
        FamilyParams::Kappa { a_sq, kappa_sq } => kappa_verdict(a_sq, kappa_sq, test),
        FamilyParams::S1 { x_sq, y_sq, a_sq } => s1_verdict(x_sq, y_sq, a_sq, test),
        FamilyParams::ClassA { p, q, y_sq, a_sq, .. } => class_a_verdict(p, q, y_sq, a_sq, test),
    }
}

/// `f2` for an S1 member, shown next to its 2-hyponormality verdict.
pub fn s1_margin(family: &FamilyParams) -> Option<Rational> {
    match family {
        FamilyParams::S1 { x_sq, y_sq, a_sq } => Some(s1_f2(x_sq, y_sq, a_sq)),
        _ => None,
    }
}

/// `7/9`, or `7/9 = 0.777778` with decimals.
pub fn number(r: &Rational, decimal: Option<u32>) -> String {
    let frac = if r.is_integer() { r.numer().to_string() } else { fraction_string(r) };
    match decimal {
        Some(d) => format!("{frac} = {}", to_decimal(r, d)),
        None => frac,
    }
}

pub fn render_verdict(label: &str, v: &Verdict, decimal: Option<u32>) -> String {
    render_verdict_with(label, &v.property.to_string(), v, decimal, Vec::new())
}

/// [`render_verdict`] with the property spelled out and extra notes appended
/// inside the parentheses.
pub fn render_verdict_with(label: &str, property: &str, v: &Verdict, decimal: Option<u32>, notes: Vec<String>) -> String {
    let mut line = format!("{label}: {}{property}", if v.holds { "" } else { "NOT " });
    let mut extra = Vec::new();
    if let Some(t) = &v.threshold_sq {
        extra.push(format!("threshold^2 {}", number(t, decimal)));
    }
    if v.margin.as_ref().is_some_and(|m| *m == int(0)) {
        extra.push("boundary".to_string());
    }
    if v.window_limited {
        extra.push("finite window".to_string());
    }
    extra.extend(notes);
    if !extra.is_empty() {
        line.push_str(&format!(" ({})", extra.join(", ")));
    }
    line.push_str(&format!(" -- {}", v.rule));
    line
}

/// The threshold named on the command line, from the parameters present.
pub fn threshold_from(name: &str, settings: &Settings) -> Result<Threshold> {
    let a = || settings.require_rational("a2");
    let k = || settings.count("k")?.ok_or_else(|| anyhow!("missing --k"));
    let h = || settings.require_rational("h");
    Ok(match name.to_ascii_lowercase().as_str() {
        "h1" => Threshold::H1 { a_sq: a()? },
        "f" => Threshold::F { a_sq: a()?, k: k()? },
        "hinf" => Threshold::HInf { a_sq: a()? },
        "g" => Threshold::G { h: h()? },
        "power" => Threshold::Power { k: k()?, h: h()? },
        "m1" => Threshold::M1 { a_sq: a()?, q: settings.require_rational("q")? },
        "m2" => Threshold::M2 { a_sq: a()?, q: settings.require_rational("q")? },
        "minf" => Threshold::MInf { a_sq: a()?, p: settings.require_rational("p")?, q: settings.require_rational("q")? },
        "h2" => Threshold::H2 { a_sq: a()? },
        "h2_21" => Threshold::H2Power21 { a_sq: a()? },
        other => bail!("unknown threshold {other:?}; expected h1, f, hinf, g, power, m1, m2, minf, h2 or h2_21"),
    })
}

/// `name^2 = value`, with the square root in decimals when asked.
pub fn render_threshold(t: &Threshold, decimal: Option<u32>) -> Result<String> {
    let v = t.value_sq()?;
    let mut out = format!("{t}^2 = {}", number(&v, decimal));
    if let Some(d) = decimal {
        out.push_str(&format!("\n{t} = {}", sqrt_decimal(&v, d)?));
    }
    Ok(out)
}
