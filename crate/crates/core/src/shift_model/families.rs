use num_traits::{One, Signed, Zero};

use super::measure::Measure;
use super::shift1d::{kappa_row0, Shift1D};
use super::shift2d::Shift2D;
use crate::error::{domain, Error, Result};
use crate::exact_linalg::{fraction_string, int, parse_rational, Rational};

/// Defining parameters of a named family, all squared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Kappa { a_sq: Rational, kappa_sq: Rational },
    S1 { x_sq: Rational, y_sq: Rational, a_sq: Rational },
    ClassA { p: Rational, q: Rational, uniform: bool, y_sq: Rational, a_sq: Rational },
}

impl FamilyParams {
    pub fn family(&self) -> &'static str {
        match self {
            FamilyParams::Kappa { .. } => "kappa",
            FamilyParams::S1 { .. } => "s1",
            FamilyParams::ClassA { .. } => "classA",
        }
    }

    pub fn build(&self) -> Result<Shift2D> {
        match self {
            FamilyParams::Kappa { a_sq, kappa_sq } => make_kappa_shift(a_sq, kappa_sq),
            FamilyParams::S1 { x_sq, y_sq, a_sq } => make_s1(x_sq, y_sq, a_sq),
            FamilyParams::ClassA { p, q, uniform, y_sq, a_sq } => make_class_a(p, q, *uniform, y_sq, a_sq),
        }
    }

    /// `family` followed by the parameters as `num/den` strings.
    pub fn to_record(&self) -> Vec<(String, String)> {
        let mut out = vec![("family".to_string(), self.family().to_string())];
        let mut put = |k: &str, v: &Rational| out.push((k.to_string(), fraction_string(v)));
        match self {
            FamilyParams::Kappa { a_sq, kappa_sq } => {
                put("a2", a_sq);
                put("kappa2", kappa_sq);
            }
            FamilyParams::S1 { x_sq, y_sq, a_sq } => {
                put("x2", x_sq);
                put("y2", y_sq);
                put("a2", a_sq);
            }
            FamilyParams::ClassA { p, q, uniform, y_sq, a_sq } => {
                put("p", p);
                put("q", q);
                put("y2", y_sq);
                put("a2", a_sq);
                out.push(("uniform".to_string(), uniform.to_string()));
            }
        }
        out
    }

    pub fn from_record(record: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| -> Result<&str> {
            record
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Record(format!("missing field {key:?}")))
        };
        let num = |key: &str| get(key).and_then(parse_rational);
        match get("family")? {
            "kappa" => Ok(FamilyParams::Kappa { a_sq: num("a2")?, kappa_sq: num("kappa2")? }),
            "s1" => Ok(FamilyParams::S1 { x_sq: num("x2")?, y_sq: num("y2")?, a_sq: num("a2")? }),
            "classA" => {
                let uniform = match get("uniform")? {
                    "true" => true,
                    "false" => false,
                    other => return Err(Error::Record(format!("uniform must be true or false, got {other:?}"))),
                };
                Ok(FamilyParams::ClassA { p: num("p")?, q: num("q")?, uniform, y_sq: num("y2")?, a_sq: num("a2")? })
            }
            other => Err(Error::Record(format!("unknown family {other:?}"))),
        }
    }
}

fn in_unit(name: &str, v: &Rational, upper_open: bool) -> Result<()> {
    let above = if upper_open { *v >= Rational::one() } else { *v > Rational::one() };
    if !v.is_positive() || above {
        let interval = if upper_open { "(0,1)" } else { "(0,1]" };
        return domain(format!("{name} must lie in {interval}, got {v}"));
    }
    Ok(())
}

/// `(a, 1, 1, ...)` with `a^2 = a_sq`.
fn s_a(a_sq: &Rational) -> Shift1D {
    Shift1D::constant_tail(vec![a_sq.clone()], Rational::one()).expect("positive weights")
}

/// Row 0 carries the weights `x_0^2 = 3k^2/4`, `x_n^2 = (n+1)(n+3)/(n+2)^2`;
/// rows above are `(a, 1, 1, ...)`; column 0 is `(k, 1, 1, ...)`.
pub fn make_kappa_shift(a_sq: &Rational, kappa_sq: &Rational) -> Result<Shift2D> {
    if !a_sq.is_positive() || *a_sq > Rational::new(1.into(), 2.into()) {
        return domain(format!("a^2 must lie in (0,1/2], got {a_sq}"));
    }
    in_unit("kappa^2", kappa_sq, true)?;
    let col0 = Shift1D::constant_tail(vec![kappa_sq.clone()], Rational::one())?;
    Ok(Shift2D::commuting(vec![kappa_row0(kappa_sq), s_a(a_sq)], col0)?
        .with_params(FamilyParams::Kappa { a_sq: a_sq.clone(), kappa_sq: kappa_sq.clone() }))
}

/// The three-parameter shift `<x, y, a>` whose core is `(U_+, U_+)`.
pub fn make_s1(x_sq: &Rational, y_sq: &Rational, a_sq: &Rational) -> Result<Shift2D> {
    in_unit("x^2", x_sq, false)?;
    in_unit("y^2", y_sq, false)?;
    in_unit("a^2", a_sq, false)?;
    if a_sq * y_sq > *x_sq {
        return domain(format!("need a^2 y^2 <= x^2, got {} > {x_sq}", a_sq * y_sq));
    }
    let row0 = Shift1D::constant_tail(vec![x_sq.clone()], Rational::one())?;
    let col0 = Shift1D::constant_tail(vec![y_sq.clone()], Rational::one())?;
    Ok(Shift2D::commuting(vec![row0, s_a(a_sq)], col0)?
        .with_params(FamilyParams::S1 { x_sq: x_sq.clone(), y_sq: y_sq.clone(), a_sq: a_sq.clone() }))
}

/// Row 0 is the shift of `p delta_0 + q delta_1 + (1-p-q) ds`; the rest
/// follows the pattern of [`make_s1`].
pub fn make_class_a(p: &Rational, q: &Rational, uniform: bool, y_sq: &Rational, a_sq: &Rational) -> Result<Shift2D> {
    if p.is_negative() || q.is_negative() {
        return domain(format!("p and q must be nonnegative, got p = {p}, q = {q}"));
    }
    in_unit("y^2", y_sq, false)?;
    in_unit("a^2", a_sq, false)?;
    let measure = Measure::class_c(p, q, uniform)?;
    if q.is_zero() && measure.uniform_mass().is_zero() {
        return Err(Error::DegenerateMeasure("row 0 measure is concentrated at 0".into()));
    }
    let row0 = Shift1D::from_measure(measure)?;
    let col0 = Shift1D::constant_tail(vec![y_sq.clone()], Rational::one())?;
    Ok(Shift2D::commuting(vec![row0, s_a(a_sq)], col0)?.with_params(FamilyParams::ClassA {
        p: p.clone(),
        q: q.clone(),
        uniform,
        y_sq: y_sq.clone(),
        a_sq: a_sq.clone(),
    }))
}

/// `p = 1 - k^2`, `q = k^2/2` with uniform mass `k^2/2`: the class-A member
/// whose row 0 coincides with the kappa family.
pub fn class_a_of_kappa(kappa_sq: &Rational, y_sq: &Rational, a_sq: &Rational) -> Result<Shift2D> {
    make_class_a(&(Rational::one() - kappa_sq), &(kappa_sq / int(2)), true, y_sq, a_sq)
}
