use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::exact_linalg::{int, rat, Rational};
use crate::hilbert::b_threshold;

/// A named closed-form threshold. Every value is returned squared, which
/// keeps it rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// Hyponormality of the kappa family: `(32 - 48a^4)/(59 - 72a^2)`.
    H1 { a_sq: Rational },
    /// k-hyponormality of the kappa family, `k >= 2`.
    F { a_sq: Rational, k: usize },
    /// Subnormality of the kappa family: `1/(2 - a^2)`.
    HInf { a_sq: Rational },
    /// Hyponormality of the `(h, l)` power of the kappa family at `a^2 = 1/2`:
    /// `(2h^3+7h^2+8h+3)/(2h^3+7h^2+10h+4)`.
    G { h: Rational },
    /// k-hyponormality of the `(h, l)` power at `a^2 = 1/2`: `2/(2 + b(k,h))`.
    Power { k: usize, h: Rational },
    /// Bound on `y^2` from hyponormality of all powers in class C.
    M1 { a_sq: Rational, q: Rational },
    /// Bound on `y^2` from 2-hyponormality of all powers in class C.
    M2 { a_sq: Rational, q: Rational },
    /// Subnormality bound on `y^2` in class C.
    MInf { a_sq: Rational, p: Rational, q: Rational },
    /// 2-hyponormality of the kappa family for `a^2 <= 1/2`.
    H2 { a_sq: Rational },
    /// 2-hyponormality of the `(2, 1)` power of the kappa family.
    H2Power21 { a_sq: Rational },
}

fn half_open_a(a_sq: &Rational) -> Result<()> {
    if !a_sq.is_positive() || *a_sq > rat(1, 2) {
        return domain(format!("a^2 must lie in (0,1/2], got {a_sq}"));
    }
    Ok(())
}

fn unit_a(a_sq: &Rational) -> Result<()> {
    if !a_sq.is_positive() || *a_sq > Rational::one() {
        return domain(format!("a^2 must lie in (0,1], got {a_sq}"));
    }
    Ok(())
}

fn open_q(q: &Rational) -> Result<()> {
    if !q.is_positive() || *q >= Rational::one() {
        return domain(format!("q must lie in (0,1), got {q}"));
    }
    Ok(())
}

/// `min` over the terms whose denominator is nonzero.
fn min_ratio(terms: [(Rational, Rational); 2]) -> Rational {
    terms
        .into_iter()
        .filter(|(_, den)| !den.is_zero())
        .map(|(num, den)| num / den)
        .min()
        .expect("a^2 > 0 keeps one term")
}

impl Threshold {
    pub fn name(&self) -> &'static str {
        match self {
            Threshold::H1 { .. } => "h1",
            Threshold::F { .. } => "F",
            Threshold::HInf { .. } => "hinf",
            Threshold::G { .. } => "G",
            Threshold::Power { .. } => "power",
            Threshold::M1 { .. } => "m1",
            Threshold::M2 { .. } => "m2",
            Threshold::MInf { .. } => "minf",
            Threshold::H2 { .. } => "h2",
            Threshold::H2Power21 { .. } => "h2_21",
        }
    }

    pub fn value_sq(&self) -> Result<Rational> {
        let one = Rational::one();
        match self {
            Threshold::H1 { a_sq } => {
                half_open_a(a_sq)?;
                let a4 = a_sq * a_sq;
                Ok((int(32) - int(48) * a4) / (int(59) - int(72) * a_sq))
            }
            Threshold::F { a_sq, k } => {
                half_open_a(a_sq)?;
                if *k < 2 {
                    return domain(format!("F(a,k) needs k >= 2, got {k}"));
                }
                let k = *k as i64;
                let c = rat((k + 1) * (k + 1), 2 * k * (k + 2));
                let d = rat(2 * k * k + 4 * k + 3, 4 * (k + 1) * (k + 1));
                let a4 = a_sq * a_sq;
                Ok((&c - a_sq) / (a4 - rat(5, 2) * a_sq + c + d))
            }
            Threshold::HInf { a_sq } => {
                half_open_a(a_sq)?;
                Ok((int(2) - a_sq).recip())
            }
            Threshold::G { h } => {
                if *h < one {
                    return domain(format!("G(h) needs h >= 1, got {h}"));
                }
                let (h2, h3) = (h * h, h * h * h);
                let top = int(2) * &h3 + int(7) * &h2 + int(8) * h + int(3);
                let bottom = int(2) * h3 + int(7) * h2 + int(10) * h + int(4);
                Ok(top / bottom)
            }
            Threshold::Power { k, h } => Ok(int(2) / (int(2) + b_threshold(*k, h)?)),
            Threshold::M1 { a_sq, q } => {
                unit_a(a_sq)?;
                open_q(q)?;
                let pq = q * (&one - q);
                let d = a_sq - q;
                Ok(&pq / (&d * &d + &pq))
            }
            Threshold::M2 { a_sq, q } => {
                unit_a(a_sq)?;
                open_q(q)?;
                Ok(min_ratio([(&one - q, &one - a_sq), (q.clone(), a_sq.clone())]))
            }
            Threshold::MInf { a_sq, p, q } => {
                unit_a(a_sq)?;
                if p.is_negative() || q.is_negative() || p + q > one {
                    return domain(format!("need p, q >= 0 and p + q <= 1, got p = {p}, q = {q}"));
                }
                Ok(min_ratio([(p.clone(), &one - a_sq), (q.clone(), a_sq.clone())]))
            }
            Threshold::H2 { a_sq } => {
                half_open_a(a_sq)?;
                let a4 = a_sq * a_sq;
                Ok(int(9) * (int(9) - int(16) * a_sq) / (int(157) - int(360) * a_sq + int(144) * a4))
            }
            Threshold::H2Power21 { a_sq } => {
                half_open_a(a_sq)?;
                let a4 = a_sq * a_sq;
                Ok(int(225) * (int(15) - int(28) * a_sq) / (int(6238) - int(15015) * a_sq + int(6300) * a4))
            }
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::H1 { a_sq } | Threshold::HInf { a_sq } | Threshold::H2 { a_sq } | Threshold::H2Power21 { a_sq } => {
                write!(f, "{}(a^2={a_sq})", self.name())
            }
            Threshold::F { a_sq, k } => write!(f, "F(a^2={a_sq},k={k})"),
            Threshold::G { h } => write!(f, "G(h={h})"),
            Threshold::Power { k, h } => write!(f, "power(k={k},h={h})"),
            Threshold::M1 { a_sq, q } | Threshold::M2 { a_sq, q } => write!(f, "{}(a^2={a_sq},q={q})", self.name()),
            Threshold::MInf { a_sq, p, q } => write!(f, "minf(a^2={a_sq},p={p},q={q})"),
        }
    }
}

pub fn threshold_sq(t: &Threshold) -> Result<Rational> {
    t.value_sq()
}
