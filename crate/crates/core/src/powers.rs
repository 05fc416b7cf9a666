//! Powers `(T1^h, T2^l)` of a 2-variable shift, which split as a direct sum
//! of shifts over the sublattices `{(h i + m, l j + n)}`.

use std::fmt;

use crate::error::{domain, Result};
use crate::exact_linalg::Rational;
use crate::shift_model::{make_s1, Shift2D};
use num_traits::One;

/// Power `(h, l)` together with the sublattice offset `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerSpec {
    h: usize,
    l: usize,
    m: usize,
    n: usize,
}

impl PowerSpec {
    pub fn new(h: usize, l: usize, m: usize, n: usize) -> Result<Self> {
        if h == 0 || l == 0 {
            return domain(format!("powers must be at least 1, got ({h}, {l})"));
        }
        if m >= h || n >= l {
            return domain(format!("offset ({m}, {n}) must satisfy m < {h}, n < {l}"));
        }
        Ok(Self { h, l, m, n })
    }

    /// The summand through the origin.
    pub fn origin(h: usize, l: usize) -> Result<Self> {
        Self::new(h, l, 0, 0)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn offset(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// All offsets of the power `(h, l)`.
    pub fn all(h: usize, l: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(h * l);
        for m in 0..h {
            for n in 0..l {
                out.push(Self::new(h, l, m, n)?);
            }
        }
        Ok(out)
    }
}

/// Squared `alpha` at `(i, j)` is the product of `h` consecutive squared
/// weights of row `l j + n` from column `h i + m`; `beta` likewise.
pub fn power_restriction(s: &Shift2D, ps: &PowerSpec) -> Shift2D {
    s.sublattice(ps.h, ps.l, ps.m, ps.n)
}

/// `gamma_{(k1, k2)}` of the summand through the origin.
pub fn power_moments(s: &Shift2D, h: usize, l: usize, k1: usize, k2: usize) -> Result<Rational> {
    let spec = PowerSpec::origin(h, l)?;
    Ok(power_restriction(s, &spec).gamma2(k1, k2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    /// `<x, y, a>` itself.
    Original,
    /// `<1, ay/x, 1>`.
    Row,
    /// `<a, 1, a>`.
    Column,
    /// `<1, 1, 1>`.
    Trivial,
}

impl SummandKind {
    /// Which summand the sublattice through `(m, n)` is equivalent to.
    pub fn for_offset(m: usize, n: usize) -> Self {
        match (m, n) {
            (0, 0) => SummandKind::Original,
            (_, 0) => SummandKind::Row,
            (0, _) => SummandKind::Column,
            _ => SummandKind::Trivial,
        }
    }
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::Original => "original",
            SummandKind::Row => "row",
            SummandKind::Column => "column",
            SummandKind::Trivial => "trivial",
        })
    }
}

/// One summand `<x, y, a>` of a power of an S1 shift, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1Summand {
    pub kind: SummandKind,
    pub multiplicity: usize,
    /// `(x^2, y^2, a^2)`.
    pub params_sq: (Rational, Rational, Rational),
}

impl S1Summand {
    pub fn build(&self) -> Result<Shift2D> {
        let (x, y, a) = &self.params_sq;
        make_s1(x, y, a)
    }
}

/// `<x,y,a>^(h,l) = <x,y,a> + (h-1)<1,ay/x,1> + (l-1)<a,1,a> + (h-1)(l-1)<1,1,1>`.
/// Summands of multiplicity zero are omitted.
pub fn s1_power_decompose(x_sq: &Rational, y_sq: &Rational, a_sq: &Rational, h: usize, l: usize) -> Result<Vec<S1Summand>> {
    make_s1(x_sq, y_sq, a_sq)?;
    if h == 0 || l == 0 {
        return domain(format!("powers must be at least 1, got ({h}, {l})"));
    }
    let one = Rational::one();
    let all = [
        (SummandKind::Original, 1, (x_sq.clone(), y_sq.clone(), a_sq.clone())),
        (SummandKind::Row, h - 1, (one.clone(), a_sq * y_sq / x_sq, one.clone())),
        (SummandKind::Column, l - 1, (a_sq.clone(), one.clone(), a_sq.clone())),
        (SummandKind::Trivial, (h - 1) * (l - 1), (one.clone(), one.clone(), one)),
    ];
    Ok(all
        .into_iter()
        .filter(|(_, mult, _)| *mult > 0)
        .map(|(kind, multiplicity, params_sq)| S1Summand { kind, multiplicity, params_sq })
        .collect())
}
