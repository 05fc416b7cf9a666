use num_traits::{One, Signed, Zero};

use super::measure::Measure;
use crate::error::{domain, Error, Result};
use crate::exact_linalg::{int, Rational};

/// How squared weights continue after the explicit prefix. Every rule is
/// evaluated at the absolute index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Constant(Rational),
    /// `(n+1)(n+3)/(n+2)^2`.
    Kappa,
    /// `gamma_{n+1} / gamma_n` of a measure.
    MomentQuotient(Measure),
    /// Product of `size` consecutive weights of `base` starting at
    /// `offset + size * n`.
    Packet { base: Box<Shift1D>, size: usize, offset: usize },
    /// The weights of another shift at the same index.
    Follow(Box<Shift1D>),
}

impl Tail {
    fn at(&self, n: usize) -> Rational {
        match self {
            Tail::Constant(c) => c.clone(),
            Tail::Kappa => {
                let n = n as i64;
                Rational::new(((n + 1) * (n + 3)).into(), ((n + 2) * (n + 2)).into())
            }
            Tail::MomentQuotient(m) => m.moment(n + 1) / m.moment(n),
            Tail::Packet { base, size, offset } => {
                let start = offset + size * n;
                (start..start + size).fold(Rational::one(), |acc, i| acc * base.weight_sq(i))
            }
            Tail::Follow(base) => base.weight_sq(n),
        }
    }

    fn bound(&self) -> Rational {
        match self {
            Tail::Constant(c) => c.clone(),
            Tail::Kappa => Rational::one(),
            Tail::MomentQuotient(m) => m.max_support(),
            Tail::Packet { base, size, .. } => num_traits::pow(base.norm_bound(), *size),
            Tail::Follow(base) => base.norm_bound(),
        }
    }
}

/// A 1-variable weighted shift given by its squared weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift1D {
    prefix: Vec<Rational>,
    tail: Tail,
}

impl Shift1D {
    pub fn new(prefix: Vec<Rational>, tail: Tail) -> Result<Self> {
        if let Some(w) = prefix.iter().find(|w| !w.is_positive()) {
            return domain(format!("squared weights must be positive, got {w}"));
        }
        match &tail {
            Tail::Constant(c) if !c.is_positive() => {
                return domain(format!("squared weights must be positive, got {c}"));
            }
            Tail::MomentQuotient(m) if m.max_support().is_zero() => {
                return Err(Error::DegenerateMeasure("measure concentrated at 0 has zero moments".into()));
            }
            Tail::Packet { size: 0, .. } => return domain("packet size must be at least 1"),
            _ => {}
        }
        Ok(Self { prefix, tail })
    }

    /// `(w_0, w_1, ..., c, c, ...)`.
    pub fn constant_tail(prefix: Vec<Rational>, c: Rational) -> Result<Self> {
        Self::new(prefix, Tail::Constant(c))
    }

    /// The unilateral shift `U_+`.
    pub fn unweighted() -> Self {
        Self { prefix: Vec::new(), tail: Tail::Constant(Rational::one()) }
    }

    /// The shift whose moments are those of `m`.
    pub fn from_measure(m: Measure) -> Result<Self> {
        Self::new(Vec::new(), Tail::MomentQuotient(m))
    }

    pub fn weight_sq(&self, n: usize) -> Rational {
        match self.prefix.get(n) {
            Some(w) => w.clone(),
            None => self.tail.at(n),
        }
    }

    /// `gamma_n = w_0 w_1 ... w_{n-1}`.
    pub fn moment(&self, n: usize) -> Rational {
        (0..n).fold(Rational::one(), |acc, i| acc * self.weight_sq(i))
    }

    /// Upper bound on the squared weights; the supremum for the
    /// nondecreasing tails every family uses.
    pub fn norm_bound(&self) -> Rational {
        self.prefix.iter().fold(self.tail.bound(), |acc, w| if *w > acc { w.clone() } else { acc })
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The restriction to the span of `e_{mj+i}`: squared weights are
    /// products of `m` consecutive squared weights starting at `i`.
    pub fn restriction(&self, m: usize, i: usize) -> Result<Shift1D> {
        if m == 0 || i >= m {
            return domain(format!("invalid restriction (m, i) = ({m}, {i})"));
        }
        Ok(self.packet(m, i))
    }

    pub(crate) fn packet(&self, size: usize, offset: usize) -> Shift1D {
        if size == 1 && offset == 0 {
            return self.clone();
        }
        if let Tail::Constant(c) = &self.tail {
            if self.prefix.len() <= offset {
                return Shift1D { prefix: Vec::new(), tail: Tail::Constant(num_traits::pow(c.clone(), size)) };
            }
        }
        Shift1D { prefix: Vec::new(), tail: Tail::Packet { base: Box::new(self.clone()), size, offset } }
    }

    pub fn berger_match(&self, m: &Measure, upto: usize) -> bool {
        let mut gamma = Rational::one();
        for n in 0..=upto {
            if n > 0 {
                gamma *= self.weight_sq(n - 1);
            }
            if gamma != m.moment(n) {
                return false;
            }
        }
        true
    }

    pub fn first_weights(&self, count: usize) -> Vec<Rational> {
        (0..count).map(|n| self.weight_sq(n)).collect()
    }
}

pub(crate) fn kappa_row0(kappa_sq: &Rational) -> Shift1D {
    Shift1D { prefix: vec![kappa_sq * int(3) / int(4)], tail: Tail::Kappa }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    #[test]
    fn moments() {
        let s = Shift1D::constant_tail(vec![rat(1, 4)], int(1)).unwrap();
        assert_eq!(s.moment(0), int(1));
        assert_eq!(s.moment(3), rat(1, 4));
        let kappa = rat(1, 2);
        let row = kappa_row0(&kappa);
        for n in 1..12i64 {
            assert_eq!(row.moment(n as usize), &kappa * rat(n + 2, 2 * (n + 1)));
        }
    }

    #[test]
    fn berger_examples() {
        assert!(Shift1D::unweighted().berger_match(&Measure::dirac(int(1)).unwrap(), 20));
        let sa = Shift1D::constant_tail(vec![rat(1, 2)], int(1)).unwrap();
        assert!(sa.berger_match(&Measure::two_point(&rat(1, 2)).unwrap(), 20));
        assert!(kappa_row0(&rat(1, 2)).berger_match(&Measure::kappa(&rat(1, 2)).unwrap(), 20));
        assert!(!kappa_row0(&rat(1, 2)).berger_match(&Measure::kappa(&rat(1, 3)).unwrap(), 20));
    }

    #[test]
    fn restriction_examples() {
        let s = Shift1D::new(vec![], Tail::MomentQuotient(Measure::new(vec![], int(1)).unwrap())).unwrap();
        // uniform measure moments 1/(n+1) give weights (n+1)/(n+2)
        assert_eq!(s.first_weights(3), vec![rat(1, 2), rat(2, 3), rat(3, 4)]);
        let harmonic = Shift1D::new(vec![], Tail::Packet { base: Box::new(s), size: 1, offset: 0 }).unwrap();
        assert_eq!(harmonic.restriction(1, 0).unwrap(), harmonic);
        let inv = Shift1D::new((2..12).map(|n| rat(1, n)).collect(), Tail::Constant(rat(1, 100))).unwrap();
        assert_eq!(inv.restriction(2, 1).unwrap().first_weights(2), vec![rat(1, 12), rat(1, 30)]);
        assert_eq!(kappa_row0(&rat(1, 2)).restriction(2, 0).unwrap().weight_sq(0), rat(1, 2) * rat(2, 3));
        assert!(inv.restriction(2, 2).is_err());
    }

    #[test]
    fn norm_bounds() {
        assert_eq!(kappa_row0(&rat(1, 2)).norm_bound(), int(1));
        assert_eq!(Shift1D::constant_tail(vec![int(2)], int(1)).unwrap().norm_bound(), int(2));
        let s = Shift1D::from_measure(Measure::two_point(&rat(1, 3)).unwrap()).unwrap();
        assert_eq!(s.norm_bound(), int(1));
    }
}
