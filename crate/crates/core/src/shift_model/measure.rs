use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{int, Rational};

/// A probability measure on `[0, 1]` made of finitely many atoms plus a
/// constant-density component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    /// `(location, mass)` sorted by location, masses strictly positive.
    atoms: Vec<(Rational, Rational)>,
    uniform: Rational,
}

impl Measure {
    pub fn new(atoms: Vec<(Rational, Rational)>, uniform: Rational) -> Result<Self> {
        let bad = |msg: String| Err(Error::DegenerateMeasure(msg));
        if uniform.is_negative() {
            return bad(format!("negative uniform mass {uniform}"));
        }
        let mut kept = Vec::with_capacity(atoms.len());
        for (loc, mass) in atoms {
            if mass.is_negative() {
                return bad(format!("negative mass {mass} at {loc}"));
            }
            if loc.is_negative() || loc > Rational::one() {
                return bad(format!("atom location {loc} outside [0,1]"));
            }
            if !mass.is_zero() {
                kept.push((loc, mass));
            }
        }
        kept.sort_by(|a, b| a.0.cmp(&b.0));
        if kept.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("repeated atom location".into());
        }
        let total = kept.iter().fold(uniform.clone(), |acc, (_, m)| acc + m);
        if !total.is_one() {
            return bad(format!("total mass is {total}, not 1"));
        }
        Ok(Self { atoms: kept, uniform })
    }

    pub fn dirac(loc: Rational) -> Result<Self> {
        Self::new(vec![(loc, Rational::one())], Rational::zero())
    }

    /// `(1 - a^2) delta_0 + a^2 delta_1`, the measure of `(a, 1, 1, ...)`.
    pub fn two_point(a_sq: &Rational) -> Result<Self> {
        Self::new(
            vec![(Rational::zero(), Rational::one() - a_sq), (Rational::one(), a_sq.clone())],
            Rational::zero(),
        )
    }

    /// `(1 - k^2) delta_0 + (k^2/2) ds + (k^2/2) delta_1`.
    pub fn kappa(kappa_sq: &Rational) -> Result<Self> {
        let half = kappa_sq / int(2);
        Self::new(
            vec![(Rational::zero(), Rational::one() - kappa_sq), (Rational::one(), half.clone())],
            half,
        )
    }

    /// `p delta_0 + q delta_1 + (1 - p - q) ds` when `uniform`, and
    /// `p delta_0 + q delta_1` (requiring `p + q = 1`) otherwise.
    pub fn class_c(p: &Rational, q: &Rational, uniform: bool) -> Result<Self> {
        let rest = Rational::one() - p - q;
        if !uniform && !rest.is_zero() {
            return Err(Error::DegenerateMeasure(format!(
                "without a uniform part p + q must be 1, got {}",
                p + q
            )));
        }
        Self::new(vec![(Rational::zero(), p.clone()), (Rational::one(), q.clone())], rest)
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn uniform_mass(&self) -> &Rational {
        &self.uniform
    }

    pub fn atom_at(&self, loc: &Rational) -> Rational {
        self.atoms.iter().find(|(l, _)| l == loc).map_or_else(Rational::zero, |(_, m)| m.clone())
    }

    /// `int t^n d mu`, with `0^0 = 1`.
    pub fn moment(&self, n: usize) -> Rational {
        let atomic = self
            .atoms
            .iter()
            .fold(Rational::zero(), |acc, (loc, mass)| acc + mass * num_traits::pow(loc.clone(), n));
        atomic + &self.uniform / int(n as i64 + 1)
    }

    /// Right end of the support.
    pub fn max_support(&self) -> Rational {
        if !self.uniform.is_zero() {
            return Rational::one();
        }
        self.atoms.last().map_or_else(Rational::zero, |(l, _)| l.clone())
    }

    /// Whether `c * self <= other` setwise. Atoms must sit under atoms of
    /// `other` (the uniform part has none) and the densities must compare.
    pub fn scaled_dominated_by(&self, c: &Rational, other: &Measure) -> bool {
        self.atoms.iter().all(|(loc, mass)| c * mass <= other.atom_at(loc)) && c * &self.uniform <= other.uniform
    }
}
