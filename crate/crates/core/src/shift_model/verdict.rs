use std::fmt;

use crate::exact_linalg::Rational;

/// The property a verdict speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Hyponormal.
    H1,
    /// k-hyponormal for some `k >= 2`.
    Hk(usize),
    /// Subnormal.
    HInf,
}

impl Property {
    /// `H1` for `k = 1`, `Hk(k)` otherwise.
    pub fn level(k: usize) -> Self {
        if k <= 1 { Property::H1 } else { Property::Hk(k) }
    }

    /// `Some(k)` for finite levels.
    pub fn k(&self) -> Option<usize> {
        match self {
            Property::H1 => Some(1),
            Property::Hk(k) => Some(*k),
            Property::HInf => None,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::H1 => write!(f, "H1"),
            Property::Hk(k) => write!(f, "H{k}"),
            Property::HInf => write!(f, "Hinf"),
        }
    }
}

/// Outcome of a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    /// Squared threshold that decided the verdict, when a closed form did.
    pub threshold_sq: Option<Rational>,
    /// `threshold_sq` minus the tested squared parameter; zero on the
    /// boundary.
    pub margin: Option<Rational>,
    /// Human-readable statement of the rule applied.
    pub rule: String,
    /// True when only finitely many base points were inspected.
    pub window_limited: bool,
}

impl Verdict {
    /// Verdict of the form `value <= threshold`.
    pub fn by_threshold(property: Property, value: &Rational, threshold: Rational, rule: impl Into<String>) -> Self {
        let margin = &threshold - value;
        Self {
            property,
            holds: *value <= threshold,
            threshold_sq: Some(threshold),
            margin: Some(margin),
            rule: rule.into(),
            window_limited: false,
        }
    }

    pub fn on_boundary(&self) -> bool {
        self.margin.as_ref().is_some_and(num_traits::Zero::is_zero)
    }
}
