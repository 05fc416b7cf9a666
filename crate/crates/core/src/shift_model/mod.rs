//! Weighted shifts, their moments, and the named families.

mod families;
mod measure;
mod shift1d;
mod shift2d;
mod verdict;

pub use families::{class_a_of_kappa, make_class_a, make_kappa_shift, make_s1, FamilyParams};
pub use measure::Measure;
pub use shift1d::{Shift1D, Tail};
pub use shift2d::{BetaField, Point, Shift2D};
pub use verdict::{Property, Verdict};

use crate::error::Result;
use crate::exact_linalg::Rational;

pub fn measure_moment(m: &Measure, n: usize) -> Rational {
    m.moment(n)
}

pub fn shift_moment(s: &Shift1D, n: usize) -> Rational {
    s.moment(n)
}

pub fn berger_match(s: &Shift1D, m: &Measure, upto: usize) -> bool {
    s.berger_match(m, upto)
}

pub fn gamma2(s: &Shift2D, k1: usize, k2: usize) -> Rational {
    s.gamma2(k1, k2)
}

pub fn check_commuting(s: &Shift2D, window: usize) -> bool {
    s.check_commuting(window)
}

pub fn restriction_1d(s: &Shift1D, m: usize, i: usize) -> Result<Shift1D> {
    s.restriction(m, i)
}
