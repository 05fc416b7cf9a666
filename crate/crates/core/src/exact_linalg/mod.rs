//! Exact rationals and symmetric-matrix primitives.

mod matrix;
mod rational;

pub use matrix::{det, is_psd, leading_minors, smuljan_psd, Matrix, SymMatrix};
pub use rational::{
    exact_sqrt, fraction_string, int, parse_rational, rat, sign, sqrt_decimal, to_decimal, Rational,
};
