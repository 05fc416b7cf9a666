//! Exact-arithmetic tests for hyponormality, k-hyponormality and
//! subnormality of 2-variable weighted shifts.
//!
//! Every scalar is a [`Rational`]; weights are stored squared so that the
//! named families stay inside the rationals.

pub mod error;
pub mod exact_linalg;
pub mod hilbert;
pub mod hypotests;
pub mod powers;
pub mod regression;
pub mod shift_model;

pub use error::{Error, Result};
pub use exact_linalg::{Matrix, Rational, SymMatrix};
