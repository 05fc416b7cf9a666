use num_bigint::Sign;
use num_traits::{Signed, Zero};

use crate::error::{domain, Result};
use crate::exact_linalg::{exact_sqrt, is_psd, sign, Rational, SymMatrix};
use crate::shift_model::{Point, Property, Shift2D, Verdict};

/// Exponents `(p, q)` with `p + q <= k` in graded lexicographic order:
/// `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...`.
pub fn monomial_indices(k: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for d in 0..=k {
        for p in (0..=d).rev() {
            out.push((p, d - p));
        }
    }
    out
}

/// `(gamma_{base + (n,m) + (p,q)})` over [`monomial_indices`].
pub fn moment_matrix(s: &Shift2D, base: Point, k: usize) -> SymMatrix {
    moment_matrix_with(|k1, k2| s.gamma2(k1, k2), base, k)
}

/// [`moment_matrix`] for an arbitrary moment function.
pub fn moment_matrix_with(gamma: impl Fn(usize, usize) -> Rational, base: Point, k: usize) -> SymMatrix {
    let idx = monomial_indices(k);
    SymMatrix::from_fn(idx.len(), |i, j| gamma(base.0 + idx[i].0 + idx[j].0, base.1 + idx[i].1 + idx[j].1))
}

/// The 6x6 matrix of the Fifteen-point test.
pub fn fifteen_point_matrix(s: &Shift2D, base: Point) -> SymMatrix {
    moment_matrix(s, base, 2)
}

/// `M_base(k) >= 0` at every base point of `[0, window]^2`. A failure is
/// conclusive; a pass only covers the window.
pub fn k_hyponormal_window(s: &Shift2D, k: usize, window: usize) -> Result<Verdict> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let bad = (0..=window)
        .flat_map(|k1| (0..=window).map(move |k2| (k1, k2)))
        .find(|&base| !is_psd(&moment_matrix(s, base, k)));
    let rule = match bad {
        Some(b) => format!("moment matrix of order {k} fails to be positive at base point {b:?}"),
        None => format!("moment matrix of order {k} is positive at every base point in [0,{window}]^2"),
    };
    Ok(Verdict {
        property: Property::level(k),
        holds: bad.is_none(),
        threshold_sq: None,
        margin: None,
        rule,
        window_limited: true,
    })
}

/// The 2x2 Six-point matrix at a base point. The off-diagonal entry
/// `alpha(k+e2) beta(k+e1) - alpha(k) beta(k)` is a difference of square
/// roots, so it is kept as a sign and a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixPoint {
    pub diag: (Rational, Rational),
    pub offdiag_sign: Sign,
    pub offdiag_sq: Rational,
}

impl SixPoint {
    pub fn is_psd(&self) -> bool {
        !self.diag.0.is_negative() && !self.diag.1.is_negative() && &self.diag.0 * &self.diag.1 >= self.offdiag_sq
    }
}

pub fn six_point_matrix(s: &Shift2D, (k1, k2): Point) -> Result<SixPoint> {
    let a = s.alpha_sq((k1, k2));
    let b = s.beta_sq((k1, k2));
    let u = s.alpha_sq((k1, k2 + 1)) * s.beta_sq((k1 + 1, k2));
    let v = &a * &b;
    let Some(cross) = exact_sqrt(&(&u * &v)) else {
        return domain(format!("off-diagonal entry at {:?} is not representable exactly", (k1, k2)));
    };
    let offdiag_sq = &u + &v - cross * Rational::from_integer(2.into());
    let offdiag_sign = if offdiag_sq.is_zero() { Sign::NoSign } else { sign(&(&u - &v)) };
    Ok(SixPoint {
        diag: (s.alpha_sq((k1 + 1, k2)) - a, s.beta_sq((k1, k2 + 1)) - b),
        offdiag_sign,
        offdiag_sq,
    })
}

/// Six-point test at every base point of `[0, window]^2`.
pub fn hyponormal_six_point_window(s: &Shift2D, window: usize) -> Result<Verdict> {
    let mut bad = None;
    'outer: for k1 in 0..=window {
        for k2 in 0..=window {
            if !six_point_matrix(s, (k1, k2))?.is_psd() {
                bad = Some((k1, k2));
                break 'outer;
            }
        }
    }
    let rule = match bad {
        Some(b) => format!("six-point matrix fails to be positive at base point {b:?}"),
        None => format!("six-point matrix is positive at every base point in [0,{window}]^2"),
    };
    Ok(Verdict { property: Property::H1, holds: bad.is_none(), threshold_sq: None, margin: None, rule, window_limited: true })
}
