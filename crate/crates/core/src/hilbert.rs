//! The generalized Hilbert matrix `A_k(x, h)`: a `(k+1) x (k+1)` Hankel-type
//! matrix with entries `1/((i+j)h + 1)` (0-based) except for a free corner
//! entry `x`.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::exact_linalg::{int, is_psd, Rational, SymMatrix};

/// Parameters of `A_k(x, h)`. Construction enforces `k >= 1`, `x > 0`,
/// `h > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenHilbertParams {
    k: usize,
    x: Rational,
    h: Rational,
}

impl GenHilbertParams {
    pub fn new(k: usize, x: Rational, h: Rational) -> Result<Self> {
        if k == 0 {
            return domain("k must be at least 1");
        }
        if !x.is_positive() {
            return domain(format!("corner entry x must be positive, got {x}"));
        }
        if !h.is_positive() {
            return domain(format!("step h must be positive, got {h}"));
        }
        Ok(Self { k, x, h })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }
}

fn entry(h: &Rational, i: usize, j: usize) -> Rational {
    (h * int((i + j) as i64) + Rational::one()).recip()
}

pub fn build_generalized_hilbert(p: &GenHilbertParams) -> SymMatrix {
    SymMatrix::from_fn(p.k + 1, |i, j| if i == 0 && j == 0 { p.x.clone() } else { entry(&p.h, i, j) })
}

/// `(mh+1)^2 / (mh)^2` and `(2mh+1) / (mh)^2`, the multiplier and offset of
/// one step of the `f` recursion at level `m`.
fn step(h: &Rational, m: usize) -> (Rational, Rational) {
    let mh = h * int(m as i64);
    let mh_sq = &mh * &mh;
    let r = (&mh + Rational::one()) * (&mh + Rational::one()) / &mh_sq;
    let c = (&mh * int(2) + Rational::one()) / mh_sq;
    (r, c)
}

/// `f_0 = x`, `f_{l+1} = f_l ((k-l)h+1)^2/((k-l)h)^2 - (2(k-l)h+1)/((k-l)h)^2`;
/// returns `f_k`.
pub fn f_recursive(x: &Rational, h: &Rational, k: usize) -> Rational {
    (0..k).fold(x.clone(), |f, l| {
        let (r, c) = step(h, k - l);
        f * r - c
    })
}

/// The telescoped form of the recursion:
/// `f_k = x prod_{m=1}^k r_m - sum_{m=1}^k c_m prod_{m'<m} r_{m'}`.
pub fn f_closed_form(x: &Rational, h: &Rational, k: usize) -> Rational {
    let mut prefix = Rational::one();
    let mut subtracted = Rational::zero();
    for m in 1..=k {
        let (r, c) = step(h, m);
        subtracted += c * &prefix;
        prefix *= r;
    }
    x * prefix - subtracted
}

/// `g(h, k) = prod_{m=1}^k [ 1/(2mh+1) * prod_{i=m}^{2m-1} 1/(ih+1)^2 ]`.
pub fn g_factor(h: &Rational, k: usize) -> Rational {
    let mut g = Rational::one();
    for m in 1..=k {
        g /= h * int(2 * m as i64) + Rational::one();
        for i in m..2 * m {
            let t = h * int(i as i64) + Rational::one();
            g /= &t * &t;
        }
    }
    g
}

/// `n^! = 1! 2! ... n!`.
pub fn superfactorial(n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut fact = Rational::one();
    for j in 1..=n {
        fact *= int(j as i64);
        acc *= &fact;
    }
    acc
}

/// `det A_k(x,h) = h^{k(k+1)} (k^!)^2 g(h,k) f_k`.
pub fn det_generalized_hilbert(p: &GenHilbertParams) -> Rational {
    let k = p.k;
    let kf = superfactorial(k);
    num_traits::pow(p.h.clone(), k * (k + 1)) * &kf * &kf * g_factor(&p.h, k) * f_recursive(&p.x, &p.h, k)
}

/// `b(1,h) = (2h+1)/(h+1)^2`, `b(j,h) = [b(j-1,h) + (2jh+1)/(jh)^2] (jh/(jh+1))^2`.
pub fn b_threshold(k: usize, h: &Rational) -> Result<Rational> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    if *h < Rational::one() {
        return domain(format!("b(k,h) needs h >= 1, got {h}"));
    }
    Ok(b_unchecked(k, h))
}

fn b_unchecked(k: usize, h: &Rational) -> Rational {
    let mut b = Rational::zero();
    for j in 1..=k {
        let (r, c) = step(h, j);
        b = (b + c) / r;
    }
    b
}

/// Positivity of `A_k(x,h)` by the corner threshold `x >= b(k,h)`. Only valid
/// for `h >= 1`; use [`is_psd`] on the assembled matrix otherwise.
pub fn is_psd_generalized_hilbert(p: &GenHilbertParams) -> Result<bool> {
    Ok(p.x >= b_threshold(p.k, &p.h)?)
}

/// `det A_k(1,1) = (k^!)^4 / (2k+1)^!`.
pub fn classical_hilbert_det(k: usize) -> Result<Rational> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    Ok(num_traits::pow(superfactorial(k), 4) / superfactorial(2 * k + 1))
}

/// Assembled-matrix positivity: the only path for `0 < h < 1`.
pub fn is_psd_assembled(p: &GenHilbertParams) -> bool {
    is_psd(&build_generalized_hilbert(p))
}
