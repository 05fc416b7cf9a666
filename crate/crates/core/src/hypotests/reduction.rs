use num_traits::{One, Signed};

use super::moment::moment_matrix;
use crate::error::{domain, Result};
use crate::exact_linalg::{int, rat, Matrix, Rational, SymMatrix};
use crate::hilbert::GenHilbertParams;
use crate::powers::{power_restriction, PowerSpec};
use crate::shift_model::{make_kappa_shift, Measure, Point};

fn kappa_in_range(kappa_sq: &Rational) -> Result<()> {
    if !kappa_sq.is_positive() || *kappa_sq >= Rational::one() {
        return domain(format!("kappa^2 must lie in (0,1), got {kappa_sq}"));
    }
    Ok(())
}

/// The corner `x = 2(1 - k^2)/k^2` for which `A_k(x, h) >= 0` decides
/// k-hyponormality of the `(h, l)` power of the kappa family at `a^2 = 1/2`.
pub fn reduce_lk_to_ak(kappa_sq: &Rational, h: usize, k: usize) -> Result<GenHilbertParams> {
    kappa_in_range(kappa_sq)?;
    if k < 2 {
        return domain(format!("the reduction needs k >= 2, got {k}"));
    }
    if h == 0 {
        return domain("h must be at least 1");
    }
    let x = int(2) * (Rational::one() - kappa_sq) / kappa_sq;
    GenHilbertParams::new(k, x, int(h as i64))
}

/// Rows `(0,0), (1,0), (0,1), (2,0), (1,1), (3,0), ..., (k,0)` of the
/// order-k moment matrix of the `(h, 1)` power; the rows dropped repeat these.
pub fn jk_indices(k: usize) -> Vec<Point> {
    let mut idx = vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)];
    idx.extend((3..=k).map(|p| (p, 0)));
    idx
}

pub fn build_jk(kappa_sq: &Rational, h: usize, k: usize) -> Result<SymMatrix> {
    if k < 2 || h == 0 {
        return domain(format!("need k >= 2 and h >= 1, got k = {k}, h = {h}"));
    }
    let s = make_kappa_shift(&rat(1, 2), kappa_sq)?;
    let power = power_restriction(&s, &PowerSpec::origin(h, 1)?);
    let idx = jk_indices(k);
    Ok(SymMatrix::from_fn(idx.len(), |i, j| power.gamma2(idx[i].0 + idx[j].0, idx[i].1 + idx[j].1)))
}

/// `(1/k^2) M_(0,0)(2)` of the `(2, 1)` power of the kappa family with the
/// repeated `(0,2)` row removed, rows `(0,0), (1,0), (0,1), (2,0), (1,1)`.
pub fn two_one_power_matrix(a_sq: &Rational, kappa_sq: &Rational) -> Result<SymMatrix> {
    let s = make_kappa_shift(a_sq, kappa_sq)?;
    let power = power_restriction(&s, &PowerSpec::origin(2, 1)?);
    let full = moment_matrix(&power, (0, 0), 2);
    Ok(full.principal(&[0, 1, 2, 3, 4]).scaled(&kappa_sq.recip()))
}

/// Subnormal backward extension for a restriction measure `nu x delta_1`:
/// holds iff `beta00^2 <= 1` and `beta00^2 nu <= xi0`.
pub fn backward_extension_check(row0_measure: &Measure, restriction_measure_x: &Measure, beta00_sq: &Rational) -> bool {
    *beta00_sq <= Rational::one() && restriction_measure_x.scaled_dominated_by(beta00_sq, row0_measure)
}

/// Subnormality of the `(h, l)` power of the kappa family, through the
/// summand at the origin. Its rows above 0 are `(a, 1, 1, ...)`, with
/// measure `(1-a^2) d_0 + a^2 d_1`, its `beta(0,0)^2` is `k^2`, and its row 0
/// measure is the image of the kappa measure under `s -> s^h`, which keeps
/// the atoms at 0 and 1.
pub fn kappa_power_subnormal(a_sq: &Rational, kappa_sq: &Rational, h: usize, l: usize) -> Result<bool> {
    let s = make_kappa_shift(a_sq, kappa_sq)?;
    let power = power_restriction(&s, &PowerSpec::origin(h, l)?);
    let nu = Measure::two_point(&power.alpha_sq((0, 1)))?;
    let xi = Measure::kappa(kappa_sq)?;
    Ok(backward_extension_check(&xi, &nu, &power.beta_sq((0, 0))))
}

/// Limit as `h -> oo` of `M_(0,0)(1)` of the powers of a class-C shift,
/// where `gamma_h, gamma_2h -> q`.
pub fn class_a_limit_h(q: &Rational, y_sq: &Rational, a_sq: &Rational) -> SymMatrix {
    let ay = a_sq * y_sq;
    SymMatrix::from_rows(vec![
        vec![Rational::one(), q.clone(), y_sq.clone()],
        vec![q.clone(), q.clone(), ay.clone()],
        vec![y_sq.clone(), ay.clone(), y_sq.clone()],
    ])
    .expect("symmetric by construction")
}

/// Blocks `(A, B, C)` of the limit `P(oo)` of the 5x5 reduction of
/// `M_(0,0)(2)` of the powers, in rows `(0,0), (1,0) | (0,1), (2,0), (1,1)`.
pub fn class_a_limit_p(q: &Rational, y_sq: &Rational, a_sq: &Rational) -> (SymMatrix, Matrix, SymMatrix) {
    let ay = a_sq * y_sq;
    let a = SymMatrix::from_rows(vec![vec![Rational::one(), q.clone()], vec![q.clone(), q.clone()]])
        .expect("symmetric by construction");
    let b = Matrix::from_rows(vec![
        vec![y_sq.clone(), q.clone(), ay.clone()],
        vec![ay.clone(), q.clone(), ay.clone()],
    ])
    .expect("rectangular by construction");
    let c = SymMatrix::from_rows(vec![
        vec![y_sq.clone(), ay.clone(), ay.clone()],
        vec![ay.clone(), q.clone(), ay.clone()],
        vec![ay.clone(), ay.clone(), ay],
    ])
    .expect("symmetric by construction");
    (a, b, c)
}

/// The 5x5 reduction `P(h)` for a given shift power: rows `(0,0), (1,0),
/// (0,1), (2,0), (1,1)` of `M_(0,0)(2)`.
pub fn p_of_power(s: &crate::shift_model::Shift2D, h: usize, l: usize) -> Result<SymMatrix> {
    let power = power_restriction(s, &PowerSpec::origin(h, l)?);
    Ok(moment_matrix(&power, (0, 0), 2).principal(&[0, 1, 2, 3, 4]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::is_psd;
    use crate::hilbert::{b_threshold, build_generalized_hilbert};

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_lk_to_ak(&rat(1, 2), 1, 2).unwrap().x(), &int(2));
        assert_eq!(reduce_lk_to_ak(&rat(2, 3), 1, 2).unwrap().x(), &int(1));
        let p = reduce_lk_to_ak(&rat(9025, 10257), 9, 2).unwrap();
        assert_eq!(p.x(), &b_threshold(2, &int(9)).unwrap());
        assert!(reduce_lk_to_ak(&int(1), 1, 2).is_err());
    }

    #[test]
    fn jk_entries() {
        let k = rat(3, 5);
        for h in 1..4i64 {
            let j = build_jk(&k, h as usize, 3).unwrap();
            assert_eq!(j.order(), 6);
            assert_eq!(j.get(0, 1), &(&k * rat(h + 2, 2 * (h + 1))));
            assert_eq!(j.get(2, 2), &k);
            assert_eq!(j.get(2, 4), &(&k / int(2)));
        }
    }

    #[test]
    fn jk_psd_examples() {
        assert!(is_psd(&build_jk(&rat(2, 3), 1, 2).unwrap()));
        assert!(is_psd(&build_jk(&rat(450, 611), 2, 2).unwrap()));
        assert!(!is_psd(&build_jk(&(rat(450, 611) + rat(1, 1000)), 2, 2).unwrap()));
    }

    #[test]
    fn schur_of_jk_is_generalized_hilbert() {
        // with rows reordered as (0,1),(1,1) | (0,0),(1,0),(2,0),...,(k,0)
        // the Schur complement of the leading 2x2 of (2/k^2) J_k is A_k(x,h)
        let k2 = rat(3, 5);
        for (h, k) in [(1, 2), (2, 3), (9, 2)] {
            let j = build_jk(&k2, h, k).unwrap().scaled(&(int(2) / &k2));
            let mut order = vec![2, 4, 0, 1, 3];
            order.extend(5..k + 3);
            let r = j.permuted(&order);
            let n = r.order();
            let lead = [[r.get(0, 0).clone(), r.get(0, 1).clone()], [r.get(1, 0).clone(), r.get(1, 1).clone()]];
            let det = &lead[0][0] * &lead[1][1] - &lead[0][1] * &lead[1][0];
            let inv = [[&lead[1][1] / &det, -&lead[0][1] / &det], [-&lead[1][0] / &det, &lead[0][0] / &det]];
            let schur = SymMatrix::from_fn(n - 2, |i, jj| {
                let (ri, rj) = (i + 2, jj + 2);
                let mut v = r.get(ri, rj).clone();
                for (s, inv_row) in inv.iter().enumerate() {
                    for (t, inv_st) in inv_row.iter().enumerate() {
                        v -= r.get(ri, s) * inv_st * r.get(t, rj);
                    }
                }
                v
            });
            let a = build_generalized_hilbert(&reduce_lk_to_ak(&k2, h, k).unwrap());
            assert_eq!(schur, a);
        }
    }

    #[test]
    fn backward_extension_examples() {
        let (a, k) = (rat(1, 2), rat(2, 3));
        let nu = Measure::two_point(&a).unwrap();
        assert!(backward_extension_check(&Measure::kappa(&k).unwrap(), &nu, &k));
        let xi = Measure::class_c(&rat(1, 3), &rat(1, 3), true).unwrap();
        assert!(backward_extension_check(&xi, &nu, &rat(1, 1000)));
        assert!(!backward_extension_check(&xi, &nu, &rat(3, 4)));
        assert!(kappa_power_subnormal(&a, &k, 3, 2).unwrap());
        assert!(!kappa_power_subnormal(&a, &(k + rat(1, 1000)), 3, 2).unwrap());
    }
}
