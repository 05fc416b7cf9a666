use hyposhift::exact_linalg::{det, is_psd, leading_minors, rat, smuljan_psd, Matrix, Rational, SymMatrix};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Cofactor expansion along the first row.
fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rat(1, 1);
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn rows(m: &SymMatrix) -> Vec<Vec<Rational>> {
    m.rows().map(<[Rational]>::to_vec).collect()
}

/// A symmetric matrix is PSD iff every principal minor is nonnegative.
fn psd_by_principal_minors(m: &SymMatrix) -> bool {
    let n = m.order();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        !laplace_det(&rows(&m.principal(&idx))).is_negative()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn symmetric(max_order: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(small_rational(), n * (n + 1) / 2).prop_map(move |vals| {
            let mut it = vals.into_iter();
            let mut upper = vec![vec![Rational::zero(); n]; n];
            for (i, row) in upper.iter_mut().enumerate() {
                for v in row.iter_mut().skip(i) {
                    *v = it.next().unwrap();
                }
            }
            SymMatrix::from_fn(n, |i, j| upper[i][j].clone())
        })
    })
}

/// `V V^T` for a random `n x r` matrix `V`: PSD, usually singular.
fn gram(max_order: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_order, 1usize..=3).prop_flat_map(|(n, r)| {
        prop::collection::vec(small_rational(), n * r).prop_map(move |v| {
            SymMatrix::from_fn(n, |i, j| (0..r).fold(Rational::zero(), |acc, t| acc + &v[i * r + t] * &v[j * r + t]))
        })
    })
}

/// Gram matrices with one diagonal entry nudged, landing on both sides.
fn near_psd(max_order: usize) -> impl Strategy<Value = SymMatrix> {
    (gram(max_order), -2i64..=2, 0usize..6).prop_map(|(g, d, at)| {
        let n = g.order();
        let at = at % n;
        SymMatrix::from_fn(n, |i, j| if i == j && i == at { g.get(i, j) + rat(d, 7) } else { g.get(i, j).clone() })
    })
}

fn any_matrix(max_order: usize) -> impl Strategy<Value = SymMatrix> {
    prop_oneof![symmetric(max_order), gram(max_order), near_psd(max_order)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn psd_matches_principal_minors(m in any_matrix(6)) {
        prop_assert_eq!(is_psd(&m), psd_by_principal_minors(&m));
    }

    #[test]
    fn det_matches_laplace(m in any_matrix(6)) {
        prop_assert_eq!(det(&m), laplace_det(&rows(&m)));
    }

    #[test]
    fn det_is_last_leading_minor(m in any_matrix(6)) {
        prop_assert_eq!(leading_minors(&m).last().cloned().unwrap(), det(&m));
    }

    #[test]
    fn permutation_congruence(m in any_matrix(6), seed in any::<u64>()) {
        let n = m.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(is_psd(&m.permuted(&perm)), is_psd(&m));
    }

    #[test]
    fn smuljan_matches_assembly(m in any_matrix(5), split in 1usize..5) {
        let n = m.order();
        prop_assume!(n >= 2);
        let p = split.min(n - 1);
        let a = m.principal(&(0..p).collect::<Vec<_>>());
        let c = m.principal(&(p..n).collect::<Vec<_>>());
        let b = Matrix::from_fn(p, n - p, |i, j| m.get(i, p + j).clone());
        let assembled = SymMatrix::from_blocks(&a, &b, &c).unwrap();
        prop_assert_eq!(&assembled, &m);
        prop_assert_eq!(smuljan_psd(&a, &b, &c).unwrap(), is_psd(&m));
    }
}
