use hyposhift::exact_linalg::{int, rat, Rational};
use hyposhift::powers::{power_restriction, s1_power_decompose, PowerSpec, SummandKind};
use hyposhift::shift_model::{
    class_a_of_kappa, make_class_a, make_kappa_shift, make_s1, Measure, Shift1D, Shift2D,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn unit(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(move |d| (1..=d).prop_map(move |n| rat(n, d)))
}

fn half_unit() -> impl Strategy<Value = Rational> {
    (1i64..=10).prop_map(|n| rat(n, 20))
}

fn open_unit() -> impl Strategy<Value = Rational> {
    (1i64..=19).prop_map(|n| rat(n, 20))
}

fn s1_params() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (unit(6), unit(6), unit(6)).prop_filter("a^2 y^2 <= x^2", |(x, y, a)| a * y <= *x)
}

fn class_a_params() -> impl Strategy<Value = (Rational, Rational, bool, Rational, Rational)> {
    (0i64..=10, 1i64..=10, unit(5), unit(5))
        .prop_filter("p + q <= 1", |(p, q, _, _)| p + q <= 10)
        .prop_map(|(p, q, y, a)| (rat(p, 10), rat(q, 10), p + q != 10, y, a))
}

fn shifts() -> impl Strategy<Value = Shift2D> {
    prop_oneof![
        (half_unit(), open_unit()).prop_map(|(a, k)| make_kappa_shift(&a, &k).unwrap()),
        s1_params().prop_map(|(x, y, a)| make_s1(&x, &y, &a).unwrap()),
        class_a_params().prop_map(|(p, q, u, y, a)| make_class_a(&p, &q, u, &y, &a).unwrap()),
        (open_unit(), unit(4), unit(4)).prop_map(|(k, y, a)| class_a_of_kappa(&k, &y, &a).unwrap()),
        (unit(4), unit(4)).prop_map(|(a, b)| Shift2D::tensor(
            Shift1D::constant_tail(vec![a], int(1)).unwrap(),
            Shift1D::constant_tail(vec![b], int(1)).unwrap()
        )),
    ]
}

/// Moments along the other path, multiplied out from the weights.
fn gamma_by_hand(s: &Shift2D, k1: usize, k2: usize) -> Rational {
    let mut g = Rational::one();
    for i in 0..k1 {
        g *= s.alpha_sq((i, 0));
    }
    for j in 0..k2 {
        g *= s.beta_sq((k1, j));
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn moments_are_path_independent(s in shifts()) {
        for k1 in 0..=6 {
            for k2 in 0..=6 {
                let g = s.gamma2(k1, k2);
                prop_assert_eq!(&g, &s.gamma2_up_then_right(k1, k2));
                prop_assert_eq!(&g, &gamma_by_hand(&s, k1, k2));
            }
        }
    }

    #[test]
    fn constructors_commute(s in shifts()) {
        prop_assert!(s.check_commuting(8));
    }

    #[test]
    fn powers_commute_and_match_moments(s in shifts(), h in 1usize..=3, l in 1usize..=3) {
        for ps in PowerSpec::all(h, l).unwrap() {
            let p = power_restriction(&s, &ps);
            prop_assert!(p.check_commuting(6));
            let (m, n) = ps.offset();
            let base = s.gamma2(m, n);
            for k1 in 0..=4 {
                for k2 in 0..=4 {
                    prop_assert_eq!(p.gamma2(k1, k2), s.gamma2(h * k1 + m, l * k2 + n) / &base);
                }
            }
        }
    }

    #[test]
    fn s1_power_summands(params in s1_params(), h in 1usize..=4, l in 1usize..=4) {
        let (x, y, a) = params;
        let s = make_s1(&x, &y, &a).unwrap();
        let parts = s1_power_decompose(&x, &y, &a, h, l).unwrap();
        prop_assert_eq!(parts.iter().map(|p| p.multiplicity).sum::<usize>(), h * l);
        for ps in PowerSpec::all(h, l).unwrap() {
            let (m, n) = ps.offset();
            let kind = SummandKind::for_offset(m, n);
            let part = parts.iter().find(|p| p.kind == kind).unwrap();
            let summand = part.build().unwrap();
            let restricted = power_restriction(&s, &ps);
            for k1 in 0..=4 {
                for k2 in 0..=4 {
                    prop_assert_eq!(restricted.gamma2(k1, k2), summand.gamma2(k1, k2));
                }
            }
        }
    }
}

#[test]
fn one_variable_restriction_multiplies_packets() {
    let s = Shift1D::constant_tail(vec![rat(1, 2), rat(2, 3), rat(3, 4), rat(4, 5)], int(1)).unwrap();
    for m in 1..=3 {
        for i in 0..m {
            let r = s.restriction(m, i).unwrap();
            for n in 0..6 {
                let by_hand = (0..m).fold(Rational::one(), |acc, t| acc * s.weight_sq(n * m + i + t));
                assert_eq!(r.weight_sq(n), by_hand);
                assert_eq!(r.moment(n), s.moment(n * m + i) / s.moment(i));
            }
        }
    }
}

#[test]
fn measure_shift_matches_moments() {
    for (p, q) in [(rat(1, 3), rat(1, 3)), (int(0), rat(1, 2)), (rat(1, 4), rat(3, 4))] {
        let m = Measure::class_c(&p, &q, p.clone() + &q != int(1)).unwrap();
        let s = Shift1D::from_measure(m.clone()).unwrap();
        assert!(s.berger_match(&m, 12));
        for n in 0..12 {
            assert_eq!(s.moment(n), m.moment(n) / m.moment(0));
        }
    }
}

#[test]
fn class_c_moment_quotients_decrease_to_q() {
    for (p, q) in [(rat(1, 3), rat(1, 3)), (rat(1, 10), rat(1, 2)), (int(0), rat(9, 10))] {
        let m = Measure::class_c(&p, &q, true).unwrap();
        let rest = Rational::one() - &p - &q;
        let quotient = |n: usize| m.moment(n);
        let mut prev = quotient(1);
        for n in 2..400 {
            let g = quotient(n);
            assert_eq!(g, &q + &rest / int(n as i64 + 1));
            assert!(g < prev);
            assert!(g > q);
            prev = g;
        }
        // gamma_n - q = rest/(n+1) < 1/100 as soon as n + 1 > 100 rest
        let n = (Rational::from_integer(100.into()) * &rest).to_integer();
        let n: usize = n.try_into().unwrap();
        assert!(quotient(n + 1) - &q < rat(1, 100));
        assert!(!rest.is_zero());
    }
}
