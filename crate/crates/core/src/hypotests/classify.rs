use num_traits::{One, Zero};

use super::moment::six_point_matrix;
use super::reduction::{backward_extension_check, kappa_power_subnormal};
use super::thresholds::Threshold;
use crate::error::{domain, Result};
use crate::exact_linalg::{int, rat, Rational};
use crate::shift_model::{make_class_a, make_kappa_shift, make_s1, Measure, Property, Verdict};

/// Verdicts for the kappa family at `a^2 = 1/2` and for its `(h, l)` power.
/// Neither depends on `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaVerdicts {
    pub original: Verdict,
    pub power: Verdict,
}

impl KappaVerdicts {
    /// The power is k-hyponormal while the shift itself is not.
    pub fn power_gains(&self) -> bool {
        self.power.holds && !self.original.holds
    }
}

fn level_of(k: usize) -> Result<Property> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    Ok(Property::level(k))
}

/// k-hyponormality of the kappa family at `a^2 = 1/2` and of its
/// `(h, l)` power.
pub fn classify_kappa(kappa_sq: &Rational, k: usize, h: usize) -> Result<KappaVerdicts> {
    let a_sq = rat(1, 2);
    make_kappa_shift(&a_sq, kappa_sq)?;
    let property = level_of(k)?;
    if h == 0 {
        return domain("h must be at least 1");
    }
    let hr = int(h as i64);
    let (orig_t, orig_rule, pow_t, pow_rule) = if k == 1 {
        (
            Threshold::H1 { a_sq: a_sq.clone() },
            "hyponormal iff kappa^2 <= (32-48a^4)/(59-72a^2)",
            Threshold::G { h: hr },
            "power hyponormal iff kappa^2 <= (2h^3+7h^2+8h+3)/(2h^3+7h^2+10h+4)",
        )
    } else {
        (
            Threshold::F { a_sq: a_sq.clone(), k },
            "k-hyponormal iff kappa^2 <= F(a,k)^2",
            Threshold::Power { k, h: hr },
            "power k-hyponormal iff kappa^2 <= 2/(2+b(k,h)), via the generalized Hilbert matrix corner",
        )
    };
    Ok(KappaVerdicts {
        original: Verdict::by_threshold(property, kappa_sq, orig_t.value_sq()?, orig_rule),
        power: Verdict::by_threshold(property, kappa_sq, pow_t.value_sq()?, pow_rule),
    })
}

/// Hyponormality of every power `(h, l)` with `h >= 2`: since `G` increases
/// the binding case is `h = 2`.
pub fn classify_kappa_powers_h1_all_h(kappa_sq: &Rational) -> Result<Verdict> {
    make_kappa_shift(&rat(1, 2), kappa_sq)?;
    Ok(Verdict::by_threshold(
        Property::H1,
        kappa_sq,
        Threshold::G { h: int(2) }.value_sq()?,
        "every power with h >= 2 is hyponormal iff kappa^2 <= G(2), G being increasing",
    ))
}

/// Subnormality of the `(h, l)` power of the kappa family at `a^2 = 1/2`,
/// decided by the backward extension criterion.
pub fn classify_kappa_subnormal(kappa_sq: &Rational, h: usize, l: usize) -> Result<Verdict> {
    let a_sq = rat(1, 2);
    let holds = kappa_power_subnormal(&a_sq, kappa_sq, h, l)?;
    let threshold = Threshold::HInf { a_sq }.value_sq()?;
    Ok(Verdict {
        property: Property::HInf,
        holds,
        margin: Some(&threshold - kappa_sq),
        threshold_sq: Some(threshold),
        rule: "subnormal iff the backward extension of the rows above 0 is dominated by the row 0 measure".into(),
        window_limited: false,
    })
}

/// Verdicts for an S1 shift `<x, y, a>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1Verdicts {
    pub h1: Verdict,
    /// 2-hyponormality, which for this class coincides with subnormality and
    /// is the same for every power.
    pub h2_equals_subnormal: Verdict,
}

/// `f2 = (1 - x^2) - y^2 (1 - a^2)`.
pub fn s1_f2(x_sq: &Rational, y_sq: &Rational, a_sq: &Rational) -> Rational {
    (Rational::one() - x_sq) - y_sq * (Rational::one() - a_sq)
}

pub fn classify_s1(x_sq: &Rational, y_sq: &Rational, a_sq: &Rational) -> Result<S1Verdicts> {
    let s = make_s1(x_sq, y_sq, a_sq)?;
    let h1 = Verdict {
        property: Property::H1,
        holds: six_point_matrix(&s, (0, 0))?.is_psd(),
        threshold_sq: None,
        margin: None,
        rule: "six-point test at the origin; every other base point sees a subnormal corner".into(),
        window_limited: false,
    };
    let f2 = s1_f2(x_sq, y_sq, a_sq);
    let rule = "2-hyponormal iff subnormal iff (1-x^2) - y^2(1-a^2) >= 0, for every power";
    let h2 = if a_sq.is_one() {
        Verdict {
            property: Property::Hk(2),
            holds: f2 >= Rational::zero(),
            threshold_sq: None,
            margin: Some(f2),
            rule: rule.into(),
            window_limited: false,
        }
    } else {
        let t = (Rational::one() - x_sq) / (Rational::one() - a_sq);
        Verdict::by_threshold(Property::Hk(2), y_sq, t, rule)
    };
    Ok(S1Verdicts { h1, h2_equals_subnormal: h2 })
}

/// Level of a class-C power condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassALevel {
    One,
    Two,
    Inf,
}

impl ClassALevel {
    pub fn property(self) -> Property {
        match self {
            ClassALevel::One => Property::H1,
            ClassALevel::Two => Property::Hk(2),
            ClassALevel::Inf => Property::HInf,
        }
    }
}

/// Class C with a uniform part of mass `1 - p - q`. Levels 1 and 2 give
/// conditions that every power `(h, l)` being hyponormal (2-hyponormal)
/// forces; they are not sufficient. Level `Inf` is an exact test of
/// subnormality.
pub fn classify_class_a_necessary(p: &Rational, q: &Rational, y_sq: &Rational, a_sq: &Rational, level: ClassALevel) -> Result<Verdict> {
    let uniform = !(p + q).is_one();
    make_class_a(p, q, uniform, y_sq, a_sq)?;
    let (threshold, rule) = match level {
        ClassALevel::One => (
            Threshold::M1 { a_sq: a_sq.clone(), q: q.clone() },
            "necessary only: all powers hyponormal forces y^2 <= q(1-q)/((a^2-q)^2+q(1-q))",
        ),
        ClassALevel::Two => (
            Threshold::M2 { a_sq: a_sq.clone(), q: q.clone() },
            "necessary only: all powers 2-hyponormal forces y^2 <= min((1-q)/(1-a^2), q/a^2)",
        ),
        ClassALevel::Inf => (
            Threshold::MInf { a_sq: a_sq.clone(), p: p.clone(), q: q.clone() },
            "subnormal iff y^2 <= min(p/(1-a^2), q/a^2)",
        ),
    };
    Ok(Verdict::by_threshold(level.property(), y_sq, threshold.value_sq()?, rule))
}

/// Subnormality of a class-C shift via the backward extension criterion.
pub fn class_a_subnormal_by_extension(p: &Rational, q: &Rational, y_sq: &Rational, a_sq: &Rational) -> Result<bool> {
    let uniform = !(p + q).is_one();
    let xi = Measure::class_c(p, q, uniform)?;
    Ok(backward_extension_check(&xi, &Measure::two_point(a_sq)?, y_sq))
}

/// 2-hyponormality of the kappa family and of its `(2, 1)` power, for
/// `0 < a^2 <= 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoOneVerdicts {
    pub original: Verdict,
    pub power21: Verdict,
}

pub fn classify_two_one_power(a_sq: &Rational, kappa_sq: &Rational) -> Result<TwoOneVerdicts> {
    make_kappa_shift(a_sq, kappa_sq)?;
    Ok(TwoOneVerdicts {
        original: Verdict::by_threshold(
            Property::Hk(2),
            kappa_sq,
            Threshold::H2 { a_sq: a_sq.clone() }.value_sq()?,
            "2-hyponormal iff kappa^2 <= 9(9-16a^2)/(157-360a^2+144a^4)",
        ),
        power21: Verdict::by_threshold(
            Property::Hk(2),
            kappa_sq,
            Threshold::H2Power21 { a_sq: a_sq.clone() }.value_sq()?,
            "(2,1) power 2-hyponormal iff kappa^2 <= 225(15-28a^2)/(6238-15015a^2+6300a^4)",
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        let v = classify_kappa(&rat(9, 10), 1, 2).unwrap();
        assert!(!v.original.holds && v.power.holds);
        for (k, h) in [(1, 1), (2, 3), (4, 9)] {
            let v = classify_kappa(&rat(2, 3), k, h).unwrap();
            assert!(v.original.holds && v.power.holds);
        }
        let v = classify_kappa(&rat(9025, 10257), 2, 9).unwrap();
        assert!(v.power.holds && v.power.on_boundary());
        assert!(!v.original.holds);
        assert_eq!(v.original.threshold_sq, Some(rat(9, 13)));
    }

    #[test]
    fn kappa_subnormal() {
        assert!(classify_kappa_subnormal(&rat(2, 3), 1, 1).unwrap().holds);
        assert!(!classify_kappa_subnormal(&rat(67, 100), 2, 5).unwrap().holds);
    }

    #[test]
    fn s1_examples() {
        let v = classify_s1(&rat(3, 4), &rat(1, 2), &rat(1, 2)).unwrap();
        assert!(v.h2_equals_subnormal.holds && v.h2_equals_subnormal.on_boundary());
        assert!(v.h1.holds);
        assert!(classify_s1(&int(1), &int(1), &int(1)).unwrap().h2_equals_subnormal.holds);
        assert!(classify_s1(&rat(1, 2), &int(1), &rat(1, 2)).unwrap().h2_equals_subnormal.holds);
        assert!(!classify_s1(&rat(1, 2), &int(1), &rat(1, 4)).unwrap().h2_equals_subnormal.holds);
    }

    #[test]
    fn class_a_examples() {
        let v = classify_class_a_necessary(&rat(1, 4), &rat(1, 2), &int(1), &rat(1, 2), ClassALevel::One).unwrap();
        assert_eq!(v.threshold_sq, Some(int(1)));
        let v = classify_class_a_necessary(&rat(1, 2), &rat(1, 2), &int(1), &rat(1, 2), ClassALevel::Two).unwrap();
        assert!(v.holds);
        let v = classify_class_a_necessary(&rat(1, 6), &rat(1, 3), &rat(1, 2), &rat(1, 2), ClassALevel::Inf).unwrap();
        assert!(!v.holds);
        assert!(!class_a_subnormal_by_extension(&rat(1, 6), &rat(1, 3), &rat(1, 2), &rat(1, 2)).unwrap());
    }

    #[test]
    fn two_one_examples() {
        let v = classify_two_one_power(&rat(1, 2), &rat(9, 13)).unwrap();
        assert!(v.original.holds && v.original.on_boundary() && v.power21.holds);
        let v = classify_two_one_power(&rat(1, 4), &rat(3, 5)).unwrap();
        assert!(!v.original.holds && v.power21.holds);
        let v = classify_two_one_power(&rat(1, 3), &rat(1, 100)).unwrap();
        assert!(v.original.holds && v.power21.holds);
    }
}
