//! The rational scalar and its textual forms.
//!
//! Parsing accepts `num/den` or a bare integer. Decimal input such as `0.5`
//! is rejected so that no value is ever silently rounded on the way in.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let fail = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(fail("decimal notation is not accepted; write num/den"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| fail("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| fail("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Always `num/den`, including integers (`3/1`). Used by CSV, JSON and
/// family records.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn pow10(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), digits as usize)
}

fn render_scaled(negative: bool, scaled: &BigInt, digits: u32) -> String {
    let mut body = scaled.to_string();
    let d = digits as usize;
    if d > 0 {
        if body.len() <= d {
            body = format!("{}{}", "0".repeat(d + 1 - body.len()), body);
        }
        body.insert(body.len() - d, '.');
    }
    if negative && !scaled.is_zero() {
        body.insert(0, '-');
    }
    body
}

/// Decimal rendering with `digits` places, rounding half to even.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let negative = r.is_negative();
    let num = r.numer().abs() * pow10(digits);
    let den = r.denom();
    let (mut q, rem) = num.div_rem(den);
    let twice = &rem * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q += 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }
    render_scaled(negative, &q, digits)
}

/// Decimal rendering of `sqrt(r)` with `digits` places, rounding half to
/// even. Exact: the integer part of `sqrt(r) * 10^digits` comes from an
/// integer square root and the rounding direction from an exact comparison.
pub fn sqrt_decimal(r: &Rational, digits: u32) -> Result<String> {
    if r.is_negative() {
        return Err(Error::Domain(format!("square root of negative {r}")));
    }
    let scale = pow10(2 * digits);
    let n = r.numer() * &scale;
    let d = r.denom();
    let floor = (&n / d).sqrt();
    // sqrt(n/d) >= floor + 1/2  <=>  4n >= (2 floor + 1)^2 d
    let lhs = &n * 4u32;
    let odd = &floor * 2u32 + BigInt::one();
    let rhs = &odd * &odd * d;
    let rounded = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => floor + 1u32,
        std::cmp::Ordering::Equal if floor.is_odd() => floor + 1u32,
        _ => floor,
    };
    Ok(render_scaled(false, &rounded, digits))
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

pub fn sign(r: &Rational) -> Sign {
    r.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        for bad in ["0.5", "1e3", "", "1/0", "a/2", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn fraction_string_keeps_denominator() {
        assert_eq!(fraction_string(&int(3)), "3/1");
        assert_eq!(fraction_string(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn decimal_rounds_half_even() {
        assert_eq!(to_decimal(&rat(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.12");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&rat(5, 2), 0), "2");
        assert_eq!(to_decimal(&rat(7, 2), 0), "4");
        assert_eq!(to_decimal(&rat(1, 1000), 2), "0.00");
    }

    #[test]
    fn sqrt_decimal_is_exact() {
        assert_eq!(sqrt_decimal(&rat(1, 4), 3).unwrap(), "0.500");
        assert_eq!(sqrt_decimal(&int(2), 6).unwrap(), "1.414214");
        assert_eq!(sqrt_decimal(&rat(20, 23), 6).unwrap(), "0.932505");
        assert!(sqrt_decimal(&rat(-1, 2), 3).is_err());
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&rat(9, 49)), Some(rat(3, 7)));
        assert_eq!(exact_sqrt(&rat(1, 2)), None);
    }
}
