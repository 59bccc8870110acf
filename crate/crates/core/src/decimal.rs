//! Fixed-point decimal rendering of exact rationals and their square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn ten_pow(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), n)
}

/// Rounds `digits + 1` truncated digits to `digits`, half away from zero.
fn render(negative: bool, truncated_plus_one: BigInt, digits: usize) -> String {
    let (mut q, r) = truncated_plus_one.div_rem(&BigInt::from(10));
    if r >= BigInt::from(5) {
        q += 1;
    }
    let s = q.to_string();
    let body = if digits == 0 {
        s
    } else {
        let padded = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{int}.{frac}")
    };
    if negative && !q.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// `x` rounded to `digits` places after the decimal point.
pub fn rational_to_decimal(x: &BigRational, digits: usize) -> String {
    let scaled = x.numer().abs() * ten_pow(digits + 1) / x.denom();
    render(x.is_negative(), scaled, digits)
}

/// `±√x` rounded to `digits` places, for `x ≥ 0`.
pub fn sqrt_to_decimal(x: &BigRational, negative: bool, digits: usize) -> String {
    assert!(!x.is_negative(), "square root of a negative rational");
    let scaled = x.numer() * ten_pow(2 * (digits + 1)) / x.denom();
    render(negative, scaled.sqrt(), digits)
}

/// `a + b√5` rounded to `digits` places. A few guard digits absorb the
/// truncation of both terms.
pub fn quad_to_decimal(a: &BigRational, b: &BigRational, digits: usize) -> String {
    if b.is_zero() {
        return rational_to_decimal(a, digits);
    }
    const GUARD: usize = 6;
    let m = digits + 1 + GUARD;
    let ta = a.numer() * ten_pow(m) / a.denom();
    let b2 = b * b * BigInt::from(5);
    let tb = (b2.numer() * ten_pow(2 * m) / b2.denom()).sqrt();
    let total = if b.is_negative() { ta - tb } else { ta + tb };
    render(total.is_negative(), total.abs() / ten_pow(GUARD), digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(rational_to_decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(rational_to_decimal(&q(2, 3), 5), "0.66667");
        assert_eq!(rational_to_decimal(&q(-34, 25), 3), "-1.360");
        assert_eq!(rational_to_decimal(&q(7, 2), 0), "4");
        assert_eq!(rational_to_decimal(&q(-1, 1000), 2), "0.00");
    }

    #[test]
    fn roots() {
        assert_eq!(sqrt_to_decimal(&q(2, 1), false, 10), "1.4142135624");
        assert_eq!(sqrt_to_decimal(&q(1, 4), true, 3), "-0.500");
        assert_eq!(sqrt_to_decimal(&q(9, 1), false, 0), "3");
    }

    #[test]
    fn quadratic() {
        assert_eq!(quad_to_decimal(&q(1, 2), &q(1, 2), 10), "1.6180339887");
        assert_eq!(quad_to_decimal(&q(-1, 2), &q(1, 2), 10), "0.6180339887");
        assert_eq!(quad_to_decimal(&q(0, 1), &q(-1, 1), 5), "-2.23607");
        assert_eq!(quad_to_decimal(&q(3, 1), &q(0, 1), 2), "3.00");
    }
}
