use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in `s` with rational coefficients; `coeffs[j]` multiplies `s^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SPoly {
    coeffs: Vec<BigRational>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        SPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    /// From integer numerators over a common denominator.
    pub fn from_ratios(numers: &[i64], denom: i64) -> Self {
        SPoly::from_coeffs(
            numers
                .iter()
                .map(|&n| BigRational::new(n.into(), denom.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        SPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, s: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * s + c)
    }
}

impl Add for &SPoly {
    type Output = SPoly;
    fn add(self, rhs: &SPoly) -> SPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        SPoly::from_coeffs((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &SPoly {
    type Output = SPoly;
    fn sub(self, rhs: &SPoly) -> SPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        SPoly::from_coeffs((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Neg for &SPoly {
    type Output = SPoly;
    fn neg(self) -> SPoly {
        SPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &SPoly {
    type Output = SPoly;
    fn mul(self, rhs: &SPoly) -> SPoly {
        if self.is_zero() || rhs.is_zero() {
            return SPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        SPoly::from_coeffs(coeffs)
    }
}

/// Descending powers, e.g. `1/10*s^2 + 7/50*s`.
impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var = match j {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{j}"),
            };
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                (_, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = SPoly::from_ratios(&[0, 7, 5], 50);
        assert_eq!(a.to_string(), "1/10*s^2 + 7/50*s");
        let b = SPoly::from_ratios(&[-6, -6], 50);
        assert_eq!(b.to_string(), "-3/25*s - 3/25");
        assert_eq!((&a - &a), SPoly::zero());
        let prod = &SPoly::from_ratios(&[1, 1], 1) * &SPoly::from_ratios(&[-1, 1], 1);
        assert_eq!(prod, SPoly::from_ratios(&[-1, 0, 1], 1));
        assert_eq!(prod.eval(&BigRational::from_integer(3.into())), BigRational::from_integer(8.into()));
        assert_eq!(prod.degree(), Some(2));
    }
}
