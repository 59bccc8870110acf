//! Dense polynomials in `q` with big-integer coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

/// Polynomial `Σ c_n q^n`; `coeffs[n]` holds `c_n`. The last stored
/// coefficient is always nonzero, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `c · q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c);
        QPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^n` (zero beyond the degree).
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// `self += q^e · other` without materializing the shifted operand.
    pub fn add_shifted_assign(&mut self, other: &QPoly, e: usize) {
        if other.is_zero() {
            return;
        }
        let needed = other.coeffs.len() + e;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, BigInt::zero());
        }
        for (dst, src) in self.coeffs[e..].iter_mut().zip(&other.coeffs) {
            *dst += src;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// The operator `f(q) ↦ q f'(q)`: scales the coefficient of `q^n` by `n`.
    pub fn l_op(&self) -> Self {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigInt::from(n))
                .collect(),
        )
    }

    /// `f(1)`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `L^k(f)` at `q = 1`, computed as the power sum `Σ n^k c_n`.
    pub fn moment_numerator(&self, k: u32) -> BigInt {
        if k == 0 {
            return self.eval_one();
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| c * BigInt::from(n).pow(k))
            .sum()
    }

    /// All power sums `Σ n^j c_n` for `j = 0..=max_k` in a single pass.
    pub fn moment_numerators(&self, max_k: usize) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); max_k + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = BigInt::from(n);
            let mut term = c.clone();
            for sum in sums.iter_mut() {
                *sum += &term;
                term *= &n;
            }
        }
        sums
    }

    /// Index of the lowest coefficient at which `self` and `other` differ.
    pub fn first_difference(&self, other: &QPoly) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        self.add_shifted_assign(rhs, 0);
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..len).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

/// Ascending powers, e.g. `1 + q + q^2 + 2*q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        Ok(())
    }
}

/// Memo table for Gaussian binomial coefficients.
///
/// Entries are filled by the Pascal-type rule
/// `[n, m] = [n-1, m-1] + q^m [n-1, m]`, so only integer additions occur.
/// The cache is owned, not shared; give each thread its own.
#[derive(Debug, Default)]
pub struct QBinomialCache {
    // keyed by (m, n - m)
    memo: HashMap<(usize, usize), QPoly>,
}

impl QBinomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[n choose m]_q`; zero when `m > n`.
    pub fn get(&mut self, n: usize, m: usize) -> QPoly {
        if m > n {
            return QPoly::zero();
        }
        let width = n - m;
        if let Some(p) = self.memo.get(&(m, width)) {
            return p.clone();
        }
        // Fill the grid rows 0..=m by increasing width; each entry only needs
        // (j-1, w) and (j, w-1).
        for j in 0..=m {
            for w in 0..=width {
                if self.memo.contains_key(&(j, w)) {
                    continue;
                }
                let value = if j == 0 || w == 0 {
                    QPoly::one()
                } else {
                    let mut v = self.memo[&(j - 1, w)].clone();
                    v.add_shifted_assign(&self.memo[&(j, w - 1)], j);
                    v
                };
                self.memo.insert((j, w), value);
            }
        }
        self.memo[&(m, width)].clone()
    }
}

/// `[n choose m]_q` with a throwaway cache.
pub fn qbinom(n: usize, m: usize) -> QPoly {
    QBinomialCache::new().get(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn binomial(n: usize, m: usize) -> BigInt {
        (0..m).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&qp(&[1, 1]) + &qp(&[0, 1]), qp(&[1, 2]));
        assert_eq!(&qp(&[1, 1]) * &qp(&[1, 1]), qp(&[1, 2, 1]));
        assert_eq!(qp(&[1, 1]).shift(3), qp(&[0, 0, 0, 1, 1]));
        assert_eq!(&qp(&[1, 1]) - &qp(&[1, 1]), QPoly::zero());
        assert_eq!(QPoly::zero().shift(4), QPoly::zero());
    }

    #[test]
    fn canonical_form() {
        let p = QPoly::from_i64s(&[1, 0, 0]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(QPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(qp(&[1, 1, 1, 2]).to_string(), "1 + q + q^2 + 2*q^3");
        assert_eq!(qp(&[1]).to_string(), "1");
        assert_eq!(qp(&[0, -1, 0, 3]).to_string(), "-q + 3*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(4, 2), qp(&[1, 1, 2, 1, 1]));
        for n in 0..6 {
            assert_eq!(qbinom(n, 0), QPoly::one());
        }
        assert_eq!(qbinom(2, 3), QPoly::zero());
    }

    #[test]
    fn qbinom_matches_box_enumeration() {
        // partitions with at most m parts, each at most n - m
        fn boxed(rows: usize, cols: usize, cap: usize) -> Vec<usize> {
            if rows == 0 {
                return vec![0];
            }
            let mut sizes = Vec::new();
            for first in 0..=cap.min(cols) {
                for rest in boxed(rows - 1, cols, first) {
                    sizes.push(first + rest);
                }
            }
            sizes
        }
        for n in 0..9 {
            for m in 0..=n {
                let sizes = boxed(m, n - m, n - m);
                let mut counts = vec![0i64; m * (n - m) + 1];
                for sz in sizes {
                    counts[sz] += 1;
                }
                assert_eq!(qbinom(n, m), qp(&counts), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn l_op_examples() {
        assert_eq!(qp(&[1, 1]).l_op(), qp(&[0, 1]));
        assert_eq!(qp(&[0, 0, 0, 1]).l_op().l_op(), qp(&[0, 0, 0, 9]));
        assert_eq!(qp(&[1, 1, 1, 2]).l_op(), qp(&[0, 1, 2, 6]));
    }

    #[test]
    fn moment_numerator_examples() {
        assert_eq!(qp(&[1, 1]).moment_numerator(1), BigInt::from(1));
        assert_eq!(qp(&[1, 1, 1, 2]).moment_numerator(1), BigInt::from(9));
        assert_eq!(qp(&[3, 0, 4]).moment_numerator(0), BigInt::from(7));
    }

    proptest! {
        #[test]
        fn power_sum_equals_iterated_l(coeffs in prop::collection::vec(-1000i64..1000, 0..=51), k in 0u32..=5) {
            let f = QPoly::from_i64s(&coeffs);
            let mut g = f.clone();
            for _ in 0..k {
                g = g.l_op();
            }
            prop_assert_eq!(f.moment_numerator(k), g.eval_one());
            prop_assert_eq!(&f.moment_numerators(5)[k as usize], &g.eval_one());
        }

        #[test]
        fn qbinom_shape(n in 0usize..25, m_frac in 0.0f64..=1.0) {
            let m = ((n as f64) * m_frac).round() as usize;
            let g = qbinom(n, m);
            prop_assert_eq!(g.degree(), Some(m * (n - m)));
            prop_assert!(g.coeffs().iter().all(|c| c.is_positive()));
            prop_assert_eq!(g.eval_one(), binomial(n, m));
            prop_assert_eq!(&g, &qbinom(n, n - m));
            let d = m * (n - m);
            for i in 0..=d {
                prop_assert_eq!(g.coeff(i), g.coeff(d - i));
            }
        }

        #[test]
        fn mul_commutes_and_distributes(a in prop::collection::vec(-50i64..50, 0..8),
                                        b in prop::collection::vec(-50i64..50, 0..8),
                                        c in prop::collection::vec(-50i64..50, 0..8)) {
            let (a, b, c) = (qp(&a), qp(&b), qp(&c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
