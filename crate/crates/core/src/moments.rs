//! Exact moments of the size `X_s` of a uniformly random element of `P_s`.
//!
//! The `k`-th raw moment is `L^k(G_s)(1) / F_{s+1}`. Power sums
//! `M_k(s) = L^k(G_s)(1)` are available two ways: from the polynomial
//! ([`crate::qpoly::QPoly::moment_numerators`]) or, for large `s`, from the
//! vector recurrence induced on them by the `G_s` recurrence (see
//! [`PowerSums::by_recurrence`]). The two agree wherever both are computed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::decimal::{rational_to_decimal, sqrt_to_decimal};
use crate::error::{require_positive_s, Error, Result};
use crate::genfunc::{base_cases, gs_recurrence, GfTable};

/// Default largest moment order.
pub const DEFAULT_MAX_K: usize = 16;

/// Default decimal places for rendered standardized moments.
pub const DEFAULT_DIGITS: usize = 30;

pub(crate) fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Power sums `M_k(s) = Σ_{p ∈ P_s} |p|^k` for `1 ≤ s ≤ max_s`, `0 ≤ k ≤ max_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    max_k: usize,
    // rows[s - 1][k]
    rows: Vec<Vec<BigInt>>,
}

impl PowerSums {
    /// Power sums read off precomputed generating functions.
    pub fn from_table(table: &GfTable, max_k: usize) -> Self {
        PowerSums {
            max_k,
            rows: table.iter().map(|(_, g)| g.moment_numerators(max_k)).collect(),
        }
    }

    /// Power sums from the recurrence alone, without building `G_s`.
    ///
    /// Since `L^k(q^a f)(1) = Σ_j C(k,j) a^{k-j} L^j(f)(1)`, the polynomial
    /// recurrence `G_s = G_{s-1} + q^{s-1}(G_{s-3} + G_{s-4})` becomes
    /// `M_k(s) = M_k(s-1) + Σ_j C(k,j) (s-1)^{k-j} (M_j(s-3) + M_j(s-4))`.
    pub fn by_recurrence(max_s: usize, max_k: usize) -> Result<Self> {
        require_positive_s(max_s)?;
        let binom = binomial_rows(max_k);
        let mut rows: Vec<Vec<BigInt>> = base_cases()
            .iter()
            .take(max_s)
            .map(|g| g.moment_numerators(max_k))
            .collect();
        for s in 5..=max_s {
            let a = BigInt::from(s - 1);
            let mut powers = Vec::with_capacity(max_k + 1);
            powers.push(BigInt::one());
            for i in 1..=max_k {
                let next = &powers[i - 1] * &a;
                powers.push(next);
            }
            let tail: Vec<BigInt> = (0..=max_k)
                .map(|j| &rows[s - 4][j] + &rows[s - 5][j])
                .collect();
            let row = (0..=max_k)
                .map(|k| {
                    let mut acc = rows[s - 2][k].clone();
                    for j in 0..=k {
                        acc += &binom[k][j] * &powers[k - j] * &tail[j];
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
        Ok(PowerSums { max_k, rows })
    }

    pub fn max_s(&self) -> usize {
        self.rows.len()
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// `M_k(s)`, if in range.
    pub fn get(&self, s: usize, k: usize) -> Option<&BigInt> {
        s.checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .and_then(|row| row.get(k))
    }

    /// All moments of `X_s` up to `max_k`.
    pub fn moment_table(&self, s: usize) -> Result<MomentTable> {
        let row = s
            .checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .ok_or_else(|| Error::InvalidArgument(format!("s = {s} outside 1..={}", self.max_s())))?;
        Ok(MomentTable::from_power_sums(s, row))
    }
}

/// `Σ_j C(k,j) (-μ)^{k-j} raw_j` for every `k` covered by `raw`.
pub fn central_from_raw(raw: &[BigRational]) -> Vec<BigRational> {
    if raw.is_empty() {
        return Vec::new();
    }
    let max_k = raw.len() - 1;
    let mu = raw.get(1).cloned().unwrap_or_else(BigRational::zero);
    let neg_mu = -mu;
    let binom = binomial_rows(max_k);
    let mut mu_powers = vec![BigRational::one()];
    for i in 1..=max_k {
        let next = &mu_powers[i - 1] * &neg_mu;
        mu_powers.push(next);
    }
    (0..=max_k)
        .map(|k| {
            (0..=k).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binom[k][j].clone()) * &mu_powers[k - j] * &raw[j]
            })
        })
        .collect()
}

/// Raw and central moments of `X_s`, index `k` holding the `k`-th moment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub s: usize,
    pub raw: Vec<BigRational>,
    pub central: Vec<BigRational>,
}

impl MomentTable {
    /// From `[M_0(s), ..., M_K(s)]`; `M_0(s) = F_{s+1}` is the normalizer.
    pub fn from_power_sums(s: usize, sums: &[BigInt]) -> Self {
        let count = &sums[0];
        let raw: Vec<BigRational> = sums
            .iter()
            .map(|m| BigRational::new(m.clone(), count.clone()))
            .collect();
        let central = central_from_raw(&raw);
        MomentTable { s, raw, central }
    }

    pub fn compute(s: usize, max_k: usize) -> Result<Self> {
        require_positive_s(s)?;
        let g = gs_recurrence(s)?;
        Ok(MomentTable::from_power_sums(s, &g.moment_numerators(max_k)))
    }

    pub fn max_k(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn mean(&self) -> BigRational {
        self.raw.get(1).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn variance(&self) -> BigRational {
        self.central.get(2).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn standardized(&self, k: usize) -> Result<Standardized> {
        let central = self.central.get(k).cloned().ok_or_else(|| {
            Error::InvalidArgument(format!("moment {k} not computed (max {})", self.max_k()))
        })?;
        let variance = self.variance();
        if variance.is_zero() {
            return Err(Error::ZeroVariance { s: self.s });
        }
        Ok(Standardized {
            k,
            central,
            variance,
        })
    }
}

/// `E[X_s^k]`.
pub fn raw_moment(s: usize, k: usize) -> Result<BigRational> {
    Ok(MomentTable::compute(s, k)?.raw[k].clone())
}

/// `E[(X_s - μ)^k]`.
pub fn central_moment(s: usize, k: usize) -> Result<BigRational> {
    Ok(MomentTable::compute(s, k.max(1))?.central[k].clone())
}

/// The `k`-th standardized central moment of `X_s`; requires `s ≥ 2`.
pub fn standardized_moment(s: usize, k: usize) -> Result<Standardized> {
    MomentTable::compute(s, k.max(2))?.standardized(k)
}

/// `central / variance^{k/2}`, kept as the exact pair so that odd `k` never
/// needs an irrational square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Standardized {
    pub k: usize,
    pub central: BigRational,
    pub variance: BigRational,
}

impl Standardized {
    pub fn is_negative(&self) -> bool {
        self.central.is_negative()
    }

    /// `central² / variance^k`, exact.
    pub fn squared(&self) -> BigRational {
        let k = i32::try_from(self.k).expect("moment order fits in i32");
        (&self.central * &self.central) / Pow::pow(&self.variance, k)
    }

    /// The exact value when `k` is even.
    pub fn exact(&self) -> Option<BigRational> {
        if self.k % 2 == 0 {
            let half = i32::try_from(self.k / 2).expect("moment order fits in i32");
            Some(&self.central / Pow::pow(&self.variance, half))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.exact() {
            Some(v) => v.to_f64().unwrap_or(f64::NAN),
            None => {
                let mag = self.squared().to_f64().unwrap_or(f64::NAN).sqrt();
                if self.is_negative() {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    /// Rounded decimal with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self.exact() {
            Some(v) => rational_to_decimal(&v, digits),
            None => sqrt_to_decimal(&self.squared(), self.is_negative(), digits),
        }
    }
}
