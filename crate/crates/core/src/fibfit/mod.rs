//! Closed forms for the moments of `X_s` in terms of `s`, `F_s` and `F_{s+1}`.
//!
//! Raw moments are fitted to `A(s)·r + B(s)` with `r = F_s/F_{s+1}` by
//! solving an exact integer linear system on a sample of `s` values and are
//! then checked on disjoint holdout values. Central moments follow
//! symbolically; substituting `r → 1/φ` gives the large-`s` behavior and the
//! limits of the standardized moments.
//!
//! Every identity produced here is confirmed on an explicit finite range of
//! `s` and reported as such.

mod fibexpr;
pub mod linsolve;
mod quadext;
mod spoly;

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use fibexpr::{CommonDenominator, FibExpr, FibExprJson};
pub use quadext::QuadExt;
pub use spoly::SPoly;

use crate::error::{Error, Result};
use crate::genfunc::fibonacci_table;
use crate::moments::{binomial_rows, PowerSums};
use linsolve::Solution;

/// Degree policy for `A` and `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeBound {
    /// Start at `2k` and escalate until the fit validates.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitConfig {
    pub degree: DegreeBound,
    /// How far `Auto` may escalate past `2k`.
    pub max_extra_degree: usize,
    /// First sampled `s`.
    pub start_s: usize,
    /// Sample points beyond the number of unknowns.
    pub extra_samples: usize,
    /// Holdout points following the sample.
    pub holdout: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            degree: DegreeBound::Auto,
            max_extra_degree: 4,
            start_s: 2,
            extra_samples: 5,
            holdout: 20,
        }
    }
}

impl FitConfig {
    fn degrees(&self, k: usize) -> RangeInclusive<usize> {
        match self.degree {
            DegreeBound::Auto => 2 * k..=2 * k + self.max_extra_degree,
            DegreeBound::Fixed(d) => d..=d,
        }
    }

    /// Sample range used at polynomial degree `d`.
    pub fn sample(&self, d: usize) -> RangeInclusive<usize> {
        let n = 2 * (d + 1) + self.extra_samples;
        self.start_s..=self.start_s + n - 1
    }

    /// Holdout range used at polynomial degree `d`.
    pub fn holdout_range(&self, d: usize) -> RangeInclusive<usize> {
        let after = self.sample(d).end() + 1;
        after..=after + self.holdout - 1
    }

    /// Largest `s` whose power sums a fit of moment `k` may need.
    pub fn required_max_s(&self, k: usize) -> usize {
        let d = *self.degrees(k).end();
        if self.holdout == 0 {
            *self.sample(d).end()
        } else {
            *self.holdout_range(d).end()
        }
    }
}

/// A fitted raw moment together with where it was fitted and checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFit {
    pub k: usize,
    pub degree: usize,
    pub expr: FibExpr,
    pub sample: RangeInclusive<usize>,
    pub validation: ValidationReport,
}

/// Which moment a validation compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Raw(usize),
    Central(usize),
}

impl Target {
    pub fn k(self) -> usize {
        match self {
            Target::Raw(k) | Target::Central(k) => k,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Raw(k) => write!(f, "raw moment {k}"),
            Target::Central(k) => write!(f, "central moment {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub s: usize,
    pub expected: BigRational,
    pub actual: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub target: Target,
    pub range: RangeInclusive<usize>,
    /// Number of `s` at which the identity held before the first mismatch.
    pub confirmed: usize,
    pub mismatch: Option<Mismatch>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(
                f,
                "{}: identity confirmed for all s in [{}, {}] ({} values)",
                self.target,
                self.range.start(),
                self.range.end(),
                self.confirmed
            ),
            Some(m) => write!(
                f,
                "{}: mismatch at s = {}: expected {}, expression gives {}",
                self.target, m.s, m.expected, m.actual
            ),
        }
    }
}

fn check_range(sums: &PowerSums, range: &RangeInclusive<usize>, k: usize) -> Result<()> {
    if *range.start() == 0 || *range.end() > sums.max_s() || k > sums.max_k() {
        return Err(Error::InvalidArgument(format!(
            "power sums cover s <= {} and k <= {}, need s in [{}, {}] and k = {k}",
            sums.max_s(),
            sums.max_k(),
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

fn expected_value(sums: &PowerSums, target: Target, s: usize) -> Result<BigRational> {
    let table = sums.moment_table(s)?;
    Ok(match target {
        Target::Raw(k) => table.raw[k].clone(),
        Target::Central(k) => table.central[k].clone(),
    })
}

/// Compares `expr` with the exact moment at every `s` in `range`, stopping
/// at the first mismatch.
pub fn validate_fit(
    expr: &FibExpr,
    target: Target,
    range: RangeInclusive<usize>,
    sums: &PowerSums,
) -> Result<ValidationReport> {
    check_range(sums, &range, target.k())?;
    let fib = fibonacci_table(*range.end() + 1);
    let mut confirmed = 0;
    for s in range.clone() {
        let expected = expected_value(sums, target, s)?;
        let actual = expr.eval_with(s, &fib[s], &fib[s + 1]);
        if actual != expected {
            return Ok(ValidationReport {
                target,
                range,
                confirmed,
                mismatch: Some(Mismatch {
                    s,
                    expected,
                    actual,
                }),
            });
        }
        confirmed += 1;
    }
    Ok(ValidationReport {
        target,
        range,
        confirmed,
        mismatch: None,
    })
}

enum Attempt {
    Fit(FibExpr),
    Inconsistent,
}

fn solve_at_degree(k: usize, d: usize, sample: &RangeInclusive<usize>, sums: &PowerSums) -> Result<Attempt> {
    let fib = fibonacci_table(*sample.end() + 1);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in sample.clone() {
        let s_big = BigInt::from(s);
        let mut row = Vec::with_capacity(2 * (d + 1));
        let mut sp = BigInt::from(1);
        let mut powers = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            powers.push(sp.clone());
            sp *= &s_big;
        }
        // M_k(s) = Σ a_j s^j F_s + Σ b_j s^j F_{s+1}
        row.extend(powers.iter().map(|p| p * &fib[s]));
        row.extend(powers.iter().map(|p| p * &fib[s + 1]));
        rows.push(row);
        rhs.push(sums.get(s, k).expect("range checked").clone());
    }
    match linsolve::solve(&rows, &rhs) {
        Solution::Unique(x) => {
            let a = SPoly::from_coeffs(x[..=d].to_vec());
            let b = SPoly::from_coeffs(x[d + 1..].to_vec());
            Ok(Attempt::Fit(FibExpr::linear(a, b)))
        }
        Solution::Inconsistent => Ok(Attempt::Inconsistent),
        Solution::Underdetermined { rank } => Err(Error::Underdetermined {
            k,
            rank,
            unknowns: 2 * (d + 1),
        }),
    }
}

/// Fits `E[X_s^k] = A(s)·F_s/F_{s+1} + B(s)` and validates it on holdout
/// values of `s`.
pub fn fit_raw_moment(k: usize, config: &FitConfig, sums: &PowerSums) -> Result<RawFit> {
    if config.start_s < 2 {
        return Err(Error::InvalidArgument("fitting samples must start at s >= 2".into()));
    }
    let degrees = config.degrees(k);
    let max_degree = *degrees.end();
    check_range(sums, &(config.start_s..=config.required_max_s(k)), k)?;
    for d in degrees {
        let sample = config.sample(d);
        let Attempt::Fit(expr) = solve_at_degree(k, d, &sample, sums)? else {
            continue;
        };
        let validation = if config.holdout == 0 {
            validate_fit(&expr, Target::Raw(k), sample.clone(), sums)?
        } else {
            validate_fit(&expr, Target::Raw(k), config.holdout_range(d), sums)?
        };
        if validation.passed() {
            return Ok(RawFit {
                k,
                degree: d,
                expr,
                sample,
                validation,
            });
        }
        if config.degree != DegreeBound::Auto {
            break;
        }
    }
    Err(Error::NoFit { k, max_degree })
}

/// The `k`-th central moment from the raw fits, by binomial expansion in
/// `FibExpr` arithmetic. `raw_fits[j - 1]` must be the `j`-th raw moment.
pub fn symbolic_central(k: usize, raw_fits: &[FibExpr]) -> Result<FibExpr> {
    if raw_fits.len() < k.max(1) {
        return Err(Error::InvalidArgument(format!(
            "central moment {k} needs raw moments 1..={k}, got {}",
            raw_fits.len()
        )));
    }
    let neg_mu = -&raw_fits[0];
    let binom = binomial_rows(k);
    let mut total = FibExpr::zero();
    let mut mu_pow = FibExpr::one();
    // j runs from k down to 0 so that (-μ)^{k-j} is built incrementally
    for j in (0..=k).rev() {
        let raw_j = if j == 0 { FibExpr::one() } else { raw_fits[j - 1].clone() };
        let term = (&mu_pow * &raw_j).scale(&BigRational::from_integer(binom[k][j].clone()));
        total = &total + &term;
        mu_pow = &mu_pow * &neg_mu;
    }
    Ok(total)
}

/// Polynomial in `s` over `Q(√5)`, as produced by [`FibExpr::substitute_r`].
pub fn leading_term(poly: &[QuadExt]) -> Option<(usize, &QuadExt)> {
    poly.last().map(|c| (poly.len() - 1, c))
}

/// Outcome of a standardized-moment limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(QuadExt),
    Diverges,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(v) => write!(f, "{v}"),
            Limit::Diverges => write!(f, "diverges"),
        }
    }
}

/// `lim_{s→∞} central_k(s) / variance(s)^{k/2}`.
///
/// `r` is replaced by its limit `1/φ`; the neglected difference decays
/// geometrically in `s`, so only the leading `s`-terms matter. With `d`, `a`
/// the degree and leading coefficient of the central moment and `e`, `v`
/// those of the variance, the limit is 0 when `2d < ek`, `a / v^{k/2}` when
/// `2d = ek`, and diverges otherwise.
pub fn limit_standardized(k: usize, central: &FibExpr, variance: &FibExpr) -> Result<Limit> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("limit needs k >= 2, got {k}")));
    }
    let r = QuadExt::inv_phi();
    let var = variance.substitute_r(&r);
    let Some((e, v)) = leading_term(&var) else {
        return Err(Error::NonPositiveVariance("0".into()));
    };
    if !v.is_positive() {
        return Err(Error::NonPositiveVariance(v.to_string()));
    }
    let cen = central.substitute_r(&r);
    let Some((d, a)) = leading_term(&cen) else {
        return Ok(Limit::Finite(QuadExt::zero()));
    };
    let (lhs, rhs) = (2 * d, e * k);
    if lhs < rhs {
        return Ok(Limit::Finite(QuadExt::zero()));
    }
    if lhs > rhs {
        return Ok(Limit::Diverges);
    }
    if k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "odd k = {k} with matching degrees needs the square root of {v}"
        )));
    }
    Ok(Limit::Finite(a / &v.pow(k / 2)))
}

/// Standardized moments of the standard normal law: 0 for odd `k`, `(k-1)!!`
/// for even `k`.
pub fn normal_moment(k: usize) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    (1..k).step_by(2).map(BigInt::from).product()
}

/// Raw fits for moments `1..=max_k`, central expressions for `0..=max_k` and
/// the standardized limits for `2..=max_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTheory {
    pub raw: Vec<RawFit>,
    pub central: Vec<FibExpr>,
    pub central_validation: Vec<ValidationReport>,
    pub limits: Vec<(usize, Limit)>,
}

impl MomentTheory {
    /// Power sums large enough for [`MomentTheory::derive`].
    pub fn power_sums(max_k: usize, config: &FitConfig) -> Result<PowerSums> {
        PowerSums::by_recurrence(config.required_max_s(max_k.max(1)), max_k.max(2))
    }

    /// Fits every raw moment up to `max_k`, derives central forms, checks
    /// them against exact central moments on the union of sample and holdout
    /// ranges, and takes limits.
    pub fn derive(max_k: usize, config: &FitConfig, sums: &PowerSums) -> Result<Self> {
        let raw: Vec<RawFit> = (1..=max_k)
            .map(|k| fit_raw_moment(k, config, sums))
            .collect::<Result<_>>()?;
        let raw_exprs: Vec<FibExpr> = raw.iter().map(|f| f.expr.clone()).collect();
        let mut central = Vec::with_capacity(max_k + 1);
        let mut central_validation = Vec::with_capacity(max_k + 1);
        for k in 0..=max_k {
            let expr = symbolic_central(k, &raw_exprs)?;
            let end = raw
                .get(k.max(1) - 1)
                .map(|f| *f.validation.range.end())
                .unwrap_or(config.start_s);
            central_validation.push(validate_fit(&expr, Target::Central(k), config.start_s..=end, sums)?);
            central.push(expr);
        }
        let mut limits = Vec::new();
        if max_k >= 2 {
            for k in 2..=max_k {
                limits.push((k, limit_standardized(k, &central[k], &central[2])?));
            }
        }
        Ok(MomentTheory {
            raw,
            central,
            central_validation,
            limits,
        })
    }

    pub fn all_validated(&self) -> bool {
        self.raw.iter().all(|f| f.validation.passed())
            && self.central_validation.iter().all(ValidationReport::passed)
    }

    /// True iff every limit equals the corresponding normal moment.
    pub fn limits_are_normal(&self) -> bool {
        self.limits.iter().all(|(k, l)| {
            *l == Limit::Finite(QuadExt::rational(BigRational::from_integer(normal_moment(*k))))
        })
    }
}

/// Leading `s`-coefficient of a FibExpr after `r → 1/φ`, with its degree.
pub fn asymptotic_leading(expr: &FibExpr) -> Option<(usize, QuadExt)> {
    let poly = expr.substitute_r(&QuadExt::inv_phi());
    leading_term(&poly).map(|(d, c)| (d, c.clone()))
}

/// `φ^n` for signed `n`.
pub fn phi_pow(n: i32) -> QuadExt {
    let base = if n >= 0 { QuadExt::phi() } else { QuadExt::inv_phi() };
    base.pow(n.unsigned_abs() as usize)
}
