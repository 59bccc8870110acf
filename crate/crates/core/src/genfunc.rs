//! Fast routes to `G_s(q)` and the cross-method verification harness.
//!
//! Three constructions are provided besides the brute-force oracles in
//! [`crate::partitions`]:
//!
//! * [`gs_sum`] sums the generating functions `G_{k,l}` of partitions with
//!   `l` distinct parts and largest part `k` over `k + l ≤ s`;
//! * [`gs_closed`] evaluates `Σ_m q^{m(m+1)/2} [s-m choose m]_q`;
//! * [`gs_recurrence`] runs `G_s = G_{s-1} + q^{s-1} (G_{s-3} + G_{s-4})`
//!   from the four base cases. The recurrence is only checked on a finite
//!   range (see [`verify_all_methods`]), never assumed beyond it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{require_positive_s, Error, Result};
use crate::partitions::{brute_force_gf, brute_force_gf_hooks, Partition, WorkBudget};
use crate::qpoly::{QBinomialCache, QPoly};

/// Largest `s` for which the closed form is the default route.
pub const CLOSED_FORM_DEFAULT_MAX_S: usize = 40;

/// Fibonacci number with `F_1 = F_2 = 1` (and `F_0 = 0`).
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_0..=F_n`.
pub fn fibonacci_table(n: usize) -> Vec<BigInt> {
    let mut fib = Vec::with_capacity(n + 1);
    fib.push(BigInt::zero());
    if n >= 1 {
        fib.push(BigInt::one());
    }
    for i in 2..=n {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    fib
}

/// Table of `G_{k,l}` for all `k, l ≥ 1` with `k + l ≤ bound`.
///
/// Uses `G_{k,1} = q^k` and `G_{k,l} = q^k Σ_{j<k} G_{j,l-1}`; the inner sum
/// is kept as a running prefix so each entry costs one shifted copy.
#[derive(Debug, Clone)]
pub struct GklTable {
    bound: usize,
    // rows[l - 1][k - 1] = G_{k,l}
    rows: Vec<Vec<QPoly>>,
}

impl GklTable {
    pub fn new(bound: usize) -> Self {
        let mut rows: Vec<Vec<QPoly>> = Vec::new();
        for l in 1..bound {
            let max_k = bound - l;
            let mut row = Vec::with_capacity(max_k);
            let mut prefix = QPoly::zero();
            for k in 1..=max_k {
                let g = if l == 1 {
                    QPoly::monomial(BigInt::one(), k)
                } else {
                    prefix.shift(k)
                };
                if l > 1 {
                    // extend the prefix with G_{k, l-1} for the next k
                    if let Some(prev) = rows[l - 2].get(k - 1) {
                        prefix += prev;
                    }
                }
                row.push(g);
            }
            rows.push(row);
        }
        GklTable { bound, rows }
    }

    /// `G_{k,l}`, or `None` outside the table.
    pub fn get(&self, k: usize, l: usize) -> Option<&QPoly> {
        if k == 0 || l == 0 || k + l > self.bound {
            return None;
        }
        self.rows.get(l - 1).and_then(|row| row.get(k - 1))
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

/// Generating function of partitions with exactly `l` distinct parts and
/// largest part exactly `k`.
pub fn g_kl(k: usize, l: usize) -> Result<QPoly> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be at least 1".into()));
    }
    Ok(GklTable::new(k + l).get(k, l).cloned().unwrap_or_default())
}

/// `G_s` as `1 + Σ_{k+l ≤ s} G_{k,l}`.
pub fn gs_sum(s: usize) -> Result<QPoly> {
    require_positive_s(s)?;
    Ok(gs_sum_from(&GklTable::new(s), s))
}

fn gs_sum_from(table: &GklTable, s: usize) -> QPoly {
    let mut total = QPoly::one();
    for l in 1..s {
        for k in 1..=(s - l) {
            if let Some(g) = table.get(k, l) {
                total += g;
            }
        }
    }
    total
}

/// `G_s` from the q-binomial closed form.
pub fn gs_closed(s: usize) -> Result<QPoly> {
    gs_closed_with(s, &mut QBinomialCache::new())
}

/// As [`gs_closed`], reusing a q-binomial cache across calls.
pub fn gs_closed_with(s: usize, cache: &mut QBinomialCache) -> Result<QPoly> {
    require_positive_s(s)?;
    let mut total = QPoly::zero();
    for m in 0..=s {
        if m > s - m {
            break;
        }
        total.add_shifted_assign(&cache.get(s - m, m), m * (m + 1) / 2);
    }
    Ok(total)
}

/// Degree of `G_s` predicted by the closed form: the `m`-th summand has
/// degree `m(m+1)/2 + m(s-2m)`.
pub fn closed_form_degree(s: usize) -> usize {
    (0..=s / 2)
        .map(|m| m * (m + 1) / 2 + m * (s - 2 * m))
        .max()
        .unwrap_or(0)
}

/// Adds `1, 2, ..., m` (from the smallest part upwards) to a partition that
/// fits in an `m × (n-m)` box, missing parts counting as 0. The image has
/// exactly `m` distinct parts, all at most `n`, and size larger by
/// `m(m+1)/2`.
pub fn distinctify(p: &Partition, m: usize, n: usize) -> Result<Partition> {
    if m > n || p.len() > m || p.largest_part() > n - m {
        return Err(Error::OutsideBox {
            partition: p.to_string(),
            rows: m,
            cols: n.saturating_sub(m),
        });
    }
    let parts = (0..m)
        .map(|i| p.parts().get(i).copied().unwrap_or(0) + (m - i))
        .collect();
    Partition::new(parts)
}

/// The four base cases `G_1..G_4`.
pub fn base_cases() -> [QPoly; 4] {
    [
        QPoly::from_i64s(&[1]),
        QPoly::from_i64s(&[1, 1]),
        QPoly::from_i64s(&[1, 1, 1]),
        QPoly::from_i64s(&[1, 1, 1, 2]),
    ]
}

/// `[G_1, ..., G_max_s]` by the recurrence.
pub fn gs_recurrence_table(max_s: usize) -> Result<Vec<QPoly>> {
    require_positive_s(max_s)?;
    let mut polys: Vec<QPoly> = base_cases().into_iter().take(max_s).collect();
    for s in 5..=max_s {
        // polys[i] holds G_{i+1}
        let mut next = polys[s - 2].clone();
        next.add_shifted_assign(&polys[s - 4], s - 1);
        next.add_shifted_assign(&polys[s - 5], s - 1);
        polys.push(next);
    }
    Ok(polys)
}

/// `G_s` by the recurrence.
pub fn gs_recurrence(s: usize) -> Result<QPoly> {
    Ok(gs_recurrence_table(s)?.pop().expect("nonempty table"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GfMethod {
    Sum,
    Closed,
    Recurrence,
    Brute,
}

impl GfMethod {
    pub const ALL: [GfMethod; 4] = [
        GfMethod::Sum,
        GfMethod::Closed,
        GfMethod::Recurrence,
        GfMethod::Brute,
    ];

    /// Closed form up to [`CLOSED_FORM_DEFAULT_MAX_S`], recurrence above.
    pub fn default_for(s: usize) -> GfMethod {
        if s > CLOSED_FORM_DEFAULT_MAX_S {
            GfMethod::Recurrence
        } else {
            GfMethod::Closed
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GfMethod::Sum => "sum",
            GfMethod::Closed => "closed",
            GfMethod::Recurrence => "recurrence",
            GfMethod::Brute => "brute",
        }
    }
}

impl fmt::Display for GfMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GfMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// `G_s` by the chosen method.
pub fn gs(s: usize, method: GfMethod, budget: WorkBudget) -> Result<QPoly> {
    match method {
        GfMethod::Sum => gs_sum(s),
        GfMethod::Closed => gs_closed(s),
        GfMethod::Recurrence => gs_recurrence(s),
        GfMethod::Brute => brute_force_gf(s, budget),
    }
}

/// `G_1..G_max_s` computed by a single method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfTable {
    max_s: usize,
    polys: Vec<QPoly>,
    method: GfMethod,
}

impl GfTable {
    pub fn build(max_s: usize, method: GfMethod, budget: WorkBudget) -> Result<Self> {
        require_positive_s(max_s)?;
        let polys = match method {
            GfMethod::Recurrence => gs_recurrence_table(max_s)?,
            GfMethod::Sum => {
                let table = GklTable::new(max_s);
                (1..=max_s).map(|s| gs_sum_from(&table, s)).collect()
            }
            GfMethod::Closed => {
                let mut cache = QBinomialCache::new();
                (1..=max_s)
                    .map(|s| gs_closed_with(s, &mut cache))
                    .collect::<Result<_>>()?
            }
            GfMethod::Brute => (1..=max_s)
                .map(|s| brute_force_gf(s, budget))
                .collect::<Result<_>>()?,
        };
        Ok(GfTable {
            max_s,
            polys,
            method,
        })
    }

    pub fn max_s(&self) -> usize {
        self.max_s
    }

    pub fn method(&self) -> GfMethod {
        self.method
    }

    /// `G_s`, for `1 ≤ s ≤ max_s`.
    pub fn get(&self, s: usize) -> Option<&QPoly> {
        s.checked_sub(1).and_then(|i| self.polys.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &QPoly)> {
        self.polys.iter().enumerate().map(|(i, p)| (i + 1, p))
    }
}

/// One line of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub s: usize,
    pub description: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn compare(&mut self, s: usize, left: &str, a: &QPoly, right: &str, b: &QPoly) {
        let diff = a.first_difference(b);
        self.checks.push(Check {
            s,
            description: format!("{left} = {right}"),
            passed: diff.is_none(),
            detail: diff.map(|n| {
                format!(
                    "first difference at q^{n}: {left} has {}, {right} has {}",
                    a.coeff(n),
                    b.coeff(n)
                )
            }),
        });
    }
}

/// Checks `sum = closed = recurrence` for `s ≤ max_s`, agreement with both
/// brute-force variants for `s ≤ brute_max`, and `G_s(1) = F_{s+1}`
/// throughout.
pub fn verify_all_methods(
    max_s: usize,
    brute_max: usize,
    budget: WorkBudget,
) -> Result<VerificationReport> {
    require_positive_s(max_s)?;
    if brute_max > max_s {
        return Err(Error::InvalidArgument(format!(
            "brute_max = {brute_max} exceeds max_s = {max_s}"
        )));
    }
    let sum = GfTable::build(max_s, GfMethod::Sum, budget)?;
    let closed = GfTable::build(max_s, GfMethod::Closed, budget)?;
    let rec = GfTable::build(max_s, GfMethod::Recurrence, budget)?;
    let fib = fibonacci_table(max_s + 1);

    let mut report = VerificationReport::default();
    for s in 1..=max_s {
        let g_rec = rec.get(s).expect("in range");
        report.compare(s, "sum", sum.get(s).expect("in range"), "closed", closed.get(s).expect("in range"));
        report.compare(s, "closed", closed.get(s).expect("in range"), "recurrence", g_rec);
        if s <= brute_max {
            let brute = brute_force_gf(s, budget)?;
            let hooks = brute_force_gf_hooks(s, budget)?;
            report.compare(s, "recurrence", g_rec, "brute(perimeter)", &brute);
            report.compare(s, "brute(perimeter)", &brute, "brute(hooks)", &hooks);
        }
        let count = g_rec.eval_one();
        let passed = count == fib[s + 1];
        report.checks.push(Check {
            s,
            description: "G_s(1) = F_{s+1}".into(),
            passed,
            detail: (!passed).then(|| format!("G_s(1) = {count}, F_{{s+1}} = {}", fib[s + 1])),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_ps;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1), BigInt::from(1));
        assert_eq!(fibonacci(2), BigInt::from(1));
        assert_eq!(fibonacci(5), BigInt::from(5));
        assert_eq!(fibonacci(30), BigInt::from(832040));
        let table = fibonacci_table(40);
        for n in 0..=40 {
            assert_eq!(table[n], fibonacci(n));
        }
    }

    #[test]
    fn g_kl_examples() {
        assert_eq!(g_kl(2, 1).unwrap(), qp(&[0, 0, 1]));
        assert_eq!(g_kl(1, 2).unwrap(), QPoly::zero());
        assert_eq!(g_kl(3, 2).unwrap(), qp(&[0, 0, 0, 0, 1, 1]));
        assert!(g_kl(0, 2).is_err());
    }

    #[test]
    fn g_kl_matches_enumeration() {
        let all = crate::partitions::distinct_partitions_up_to(45, WorkBudget::default()).unwrap();
        let table = GklTable::new(10);
        for l in 1..10 {
            for k in 1..=(10 - l) {
                let mut counts = vec![0i64; 46];
                for p in all.iter().filter(|p| p.len() == l && p.largest_part() == k) {
                    counts[p.size()] += 1;
                }
                assert_eq!(table.get(k, l).unwrap(), &qp(&counts), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn base_case_routes() {
        let expected = base_cases();
        for s in 1..=4 {
            assert_eq!(gs_sum(s).unwrap(), expected[s - 1]);
            assert_eq!(gs_closed(s).unwrap(), expected[s - 1]);
            assert_eq!(gs_recurrence(s).unwrap(), expected[s - 1]);
        }
        assert_eq!(gs_closed(3).unwrap(), qp(&[1, 1, 1]));
    }

    #[test]
    fn first_recurrence_step() {
        assert_eq!(gs_recurrence(5).unwrap(), qp(&[1, 1, 1, 2, 2, 1]));
        assert_eq!(gs_recurrence(5).unwrap().eval_one(), BigInt::from(8));
    }

    #[test]
    fn s_zero_is_rejected() {
        assert!(gs_sum(0).is_err());
        assert!(gs_closed(0).is_err());
        assert!(gs_recurrence(0).is_err());
        assert!(GfTable::build(0, GfMethod::Recurrence, WorkBudget::default()).is_err());
    }

    #[test]
    fn distinctify_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(distinctify(&p(&[]), 2, 4).unwrap(), p(&[2, 1]));
        assert_eq!(distinctify(&p(&[3, 3]), 2, 5).unwrap(), p(&[5, 4]));
        assert_eq!(distinctify(&p(&[1]), 2, 4).unwrap(), p(&[3, 1]));
        assert!(distinctify(&p(&[3]), 2, 4).is_err());
        assert!(distinctify(&p(&[1, 1, 1]), 2, 6).is_err());
    }

    #[test]
    fn distinctify_reproduces_closed_form_terms() {
        // Every partition in an m x (n-m) box; the images must be distinct,
        // have m distinct parts and reproduce q^{m(m+1)/2} [n choose m]_q.
        fn boxed(rows: usize, cap: usize) -> Vec<Vec<usize>> {
            if rows == 0 {
                return vec![vec![]];
            }
            let mut out = vec![vec![]];
            for first in 1..=cap {
                for rest in boxed(rows - 1, first) {
                    let mut v = vec![first];
                    v.extend(rest);
                    out.push(v);
                }
            }
            out
        }
        let mut cache = QBinomialCache::new();
        for s in 1..=10 {
            for m in 0..=s / 2 {
                let n = s - m;
                let mut seen = std::collections::HashSet::new();
                let mut gf = QPoly::zero();
                for parts in boxed(m, n - m) {
                    let p = Partition::new(parts).unwrap();
                    let img = distinctify(&p, m, n).unwrap();
                    assert_eq!(img.size(), p.size() + m * (m + 1) / 2);
                    assert!(img.has_distinct_parts() && img.len() == m && img.largest_part() <= n);
                    assert!(seen.insert(img.clone()), "not injective at {p}");
                    gf += &QPoly::monomial(BigInt::one(), img.size());
                }
                assert_eq!(gf, cache.get(n, m).shift(m * (m + 1) / 2), "s={s} m={m}");
            }
        }
    }

    #[test]
    fn degree_matches_largest_partition() {
        for s in 1..=12 {
            let max_size = enumerate_ps(s, WorkBudget::default())
                .unwrap()
                .iter()
                .map(Partition::size)
                .max()
                .unwrap();
            assert_eq!(gs_recurrence(s).unwrap().degree(), Some(max_size));
        }
        let mut cache = QBinomialCache::new();
        for s in 1..=60 {
            assert_eq!(gs_closed_with(s, &mut cache).unwrap().degree(), Some(closed_form_degree(s)));
        }
    }

    #[test]
    fn coefficients_nonnegative_with_unit_constant() {
        for (s, g) in GfTable::build(30, GfMethod::Recurrence, WorkBudget::default()).unwrap().iter() {
            assert!(g.coeffs().iter().all(|c| c >= &BigInt::zero()), "s={s}");
            assert_eq!(g.coeff(0), BigInt::one());
        }
    }

    #[test]
    fn verification_small() {
        let r = verify_all_methods(1, 1, WorkBudget::default()).unwrap();
        assert!(r.all_passed());
        let r = verify_all_methods(4, 4, WorkBudget::default()).unwrap();
        assert!(r.all_passed());
        assert!(verify_all_methods(4, 5, WorkBudget::default()).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in GfMethod::ALL {
            assert_eq!(m.name().parse::<GfMethod>().unwrap(), m);
        }
        assert!("nope".parse::<GfMethod>().is_err());
        assert_eq!(GfMethod::default_for(40), GfMethod::Closed);
        assert_eq!(GfMethod::default_for(41), GfMethod::Recurrence);
    }
}
