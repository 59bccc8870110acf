//! Partitions, hook lengths and the enumeration oracles for `P_s`.
//!
//! `P_s` is the set of (s,s+1)-core partitions with distinct parts. A
//! distinct-part partition belongs to `P_s` exactly when its perimeter (its
//! largest hook) is below `s`; [`enumerate_ps`] uses that characterization
//! while [`brute_force_gf_hooks`] filters on hook lengths directly, so the two
//! generating functions are independent witnesses of each other.

use std::fmt;

use crate::error::{require_positive_s, Error, Result};
use crate::qpoly::QPoly;

/// Environment variable overriding the default brute-force work budget.
pub const BUDGET_ENV: &str = "CORE_MOMENTS_BUDGET";

/// Default number of partitions the brute-force routes may examine.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing steps.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes in the Young diagram.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Vec<usize> {
        let mut cols = vec![0; self.largest_part()];
        for &row in &self.parts {
            for c in cols.iter_mut().take(row) {
                *c += 1;
            }
        }
        cols
    }

    /// Hook lengths of all boxes, sorted in decreasing order.
    ///
    /// The hook of box `(i, j)` counts the boxes to its right, the boxes
    /// below it and the box itself (English convention).
    pub fn hook_lengths(&self) -> Vec<usize> {
        let cols = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for (j, &col) in cols.iter().enumerate().take(row) {
                hooks.push((row - j - 1) + (col - i - 1) + 1);
            }
        }
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        hooks
    }

    /// Largest hook length; 0 for the empty partition.
    ///
    /// For a nonempty partition this is the hook of the corner box,
    /// `λ_1 + m - 1`.
    pub fn perimeter(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.largest_part() + self.len() - 1
        }
    }

    /// True iff no box has hook length `t`.
    pub fn is_t_core(&self, t: usize) -> bool {
        !self.hook_lengths().contains(&t)
    }

    /// True iff the partition is both an `s`-core and an `(s+1)`-core.
    pub fn is_consecutive_core(&self, s: usize) -> bool {
        let hooks = self.hook_lengths();
        !hooks.contains(&s) && !hooks.contains(&(s + 1))
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Upper bound on the number of partitions a brute-force routine may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget(pub u64);

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget(DEFAULT_BUDGET)
    }
}

impl WorkBudget {
    /// Reads [`BUDGET_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(WorkBudget)
                .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(WorkBudget::default()),
        }
    }
}

struct Meter {
    used: u64,
    budget: u64,
}

impl Meter {
    fn new(budget: WorkBudget) -> Self {
        Meter {
            used: 0,
            budget: budget.0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            Err(Error::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// Depth-first walk over distinct-part partitions in lexicographic order of
/// the part sequence (a prefix precedes its extensions, so the empty
/// partition comes first). `admit(prefix, next)` decides whether `next` may
/// be appended.
fn walk_distinct<F>(
    budget: WorkBudget,
    max_first: usize,
    admit: F,
    out: &mut Vec<Partition>,
) -> Result<()>
where
    F: Fn(&[usize], usize) -> bool,
{
    fn go<F: Fn(&[usize], usize) -> bool>(
        prefix: &mut Vec<usize>,
        bound: usize,
        admit: &F,
        meter: &mut Meter,
        out: &mut Vec<Partition>,
    ) -> Result<()> {
        meter.tick()?;
        out.push(Partition {
            parts: prefix.clone(),
        });
        for next in 1..bound {
            if !admit(prefix, next) {
                continue;
            }
            prefix.push(next);
            go(prefix, next, admit, meter, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut meter = Meter::new(budget);
    go(&mut Vec::new(), max_first + 1, &admit, &mut meter, out)
}

/// All partitions in `P_s`: distinct parts and perimeter below `s`.
///
/// Output order is lexicographic in the part sequence with the empty
/// partition first, e.g. `s = 4` gives `(), (1), (2), (2,1), (3)`.
pub fn enumerate_ps(s: usize, budget: WorkBudget) -> Result<Vec<Partition>> {
    require_positive_s(s)?;
    let mut out = Vec::new();
    // perimeter = first + len - 1 < s
    walk_distinct(
        budget,
        s - 1,
        |prefix, next| {
            let first = prefix.first().copied().unwrap_or(next);
            first + prefix.len() < s
        },
        &mut out,
    )?;
    Ok(out)
}

/// All distinct-part partitions of size at most `max_size`, in the same
/// order as [`enumerate_ps`].
pub fn distinct_partitions_up_to(max_size: usize, budget: WorkBudget) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    walk_distinct(
        budget,
        max_size,
        |prefix, next| prefix.iter().sum::<usize>() + next <= max_size,
        &mut out,
    )?;
    Ok(out)
}

fn size_gf<'a>(parts: impl IntoIterator<Item = &'a Partition>) -> QPoly {
    let mut counts: Vec<u64> = Vec::new();
    for p in parts {
        let n = p.size();
        if counts.len() <= n {
            counts.resize(n + 1, 0);
        }
        counts[n] += 1;
    }
    QPoly::from_coeffs(counts.into_iter().map(Into::into).collect())
}

/// `G_s(q)` by explicit enumeration of `P_s` (perimeter filter).
pub fn brute_force_gf(s: usize, budget: WorkBudget) -> Result<QPoly> {
    Ok(size_gf(&enumerate_ps(s, budget)?))
}

/// `G_s(q)` by filtering distinct-part partitions on hook lengths alone.
///
/// The search covers every distinct-part partition of size at most
/// `s(s-1)/2`. That bound does not rely on the perimeter characterization:
/// along the first row of a distinct-part partition the hooks fall from the
/// perimeter to 1 in steps of 1 or 2, so a perimeter of `s` or more forces a
/// hook of length `s` or `s+1`. Every core therefore has largest part below
/// `s`, hence size at most `1 + 2 + ... + (s-1)`.
pub fn brute_force_gf_hooks(s: usize, budget: WorkBudget) -> Result<QPoly> {
    require_positive_s(s)?;
    let candidates = distinct_partitions_up_to(s * (s - 1) / 2, budget)?;
    Ok(size_gf(
        candidates.iter().filter(|p| p.is_consecutive_core(s)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hooks_of_figure_partition() {
        assert_eq!(p(&[4, 3, 1, 1]).hook_lengths(), vec![7, 5, 4, 3, 2, 2, 1, 1, 1]);
        assert!(p(&[]).hook_lengths().is_empty());
        assert_eq!(p(&[1]).hook_lengths(), vec![1]);
    }

    #[test]
    fn perimeter_examples() {
        assert_eq!(p(&[4, 3, 1, 1]).perimeter(), 7);
        assert_eq!(p(&[]).perimeter(), 0);
        for n in 1..20 {
            assert_eq!(p(&[n]).perimeter(), n);
        }
    }

    #[test]
    fn core_examples() {
        let fig = p(&[4, 3, 1, 1]);
        assert!(fig.is_t_core(6));
        assert!(fig.is_t_core(8));
        assert!(!fig.is_t_core(7));
        for t in 1..10 {
            assert!(p(&[]).is_t_core(t));
        }
    }

    #[test]
    fn distinct_parts() {
        assert!(!p(&[4, 3, 1, 1]).has_distinct_parts());
        assert!(p(&[3, 2]).has_distinct_parts());
        assert!(p(&[]).has_distinct_parts());
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn enumerate_small() {
        let b = WorkBudget::default();
        assert_eq!(enumerate_ps(1, b).unwrap(), vec![p(&[])]);
        assert_eq!(enumerate_ps(3, b).unwrap(), vec![p(&[]), p(&[1]), p(&[2])]);
        assert_eq!(
            enumerate_ps(4, b).unwrap(),
            vec![p(&[]), p(&[1]), p(&[2]), p(&[2, 1]), p(&[3])]
        );
        assert!(enumerate_ps(0, b).is_err());
    }

    #[test]
    fn brute_force_small() {
        let b = WorkBudget::default();
        assert_eq!(brute_force_gf(1, b).unwrap(), QPoly::from_i64s(&[1]));
        assert_eq!(brute_force_gf(2, b).unwrap(), QPoly::from_i64s(&[1, 1]));
        assert_eq!(brute_force_gf(4, b).unwrap(), QPoly::from_i64s(&[1, 1, 1, 2]));
        assert_eq!(brute_force_gf_hooks(4, b).unwrap(), QPoly::from_i64s(&[1, 1, 1, 2]));
    }

    #[test]
    fn brute_force_variants_agree() {
        let b = WorkBudget::default();
        for s in 1..=12 {
            assert_eq!(brute_force_gf(s, b).unwrap(), brute_force_gf_hooks(s, b).unwrap(), "s = {s}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_ps(20, WorkBudget(100)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 100 });
        assert!(brute_force_gf_hooks(25, WorkBudget(1000)).is_err());
    }

    #[test]
    fn perimeter_characterization_on_small_partitions() {
        let all = distinct_partitions_up_to(30, WorkBudget::default()).unwrap();
        for part in &all {
            for s in 1..=12 {
                assert_eq!(part.is_consecutive_core(s), part.perimeter() < s, "{part} s={s}");
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..12, 0..10).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn hook_count_is_size(part in arb_partition()) {
            prop_assert_eq!(part.hook_lengths().len(), part.size());
        }

        #[test]
        fn perimeter_is_max_hook(part in arb_partition()) {
            let max_hook = part.hook_lengths().first().copied().unwrap_or(0);
            prop_assert_eq!(part.perimeter(), max_hook);
        }
    }
}
