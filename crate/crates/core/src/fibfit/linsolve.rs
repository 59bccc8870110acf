//! Fraction-free (Bareiss) elimination for integer linear systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined { rank: usize },
}

/// Solves `a · x = b` exactly; `a` may have more rows than columns.
///
/// Every intermediate entry is a minor of the augmented matrix, so all
/// divisions are exact and no rationals appear until back-substitution.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Solution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in (c + 1)..=cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[rank][c].clone();
        pivots.push(c);
        rank += 1;
    }

    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if rank < cols {
        return Solution::Underdetermined { rank };
    }

    let mut x = vec![BigRational::zero(); cols];
    for i in (0..cols).rev() {
        let mut acc = BigRational::from_integer(m[i][cols].clone());
        for j in (i + 1)..cols {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect()
    }

    fn vecb(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_system() {
        let a = mat(&[&[2, 1, -1], &[-3, -1, 2], &[-2, 1, 2]]);
        let b = vecb(&[8, -11, -3]);
        assert_eq!(solve(&a, &b), Solution::Unique(vec![q(2, 1), q(3, 1), q(-1, 1)]));
    }

    #[test]
    fn rational_solution_and_pivoting() {
        let a = mat(&[&[0, 3], &[2, 0]]);
        assert_eq!(solve(&a, &vecb(&[1, 1])), Solution::Unique(vec![q(1, 2), q(1, 3)]));
    }

    #[test]
    fn overdetermined() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&a, &vecb(&[1, 2, 3])), Solution::Unique(vec![q(1, 1), q(2, 1)]));
        assert_eq!(solve(&a, &vecb(&[1, 2, 4])), Solution::Inconsistent);
    }

    #[test]
    fn rank_deficient() {
        let a = mat(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(solve(&a, &vecb(&[1, 2, 3])), Solution::Underdetermined { rank: 1 });
        assert_eq!(solve(&a, &vecb(&[1, 2, 4])), Solution::Inconsistent);
    }

    #[test]
    fn vandermonde_interpolation() {
        // fit s^3 - 2s + 7 on s = 0..6
        let a: Vec<Vec<BigInt>> = (0..6i64).map(|s| (0..4).map(|j| BigInt::from(s.pow(j))).collect()).collect();
        let b: Vec<BigInt> = (0..6i64).map(|s| BigInt::from(s * s * s - 2 * s + 7)).collect();
        assert_eq!(solve(&a, &b), Solution::Unique(vec![q(7, 1), q(-2, 1), q(0, 1), q(1, 1)]));
    }
}
