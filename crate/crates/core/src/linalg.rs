//! Small exact linear algebra: solves, ranks, inertia and definiteness.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{OrderedScalar, Rational};

/// Solves `M·x = rhs` for a square non-singular rational `M`, with the right
/// hand side in any ordered field containing ℚ. Returns `None` if `M` is singular.
pub fn solve<K: OrderedScalar>(matrix: &[Vec<Rational>], rhs: &[K]) -> Option<Vec<K>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut b: Vec<K> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = b[col].scale(&f);
            b[r] = b[r].clone() - delta;
        }
    }
    let mut x = vec![K::zero_value(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc = acc - x[j].scale(&a[i][j]);
        }
        x[i] = acc.scale(&(Rational::one() / &a[i][i]));
    }
    Some(x)
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for c in col..width {
                let delta = &f * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix, by
/// symmetric elimination (Sylvester's law of inertia).
pub fn inertia(matrix: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let mut pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        if pivot.is_none() {
            // all diagonal entries vanish; combine two indices with a_ij ≠ 0
            let pair = active
                .iter()
                .enumerate()
                .find_map(|(k, &i)| active[k + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
            let Some((i, j)) = pair else {
                break;
            };
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            pivot = Some(i);
        }
        let p = pivot.expect("pivot chosen above");
        if a[p][p].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] / &a[p][p];
            for c in 0..n {
                let delta = &f * &a[p][c];
                a[r][c] -= delta;
            }
            for rr in 0..n {
                let delta = &f * &a[rr][p];
                a[rr][r] -= delta;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// Leading principal minors of an integer matrix, by fraction-free (Bareiss)
/// elimination. Stops early at the first vanishing minor.
pub fn leading_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Negative definiteness via the signs `(−1)^k·det_k > 0` of the leading minors.
pub fn is_negative_definite(matrix: &[Vec<BigInt>]) -> bool {
    let minors = leading_minors(matrix);
    minors.len() == matrix.len()
        && minors
            .iter()
            .enumerate()
            .all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() })
}
