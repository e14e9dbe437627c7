//! Small dense exact linear algebra over the rationals: elimination, rank,
//! determinants, and nullspaces. Sizes here are tiny (dimensions <= 12), so
//! fraction growth is a non-issue.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

/// Row echelon elimination in place; returns pivot column per pivot row.
fn eliminate(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for entry in &mut m[r] {
            *entry = &*entry / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let sub = &m[r][j] * &factor;
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    eliminate(&mut work).len()
}

pub fn determinant(m: &RatMatrix) -> BigRational {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut work = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            work.swap(c, p);
            det = -det;
        }
        det *= &work[c][c];
        let inv = work[c][c].clone();
        for j in c..n {
            work[c][j] = &work[c][j] / &inv;
        }
        for i in (c + 1)..n {
            if !work[i][c].is_zero() {
                let factor = work[i][c].clone();
                for j in c..n {
                    let sub = &work[c][j] * &factor;
                    work[i][j] = &work[i][j] - &sub;
                }
            }
        }
    }
    det
}

/// A basis of the right nullspace of `m` (columns as vectors).
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut work = m.clone();
    let pivots = eliminate(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[fc] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `m x = b` exactly; `None` when inconsistent. With multiple
/// solutions the free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut work: RatMatrix = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut work);
    // inconsistency: pivot in the appended column
    if pivots.last().is_some_and(|&c| c == cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = work[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_and_det() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&m), 1);
        assert_eq!(determinant(&m), q(0));
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(determinant(&m), q(-2));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = vec![vec![q(1), q(1), q(1)]];
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: BigRational = v.iter().cloned().sum();
            assert_eq!(dot, q(0));
        }
        let m = vec![vec![q(2), q(0)], vec![q(0), q(4)]];
        let x = solve(&m, &[q(6), q(8)]).unwrap();
        assert_eq!(x, vec![q(3), q(2)]);
        let m = vec![vec![q(1), q(0)], vec![q(1), q(0)]];
        assert!(solve(&m, &[q(1), q(2)]).is_none());
    }
}
