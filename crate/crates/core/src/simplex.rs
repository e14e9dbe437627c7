//! Exact rational phase-1 simplex for equality-form feasibility problems
//! `{ A x = b, x >= 0 }`, with Farkas certificates on infeasibility.
//!
//! Bland's pivoting rule guarantees termination. Problem sizes in this crate
//! are a handful of rows and columns, so a dense tableau over `BigRational`
//! is the right tool: every certificate re-verifies exactly.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ratlin::RatMatrix;

/// Outcome of a feasibility run.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A feasible point of `{Ax = b, x >= 0}`.
    Feasible(Vec<BigRational>),
    /// A Farkas certificate `y` with `y^T A <= 0` componentwise and
    /// `y^T b > 0`, proving the system empty.
    Infeasible(Vec<BigRational>),
}

/// Solve the feasibility problem `{ A x = b, x >= 0 }` exactly.
pub fn feasibility(a: &RatMatrix, b: &[BigRational]) -> Feasibility {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), m);

    // Normalize to b >= 0, remembering row flips for the certificate.
    let mut rows = a.clone();
    let mut rhs = b.to_vec();
    let mut flipped = vec![false; m];
    for i in 0..m {
        if rhs[i].is_negative() {
            flipped[i] = true;
            rhs[i] = -rhs[i].clone();
            for v in &mut rows[i] {
                *v = -v.clone();
            }
        }
    }

    // Tableau columns: n structural, m artificial, 1 rhs.
    let width = n + m + 1;
    let mut t: RatMatrix = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(rows[i].iter().cloned());
            for j in 0..m {
                row.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row.push(rhs[i].clone());
            row
        })
        .collect();

    // Objective: minimize the sum of artificials. Keep the reduced-cost row
    // z_j - c_j for all columns plus the objective value at the end.
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); width];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            obj[j] += v;
        }
    }
    for j in n..n + m {
        obj[j] -= BigRational::one();
    }

    loop {
        // Bland: entering column = smallest index with positive reduced cost.
        let entering = (0..n + m).find(|&j| obj[j].is_positive() && !basis.contains(&j));
        let Some(e) = entering else {
            break;
        };
        // Ratio test; Bland tie-break on the leaving basis variable index.
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[width - 1] / &row[e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((li, _)) = leave else {
            // Unbounded phase-1 objective cannot happen (bounded below by 0
            // and we maximize z - c along positive reduced costs of a
            // minimization rewritten as such); defensive stop.
            break;
        };
        // Pivot on (li, e).
        let piv = t[li][e].clone();
        for v in &mut t[li] {
            *v = &*v / &piv;
        }
        for i in 0..m {
            if i != li && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..width {
                    let sub = &t[li][j] * &f;
                    t[i][j] = &t[i][j] - &sub;
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..width {
                let sub = &t[li][j] * &f;
                obj[j] = &obj[j] - &sub;
            }
        }
        basis[li] = e;
    }

    // The stored row keeps z_j - c_j; its rhs entry is pi^T b, the current
    // phase-1 objective value.
    let objective = obj[width - 1].clone();
    if objective.is_zero() {
        // Feasible: read off the structural variables.
        let mut x = vec![BigRational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][width - 1].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        // Simplex multipliers: pi_i = 1 - (reduced cost of artificial i),
        // where the stored obj row holds z_j - c_j = pi^T A_j - c_j.
        // For artificial column i: obj[n+i] = pi_i - 1.
        let mut y: Vec<BigRational> = (0..m)
            .map(|i| &obj[n + i] + &BigRational::one())
            .collect();
        // Undo the row sign flips.
        for (i, fl) in flipped.iter().enumerate() {
            if *fl {
                y[i] = -y[i].clone();
            }
        }
        Feasibility::Infeasible(y)
    }
}

/// Check a Farkas certificate for `{Ax = b, x >= 0}` being empty.
pub fn verify_farkas(a: &RatMatrix, b: &[BigRational], y: &[BigRational]) -> bool {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if y.len() != m {
        return false;
    }
    for j in 0..n {
        let mut dot = BigRational::zero();
        for i in 0..m {
            dot += &a[i][j] * &y[i];
        }
        if dot.is_positive() {
            return false;
        }
    }
    let mut rhs = BigRational::zero();
    for i in 0..m {
        rhs += &b[i] * &y[i];
    }
    rhs.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn feasible_convex_combination() {
        // t1 + t2 = 1, t1 - t2 = 0  ->  t = (1/2, 1/2)
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(1), q(0)];
        match feasibility(&a, &b) {
            Feasibility::Feasible(x) => {
                assert_eq!(x, vec![BigRational::new(1.into(), 2.into()); 2]);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_verified_certificate() {
        // x1 + x2 = -1 with x >= 0 has no solution.
        let a = vec![vec![q(1), q(1)]];
        let b = vec![q(-1)];
        match feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert!(verify_farkas(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_of_0_fails_for_offset_points() {
        // conv{1, i} does not contain 0: rows Re, Im, sum-to-one.
        let a = vec![
            vec![q(1), q(0)],
            vec![q(0), q(1)],
            vec![q(1), q(1)],
        ];
        let b = vec![q(0), q(0), q(1)];
        match feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert!(verify_farkas(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }
}
