//! Exact rational linear feasibility: phase-one simplex with Bland's rule
//! over systems `A x = b, x >= 0`.

// Tableau pivoting is written with explicit indices.
#![allow(clippy::needless_range_loop)]

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::matrix::Q;

/// Decides feasibility of `{x >= 0 : A x = b}` exactly.
///
/// A full artificial basis is introduced and the sum of artificials
/// minimized; Bland's rule guarantees termination. The system is feasible
/// iff the optimum is zero.
pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return true;
    }

    // Tableau rows: [A | I | b], with rows negated so b >= 0.
    let total = n + m;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = Vec::with_capacity(total + 1);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for j in 0..m {
            row.push(if i == j { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..total).collect();

    loop {
        // Reduced costs for minimizing the sum of artificial variables:
        // red_j = c_j - sum_i c_B[i] * t[i][j], with c_j = 1 on artificials.
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let cj = if j >= n { Q::one() } else { Q::zero() };
            let mut red = cj;
            for i in 0..m {
                if basis[i] >= n && !t[i][j].is_zero() {
                    red -= t[i][j].clone();
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest improving index.
            }
        }
        let Some(j) = entering else {
            // Optimal: feasible iff no artificial variable keeps a nonzero
            // value.
            let obj: Q = (0..m)
                .filter(|&i| basis[i] >= n)
                .map(|i| t[i][total].clone())
                .fold(Q::zero(), |acc, v| acc + v);
            return obj.is_zero();
        };

        let mut leaving: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][total] / &t[i][j];
                let better = match &leaving {
                    None => true,
                    Some((cur, best)) => {
                        ratio < *best || (ratio == *best && basis[i] < basis[*cur])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leaving else {
            // Unbounded cannot happen while minimizing a sum of
            // nonnegative variables.
            return false;
        };

        let p = t[r][j].clone();
        for c in 0..=total {
            t[r][c] = &t[r][c] / &p;
        }
        for i in 0..m {
            if i != r && !t[i][j].is_zero() {
                let factor = t[i][j].clone();
                for c in 0..=total {
                    let s = &factor * &t[r][c];
                    t[i][c] = &t[i][c] - &s;
                }
            }
        }
        basis[r] = j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::matrix::{q_int, q_ratio};
    use alloc::vec;

    #[test]
    fn point_on_segment_is_feasible() {
        // x1*(1,0) + x2*(0,1) = (1/2,1/2), x1 + x2 = 1.
        let a = vec![
            vec![q_int(1), q_int(0)],
            vec![q_int(0), q_int(1)],
            vec![q_int(1), q_int(1)],
        ];
        let b = vec![q_ratio(1, 2), q_ratio(1, 2), q_int(1)];
        assert!(feasible(&a, &b));
    }

    #[test]
    fn point_off_segment_is_infeasible() {
        let a = vec![
            vec![q_int(1), q_int(0)],
            vec![q_int(0), q_int(1)],
            vec![q_int(1), q_int(1)],
        ];
        let b = vec![q_int(1), q_int(1), q_int(1)];
        assert!(!feasible(&a, &b));
    }

    #[test]
    fn negative_rhs_is_normalized() {
        let a = vec![vec![q_int(-1)]];
        let b = vec![q_int(-3)];
        assert!(feasible(&a, &b));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(feasible(&[], &[]));
    }
}
