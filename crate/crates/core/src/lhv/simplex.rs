//! Dense phase-one simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! One artificial variable per row; the sum of artificials is minimized with
//! Bland's smallest-index rule for both entering and leaving choices, which
//! rules out cycling.

/// Pivot and reduced-cost threshold.
const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOne {
    /// Values of the structural variables at the final basis.
    pub x: Vec<f64>,
    /// Final sum of artificial variables (zero iff feasible, up to rounding).
    pub infeasibility: f64,
    pub pivots: usize,
}

/// Solves phase one for `a` (`m` rows of length `n`) and right-hand side `b`.
pub fn phase_one(a: &[Vec<f64>], b: &[f64]) -> PhaseOne {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n));

    // Tableau columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let rhs = n + m;
    let mut t = vec![vec![0.0; width]; m];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][rhs] = sign * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective Σ artificials.
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            cost[j] -= row[j];
        }
        cost[rhs] -= row[rhs];
    }

    let mut pivots = 0;
    let max_pivots = 50 * (n + m).max(1) * (n + m).max(1);
    while pivots < max_pivots {
        let Some(enter) = (0..n + m).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = t[i][enter];
            if coef > PIVOT_EPS {
                let ratio = t[i][rhs] / coef;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - PIVOT_EPS || (ratio <= best + PIVOT_EPS && basis[i] < basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let Some((row, _)) = leave else { break };
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
        pivots += 1;
    }

    let mut x = vec![0.0; n];
    let mut infeasibility = 0.0;
    for (i, &var) in basis.iter().enumerate() {
        let value = t[i][rhs].max(0.0);
        if var < n {
            x[var] = value;
        } else {
            infeasibility += value;
        }
    }
    PhaseOne { x, infeasibility, pivots }
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != 0.0 {
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            r[col] = 0.0;
        }
    }
    let f = cost[col];
    if f != 0.0 {
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        cost[col] = 0.0;
    }
}
