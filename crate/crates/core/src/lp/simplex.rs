//! Dense phase-1 simplex for `{x >= 0 : A x = b}` with Bland's pivoting rule.

use crate::{Error, Result};

/// Pivot threshold in the (pre-scaled) tableau.
const PIVOT_EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum Phase1 {
    /// A basic feasible point; `residual` is the final sum of artificials.
    Feasible { x: Vec<f64>, residual: f64 },
    /// Farkas certificate: `A^T y <= 0` (to pivot tolerance) and `b^T y = residual > 0`.
    Infeasible { y: Vec<f64>, residual: f64 },
}

/// Decides feasibility of `A x = b, x >= 0`, `A` given column by column.
///
/// `tol` bounds the sum of artificial variables accepted as feasible.
pub fn phase_one(columns: &[Vec<f64>], rhs: &[f64], tol: f64) -> Result<Phase1> {
    let m = rhs.len();
    let n = columns.len();
    if m == 0 {
        return Ok(Phase1::Feasible { x: vec![0.0; n], residual: 0.0 });
    }
    if columns.iter().any(|c| c.len() != m) {
        return Err(Error::invalid("constraint columns have inconsistent length"));
    }
    let width = n + m + 1;
    let rhs_col = n + m;
    let mut t = vec![0.0; m * width];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        sign[i] = if rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for (j, col) in columns.iter().enumerate() {
            t[i * width + j] = sign[i] * col[i];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + rhs_col] = sign[i] * rhs[i];
    }
    // reduced costs of min sum(artificials); artificials start basic
    let mut cost = vec![0.0; n + m];
    for j in 0..n {
        cost[j] = -(0..m).map(|i| t[i * width + j]).sum::<f64>();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let max_iter = 50 * (n + m) + 1000;
    let mut iter = 0;
    loop {
        let Some(enter) = (0..n).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        iter += 1;
        if iter > max_iter {
            return Err(Error::Numerical("simplex iteration limit reached".into()));
        }
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let a = t[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = t[i * width + rhs_col] / a;
                let better = match leave {
                    None => true,
                    Some(r) => ratio < best || (ratio == best && basis[i] < basis[r]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // phase 1 is bounded below, so a positive pivot always exists
        let Some(row) = leave else {
            return Err(Error::Numerical("unbounded phase-1 ray".into()));
        };
        pivot(&mut t, width, m, row, enter);
        let factor = cost[enter];
        if factor != 0.0 {
            for j in 0..n + m {
                cost[j] -= factor * t[row * width + j];
            }
        }
        cost[enter] = 0.0;
        basis[row] = enter;
    }

    let residual: f64 = (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| t[i * width + rhs_col])
        .sum();
    if residual <= tol {
        let mut x = vec![0.0; n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = t[i * width + rhs_col].max(0.0);
            }
        }
        Ok(Phase1::Feasible { x, residual })
    } else {
        // artificial i has unit cost, so its reduced cost is 1 - y_i
        let y = (0..m).map(|i| sign[i] * (1.0 - cost[n + i])).collect();
        Ok(Phase1::Infeasible { y, residual })
    }
}

fn pivot(t: &mut [f64], width: usize, m: usize, row: usize, col: usize) {
    let p = t[row * width + col];
    for j in 0..width {
        t[row * width + j] /= p;
    }
    t[row * width + col] = 1.0;
    for i in 0..m {
        if i == row {
            continue;
        }
        let f = t[i * width + col];
        if f == 0.0 {
            continue;
        }
        for j in 0..width {
            t[i * width + j] -= f * t[row * width + j];
        }
        t[i * width + col] = 0.0;
    }
}
