//! Dense primal simplex for `max cᵀx` subject to `Ax ≤ b`, `x ≥ 0`, `b ≥ 0`.
//!
//! The slack basis is feasible whenever `b ≥ 0`, so no phase one is needed.
//! Bland's rule guards against cycling on the degenerate problems produced by
//! indicator right-hand sides.

use crate::error::{Error, Result};

/// Pivot and feasibility tolerance.
pub const PIVOT_TOL: f64 = 1e-9;
/// Reduced costs above `-OPTIMALITY_TOL` count as non-improving.
pub const OPTIMALITY_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: f64,
        /// Optimal structural variables.
        x: Vec<f64>,
        /// Shadow prices of the `m` rows, i.e. an optimal dual solution.
        duals: Vec<f64>,
    },
    Unbounded,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let m = a.len();
    let nv = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != nv) {
        return Err(Error::Internal("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|&bi| bi < 0.0) {
        return Err(Error::Internal(
            "LP right-hand side must be non-negative".into(),
        ));
    }
    let width = nv + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row = vec![0.0; width];
            row[..nv].copy_from_slice(&a[i]);
            row[nv + i] = 1.0;
            row[rhs] = b[i];
            row
        })
        .collect();
    let mut obj = vec![0.0; width];
    for j in 0..nv {
        obj[j] = -c[j];
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..width - 1).find(|&j| obj[j] < -OPTIMALITY_TOL) else {
            let mut x = vec![0.0; nv];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < nv {
                    x[bv] = t[i][rhs];
                }
            }
            return Ok(LpOutcome::Optimal {
                value: obj[rhs],
                x,
                duals: obj[nv..nv + m].to_vec(),
            });
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = t[i][enter];
            if coef > PIVOT_TOL {
                let ratio = t[i][rhs] / coef;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        pivot(&mut t, &mut obj, row, enter);
        basis[row] = enter;
    }
    Err(Error::Internal("simplex pivot limit reached".into()))
}

fn pivot(t: &mut [Vec<f64>], obj: &mut [f64], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row {
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    let f = obj[col];
    if f != 0.0 {
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
    }
}
