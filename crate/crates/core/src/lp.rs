//! Dense two-phase simplex for small linear programs in equality form.
//!
//! Only used to certify optimal strategies on oracle-scale graphs, so it
//! favours plainness over speed: full tableau, Dantzig pricing with a switch
//! to Bland's rule when pivots stall.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;
const STALL_LIMIT: usize = 50;

/// Solves `min c·x` subject to `a x = b`, `x ≥ 0`. Rows with negative `b`
/// are negated on entry. Returns the optimal value and a solution.
pub fn minimize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<(f64, Vec<f64>)> {
    let m = a.len();
    let nvars = c.len();
    let width = nvars + m + 1;
    let rhs = width - 1;

    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..nvars {
            t[i][j] = sign * a[i][j];
        }
        t[i][nvars + i] = 1.0;
        t[i][rhs] = sign * b[i];
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    // Phase 1: minimise the sum of artificials.
    let obj = m;
    {
        let (rows, rest) = t.split_at_mut(obj);
        let o = &mut rest[0];
        o.fill(0.0);
        for row in rows.iter() {
            for (oj, rj) in o[..nvars].iter_mut().zip(row) {
                *oj -= rj;
            }
            o[rhs] -= row[rhs];
        }
    }
    run(&mut t, &mut basis, nvars + m)?;
    if -t[obj][rhs] > 1e-7 {
        return Err(Error::LinearProgram);
    }

    // Drive any remaining artificials out of the basis.
    for i in 0..m {
        if basis[i] >= nvars {
            if let Some(j) = (0..nvars).find(|&j| t[i][j].abs() > EPS) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }

    // Phase 2 objective in reduced form.
    {
        let (rows, rest) = t.split_at_mut(obj);
        let o = &mut rest[0];
        o.fill(0.0);
        o[..nvars].copy_from_slice(&c[..nvars]);
        for (row, &bj) in rows.iter().zip(&basis) {
            if bj < nvars && c[bj] != 0.0 {
                let f = c[bj];
                for (oj, rj) in o.iter_mut().zip(row) {
                    *oj -= f * rj;
                }
            }
        }
    }
    run(&mut t, &mut basis, nvars)?;

    let mut x = vec![0.0; nvars];
    for i in 0..m {
        if basis[i] < nvars {
            x[basis[i]] = t[i][rhs];
        }
    }
    Ok((-t[obj][rhs], x))
}

/// Pivots until no column below `limit` has negative reduced cost.
fn run(t: &mut [Vec<f64>], basis: &mut [usize], limit: usize) -> Result<()> {
    let m = basis.len();
    let rhs = t[0].len() - 1;
    let mut stalled = 0;
    for _ in 0..100_000 {
        let obj = &t[m];
        let entering = if stalled < STALL_LIMIT {
            let mut best = None;
            let mut most = -EPS;
            for (j, &r) in obj.iter().enumerate().take(limit) {
                if r < most {
                    most = r;
                    best = Some(j);
                }
            }
            best
        } else {
            (0..limit).find(|&j| obj[j] < -EPS)
        };
        let Some(col) = entering else {
            return Ok(());
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i][col];
            if a > EPS {
                let ratio = t[i][rhs] / a;
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - EPS || (ratio <= lr + EPS && basis[i] < basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, ratio)) = leave else {
            return Err(Error::LinearProgram);
        };
        stalled = if ratio.abs() <= EPS { stalled + 1 } else { 0 };
        pivot(t, basis, row, col);
    }
    Err(Error::LinearProgram)
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
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
        }
    }
    basis[row] = col;
}
