//! Dense two-phase simplex for `maximize cᵀx subject to A·x ≤ b`, `x` free.
//!
//! Only used for small problems (Chebyshev balls, bounding boxes of
//! H-polytopes), so the tableau is dense and pivoting follows Bland's rule.

use crate::linalg::dot;

const EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 50_000;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [f64]) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a -= f * b;
                    }
                }
            }
        }
        let f = obj[c];
        if f != 0.0 {
            for (a, b) in obj.iter_mut().zip(&pivot_row) {
                *a -= f * b;
            }
        }
        self.basis[r] = c;
    }

    /// Runs primal simplex on reduced-cost row `obj` (maximization; entering
    /// columns have negative reduced cost). Returns false when unbounded.
    fn optimize(&mut self, obj: &mut [f64], allowed: usize) -> bool {
        for _ in 0..MAX_PIVOTS {
            let Some(c) = (0..allowed).find(|&j| obj[j] < -EPS) else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > EPS {
                    let ratio = self.rhs(i) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - EPS
                                || (ratio <= br + EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c, obj),
            }
        }
        // Bland's rule cannot cycle; hitting the cap means numerical trouble.
        true
    }
}

/// Maximizes `c·x` over `{x : a_i·x ≤ b_i}` with free variables.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    let n_art = b.iter().filter(|&&bi| bi < 0.0).count();
    let n_struct = 2 * n + m;
    let ncols = n_struct + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = n_struct;
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; ncols + 1];
        for j in 0..n {
            row[j] = sign * a[i][j];
            row[n + j] = -sign * a[i][j];
        }
        row[2 * n + i] = sign;
        row[ncols] = sign * b[i];
        if sign < 0.0 {
            row[art] = 1.0;
            basis.push(art);
            art += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    if n_art > 0 {
        // Phase 1: maximize −Σ artificials.
        let mut obj = vec![0.0; ncols + 1];
        for j in n_struct..ncols {
            obj[j] = 1.0;
        }
        for i in 0..m {
            if t.basis[i] >= n_struct {
                let row = t.rows[i].clone();
                for (o, r) in obj.iter_mut().zip(&row) {
                    *o -= r;
                }
            }
        }
        t.optimize(&mut obj, ncols);
        let infeasibility: f64 = (0..m).filter(|&i| t.basis[i] >= n_struct).map(|i| t.rhs(i)).sum();
        let scale = 1.0 + b.iter().fold(0.0_f64, |s, x| s.max(x.abs()));
        if infeasibility > 1e-9 * scale {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis where possible.
        for i in 0..m {
            if t.basis[i] >= n_struct {
                if let Some(c) = (0..n_struct).find(|&j| t.rows[i][j].abs() > 1e-9) {
                    let mut dummy = vec![0.0; ncols + 1];
                    t.pivot(i, c, &mut dummy);
                }
            }
        }
    }

    // Phase 2.
    let mut obj = vec![0.0; ncols + 1];
    for j in 0..n {
        obj[j] = -c[j];
        obj[n + j] = c[j];
    }
    for i in 0..m {
        let bj = t.basis[i];
        let cb = -obj[bj];
        if cb != 0.0 {
            let row = t.rows[i].clone();
            for (o, r) in obj.iter_mut().zip(&row) {
                *o += cb * r;
            }
        }
    }
    if !t.optimize(&mut obj, n_struct) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        let bj = t.basis[i];
        if bj < n {
            x[bj] += t.rhs(i);
        } else if bj < 2 * n {
            x[bj - n] -= t.rhs(i);
        }
    }
    let value = dot(c, &x);
    LpOutcome::Optimal { x, value }
}
