use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Hyperplane, Lu, Matrix, Vector};
use crate::lp::{self, LpOutcome};
use crate::tolerance::MAX_ITERATIONS;

/// Intersection of closed half-spaces `⟨normal_i, x⟩ ≤ offset_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPolytope {
    facets: Vec<Hyperplane>,
    bounded: bool,
    bbox: Option<(Vector, Vector)>,
}

impl HPolytope {
    /// Builds the polytope, rejecting empty ones. With `bounded` set, the
    /// bounding box is computed by coordinate-wise LP and the polytope is
    /// rejected with `Unbounded` when some coordinate is unbounded.
    pub fn new(facets: Vec<Hyperplane>, bounded: bool) -> Result<Self> {
        let Some(first) = facets.first() else {
            return Err(Error::InvalidArgument("polytope needs at least one facet".into()));
        };
        let dim = first.dim();
        for f in &facets {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.dim() });
            }
        }
        let a: Vec<Vec<f64>> = facets.iter().map(|f| f.normal().coords().to_vec()).collect();
        let b: Vec<f64> = facets.iter().map(Hyperplane::offset).collect();
        if lp::maximize(&vec![0.0; dim], &a, &b) == LpOutcome::Infeasible {
            return Err(Error::Infeasible);
        }
        let bbox = if bounded {
            let mut lo = vec![0.0; dim];
            let mut hi = vec![0.0; dim];
            for j in 0..dim {
                let mut c = vec![0.0; dim];
                c[j] = 1.0;
                hi[j] = lp_value(&c, &a, &b)?;
                c[j] = -1.0;
                lo[j] = -lp_value(&c, &a, &b)?;
            }
            Some((Vector::from_raw(lo), Vector::from_raw(hi)))
        } else {
            None
        };
        Ok(HPolytope { facets, bounded, bbox })
    }

    /// Axis-aligned box `[lo, hi]`.
    pub fn axis_box(lo: &Vector, hi: &Vector) -> Result<Self> {
        hi.check_dim(lo.dim())?;
        let n = lo.dim();
        let mut facets = Vec::with_capacity(2 * n);
        for j in 0..n {
            if !(lo[j] <= hi[j]) {
                return Err(Error::InvalidArgument("box corners out of order".into()));
            }
            facets.push(Hyperplane::new(Vector::basis(n, j), hi[j])?);
            facets.push(Hyperplane::new(-&Vector::basis(n, j), -lo[j])?);
        }
        HPolytope::new(facets, true)
    }

    /// The unit cube `[0, 1]ⁿ`.
    pub fn unit_cube(n: usize) -> Self {
        HPolytope::axis_box(&Vector::zeros(n), &Vector::ones(n)).expect("unit cube is valid")
    }

    /// The interval `[a, b]` in R¹.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        HPolytope::axis_box(&Vector::new(vec![a])?, &Vector::new(vec![b])?)
    }

    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn bounding_box(&self) -> Option<&(Vector, Vector)> {
        self.bbox.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.facets[0].dim()
    }

    /// `min_i (offset_i − ⟨normal_i, x⟩) / ‖normal_i‖`; the exact inscribed
    /// radius at `x` when nonnegative.
    pub fn facet_margin(&self, x: &Vector) -> f64 {
        self.facets.iter().map(|f| -f.signed_distance(x)).fold(f64::INFINITY, f64::min)
    }

    /// Lower bound on the distance from `x`: the largest facet violation.
    pub fn distance_lower_bound(&self, x: &Vector) -> f64 {
        (-self.facet_margin(x)).max(0.0)
    }

    pub fn translated(&self, a: &Vector) -> HPolytope {
        HPolytope {
            facets: self.facets.iter().map(|f| f.translated(a)).collect(),
            bounded: self.bounded,
            bbox: self.bbox.as_ref().map(|(lo, hi)| (lo - a, hi - a)),
        }
    }

    /// Nearest point by Dykstra's cyclic half-space projections.
    ///
    /// Dykstra's increments for a half-space are multiples of its normal, so
    /// one scalar per facet is stored. After every sweep the facets with a
    /// positive increment are taken as a candidate active set and the KKT
    /// system for that set is solved directly; a candidate passing the KKT
    /// check (nonnegative multipliers, primal feasibility) is the exact
    /// projection and ends the iteration. Otherwise the sweep stops once the
    /// summed squared increment change falls below `tol²` with the iterate
    /// feasible to `tol`.
    pub fn project(&self, x: &Vector, tol: f64) -> Result<Vector> {
        x.check_dim(self.dim())?;
        if self.facet_margin(x) >= 0.0 {
            return Ok(x.clone());
        }
        let m = self.facets.len();
        let norms_sq: Vec<f64> = self.facets.iter().map(|f| f.normal().norm_sq()).collect();
        let mut incr = vec![0.0; m];
        let mut p = x.clone();
        let mut last_active: Vec<usize> = Vec::new();
        let mut change = f64::INFINITY;

        for _ in 0..MAX_ITERATIONS {
            change = 0.0;
            for (i, f) in self.facets.iter().enumerate() {
                let a = f.normal();
                // y = p + incr_i·a; project y onto the half-space.
                let ay = a.dot(&p) + incr[i] * norms_sq[i];
                let s = ((ay - f.offset()) / norms_sq[i]).max(0.0);
                let step = incr[i] - s;
                if step != 0.0 {
                    p.axpy(step, a);
                    change += step * step * norms_sq[i];
                }
                incr[i] = s;
            }

            let active: Vec<usize> = (0..m).filter(|&i| incr[i] > 0.0).collect();
            if active != last_active {
                if let Some(exact) = self.kkt_projection(x, &active, tol) {
                    return Ok(exact);
                }
                last_active = active;
            }
            if change <= tol * tol && self.facet_margin(&p) >= -tol {
                return Ok(p);
            }
        }
        Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: change.sqrt() })
    }

    /// Projection of `x` onto the affine set where the `active` facets are
    /// tight, returned only when it satisfies the KKT conditions of the full
    /// problem.
    fn kkt_projection(&self, x: &Vector, active: &[usize], tol: f64) -> Option<Vector> {
        let k = active.len();
        if k == 0 || k > self.dim() {
            return None;
        }
        let mut gram = Matrix::zeros(k, k);
        let mut rhs = vec![0.0; k];
        for (r, &i) in active.iter().enumerate() {
            let ai = self.facets[i].normal();
            for (c, &j) in active.iter().enumerate() {
                gram[(r, c)] = ai.dot(self.facets[j].normal());
            }
            rhs[r] = ai.dot(x) - self.facets[i].offset();
        }
        let mu = Lu::factor(&gram).ok()?.solve_slice(&rhs);
        if mu.iter().any(|&u| u < 0.0) {
            return None;
        }
        let mut p = x.clone();
        for (&i, &u) in active.iter().zip(&mu) {
            p.axpy(-u, self.facets[i].normal());
        }
        let slack = tol * 1e-3;
        self.facets
            .iter()
            .all(|f| f.signed_distance(&p) <= slack)
            .then_some(p)
    }

    /// Chebyshev ball: maximizes `r` subject to `⟨a_i, c⟩ + r‖a_i‖ ≤ b_i`.
    pub fn chebyshev(&self) -> Result<(Vector, f64)> {
        if !self.bounded {
            return Err(Error::Unbounded);
        }
        let n = self.dim();
        let a: Vec<Vec<f64>> = self
            .facets
            .iter()
            .map(|f| {
                let mut row = f.normal().coords().to_vec();
                row.push(f.normal().norm());
                row
            })
            .collect();
        let b: Vec<f64> = self.facets.iter().map(Hyperplane::offset).collect();
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        match lp::maximize(&c, &a, &b) {
            LpOutcome::Optimal { mut x, .. } => {
                x.pop();
                let center = Vector::new(x)?;
                // Report the radius exactly certified by the facet margins.
                let radius = self.facet_margin(&center);
                Ok((center, radius))
            }
            LpOutcome::Unbounded => Err(Error::Unbounded),
            LpOutcome::Infeasible => Err(Error::Infeasible),
        }
    }
}

fn lp_value(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<f64> {
    match lp::maximize(c, a, b) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded => Err(Error::Unbounded),
        LpOutcome::Infeasible => Err(Error::Infeasible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn square_bbox_and_margins() {
        let sq = HPolytope::unit_cube(2);
        let (lo, hi) = sq.bounding_box().unwrap();
        assert!(lo.dist(&v(&[0.0, 0.0])) < 1e-12 && hi.dist(&v(&[1.0, 1.0])) < 1e-12);
        assert!((sq.facet_margin(&v(&[0.5, 0.5])) - 0.5).abs() < 1e-15);
        assert!((sq.facet_margin(&v(&[0.2, 0.9])) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_empty_and_unbounded() {
        let n = 1;
        let facets = vec![
            Hyperplane::new(Vector::basis(n, 0), 0.0).unwrap(),
            Hyperplane::new(-&Vector::basis(n, 0), -1.0).unwrap(),
        ];
        assert_eq!(HPolytope::new(facets, false), Err(Error::Infeasible));
        let half = vec![Hyperplane::new(v(&[1.0, 0.0]), 1.0).unwrap()];
        assert_eq!(HPolytope::new(half.clone(), true), Err(Error::Unbounded));
        let h = HPolytope::new(half, false).unwrap();
        assert_eq!(h.chebyshev(), Err(Error::Unbounded));
    }

    #[test]
    fn face_and_corner_projection() {
        let sq = HPolytope::unit_cube(2);
        let p = sq.project(&v(&[2.0, 0.5]), 1e-9).unwrap();
        assert!(p.dist(&v(&[1.0, 0.5])) < 1e-12);
        let p = sq.project(&v(&[2.0, 2.0]), 1e-9).unwrap();
        assert!(p.dist(&v(&[1.0, 1.0])) < 1e-12);
        let p = sq.project(&v(&[0.3, 0.3]), 1e-9).unwrap();
        assert_eq!(p, v(&[0.3, 0.3]));
    }

    #[test]
    fn acute_wedge_projection() {
        // Thin wedge y ≥ 0, y ≤ 0.1·x, x ≤ 1: the nearest point to (−1, 1) is
        // the apex (0, 0).
        let facets = vec![
            Hyperplane::new(v(&[0.0, -1.0]), 0.0).unwrap(),
            Hyperplane::new(v(&[-0.1, 1.0]), 0.0).unwrap(),
            Hyperplane::new(v(&[1.0, 0.0]), 1.0).unwrap(),
        ];
        let w = HPolytope::new(facets, true).unwrap();
        let p = w.project(&v(&[-1.0, 1.0]), 1e-9).unwrap();
        assert!(p.norm() < 1e-9, "{p:?}");
    }

    #[test]
    fn triangle_chebyshev() {
        let facets = vec![
            Hyperplane::new(v(&[-1.0, 0.0]), 0.0).unwrap(),
            Hyperplane::new(v(&[0.0, -1.0]), 0.0).unwrap(),
            Hyperplane::new(v(&[1.0, 1.0]), 1.0).unwrap(),
        ];
        let t = HPolytope::new(facets, true).unwrap();
        let (c, r) = t.chebyshev().unwrap();
        let q = 1.0 / (2.0 + 2f64.sqrt());
        assert!((r - q).abs() < 1e-9);
        assert!(c.dist(&v(&[q, q])) < 1e-9);
    }

    #[test]
    fn translation_moves_offsets() {
        let sq = HPolytope::unit_cube(2).translated(&v(&[0.5, 0.5]));
        let (lo, hi) = sq.bounding_box().unwrap();
        assert!(lo.dist(&v(&[-0.5, -0.5])) < 1e-12 && hi.dist(&v(&[0.5, 0.5])) < 1e-12);
        assert!((sq.facet_margin(&v(&[0.0, 0.0])) - 0.5).abs() < 1e-15);
    }
}
