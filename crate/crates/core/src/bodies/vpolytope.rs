use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, Hyperplane, Lu, Matrix, Vector};
use crate::tolerance::MAX_ITERATIONS;

/// Upper bound on the number of generator subsets examined when enumerating
/// facets.
const FACET_CANDIDATE_LIMIT: u128 = 2_000_000;

/// Convex hull of finitely many generators.
#[derive(Clone, Debug)]
pub struct VPolytope {
    generators: Vec<Vector>,
    facets: OnceLock<Result<FacetCache>>,
}

#[derive(Clone, Debug)]
struct FacetCache {
    /// Supporting hyperplanes with unit normals; empty when the hull is flat.
    facets: Vec<Hyperplane>,
    full_dimensional: bool,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Serialize for VPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let generators = Vec::<Vector>::deserialize(d)?;
        VPolytope::new(generators).map_err(serde::de::Error::custom)
    }
}

impl VPolytope {
    pub fn new(generators: Vec<Vector>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument("polytope needs at least one generator".into()));
        };
        let dim = first.dim();
        for g in &generators {
            g.check_dim(dim)?;
        }
        Ok(VPolytope { generators, facets: OnceLock::new() })
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn translated(&self, a: &Vector) -> VPolytope {
        VPolytope {
            generators: self.generators.iter().map(|g| g - a).collect(),
            facets: OnceLock::new(),
        }
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        let n = self.dim();
        let mut lo = self.generators[0].clone();
        let mut hi = self.generators[0].clone();
        for g in &self.generators[1..] {
            for j in 0..n {
                lo[j] = lo[j].min(g[j]);
                hi[j] = hi[j].max(g[j]);
            }
        }
        (lo, hi)
    }

    /// Nearest point of the hull, as generator weights and the point itself.
    pub fn project(&self, x: &Vector, tol: f64) -> Result<Vector> {
        x.check_dim(self.dim())?;
        let shifted: Vec<Vector> = self.generators.iter().map(|g| g - x).collect();
        let corral = min_norm_point(&shifted, tol)?;
        let mut p = Vector::zeros(self.dim());
        for &(i, w) in &corral {
            p.axpy(w, &self.generators[i]);
        }
        Ok(p)
    }

    /// True when the generators affinely span the whole space.
    pub fn is_full_dimensional(&self) -> Result<bool> {
        Ok(self.facet_cache()?.full_dimensional)
    }

    /// Supporting hyperplanes (unit normals) of the hull; empty when the hull
    /// has no interior.
    pub fn facets(&self) -> Result<&[Hyperplane]> {
        Ok(&self.facet_cache()?.facets)
    }

    fn facet_cache(&self) -> Result<&FacetCache> {
        self.facets
            .get_or_init(|| enumerate_facets(&self.generators))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `min_i (offset_i − ⟨normal_i, x⟩)` over the facets, or `None` when the
    /// hull is flat.
    pub fn facet_margin(&self, x: &Vector) -> Result<Option<f64>> {
        let cache = self.facet_cache()?;
        if !cache.full_dimensional {
            return Ok(None);
        }
        Ok(Some(
            cache.facets.iter().map(|f| -f.signed_distance(x)).fold(f64::INFINITY, f64::min),
        ))
    }

    pub fn distance_lower_bound(&self, x: &Vector) -> f64 {
        match self.facet_margin(x) {
            Ok(Some(m)) => (-m).max(0.0),
            _ => {
                let (lo, hi) = self.bounding_box();
                (0..x.dim())
                    .map(|j| (lo[j] - x[j]).max(x[j] - hi[j]).max(0.0).powi(2))
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }
}

/// Wolfe's minimum-norm-point algorithm over the hull of `points`.
///
/// Returns the corral as `(index, weight)` pairs. Stops when `‖p‖ ≤ tol` or
/// the duality gap `‖p‖² − min_i ⟨p, q_i⟩` is at most `tol·‖p‖`, which bounds
/// the distance error by `tol`.
pub(crate) fn min_norm_point(points: &[Vector], tol: f64) -> Result<Vec<(usize, f64)>> {
    const WEIGHT_EPS: f64 = 1e-14;
    let start = (0..points.len())
        .min_by(|&a, &b| points[a].norm_sq().total_cmp(&points[b].norm_sq()))
        .expect("nonempty generator list");
    let mut corral: Vec<usize> = vec![start];
    let mut weights: Vec<f64> = vec![1.0];
    let mut p = points[start].clone();

    for _ in 0..MAX_ITERATIONS {
        let pn = p.norm();
        if pn <= tol {
            break;
        }
        let (j, best) = points
            .iter()
            .enumerate()
            .map(|(i, q)| (i, p.dot(q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if p.norm_sq() - best <= tol * pn || corral.contains(&j) {
            break;
        }
        corral.push(j);
        weights.push(0.0);

        loop {
            // An affinely dependent corral keeps the current (valid) weights;
            // the stall check below then ends the search.
            let Ok(alpha) = affine_minimizer(points, &corral) else {
                break;
            };
            if alpha.iter().all(|&a| a > WEIGHT_EPS) {
                weights = alpha;
                break;
            }
            let mut theta = 1.0_f64;
            for (w, a) in weights.iter().zip(&alpha) {
                if *a <= WEIGHT_EPS {
                    theta = theta.min(w / (w - a));
                }
            }
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let mut k = 0;
            while k < corral.len() {
                if weights[k] <= WEIGHT_EPS {
                    corral.swap_remove(k);
                    weights.swap_remove(k);
                } else {
                    k += 1;
                }
            }
            let s: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= s);
        }

        let mut next = Vector::zeros(p.dim());
        for (&i, &w) in corral.iter().zip(&weights) {
            next.axpy(w, &points[i]);
        }
        let stalled = next.norm_sq() >= p.norm_sq() && corral.len() > 1;
        p = next;
        if stalled {
            break;
        }
    }
    Ok(corral.into_iter().zip(weights).collect())
}

/// Affine weights of the point of least norm in the affine hull of the corral.
fn affine_minimizer(points: &[Vector], corral: &[usize]) -> Result<Vec<f64>> {
    let k = corral.len();
    if k == 1 {
        return Ok(vec![1.0]);
    }
    let base = &points[corral[0]];
    let diffs: Vec<Vector> = corral[1..].iter().map(|&i| &points[i] - base).collect();
    let mut gram = Matrix::zeros(k - 1, k - 1);
    let mut rhs = vec![0.0; k - 1];
    for r in 0..k - 1 {
        for c in 0..k - 1 {
            gram[(r, c)] = diffs[r].dot(&diffs[c]);
        }
        rhs[r] = -diffs[r].dot(base);
    }
    let beta = Lu::factor(&gram)?.solve_slice(&rhs);
    let mut alpha = Vec::with_capacity(k);
    alpha.push(1.0 - beta.iter().sum::<f64>());
    alpha.extend(beta);
    Ok(alpha)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// Affine rank of a point set (rank of differences from the first point).
pub(crate) fn affine_rank(points: &[Vector], rel_tol: f64) -> usize {
    let base = &points[0];
    let mut rows: Vec<Vec<f64>> = points[1..].iter().map(|p| (p - base).into_inner()).collect();
    let scale = rows.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let n = base.dim();
    let mut rank = 0;
    for col in 0..n {
        let Some((piv, _)) = rows
            .iter()
            .enumerate()
            .skip(rank)
            .map(|(i, r)| (i, r[col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .filter(|(_, v)| *v > rel_tol * scale)
        else {
            continue;
        };
        rows.swap(rank, piv);
        let pr = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            let f = r[col] / pr[col];
            for (a, b) in r.iter_mut().zip(&pr) {
                *a -= f * b;
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force facet enumeration: every affinely independent n-subset of
/// generators spans a candidate hyperplane, kept when all generators lie on
/// one side of it.
fn enumerate_facets(generators: &[Vector]) -> Result<FacetCache> {
    let n = generators[0].dim();
    let m = generators.len();
    if affine_rank(generators, 1e-10) < n {
        return Ok(FacetCache { facets: Vec::new(), full_dimensional: false });
    }
    if binomial(m, n) > FACET_CANDIDATE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "facet enumeration over {m} generators in dimension {n} is too large"
        )));
    }
    let scale = generators.iter().flat_map(|g| g.coords()).fold(1.0_f64, |s, x| s.max(x.abs()));
    let side_tol = 1e-9 * scale;
    let mut facets: Vec<Hyperplane> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        if let Some(h) = hyperplane_through(generators, &subset) {
            let mut below = false;
            let mut above = false;
            for g in generators {
                let s = dot(h.normal().coords(), g.coords()) - h.offset();
                below |= s < -side_tol;
                above |= s > side_tol;
            }
            let oriented = match (below, above) {
                (true, false) => Some(h),
                (false, true) => Some(Hyperplane::new(-h.normal(), -h.offset())?),
                _ => None,
            };
            if let Some(h) = oriented {
                let dup = facets.iter().any(|f| {
                    f.normal().dist(h.normal()) < 1e-9 && (f.offset() - h.offset()).abs() < side_tol
                });
                if !dup {
                    facets.push(h);
                }
            }
        }
        if !next_combination(&mut subset, m) {
            break;
        }
    }
    Ok(FacetCache { facets, full_dimensional: true })
}

/// Unit-normal hyperplane through the generators in `subset` (n points in
/// Rⁿ), via cofactors of the difference matrix.
fn hyperplane_through(generators: &[Vector], subset: &[usize]) -> Option<Hyperplane> {
    let n = generators[0].dim();
    let base = &generators[subset[0]];
    if n == 1 {
        return Hyperplane::new(Vector::ones(1), base[0]).ok();
    }
    let diffs: Vec<Vector> = subset[1..].iter().map(|&i| &generators[i] - base).collect();
    let edge_scale = diffs.iter().map(Vector::norm).fold(0.0_f64, f64::max);
    let mut normal = vec![0.0; n];
    for (k, c) in normal.iter_mut().enumerate() {
        let mut minor = Matrix::zeros(n - 1, n - 1);
        for (r, d) in diffs.iter().enumerate() {
            let mut cc = 0;
            for j in 0..n {
                if j != k {
                    minor[(r, cc)] = d[j];
                    cc += 1;
                }
            }
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *c = sign * determinant(&minor);
    }
    let normal = Vector::from_raw(normal);
    let len = normal.norm();
    if !(len > 1e-10 * edge_scale.powi(n as i32 - 1)) {
        return None;
    }
    let unit = normal.scale(1.0 / len);
    let offset = unit.dot(base);
    Hyperplane::new(unit, offset).ok()
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
