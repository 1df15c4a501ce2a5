//! Regular simplices, barycentric interiority and vertex perturbation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{sample, HPolytope};
use crate::error::{Error, Result};
use crate::linalg::{barycentric, BarycentricCoords, Hyperplane, Lu, Matrix, Vector};

/// Largest dimension served by [`regular_simplex`].
pub const MAX_DIM: usize = 16;

/// Relative determinant threshold used by [`is_simplex`].
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// An n-simplex in Rⁿ given by its n+1 affinely independent vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<Vector>,
}

fn shape_ok(points: &[Vector]) -> bool {
    let n = points.len().saturating_sub(1);
    n >= 1 && points.iter().all(|p| p.dim() == n)
}

/// True iff `points` are n+1 points of Rⁿ whose edge determinant
/// `|det[v₂ − v₁, …, v_{n+1} − v₁]|` exceeds `1e−10·(max edge)ⁿ`.
pub fn is_simplex(points: &[Vector]) -> bool {
    if !shape_ok(points) {
        return false;
    }
    let n = points.len() - 1;
    let edges: Vec<Vector> = points[1..].iter().map(|p| p - &points[0]).collect();
    let mut max_edge: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            max_edge = max_edge.max(p.dist(q));
        }
    }
    if max_edge == 0.0 {
        return false;
    }
    let det = crate::linalg::determinant(&Matrix::from_columns(&edges));
    det.abs() > DEGENERACY_THRESHOLD * max_edge.powi(n as i32)
}

impl Simplex {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        if !shape_ok(&vertices) {
            return Err(Error::Shape(format!(
                "a simplex in R^n needs n + 1 points of dimension n, got {} points",
                vertices.len()
            )));
        }
        if !is_simplex(&vertices) {
            return Err(Error::PreconditionFailed("vertices are affinely dependent".into()));
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn barycentre(&self) -> Vector {
        barycentre(self)
    }

    pub fn translated(&self, a: &Vector) -> Result<Simplex> {
        a.check_dim(self.dim())?;
        Ok(Simplex { vertices: self.vertices.iter().map(|v| v + a).collect() })
    }

    /// `(n+1)×(n+1)` matrix with the vertices as columns over a row of ones.
    fn lifted(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for (j, v) in self.vertices.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v[i];
            }
            m[(n, j)] = 1.0;
        }
        m
    }

    pub fn barycentric(&self, p: &Vector) -> Result<BarycentricCoords> {
        barycentric(&self.vertices, p)
    }

    pub fn to_hpolytope(&self) -> Result<HPolytope> {
        HPolytope::new(facet_hyperplanes(self)?, true)
    }
}

/// The regular simplex inscribed in the closed unit ball of Rⁿ with
/// barycentre at the origin:
/// `vᵢ = √(1 + 1/n)·eᵢ − n^{−3/2}(√(n+1) + 1)·u` for `1 ≤ i ≤ n` and
/// `v_{n+1} = u/√n`, where `u = (1, …, 1)`.
pub fn regular_simplex(n: usize) -> Result<Simplex> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::InvalidArgument(format!("dimension must lie in 1..={MAX_DIM}, got {n}")));
    }
    let nf = n as f64;
    let a = (1.0 + 1.0 / nf).sqrt();
    let b = nf.powf(-1.5) * ((nf + 1.0).sqrt() + 1.0);
    let mut vertices: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v = Vector::ones(n).scale(-b);
            v[i] += a;
            v
        })
        .collect();
    vertices.push(Vector::ones(n).scale(1.0 / nf.sqrt()));
    let s = Simplex { vertices };
    let side = (2.0 * (nf + 1.0) / nf).sqrt();
    debug_assert!(s.vertices.iter().all(|v| (v.norm() - 1.0).abs() <= 1e-9));
    debug_assert!(s.barycentre().norm() <= 1e-9);
    debug_assert!((s.vertices[0].dist(&s.vertices[n]) - side).abs() <= 1e-9);
    Ok(s)
}

/// `a + rΣⁿ`: the regular simplex with barycentre `a` inscribed in `B̄(a, r)`.
pub fn scaled_simplex(a: &Vector, r: f64, n: usize) -> Result<Simplex> {
    a.check_dim(n)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {r}")));
    }
    let base = regular_simplex(n)?;
    Ok(Simplex { vertices: base.vertices.iter().map(|v| &v.scale(r) + a).collect() })
}

pub fn barycentre(s: &Simplex) -> Vector {
    let n = s.dim();
    let mut sum = Vector::zeros(n);
    for v in &s.vertices {
        sum += v;
    }
    sum.scale(1.0 / (n as f64 + 1.0))
}

/// Facet `i` passes through every vertex except `vᵢ`, which lies on the
/// `≤` side. Row `i` of the inverse lifted vertex matrix is `(gᵢ, cᵢ)` with
/// barycentric weight `wᵢ(p) = gᵢ·p + cᵢ`, so the facet is `−gᵢ·p ≤ cᵢ`.
pub fn facet_hyperplanes(s: &Simplex) -> Result<Vec<Hyperplane>> {
    let n = s.dim();
    let inv = Lu::factor(&s.lifted())?.inverse();
    (0..=n)
        .map(|i| {
            let row = inv.row(i);
            let normal = Vector::new(row[..n].iter().map(|g| -g).collect())?;
            Hyperplane::new(normal, row[n])
        })
        .collect()
}

/// Smallest signed distance from `c` to the facet hyperplanes, positive
/// inside. At the barycentre of a regular simplex this is the inradius.
pub fn inradius_at(s: &Simplex, c: &Vector) -> Result<f64> {
    c.check_dim(s.dim())?;
    Ok(facet_hyperplanes(s)?
        .iter()
        .map(|h| -h.signed_distance(c))
        .fold(f64::INFINITY, f64::min))
}

/// Outcome of [`perturbation_tolerance`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    /// Vertex displacement below which `c` stays strictly interior.
    pub delta: f64,
    /// Lower bound on the barycentric weights of `c` valid for every
    /// perturbation smaller than `delta`.
    pub weight_bound: f64,
    /// Smallest weight of `c` seen in the adversarial trials.
    pub empirical_min_weight: f64,
    /// Number of adversarial trials survived.
    pub trials: usize,
    pub inradius: f64,
}

/// Tally of a batch of perturbation trials.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub degenerate: usize,
    pub not_interior: usize,
    pub min_weight: f64,
}

impl TrialSummary {
    pub fn failures(&self) -> usize {
        self.degenerate + self.not_interior
    }

    fn record(&mut self, points: &[Vector], c: &Vector) {
        self.trials += 1;
        if !is_simplex(points) {
            self.degenerate += 1;
            return;
        }
        match barycentric(points, c) {
            Ok(w) => {
                let m = w.min_weight();
                self.min_weight = self.min_weight.min(m);
                if !(m > 0.0) {
                    self.not_interior += 1;
                }
            }
            Err(_) => self.degenerate += 1,
        }
    }
}

/// Moves every vertex by exactly `magnitude` in a uniformly random
/// direction, `trials` times, and records whether the result is still a
/// simplex with `c` strictly inside.
pub fn random_perturbation_trials(
    s: &Simplex,
    c: &Vector,
    magnitude: f64,
    trials: usize,
    rng: &mut impl Rng,
) -> TrialSummary {
    let mut summary = TrialSummary { min_weight: f64::INFINITY, ..Default::default() };
    for _ in 0..trials {
        let moved: Vec<Vector> =
            s.vertices.iter().map(|v| sample::on_sphere(v, magnitude, rng)).collect();
        summary.record(&moved, c);
    }
    summary
}

/// Perturbations aimed at one barycentric weight: every vertex moves along
/// the gradient direction that decreases `wᵢ(c)` fastest, with a small
/// random tilt.
fn guided_perturbation_trials(
    s: &Simplex,
    c: &Vector,
    magnitude: f64,
    trials: usize,
    inv: &Matrix,
    rng: &mut impl Rng,
) -> TrialSummary {
    let n = s.dim();
    let mut summary = TrialSummary { min_weight: f64::INFINITY, ..Default::default() };
    for t in 0..trials {
        let target = t % (n + 1);
        let g = Vector::from_raw(inv.row(target)[..n].to_vec());
        let tilt = if t < n + 1 { 0.0 } else { rng.gen_range(0.0..0.2) };
        let moved: Vec<Vector> = s
            .vertices
            .iter()
            .map(|v| {
                let mut dir = &g + &sample::unit_direction(n, rng).scale(tilt * g.norm());
                dir = dir.normalized().unwrap_or_else(|| Vector::basis(n, 0));
                v + &dir.scale(magnitude)
            })
            .collect();
        summary.record(&moved, c);
    }
    summary
}

/// A displacement `δ > 0` such that moving each vertex by less than `δ`
/// keeps the vertices a simplex with `c` strictly inside.
///
/// With `M` the lifted vertex matrix and `w = M⁻¹(c, 1)`, a perturbation
/// `E` of the vertex columns satisfies `‖M⁻¹E‖ ≤ β = ‖M⁻¹[:, :n]‖_F·δ·√(n+1)`
/// and the perturbed weights obey `min w′ ≥ min w − β‖w‖/(1 − β)`. The
/// largest `δ ≤ inradius_at(s, c)` keeping this positive (with `β ≤ 1/2`) is
/// found by bisection, then checked against `trials` adversarial
/// perturbations at `δ(1 − 10⁻³)`, half random and half gradient-guided.
pub fn perturbation_tolerance(
    s: &Simplex,
    c: &Vector,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<PerturbationReport> {
    if !is_simplex(&s.vertices) {
        return Err(Error::PreconditionFailed("vertices are affinely dependent".into()));
    }
    let n = s.dim();
    let inradius = inradius_at(s, c)?;
    if !(inradius > crate::tolerance::ANALYTIC_TOL) {
        return Err(Error::PreconditionFailed(format!(
            "point is not strictly inside the simplex (inradius {inradius:e})"
        )));
    }
    let inv = Lu::factor(&s.lifted())?.inverse();
    let mut lifted_c = c.coords().to_vec();
    lifted_c.push(1.0);
    let w: Vec<f64> = (0..=n).map(|i| crate::linalg::dot(inv.row(i), &lifted_c)).collect();
    let w_min = w.iter().copied().fold(f64::INFINITY, f64::min);
    let w_norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let gain = (0..=n)
        .map(|i| inv.row(i)[..n].iter().map(|x| x * x).sum::<f64>())
        .sum::<f64>()
        .sqrt()
        * ((n + 1) as f64).sqrt();
    let bound = |delta: f64| -> Option<f64> {
        let beta = gain * delta;
        (beta <= 0.5).then(|| w_min - beta * w_norm / (1.0 - beta))
    };
    let valid = |delta: f64| bound(delta).is_some_and(|b| b > 0.0);

    let (mut lo, mut hi) = (0.0, inradius);
    if valid(hi) {
        lo = hi;
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if valid(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let delta = lo;
    if !(delta > 0.0) {
        return Err(Error::NoConvergence { iterations: 200, residual: w_min });
    }
    let magnitude = delta * (1.0 - 1e-3);
    let random = random_perturbation_trials(s, c, magnitude, trials / 2, rng);
    let guided = guided_perturbation_trials(s, c, magnitude, trials - trials / 2, &inv, rng);
    let failures = random.failures() + guided.failures();
    if failures > 0 {
        return Err(Error::ContractViolation(format!(
            "{failures} adversarial perturbations at {magnitude:e} broke the bound"
        )));
    }
    Ok(PerturbationReport {
        delta,
        weight_bound: bound(delta).unwrap_or(w_min),
        empirical_min_weight: random.min_weight.min(guided.min_weight),
        trials,
        inradius,
    })
}

/// Closed-form checks on a scaled regular simplex `a + rΣⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexReport {
    pub dim: usize,
    pub center: Vector,
    pub scale: f64,
    pub vertices: Vec<Vector>,
    /// Largest `|‖vᵢ − a‖ − r|`.
    pub radius_error: f64,
    /// Largest `|‖vᵢ − vⱼ‖ − r√(2(n+1)/n)|`.
    pub side_error: f64,
    /// `‖barycentre − a‖`.
    pub barycentre_error: f64,
    pub inradius: f64,
}

impl SimplexReport {
    pub fn new(center: &Vector, scale: f64) -> Result<Self> {
        let n = center.dim();
        let s = scaled_simplex(center, scale, n)?;
        let nf = n as f64;
        let side = scale * (2.0 * (nf + 1.0) / nf).sqrt();
        let radius_error =
            s.vertices.iter().map(|v| (v.dist(center) - scale).abs()).fold(0.0, f64::max);
        let mut side_error: f64 = 0.0;
        for (i, p) in s.vertices.iter().enumerate() {
            for q in &s.vertices[i + 1..] {
                side_error = side_error.max((p.dist(q) - side).abs());
            }
        }
        Ok(SimplexReport {
            dim: n,
            center: center.clone(),
            scale,
            barycentre_error: s.barycentre().dist(center),
            inradius: inradius_at(&s, center)?,
            vertices: s.vertices,
            radius_error,
            side_error,
        })
    }

    /// Every closed-form quantity within `tol` (scaled by `r` where it applies).
    pub fn passes(&self, tol: f64) -> bool {
        let t = tol * self.scale.max(1.0);
        self.radius_error <= t && self.side_error <= t && self.barycentre_error <= t && self.inradius > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn triangle() -> Simplex {
        Simplex::new(vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap()
    }

    /// Distance from `p` to the affine hull of `pts`, via the Gram system of
    /// the edge vectors.
    fn affine_hull_distance(pts: &[Vector], p: &Vector) -> f64 {
        let base = &pts[0];
        let edges: Vec<Vector> = pts[1..].iter().map(|q| q - base).collect();
        let k = edges.len();
        if k == 0 {
            return p.dist(base);
        }
        let rhs = p - base;
        let gram: Vec<Vec<f64>> =
            (0..k).map(|i| (0..k).map(|j| edges[i].dot(&edges[j])).collect()).collect();
        let b = Vector::new(edges.iter().map(|e| e.dot(&rhs)).collect()).unwrap();
        let coef = crate::linalg::solve_linear(&Matrix::from_rows(&gram).unwrap(), &b).unwrap();
        let mut proj = base.clone();
        for (e, c) in edges.iter().zip(coef.coords()) {
            proj.axpy(*c, e);
        }
        p.dist(&proj)
    }

    #[test]
    fn regular_simplex_small_cases() {
        let s = regular_simplex(1).unwrap();
        assert!((s.vertices()[0][0] + 1.0).abs() < 1e-15);
        assert!((s.vertices()[1][0] - 1.0).abs() < 1e-15);
        let s = regular_simplex(2).unwrap();
        let a = 1.5f64.sqrt();
        let b = 2f64.powf(-1.5) * (3f64.sqrt() + 1.0);
        assert!(s.vertices()[0].dist(&v(&[a - b, -b])) < 1e-15);
        assert!(s.vertices()[1].dist(&v(&[-b, a - b])) < 1e-15);
        assert!(s.vertices()[2].dist(&v(&[0.5f64.sqrt(), 0.5f64.sqrt()])) < 1e-15);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!((s.vertices()[i].dist(&s.vertices()[j]) - 3f64.sqrt()).abs() < 1e-12);
            }
        }
        assert!(regular_simplex(0).is_err());
        assert!(regular_simplex(17).is_err());
    }

    #[test]
    fn regular_simplex_closed_forms() {
        for n in 1..=MAX_DIM {
            let r = SimplexReport::new(&Vector::zeros(n), 1.0).unwrap();
            assert!(r.passes(1e-9), "n = {n}: {r:?}");
            assert!(is_simplex(&r.vertices));
        }
    }

    #[test]
    fn scaled_and_translated() {
        let a = v(&[1.0, 1.0]);
        let s = scaled_simplex(&a, 2.0, 2).unwrap();
        for p in s.vertices() {
            assert!((p.dist(&a) - 2.0).abs() < 1e-12);
        }
        assert!(s.barycentre().dist(&a) < 1e-12);
        assert_eq!(scaled_simplex(&Vector::zeros(3), 1.0, 3).unwrap(), regular_simplex(3).unwrap());
        let t = triangle().translated(&a).unwrap();
        assert!(t.barycentre().dist(&(&triangle().barycentre() + &a)) < 1e-15);
        assert!(triangle().barycentre().dist(&v(&[1.0 / 3.0, 1.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn triangle_facets() {
        let hs = facet_hyperplanes(&triangle()).unwrap();
        // Opposite (0,0): x + y ≤ 1.  Opposite (1,0): −x ≤ 0.  Opposite (0,1): −y ≤ 0.
        let expect = [(v(&[1.0, 1.0]), 1.0), (v(&[-1.0, 0.0]), 0.0), (v(&[0.0, -1.0]), 0.0)];
        for (h, (n, b)) in hs.iter().zip(expect) {
            let scale = h.normal().norm() / n.norm();
            assert!(h.normal().dist(&n.scale(scale)) < 1e-12, "{h:?}");
            assert!((h.offset() - b * scale).abs() < 1e-12);
        }
        let hs = facet_hyperplanes(&regular_simplex(1).unwrap()).unwrap();
        assert!((hs[0].signed_distance(&v(&[1.0]))).abs() < 1e-15);
        assert!((hs[1].signed_distance(&v(&[-1.0]))).abs() < 1e-15);
        assert!(hs[0].signed_distance(&v(&[0.0])) < 0.0);
    }

    #[test]
    fn facets_pass_through_the_other_vertices() {
        let s = regular_simplex(5).unwrap();
        for (i, h) in facet_hyperplanes(&s).unwrap().iter().enumerate() {
            for (j, p) in s.vertices().iter().enumerate() {
                let d = h.signed_distance(p);
                if i == j {
                    assert!(d < -0.1);
                } else {
                    assert!(d.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn inradius_matches_facet_distance_oracle() {
        for n in 1..=MAX_DIM {
            let s = regular_simplex(n).unwrap();
            let c = Vector::zeros(n);
            let oracle = (0..=n)
                .map(|i| {
                    let others: Vec<Vector> = s
                        .vertices()
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, p)| p.clone())
                        .collect();
                    affine_hull_distance(&others, &c)
                })
                .fold(f64::INFINITY, f64::min);
            let r = inradius_at(&s, &c).unwrap();
            assert!((r - oracle).abs() < 1e-6, "n = {n}");
            assert!((oracle - 1.0 / n as f64).abs() < 1e-6, "n = {n}");
        }
        let s = triangle();
        assert!(inradius_at(&s, &v(&[1.0, 0.0])).unwrap().abs() < 1e-12);
        assert!(inradius_at(&s, &v(&[2.0, 2.0])).unwrap() < 0.0);
    }

    #[test]
    fn simplex_predicate() {
        assert!(!is_simplex(&[v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])]));
        let mut pts = regular_simplex(2).unwrap().vertices().to_vec();
        pts[0][0] += 1e-15;
        assert!(is_simplex(&pts));
        assert!(!is_simplex(&[v(&[0.0, 0.0]), v(&[1.0, 0.0])]));
        assert!(matches!(
            Simplex::new(vec![v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])]),
            Err(Error::PreconditionFailed(_))
        ));
        // Scale invariance of the threshold.
        let tiny: Vec<Vector> = regular_simplex(3).unwrap().vertices().iter().map(|p| p.scale(1e-6)).collect();
        assert!(is_simplex(&tiny));
    }

    #[test]
    fn facet_and_barycentric_signs_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [triangle(), regular_simplex(3).unwrap(), scaled_simplex(&v(&[1.0, -2.0, 0.5, 3.0]), 0.3, 4).unwrap()] {
            let n = s.dim();
            let h = s.to_hpolytope().unwrap();
            let c = s.barycentre();
            for _ in 0..1000 {
                let p = sample::in_ball(&c, 2.0 * s.vertices()[0].dist(&c), &mut rng);
                let w = s.barycentric(&p).unwrap().min_weight();
                let r = inradius_at(&s, &p).unwrap();
                assert_eq!(w > 0.0, r > 0.0, "{p}");
                assert_eq!(w >= 0.0, h.facet_margin(&p) >= 0.0);
                assert_eq!(p.dim(), n);
            }
        }
    }

    #[test]
    fn perturbation_tolerance_barycentre() {
        let s = regular_simplex(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = perturbation_tolerance(&s, &Vector::zeros(2), 10_000, &mut rng).unwrap();
        assert!(rep.delta > 0.0 && rep.delta <= 0.5 + 1e-12, "{rep:?}");
        assert!(rep.weight_bound > 0.0 && rep.empirical_min_weight >= rep.weight_bound);
        let fresh = random_perturbation_trials(&s, &Vector::zeros(2), rep.delta * (1.0 - 1e-3), 10_000, &mut rng);
        assert_eq!(fresh.failures(), 0);
    }

    #[test]
    fn perturbation_tolerance_near_vertex() {
        let s = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = v(&[1e-6, 1e-6]);
        let far = perturbation_tolerance(&s, &s.barycentre(), 1000, &mut rng).unwrap();
        let near = perturbation_tolerance(&s, &c, 1000, &mut rng).unwrap();
        assert!(near.delta > 0.0 && near.delta < 1e-5 && near.delta < far.delta, "{near:?}");
    }

    #[test]
    fn perturbation_tolerance_errors() {
        let s = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            perturbation_tolerance(&s, &v(&[2.0, 2.0]), 10, &mut rng),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            perturbation_tolerance(&s, &v(&[1.0, 0.0]), 10, &mut rng),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
