//! Witness-producing constructions on convex sets.
//!
//! Each operation returns explicit points together with a [`BallCertificate`]
//! whose radius follows a closed-form law in the inputs. Hypotheses are
//! re-checked through body queries before anything is produced, and every
//! certificate is verified against the body before it is returned.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{sample, BallCertificate, ConvexBody};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::tolerance::{SAMPLING_POINTS, SAMPLING_SHRINK};


const CLOSURE_SAMPLING_SEED: u64 = 0x5eed_c105;

/// A point `z = (1 − λ)x + λy` on a segment, with a certified interior ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentWitness {
    pub z: Vector,
    pub lambda: f64,
    pub certificate: BallCertificate,
    /// Tolerance under which "y lies in the closure" was accepted.
    pub closure_tol: f64,
    /// Interior point near `y` used to meet the ball-intersection hypothesis,
    /// when the construction needed one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vector>,
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Body used for "is in K" style checks. For a sandwich set only the inner
/// body is known to lie inside.
fn known_part(k: &ConvexBody) -> &ConvexBody {
    match k {
        ConvexBody::Sandwich(s) => s.inner(),
        b => b,
    }
}

fn closure_tol(k: &ConvexBody) -> f64 {
    known_part(k).default_tol()
}

fn require_ball_inside(k: &ConvexBody, x: &Vector, r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(precondition(format!("radius must be positive, got {r}")));
    }
    let check = BallCertificate::new(x.clone(), r).verify_margin(k)?;
    if check.passed {
        Ok(())
    } else {
        Err(precondition(format!(
            "B({x}, {r}) is not inside the body (interior margin {:e})",
            check.value
        )))
    }
}

fn require_in_closure(k: &ConvexBody, y: &Vector, tol: f64) -> Result<()> {
    let d = known_part(k).distance(y, tol)?;
    if d <= tol {
        Ok(())
    } else {
        Err(precondition(format!("{y} is not in the closure of the body (distance {d:e})")))
    }
}

fn certified(
    k: &ConvexBody,
    z: Vector,
    lambda: f64,
    radius: f64,
    closure_tol: f64,
    anchor: Option<Vector>,
) -> Result<SegmentWitness> {
    let certificate = BallCertificate::new(z.clone(), radius);
    let check = certificate.verify_margin(k)?;
    if !check.passed {
        return Err(Error::CertificateRejected { radius, margin: check.value });
    }
    Ok(SegmentWitness { z, lambda, certificate, closure_tol, anchor })
}

/// Splits a point `ζ ∈ B(z, r)`, `z = (1 − λ)x + λy`, as
/// `ζ = (1 − λ)ξ + λη` with `ξ = x + ζ − z ∈ B(x, r)` and
/// `η = y + ζ − z ∈ B(y, r)`.
pub fn ball_transport(
    x: &Vector,
    y: &Vector,
    lambda: f64,
    r: f64,
    zeta: &Vector,
) -> Result<(Vector, Vector)> {
    y.check_dim(x.dim())?;
    zeta.check_dim(x.dim())?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(precondition(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let z = x.lerp(y, lambda);
    let offset = zeta - &z;
    let len = offset.norm();
    if !(len < r) {
        return Err(Error::OutOfBall { offset: len, radius: r });
    }
    Ok((x + &offset, y + &offset))
}

/// If `B(x, r) ⊆ K` and `B(y, (1 − λ)r)` meets `K`, then
/// `B(z, (1 − λ)²r) ⊆ K` for `z = (1 − λ)x + λy`, `0 < λ < 1`.
pub fn segment_interior_ball(
    k: &ConvexBody,
    x: &Vector,
    r: f64,
    y: &Vector,
    lambda: f64,
) -> Result<SegmentWitness> {
    y.check_dim(k.dim())?;
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(precondition(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    require_ball_inside(k, x, r)?;
    let tol = closure_tol(k);
    if !(x.dist(y) > tol) {
        return Err(precondition("x and y coincide"));
    }
    let reach = (1.0 - lambda) * r;
    let d = known_part(k).distance(y, tol)?;
    if !(d < reach) {
        return Err(precondition(format!(
            "B(y, (1-lambda) r) misses the body: distance {d:e} >= {reach:e}"
        )));
    }
    let z = x.lerp(y, lambda);
    certified(k, z, lambda, (1.0 - lambda) * reach, tol, None)
}

/// Interior point within `ε/2` of a point `y` of the closure, given an
/// interior ball `B(x₀, r)`.
///
/// When `‖x₀ − y‖ < r`, `y` is itself interior and is returned with radius
/// `r − ‖x₀ − y‖` (λ = 1). Otherwise `λ = 1 − ε / (2‖x₀ − y‖)`,
/// `z = (1 − λ)x₀ + λy` and `B(z, (1 − λ)r) ⊆ K`, with `‖y − z‖ = ε/2`.
pub fn density_witness(
    k: &ConvexBody,
    x0: &Vector,
    r: f64,
    y: &Vector,
    eps: f64,
) -> Result<SegmentWitness> {
    y.check_dim(k.dim())?;
    require_ball_inside(k, x0, r)?;
    let tol = closure_tol(k);
    require_in_closure(k, y, tol)?;
    let d = x0.dist(y);
    if d < r {
        return certified(k, y.clone(), 1.0, r - d, tol, None);
    }
    if !(eps > 0.0 && eps < 2.0 * d) {
        return Err(precondition(format!("eps must lie in (0, 2|x0 - y|) = (0, {}), got {eps}", 2.0 * d)));
    }
    let lambda = 1.0 - eps / (2.0 * d);
    let z = x0.lerp(y, lambda);
    certified(k, z, lambda, (1.0 - lambda) * r, tol, None)
}

/// Every point of the half-open segment `[x, y)` from an interior point `x`
/// (with `B(x, r) ⊆ K`) to a point `y` of the closure is interior.
///
/// Points within `r` of `x` get radius `r − ‖z − x‖`; beyond that an
/// interior point near `y` is produced by [`density_witness`] and the
/// quantitative ball law gives radius `(1 − λ)²r·(1 − tol)`.
pub fn segment_interior(
    k: &ConvexBody,
    x: &Vector,
    r: f64,
    y: &Vector,
    lambda: f64,
) -> Result<SegmentWitness> {
    y.check_dim(k.dim())?;
    if !(0.0..1.0).contains(&lambda) {
        return Err(precondition(format!("lambda must lie in [0, 1), got {lambda}")));
    }
    require_ball_inside(k, x, r)?;
    let tol = closure_tol(k);
    require_in_closure(k, y, tol)?;
    let z = x.lerp(y, lambda);
    let near = z.dist(x);
    if near < r {
        return certified(k, z, lambda, r - near, tol, None);
    }
    segment_interior_far(k, x, r, y, lambda, tol)
}

/// The far case of [`segment_interior`], also used directly by the closure
/// construction. Preconditions on `x` and `y` are assumed checked.
fn segment_interior_far(
    k: &ConvexBody,
    x: &Vector,
    r: f64,
    y: &Vector,
    lambda: f64,
    tol: f64,
) -> Result<SegmentWitness> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(precondition(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let reach = (1.0 - lambda) * r;
    let anchor = density_witness(k, x, r, y, reach)?;
    debug_assert!(anchor.z.dist(y) < reach);
    let z = x.lerp(y, lambda);
    certified(k, z, lambda, (1.0 - lambda) * reach * (1.0 - tol), tol, Some(anchor.z))
}

/// A point `y` whose closed ball `B̄(y, s)` lies in the closure of `K` is
/// interior to `K`, given an interior ball `B(x₀, r)`.
///
/// With `α = 1 + s/‖y − x₀‖` the point `z = (1 − α)x₀ + αy` lies on the
/// sphere of radius `s` about `y`, hence in the closure, and
/// `y = (1 − 1/α)x₀ + (1/α)z` sits on `[x₀, z)`. The certificate comes from
/// the segment construction with `λ = 1/α`.
pub fn closure_interior_witness(
    k: &ConvexBody,
    x0: &Vector,
    r: f64,
    y: &Vector,
    s: f64,
) -> Result<SegmentWitness> {
    y.check_dim(k.dim())?;
    if !(s > 0.0) {
        return Err(precondition(format!("s must be positive, got {s}")));
    }
    require_ball_inside(k, x0, r)?;
    let tol = closure_tol(k);
    let d = y.dist(x0);
    if !(d > tol) {
        return Err(precondition("y coincides with x0"));
    }
    let probe = known_part(k);
    let mut rng = ChaCha8Rng::seed_from_u64(CLOSURE_SAMPLING_SEED);
    let shrunk = s * (1.0 - SAMPLING_SHRINK);
    for i in 0..SAMPLING_POINTS {
        let p = if i % 2 == 0 {
            sample::on_sphere(y, shrunk, &mut rng)
        } else {
            sample::in_ball(y, shrunk, &mut rng)
        };
        let dist = probe.distance(&p, tol)?;
        if dist > tol {
            return Err(precondition(format!(
                "closed ball B({y}, {s}) leaves the closure: sample {p} at distance {dist:e}"
            )));
        }
    }
    let alpha = 1.0 + s / d;
    let z = x0.lerp(y, alpha);
    let gap = (z.dist(y) - s).abs();
    if gap > 1e-9 * s.max(1.0) {
        return Err(precondition(format!("extension point misses the sphere by {gap:e}")));
    }
    require_in_closure(k, &z, tol)?;
    let w = segment_interior_far(k, x0, r, &z, 1.0 / alpha, tol)?;
    debug_assert!(w.z.dist(y) < 1e-9 * (1.0 + y.norm()));
    Ok(w)
}

/// Interior points `z₀, …, z_n` near the vertices of the regular simplex
/// `x + rΣⁿ`, together with the barycentric weights of `x` with respect to
/// them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexWitness {
    pub vertices: Vec<SegmentWitness>,
    pub weights: Vec<f64>,
}

impl SimplexWitness {
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// A point `x` with `B̄(x, r)` in the closure of `K` is interior to `K`:
/// each vertex `aₖ` of `x + rΣⁿ` is replaced by an interior point `zₖ` with
/// `‖zₖ − aₖ‖ < δ = r·unit_delta`, and `x` is a strict convex combination of
/// the `zₖ`.
///
/// `unit_delta` is a vertex perturbation tolerance of the unit regular
/// simplex about its barycentre, as returned by
/// [`crate::simplex::perturbation_tolerance`]; it scales linearly with `r`.
pub fn simplex_interior_witness(
    k: &ConvexBody,
    x0: &Vector,
    r0: f64,
    x: &Vector,
    r: f64,
    unit_delta: f64,
) -> Result<SimplexWitness> {
    x.check_dim(k.dim())?;
    if !(unit_delta > 0.0 && unit_delta < 1.0) {
        return Err(precondition(format!("unit_delta must lie in (0, 1), got {unit_delta}")));
    }
    let s = crate::simplex::scaled_simplex(x, r, k.dim())?;
    let delta = r * unit_delta;
    let vertices = s
        .vertices()
        .iter()
        .map(|a| density_witness(k, x0, r0, a, delta))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<Vector> = vertices.iter().map(|w| w.z.clone()).collect();
    let weights = crate::linalg::barycentric(&points, x)?.weights().to_vec();
    let w = SimplexWitness { vertices, weights };
    if !(w.min_weight() > 0.0) {
        return Err(Error::ContractViolation(format!(
            "perturbed simplex lost the centre (min weight {:e})",
            w.min_weight()
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{Ball, HPolytope};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn square() -> ConvexBody {
        HPolytope::unit_cube(2).into()
    }

    fn unit_ball() -> ConvexBody {
        Ball::closed(v(&[0.0, 0.0]), 1.0).unwrap().into()
    }

    fn close(a: &Vector, b: &Vector, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    #[test]
    fn transport_example() {
        let (xi, eta) =
            ball_transport(&v(&[0.0, 0.0]), &v(&[2.0, 0.0]), 0.5, 1.0, &v(&[1.0, 0.5])).unwrap();
        assert!(close(&xi, &v(&[0.0, 0.5]), 1e-15));
        assert!(close(&eta, &v(&[2.0, 0.5]), 1e-15));
    }

    #[test]
    fn transport_edge_cases() {
        let x = v(&[0.3, -1.0]);
        let y = v(&[2.0, 4.0]);
        let z = x.lerp(&y, 0.25);
        let (xi, eta) = ball_transport(&x, &y, 0.25, 1.0, &z).unwrap();
        assert!(close(&xi, &x, 1e-15) && close(&eta, &y, 1e-15));
        let zeta = v(&[0.5, -0.8]);
        let (xi, eta) = ball_transport(&x, &y, 0.0, 1.0, &zeta).unwrap();
        assert_eq!(xi, zeta);
        assert!(close(&eta, &(&(&y + &zeta) - &x), 1e-15));
        assert!(matches!(
            ball_transport(&x, &y, 0.0, 0.1, &zeta),
            Err(Error::OutOfBall { .. })
        ));
        assert!(ball_transport(&x, &y, 1.5, 1.0, &zeta).is_err());
    }

    #[test]
    fn segment_ball_example() {
        let w = segment_interior_ball(&square(), &v(&[0.5, 0.5]), 0.5, &v(&[1.0, 0.5]), 0.5).unwrap();
        assert!(close(&w.z, &v(&[0.75, 0.5]), 1e-15));
        assert!((w.certificate.radius() - 0.125).abs() < 1e-15);
        assert!((square().interior_margin(&w.z).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn segment_ball_small_lambda() {
        let x = v(&[0.5, 0.5]);
        let y = v(&[1.0, 0.5]);
        let w = segment_interior_ball(&square(), &x, 0.5, &y, 0.01).unwrap();
        assert!((w.certificate.radius() - 0.99 * 0.99 * 0.5).abs() < 1e-15);
        assert!(w.z.dist(&x) <= 0.01 * x.dist(&y) + 1e-15);
    }

    #[test]
    fn segment_ball_radius_is_tight() {
        // y just inside B(facet, (1 - lambda) r): the ball law is attained up
        // to rounding, so a 5% larger ball must leave the square.
        let x = v(&[0.5, 0.5]);
        for lambda in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let r = 0.5;
            let y = v(&[1.0 + (1.0 - lambda) * r * (1.0 - 1e-9), 0.5]);
            let w = segment_interior_ball(&square(), &x, r, &y, lambda).unwrap();
            assert!(w.certificate.verify_margin(&square()).unwrap().passed);
            assert!(!w.certificate.inflated(1.05).verify_margin(&square()).unwrap().passed);
        }
    }

    #[test]
    fn segment_ball_rejects_far_y() {
        let err = segment_interior_ball(&square(), &v(&[0.5, 0.5]), 0.5, &v(&[5.0, 0.5]), 0.5);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
        // Interior ball hypothesis fails.
        let err = segment_interior_ball(&square(), &v(&[0.5, 0.5]), 0.6, &v(&[1.0, 0.5]), 0.5);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
        let err = segment_interior_ball(&square(), &v(&[0.5, 0.5]), 0.5, &v(&[1.0, 0.5]), 1.0);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn density_example_on_interval() {
        let k: ConvexBody = HPolytope::interval(0.0, 1.0).unwrap().into();
        let w = density_witness(&k, &v(&[0.5]), 0.5, &v(&[1.0]), 0.5).unwrap();
        assert!((w.lambda - 0.5).abs() < 1e-15);
        assert!((w.z[0] - 0.75).abs() < 1e-15);
        assert!((w.z.dist(&v(&[1.0])) - 0.25).abs() < 1e-15);
        assert!((w.certificate.radius() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn density_near_branch_and_errors() {
        let x0 = v(&[0.5, 0.5]);
        let y = v(&[0.6, 0.5]);
        let w = density_witness(&square(), &x0, 0.5, &y, 0.01).unwrap();
        assert_eq!(w.z, y);
        assert_eq!(w.lambda, 1.0);
        assert!((w.certificate.radius() - 0.4).abs() < 1e-12);
        let y = v(&[1.0, 1.0]);
        let d = x0.dist(&y);
        assert!(matches!(
            density_witness(&square(), &x0, 0.5, &y, 2.0 * d),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            density_witness(&square(), &x0, 0.5, &v(&[2.0, 2.0]), 0.1),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn segment_interior_examples() {
        let w = segment_interior(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[1.0, 0.0]), 0.9).unwrap();
        assert!(close(&w.z, &v(&[0.9, 0.0]), 1e-15));
        assert!(w.certificate.radius() >= 0.01 * (1.0 - 1e-9));
        assert!(unit_ball().interior_margin(&w.z).unwrap() >= w.certificate.radius());
        let w = segment_interior(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[1.0, 0.0]), 0.0).unwrap();
        assert_eq!(w.certificate.radius(), 1.0);
        let w = segment_interior(&unit_ball(), &v(&[0.0, 0.0]), 0.5, &v(&[1.0, 0.0]), 0.999).unwrap();
        assert!(w.certificate.radius() > 0.0);
        assert!(w.anchor.is_some());
        assert!(segment_interior(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[1.0, 0.0]), 1.0).is_err());
    }

    #[test]
    fn closure_example() {
        let w = closure_interior_witness(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[0.5, 0.0]), 0.5)
            .unwrap();
        assert!((w.lambda - 0.5).abs() < 1e-15);
        assert!(close(&w.z, &v(&[0.5, 0.0]), 1e-12));
        assert!((w.certificate.radius() - 0.25 * (1.0 - 1e-9)).abs() < 1e-12);
        assert!(unit_ball().interior_margin(&w.z).unwrap() >= 0.25);
    }

    #[test]
    fn closure_errors() {
        let err = closure_interior_witness(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[1e-12, 0.0]), 0.5);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
        let err = closure_interior_witness(&unit_ball(), &v(&[0.0, 0.0]), 1.0, &v(&[0.5, 0.0]), 0.7);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn open_ball_closure_point_is_accepted() {
        // The boundary of an open ball is in its closure.
        let k: ConvexBody = Ball::open(v(&[0.0, 0.0]), 1.0).unwrap().into();
        let w = segment_interior(&k, &v(&[0.0, 0.0]), 0.5, &v(&[0.0, 1.0]), 0.8).unwrap();
        assert!(k.interior_margin(&w.z).unwrap() >= w.certificate.radius());
    }

    #[test]
    fn simplex_route_certifies_interior() {
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(9);
        let unit = crate::simplex::perturbation_tolerance(
            &crate::simplex::regular_simplex(2).unwrap(),
            &Vector::zeros(2),
            1000,
            &mut rng,
        )
        .unwrap()
        .delta;
        let k: ConvexBody = Ball::open(v(&[0.0, 0.0]), 1.0).unwrap().into();
        let x = v(&[0.6, 0.2]);
        let w = simplex_interior_witness(&k, &v(&[0.0, 0.0]), 1.0, &x, 0.3, unit).unwrap();
        assert_eq!(w.vertices.len(), 3);
        assert!(w.min_weight() > 0.0);
        for z in &w.vertices {
            assert!(k.interior_margin(&z.z).unwrap() >= z.certificate.radius() - 1e-12);
        }
        // Vertices outside the closure are refused.
        assert!(simplex_interior_witness(&k, &v(&[0.0, 0.0]), 1.0, &x, 0.6, unit).is_err());
    }
}
