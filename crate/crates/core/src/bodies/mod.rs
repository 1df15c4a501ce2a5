//! Located convex bodies.
//!
//! A body is *located* when the distance `ρ(x, K) = inf ‖x − y‖` can be
//! computed for every `x`. Every body here answers that through a projection:
//! balls in closed form, H-polytopes by Dykstra's half-space projections,
//! V-polytopes by Wolfe's minimum-norm-point search. Sandwich sets are the
//! exception: they bound an unknown convex set from inside and outside and
//! are not located themselves.

mod ball;
mod certificate;
mod hpolytope;
pub mod sample;
mod sandwich;
mod shape;
mod vpolytope;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use ball::Ball;
pub use certificate::BallCertificate;
pub use hpolytope::HPolytope;
pub use sandwich::SandwichSet;
pub use vpolytope::VPolytope;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::tolerance::{ANALYTIC_TOL, ITERATIVE_TOL};

/// Outcome of a tolerance-aware membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Inside,
    Outside,
    Undetermined,
}

/// Three-valued membership with the distance to the decision boundary.
///
/// `margin` is positive for `Inside` and `Outside`; for `Undetermined` its
/// magnitude is at most the tolerance of the query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: Status,
    pub margin: f64,
}

impl MembershipVerdict {
    /// Classifies a signed margin (positive inside) against `tol`.
    pub fn from_signed_margin(m: f64, tol: f64) -> Self {
        if m > tol {
            MembershipVerdict { status: Status::Inside, margin: m }
        } else if m < -tol {
            MembershipVerdict { status: Status::Outside, margin: -m }
        } else {
            MembershipVerdict { status: Status::Undetermined, margin: m }
        }
    }

    pub fn is_inside(&self) -> bool {
        self.status == Status::Inside
    }

    pub fn is_outside(&self) -> bool {
        self.status == Status::Outside
    }
}

/// A convex set in Euclidean Rⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "shape::ShapeDoc", into = "shape::ShapeDoc")]
pub enum ConvexBody {
    Ball(Ball),
    HPolytope(HPolytope),
    VPolytope(VPolytope),
    Sandwich(Box<SandwichSet>),
}

impl From<Ball> for ConvexBody {
    fn from(b: Ball) -> Self {
        ConvexBody::Ball(b)
    }
}

impl From<HPolytope> for ConvexBody {
    fn from(h: HPolytope) -> Self {
        ConvexBody::HPolytope(h)
    }
}

impl From<VPolytope> for ConvexBody {
    fn from(v: VPolytope) -> Self {
        ConvexBody::VPolytope(v)
    }
}

impl From<SandwichSet> for ConvexBody {
    fn from(s: SandwichSet) -> Self {
        ConvexBody::Sandwich(Box::new(s))
    }
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball(b) => b.dim(),
            ConvexBody::HPolytope(h) => h.dim(),
            ConvexBody::VPolytope(v) => v.dim(),
            ConvexBody::Sandwich(s) => s.dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Ball(_) => "ball",
            ConvexBody::HPolytope(_) => "hpolytope",
            ConvexBody::VPolytope(_) => "vpolytope",
            ConvexBody::Sandwich(_) => "sandwich",
        }
    }

    /// Default query tolerance: analytic for balls, iterative for polytopes.
    pub fn default_tol(&self) -> f64 {
        match self {
            ConvexBody::Ball(_) => ANALYTIC_TOL,
            _ => ITERATIVE_TOL,
        }
    }

    fn check(&self, x: &Vector) -> Result<()> {
        x.check_dim(self.dim())
    }

    /// Nearest point of the closure of the body, within `tol` of optimal.
    pub fn project(&self, x: &Vector, tol: f64) -> Result<Vector> {
        self.check(x)?;
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        match self {
            ConvexBody::Ball(b) => Ok(b.project(x)),
            ConvexBody::HPolytope(h) => h.project(x, tol),
            ConvexBody::VPolytope(v) => v.project(x, tol),
            ConvexBody::Sandwich(_) => Err(Error::NotLocated("projection onto a sandwich set")),
        }
    }

    /// `ρ(x, K)`; zero when `x` is in the closure.
    pub fn distance(&self, x: &Vector, tol: f64) -> Result<f64> {
        match self {
            ConvexBody::Ball(b) => {
                self.check(x)?;
                Ok(b.distance(x))
            }
            _ => Ok(x.dist(&self.project(x, tol)?)),
        }
    }

    /// Cheap lower bound on `ρ(x, K)`, exact for balls.
    pub fn distance_lower_bound(&self, x: &Vector) -> f64 {
        match self {
            ConvexBody::Ball(b) => b.distance(x),
            ConvexBody::HPolytope(h) => h.distance_lower_bound(x),
            ConvexBody::VPolytope(v) => v.distance_lower_bound(x),
            ConvexBody::Sandwich(s) => s.outer().distance_lower_bound(x),
        }
    }

    /// Largest `r` with `B(x, r) ⊆ K` when `x` is inside; `−ρ(x, K)` outside.
    pub fn interior_margin(&self, x: &Vector) -> Result<f64> {
        self.check(x)?;
        match self {
            ConvexBody::Ball(b) => Ok(b.interior_margin(x)),
            ConvexBody::HPolytope(h) => {
                let m = h.facet_margin(x);
                if m >= 0.0 {
                    Ok(m)
                } else {
                    Ok(-self.distance(x, ITERATIVE_TOL)?)
                }
            }
            ConvexBody::VPolytope(v) => match v.facet_margin(x)? {
                Some(m) if m >= 0.0 => Ok(m),
                _ => Ok(-self.distance(x, ITERATIVE_TOL)?),
            },
            ConvexBody::Sandwich(_) => Err(Error::NotLocated("interior margin of a sandwich set")),
        }
    }

    /// Tolerance-aware membership. For a sandwich set, `Inside` is decided
    /// by the inner body and `Outside` by the outer body.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<MembershipVerdict> {
        match self {
            ConvexBody::Sandwich(s) => {
                let inner = s.inner().contains(x, tol)?;
                if inner.is_inside() {
                    return Ok(inner);
                }
                let outer = s.outer().contains(x, tol)?;
                if outer.is_outside() {
                    return Ok(outer);
                }
                Ok(MembershipVerdict { status: Status::Undetermined, margin: 0.0 })
            }
            _ => Ok(MembershipVerdict::from_signed_margin(self.interior_margin(x)?, tol)),
        }
    }

    /// The translate `{x − a : x ∈ K}`.
    pub fn translate(&self, a: &Vector) -> ConvexBody {
        assert_eq!(a.dim(), self.dim(), "translation vector dimension");
        match self {
            ConvexBody::Ball(b) => ConvexBody::Ball(b.translated(a)),
            ConvexBody::HPolytope(h) => ConvexBody::HPolytope(h.translated(a)),
            ConvexBody::VPolytope(v) => ConvexBody::VPolytope(v.translated(a)),
            ConvexBody::Sandwich(s) => ConvexBody::Sandwich(Box::new(s.translated(a))),
        }
    }

    /// The topological closure. Polytopes are already closed.
    pub fn closure(&self) -> ConvexBody {
        match self {
            ConvexBody::Ball(b) => ConvexBody::Ball(b.closure()),
            other => other.clone(),
        }
    }

    /// Axis-aligned bounding box of the closure.
    pub fn bounding_box(&self) -> Result<(Vector, Vector)> {
        match self {
            ConvexBody::Ball(b) => {
                let r = Vector::ones(b.dim()).scale(b.radius());
                Ok((b.center() - &r, b.center() + &r))
            }
            ConvexBody::HPolytope(h) => h.bounding_box().cloned().ok_or(Error::Unbounded),
            ConvexBody::VPolytope(v) => Ok(v.bounding_box()),
            ConvexBody::Sandwich(s) => s.outer().bounding_box(),
        }
    }

    /// Largest inscribed ball, witnessing an inhabited interior.
    ///
    /// H-polytopes solve the Chebyshev LP; V-polytopes go through their
    /// facets; sandwich sets use the inner body (`inner ⊆ K`).
    pub fn chebyshev_ball(&self) -> Result<BallCertificate> {
        let (center, radius) = match self {
            ConvexBody::Ball(b) => (b.center().clone(), b.radius()),
            ConvexBody::HPolytope(h) => h.chebyshev()?,
            ConvexBody::VPolytope(v) => {
                if !v.is_full_dimensional()? {
                    return Err(Error::EmptyInterior { radius: 0.0 });
                }
                HPolytope::new(v.facets()?.to_vec(), true)?.chebyshev()?
            }
            ConvexBody::Sandwich(s) => return s.inner().chebyshev_ball(),
        };
        if radius <= ANALYTIC_TOL {
            return Err(Error::EmptyInterior { radius });
        }
        Ok(BallCertificate::new(center, radius))
    }

    /// `count` random points of the body. Balls are sampled uniformly,
    /// H-polytopes by rejection from the bounding box, V-polytopes as
    /// flat-Dirichlet combinations of the generators.
    pub fn sample(&self, count: usize, rng: &mut impl Rng) -> Result<Vec<Vector>> {
        match self {
            ConvexBody::Ball(b) => {
                Ok((0..count).map(|_| sample::in_ball(b.center(), b.radius(), rng)).collect())
            }
            ConvexBody::HPolytope(h) => {
                let (lo, hi) = h.bounding_box().ok_or(Error::Unbounded)?;
                let mut out = Vec::with_capacity(count);
                let max_attempts = count.saturating_mul(10_000).max(10_000);
                let mut attempts = 0;
                while out.len() < count {
                    if attempts == max_attempts {
                        return Err(Error::PreconditionFailed(
                            "rejection sampling found too few points; body may be flat".into(),
                        ));
                    }
                    attempts += 1;
                    let p = sample::in_box(lo, hi, rng);
                    if h.facet_margin(&p) >= 0.0 {
                        out.push(p);
                    }
                }
                Ok(out)
            }
            ConvexBody::VPolytope(v) => Ok((0..count)
                .map(|_| {
                    let w = sample::simplex_weights(v.generators().len(), rng);
                    let mut p = Vector::zeros(v.dim());
                    for (g, wi) in v.generators().iter().zip(w) {
                        p.axpy(wi, g);
                    }
                    p
                })
                .collect()),
            ConvexBody::Sandwich(s) => s.inner().sample(count, rng),
        }
    }

    /// True when `interior_margin` is exact in closed form (no iteration
    /// inside the body).
    pub fn has_margin(&self) -> bool {
        !matches!(self, ConvexBody::Sandwich(_))
    }
}
