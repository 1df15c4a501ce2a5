//! Metric complement and metric double complement membership.
//!
//! A point is in the metric complement `−S` when it is bounded away from `S`.
//! Deciding `x ∈ −(−S)` straight from the definition would quantify over all
//! of `−S`; for a located convex body the double complement equals the
//! interior, so membership reduces to the sign of the interior margin. The
//! definitional route is kept alive by the grid referee in [`crate::lab`].

use serde::{Deserialize, Serialize};

use crate::bodies::{ConvexBody, MembershipVerdict, SandwichSet};
use crate::error::{Error, Result};
use crate::linalg::Vector;

/// A membership question: is `point` in `−(−body)` at tolerance `tol`?
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplementQuery {
    body: ConvexBody,
    point: Vector,
    tol: f64,
}

impl ComplementQuery {
    pub fn new(body: ConvexBody, point: Vector, tol: f64) -> Result<Self> {
        point.check_dim(body.dim())?;
        check_positive("tol", tol)?;
        Ok(ComplementQuery { body, point, tol })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn point(&self) -> &Vector {
        &self.point
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn double_complement(&self) -> Result<MembershipVerdict> {
        double_complement_membership(&self.body, &self.point, self.tol)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
    }
}

/// Tests `x ∈ −S` at scale `r`: the distance, computed to tolerance `r/10`,
/// must be at least `0.9·r`. On success returns the certified separation
/// `r′ = distance − r/10`, so `‖x − y‖ ≥ r′` for every `y` in the body.
///
/// Sandwich sets use their outer body, which contains the set.
pub fn metric_complement_witness(body: &ConvexBody, x: &Vector, r: f64) -> Result<Option<f64>> {
    check_positive("r", r)?;
    let tol = r / 10.0;
    let d = match body {
        ConvexBody::Sandwich(s) => s.outer().distance(x, tol)?,
        b => b.distance(x, tol)?,
    };
    Ok((d >= r - tol).then_some(d - tol))
}

/// `x ∈ −S` at scale `r`; see [`metric_complement_witness`].
pub fn in_metric_complement(body: &ConvexBody, x: &Vector, r: f64) -> Result<bool> {
    Ok(metric_complement_witness(body, x, r)?.is_some())
}

/// Membership in `−(−K)` for a located convex body, decided by the interior
/// margin: `Inside` iff the margin exceeds `tol`, `Outside` iff it is below
/// `−tol`. Sandwich sets are routed to [`sandwich_double_complement`].
pub fn double_complement_membership(
    body: &ConvexBody,
    x: &Vector,
    tol: f64,
) -> Result<MembershipVerdict> {
    check_positive("tol", tol)?;
    match body {
        ConvexBody::Sandwich(s) => sandwich_double_complement(s, x, tol),
        b => Ok(MembershipVerdict::from_signed_margin(b.interior_margin(x)?, tol)),
    }
}

/// Membership in `−(−K)` for a set known only as `inner ⊆ K ⊆ outer` with
/// `outer ∩ ¬K = ∅`: the double complement of `K` is the interior of the
/// closed located `outer`, so `K` itself is never consulted.
pub fn sandwich_double_complement(
    s: &SandwichSet,
    x: &Vector,
    tol: f64,
) -> Result<MembershipVerdict> {
    check_positive("tol", tol)?;
    if !s.outer_dense() {
        return Err(Error::PreconditionFailed(
            "sandwich does not assert that the outer body meets no point outside the set".into(),
        ));
    }
    Ok(MembershipVerdict::from_signed_margin(s.outer().interior_margin(x)?, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{Ball, HPolytope, Status, VPolytope};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn unit_ball() -> ConvexBody {
        Ball::closed(v(&[0.0, 0.0]), 1.0).unwrap().into()
    }

    fn segment() -> ConvexBody {
        VPolytope::new(vec![v(&[0.0, 0.0]), v(&[2.0, 0.0])]).unwrap().into()
    }

    fn sandwich() -> SandwichSet {
        SandwichSet::new(
            HPolytope::interval(0.0, 1.0).unwrap().into(),
            HPolytope::interval(0.0, 2.0).unwrap().into(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn metric_complement_examples() {
        assert!(in_metric_complement(&unit_ball(), &v(&[3.0, 0.0]), 1.0).unwrap());
        assert!(!in_metric_complement(&unit_ball(), &v(&[1.0005, 0.0]), 1e-2).unwrap());
        // Perpendicular drop onto the segment: distance 0.5.
        assert!(in_metric_complement(&segment(), &v(&[1.0, 0.5]), 0.4).unwrap());
        let w = metric_complement_witness(&unit_ball(), &v(&[3.0, 0.0]), 1.0).unwrap().unwrap();
        assert!((w - 1.9).abs() < 1e-12);
        assert!(in_metric_complement(&unit_ball(), &v(&[3.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn double_complement_examples() {
        let c = double_complement_membership(&unit_ball(), &v(&[0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(c.status, Status::Inside);
        assert!((c.margin - 1.0).abs() < 1e-15);
        let c = double_complement_membership(&unit_ball(), &v(&[2.0, 0.0]), 1e-9).unwrap();
        assert_eq!(c.status, Status::Outside);
        // A segment in the plane has empty interior.
        let c = double_complement_membership(&segment(), &v(&[1.0, 0.0]), 1e-9).unwrap();
        assert_ne!(c.status, Status::Inside);
    }

    #[test]
    fn sandwich_examples() {
        let s = sandwich();
        let c = sandwich_double_complement(&s, &v(&[1.5]), 1e-9).unwrap();
        assert_eq!(c.status, Status::Inside);
        assert!((c.margin - 0.5).abs() < 1e-12);
        assert_eq!(sandwich_double_complement(&s, &v(&[0.0]), 1e-9).unwrap().status, Status::Undetermined);
        assert_eq!(sandwich_double_complement(&s, &v(&[2.0]), 1e-9).unwrap().status, Status::Undetermined);
        assert_eq!(sandwich_double_complement(&s, &v(&[2.5]), 1e-9).unwrap().status, Status::Outside);
        assert_eq!(sandwich_double_complement(&s, &v(&[-0.5]), 1e-9).unwrap().status, Status::Outside);
        // Routed through the generic entry point as well.
        let body: ConvexBody = s.into();
        assert_eq!(double_complement_membership(&body, &v(&[1.5]), 1e-9).unwrap().status, Status::Inside);
    }

    #[test]
    fn sandwich_without_density_contract_is_refused() {
        let s = SandwichSet::new(
            HPolytope::interval(0.0, 1.0).unwrap().into(),
            HPolytope::interval(0.0, 2.0).unwrap().into(),
            false,
        )
        .unwrap();
        assert!(matches!(
            sandwich_double_complement(&s, &v(&[1.5]), 1e-9),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn query_validates() {
        assert!(ComplementQuery::new(unit_ball(), v(&[0.0]), 1e-9).is_err());
        assert!(ComplementQuery::new(unit_ball(), v(&[0.0, 0.0]), -1.0).is_err());
        let q = ComplementQuery::new(unit_ball(), v(&[0.5, 0.0]), 1e-9).unwrap();
        assert_eq!(q.double_complement().unwrap().status, Status::Inside);
    }
}
