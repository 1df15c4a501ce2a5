use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{sample, ConvexBody};
use crate::error::Result;
use crate::linalg::Vector;
use crate::tolerance::{ANALYTIC_TOL, CERTIFICATE_SLACK, SAMPLING_SHRINK};

/// Claim that the open ball `B(center, radius)` lies inside a body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallCertificate {
    center: Vector,
    radius: f64,
}

/// Result of checking a [`BallCertificate`] against a body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub passed: bool,
    pub method: CheckMethod,
    /// Exact margin at the center (margin method) or the largest distance
    /// from the body over the samples (sampling method).
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMethod {
    Margin,
    Sampling,
}

impl BallCertificate {
    pub fn new(center: Vector, radius: f64) -> Self {
        assert!(radius > 0.0, "certificate radius must be positive, got {radius}");
        BallCertificate { center, radius }
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Same center, radius multiplied by `factor`.
    pub fn inflated(&self, factor: f64) -> Self {
        BallCertificate::new(self.center.clone(), self.radius * factor)
    }

    /// Checks `interior_margin(center) ≥ radius − 1e−9`. Sandwich sets are
    /// checked against their inner body, which is contained in the set.
    pub fn verify_margin(&self, body: &ConvexBody) -> Result<CertificateCheck> {
        let body = match body {
            ConvexBody::Sandwich(s) => s.inner(),
            b => b,
        };
        let m = body.interior_margin(&self.center)?;
        Ok(CertificateCheck {
            passed: m >= self.radius - CERTIFICATE_SLACK,
            method: CheckMethod::Margin,
            value: m,
        })
    }

    /// Samples `samples` points of `B̄(center, radius·(1 − 1e−6))`, half of
    /// them on the bounding sphere, and fails if any lies outside the body.
    pub fn verify_sampling(
        &self,
        body: &ConvexBody,
        samples: usize,
        rng: &mut impl Rng,
    ) -> Result<CertificateCheck> {
        let body = match body {
            ConvexBody::Sandwich(s) => s.inner(),
            b => b,
        };
        let r = self.radius * (1.0 - SAMPLING_SHRINK);
        let mut worst = 0.0_f64;
        for k in 0..samples {
            let p = if k % 2 == 0 {
                sample::on_sphere(&self.center, r, rng)
            } else {
                sample::in_ball(&self.center, r, rng)
            };
            worst = worst.max(body.distance(&p, ANALYTIC_TOL)?);
        }
        Ok(CertificateCheck { passed: worst <= CERTIFICATE_SLACK, method: CheckMethod::Sampling, value: worst })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::HPolytope;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_certificates() {
        let sq: ConvexBody = HPolytope::unit_cube(2).into();
        let c = Vector::new(vec![0.5, 0.5]).unwrap();
        let good = BallCertificate::new(c.clone(), 0.5);
        assert!(good.verify_margin(&sq).unwrap().passed);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(good.verify_sampling(&sq, 1000, &mut rng).unwrap().passed);
        let bad = good.inflated(1.05);
        assert!(!bad.verify_margin(&sq).unwrap().passed);
        assert!(!bad.verify_sampling(&sq, 1000, &mut rng).unwrap().passed);
    }
}
