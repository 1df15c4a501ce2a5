use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ConvexBody;
use crate::error::{Error, Result};
use crate::tolerance::ANALYTIC_TOL;

const CONTRACT_SAMPLES: usize = 256;
const CONTRACT_SEED: u64 = 0x5a4d_0001;

/// A convex set `K` known only through bounds `inner ⊆ K ⊆ outer`.
///
/// With `outer_dense` set, the caller also asserts that no point of `outer`
/// is provably outside `K` (`outer ∩ ¬K = ∅`). Then the metric double
/// complement of `K` is the interior of `outer`, computable without ever
/// deciding membership in `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichSet {
    inner: ConvexBody,
    outer: ConvexBody,
    outer_dense: bool,
}

impl SandwichSet {
    /// Builds the sandwich after spot-checking `inner ⊆ outer` on seeded
    /// samples of `inner`.
    pub fn new(inner: ConvexBody, outer: ConvexBody, outer_dense: bool) -> Result<Self> {
        if inner.dim() != outer.dim() {
            return Err(Error::DimensionMismatch { expected: outer.dim(), found: inner.dim() });
        }
        if matches!(outer, ConvexBody::Sandwich(_)) || matches!(inner, ConvexBody::Sandwich(_)) {
            return Err(Error::InvalidArgument("sandwich bounds must be located bodies".into()));
        }
        let s = SandwichSet { inner, outer, outer_dense };
        let mut rng = ChaCha8Rng::seed_from_u64(CONTRACT_SEED);
        s.check_inclusion(CONTRACT_SAMPLES, &mut rng)?;
        Ok(s)
    }

    pub fn inner(&self) -> &ConvexBody {
        &self.inner
    }

    pub fn outer(&self) -> &ConvexBody {
        &self.outer
    }

    pub fn outer_dense(&self) -> bool {
        self.outer_dense
    }

    pub fn dim(&self) -> usize {
        self.outer.dim()
    }

    /// Samples `inner` and fails with `ContractViolation` on the first sample
    /// that lies outside `outer`.
    pub fn check_inclusion(&self, samples: usize, rng: &mut impl rand::Rng) -> Result<()> {
        for p in self.inner.sample(samples, rng)? {
            let d = self.outer.distance(&p, ANALYTIC_TOL)?;
            if d > 1e-7 {
                return Err(Error::ContractViolation(format!(
                    "inner sample {p} lies {d:e} outside the outer body"
                )));
            }
        }
        Ok(())
    }

    pub fn translated(&self, a: &crate::linalg::Vector) -> SandwichSet {
        SandwichSet {
            inner: self.inner.translate(a),
            outer: self.outer.translate(a),
            outer_dense: self.outer_dense,
        }
    }
}
