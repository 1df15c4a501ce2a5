//! Seeded test-instance generation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{sample, Ball, ConvexBody, HPolytope, VPolytope};
use crate::error::{Error, Result};
use crate::linalg::{Hyperplane, Vector};
use crate::simplex::scaled_simplex;

/// Every generated body contains a ball of at least this radius.
pub const MIN_INRADIUS: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Hpolytope,
    Vpolytope,
    Ball,
}

impl BodyKind {
    pub const ALL: [BodyKind; 3] = [BodyKind::Hpolytope, BodyKind::Vpolytope, BodyKind::Ball];
}

impl fmt::Display for BodyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BodyKind::Hpolytope => "hpolytope",
            BodyKind::Vpolytope => "vpolytope",
            BodyKind::Ball => "ball",
        })
    }
}

impl FromStr for BodyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hpolytope" => Ok(BodyKind::Hpolytope),
            "vpolytope" => Ok(BodyKind::Vpolytope),
            "ball" => Ok(BodyKind::Ball),
            _ => Err(Error::InvalidArgument(format!("unknown body kind {s:?}"))),
        }
    }
}

fn centre(dim: usize, rng: &mut impl Rng) -> Vector {
    Vector::from_raw((0..dim).map(|_| rng.gen_range(-0.5..=0.5)).collect())
}

/// A reproducible random body with inhabited interior.
///
/// * `ball`: centre in `[−½, ½]ⁿ`, radius in `[0.1, 1]`.
/// * `hpolytope`: `complexity` half-spaces tangent to a random axis-aligned
///   ellipsoid (semi-axes in `[0.3, 1]`) plus its tangent bounding box.
/// * `vpolytope`: a regular simplex of circumradius `0.1·n` about the centre
///   plus `complexity` points of the unit ball about the centre.
pub fn random_body(kind: BodyKind, dim: usize, complexity: usize, seed: u64) -> Result<ConvexBody> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = centre(dim, &mut rng);
    Ok(match kind {
        BodyKind::Ball => Ball::closed(c, rng.gen_range(0.1..=1.0))?.into(),
        BodyKind::Hpolytope => {
            let axes: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.3..=1.0)).collect();
            let mut facets = Vec::with_capacity(complexity + 2 * dim);
            for j in 0..dim {
                let e = Vector::basis(dim, j);
                facets.push(Hyperplane::new(e.clone(), c[j] + axes[j])?);
                facets.push(Hyperplane::new(-&e, -(c[j] - axes[j]))?);
            }
            for _ in 0..complexity {
                let u = sample::unit_direction(dim, &mut rng);
                let support = (0..dim).map(|j| (axes[j] * u[j]).powi(2)).sum::<f64>().sqrt();
                let offset = u.dot(&c) + support;
                facets.push(Hyperplane::new(u, offset)?);
            }
            HPolytope::new(facets, true)?.into()
        }
        BodyKind::Vpolytope => {
            let core = scaled_simplex(&c, 0.1 * dim as f64, dim)?;
            let mut gens = core.vertices().to_vec();
            for _ in 0..complexity {
                gens.push(sample::in_ball(&c, 1.0, &mut rng));
            }
            VPolytope::new(gens)?.into()
        }
    })
}

/// A reproducible body with empty interior: `complexity.max(2)` points on a
/// random hyperplane through a point of `[−½, ½]ⁿ`, spread over radius 1.
/// In the plane this is a segment, in space a flat polygon.
pub fn random_flat_body(dim: usize, complexity: usize, seed: u64) -> Result<ConvexBody> {
    if dim < 2 {
        return Err(Error::InvalidArgument("a flat body needs dimension at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = centre(dim, &mut rng);
    let normal = sample::unit_direction(dim, &mut rng);
    let gens = (0..complexity.max(2))
        .map(|_| {
            let p = sample::in_ball(&Vector::zeros(dim), 1.0, &mut rng);
            let along = &p - &normal.scale(p.dot(&normal));
            &c + &along
        })
        .collect();
    Ok(VPolytope::new(gens)?.into())
}
