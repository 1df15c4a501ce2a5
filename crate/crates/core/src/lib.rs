//! Metric complements of convex bodies in Euclidean space.
//!
//! The metric complement `−S` of a set is the set of points bounded away
//! from it; the metric double complement `−(−S)` is what remains bounded away
//! from that. For a located convex body `K` in Rⁿ the double complement is
//! exactly the interior `K°`, which turns a definition quantifying over all
//! of `−K` into a margin computation.
//!
//! The crate is organized around that reduction:
//!
//! - [`linalg`]: vectors, hyperplanes, dense solves, barycentric coordinates.
//! - [`bodies`]: balls, H-/V-polytopes and sandwich sets with distance,
//!   projection and interior-margin queries.
//! - [`complements`]: metric complement and double-complement membership.
//! - [`witnesses`]: explicit points and certified interior radii for the
//!   segment, density and closure constructions on convex sets.
//! - [`simplex`]: regular simplices, barycentre inradius and perturbation
//!   tolerances.
//! - [`lab`]: the brute-force grid referee, random bodies and verification
//!   campaigns.

pub mod bodies;
pub mod complements;
pub mod error;
pub mod lab;
pub mod linalg;
mod lp;
pub mod simplex;
pub mod tolerance;
pub mod witnesses;

pub use bodies::{Ball, BallCertificate, ConvexBody, HPolytope, MembershipVerdict, SandwichSet, Status, VPolytope};
pub use error::{Error, Result};
pub use linalg::{BarycentricCoords, Hyperplane, Matrix, Vector};
