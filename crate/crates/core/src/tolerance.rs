//! Shared numerical tolerances.

/// Default tolerance for bodies with closed-form distance and margin (balls,
/// facet margins of polytopes).
pub const ANALYTIC_TOL: f64 = 1e-9;

/// Default tolerance for iterative projections (Dykstra, minimum-norm point).
pub const ITERATIVE_TOL: f64 = 1e-7;

/// Iteration cap for the iterative projections.
pub const MAX_ITERATIONS: usize = 100_000;

/// Slack allowed when a certificate radius is checked against an exact margin.
pub const CERTIFICATE_SLACK: f64 = 1e-9;

/// Relative shrink applied to radii before sampling-based containment checks.
pub const SAMPLING_SHRINK: f64 = 1e-6;

/// Number of samples used by sampling-based containment checks.
pub const SAMPLING_POINTS: usize = 1_000;
