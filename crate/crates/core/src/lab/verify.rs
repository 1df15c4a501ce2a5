//! Verification campaigns: the grid oracle against the operational answers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::GridOracle;
use crate::bodies::{sample, ConvexBody, Status};
use crate::complements::double_complement_membership;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::simplex::{perturbation_tolerance, regular_simplex};
use crate::tolerance::ANALYTIC_TOL;
use crate::witnesses::simplex_interior_witness;

/// Margin around the body's bounding box from which sample points are drawn.
pub const SAMPLE_PAD: f64 = 0.25;

/// Most violations listed individually in a report.
pub const MAX_LISTED_VIOLATIONS: usize = 50;

/// Target size of the pool of passing points in the convexity campaign.
const CONVEX_POOL: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `−(−K)` equals the interior of a located convex body.
    LocatedInterior,
    /// `−(−K)` is convex.
    DoubleComplementConvex,
    /// The closure of `K` has the same interior as `K`.
    ClosureInterior,
    /// A body without interior has empty double complement.
    DegenerateEmpty,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::LocatedInterior,
        Theorem::DoubleComplementConvex,
        Theorem::ClosureInterior,
        Theorem::DegenerateEmpty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::LocatedInterior => "located-interior",
            Theorem::DoubleComplementConvex => "double-complement-convex",
            Theorem::ClosureInterior => "closure-interior",
            Theorem::DegenerateEmpty => "degenerate-empty",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem {s:?}")))
    }
}

/// Grid resolution and complement threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub step: f64,
    pub eps: f64,
}

impl GridParams {
    /// `eps` defaults to `2·step`.
    pub fn new(step: f64, eps: Option<f64>) -> Self {
        GridParams { step, eps: eps.unwrap_or(2.0 * step) }
    }

    /// Width of the boundary band excluded from comparisons.
    pub fn band(&self) -> f64 {
        2.0 * self.step
    }

    /// Margin at which the oracle's double complement is queried.
    ///
    /// An interior point at depth `ρ` is at least `ρ + eps` from every
    /// `InMinusS` grid point. A point at distance `δ ≥ 0` from the body has
    /// an `InMinusS` grid point within `eps − δ + step·√n`, which is below
    /// `eps + 2·step` for `n ≤ 3`.
    pub fn decision_margin(&self) -> f64 {
        self.eps + 2.0 * self.step
    }

    /// Grid box for a body whose samples come from `sample_box`.
    pub fn grid_box(&self, sample_box: &(Vector, Vector)) -> (Vector, Vector) {
        GridOracle::padded_box(sample_box, self.eps + 4.0 * self.step)
    }
}

/// Grid description carried by a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub lo: Vector,
    pub hi: Vector,
    pub step: f64,
    pub eps: f64,
    pub margin: f64,
    pub points: usize,
    pub complement_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub point: Vector,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub body: ConvexBody,
    pub grid: GridSummary,
    pub samples: usize,
    pub evaluated: usize,
    pub excluded: usize,
    /// Fraction of evaluated points on which both sides agree.
    pub agreement: f64,
    pub band: f64,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
    pub passed: bool,
    pub seed: u64,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} (dim {}): {} | agreement {:.4}% over {} points, {} in band, {} violations, {:.2}s",
            self.theorem,
            self.body.kind(),
            self.body.dim(),
            if self.passed { "PASS" } else { "FAIL" },
            100.0 * self.agreement,
            self.evaluated,
            self.excluded,
            self.violation_count,
            self.wall_time_secs,
        )
    }
}

struct Tally {
    evaluated: usize,
    agreed: usize,
    excluded: usize,
    violation_count: usize,
    violations: Vec<Violation>,
    warnings: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            evaluated: 0,
            agreed: 0,
            excluded: 0,
            violation_count: 0,
            violations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, point: &Vector, detail: impl FnOnce() -> String) {
        self.evaluated += 1;
        if ok {
            self.agreed += 1;
        } else {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(Violation { point: point.clone(), detail: detail() });
            }
        }
    }

    fn warn(&mut self, msg: String) {
        if !self.warnings.contains(&msg) {
            self.warnings.push(msg);
        }
    }
}

/// Oracle query that reads an empty complement sample as vacuously true.
fn oracle_query(g: &GridOracle, x: &Vector, margin: f64, tally: &mut Tally) -> Result<bool> {
    match g.double_complement(x, margin) {
        Err(Error::EmptyComplementSample) => {
            tally.warn(
                "no grid point is bounded away from the body: the complement may be empty \
                 or the box too small; oracle answers are vacuous"
                    .into(),
            );
            Ok(true)
        }
        other => other,
    }
}

/// Signed interior margin behind the operational double complement.
fn operational_margin(body: &ConvexBody, x: &Vector) -> Result<f64> {
    let v = double_complement_membership(body, x, ANALYTIC_TOL)?;
    Ok(if v.is_outside() { -v.margin } else { v.margin })
}

/// Runs one campaign of `samples` seeded trials.
///
/// * `located-interior`: oracle verdict vs sign of the interior margin for
///   points drawn around the body, skipping the boundary band.
/// * `double-complement-convex`: midpoints of pairs of oracle-passing
///   points must pass at the margin lowered by the band.
/// * `closure-interior`: the oracle on the closure vs the interior margin of
///   the body itself, with every oracle-interior point also certified by
///   the simplex construction.
/// * `degenerate-empty`: no sampled point, on or around the body, passes
///   the oracle or has positive interior margin.
pub fn verify_theorem(
    theorem: Theorem,
    body: &ConvexBody,
    params: GridParams,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let sample_box = GridOracle::padded_box(&body.bounding_box()?, SAMPLE_PAD);
    let grid_body = match theorem {
        Theorem::ClosureInterior => body.closure(),
        _ => body.clone(),
    };
    let oracle = GridOracle::build(&grid_body, params.grid_box(&sample_box), params.step, params.eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for w in oracle.warnings() {
        tally.warn(w.clone());
    }
    let margin = params.decision_margin();
    let band = params.band();

    match theorem {
        Theorem::LocatedInterior => {
            for _ in 0..samples {
                let x = sample::in_box(&sample_box.0, &sample_box.1, &mut rng);
                let m = operational_margin(body, &x)?;
                if m.abs() < band {
                    tally.excluded += 1;
                    continue;
                }
                let grid = oracle_query(&oracle, &x, margin, &mut tally)?;
                tally.record(grid == (m > 0.0), &x, || {
                    format!("oracle says {grid}, interior margin {m:.6}")
                });
            }
        }
        Theorem::DoubleComplementConvex => {
            let mut pool = Vec::with_capacity(CONVEX_POOL);
            let inside = body.sample(CONVEX_POOL * 10, &mut rng).unwrap_or_default();
            for x in inside {
                if pool.len() >= CONVEX_POOL {
                    break;
                }
                if oracle_query(&oracle, &x, margin, &mut tally)? {
                    pool.push(x);
                }
            }
            if pool.len() < 2 {
                tally.warn(format!("only {} oracle-interior points found; no pairs tested", pool.len()));
            } else {
                for _ in 0..samples {
                    let i = rng.gen_range(0..pool.len());
                    let mut j = rng.gen_range(0..pool.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    let mid = pool[i].lerp(&pool[j], 0.5);
                    let ok = oracle_query(&oracle, &mid, margin - band, &mut tally)?;
                    let (a, b) = (&pool[i], &pool[j]);
                    tally.record(ok, &mid, || format!("midpoint of {a} and {b} fails the oracle"));
                }
            }
        }
        Theorem::ClosureInterior => {
            let n = body.dim();
            let mut unit_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);
            let unit_delta =
                perturbation_tolerance(&regular_simplex(n)?, &Vector::zeros(n), 1000, &mut unit_rng)?.delta;
            let cheb = body.chebyshev_ball()?;
            let r0 = 0.999 * cheb.radius();
            for _ in 0..samples {
                let x = sample::in_box(&sample_box.0, &sample_box.1, &mut rng);
                let m = operational_margin(&grid_body, &x)?;
                if m.abs() < band {
                    tally.excluded += 1;
                    continue;
                }
                let closed = oracle_query(&oracle, &x, margin, &mut tally)?;
                let open = double_complement_membership(body, &x, ANALYTIC_TOL)?.status == Status::Inside;
                if closed != open {
                    tally.record(false, &x, || format!("closure oracle {closed}, body interior {open}"));
                    continue;
                }
                if closed {
                    let cert = simplex_interior_witness(body, cheb.center(), r0, &x, m / 3.0, unit_delta);
                    tally.record(cert.is_ok(), &x, || format!("simplex certificate failed: {cert:?}"));
                } else {
                    tally.record(true, &x, String::new);
                }
            }
        }
        Theorem::DegenerateEmpty => {
            let on_body = body.sample(samples / 2, &mut rng)?;
            let around = (0..samples - on_body.len())
                .map(|_| sample::in_box(&sample_box.0, &sample_box.1, &mut rng))
                .collect::<Vec<_>>();
            for x in on_body.iter().chain(&around) {
                let grid = oracle_query(&oracle, x, margin, &mut tally)?;
                let m = operational_margin(body, x)?;
                tally.record(!grid && m <= ANALYTIC_TOL, x, || {
                    format!("oracle says {grid}, interior margin {m:e}")
                });
            }
        }
    }

    let agreement = if tally.evaluated == 0 {
        tally.warn("no points evaluated".into());
        1.0
    } else {
        tally.agreed as f64 / tally.evaluated as f64
    };
    let (lo, hi) = oracle.bbox();
    Ok(VerificationReport {
        theorem,
        body: body.clone(),
        grid: GridSummary {
            lo: lo.clone(),
            hi: hi.clone(),
            step: params.step,
            eps: params.eps,
            margin,
            points: oracle.len(),
            complement_points: oracle.minus_count(),
        },
        samples,
        evaluated: tally.evaluated,
        excluded: tally.excluded,
        agreement,
        band,
        violation_count: tally.violation_count,
        passed: tally.violation_count == 0,
        violations: tally.violations,
        warnings: tally.warnings,
        seed,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}
