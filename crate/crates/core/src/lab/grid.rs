//! Brute-force grid referee for `−S` and `−(−S)`.

use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Most grid points a single oracle may hold.
pub const MAX_GRID_POINTS: u128 = 10_000_000;

/// Highest dimension a grid is built in.
pub const MAX_GRID_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    /// Distance to the body at most `step/10`.
    InS,
    /// Distance to the body at least `eps`.
    InMinusS,
    Neither,
}

/// Labelled axis-aligned grid over a box.
#[derive(Clone, Debug)]
pub struct GridOracle {
    lo: Vector,
    hi: Vector,
    step: f64,
    eps: f64,
    counts: Vec<usize>,
    labels: Vec<Label>,
    minus_count: usize,
    warnings: Vec<String>,
}

/// The body whose distance defines `−K`. A sandwich set with the density
/// contract has the same metric complement as its outer body.
fn located_body(body: &ConvexBody) -> Result<&ConvexBody> {
    match body {
        ConvexBody::Sandwich(s) if s.outer_dense() => Ok(s.outer()),
        ConvexBody::Sandwich(_) => Err(Error::PreconditionFailed(
            "sandwich without the density contract has no computable complement".into(),
        )),
        b => Ok(b),
    }
}

/// Axis counts for a grid over `[lo, hi]` at spacing `step`.
fn axis_counts(lo: &Vector, hi: &Vector, step: f64) -> Result<(Vec<usize>, u128)> {
    let mut counts = Vec::with_capacity(lo.dim());
    let mut total: u128 = 1;
    for j in 0..lo.dim() {
        let span = hi[j] - lo[j];
        if !(span >= 0.0) {
            return Err(Error::InvalidArgument(format!("empty box along axis {j}")));
        }
        let c = (span / step + 1e-9).floor() + 1.0;
        if c > MAX_GRID_POINTS as f64 {
            return Err(Error::GridTooLarge { points: u128::MAX, limit: MAX_GRID_POINTS });
        }
        counts.push(c as usize);
        total = total.saturating_mul(c as u128);
    }
    Ok((counts, total))
}

impl GridOracle {
    /// Labels every point `lo + step·k` inside the box `bbox`.
    ///
    /// `eps < 2·step` is accepted but recorded as a warning.
    pub fn build(body: &ConvexBody, bbox: (Vector, Vector), step: f64, eps: f64) -> Result<Self> {
        let (lo, hi) = bbox;
        let n = body.dim();
        lo.check_dim(n)?;
        hi.check_dim(n)?;
        if n > MAX_GRID_DIM {
            return Err(Error::InvalidArgument(format!(
                "grids are limited to dimension {MAX_GRID_DIM}, got {n}"
            )));
        }
        if !(step > 0.0 && step.is_finite()) || !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step and eps must be positive, got {step} and {eps}"
            )));
        }
        let (counts, total) = axis_counts(&lo, &hi, step)?;
        if total > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge { points: total, limit: MAX_GRID_POINTS });
        }
        let mut warnings = Vec::new();
        if eps < 2.0 * step {
            warnings.push(format!("eps = {eps} is below 2*step = {}", 2.0 * step));
        }
        let body = located_body(body)?;
        let in_s = step / 10.0;
        let tol = step * 1e-3;
        let mut labels = Vec::with_capacity(total as usize);
        let mut minus_count = 0;
        let mut idx = vec![0usize; n];
        let mut p = lo.clone();
        for _ in 0..total {
            for j in 0..n {
                p[j] = lo[j] + step * idx[j] as f64;
            }
            let label = if body.distance_lower_bound(&p) >= eps {
                Label::InMinusS
            } else {
                let d = body.distance(&p, tol)?;
                if d <= in_s {
                    Label::InS
                } else if d >= eps {
                    Label::InMinusS
                } else {
                    Label::Neither
                }
            };
            minus_count += usize::from(label == Label::InMinusS);
            labels.push(label);
            // Odometer increment, last axis fastest.
            for j in (0..n).rev() {
                idx[j] += 1;
                if idx[j] < counts[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        Ok(GridOracle { lo, hi, step, eps, counts, labels, minus_count, warnings })
    }

    /// `bounds` padded by `pad` on every side.
    pub fn padded_box(bounds: &(Vector, Vector), pad: f64) -> (Vector, Vector) {
        let n = bounds.0.dim();
        let lo = Vector::new((0..n).map(|j| bounds.0[j] - pad).collect()).expect("finite box");
        let hi = Vector::new((0..n).map(|j| bounds.1[j] + pad).collect()).expect("finite box");
        (lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn bbox(&self) -> (&Vector, &Vector) {
        (&self.lo, &self.hi)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn minus_count(&self) -> usize {
        self.minus_count
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.counts).fold(0, |acc, (i, c)| acc * c + i)
    }

    fn point(&self, idx: &[usize]) -> Vector {
        Vector::from_raw((0..self.dim()).map(|j| self.lo[j] + self.step * idx[j] as f64).collect())
    }

    /// Grid points with their labels, in storage order.
    pub fn points(&self) -> impl Iterator<Item = (Vector, Label)> + '_ {
        let n = self.dim();
        (0..self.labels.len()).map(move |mut flat| {
            let mut idx = vec![0; n];
            for j in (0..n).rev() {
                idx[j] = flat % self.counts[j];
                flat /= self.counts[j];
            }
            (self.point(&idx), self.labels[self.flat(&idx)])
        })
    }

    /// Label of the grid point nearest to `x`, if `x` lies in the box.
    pub fn label_at(&self, x: &Vector) -> Option<Label> {
        let idx = self.nearest_index(x)?;
        Some(self.labels[self.flat(&idx)])
    }

    fn nearest_index(&self, x: &Vector) -> Option<Vec<usize>> {
        if x.dim() != self.dim() || !self.in_box(x) {
            return None;
        }
        Some(
            (0..self.dim())
                .map(|j| (((x[j] - self.lo[j]) / self.step).round() as usize).min(self.counts[j] - 1))
                .collect(),
        )
    }

    fn in_box(&self, x: &Vector) -> bool {
        (0..self.dim()).all(|j| x[j] >= self.lo[j] && x[j] <= self.hi[j])
    }

    /// Smallest distance from `x` to an `InMinusS` grid point, or `None` if
    /// none lies within `reach`.
    pub fn distance_to_complement(&self, x: &Vector, reach: f64) -> Result<Option<f64>> {
        x.check_dim(self.dim())?;
        let n = self.dim();
        let mut ranges = Vec::with_capacity(n);
        for j in 0..n {
            let a = ((x[j] - reach - self.lo[j]) / self.step).floor().max(0.0);
            let b = ((x[j] + reach - self.lo[j]) / self.step).ceil().min(self.counts[j] as f64 - 1.0);
            if b < a {
                return Ok(None);
            }
            ranges.push((a as usize, b as usize));
        }
        let mut best = f64::INFINITY;
        let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            if self.labels[self.flat(&idx)] == Label::InMinusS {
                let d = (0..n)
                    .map(|j| (self.lo[j] + self.step * idx[j] as f64 - x[j]).powi(2))
                    .sum::<f64>()
                    .sqrt();
                best = best.min(d);
            }
            for j in (0..n).rev() {
                idx[j] += 1;
                if idx[j] <= ranges[j].1 {
                    continue 'scan;
                }
                idx[j] = ranges[j].0;
            }
            break;
        }
        Ok((best <= reach).then_some(best))
    }

    /// Definitional `x ∈ −(−S)` at resolution: every `InMinusS` grid point is
    /// at distance at least `margin` from `x`.
    ///
    /// Points outside the grid box are reported `false`; the box is meant to
    /// cover the body with room to spare, so such points sit next to `−S`.
    /// Fails with [`Error::EmptyComplementSample`] when no grid point is
    /// labelled `InMinusS`.
    pub fn double_complement(&self, x: &Vector, margin: f64) -> Result<bool> {
        x.check_dim(self.dim())?;
        if !(margin > 0.0) {
            return Err(Error::InvalidArgument(format!("margin must be positive, got {margin}")));
        }
        if self.minus_count == 0 {
            return Err(Error::EmptyComplementSample);
        }
        if !self.in_box(x) {
            return Ok(false);
        }
        Ok(match self.distance_to_complement(x, margin)? {
            Some(d) => d >= margin,
            None => true,
        })
    }

    /// Definitional `x ∈ −S`: the nearest grid point is labelled `InMinusS`.
    pub fn metric_complement(&self, x: &Vector) -> Option<bool> {
        self.label_at(x).map(|l| l == Label::InMinusS)
    }
}

/// Free-function form of [`GridOracle::build`].
pub fn build_grid_oracle(
    body: &ConvexBody,
    bbox: (Vector, Vector),
    step: f64,
    eps: f64,
) -> Result<GridOracle> {
    GridOracle::build(body, bbox, step, eps)
}

/// Free-function form of [`GridOracle::double_complement`].
pub fn oracle_double_complement(g: &GridOracle, x: &Vector, margin: f64) -> Result<bool> {
    g.double_complement(x, margin)
}
