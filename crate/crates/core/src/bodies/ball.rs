use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Euclidean ball `B(center, radius)`, open or closed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    center: Vector,
    radius: f64,
    closed: bool,
}

impl Ball {
    pub fn new(center: Vector, radius: f64, closed: bool) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius, closed })
    }

    pub fn closed(center: Vector, radius: f64) -> Result<Self> {
        Ball::new(center, radius, true)
    }

    pub fn open(center: Vector, radius: f64) -> Result<Self> {
        Ball::new(center, radius, false)
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Nearest point of the closed ball.
    pub fn project(&self, x: &Vector) -> Vector {
        let d = x - &self.center;
        let n = d.norm();
        if n <= self.radius {
            x.clone()
        } else {
            let mut p = self.center.clone();
            p.axpy(self.radius / n, &d);
            p
        }
    }

    pub fn distance(&self, x: &Vector) -> f64 {
        (x.dist(&self.center) - self.radius).max(0.0)
    }

    /// `radius − ‖x − center‖`: positive inside, minus the distance outside.
    pub fn interior_margin(&self, x: &Vector) -> f64 {
        self.radius - x.dist(&self.center)
    }

    pub fn translated(&self, a: &Vector) -> Ball {
        Ball { center: &self.center - a, radius: self.radius, closed: self.closed }
    }

    pub fn closure(&self) -> Ball {
        Ball { closed: true, ..self.clone() }
    }
}
