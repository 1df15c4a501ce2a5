//! Random points in balls, on spheres and in bodies.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::Vector;

/// Uniform direction on the unit sphere of Rⁿ.
pub fn unit_direction(dim: usize, rng: &mut impl Rng) -> Vector {
    loop {
        let g: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        if let Some(u) = Vector::from_raw(g).normalized() {
            return u;
        }
    }
}

/// Uniform point on the sphere of radius `radius` about `center`.
pub fn on_sphere(center: &Vector, radius: f64, rng: &mut impl Rng) -> Vector {
    let mut p = center.clone();
    p.axpy(radius, &unit_direction(center.dim(), rng));
    p
}

/// Uniform point in the closed ball `B̄(center, radius)`.
pub fn in_ball(center: &Vector, radius: f64, rng: &mut impl Rng) -> Vector {
    let n = center.dim();
    let r = radius * rng.gen::<f64>().powf(1.0 / n as f64);
    let mut p = center.clone();
    p.axpy(r, &unit_direction(n, rng));
    p
}

/// Uniform point in the axis-aligned box `[lo, hi]`.
pub fn in_box(lo: &Vector, hi: &Vector, rng: &mut impl Rng) -> Vector {
    Vector::from_raw(
        lo.coords()
            .iter()
            .zip(hi.coords())
            .map(|(&a, &b)| if b > a { rng.gen_range(a..=b) } else { a })
            .collect(),
    )
}

/// Flat-Dirichlet weights summing to one.
pub fn simplex_weights(k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    w
}
