// Witness constructions: every returned point carries a ball certificate
// that has already been checked against the body.

use metric_complements::bodies::{Ball, ConvexBody, HPolytope};
use metric_complements::linalg::Vector;
use metric_complements::simplex::{perturbation_tolerance, regular_simplex};
use metric_complements::witnesses::{
    ball_transport, closure_interior_witness, density_witness, segment_interior, segment_interior_ball,
    simplex_interior_witness,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = |c: &[f64]| Vector::new(c.to_vec());

    let (xi, eta) = ball_transport(&v(&[0.0, 0.0])?, &v(&[2.0, 0.0])?, 0.5, 1.0, &v(&[1.0, 0.5])?)?;
    println!("transport: (1, 0.5) = 0.5 * {xi} + 0.5 * {eta}");

    let square: ConvexBody = HPolytope::unit_cube(2).into();
    let centre = v(&[0.5, 0.5])?;
    let w = segment_interior_ball(&square, &centre, 0.5, &v(&[1.0, 0.5])?, 0.5)?;
    println!("segment ball: B({}, {}) lies in the square", w.z, w.certificate.radius());

    let w = density_witness(&square, &centre, 0.5, &v(&[1.0, 1.0])?, 0.1)?;
    println!(
        "density: {} is interior, {:.3} from the corner, radius {:.4}",
        w.z,
        w.z.dist(&v(&[1.0, 1.0])?),
        w.certificate.radius()
    );

    let disc: ConvexBody = Ball::closed(Vector::zeros(2), 1.0)?.into();
    for lambda in [0.0, 0.5, 0.9, 0.99] {
        let w = segment_interior(&disc, &Vector::zeros(2), 1.0, &v(&[1.0, 0.0])?, lambda)?;
        println!("half-open segment at lambda {lambda}: radius {:.6}", w.certificate.radius());
    }

    let w = closure_interior_witness(&disc, &Vector::zeros(2), 1.0, &v(&[0.5, 0.0])?, 0.5)?;
    println!("closure: {} is interior with radius {:.6}", w.z, w.certificate.radius());

    // The same conclusion through a small simplex whose vertices are pulled
    // into the interior of an open disc.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let unit = perturbation_tolerance(&regular_simplex(2)?, &Vector::zeros(2), 2000, &mut rng)?.delta;
    let open: ConvexBody = Ball::open(Vector::zeros(2), 1.0)?.into();
    let s = simplex_interior_witness(&open, &Vector::zeros(2), 0.999, &v(&[0.7, 0.0])?, 0.1, unit)?;
    println!("simplex route: barycentric weights {:?}", s.weights);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
