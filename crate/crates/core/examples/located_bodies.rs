// Balls, H-polytopes and V-polytopes as located sets: projections,
// distances, interior margins and inscribed balls.

use metric_complements::bodies::{Ball, ConvexBody, HPolytope, VPolytope};
use metric_complements::linalg::{Hyperplane, Vector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let triangle: ConvexBody = HPolytope::new(
        vec![
            Hyperplane::new(Vector::new(vec![-1.0, 0.0])?, 0.0)?,
            Hyperplane::new(Vector::new(vec![0.0, -1.0])?, 0.0)?,
            Hyperplane::new(Vector::new(vec![1.0, 1.0])?, 1.0)?,
        ],
        true,
    )?
    .into();
    let hull: ConvexBody = VPolytope::new(vec![
        Vector::new(vec![0.0, 0.0])?,
        Vector::new(vec![1.0, 0.0])?,
        Vector::new(vec![0.0, 1.0])?,
        Vector::new(vec![0.2, 0.2])?,
    ])?
    .into();
    let disc: ConvexBody = Ball::closed(Vector::new(vec![0.3, 0.3])?, 0.25)?.into();

    let x = Vector::new(vec![1.0, 1.0])?;
    for body in [&triangle, &hull, &disc] {
        let p = body.project(&x, 1e-12)?;
        let cheb = body.chebyshev_ball()?;
        println!(
            "{:<10} nearest point to {x} is {p}, distance {:.6}; inscribed ball at {} radius {:.6}",
            body.kind(),
            body.distance(&x, 1e-12)?,
            cheb.center(),
            cheb.radius(),
        );
        assert!((body.distance(&x, 1e-12)? - x.dist(&p)).abs() < 1e-9);
    }

    // Both descriptions of the triangle agree on margins, inside and out.
    for c in [[0.2, 0.2], [0.5, 0.5], [0.9, 0.9], [-0.5, 0.3]] {
        let c = Vector::new(c.to_vec())?;
        let (a, b) = (triangle.interior_margin(&c)?, hull.interior_margin(&c)?);
        println!("interior margin at {c}: {a:+.6} (facets) {b:+.6} (generators)");
        assert!((a - b).abs() < 1e-6);
    }

    // Shape files are plain JSON.
    let text = triangle.to_json();
    assert_eq!(ConvexBody::from_json(&text)?, triangle);
    println!("{text}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
