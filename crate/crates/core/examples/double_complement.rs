// Metric complement and double complement membership, including a set
// known only through inner and outer bounds.

use metric_complements::bodies::{Ball, ConvexBody, HPolytope, SandwichSet, VPolytope};
use metric_complements::complements::{
    double_complement_membership, metric_complement_witness, sandwich_double_complement,
};
use metric_complements::linalg::Vector;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let disc: ConvexBody = Ball::closed(Vector::zeros(2), 1.0)?.into();
    for (x, r) in [([3.0, 0.0], 1.0), ([1.0005, 0.0], 0.01), ([1.2, 0.0], 0.1)] {
        let x = Vector::new(x.to_vec())?;
        match metric_complement_witness(&disc, &x, r)? {
            Some(sep) => println!("{x} is in the metric complement at scale {r}: every point of the disc is {sep:.4} away"),
            None => println!("{x} is not certified in the metric complement at scale {r}"),
        }
    }

    // For a located convex body the double complement is the interior.
    let segment: ConvexBody = VPolytope::new(vec![Vector::zeros(2), Vector::new(vec![2.0, 0.0])?])?.into();
    for (name, body) in [("disc", &disc), ("segment", &segment)] {
        for x in [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [2.0, 0.0]] {
            let x = Vector::new(x.to_vec())?;
            let v = double_complement_membership(body, &x, 1e-9)?;
            println!("{name:<8} {x}: {:?} (margin {:.6})", v.status, v.margin);
        }
    }

    // K is only known to lie between [0, 1] and [0, 2], with [0, 2] meeting no
    // point outside K. The double complement is then the open interval (0, 2).
    let sandwich = SandwichSet::new(
        HPolytope::interval(0.0, 1.0)?.into(),
        HPolytope::interval(0.0, 2.0)?.into(),
        true,
    )?;
    for x in [-0.5, 0.0, 0.5, 1.5, 2.0, 2.5] {
        let v = sandwich_double_complement(&sandwich, &Vector::new(vec![x])?, 1e-9)?;
        println!("sandwich {x:>4}: {:?}", v.status);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
