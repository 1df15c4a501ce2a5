// Regular simplices, interiority of the barycentre, and how far the
// vertices may move before the barycentre escapes.

use metric_complements::linalg::Vector;
use metric_complements::simplex::{
    inradius_at, perturbation_tolerance, random_perturbation_trials, regular_simplex, SimplexReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "n", "inradius", "1/n", "delta", "min weight");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [1, 2, 3, 5, 8, 16] {
        let s = regular_simplex(n)?;
        let c = Vector::zeros(n);
        let report = SimplexReport::new(&c, 1.0)?;
        assert!(report.passes(1e-9));
        let p = perturbation_tolerance(&s, &c, 2000, &mut rng)?;
        let check = random_perturbation_trials(&s, &c, p.delta * (1.0 - 1e-3), 2000, &mut rng);
        assert_eq!(check.failures(), 0);
        println!(
            "{n:>3} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            inradius_at(&s, &c)?,
            1.0 / n as f64,
            p.delta,
            check.min_weight
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
