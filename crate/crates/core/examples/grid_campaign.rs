// The brute-force grid referee against the operational answers, on seeded
// random bodies.

use metric_complements::lab::{random_body, random_flat_body, verify_theorem, BodyKind, GridParams, Theorem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = GridParams::new(0.02, None);
    let mut all_passed = true;
    for (i, kind) in BodyKind::ALL.into_iter().enumerate() {
        let body = random_body(kind, 2, 6, i as u64)?;
        for theorem in [Theorem::LocatedInterior, Theorem::DoubleComplementConvex, Theorem::ClosureInterior] {
            let report = verify_theorem(theorem, &body, params, 1000, 11)?;
            println!("{report}");
            all_passed &= report.passed;
        }
    }
    let flat = random_flat_body(2, 4, 3)?;
    let report = verify_theorem(Theorem::DegenerateEmpty, &flat, params, 1000, 11)?;
    println!("{report}");
    all_passed &= report.passed;

    let out = std::env::temp_dir().join("metric-complements-report.json");
    std::fs::write(&out, report.to_json())?;
    println!("last report written to {}", out.display());
    if !all_passed {
        return Err("a campaign reported violations".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
