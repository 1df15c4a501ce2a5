use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use metric_complements::complements::double_complement_membership;
use metric_complements::lab::{random_body, verify_theorem, BodyKind, GridOracle, GridParams, Label, Theorem};
use metric_complements::simplex::{perturbation_tolerance, scaled_simplex, SimplexReport};
use metric_complements::witnesses::{
    ball_transport, closure_interior_witness, density_witness, segment_interior, segment_interior_ball,
};
use metric_complements::{ConvexBody, Error, Vector};

#[derive(Parser)]
#[command(name = "metric-complements", version, about = "Metric complements of located convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Membership queries and the brute-force grid oracle
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Witness constructions with ball certificates
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Regular simplex coordinates and checks
    Simplex(SimplexArgs),
    /// Run a verification campaign and write a JSON report
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Decide membership of a point in the double complement
    Classify {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Vector,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Label a grid around a body and optionally query it
    Build {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        step: f64,
        /// Defaults to 2*step
        #[arg(long)]
        eps: Option<f64>,
        /// Padding around the body's bounding box
        #[arg(long, default_value_t = 0.5)]
        pad: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        query: Option<Vector>,
        /// Defaults to eps + 2*step
        #[arg(long)]
        margin: Option<f64>,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Split a point of B(z, r) between B(x, r) and B(y, r)
    Transport {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: Vector,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        y: Vector,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        zeta: Vector,
    },
    /// Interior ball at (1-lambda)x + lambda*y
    Segment {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: Vector,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        y: Vector,
        #[arg(long)]
        lambda: f64,
        /// Only require B(y, (1-lambda)r) to meet the body
        #[arg(long)]
        ball: bool,
    },
    /// Interior point within eps/2 of a closure point
    Density {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x0: Vector,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        y: Vector,
        #[arg(long)]
        eps: f64,
    },
    /// Interior certificate for a point whose closed s-ball lies in the closure
    Closure {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x0: Vector,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        y: Vector,
        #[arg(long)]
        s: f64,
    },
}

#[derive(Args)]
struct SimplexArgs {
    #[arg(long)]
    dim: usize,
    /// Exit with status 1 unless every closed form holds to 1e-9
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: Option<Vector>,
    /// Also compute the vertex perturbation tolerance about the barycentre
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// located-interior, double-complement-convex, closure-interior or degenerate-empty
    #[arg(long)]
    theorem: Theorem,
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    shape: Option<PathBuf>,
    /// kind,dim,complexity with kind one of hpolytope, vpolytope, ball
    #[arg(long, value_parser = parse_random)]
    random: Option<(BodyKind, usize, usize)>,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Defaults to 2*step
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_point(s: &str) -> Result<Vector, String> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(coords).map_err(|e| e.to_string())
}

fn parse_random(s: &str) -> Result<(BodyKind, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [kind, dim, complexity] = parts[..] else {
        return Err("expected kind,dim,complexity".into());
    };
    Ok((
        kind.parse().map_err(|e: Error| e.to_string())?,
        dim.parse().map_err(|e| format!("dim: {e}"))?,
        complexity.parse().map_err(|e| format!("complexity: {e}"))?,
    ))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Oracle(OracleCmd::Classify { shape, point, tol }) => {
            let body = ConvexBody::load(shape)?;
            print_json(&double_complement_membership(&body, &point, tol)?);
        }
        Command::Oracle(OracleCmd::Build { shape, step, eps, pad, query, margin }) => {
            let body = ConvexBody::load(shape)?;
            let params = GridParams::new(step, eps);
            let bbox = GridOracle::padded_box(&body.bounding_box()?, pad);
            let g = GridOracle::build(&body, bbox, params.step, params.eps)?;
            for w in g.warnings() {
                eprintln!("warning: {w}");
            }
            let count = |l: Label| g.points().filter(|(_, x)| *x == l).count();
            let (lo, hi) = g.bbox();
            let mut out = json!({
                "lo": lo, "hi": hi, "step": g.step(), "eps": g.eps(), "points": g.len(),
                "in_s": count(Label::InS), "in_minus_s": g.minus_count(), "neither": count(Label::Neither),
            });
            if let Some(x) = query {
                let m = margin.unwrap_or(params.decision_margin());
                let passes = match g.double_complement(&x, m) {
                    Err(Error::EmptyComplementSample) => {
                        eprintln!("warning: no grid point is bounded away from the body; answer is vacuous");
                        true
                    }
                    other => other?,
                };
                out["query"] = json!({ "point": x, "margin": m, "double_complement": passes });
            }
            print_json(&out);
        }
        Command::Witness(WitnessCmd::Transport { x, y, lambda, r, zeta }) => {
            let (xi, eta) = ball_transport(&x, &y, lambda, r, &zeta)?;
            print_json(&json!({ "xi": xi, "eta": eta }));
        }
        Command::Witness(WitnessCmd::Segment { shape, x, r, y, lambda, ball }) => {
            let body = ConvexBody::load(shape)?;
            let w = if ball {
                segment_interior_ball(&body, &x, r, &y, lambda)?
            } else {
                segment_interior(&body, &x, r, &y, lambda)?
            };
            print_json(&w);
        }
        Command::Witness(WitnessCmd::Density { shape, x0, r, y, eps }) => {
            print_json(&density_witness(&ConvexBody::load(shape)?, &x0, r, &y, eps)?);
        }
        Command::Witness(WitnessCmd::Closure { shape, x0, r, y, s }) => {
            print_json(&closure_interior_witness(&ConvexBody::load(shape)?, &x0, r, &y, s)?);
        }
        Command::Simplex(a) => {
            let center = a.center.unwrap_or_else(|| Vector::zeros(a.dim));
            if center.dim() != a.dim {
                return Err(Error::DimensionMismatch { expected: a.dim, found: center.dim() });
            }
            let report = SimplexReport::new(&center, a.scale)?;
            let ok = report.passes(1e-9);
            let mut out = serde_json::to_value(&report).expect("serializable report");
            if a.perturb {
                let s = scaled_simplex(&center, a.scale, a.dim)?;
                let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                out["perturbation"] = serde_json::to_value(perturbation_tolerance(&s, &center, a.trials, &mut rng)?)
                    .expect("serializable report");
            }
            print_json(&out);
            eprintln!("closed forms {}", if ok { "hold to 1e-9" } else { "FAIL at 1e-9" });
            return Ok(ok || !a.check);
        }
        Command::Verify(a) => {
            let body = match (a.shape, a.random) {
                (Some(path), _) => ConvexBody::load(path)?,
                (None, Some((kind, dim, complexity))) => random_body(kind, dim, complexity, a.seed)?,
                (None, None) => unreachable!("clap requires one of --shape and --random"),
            };
            let report = verify_theorem(a.theorem, &body, GridParams::new(a.step, a.eps), a.samples, a.seed)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            println!("{report}");
            if let Some(path) = a.out {
                std::fs::write(&path, report.to_json() + "\n")
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            }
            return Ok(report.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
