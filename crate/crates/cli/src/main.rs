//! `dlab`: deterministic JSON-report front end for the Dirichlet-space
//! toolkit.
//!
//! Every run is fully determined by its inputs, seed, and precision; reports
//! are emitted as JSON with a schema version, a config echo, and the
//! certificates the underlying module produced. Exit codes: 0 on success,
//! 1 on a certification failure (a failed report is still emitted), 2 on
//! invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use dlab_core::energy::{self, Method, QuadratureParams};
use dlab_core::gkz::{self, FunctionalSpec, OperatorTable, Verdict};
use dlab_core::series::TaylorPoly;
use dlab_core::surjective::SurjectiveSeries;
use dlab_core::weights::WeightSpec;
use dlab_core::{Complex64, Error, Precision};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "dlab",
    version,
    about = "Certified numerics for Dirichlet-type spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every randomized search in the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arithmetic mode for near-boundary ladder work.
    #[arg(long, env = "DLAB_PRECISION", default_value = "standard")]
    precision: Precision,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit wall-clock timing so reports are byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hardy/Dirichlet/weighted energies of a Taylor function file.
    Energy {
        /// JSON function file: {"type":"taylor","coeffs":[[re,im],...]}.
        #[arg(long = "function")]
        function: PathBuf,
        /// Optional weight file for the weighted energy.
        #[arg(long)]
        weight: Option<PathBuf>,
        /// coefficient | quadrature | both.
        #[arg(long, default_value = "both")]
        method: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the superharmonicity hypotheses of a weight file.
    WeightCheck {
        #[arg(long)]
        weight: PathBuf,
        /// Grid step for the discrete Laplacian sweep.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Optional override of the Laplacian base tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Number of random mean-value circles.
        #[arg(long, default_value_t = 1000)]
        circles: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The certified surjective-series construction.
    Surject {
        #[command(subcommand)]
        action: SurjectAction,
    },
    /// Split a function into two certified nowhere-vanishing parts.
    Decompose {
        #[arg(long = "function")]
        function: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Point-evaluation classification and witness search for functionals.
    Functional {
        #[command(subcommand)]
        action: FunctionalAction,
    },
    /// Weighted-composition-operator extraction from a basis table.
    Wco {
        #[command(subcommand)]
        action: WcoAction,
    },
}

#[derive(Subcommand)]
enum SurjectAction {
    /// Build and certify the boundary ladder for a weight.
    Build {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        #[arg(long = "n-terms", default_value_t = 4)]
        n_terms: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Certify that one target lies in the image of the partial sum.
    Hit {
        #[arg(long)]
        series: PathBuf,
        /// Target as "re,im" (or a single real).
        #[arg(long)]
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certify a lattice of targets with |w0| <= radius.
    Cover {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 10)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum FunctionalAction {
    Classify {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long = "max-degree", default_value_t = 32)]
        max_degree: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    Witness {
        #[arg(long)]
        functional: PathBuf,
        /// Newton starts to spend before reporting NotFound.
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum WcoAction {
    Extract {
        /// Operator table file: {"basis_images":[taylor,...]}.
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    config: Value,
    status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failed_checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
}

/// Input-level problem: message to stderr, exit 2.
struct InputError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (name, common, config, outcome) = match dispatch(cli.command) {
        Ok(parts) => parts,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (status, failed_checks, result, code) = match outcome {
        Ok(payload) => (
            "ok".to_string(),
            Vec::new(),
            Some(payload),
            ExitCode::SUCCESS,
        ),
        Err(e) => {
            // Certification-level failure: emit the report marked failed.
            let partial = match &e {
                Error::HypothesisViolated { report, .. } => {
                    Some(serde_json::to_value(report).expect("report serializes"))
                }
                _ => None,
            };
            (
                "failed".to_string(),
                vec![e.to_string()],
                partial,
                ExitCode::from(1),
            )
        }
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: name,
        config,
        status,
        failed_checks,
        wall_time_ms: (!common.no_timestamp).then(|| started.elapsed().as_secs_f64() * 1e3),
        result,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    code
}

type Dispatch = (String, Common, Value, Result<Value, Error>);

fn dispatch(command: Command) -> Result<Dispatch, InputError> {
    match command {
        Command::Energy {
            function,
            weight,
            method,
            common,
        } => {
            let f = load_function(&function)?;
            let w = weight.as_ref().map(|p| load_weight(p)).transpose()?;
            let method = parse_method(&method)?;
            let config = json!({
                "function": function,
                "weight": weight,
                "method": method,
                "seed": common.seed,
                "precision": common.precision,
            });
            let run = energy::energy_report(&f, w.as_ref(), method, QuadratureParams::default())
                .map(|r| serde_json::to_value(r).expect("report serializes"));
            Ok(("energy".into(), common, config, run))
        }
        Command::WeightCheck {
            weight,
            step,
            tol,
            circles,
            common,
        } => {
            let w = load_weight(&weight)?;
            let config = json!({
                "weight": weight,
                "step": step,
                "tol": tol,
                "circles": circles,
                "seed": common.seed,
                "precision": common.precision,
            });
            let run = run_weight_check(&w, step, tol, circles, common.seed);
            Ok(("weight-check".into(), common, config, run))
        }
        Command::Surject { action } => match action {
            SurjectAction::Build {
                weight,
                r,
                n_terms,
                common,
            } => {
                let w = load_weight(&weight)?;
                let config = json!({
                    "weight": weight,
                    "r": r,
                    "n_terms": n_terms,
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = SurjectiveSeries::select_ladder(&w, r, n_terms, common.precision)
                    .map(|s| serde_json::to_value(s).expect("series serializes"));
                Ok(("surject-build".into(), common, config, run))
            }
            SurjectAction::Hit {
                series,
                target,
                common,
            } => {
                let s = load_series(&series)?;
                let w0 = parse_complex(&target)?;
                let config = json!({
                    "series": series,
                    "target": [w0.re, w0.im],
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = s
                    .hit_target(w0)
                    .map(|c| serde_json::to_value(c).expect("certificate serializes"));
                Ok(("surject-hit".into(), common, config, run))
            }
            SurjectAction::Cover {
                series,
                radius,
                grid,
                common,
            } => {
                let s = load_series(&series)?;
                let config = json!({
                    "series": series,
                    "radius": radius,
                    "grid": grid,
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = s.cover(radius, grid).and_then(|report| {
                    if report.all_passed {
                        Ok(serde_json::to_value(report).expect("report serializes"))
                    } else {
                        Err(Error::CertificationFailed(format!(
                            "{} of {} targets failed",
                            report.n_targets - report.n_passed,
                            report.n_targets
                        )))
                    }
                });
                Ok(("surject-cover".into(), common, config, run))
            }
        },
        Command::Decompose { function, common } => {
            let f = load_function(&function)?;
            let config = json!({
                "function": function,
                "seed": common.seed,
                "precision": common.precision,
            });
            let run = gkz::decompose(&f, common.seed)
                .map(|d| serde_json::to_value(d).expect("decomposition serializes"));
            Ok(("decompose".into(), common, config, run))
        }
        Command::Functional { action } => match action {
            FunctionalAction::Classify {
                functional,
                max_degree,
                tol,
                common,
            } => {
                let l = load_functional(&functional)?;
                let config = json!({
                    "functional": functional,
                    "max_degree": max_degree,
                    "tol": tol,
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = gkz::classify_functional(&l, max_degree, tol)
                    .map(|r| serde_json::to_value(r).expect("report serializes"));
                Ok(("functional-classify".into(), common, config, run))
            }
            FunctionalAction::Witness {
                functional,
                budget,
                common,
            } => {
                let l = load_functional(&functional)?;
                let config = json!({
                    "functional": functional,
                    "budget": budget,
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = run_witness(&l, budget, common.seed);
                Ok(("functional-witness".into(), common, config, run))
            }
        },
        Command::Wco { action } => match action {
            WcoAction::Extract { table, common } => {
                let t = load_table(&table)?;
                let config = json!({
                    "table": table,
                    "seed": common.seed,
                    "precision": common.precision,
                });
                let run = gkz::wco_extract(&t, &gkz::default_wco_grid())
                    .map(|r| serde_json::to_value(r).expect("report serializes"));
                Ok(("wco-extract".into(), common, config, run))
            }
        },
    }
}

fn run_weight_check(
    w: &WeightSpec,
    step: f64,
    tol: Option<f64>,
    circles: usize,
    seed: u64,
) -> Result<Value, Error> {
    let superharmonic = w.check_superharmonic(step, tol)?;
    let sweep = w.mean_value_sweep(circles, 64, seed)?;
    let inf = w.inf_estimate(64, 64)?;
    let integral = w.integral_over_disk();
    let pass = superharmonic.pass && sweep.pass;
    let value = json!({
        "superharmonic": superharmonic,
        "mean_value": sweep,
        "inf": inf,
        "integral_over_disk": integral,
        "pass": pass,
    });
    if pass {
        Ok(value)
    } else {
        Err(Error::CertificationFailed(
            "weight fails a superharmonicity check".into(),
        ))
    }
}

fn run_witness(l: &FunctionalSpec, budget: usize, seed: u64) -> Result<Value, Error> {
    let classify = gkz::classify_functional(l, 32, 1e-10)?;
    let witness = gkz::witness_search(l, budget, seed)?;
    let required = classify.verdict != Verdict::PointEvaluation;
    match (&witness, required) {
        (None, true) => Err(Error::CertificationFailed(
            "no witness found for a functional that is not a point evaluation".into(),
        )),
        _ => Ok(json!({
            "classify": classify,
            "witness": witness,
            "witness_required": required,
        })),
    }
}

// ------------------------------------------------------------ input layer --

fn read(path: &Path, what: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {what} file {}: {e}", path.display())))
}

fn load_function(path: &Path) -> Result<TaylorPoly, InputError> {
    let text = read(path, "function")?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("invalid function file {}: {e}", path.display())))
}

fn load_weight(path: &Path) -> Result<WeightSpec, InputError> {
    let text = read(path, "weight")?;
    let w: WeightSpec = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("invalid weight file {}: {e}", path.display())))?;
    w.validate()
        .map_err(|e| InputError(format!("invalid weight file {}: {e}", path.display())))?;
    Ok(w)
}

fn load_series(path: &Path) -> Result<SurjectiveSeries, InputError> {
    let text = read(path, "series")?;
    // Accept either the bare series object or a `surject build` report
    // envelope (series under "result").
    let s: SurjectiveSeries = serde_json::from_str(&text)
        .or_else(|outer| {
            serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| v.get("result").cloned())
                .and_then(|r| serde_json::from_value(r).ok())
                .ok_or(outer)
        })
        .map_err(|e| InputError(format!("invalid series file {}: {e}", path.display())))?;
    s.validate()
        .map_err(|e| InputError(format!("invalid series file {}: {e}", path.display())))?;
    Ok(s)
}

fn load_functional(path: &Path) -> Result<FunctionalSpec, InputError> {
    let text = read(path, "functional")?;
    let l: FunctionalSpec = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("invalid functional file {}: {e}", path.display())))?;
    l.validate()
        .map_err(|e| InputError(format!("invalid functional file {}: {e}", path.display())))?;
    Ok(l)
}

fn load_table(path: &Path) -> Result<OperatorTable, InputError> {
    let text = read(path, "operator table")?;
    let t: OperatorTable = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("invalid operator table {}: {e}", path.display())))?;
    t.validate()
        .map_err(|e| InputError(format!("invalid operator table {}: {e}", path.display())))?;
    Ok(t)
}

fn parse_method(s: &str) -> Result<Method, InputError> {
    match s {
        "coefficient" => Ok(Method::Coefficient),
        "quadrature" => Ok(Method::Quadrature),
        "both" => Ok(Method::Both),
        other => Err(InputError(format!(
            "method must be coefficient, quadrature, or both; got {other:?}"
        ))),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, InputError> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || {
        InputError(format!(
            "target must be \"re,im\" or a single real, got {s:?}"
        ))
    };
    let value = match parts.as_slice() {
        [re] => Complex64::new(re.trim().parse().map_err(|_| bad())?, 0.0),
        [re, im] => Complex64::new(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        ),
        _ => return Err(bad()),
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(InputError(format!("target must be finite, got {s:?}")));
    }
    Ok(value)
}
