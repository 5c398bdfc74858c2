//! Command-line front end.
//!
//! Five subcommands over JSON model files: `validate`, `classify`,
//! `simulate`, `lyapunov`, and `omega`. Reports are single-line JSON with
//! deterministic float formatting; trajectories are CSV. Exit codes:
//! 0 success, 1 usage or I/O errors, 2 domain rejections (invalid pair,
//! uncertified request, non-simplex start).

mod model;
mod report;

pub use model::{ModelError, ModelFile};
pub use report::{format_float, to_json, write_trajectory_csv};

use crate::dynamics::{self, detect_limit, iterate, DynamicsError, LimitReport, StopReason};
use crate::lyapunov::{
    certification_preconditions, cone_extreme_rays, pair_cones, rowsum_candidate,
    CertificationReport, ConeSide,
};
use crate::numerics::RationalMatrix;
use crate::omega::{omega_upper_set_with, OmegaError, OmegaEstimate, StoppingConfig};
use crate::operators::{Admissibility, Classification, SqsoPair};
use crate::simplex::SimplexPoint;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

/// Sum tolerance for user-supplied starting points.
const X0_SUM_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "sqso",
    about = "Separable quadratic stochastic operators: validate, classify, simulate, certify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the admissibility of a model's matrix pair.
    Validate { model: PathBuf },
    /// Classify a strictly admissible pair as Constant, Linear, or Nonlinear.
    Classify { model: PathBuf },
    /// Iterate the operator and report the trajectory and its limit.
    Simulate {
        model: PathBuf,
        /// Starting point as comma-separated decimals summing to 1.
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = dynamics::DEFAULT_CONV_TOL)]
        tol: f64,
        /// Write the trajectory CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate extreme rays of the Lyapunov certificate cones.
    Lyapunov {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Estimate the omega-limit upper set from certified rays.
    Omega {
        model: PathBuf,
        /// Starting point as comma-separated decimals summing to 1.
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_STEPS)]
        steps: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "both")]
    Both,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<ModelError> for Failure {
    fn from(err: ModelError) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<DynamicsError> for Failure {
    fn from(err: DynamicsError) -> Self {
        match err {
            DynamicsError::ZeroSteps | DynamicsError::BadTolerance(_) => {
                Failure::Usage(err.to_string())
            }
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<OmegaError> for Failure {
    fn from(err: OmegaError) -> Self {
        match err {
            OmegaError::Uncertified(_) => Failure::Domain(err.to_string()),
            OmegaError::Dynamics(d) => d.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Runs one CLI invocation. `argv` includes the program name; the report
/// goes to `out`, diagnostics to `err`; the return value is the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            // --help / --version go to stdout with exit 0.
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}

#[derive(Serialize)]
struct RunReport<T: Serialize> {
    command: &'static str,
    input: ModelFile,
    result: T,
    status: i32,
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    command: &'static str,
    pair: &SqsoPair,
    label: Option<String>,
    result: T,
    status: i32,
) -> i32 {
    let report = RunReport {
        command,
        input: ModelFile::echo(pair, label),
        result,
        status,
    };
    let _ = writeln!(out, "{}", to_json(&report));
    status
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { model } => run_validate(&model, out),
        Command::Classify { model } => run_classify(&model, out),
        Command::Simulate {
            model,
            x0,
            steps,
            tol,
            out: csv_out,
        } => run_simulate(&model, &x0, steps, tol, csv_out.as_deref(), out),
        Command::Lyapunov { model, side } => run_lyapunov(&model, side, out),
        Command::Omega { model, x0, steps } => run_omega(&model, &x0, steps, out),
    }
}

fn load_pair(path: &std::path::Path) -> Result<(SqsoPair, Option<String>), Failure> {
    let model = ModelFile::load(path)?;
    let label = model.label.clone();
    let pair = model.to_pair()?;
    Ok((pair, label))
}

#[derive(Serialize)]
struct ValidateResult {
    admissibility: &'static str,
    det_a: String,
    det_b: String,
    rows_identical_a: bool,
    rows_identical_b: bool,
    in_admissible_family: bool,
}

fn admissibility_name(a: Admissibility) -> &'static str {
    match a {
        Admissibility::Strict => "Strict",
        Admissibility::Weak => "Weak",
        Admissibility::Invalid => "Invalid",
    }
}

fn run_validate(path: &std::path::Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let (pair, label) = load_pair(path)?;
    let status = if pair.admissibility() == Admissibility::Invalid {
        EXIT_DOMAIN
    } else {
        EXIT_OK
    };
    let result = ValidateResult {
        admissibility: admissibility_name(pair.admissibility()),
        det_a: pair.det_a().to_string(),
        det_b: pair.det_b().to_string(),
        rows_identical_a: pair.rows_identical_a(),
        rows_identical_b: pair.rows_identical_b(),
        in_admissible_family: pair.in_admissible_family(),
    };
    Ok(emit(out, "validate", &pair, label, result, status))
}

#[derive(Serialize)]
#[serde(tag = "case")]
enum ClassificationJson {
    Constant { point: Vec<String> },
    Linear { matrix: Vec<Vec<String>> },
    Nonlinear,
}

fn render_matrix(matrix: &RationalMatrix) -> Vec<Vec<String>> {
    (0..matrix.rows())
        .map(|i| matrix.row(i).iter().map(|v| v.to_string()).collect())
        .collect()
}

fn run_classify(path: &std::path::Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let (pair, label) = load_pair(path)?;
    if pair.admissibility() != Admissibility::Strict {
        return Err(Failure::Domain(format!(
            "classify requires a strictly admissible pair, admissibility is {}",
            admissibility_name(pair.admissibility())
        )));
    }
    let classification = pair
        .classify()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let result = match &classification {
        Classification::Constant { point } => ClassificationJson::Constant {
            point: point.iter().map(|v| v.to_string()).collect(),
        },
        Classification::Linear { matrix } => ClassificationJson::Linear {
            matrix: render_matrix(matrix),
        },
        Classification::Nonlinear => ClassificationJson::Nonlinear,
    };
    Ok(emit(out, "classify", &pair, label, result, EXIT_OK))
}

fn parse_x0(text: &str, m: usize) -> Result<SimplexPoint, Failure> {
    let coords: Vec<f64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("cannot parse x0 coordinate `{part}`")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != m {
        return Err(Failure::Usage(format!(
            "x0 has {} coordinates, model expects {m}",
            coords.len()
        )));
    }
    SimplexPoint::with_tolerances(coords, crate::simplex::COORD_SLACK, X0_SUM_TOL)
        .map_err(|e| Failure::Domain(format!("x0 is not a point of the simplex: {e}")))
}

#[derive(Serialize)]
#[serde(tag = "kind")]
enum LimitJson {
    FixedPoint { point: Vec<f64>, residual: f64 },
    Cycle { period: usize, representatives: Vec<Vec<f64>> },
    Undecided,
}

#[derive(Serialize)]
struct SimulateResult {
    steps_recorded: usize,
    stop_reason: &'static str,
    period: Option<usize>,
    final_point: Vec<f64>,
    limit: LimitJson,
    csv: String,
}

fn run_simulate(
    path: &std::path::Path,
    x0_text: &str,
    steps: usize,
    tol: f64,
    csv_out: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (pair, label) = load_pair(path)?;
    let kernel = pair
        .kernel()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let x0 = parse_x0(x0_text, pair.m())?;
    let traj = iterate(&kernel, &x0, steps, tol)?;
    let limit = detect_limit(&traj, &kernel, dynamics::DEFAULT_FP_TOL);

    let csv_location = match csv_out {
        Some(file) => {
            let mut handle = std::fs::File::create(file)
                .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", file.display())))?;
            write_trajectory_csv(&traj, &mut handle)
                .map_err(|e| Failure::Usage(format!("cannot write CSV: {e}")))?;
            file.display().to_string()
        }
        None => {
            write_trajectory_csv(&traj, out)
                .map_err(|e| Failure::Usage(format!("cannot write CSV: {e}")))?;
            "stdout".to_string()
        }
    };

    let (stop_reason, period) = match traj.stop_reason() {
        StopReason::Converged => ("Converged", None),
        StopReason::PeriodDetected(p) => ("PeriodDetected", Some(p)),
        StopReason::MaxStepsReached => ("MaxStepsReached", None),
    };
    let limit_json = match limit {
        LimitReport::FixedPoint { point, residual } => LimitJson::FixedPoint {
            point: point.coords().to_vec(),
            residual,
        },
        LimitReport::Cycle {
            period,
            representatives,
        } => LimitJson::Cycle {
            period,
            representatives: representatives
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
        },
        LimitReport::Undecided => LimitJson::Undecided,
    };
    let result = SimulateResult {
        steps_recorded: traj.len() - 1,
        stop_reason,
        period,
        final_point: traj.last_point().coords().to_vec(),
        limit: limit_json,
        csv: csv_location,
    };
    Ok(emit(out, "simulate", &pair, label, result, EXIT_OK))
}

#[derive(Serialize)]
struct PreconditionsJson {
    entries_in_unit_interval_a: bool,
    entries_in_unit_interval_b: bool,
    in_admissible_family: bool,
    certified: bool,
}

impl From<CertificationReport> for PreconditionsJson {
    fn from(r: CertificationReport) -> Self {
        Self {
            entries_in_unit_interval_a: r.entries_in_unit_interval_a,
            entries_in_unit_interval_b: r.entries_in_unit_interval_b,
            in_admissible_family: r.in_admissible_family,
            certified: r.certified(),
        }
    }
}

#[derive(Serialize)]
struct SideJson {
    side: &'static str,
    rays: Vec<Vec<String>>,
    rowsum_candidate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct LyapunovResult {
    preconditions: PreconditionsJson,
    sides: Vec<SideJson>,
}

fn render_rays(rays: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    rays.iter()
        .map(|ray| ray.iter().map(|v| v.to_string()).collect())
        .collect()
}

fn side_report(pair: &SqsoPair, side: ConeSide) -> SideJson {
    let matrix = match side {
        ConeSide::FromA => pair.matrix_a(),
        ConeSide::FromB => pair.matrix_b(),
    };
    let basis = cone_extreme_rays(matrix, side);
    let note = if basis.is_empty() {
        Some("cone is trivial: no nonzero certificate on this side")
    } else {
        None
    };
    SideJson {
        side: side.label(),
        rays: render_rays(basis.rays()),
        rowsum_candidate: rowsum_candidate(matrix)
            .map(|c| c.iter().map(|v| v.to_string()).collect()),
        note,
    }
}

fn run_lyapunov(
    path: &std::path::Path,
    side: SideArg,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (pair, label) = load_pair(path)?;
    if pair.admissibility() == Admissibility::Invalid {
        return Err(Failure::Domain(
            "lyapunov requires an admissible pair".into(),
        ));
    }
    let sides = match side {
        SideArg::A => vec![side_report(&pair, ConeSide::FromA)],
        SideArg::B => vec![side_report(&pair, ConeSide::FromB)],
        SideArg::Both => vec![
            side_report(&pair, ConeSide::FromA),
            side_report(&pair, ConeSide::FromB),
        ],
    };
    let result = LyapunovResult {
        preconditions: certification_preconditions(&pair).into(),
        sides,
    };
    Ok(emit(out, "lyapunov", &pair, label, result, EXIT_OK))
}

#[derive(Serialize)]
struct RayLambdaJson {
    ray: Vec<String>,
    lambda: f64,
    stop_step: usize,
    last_decrement: f64,
    plateaued: bool,
}

#[derive(Serialize)]
struct LevelJson {
    weights: Vec<String>,
    level: f64,
}

#[derive(Serialize)]
struct OmegaResult {
    rays: Vec<RayLambdaJson>,
    ray_matrix_rank: usize,
    resolved_point: Option<Vec<f64>>,
    solve_residual: Option<f64>,
    level_set: Vec<LevelJson>,
    empirical_points: Vec<Vec<f64>>,
    trajectory_len: usize,
}

impl From<&OmegaEstimate> for OmegaResult {
    fn from(estimate: &OmegaEstimate) -> Self {
        Self {
            rays: estimate
                .lambda_values
                .iter()
                .map(|rl| RayLambdaJson {
                    ray: rl.ray.iter().map(|v| v.to_string()).collect(),
                    lambda: rl.estimate.value,
                    stop_step: rl.estimate.stop_step,
                    last_decrement: rl.estimate.last_decrement,
                    plateaued: rl.estimate.plateaued,
                })
                .collect(),
            ray_matrix_rank: estimate.ray_matrix_rank,
            resolved_point: estimate
                .resolved_point
                .as_ref()
                .map(|p| p.coords().to_vec()),
            solve_residual: estimate.solve_residual,
            level_set: estimate
                .level_set
                .iter()
                .map(|lc| LevelJson {
                    weights: lc.weights.iter().map(|v| v.to_string()).collect(),
                    level: lc.level,
                })
                .collect(),
            empirical_points: estimate
                .empirical_points
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
            trajectory_len: estimate.trajectory_len,
        }
    }
}

fn run_omega(
    path: &std::path::Path,
    x0_text: &str,
    steps: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (pair, label) = load_pair(path)?;
    if pair.admissibility() == Admissibility::Invalid {
        return Err(Failure::Domain("omega requires an admissible pair".into()));
    }
    let preconditions = certification_preconditions(&pair);
    if !preconditions.certified() {
        return Err(Failure::Domain(format!(
            "omega requires certified Lyapunov preconditions, got {preconditions:?}"
        )));
    }
    let x0 = parse_x0(x0_text, pair.m())?;
    let kernel = pair
        .kernel()
        .map_err(|e| Failure::Domain(e.to_string()))?;

    // Union of both cones; each ray is certified on its own side.
    let (a_basis, b_basis) = pair_cones(&pair);
    let mut rays = a_basis.rays().to_vec();
    for ray in b_basis.rays() {
        if !rays.contains(ray) {
            rays.push(ray.clone());
        }
    }
    rays.sort();

    let stop = StoppingConfig::with_max_steps(steps);
    let estimate = omega_upper_set_with(&kernel, &rays, &x0, &stop)?;
    let result = OmegaResult::from(&estimate);
    Ok(emit(out, "omega", &pair, label, result, EXIT_OK))
}
