//! Command line frontend for the `slpot` toolkit. Subcommands map one-to-one
//! onto library entry points: phase classification, branch membership,
//! asymptotic cone tests, boundary convexity sweeps, the grid solver, exact
//! radial profiles, and the Lagrangian-graph identity check.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure. Data goes to
//! `--output` (default stdout), diagnostics to stderr. JSON floats carry 17
//! significant digits so identical inputs give byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use slpot::asymptotic::{self, AsymptoticError, BranchCase};
use slpot::boundary::{self, BoundaryError, ImplicitSurface};
use slpot::branches::{self, BranchError, DecompositionLabel, Region, RegionVerdict};
use slpot::mat::SymMatrix;
use slpot::phase::{self, PhaseClass, PhaseError};
use slpot::solver::{
    self, discrete_sl_operator, Grid, LagrangianSample, NodeKind, SolveProblem, SolverError,
    WIDE_STENCIL,
};
use slpot::spectrum::SpectrumError;
use slpot::tol::Tol;

use slpot_cli::expr::Expr;
use slpot_cli::json::{fmt_f64, to_json};
use slpot_cli::out::{
    AsymOut, BoundaryOut, BranchOut, DecompOut, PhaseClassOut, RadialOut, RouteOut,
    SolveSummaryOut, VerifyOut, WitnessOut,
};

#[derive(Parser)]
#[command(
    name = "slpot",
    version,
    about = "Phase classification, cone membership, boundary convexity, and Dirichlet solves for the arctan-spectrum operator"
)]
struct Cli {
    /// Write data output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Place a phase in its interval or on a special value.
    Classify {
        /// Ambient dimension.
        #[arg(long)]
        n: usize,
        /// Phase: a real, or "theta_k:K" for the exact K-th special value.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Membership of a matrix in the k-th eigenvalue branch and, for
    /// k < n, the k-th branch of the (n-1)-st symmetric function.
    Branch {
        /// Row-major JSON matrix, inline or a file path.
        #[arg(long)]
        matrix: String,
        /// Branch index, 1-based.
        #[arg(long)]
        k: usize,
    },
    /// Interior and closure membership of the asymptotic cone at a phase.
    Asym {
        /// Row-major JSON matrix, inline or a file path.
        #[arg(long)]
        matrix: String,
        /// Phase: a real, or "theta_k:K".
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Convexity classification of one curvature tuple (JSON out) or a
    /// sweep over a built-in surface (CSV out).
    Boundary {
        /// JSON array of n-1 principal curvatures, inline or a file path.
        #[arg(long, conflicts_with = "surface")]
        kappas: Option<String>,
        /// Ambient dimension, required with --kappas.
        #[arg(long)]
        n: Option<usize>,
        /// Built-in surface: "sphere:R", "cylinder:R", or "torus:TUBE,RING".
        #[arg(long)]
        surface: Option<String>,
        /// Phase: a real, or "theta_k:K".
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Number of sweep points for --surface.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Solve the Dirichlet problem described by a JSON file; emits the node
    /// field as CSV and a JSON summary.
    Solve {
        /// Problem description file.
        #[arg(long)]
        problem: PathBuf,
        /// Write the field CSV here instead of stdout.
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Exact radial profile y(r), u(r) from the rotated first integral.
    Radial {
        /// Phase: a real, or "theta_k:K".
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// First-integral constant.
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Ambient dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        r0: f64,
        #[arg(long, default_value_t = 1.5)]
        r1: f64,
        /// Number of radial steps between r0 and r1.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Value of u at r0.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        u0: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Measure the phase-gradient mean-curvature identity on a potential.
    VerifyAppendixA {
        /// Potential u(x1, x2) as an expression.
        #[arg(long)]
        u: String,
        /// Sample on a count x count grid.
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Grid covers [-extent, extent] in each coordinate.
        #[arg(long, default_value_t = 0.5)]
        extent: f64,
        /// Finite difference step for third derivatives.
        #[arg(long)]
        fd_step: Option<f64>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Numeric(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    fn numeric(e: impl std::fmt::Display) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn spectrum_err(e: SpectrumError) -> CliError {
    match e {
        SpectrumError::TooSmall { .. } => CliError::input(e),
        SpectrumError::NonFinite | SpectrumError::DegenerateBracket { .. } => CliError::numeric(e),
    }
}

fn phase_err(e: PhaseError) -> CliError {
    match e {
        PhaseError::OutOfRange { .. } | PhaseError::HypothesisViolated(_) => CliError::input(e),
        PhaseError::Spectral(s) => spectrum_err(s),
        PhaseError::DegenerateSigma
        | PhaseError::PoleProximity { .. }
        | PhaseError::RootFindFailure { .. } => CliError::numeric(e),
    }
}

fn branch_err(e: BranchError) -> CliError {
    match e {
        BranchError::BadIndex { .. } => CliError::input(e),
        BranchError::Spectral(s) => spectrum_err(s),
    }
}

fn asym_err(e: AsymptoticError) -> CliError {
    match e {
        AsymptoticError::Inconclusive { .. } => CliError::numeric(e),
        AsymptoticError::Phase(p) => phase_err(p),
        AsymptoticError::Branch(b) => branch_err(b),
        AsymptoticError::Spectral(s) => spectrum_err(s),
    }
}

fn boundary_err(e: BoundaryError) -> CliError {
    match e {
        BoundaryError::NotOnSurface { .. }
        | BoundaryError::DegenerateGradient { .. }
        | BoundaryError::WrongTupleSize { .. } => CliError::input(e),
        BoundaryError::Phase(p) => phase_err(p),
        BoundaryError::Spectral(s) => spectrum_err(s),
        BoundaryError::Asymptotic(a) => asym_err(a),
    }
}

fn solver_err(e: SolverError) -> CliError {
    match e {
        SolverError::InvalidProblem(_) | SolverError::PhaseOutOfRange { .. } => CliError::input(e),
        SolverError::NotConverged(_) | SolverError::NoBracket { .. } => CliError::numeric(e),
    }
}

fn tol_from_env() -> Result<Tol, CliError> {
    match std::env::var("SLPDE_TOL") {
        Ok(text) => {
            let v = text
                .parse::<f64>()
                .ok()
                .filter(|v| *v > 0.0 && v.is_finite());
            match v {
                Some(v) => Ok(Tol::default().with_zero(v)),
                None => Err(CliError::Input(format!(
                    "SLPDE_TOL must be a positive real, got '{text}'"
                ))),
            }
        }
        Err(std::env::VarError::NotPresent) => Ok(Tol::default()),
        Err(e) => Err(CliError::Input(format!("SLPDE_TOL: {e}"))),
    }
}

/// Phase argument: a plain real, or "theta_k:K" resolving exactly.
fn parse_theta(text: &str, n: usize) -> Result<f64, CliError> {
    if let Some(rest) = text.strip_prefix("theta_k:") {
        let k: usize = rest
            .parse()
            .map_err(|_| CliError::Input(format!("bad special value index '{rest}'")))?;
        if n < 2 || k == 0 || k >= n {
            return Err(CliError::Input(format!(
                "special value index must lie in 1..={}, got {k}",
                n.saturating_sub(1)
            )));
        }
        return Ok(phase::special_value(n, k));
    }
    text.parse::<f64>().map_err(|_| {
        CliError::Input(format!(
            "theta must be a real or \"theta_k:K\", got '{text}'"
        ))
    })
}

/// Arguments that start with a JSON bracket are taken inline; anything else
/// is a file path.
fn load_json_text(arg: &str) -> Result<String, CliError> {
    let lead = arg.trim_start().chars().next();
    if matches!(lead, Some('[') | Some('{')) {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read '{arg}': {e}")))
    }
}

fn parse_matrix(arg: &str) -> Result<SymMatrix, CliError> {
    let text = load_json_text(arg)?;
    let rows: Vec<Vec<f64>> = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("matrix must be row-major JSON: {e}")))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!(
            "matrix must be square, got {n} rows"
        )));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    let frob = flat.iter().map(|v| v * v).sum::<f64>().sqrt();
    let (a, asym) = SymMatrix::with_asymmetry(n, flat).map_err(CliError::input)?;
    if asym > 1e-12 * frob.max(1.0) {
        eprintln!("warning: input symmetrized, max asymmetry {asym:.3e}");
    }
    Ok(a)
}

fn emit(path: Option<&PathBuf>, data: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, data)
            .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", p.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(path: Option<&PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = to_json(value);
    text.push('\n');
    emit(path, &text)
}

fn route_out(v: &RegionVerdict) -> RouteOut {
    RouteOut {
        region: format!("{:?}", v.region),
        route: format!("{:?}", v.route),
        margin: v.margin,
    }
}

fn run_classify(out: Option<&PathBuf>, n: usize, theta: &str) -> Result<(), CliError> {
    let tol = tol_from_env()?;
    let theta = parse_theta(theta, n)?;
    let (kind, k) = match phase::classify_phase(n, theta, &tol).map_err(phase_err)? {
        PhaseClass::Special(k) => ("Special", k),
        PhaseClass::Interval(k) => ("Interval", k),
    };
    emit_json(
        out,
        &PhaseClassOut {
            kind: kind.into(),
            k,
        },
    )
}

fn run_branch(out: Option<&PathBuf>, matrix: &str, k: usize) -> Result<(), CliError> {
    let tol = tol_from_env()?;
    let a = parse_matrix(matrix)?;
    let n = a.n();
    let lambda = branches::lambda_branch(&a, k, &tol).map_err(branch_err)?;
    let lambda_member = lambda.region != Region::Exterior;
    let lam_var = branches::lambda_branch_variation(&a, k, &tol).map_err(branch_err)?;
    let (sigma, sigma_agrees, decomposition) = if k < n {
        let s = branches::sigma_branch_critical(&a, k, &tol).map_err(branch_err)?;
        let sv = branches::sigma_branch_variation(&a, k, &tol).map_err(branch_err)?;
        let agrees = (sv.region != Region::Exterior) == (s.region != Region::Exterior);
        let label = match branches::decompose_sigma_branch(&a, k, &tol).map_err(branch_err)? {
            DecompositionLabel::InLambdaK => DecompOut {
                label: "InLambdaK".into(),
                j: None,
            },
            DecompositionLabel::EkSet { j } => DecompOut {
                label: "EkSet".into(),
                j: Some(j),
            },
            DecompositionLabel::Outside => DecompOut {
                label: "Outside".into(),
                j: None,
            },
        };
        (Some(route_out(&s)), Some(agrees), Some(label))
    } else {
        (None, None, None)
    };
    emit_json(
        out,
        &BranchOut {
            n,
            k,
            lambda: route_out(&lambda),
            lambda_variation_agrees: lam_var == lambda_member,
            sigma,
            sigma_variation_agrees: sigma_agrees,
            decomposition,
        },
    )
}

fn run_asym(out: Option<&PathBuf>, matrix: &str, theta: &str) -> Result<(), CliError> {
    let tol = tol_from_env()?;
    let a = parse_matrix(matrix)?;
    let theta = parse_theta(theta, a.n())?;
    let v = asymptotic::asymptotic_interior(&a, theta, &tol).map_err(asym_err)?;
    let (case, k) = match v.branch_case {
        BranchCase::IntervalCase(k) => ("IntervalCase", k),
        BranchCase::SpecialCaseA(k) => ("SpecialCaseA", k),
        BranchCase::SpecialCaseB(k) => ("SpecialCaseB", k),
    };
    emit_json(
        out,
        &AsymOut {
            member_interior: v.member_interior,
            member_closure: v.member_closure,
            branch_case: case.into(),
            k,
            witnesses: WitnessOut {
                lambda_k: v.witness.lambda_k,
                lambda_k_plus_1: v.witness.lambda_k_plus_1,
                sigma_product: v.witness.sigma_product,
            },
        },
    )
}

enum SurfaceSpec {
    Sphere(f64),
    Cylinder(f64),
    Torus { tube: f64, ring: f64 },
}

fn parse_surface(text: &str) -> Result<SurfaceSpec, CliError> {
    let bad = || {
        CliError::Input(format!(
            "surface must be sphere:R, cylinder:R, or torus:TUBE,RING, got '{text}'"
        ))
    };
    let (name, params) = text.split_once(':').ok_or_else(bad)?;
    let mut values = Vec::new();
    for part in params.split(',') {
        values.push(part.trim().parse::<f64>().map_err(|_| bad())?);
    }
    match (name, values.as_slice()) {
        ("sphere", [r]) if *r > 0.0 => Ok(SurfaceSpec::Sphere(*r)),
        ("cylinder", [r]) if *r > 0.0 => Ok(SurfaceSpec::Cylinder(*r)),
        ("torus", [tube, ring]) if *tube > 0.0 && *ring > *tube => Ok(SurfaceSpec::Torus {
            tube: *tube,
            ring: *ring,
        }),
        _ => Err(bad()),
    }
}

/// Deterministic parameter sweep with exactly `samples` points.
fn sweep_points(spec: &SurfaceSpec, samples: usize) -> Vec<[f64; 3]> {
    use std::f64::consts::PI;
    let mut pts = Vec::with_capacity(samples);
    match *spec {
        SurfaceSpec::Sphere(rad) => {
            let nphi = (samples as f64).sqrt().ceil() as usize;
            let nalpha = samples.div_ceil(nphi);
            'outer: for ia in 0..nalpha {
                let alpha = PI * (ia + 1) as f64 / (nalpha + 1) as f64;
                for ip in 0..nphi {
                    if pts.len() == samples {
                        break 'outer;
                    }
                    let phi = 2.0 * PI * ip as f64 / nphi as f64;
                    pts.push([
                        rad * alpha.sin() * phi.cos(),
                        rad * alpha.sin() * phi.sin(),
                        rad * alpha.cos(),
                    ]);
                }
            }
        }
        SurfaceSpec::Cylinder(rad) => {
            for i in 0..samples {
                let phi = 2.0 * PI * i as f64 / samples as f64;
                let z = (i % 3) as f64 - 1.0;
                pts.push([rad * phi.cos(), rad * phi.sin(), z]);
            }
        }
        SurfaceSpec::Torus { tube, ring } => {
            let nphi = (samples as f64).sqrt().ceil() as usize;
            let nalpha = samples.div_ceil(nphi);
            'outer: for ia in 0..nalpha {
                let alpha = 2.0 * PI * ia as f64 / nalpha as f64;
                for ip in 0..nphi {
                    if pts.len() == samples {
                        break 'outer;
                    }
                    let phi = 2.0 * PI * ip as f64 / nphi as f64;
                    let arm = ring + tube * alpha.cos();
                    pts.push([arm * phi.cos(), arm * phi.sin(), tube * alpha.sin()]);
                }
            }
        }
    }
    pts
}

fn run_boundary(
    out: Option<&PathBuf>,
    kappas: Option<&str>,
    n: Option<usize>,
    surface: Option<&str>,
    theta: &str,
    samples: usize,
) -> Result<(), CliError> {
    let tol = tol_from_env()?;
    match (kappas, surface) {
        (Some(kappas), None) => {
            let n = n.ok_or_else(|| CliError::Input("--kappas requires --n".into()))?;
            let theta = parse_theta(theta, n)?;
            let text = load_json_text(kappas)?;
            let kap: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("kappas must be a JSON array: {e}")))?;
            let report =
                boundary::classify_convexity(&kap, n, theta, &tol).map_err(boundary_err)?;
            emit_json(
                out,
                &BoundaryOut {
                    strict: report.is_strict(),
                    kappas: report.kappas,
                    sigma_values: report.sigma_values,
                    case: format!("{:?}", report.case),
                    strictness: format!("{:?}", report.strictness),
                },
            )
        }
        (None, Some(surface)) => {
            if samples == 0 {
                return Err(CliError::Input("--samples must be positive".into()));
            }
            let spec = parse_surface(surface)?;
            let theta = parse_theta(theta, 3)?;
            let shape = match spec {
                SurfaceSpec::Sphere(r) => ImplicitSurface::sphere(3, r),
                SurfaceSpec::Cylinder(r) => ImplicitSurface::cylinder(3, r),
                SurfaceSpec::Torus { tube, ring } => ImplicitSurface::torus(tube, ring),
            };
            let mut csv = String::from("x1,x2,x3,kappa_1,kappa_2,case,strict\n");
            for x in sweep_points(&spec, samples) {
                let (_, report) = boundary::classify_surface_point(&shape, &x, theta, &tol)
                    .map_err(boundary_err)?;
                csv.push_str(&format!(
                    "{},{},{},{},{},{:?},{}\n",
                    fmt_f64(x[0]),
                    fmt_f64(x[1]),
                    fmt_f64(x[2]),
                    fmt_f64(report.kappas[0]),
                    fmt_f64(report.kappas[1]),
                    report.case,
                    report.is_strict(),
                ));
            }
            emit(out, &csv)
        }
        _ => Err(CliError::Input(
            "exactly one of --kappas or --surface is required".into(),
        )),
    }
}

fn default_rtol() -> f64 {
    1e-8
}

fn default_max_iters() -> usize {
    100_000
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Method {
    #[default]
    Standard,
    Tame,
}

#[derive(Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
enum DomainSpec {
    Disk { radius: f64 },
    Annulus { r_in: f64, r_out: f64 },
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
}

/// Right-hand side or boundary data: a constant, an expression in x1, x2,
/// and r, or a row-major field over the full padded lattice.
#[derive(Deserialize)]
#[serde(untagged)]
enum ValueSpec {
    Constant(f64),
    Expression(String),
    Field(Vec<f64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpec {
    domain: DomainSpec,
    h: f64,
    psi: ValueSpec,
    phi: ValueSpec,
    #[serde(default = "default_rtol")]
    residual_tol: f64,
    #[serde(default = "default_max_iters")]
    max_iters: usize,
    #[serde(default)]
    relax: Option<f64>,
    #[serde(default)]
    stencil: Option<Vec<(i32, i32)>>,
    #[serde(default)]
    method: Method,
}

fn value_fn(
    spec: &ValueSpec,
    grid: &Grid,
    what: &str,
) -> Result<Box<dyn Fn(f64, f64) -> f64>, CliError> {
    match spec {
        ValueSpec::Constant(c) => {
            let c = *c;
            Ok(Box::new(move |_, _| c))
        }
        ValueSpec::Expression(text) => {
            let e = Expr::parse(text).map_err(|err| CliError::Input(format!("{what}: {err}")))?;
            Ok(Box::new(move |x, y| e.eval(x, y)))
        }
        ValueSpec::Field(values) => {
            if values.len() != grid.len() {
                return Err(CliError::Input(format!(
                    "{what} field must cover the padded lattice: need {} x {} = {} values, got {}",
                    grid.nx,
                    grid.ny,
                    grid.len(),
                    values.len()
                )));
            }
            let g = *grid;
            let values = values.clone();
            Ok(Box::new(move |x, y| {
                let i = ((x - g.x_min) / g.h).round() as usize;
                let j = ((y - g.y_min) / g.h).round() as usize;
                values[g.index(i.min(g.nx - 1), j.min(g.ny - 1))]
            }))
        }
    }
}

fn build_problem(spec: &ProblemSpec) -> Result<SolveProblem, CliError> {
    let h = spec.h;
    let (grid, inside): (Grid, Box<dyn Fn(f64, f64) -> bool>) = match spec.domain {
        DomainSpec::Disk { radius } => {
            let pad = radius + 4.0 * h;
            (
                Grid::from_box(-pad, pad, -pad, pad, h).map_err(solver_err)?,
                Box::new(move |x, y| x * x + y * y < radius * radius),
            )
        }
        DomainSpec::Annulus { r_in, r_out } => {
            let pad = r_out + 4.0 * h;
            (
                Grid::from_box(-pad, pad, -pad, pad, h).map_err(solver_err)?,
                Box::new(move |x, y| {
                    let r2 = x * x + y * y;
                    r2 > r_in * r_in && r2 < r_out * r_out
                }),
            )
        }
        DomainSpec::Rect { x0, x1, y0, y1 } => {
            let pad = 4.0 * h;
            (
                Grid::from_box(x0 - pad, x1 + pad, y0 - pad, y1 + pad, h).map_err(solver_err)?,
                Box::new(move |x, y| x > x0 && x < x1 && y > y0 && y < y1),
            )
        }
    };
    let psi = value_fn(&spec.psi, &grid, "psi")?;
    let phi = value_fn(&spec.phi, &grid, "phi")?;
    let stencil = spec
        .stencil
        .clone()
        .unwrap_or_else(|| WIDE_STENCIL.to_vec());
    SolveProblem::from_region(
        grid,
        inside,
        psi,
        phi,
        &stencil,
        spec.residual_tol,
        spec.max_iters,
        spec.relax.unwrap_or(1.0),
    )
    .map_err(solver_err)
}

fn run_solve(
    out: Option<&PathBuf>,
    problem_path: &PathBuf,
    field: Option<&PathBuf>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(problem_path)
        .map_err(|e| CliError::Input(format!("cannot read '{}': {e}", problem_path.display())))?;
    let spec: ProblemSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad problem file: {e}")))?;
    let problem = build_problem(&spec)?;
    let result = match spec.method {
        Method::Standard => solver::solve(&problem),
        Method::Tame => solver::tame_solve(&problem),
    }
    .map_err(solver_err)?;

    let mut csv = String::from("i,j,x1,x2,u,residual\n");
    for j in 0..problem.grid.ny {
        for i in 0..problem.grid.nx {
            let idx = problem.grid.index(i, j);
            let kind = problem.kind[idx];
            if kind == NodeKind::Exterior {
                continue;
            }
            let (x, y) = problem.grid.pos(i, j);
            let residual = if kind == NodeKind::Interior {
                (discrete_sl_operator(&result.u, i, j, &problem) - problem.psi[idx]).abs()
            } else {
                0.0
            };
            csv.push_str(&format!(
                "{i},{j},{},{},{},{}\n",
                fmt_f64(x),
                fmt_f64(y),
                fmt_f64(result.u[idx]),
                fmt_f64(residual),
            ));
        }
    }
    emit(field, &csv)?;
    emit_json(
        out,
        &SolveSummaryOut {
            iterations: result.iterations,
            residual_sup: result.residual_sup,
            converged: result.converged,
            best_effort: result.best_effort,
        },
    )
}

#[allow(clippy::too_many_arguments)]
fn run_radial(
    out: Option<&PathBuf>,
    theta: &str,
    c: f64,
    n: usize,
    r0: f64,
    r1: f64,
    steps: usize,
    u0: f64,
    format: Format,
) -> Result<(), CliError> {
    let theta = parse_theta(theta, n)?;
    let p = solver::radial_reference(theta, c, n, r0, r1, steps, u0).map_err(solver_err)?;
    match format {
        Format::Json => emit_json(
            out,
            &RadialOut {
                r: p.r,
                y: p.y,
                y_prime: p.y_prime,
                u: p.u,
                max_phase_residual: p.max_phase_residual,
            },
        ),
        Format::Csv => {
            eprintln!("max phase residual {:.3e}", p.max_phase_residual);
            let mut csv = String::from("r,y,y_prime,u\n");
            for i in 0..p.r.len() {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_f64(p.r[i]),
                    fmt_f64(p.y[i]),
                    fmt_f64(p.y_prime[i]),
                    fmt_f64(p.u[i]),
                ));
            }
            emit(out, &csv)
        }
    }
}

fn run_verify(
    out: Option<&PathBuf>,
    u: &str,
    count: usize,
    extent: f64,
    fd_step: Option<f64>,
) -> Result<(), CliError> {
    if count == 0 {
        return Err(CliError::Input("--count must be positive".into()));
    }
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(CliError::Input("--extent must be positive".into()));
    }
    if let Some(h) = fd_step {
        if !(h > 0.0) || !h.is_finite() {
            return Err(CliError::Input("--fd-step must be positive".into()));
        }
    }
    let e = Expr::parse(u).map_err(|err| CliError::Input(format!("u: {err}")))?;
    let coord = |i: usize| {
        if count == 1 {
            0.0
        } else {
            -extent + 2.0 * extent * i as f64 / (count - 1) as f64
        }
    };
    let mut points = Vec::with_capacity(count * count);
    for i in 0..count {
        for j in 0..count {
            points.push([coord(i), coord(j)]);
        }
    }
    let total = points.len();
    let mut sample = LagrangianSample::new(Box::new(move |x, y| e.eval(x, y)), points);
    if let Some(h) = fd_step {
        sample = sample.with_fd_step(h);
    }
    emit_json(
        out,
        &VerifyOut {
            max_deviation: solver::lagrangian_graph_check(&sample),
            points: total,
        },
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = cli.output.as_ref();
    match cli.command {
        Command::Classify { n, theta } => run_classify(out, n, &theta),
        Command::Branch { matrix, k } => run_branch(out, &matrix, k),
        Command::Asym { matrix, theta } => run_asym(out, &matrix, &theta),
        Command::Boundary {
            kappas,
            n,
            surface,
            theta,
            samples,
        } => run_boundary(
            out,
            kappas.as_deref(),
            n,
            surface.as_deref(),
            &theta,
            samples,
        ),
        Command::Solve { problem, field } => run_solve(out, &problem, field.as_ref()),
        Command::Radial {
            theta,
            c,
            n,
            r0,
            r1,
            steps,
            u0,
            format,
        } => run_radial(out, &theta, c, n, r0, r1, steps, u0, format),
        Command::VerifyAppendixA {
            u,
            count,
            extent,
            fd_step,
        } => run_verify(out, &u, count, extent, fd_step),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
