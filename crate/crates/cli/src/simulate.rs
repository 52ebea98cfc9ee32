use std::path::PathBuf;

use clap::{Args, ValueEnum};
use tduality::oracle::{
    exact_trajectory, momentum_image, residual_report, rk4_sampled, uniform_grid, validate_state, PhasePoint,
    SystemId, Trajectory,
};
use tduality::phase::{orbit_coords, R2Params, R2Pt, TBPt, TSU2Pt};
use tduality::{BCov, BEl, SU2El, Su2Cov, Su2Vec, C64};

use crate::error::{CliError, CliResult};
use crate::output;

/// Allowed distance of `det J` from 1 for an initial state.
pub const NORMALIZATION_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Toda,
    R2,
    Tb,
    Tsu2,
    Orbit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Rk4,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub system: SystemArg,
    /// Initial position on the line (toda, r2).
    #[arg(long, allow_hyphen_values = true)]
    pub q0: Option<f64>,
    /// Initial momentum on the line (toda, r2).
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<f64>,
    /// Scale μ > 0 of the r2 system [default: 0.5].
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Coupling ε of the r2 system [default: √2].
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Leaf angle θ of the r2 system, in radians [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Group element of B as `a,b,c` with a > 0 (tb).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub bel: Option<Vec<f64>>,
    /// Covector coordinates `x,y,z` (tb: on E, iE, H; tsu2: on X1, X2, X3).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub eta: Option<Vec<f64>>,
    /// `re,im` of α for g = [[α, β], [-β̄, ᾱ]] (tsu2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub alpha: Option<Vec<f64>>,
    /// `re,im` of β (tsu2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub beta: Option<Vec<f64>>,
    /// Initial orbit point `a1,a2,a3` (orbit).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub x0: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t_end: f64,
    /// Number of output samples, including both endpoints.
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    /// Largest RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file [default: stdout].
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the finite-difference residual report as JSON to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn required<T: Copy>(value: Option<T>, flag: &str, system: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Input(format!("--{flag} is required for --system {system}")))
}

fn triple(value: &Option<Vec<f64>>, flag: &str, system: &str) -> CliResult<[f64; 3]> {
    let v = value.as_ref().ok_or_else(|| CliError::Input(format!("--{flag} is required for --system {system}")))?;
    <[f64; 3]>::try_from(v.as_slice())
        .map_err(|_| CliError::Input(format!("--{flag} takes 3 comma-separated numbers, got {}", v.len())))
}

fn complex(value: &Option<Vec<f64>>, flag: &str, system: &str) -> CliResult<C64> {
    let v = value.as_ref().ok_or_else(|| CliError::Input(format!("--{flag} is required for --system {system}")))?;
    match v.as_slice() {
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(CliError::Input(format!("--{flag} takes `re,im`, got {} numbers", v.len()))),
    }
}

/// Leaf angle of a momentum image; points on the X3 axis lie on every leaf.
fn leaf_angle(j: &Su2Vec) -> f64 {
    orbit_coords(j).map_or(0.0, |o| o.theta)
}

/// Builds the system and initial state described by the flags.
pub fn initial_state(args: &SimulateArgs) -> CliResult<(SystemId, PhasePoint)> {
    let name = match args.system {
        SystemArg::Toda => "toda",
        SystemArg::R2 => "r2",
        SystemArg::Tb => "tb",
        SystemArg::Tsu2 => "tsu2",
        SystemArg::Orbit => "orbit",
    };
    let (system, state) = match args.system {
        SystemArg::Toda | SystemArg::R2 => {
            let params = if args.system == SystemArg::Toda {
                if args.mu.is_some() || args.eps.is_some() || args.theta.is_some() {
                    return Err(CliError::Input("--system toda fixes mu, eps and theta; use --system r2".into()));
                }
                R2Params::toda()
            } else {
                let toda = R2Params::toda();
                R2Params::new(
                    args.mu.unwrap_or(toda.mu),
                    args.eps.unwrap_or(toda.eps),
                    args.theta.unwrap_or(toda.theta),
                )?
            };
            if params.eps == 0.0 {
                return Err(CliError::Input("eps must be nonzero".into()));
            }
            let pt = R2Pt::new(required(args.q0, "q0", name)?, required(args.p0, "p0", name)?);
            (SystemId::R2(params), PhasePoint::R2(pt))
        }
        SystemArg::Tb => {
            let [a, b, c] = triple(&args.bel, "bel", name)?;
            let [e, et, h] = triple(&args.eta, "eta", name)?;
            (SystemId::TB, PhasePoint::TB(TBPt { bel: BEl::new(a, b, c)?, eta: BCov::new(e, et, h) }))
        }
        SystemArg::Tsu2 => {
            let g = SU2El::new(complex(&args.alpha, "alpha", name)?, complex(&args.beta, "beta", name)?)?;
            let [c1, c2, c3] = triple(&args.eta, "eta", name)?;
            let state = PhasePoint::TSU2(TSU2Pt { g, eta: Su2Cov::new(c1, c2, c3) });
            let theta = leaf_angle(&momentum_image(&SystemId::TSU2 { theta: 0.0 }, &state)?);
            (SystemId::TSU2 { theta }, state)
        }
        SystemArg::Orbit => {
            let [a1, a2, a3] = triple(&args.x0, "x0", name)?;
            let x = Su2Vec::new(a1, a2, a3);
            (SystemId::Orbit { theta: leaf_angle(&x) }, PhasePoint::Orbit(x))
        }
    };
    validate_state(&system, &state)?;
    let det = momentum_image(&system, &state)?.det();
    let normalized = (det - 1.0).abs() < NORMALIZATION_TOL;
    if !normalized {
        let constraint = match args.system {
            SystemArg::Toda => "p0^2 + 2 exp(2 q0) = 1".to_string(),
            SystemArg::R2 => "(p0/(2 mu))^2 + eps^2 exp(4 mu q0) = 1".to_string(),
            _ => "det of the momentum image = 1".to_string(),
        };
        return Err(CliError::Validation(format!(
            "normalization constraint {constraint} violated: det J = {det:.6} (tolerance {NORMALIZATION_TOL:e})"
        )));
    }
    Ok((system, state))
}

/// Largest coordinate difference per sample.
pub fn deviation(a: &Trajectory, b: &Trajectory) -> Vec<f64> {
    a.samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| {
            x.state.coords().iter().zip(y.state.coords()).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
        })
        .collect()
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    if !args.t_end.is_finite() || args.t_end == 0.0 {
        return Err(CliError::Input("--t-end must be finite and nonzero".into()));
    }
    if args.samples < 2 {
        return Err(CliError::Input("--samples must be at least 2".into()));
    }
    if !(args.h > 0.0 && args.h.is_finite()) {
        return Err(CliError::Input("--h must be positive".into()));
    }
    let (system, state) = initial_state(args)?;
    let times = uniform_grid(args.t_end.min(0.0), args.t_end.max(0.0), args.samples - 1);
    let (traj, dev) = match args.method {
        MethodArg::Exact => (exact_trajectory(&system, &state, &times)?, None),
        MethodArg::Rk4 => (rk4_sampled(&system, &state, &times, args.h)?, None),
        MethodArg::Both => {
            let exact = exact_trajectory(&system, &state, &times)?;
            let rk4 = rk4_sampled(&system, &state, &times, args.h)?;
            let dev = deviation(&exact, &rk4);
            (rk4, Some(dev))
        }
    };
    let method_label = match args.method {
        MethodArg::Exact => "exact",
        MethodArg::Rk4 => "rk4",
        MethodArg::Both => "both",
    };
    let label = match args.system {
        SystemArg::Toda => "toda",
        _ => system.name(),
    };
    let bytes = match args.format {
        Format::Csv => output::to_csv(&traj, dev.as_deref())?,
        Format::Json => output::to_json(label, method_label, &traj, dev.as_deref())?,
    };
    if let Some(path) = &args.report {
        let report = residual_report(&traj, &system)?;
        let mut text = serde_json::to_vec_pretty(&report).expect("report serializes");
        text.push(b'\n');
        output::emit(Some(path), &text)?;
    }
    output::emit(args.output.as_deref(), &bytes)
}
