use std::path::PathBuf;

use clap::Args;
use tduality::verify::{run as run_suites, Suite};

use crate::error::{CliError, CliResult};
use crate::output;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of suites.
    #[arg(long, default_value = "all", value_delimiter = ',', num_args = 1)]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples per property [default: each property's own count].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Report file [default: stdout].
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn parse_suites(names: &[String]) -> CliResult<Vec<Suite>> {
    if names.iter().any(|n| n == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            n.parse::<Suite>().map_err(|_| {
                let known: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                CliError::Input(format!("unknown suite `{n}`; expected all or one of {}", known.join(", ")))
            })
        })
        .collect()
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    if args.samples == Some(0) {
        return Err(CliError::Input("--samples must be positive".into()));
    }
    let suites = parse_suites(&args.suite)?;
    let report = run_suites(&suites, args.seed, args.samples);
    let mut bytes = serde_json::to_vec_pretty(&report).expect("report serializes");
    bytes.push(b'\n');
    output::emit(args.output.as_deref(), &bytes)?;
    let failures: Vec<String> = report
        .properties
        .iter()
        .filter(|p| !p.passed)
        .map(|p| {
            let seed = p.failing_seed.map_or("none".to_string(), |s| s.to_string());
            let cause = p.error.clone().unwrap_or_else(|| format!("defect {:e} >= {:e}", p.max_defect, p.tolerance));
            format!("property {} ({}) failed at sample seed {seed}: {cause}", p.name, p.suite)
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(failures.join("; ")))
    }
}
