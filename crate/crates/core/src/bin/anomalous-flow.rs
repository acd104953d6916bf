use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use anomalous_flow::cli::{exit_code_for, run, OutputFormat, RunConfig, Scenario};
use anomalous_flow::error::Error;
use anomalous_flow::verify::Fault;

/// Energy flow between correlated local thermal qubits.
///
/// Writes a CSV or JSON table plus `<out>.manifest.json`. Flags override
/// values read from `--config`.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    beta_a: Option<f64>,
    #[arg(long)]
    beta_b: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    n_fock: Option<usize>,
    /// Upper end of the interaction-time scan, in units of 1/g.
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    tau_points: Option<usize>,
    /// Points per axis of the (lambda, theta) grid.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn config_from(args: &Args) -> Result<RunConfig, Error> {
    let mut c = match &args.config {
        Some(p) => RunConfig::from_json_file(p)?,
        None => RunConfig::default(),
    };
    macro_rules! set {
        ($($field:ident <- $arg:ident),* $(,)?) => {
            $(if let Some(v) = args.$arg.clone() { c.$field = v; })*
        };
    }
    set!(
        scenario <- scenario,
        lambda <- lambda,
        theta <- theta,
        beta_a <- beta_a,
        beta_b <- beta_b,
        g <- g,
        epsilon <- epsilon,
        n_fock <- n_fock,
        tau_max <- tau_max,
        tau_points <- tau_points,
        grid <- grid,
        seed <- seed,
        output_format <- format,
    );
    if args.out.is_some() {
        c.output_path = args.out.clone();
    }
    if args.threads.is_some() {
        c.threads = args.threads;
    }
    Ok(c)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let fault = args.inject_fault.then_some(Fault::NonEnergyPreserving);
    let result = config_from(&args).and_then(|c| run(&c, fault));
    match result {
        Ok((outcome, path)) => {
            eprintln!("{}", outcome.summary);
            for f in &outcome.failures {
                eprintln!("failed: {f}");
            }
            eprintln!("wrote {}", path.display());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
