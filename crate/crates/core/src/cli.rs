//! Scenario runner behind the `anomalous-flow` binary: configuration,
//! deterministic CSV/JSON tables and the run manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bound::{catalytic_bound, verify_bound_ordering};
use crate::catalysis::{
    catalytic_protocol, linspace01, optimize_tau, sweep_lambda_theta, toy_scenario, SweepConfig,
    SweepRecord, TauScan,
};
use crate::entropic::mutual_information;
use crate::error::{Error, Result};
use crate::flow::{optimal_arbitrary_unitary, optimal_energy_preserving};
use crate::model::{rho_lambda_theta, CorrelatedStateParams, DEFAULT_DEGENERACY_TOL};
use crate::verify::{run_verify, Fault, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;
pub const SWEEP_HEADER: [&str; 9] = [
    "lambda",
    "theta",
    "dE_star",
    "dE_cat",
    "tau_star",
    "advantage",
    "catalyst_residual",
    "energy_residual",
    "bound",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Optimal,
    Catalytic,
    Sweep,
    Bound,
    Toy,
    Verify,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Optimal => "optimal",
            Scenario::Catalytic => "catalytic",
            Scenario::Sweep => "sweep",
            Scenario::Bound => "bound",
            Scenario::Toy => "toy",
            Scenario::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Slack on the ordering `bound <= ΔE_A^c <= ΔE★_A`.
    pub ordering: f64,
    /// Catalyst restoration and energy conservation.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ordering: 1e-7,
            residual: 1e-9,
        }
    }
}

/// Everything a run depends on. Energies are in the units of `epsilon`,
/// times in units of `1/g` (of `1/epsilon` when `g = 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub epsilon: f64,
    pub g: f64,
    pub n_fock: usize,
    pub beta_a: f64,
    pub beta_b: f64,
    /// Single point for the `optimal`, `catalytic` and `bound` scenarios.
    pub lambda: f64,
    pub theta: f64,
    /// Side of the uniform `[0, 1]` grid used when `lambdas`/`thetas` are absent.
    pub grid: usize,
    pub lambdas: Option<Vec<f64>>,
    pub thetas: Option<Vec<f64>>,
    pub tau_min: Option<f64>,
    pub tau_max: f64,
    pub tau_points: usize,
    pub refine_iterations: usize,
    pub with_bound: bool,
    pub tolerances: Tolerances,
    pub verify: VerifyOptions,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::Sweep,
            epsilon: 1.0,
            g: 0.1,
            n_fock: 3,
            beta_a: 2.0,
            beta_b: 0.5,
            lambda: 0.5,
            theta: 0.25,
            grid: 25,
            lambdas: None,
            thetas: None,
            tau_min: None,
            tau_max: 20.0,
            tau_points: 400,
            refine_iterations: 40,
            with_bound: true,
            tolerances: Tolerances::default(),
            verify: VerifyOptions::default(),
            seed: 0,
            output_path: None,
            output_format: OutputFormat::Csv,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let reals = [
            ("epsilon", self.epsilon),
            ("g", self.g),
            ("beta_a", self.beta_a),
            ("beta_b", self.beta_b),
            ("lambda", self.lambda),
            ("theta", self.theta),
            ("tau_max", self.tau_max),
            ("tolerances.ordering", self.tolerances.ordering),
            ("tolerances.residual", self.tolerances.residual),
        ];
        for (name, v) in reals {
            if !v.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if self.grid == 0 {
            return Err(Error::Config("grid must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        self.sweep_config()
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        if matches!(
            self.scenario,
            Scenario::Optimal | Scenario::Catalytic | Scenario::Bound
        ) {
            self.point()
                .validate()
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn tau_scan(&self) -> TauScan {
        let mut scan = TauScan::uniform(self.tau_max, self.tau_points);
        if let Some(t) = self.tau_min {
            scan.tau_min = t;
        }
        scan.refine_iterations = self.refine_iterations;
        scan
    }

    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            lambdas: self
                .lambdas
                .clone()
                .unwrap_or_else(|| linspace01(self.grid)),
            thetas: self.thetas.clone().unwrap_or_else(|| linspace01(self.grid)),
            tau: self.tau_scan(),
            beta_a: self.beta_a,
            beta_b: self.beta_b,
            epsilon: self.epsilon,
            g: self.g,
            n_fock: self.n_fock,
            with_bound: self.with_bound,
        }
    }

    pub fn point(&self) -> CorrelatedStateParams {
        CorrelatedStateParams {
            lambda: self.lambda,
            theta: self.theta,
            beta_a: self.beta_a,
            beta_b: self.beta_b,
            epsilon: self.epsilon,
        }
    }

    pub fn resolved_output(&self) -> PathBuf {
        self.output_path.clone().unwrap_or_else(|| {
            PathBuf::from(format!(
                "{}.{}",
                self.scenario.name(),
                self.output_format.extension()
            ))
        })
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// `{:.16e}` gives 17 significant digits, enough to round-trip any `f64`.
fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(table: &Table) -> String {
    let mut out = table
        .header
        .iter()
        .map(|h| csv_field(h))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(x) => format_number(*x),
                Cell::Int(i) => i.to_string(),
                Cell::Bool(b) => b.to_string(),
                Cell::Text(s) => csv_field(s),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Array of objects; non-finite numbers become `null`.
pub fn to_json(table: &Table) -> String {
    let mut out = String::from("[\n");
    for (r, row) in table.rows.iter().enumerate() {
        out.push_str("  {");
        for (k, (name, cell)) in table.header.iter().zip(row).enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            let value = match cell {
                Cell::Num(x) if x.is_finite() => format_number(*x),
                Cell::Num(_) => "null".into(),
                Cell::Int(i) => i.to_string(),
                Cell::Bool(b) => b.to_string(),
                Cell::Text(s) => serde_json::to_string(s).expect("string serialises"),
            };
            let _ = write!(
                out,
                "{}: {}",
                serde_json::to_string(name).expect("string serialises"),
                value
            );
        }
        out.push('}');
        if r + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub table: Table,
    /// Named residual summaries, echoed into the manifest.
    pub residuals: Vec<(String, f64)>,
    pub failures: Vec<String>,
    /// Process exit status: 0, 2 (numerical failure) or 3 (verification failure).
    pub exit_code: i32,
    pub summary: String,
}

fn sweep_table(records: &[SweepRecord]) -> Table {
    let mut t = Table::new(&SWEEP_HEADER);
    for r in records {
        t.rows.push(
            [
                r.lambda,
                r.theta,
                r.de_star,
                r.de_cat,
                r.tau_star,
                r.advantage,
                r.catalyst_residual,
                r.energy_residual,
                r.bound,
            ]
            .into_iter()
            .map(Cell::Num)
            .collect(),
        );
    }
    t
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values
        .filter(|v| !v.is_nan())
        .fold(f64::NEG_INFINITY, f64::max)
}

fn run_sweep(config: &RunConfig) -> Result<RunOutcome> {
    let records = sweep_lambda_theta(&config.sweep_config())?;
    let ok = || records.iter().filter(|r| r.error.is_none());
    let failures: Vec<String> = records
        .iter()
        .filter_map(|r| {
            r.error
                .as_ref()
                .map(|e| format!("λ = {}, θ = {}: {e}", r.lambda, r.theta))
        })
        .collect();
    let ordering = verify_bound_ordering(&records, config.tolerances.ordering);
    let residuals = vec![
        (
            "max_catalyst_residual".into(),
            max_of(ok().map(|r| r.catalyst_residual)),
        ),
        (
            "max_energy_residual".into(),
            max_of(ok().map(|r| r.energy_residual)),
        ),
        ("min_advantage".into(), -max_of(ok().map(|r| -r.advantage))),
        (
            "max_bound_energy_residual".into(),
            max_of(ok().map(|r| r.bound_energy_residual.abs())),
        ),
        (
            "max_bound_entropy_deficit".into(),
            max_of(ok().map(|r| (-r.bound_entropy_residual).max(0.0))),
        ),
        ("worst_bound_slack".into(), ordering.worst_slack),
        (
            "min_clausius_slack".into(),
            -max_of(ok().map(|r| -r.clausius_slack)),
        ),
    ];
    let summary = format!(
        "{} grid points, {} failed, max catalyst residual {:.3e}, max energy residual {:.3e}",
        records.len(),
        failures.len(),
        residuals[0].1,
        residuals[1].1
    );
    Ok(RunOutcome {
        table: sweep_table(&records),
        residuals,
        exit_code: if failures.is_empty() { 0 } else { 2 },
        failures,
        summary,
    })
}

fn run_catalytic(config: &RunConfig) -> Result<RunOutcome> {
    let params = config.point();
    let rho = rho_lambda_theta(&params)?;
    let system = params.system();
    let star = optimal_energy_preserving(
        &rho,
        &system,
        &system.block_structure(DEFAULT_DEGENERACY_TOL),
    )?
    .delta_e_a;
    let dynamics = config.sweep_config().dynamics()?;
    let opt = optimize_tau(&rho, &system, &dynamics, &config.tau_scan())?;
    let mut t = Table::new(&[
        "lambda",
        "theta",
        "dE_star",
        "dE_cat",
        "tau_star",
        "advantage",
        "catalyst_residual",
        "energy_residual",
        "fixed_space_dim",
        "at_limit",
    ]);
    let p = &opt.protocol;
    t.rows.push(vec![
        Cell::Num(params.lambda),
        Cell::Num(params.theta),
        Cell::Num(star),
        Cell::Num(opt.delta_e_cat),
        Cell::Num(opt.tau_star),
        Cell::Num(star - opt.delta_e_cat),
        Cell::Num(p.catalyst_residual),
        Cell::Num(p.energy_residual),
        Cell::Int(p.catalyst.fixed_space_dim as u64),
        Cell::Bool(opt.at_limit),
    ]);
    Ok(RunOutcome {
        table: t,
        residuals: vec![
            ("catalyst_residual".into(), p.catalyst_residual),
            ("energy_residual".into(), p.energy_residual),
        ],
        failures: vec![],
        exit_code: 0,
        summary: format!(
            "dE_star = {star:.6}, dE_cat = {:.6} at g tau = {:.6}",
            opt.delta_e_cat, opt.tau_star
        ),
    })
}

fn run_optimal(config: &RunConfig) -> Result<RunOutcome> {
    let params = config.point();
    let rho = rho_lambda_theta(&params)?;
    let system = params.system();
    let ep = optimal_energy_preserving(
        &rho,
        &system,
        &system.block_structure(DEFAULT_DEGENERACY_TOL),
    )?;
    let arb = optimal_arbitrary_unitary(&rho, &system)?;
    let mi = mutual_information(&rho, 2, 2)?;
    let mut t = Table::new(&[
        "lambda",
        "theta",
        "dE_star",
        "dE_arbitrary",
        "q_ground",
        "q_excited",
        "mutual_information",
    ]);
    t.rows.push(vec![
        Cell::Num(params.lambda),
        Cell::Num(params.theta),
        Cell::Num(ep.delta_e_a),
        Cell::Num(arb.delta_e_a),
        Cell::Num(ep.occupations[0]),
        Cell::Num(ep.occupations[1]),
        Cell::Num(mi),
    ]);
    let commutator = system.h0().commutator_norm(ep.unitary.matrix());
    Ok(RunOutcome {
        table: t,
        residuals: vec![("optimal_unitary_commutator".into(), commutator)],
        failures: vec![],
        exit_code: 0,
        summary: format!(
            "dE_star = {:.6}, dE_arbitrary = {:.6}",
            ep.delta_e_a, arb.delta_e_a
        ),
    })
}

fn run_bound(config: &RunConfig) -> Result<RunOutcome> {
    let params = config.point();
    let rho = rho_lambda_theta(&params)?;
    let b = catalytic_bound(&rho, &params.system())?;
    let (alpha, lambda) = b.multipliers.unwrap_or((f64::NAN, f64::NAN));
    let mut t = Table::new(&[
        "lambda",
        "theta",
        "bound",
        "alpha",
        "lambda_multiplier",
        "entropy_residual",
        "energy_residual",
        "entropy_binding",
        "converged",
    ]);
    t.rows.push(vec![
        Cell::Num(params.lambda),
        Cell::Num(params.theta),
        Cell::Num(b.value),
        Cell::Num(alpha),
        Cell::Num(lambda),
        Cell::Num(b.entropy_residual),
        Cell::Num(b.energy_residual),
        Cell::Bool(b.entropy_binding),
        Cell::Bool(b.converged),
    ]);
    let failures = if b.converged {
        vec![]
    } else {
        vec!["bound solver did not converge".to_string()]
    };
    Ok(RunOutcome {
        table: t,
        residuals: vec![
            ("entropy_residual".into(), b.entropy_residual),
            ("energy_residual".into(), b.energy_residual),
        ],
        exit_code: if b.converged { 0 } else { 2 },
        failures,
        summary: format!("bound = {:.6}", b.value),
    })
}

fn run_toy(config: &RunConfig) -> Result<RunOutcome> {
    let toy = toy_scenario(config.epsilon)?;
    let r = catalytic_protocol(&toy.rho_ab, 0.0, &toy.system, &toy.dynamics)?;
    let sa = toy.system.marginal(&r.sigma_ab, 0)?.populations();
    let sb = toy.system.marginal(&r.sigma_ab, 1)?.populations();
    let mut t = Table::new(&[
        "dE_A",
        "sigma_A_00",
        "sigma_A_11",
        "sigma_B_00",
        "sigma_B_11",
        "catalyst_residual",
        "energy_residual",
    ]);
    t.rows.push(
        [
            r.delta_e_a,
            sa[0],
            sa[1],
            sb[0],
            sb[1],
            r.catalyst_residual,
            r.energy_residual,
        ]
        .into_iter()
        .map(Cell::Num)
        .collect(),
    );
    Ok(RunOutcome {
        table: t,
        residuals: vec![
            ("catalyst_residual".into(), r.catalyst_residual),
            ("energy_residual".into(), r.energy_residual),
        ],
        failures: vec![],
        exit_code: 0,
        summary: format!("dE_A = {:.16e}", r.delta_e_a),
    })
}

fn run_verify_scenario(config: &RunConfig, fault: Option<Fault>) -> Result<RunOutcome> {
    let opts = VerifyOptions {
        seed: config.seed,
        inject_fault: fault.or(config.verify.inject_fault),
        ..config.verify.clone()
    };
    let report = run_verify(&opts)?;
    let mut t = Table::new(&["property", "trials", "worst_residual", "tolerance", "pass"]);
    for p in &report.properties {
        t.rows.push(vec![
            Cell::Text(p.property.clone()),
            Cell::Int(p.trials as u64),
            Cell::Num(p.worst_residual),
            Cell::Num(p.tolerance),
            Cell::Bool(p.pass),
        ]);
    }
    let failures: Vec<String> = report
        .properties
        .iter()
        .filter(|p| !p.pass)
        .map(|p| p.property.clone())
        .collect();
    Ok(RunOutcome {
        residuals: report
            .properties
            .iter()
            .map(|p| (p.property.clone(), p.worst_residual))
            .collect(),
        summary: format!(
            "{} properties, {} failed",
            report.properties.len(),
            failures.len()
        ),
        exit_code: if report.pass { 0 } else { 3 },
        failures,
        table: t,
    })
}

/// Runs the configured scenario on a pool of `config.threads` workers.
/// Does not touch the file system.
pub fn execute(config: &RunConfig, fault: Option<Fault>) -> Result<RunOutcome> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| match config.scenario {
        Scenario::Optimal => run_optimal(config),
        Scenario::Catalytic => run_catalytic(config),
        Scenario::Sweep => run_sweep(config),
        Scenario::Bound => run_bound(config),
        Scenario::Toy => run_toy(config),
        Scenario::Verify => run_verify_scenario(config, fault),
    })
}

pub fn manifest_path(data: &Path) -> PathBuf {
    let mut s = data.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Runs the scenario and writes the data file and `<data>.manifest.json`.
pub fn run(config: &RunConfig, fault: Option<Fault>) -> Result<(RunOutcome, PathBuf)> {
    let start = Instant::now();
    let outcome = execute(config, fault)?;
    let path = config.resolved_output();
    let body = match config.output_format {
        OutputFormat::Csv => to_csv(&outcome.table),
        OutputFormat::Json => to_json(&outcome.table),
    };
    std::fs::write(&path, body)?;
    let residuals: serde_json::Map<String, serde_json::Value> = outcome
        .residuals
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                serde_json::Number::from_f64(*v).map_or(serde_json::Value::Null, Into::into),
            )
        })
        .collect();
    let manifest = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "seed": config.seed,
        "rng": "ChaCha8",
        "output": path.display().to_string(),
        "residuals": residuals,
        "failures": outcome.failures,
        "exit_code": outcome.exit_code,
        "wall_time_seconds": start.elapsed().as_secs_f64(),
        "versions": {
            "anomalous-flow": env!("CARGO_PKG_VERSION"),
        },
    });
    std::fs::write(
        manifest_path(&path),
        serde_json::to_string_pretty(&manifest)? + "\n",
    )?;
    Ok((outcome, path))
}

/// Exit status for an error returned by [`run`].
pub fn exit_code_for(err: &Error) -> i32 {
    if err.is_numerical() {
        2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_has_seventeen_digits() {
        assert_eq!(format_number(-0.25), "-2.5000000000000000e-1");
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
        assert_eq!(format_number(f64::NAN), "NaN");
        let x = std::f64::consts::PI;
        assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new(&["a", "b,c"]);
        t.rows.push(vec![Cell::Num(1.0), Cell::Text("x\"y".into())]);
        assert_eq!(to_csv(&t), "a,\"b,c\"\n1.0000000000000000e0,\"x\"\"y\"\n");
        let json: serde_json::Value = serde_json::from_str(&to_json(&t)).unwrap();
        assert_eq!(json[0]["a"], 1.0);
        assert_eq!(json[0]["b,c"], "x\"y");
    }

    #[test]
    fn config_round_trips_and_rejects_unknown_keys() {
        let c = RunConfig::default();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"scenario": "toy", "bogus": 1}"#).is_err());
        let partial: RunConfig =
            serde_json::from_str(r#"{"scenario": "bound", "lambda": 0.1}"#).unwrap();
        assert_eq!(partial.scenario, Scenario::Bound);
        assert_eq!(partial.beta_a, 2.0);
    }

    #[test]
    fn invalid_configs_are_config_errors() {
        let bad = [
            RunConfig {
                epsilon: f64::NAN,
                ..RunConfig::default()
            },
            RunConfig {
                tau_points: 1,
                ..RunConfig::default()
            },
            RunConfig {
                scenario: Scenario::Optimal,
                lambda: 0.8,
                theta: 0.5,
                ..RunConfig::default()
            },
            RunConfig {
                beta_a: 0.1,
                ..RunConfig::default()
            },
            RunConfig {
                n_fock: 1,
                ..RunConfig::default()
            },
        ];
        for c in bad {
            let e = execute(&c, None).unwrap_err();
            assert_eq!(exit_code_for(&e), 1, "{e}");
        }
    }

    #[test]
    fn toy_row() {
        let c = RunConfig {
            scenario: Scenario::Toy,
            ..RunConfig::default()
        };
        let out = execute(&c, None).unwrap();
        match out.table.rows[0][0] {
            Cell::Num(x) => assert!((x + 0.25).abs() < 1e-12, "{x}"),
            _ => unreachable!(),
        }
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn one_point_sweep_at_origin() {
        let c = RunConfig {
            lambdas: Some(vec![0.0]),
            thetas: Some(vec![0.0]),
            tau_points: 20,
            ..RunConfig::default()
        };
        let out = execute(&c, None).unwrap();
        assert_eq!(out.table.header, SWEEP_HEADER.to_vec());
        assert_eq!(out.table.rows.len(), 1);
        for k in [2, 3, 5] {
            match out.table.rows[0][k] {
                Cell::Num(x) => assert!(x.abs() < 1e-12),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn manifest_sits_beside_the_data() {
        assert_eq!(
            manifest_path(Path::new("out/x.csv")),
            PathBuf::from("out/x.csv.manifest.json")
        );
    }
}
