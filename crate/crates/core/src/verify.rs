//! Randomised property suites that cross-check the modules against each other.
//!
//! Every trial draws from its own ChaCha stream `(seed, trial)`, so results do
//! not depend on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::{catalytic_bound, verify_bound_ordering};
use crate::catalysis::{
    fixed_point_catalyst, sweep_lambda_theta, CatalyticDynamics, SweepConfig, TauScan,
    TavisCummingsDynamics,
};
use crate::entropic::{clausius_bound_check, exchange_identity_residual, ExchangeLedger};
use crate::error::Result;
use crate::flow::{block_dephase, delta_e_a, optimal_arbitrary_unitary, optimal_energy_preserving};
use crate::model::{gibbs_state, qubit_hamiltonian, CompositeSystem, DEFAULT_DEGENERACY_TOL};
use crate::random::{
    haar_unitary, random_block_unitary, random_density_matrix, random_state_with_marginals,
    seeded_stream,
};

/// Deliberate defects for negative-control runs of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Replace the energy-preserving unitaries of the dephasing check by Haar unitaries.
    NonEnergyPreserving,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub dephasing_trials: usize,
    pub exchange_trials: usize,
    pub optimality_states: usize,
    pub optimality_samples: usize,
    pub hierarchy_states: usize,
    /// Side of the `(λ, θ)` grid used for the catalytic ordering checks.
    pub sweep_grid: usize,
    pub sweep_tau_points: usize,
    pub inject_fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            dephasing_trials: 500,
            exchange_trials: 1000,
            optimality_states: 20,
            optimality_samples: 1000,
            hierarchy_states: 200,
            sweep_grid: 5,
            sweep_tau_points: 60,
            inject_fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub trials: usize,
    /// Largest violation seen; negative values are a margin.
    pub worst_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyReport {
    fn new(property: &str, residuals: &[f64], tolerance: f64) -> Self {
        let worst = residuals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        PropertyReport {
            property: property.to_string(),
            trials: residuals.len(),
            worst_residual: worst,
            tolerance,
            pass: !residuals.is_empty() && residuals.iter().all(|r| *r <= tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub properties: Vec<PropertyReport>,
    pub pass: bool,
}

fn equal_gap_qubits() -> CompositeSystem {
    CompositeSystem::qubits(&[1.0, 1.0]).expect("two qubits")
}

/// `|ΔE_A(ϱ) - ΔE_A(dephased ϱ)|` under random energy-preserving unitaries.
pub fn dephasing_invariance(opts: &VerifyOptions) -> Result<PropertyReport> {
    let sys = equal_gap_qubits();
    let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
    let residuals = (0..opts.dephasing_trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeded_stream(opts.seed, 1_000_000 + t as u64);
            let rho = random_density_matrix(4, &mut rng);
            let u = match opts.inject_fault {
                Some(Fault::NonEnergyPreserving) => haar_unitary(4, &mut rng),
                None => random_block_unitary(&blocks, &mut rng),
            };
            let dephased = block_dephase(&rho, &blocks)?;
            Ok((delta_e_a(&rho, &u, &sys)? - delta_e_a(&dephased, &u, &sys)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyReport::new(
        "block_dephasing_invariance",
        &residuals,
        1e-10,
    ))
}

/// Exchange identity and Clausius-type inequality over states with thermal
/// marginals, evolved by energy-preserving unitaries, general unitaries, and
/// catalytic Tavis-Cummings channels (one third each).
pub fn exchange_identity(opts: &VerifyOptions) -> Result<(PropertyReport, PropertyReport)> {
    let sys = equal_gap_qubits();
    let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
    let dynamics = TavisCummingsDynamics::new(1.0, 0.1, 3)?;
    let h = qubit_hamiltonian(1.0);
    let pairs = (0..opts.exchange_trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeded_stream(opts.seed, 2_000_000 + t as u64);
            let beta_b: f64 = rng.random_range(0.0..1.5);
            let beta_a = beta_b + rng.random_range(0.0..2.5);
            let rho = random_state_with_marginals(
                &gibbs_state(beta_a, &h)?,
                &gibbs_state(beta_b, &h)?,
                &mut rng,
            );
            let sigma = match t % 3 {
                0 => rho.evolve(&random_block_unitary(&blocks, &mut rng))?,
                1 => rho.evolve(&haar_unitary(4, &mut rng))?,
                _ => {
                    let u = dynamics.unitary(rng.random_range(0.05..20.0));
                    let omega = fixed_point_catalyst(&rho, &u, 3)?.omega;
                    rho.tensor(&omega)
                        .evolve(&u)?
                        .partial_trace(&[4, 3], &[0])?
                }
            };
            let residual = exchange_identity_residual(&rho, &sigma, &sys, beta_a, beta_b)?;
            let ledger = ExchangeLedger::compute(&rho, &sigma, &sys)?;
            Ok((
                residual,
                -clausius_bound_check(&ledger, beta_a, beta_b).slack,
            ))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (residuals, violations): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok((
        PropertyReport::new("exchange_identity", &residuals, 1e-9),
        PropertyReport::new("clausius_inequality", &violations, 1e-9),
    ))
}

/// `ΔE★_A - ΔE_A(U)` over sampled energy-preserving unitaries (must not be positive).
pub fn energy_preserving_optimality(opts: &VerifyOptions) -> Result<PropertyReport> {
    let sys = equal_gap_qubits();
    let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
    let worst = (0..opts.optimality_states)
        .into_par_iter()
        .map(|s| {
            let mut rng = seeded_stream(opts.seed, 3_000_000 + s as u64);
            let rho = random_density_matrix(4, &mut rng);
            let star = optimal_energy_preserving(&rho, &sys, &blocks)?.delta_e_a;
            let mut worst = f64::NEG_INFINITY;
            for _ in 0..opts.optimality_samples {
                let u = random_block_unitary(&blocks, &mut rng);
                worst = worst.max(star - delta_e_a(&rho, &u, &sys)?);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut report = PropertyReport::new("energy_preserving_optimality", &worst, 1e-9);
    report.trials = opts.optimality_states * opts.optimality_samples;
    Ok(report)
}

/// `arbitrary <= ΔE★` and `bound <= ΔE★` on random states.
pub fn hierarchy(opts: &VerifyOptions) -> Result<(PropertyReport, PropertyReport)> {
    let sys = equal_gap_qubits();
    let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
    let pairs = (0..opts.hierarchy_states)
        .into_par_iter()
        .map(|s| {
            let mut rng = seeded_stream(opts.seed, 4_000_000 + s as u64);
            let rho = random_density_matrix(4, &mut rng);
            let star = optimal_energy_preserving(&rho, &sys, &blocks)?.delta_e_a;
            let arb = optimal_arbitrary_unitary(&rho, &sys)?.delta_e_a;
            let bound = catalytic_bound(&rho, &sys)?.value;
            Ok((arb - star, bound - star))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok((
        PropertyReport::new("arbitrary_below_energy_preserving", &a, 1e-10),
        PropertyReport::new("bound_below_energy_preserving", &b, 1e-7),
    ))
}

/// Catalytic ordering and protocol contracts on a small `(λ, θ)` sweep.
pub fn catalytic_contracts(opts: &VerifyOptions) -> Result<Vec<PropertyReport>> {
    let config = SweepConfig {
        tau: TauScan::uniform(20.0, opts.sweep_tau_points),
        ..SweepConfig::with_grid(opts.sweep_grid)
    };
    let records = sweep_lambda_theta(&config)?;
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    let ok: Vec<_> = records.iter().filter(|r| r.error.is_none()).collect();
    let col = |f: &dyn Fn(&crate::catalysis::SweepRecord) -> f64| {
        ok.iter().map(|r| f(r)).collect::<Vec<f64>>()
    };
    let ordering = verify_bound_ordering(&records, 1e-7);
    let mut out = vec![
        PropertyReport::new(
            "catalytic_below_energy_preserving",
            &col(&|r| -r.advantage),
            1e-9,
        ),
        PropertyReport::new("catalyst_restoration", &col(&|r| r.catalyst_residual), 1e-9),
        PropertyReport::new("energy_conservation", &col(&|r| r.energy_residual), 1e-9),
        PropertyReport::new("clausius_catalytic", &col(&|r| -r.clausius_slack), 1e-9),
        PropertyReport {
            property: "bound_below_catalytic".into(),
            trials: ordering.points,
            worst_residual: -ordering.worst_slack,
            tolerance: 1e-7,
            pass: ordering.pass,
        },
    ];
    if failed > 0 {
        out.push(PropertyReport {
            property: "sweep_points_evaluated".into(),
            trials: records.len(),
            worst_residual: failed as f64,
            tolerance: 0.0,
            pass: false,
        });
    }
    Ok(out)
}

/// Runs every suite on the current rayon pool.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut properties = vec![dephasing_invariance(opts)?];
    let (identity, clausius) = exchange_identity(opts)?;
    properties.push(identity);
    properties.push(clausius);
    properties.push(energy_preserving_optimality(opts)?);
    let (arb, bound) = hierarchy(opts)?;
    properties.push(arb);
    properties.push(bound);
    properties.extend(catalytic_contracts(opts)?);
    let pass = properties.iter().all(|p| p.pass);
    Ok(VerifyReport { properties, pass })
}
