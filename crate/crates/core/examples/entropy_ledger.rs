//! Energy and entropy bookkeeping for one evolution of a state with thermal
//! marginals, with the exchange identity and the Clausius-type inequality.
//!
//! cargo run --release --example entropy_ledger

use anomalous_flow::entropic::{clausius_bound_check, exchange_identity_residual, ExchangeLedger};
use anomalous_flow::flow::optimal_energy_preserving;
use anomalous_flow::model::{
    gibbs_state, qubit_hamiltonian, CompositeSystem, DEFAULT_DEGENERACY_TOL,
};
use anomalous_flow::random::{random_state_with_marginals, seeded};

fn main() -> anomalous_flow::error::Result<()> {
    let (beta_a, beta_b) = (2.0, 0.5);
    let h = qubit_hamiltonian(1.0);
    let sys = CompositeSystem::qubits(&[1.0, 1.0])?;
    let mut rng = seeded(3);
    let rho = random_state_with_marginals(
        &gibbs_state(beta_a, &h)?,
        &gibbs_state(beta_b, &h)?,
        &mut rng,
    );

    let flow = optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))?;
    let sigma = rho.evolve(&flow.unitary)?;
    let ledger = ExchangeLedger::compute(&rho, &sigma, &sys)?;
    println!("{}", serde_json::to_string_pretty(&ledger)?);

    let residual = exchange_identity_residual(&rho, &sigma, &sys, beta_a, beta_b)?;
    let check = clausius_bound_check(&ledger, beta_a, beta_b);
    println!("exchange identity residual {residual:.2e}");
    println!(
        "(β_A - β_B) ΔE_A = {:.6} >= ΔI - β_B W = {:.6}: {} (slack {:.3e})",
        check.lhs, check.rhs, check.satisfied, check.slack
    );
    Ok(())
}
