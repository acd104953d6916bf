//! Catalytic protocol with a cavity mode: ΔE_A as a function of the
//! interaction time, and the optimised time, for a state with no
//! energy-preserving flow of its own.
//!
//! cargo run --release --example tavis_cummings_protocol

use anomalous_flow::catalysis::{catalytic_protocol, optimize_tau, TauScan, TavisCummingsDynamics};
use anomalous_flow::flow::optimal_energy_preserving;
use anomalous_flow::model::{rho_lambda_theta, CorrelatedStateParams, DEFAULT_DEGENERACY_TOL};

fn main() -> anomalous_flow::error::Result<()> {
    let p = CorrelatedStateParams {
        lambda: 0.8,
        theta: 0.0,
        beta_a: 2.0,
        beta_b: 0.5,
        epsilon: 1.0,
    };
    let rho = rho_lambda_theta(&p)?;
    let sys = p.system();
    let dynamics = TavisCummingsDynamics::new(1.0, 0.1, 3)?;
    let star = optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))?
        .delta_e_a;
    println!("without catalyst ΔE★_A = {star:.3e}");

    println!(
        "{:>6} {:>12} {:>10} {:>10}",
        "gτ", "ΔE_A(τ)", "restored", "dim fix"
    );
    for k in 1..=10 {
        let tau = 2.0 * k as f64;
        let r = catalytic_protocol(&rho, tau, &sys, &dynamics)?;
        println!(
            "{tau:>6.1} {:>12.6} {:>10.1e} {:>10}",
            r.delta_e_a, r.catalyst_residual, r.catalyst.fixed_space_dim
        );
    }

    let opt = optimize_tau(&rho, &sys, &dynamics, &TauScan::uniform(20.0, 400))?;
    println!(
        "\noptimum gτ★ = {:.6}, ΔE_A^c = {:.6}",
        opt.tau_star, opt.delta_e_cat
    );
    println!(
        "catalyst populations {:?}",
        opt.protocol.catalyst.omega.populations()
    );
    Ok(())
}
