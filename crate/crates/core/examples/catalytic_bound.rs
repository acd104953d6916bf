//! Entropy-constrained lower bound on the energy change of A, compared with
//! the unitary optima.
//!
//! cargo run --release --example catalytic_bound

use anomalous_flow::bound::catalytic_bound;
use anomalous_flow::flow::{optimal_arbitrary_unitary, optimal_energy_preserving};
use anomalous_flow::model::{
    bell_states, rho_lambda_theta, CompositeSystem, CorrelatedStateParams, DEFAULT_DEGENERACY_TOL,
};

fn main() -> anomalous_flow::error::Result<()> {
    println!(
        "{:>6} {:>6} {:>11} {:>11} {:>11} {:>8} {:>14}",
        "λ", "θ", "bound", "arbitrary", "ΔE★_A", "binding", "(α, λ)"
    );
    for (lambda, theta) in [(0.0, 0.0), (0.25, 0.0), (0.75, 0.0), (0.0, 0.5), (0.4, 0.4)] {
        let p = CorrelatedStateParams {
            lambda,
            theta,
            beta_a: 2.0,
            beta_b: 0.5,
            epsilon: 1.0,
        };
        let rho = rho_lambda_theta(&p)?;
        let sys = p.system();
        let b = catalytic_bound(&rho, &sys)?;
        let arb = optimal_arbitrary_unitary(&rho, &sys)?.delta_e_a;
        let star =
            optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))?
                .delta_e_a;
        let mult = b
            .multipliers
            .map_or("-".to_string(), |(a, l)| format!("({a:.3}, {l:.3})"));
        println!(
            "{lambda:>6.2} {theta:>6.2} {:>11.6} {arb:>11.6} {star:>11.6} {:>8} {mult:>14}",
            b.value, b.entropy_binding
        );
    }

    let sys = CompositeSystem::qubits(&[1.0, 1.0])?;
    let (phi, psi) = bell_states();
    for (name, rho) in [("φ+", phi), ("ψ-", psi)] {
        let b = catalytic_bound(&rho, &sys)?;
        println!("{name}: bound {:.6}, converged {}", b.value, b.converged);
    }
    Ok(())
}
