//! Optimal energy flow from the cold qubit A under energy-preserving and
//! arbitrary unitaries for a few correlated states.
//!
//! cargo run --release --example optimal_flow

use anomalous_flow::entropic::mutual_information;
use anomalous_flow::flow::{optimal_arbitrary_unitary, optimal_energy_preserving};
use anomalous_flow::model::{rho_lambda_theta, CorrelatedStateParams, DEFAULT_DEGENERACY_TOL};

fn main() -> anomalous_flow::error::Result<()> {
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>10}",
        "λ", "θ", "ΔE★_A", "ΔE_A(arb)", "I(A:B)"
    );
    for (lambda, theta) in [
        (0.0, 0.0),
        (0.5, 0.0),
        (0.0, 0.25),
        (0.25, 0.25),
        (0.5, 0.5),
        (0.0, 1.0),
    ] {
        let p = CorrelatedStateParams {
            lambda,
            theta,
            beta_a: 2.0,
            beta_b: 0.5,
            epsilon: 1.0,
        };
        let rho = rho_lambda_theta(&p)?;
        let sys = p.system();
        let ep =
            optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))?;
        let arb = optimal_arbitrary_unitary(&rho, &sys)?;
        let mi = mutual_information(&rho, 2, 2)?;
        println!(
            "{lambda:>6.2} {theta:>6.2} {:>12.6} {:>12.6} {mi:>10.6}",
            ep.delta_e_a, arb.delta_e_a
        );
    }

    // Which eigenvectors end up where for the singlet-heavy state.
    let p = CorrelatedStateParams {
        lambda: 0.0,
        theta: 0.5,
        beta_a: 2.0,
        beta_b: 0.5,
        epsilon: 1.0,
    };
    let rho = rho_lambda_theta(&p)?;
    let sys = p.system();
    let ep = optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))?;
    println!("\nassignments at λ = 0, θ = 0.5:");
    for a in &ep.assignments {
        println!(
            "  block {} population {:.6} -> local A energy {:.1}",
            a.group, a.population, a.local_a_energy
        );
    }
    println!("final A occupations {:?}", ep.occupations);
    Ok(())
}
