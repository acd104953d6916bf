use proptest::prelude::*;

use anomalous_flow::bound::catalytic_bound;
use anomalous_flow::catalysis::{fixed_point_catalyst, CatalyticDynamics, TavisCummingsDynamics};
use anomalous_flow::entropic::{mutual_information, von_neumann_entropy};
use anomalous_flow::flow::{
    block_dephase, delta_e_a, optimal_arbitrary_unitary, optimal_energy_preserving,
};
use anomalous_flow::model::{
    effective_temperatures, rho_lambda_theta, CompositeSystem, CorrelatedStateParams,
    DEFAULT_DEGENERACY_TOL,
};
use anomalous_flow::operator::{max_abs, trace_distance};
use anomalous_flow::random::{haar_unitary, random_block_unitary, random_density_matrix, seeded};

fn qubits(eps: f64) -> CompositeSystem {
    CompositeSystem::qubits(&[eps, eps]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_inverts_tensor(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut rng = seeded(seed);
        let a = random_density_matrix(da, &mut rng);
        let b = random_density_matrix(db, &mut rng);
        let ab = a.tensor(&b);
        prop_assert!(max_abs(&(ab.partial_trace(&[da, db], &[0]).unwrap().matrix() - a.matrix())) < 1e-12);
        prop_assert!(max_abs(&(ab.partial_trace(&[da, db], &[1]).unwrap().matrix() - b.matrix())) < 1e-12);
    }

    #[test]
    fn entropy_and_mutual_information_ranges(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let rho = random_density_matrix(4, &mut rng);
        let s = von_neumann_entropy(&rho);
        prop_assert!(s >= -1e-12 && s <= 4f64.ln() + 1e-12);
        let i = mutual_information(&rho, 2, 2).unwrap();
        prop_assert!(i >= -1e-12 && i <= 2.0 * 2f64.ln() + 1e-12);
    }

    #[test]
    fn energy_preserving_optimum_is_a_lower_bound(seed in any::<u64>(), eps in 0.2f64..3.0) {
        let sys = qubits(eps);
        let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
        let mut rng = seeded(seed);
        let rho = random_density_matrix(4, &mut rng);
        let star = optimal_energy_preserving(&rho, &sys, &blocks).unwrap();
        prop_assert!(star.delta_e_a <= 1e-12);
        prop_assert!(sys.h0().commutator_norm(star.unitary.matrix()) < 1e-10);
        prop_assert!((delta_e_a(&rho, &star.unitary, &sys).unwrap() - star.delta_e_a).abs() < 1e-12);
        for _ in 0..20 {
            let u = random_block_unitary(&blocks, &mut rng);
            prop_assert!(star.delta_e_a <= delta_e_a(&rho, &u, &sys).unwrap() + 1e-12);
        }
        let arb = optimal_arbitrary_unitary(&rho, &sys).unwrap().delta_e_a;
        prop_assert!(arb <= star.delta_e_a + 1e-12);
        prop_assert!(arb <= delta_e_a(&rho, &haar_unitary(4, &mut rng), &sys).unwrap() + 1e-12);
    }

    #[test]
    fn dephasing_leaves_energy_preserving_flows_unchanged(seed in any::<u64>()) {
        let sys = qubits(1.0);
        let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
        let mut rng = seeded(seed);
        let rho = random_density_matrix(4, &mut rng);
        let dephased = block_dephase(&rho, &blocks).unwrap();
        let u = random_block_unitary(&blocks, &mut rng);
        let d = delta_e_a(&rho, &u, &sys).unwrap() - delta_e_a(&dephased, &u, &sys).unwrap();
        prop_assert!(d.abs() < 1e-12);
    }

    #[test]
    fn bound_is_feasible_and_below_energy_preserving(seed in any::<u64>()) {
        let sys = qubits(1.0);
        let mut rng = seeded(seed);
        let rho = random_density_matrix(4, &mut rng);
        let b = catalytic_bound(&rho, &sys).unwrap();
        let star = optimal_energy_preserving(&rho, &sys, &sys.block_structure(DEFAULT_DEGENERACY_TOL))
            .unwrap()
            .delta_e_a;
        prop_assert!(b.converged);
        prop_assert!(b.energy_residual.abs() <= 1e-7);
        prop_assert!(b.entropy_residual >= -1e-7);
        prop_assert!(b.value <= star + 1e-7);
    }

    #[test]
    fn correlated_family_keeps_a_colder(lambda in 0.0f64..1.0, theta in 0.0f64..1.0, gap in 0.0f64..3.0) {
        let p = CorrelatedStateParams { lambda, theta, beta_a: 0.5 + gap, beta_b: 0.5, epsilon: 1.0 };
        prop_assume!(p.validate().is_ok() && lambda + theta < 1.0 - 1e-9);
        let (ba, bb) = effective_temperatures(&p).unwrap();
        prop_assert!(ba >= bb - 1e-12);
        prop_assert!(ba <= p.beta_a + 1e-12 && bb <= p.beta_b + 1e-12);
        let rho = rho_lambda_theta(&p).unwrap();
        prop_assert!(rho.eigenvalues().iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn fixed_point_catalyst_is_restored(seed in any::<u64>(), tau in 0.05f64..20.0) {
        let mut rng = seeded(seed);
        let rho = random_density_matrix(4, &mut rng);
        let dynamics = TavisCummingsDynamics::new(1.0, 0.1, 3).unwrap();
        let u = dynamics.unitary(tau);
        let sol = fixed_point_catalyst(&rho, &u, 3).unwrap();
        let after = rho.tensor(&sol.omega).evolve(&u).unwrap().partial_trace(&[4, 3], &[1]).unwrap();
        prop_assert!(trace_distance(&sol.omega, &after).unwrap() < 1e-9);
    }
}
