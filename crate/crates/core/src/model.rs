//! Hamiltonians, thermal and correlated states, and the degenerate-block
//! structure of a non-interacting composite Hamiltonian.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::{
    max_abs, tensor_all, ComplexMatrix, ComplexVector, DensityMatrix, HermitianOperator,
};

/// Default relative tolerance for grouping degenerate eigenvalues of `H_0`.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// `β` is capped at `GIBBS_BETA_MAX_SCALE / width`, where `width` is the
/// spectral width of the Hamiltonian. Above the cap the Gibbs state equals the
/// ground-space projector to machine precision.
pub const GIBBS_BETA_MAX_SCALE: f64 = 1e4;

/// Subsystems with local Hamiltonians and the free Hamiltonian `H_0 = Σ_x H_x`.
#[derive(Debug, Clone)]
pub struct CompositeSystem {
    local_dims: Vec<usize>,
    local_hamiltonians: Vec<HermitianOperator>,
    h0: HermitianOperator,
}

impl CompositeSystem {
    pub fn new(local_hamiltonians: Vec<HermitianOperator>) -> Result<Self> {
        if local_hamiltonians.is_empty() {
            return Err(Error::InvalidParameter(
                "composite system needs at least one subsystem".into(),
            ));
        }
        let local_dims: Vec<usize> = local_hamiltonians.iter().map(|h| h.dim()).collect();
        let dim: usize = local_dims.iter().product();
        let mut h0 = HermitianOperator::zeros(dim);
        for (k, h) in local_hamiltonians.iter().enumerate() {
            h0 = &h0 + &lift(&local_dims, k, h);
        }
        Ok(CompositeSystem {
            local_dims,
            local_hamiltonians,
            h0,
        })
    }

    /// Two-level subsystems with `H_x = ε_x |1><1|`.
    pub fn qubits(gaps: &[f64]) -> Result<Self> {
        CompositeSystem::new(gaps.iter().map(|&e| qubit_hamiltonian(e)).collect())
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    pub fn num_subsystems(&self) -> usize {
        self.local_dims.len()
    }

    pub fn h0(&self) -> &HermitianOperator {
        &self.h0
    }

    pub fn local_hamiltonian(&self, k: usize) -> &HermitianOperator {
        &self.local_hamiltonians[k]
    }

    /// `H_k` padded with identities on the other subsystems.
    pub fn lifted(&self, k: usize) -> HermitianOperator {
        lift(&self.local_dims, k, &self.local_hamiltonians[k])
    }

    pub fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::dims(
                format!("state on {:?} (dim {})", self.local_dims, self.dim()),
                rho.dim(),
            ));
        }
        Ok(())
    }

    pub fn check_bipartite(&self) -> Result<()> {
        if self.num_subsystems() != 2 {
            return Err(Error::InvalidParameter(format!(
                "expected a bipartite system, got {} subsystems",
                self.num_subsystems()
            )));
        }
        Ok(())
    }

    /// Reduced state of subsystem `k`.
    pub fn marginal(&self, rho: &DensityMatrix, k: usize) -> Result<DensityMatrix> {
        self.check_state(rho)?;
        rho.partial_trace(&self.local_dims, &[k])
    }

    /// `E(rho_k) = Tr[H_k rho_k]`.
    pub fn local_energy(&self, rho: &DensityMatrix, k: usize) -> Result<f64> {
        Ok(self.local_hamiltonians[k].expectation(&self.marginal(rho, k)?))
    }

    pub fn total_energy(&self, rho: &DensityMatrix) -> Result<f64> {
        self.check_state(rho)?;
        Ok(self.h0.expectation(rho))
    }

    /// Degenerate blocks of `H_0` with bases sorted by local energy of subsystem 0.
    pub fn block_structure(&self, tol: f64) -> BlockStructure {
        degenerate_blocks(&self.h0, tol).sorted_by_local_energy(&self.lifted(0))
    }
}

fn lift(dims: &[usize], k: usize, h: &HermitianOperator) -> HermitianOperator {
    let ids: Vec<ComplexMatrix> = dims
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            if j == k {
                h.matrix().clone()
            } else {
                ComplexMatrix::identity(d, d)
            }
        })
        .collect();
    HermitianOperator::from_hermitian_part(&tensor_all(ids.iter()))
}

pub fn qubit_hamiltonian(gap: f64) -> HermitianOperator {
    HermitianOperator::from_diagonal(&[0.0, gap])
}

/// One degenerate eigenspace of `H_0`.
#[derive(Debug, Clone)]
pub struct EnergyBlock {
    pub energy: f64,
    /// Orthonormal basis of the block as columns of a `dim x m` matrix.
    pub basis: ComplexMatrix,
    /// `<E_n| H_A ⊗ 1 |E_n>` per basis column (zero until sorted by local energy).
    pub local_a_energies: Vec<f64>,
    /// Composite indices of the basis vectors when they are computational basis vectors.
    pub composite_indices: Option<Vec<usize>>,
}

impl EnergyBlock {
    pub fn multiplicity(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * self.basis.adjoint()
    }
}

/// Eigenspaces `Π_ν` of `H_0` with energies `ℰ_ν` and multiplicities `m_ν`.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    dim: usize,
    blocks: Vec<EnergyBlock>,
}

impl BlockStructure {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[EnergyBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.energy).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.multiplicity()).collect()
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.blocks.iter().map(|b| b.projector()).collect()
    }

    /// `Σ_ν B_ν X_ν B_ν^dagger` for per-block operators `X_ν` (`m_ν x m_ν`).
    pub fn lift_block_operators(
        &self,
        inner: &[ComplexMatrix],
    ) -> crate::operator::UnitaryOperator {
        crate::operator::UnitaryOperator::from_unitary_unchecked(self.lift(inner))
    }

    pub(crate) fn lift(&self, inner: &[ComplexMatrix]) -> ComplexMatrix {
        assert_eq!(inner.len(), self.blocks.len(), "one operator per block");
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (b, x) in self.blocks.iter().zip(inner) {
            out += &b.basis * x * b.basis.adjoint();
        }
        out
    }

    /// Rotates every block basis onto eigenvectors of the block restriction of
    /// `h_a_lifted` (which must commute with `H_0`) and sorts each block by
    /// non-increasing local energy, ties kept in their current order.
    pub fn sorted_by_local_energy(mut self, h_a_lifted: &HermitianOperator) -> Self {
        let scale = max_abs(h_a_lifted.matrix()).max(1.0);
        for block in &mut self.blocks {
            let restricted = block.basis.adjoint() * h_a_lifted.matrix() * &block.basis;
            let m = restricted.nrows();
            let off_diag = (0..m)
                .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| restricted[(i, j)].norm())
                .fold(0.0, f64::max);
            let mut energies: Vec<f64> = (0..m).map(|i| restricted[(i, i)].re).collect();
            if off_diag > 1e-12 * scale {
                let spec = HermitianOperator::from_hermitian_part(&restricted).eig();
                block.basis = &block.basis * &spec.vectors;
                energies = spec.values;
                block.composite_indices = None;
            }
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| energies[b].total_cmp(&energies[a]));
            block.basis = ComplexMatrix::from_columns(
                &order
                    .iter()
                    .map(|&k| block.basis.column(k))
                    .collect::<Vec<_>>(),
            );
            block.local_a_energies = order.iter().map(|&k| energies[k]).collect();
            if let Some(idx) = &block.composite_indices {
                block.composite_indices = Some(order.iter().map(|&k| idx[k]).collect());
            }
        }
        self
    }
}

/// Groups the eigenvalues of `h0` into degenerate blocks.
///
/// Two eigenvalues belong to the same block when they differ from the block's
/// lowest member by at most `tol * max(1, max|ℰ|)`. A diagonal `h0` keeps the
/// computational basis vectors, in composite-index order.
pub fn degenerate_blocks(h0: &HermitianOperator, tol: f64) -> BlockStructure {
    let dim = h0.dim();
    let m = h0.matrix();
    let scale = max_abs(m).max(1.0);
    let is_diagonal = (0..dim)
        .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
        .all(|(i, j)| m[(i, j)].norm() <= 1e-14 * scale);

    let (values, vectors, indices): (Vec<f64>, ComplexMatrix, Option<Vec<usize>>) = if is_diagonal {
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re));
        let mut v = ComplexMatrix::zeros(dim, dim);
        for (col, &k) in order.iter().enumerate() {
            v[(k, col)] = C64::new(1.0, 0.0);
        }
        (
            order.iter().map(|&k| m[(k, k)].re).collect(),
            v,
            Some(order),
        )
    } else {
        let spec = h0.eig();
        (spec.values, spec.vectors, None)
    };

    let emax = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let gap = tol * emax.max(1.0);
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && values[end] - values[start] <= gap {
            end += 1;
        }
        let mut cols: Vec<usize> = (start..end).collect();
        if let Some(idx) = &indices {
            cols.sort_by_key(|&c| idx[c]);
        }
        let energy = cols.iter().map(|&c| values[c]).sum::<f64>() / cols.len() as f64;
        blocks.push(EnergyBlock {
            energy,
            basis: ComplexMatrix::from_columns(
                &cols.iter().map(|&c| vectors.column(c)).collect::<Vec<_>>(),
            ),
            local_a_energies: vec![0.0; cols.len()],
            composite_indices: indices
                .as_ref()
                .map(|idx| cols.iter().map(|&c| idx[c]).collect()),
        });
        start = end;
    }
    BlockStructure { dim, blocks }
}

/// `exp(-β H) / Z`, computed spectrally with `β` capped as described at
/// [`GIBBS_BETA_MAX_SCALE`]; `β = +∞` gives the (normalised) ground-space projector.
pub fn gibbs_state(beta: f64, h: &HermitianOperator) -> Result<DensityMatrix> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be >= 0, got {beta}"
        )));
    }
    let spec = h.eig();
    let lo = spec.values[0];
    let width = spec.values[spec.values.len() - 1] - lo;
    let beta_max = GIBBS_BETA_MAX_SCALE / if width > 0.0 { width } else { 1.0 };
    let beta = beta.min(beta_max);
    let weights: Vec<f64> = spec
        .values
        .iter()
        .map(|&e| (-beta * (e - lo)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let m = ComplexMatrix::from_diagonal(&DVector::from_iterator(
        weights.len(),
        weights.iter().map(|w| C64::new(w / z, 0.0)),
    ));
    Ok(DensityMatrix::from_state_unchecked(
        &spec.vectors * m * spec.vectors.adjoint(),
    ))
}

/// `(|φ+><φ+|, |ψ-><ψ-|)` with `|φ+> = (|00> + |11>)/√2`, `|ψ-> = (|01> - |10>)/√2`.
pub fn bell_states() -> (DensityMatrix, DensityMatrix) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| C64::new(x, 0.0);
    let phi = ComplexVector::from_vec(vec![c(s), c(0.0), c(0.0), c(s)]);
    let psi = ComplexVector::from_vec(vec![c(0.0), c(s), c(-s), c(0.0)]);
    (
        DensityMatrix::pure(&phi).expect("normalised"),
        DensityMatrix::pure(&psi).expect("normalised"),
    )
}

/// Parameters of `ϱ(λ, θ) = (1-λ-θ) γ_A ⊗ γ_B + λ φ+ + θ ψ-` on two qubits with gap `ε`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CorrelatedStateParams {
    pub lambda: f64,
    pub theta: f64,
    pub beta_a: f64,
    pub beta_b: f64,
    pub epsilon: f64,
}

/// Slack allowed on `λ + θ <= 1` so that grid points built as `i/(n-1)` survive.
pub const MIXTURE_SLACK: f64 = 1e-12;

impl CorrelatedStateParams {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(self.lambda) || !in_unit(self.theta) {
            return Err(Error::InvalidParameter(format!(
                "λ = {}, θ = {} must lie in [0, 1]",
                self.lambda, self.theta
            )));
        }
        if self.lambda + self.theta > 1.0 + MIXTURE_SLACK {
            return Err(Error::InvalidParameter(format!(
                "λ + θ = {} exceeds 1",
                self.lambda + self.theta
            )));
        }
        if !(self.beta_a >= 0.0 && self.beta_b >= 0.0)
            || !self.beta_a.is_finite()
            || !self.beta_b.is_finite()
        {
            return Err(Error::InvalidParameter(
                "inverse temperatures must be finite and >= 0".into(),
            ));
        }
        if self.beta_a < self.beta_b {
            return Err(Error::InvalidParameter(format!(
                "subsystem A must be the colder one (β_A = {} < β_B = {})",
                self.beta_a, self.beta_b
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gap ε = {} must be positive",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn system(&self) -> CompositeSystem {
        CompositeSystem::qubits(&[self.epsilon, self.epsilon]).expect("two qubits")
    }
}

pub fn rho_lambda_theta(p: &CorrelatedStateParams) -> Result<DensityMatrix> {
    p.validate()?;
    let h = qubit_hamiltonian(p.epsilon);
    let ga = gibbs_state(p.beta_a, &h)?;
    let gb = gibbs_state(p.beta_b, &h)?;
    let (phi, psi) = bell_states();
    let product = ga.tensor(&gb);
    let w0 = (1.0 - p.lambda - p.theta).max(0.0);
    let m = product.matrix().scale(w0) + phi.matrix().scale(p.lambda) + psi.matrix().scale(p.theta);
    let tr = m.trace().re;
    DensityMatrix::new(m.unscale(tr))
}

/// The `β` at which a qubit state diagonal in the eigenbasis of `h` is thermal:
/// `β = ln(p_0 / p_1) / ε`. Population inversion gives a negative value.
pub fn effective_inverse_temperature(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    if rho.dim() != 2 || h.dim() != 2 {
        return Err(Error::dims("qubit (dim 2)", rho.dim()));
    }
    let spec = h.eig();
    let gap = spec.values[1] - spec.values[0];
    if gap <= 1e-12 * spec.values[1].abs().max(1.0) {
        return Err(Error::InvalidParameter(
            "qubit Hamiltonian has a degenerate gap".into(),
        ));
    }
    let in_basis = spec.vectors.adjoint() * rho.matrix() * &spec.vectors;
    if in_basis[(0, 1)].norm() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "state has energy coherence {:.3e}",
            in_basis[(0, 1)].norm()
        )));
    }
    let (p0, p1) = (in_basis[(0, 0)].re, in_basis[(1, 1)].re);
    if p0 <= 1e-15 || p1 <= 1e-15 {
        return Err(Error::InvalidState(
            "rank-deficient state has no finite temperature".into(),
        ));
    }
    Ok((p0 / p1).ln() / gap)
}

/// Effective inverse temperatures of both marginals of `ϱ(λ, θ)`.
pub fn effective_temperatures(p: &CorrelatedStateParams) -> Result<(f64, f64)> {
    let rho = rho_lambda_theta(p)?;
    let sys = p.system();
    let h = qubit_hamiltonian(p.epsilon);
    Ok((
        effective_inverse_temperature(&sys.marginal(&rho, 0)?, &h)?,
        effective_inverse_temperature(&sys.marginal(&rho, 1)?, &h)?,
    ))
}

/// Truncated annihilation operator on `n` Fock levels, `a|k> = √k |k-1>`.
pub fn annihilation(n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Two-level lowering operator `|g><e| = |0><1|`.
pub fn lowering() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(2, 2);
    s[(0, 1)] = C64::new(1.0, 0.0);
    s
}

/// Resonant two-atom Tavis-Cummings model on `A ⊗ B ⊗ C` (C a cavity with
/// `n_fock` levels): returns `(H_0, V)` with
/// `H_0 = ε σ_A^†σ_A + ε σ_B^†σ_B + ε a^†a` and `V = g Σ_i (a σ_i^† + a^† σ_i)`.
pub fn tavis_cummings(
    epsilon: f64,
    g: f64,
    n_fock: usize,
) -> Result<(HermitianOperator, HermitianOperator)> {
    if n_fock < 2 {
        return Err(Error::InvalidParameter(format!(
            "n_fock must be >= 2, got {n_fock}"
        )));
    }
    let sm = lowering();
    let sp = sm.adjoint();
    let a = annihilation(n_fock);
    let ad = a.adjoint();
    let i2 = ComplexMatrix::identity(2, 2);
    let ic = ComplexMatrix::identity(n_fock, n_fock);
    let n_atom = &sp * &sm;
    // exact integer diagonal; a^dagger a would carry round-off from √k √k
    let n_photon =
        ComplexMatrix::from_diagonal(&DVector::from_fn(n_fock, |k, _| C64::new(k as f64, 0.0)));
    let h0 = (tensor_all([&n_atom, &i2, &ic])
        + tensor_all([&i2, &n_atom, &ic])
        + tensor_all([&i2, &i2, &n_photon]))
    .scale(epsilon);
    let v = (tensor_all([&sp, &i2, &a])
        + tensor_all([&sm, &i2, &ad])
        + tensor_all([&i2, &sp, &a])
        + tensor_all([&i2, &sm, &ad]))
    .scale(g);
    Ok((
        HermitianOperator::from_hermitian_part(&h0),
        HermitianOperator::from_hermitian_part(&v),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{partial_trace, real_trace, trace_of_product};
    use crate::random::{random_hermitian, seeded};

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let mut rng = seeded(20);
        let h = random_hermitian(5, &mut rng);
        let g = gibbs_state(0.0, &h).unwrap();
        assert!(max_abs(&(g.matrix() - DensityMatrix::maximally_mixed(5).matrix())) < 1e-14);
    }

    #[test]
    fn qubit_gibbs_populations() {
        let (eps, beta) = (1.3, 0.7);
        let g = gibbs_state(beta, &qubit_hamiltonian(eps)).unwrap();
        let z = 1.0 + (-beta * eps).exp();
        assert!((g.populations()[0] - 1.0 / z).abs() < 1e-15);
        assert!((g.populations()[1] - (-beta * eps).exp() / z).abs() < 1e-15);
    }

    #[test]
    fn gibbs_commutes_and_is_passive() {
        let mut rng = seeded(21);
        for _ in 0..5 {
            let h = random_hermitian(4, &mut rng);
            let g = gibbs_state(1.7, &h).unwrap();
            assert!(h.commutator_norm(g.matrix()) < 1e-12);
            let spec = h.eig();
            let pops: Vec<f64> = (0..4)
                .map(|k| {
                    let v = spec.vectors.column(k);
                    (v.adjoint() * g.matrix() * v)[(0, 0)].re
                })
                .collect();
            assert!(pops.windows(2).all(|w| w[0] >= w[1] - 1e-15));
        }
    }

    #[test]
    fn infinite_beta_is_ground_projector() {
        let g = gibbs_state(f64::INFINITY, &qubit_hamiltonian(1.0)).unwrap();
        assert_eq!(g.populations()[0], 1.0);
        assert!(gibbs_state(-1.0, &qubit_hamiltonian(1.0)).is_err());
    }

    #[test]
    fn bell_states_are_orthogonal_pure_and_locally_mixed() {
        let (phi, psi) = bell_states();
        assert!(trace_of_product(phi.matrix(), psi.matrix()).abs() < 1e-15);
        for s in [&phi, &psi] {
            assert!((s.purity() - 1.0).abs() < 1e-14);
            for keep in 0..2 {
                let red = partial_trace(s.matrix(), &[2, 2], &[keep]).unwrap();
                assert!(max_abs(&(red - DensityMatrix::maximally_mixed(2).matrix())) < 1e-15);
            }
        }
    }

    fn params(lambda: f64, theta: f64) -> CorrelatedStateParams {
        CorrelatedStateParams {
            lambda,
            theta,
            beta_a: 2.0,
            beta_b: 0.5,
            epsilon: 1.0,
        }
    }

    #[test]
    fn rho_lambda_theta_corners() {
        let p = params(0.0, 0.0);
        let h = qubit_hamiltonian(1.0);
        let product = gibbs_state(2.0, &h)
            .unwrap()
            .tensor(&gibbs_state(0.5, &h).unwrap());
        assert!(max_abs(&(rho_lambda_theta(&p).unwrap().matrix() - product.matrix())) < 1e-15);
        let (phi, _) = bell_states();
        assert!(
            max_abs(&(rho_lambda_theta(&params(1.0, 0.0)).unwrap().matrix() - phi.matrix()))
                < 1e-15
        );
        assert!(rho_lambda_theta(&params(0.7, 0.4)).is_err());
        let mut hot_a = params(0.1, 0.1);
        hot_a.beta_a = 0.1;
        assert!(rho_lambda_theta(&hot_a).is_err());
    }

    #[test]
    fn rho_lambda_theta_marginal_formula() {
        let h = qubit_hamiltonian(1.0);
        let ga = gibbs_state(2.0, &h).unwrap();
        for &(l, t) in &[(0.2, 0.3), (0.5, 0.0), (0.0, 0.9)] {
            let rho = rho_lambda_theta(&params(l, t)).unwrap();
            let ra = partial_trace(rho.matrix(), &[2, 2], &[0]).unwrap();
            let expected =
                ga.matrix().scale(1.0 - l - t) + ComplexMatrix::identity(2, 2).scale(0.5 * (l + t));
            assert!(max_abs(&(ra - expected)) < 1e-12);
        }
    }

    #[test]
    fn rho_lambda_theta_is_a_state_on_grid() {
        let n = 50;
        for i in 0..n {
            for j in 0..n - i {
                let p = params(i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
                let rho = rho_lambda_theta(&p).unwrap();
                assert!((real_trace(rho.matrix()) - 1.0).abs() < 1e-12);
                assert!(rho.eigenvalues()[0] >= 0.0);
            }
        }
    }

    #[test]
    fn effective_temperature_round_trip() {
        let h = qubit_hamiltonian(0.9);
        assert!(
            effective_inverse_temperature(&DensityMatrix::maximally_mixed(2), &h)
                .unwrap()
                .abs()
                < 1e-15
        );
        for beta in [0.1, 1.0, 3.3] {
            let g = gibbs_state(beta, &h).unwrap();
            assert!((effective_inverse_temperature(&g, &h).unwrap() - beta).abs() < 1e-10);
        }
        let inverted = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        assert!(effective_inverse_temperature(&inverted, &h).unwrap() < 0.0);
        assert!(
            effective_inverse_temperature(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap(), &h)
                .is_err()
        );
        let plus =
            DensityMatrix::new(ComplexMatrix::from_element(2, 2, C64::new(0.5, 0.0))).unwrap();
        assert!(effective_inverse_temperature(&plus, &h).is_err());
    }

    #[test]
    fn effective_temperatures_keep_a_colder() {
        for &(l, t) in &[(0.1, 0.0), (0.4, 0.2), (0.0, 0.7)] {
            let (ba, bb) = effective_temperatures(&params(l, t)).unwrap();
            assert!(ba > bb, "λ={l} θ={t}: {ba} <= {bb}");
        }
    }

    #[test]
    fn tavis_cummings_conserves_excitations() {
        for n in 2..=6 {
            let (h0, v) = tavis_cummings(1.0, 0.1, n).unwrap();
            assert!(h0.commutator_norm(v.matrix()) < 1e-10);
            // grading by total excitations: V only couples states with equal H0
            let d = h0.dim();
            for i in 0..d {
                for j in 0..d {
                    if v.matrix()[(i, j)].norm() > 0.0 {
                        assert_eq!(h0.matrix()[(i, i)], h0.matrix()[(j, j)]);
                    }
                }
            }
        }
        assert!(tavis_cummings(1.0, 0.1, 1).is_err());
    }

    #[test]
    fn tavis_cummings_matrix_elements() {
        let g = 0.37;
        let n = 3;
        let (_, v) = tavis_cummings(1.0, g, n).unwrap();
        let idx = |a: usize, b: usize, c: usize| (a * 2 + b) * n + c;
        // ground state is annihilated
        assert!(v.matrix().column(idx(0, 0, 0)).norm() < 1e-15);
        // a σ_B^† moves one photon onto atom B
        assert!((v.matrix()[(idx(0, 1, 0), idx(0, 0, 1))] - C64::new(g, 0.0)).norm() < 1e-15);
        assert!(
            (v.matrix()[(idx(1, 0, 1), idx(0, 0, 2))] - C64::new(g * 2f64.sqrt(), 0.0)).norm()
                < 1e-15
        );
    }

    #[test]
    fn equal_gap_qubit_blocks() {
        let sys = CompositeSystem::qubits(&[1.0, 1.0]).unwrap();
        let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
        assert_eq!(blocks.multiplicities(), vec![1, 2, 1]);
        assert_eq!(blocks.blocks()[1].composite_indices, Some(vec![2, 1]));
        assert_eq!(blocks.blocks()[1].local_a_energies, vec![1.0, 0.0]);
    }

    #[test]
    fn tavis_cummings_single_excitation_sector() {
        let (h0, _) = tavis_cummings(1.0, 0.1, 3).unwrap();
        let blocks = degenerate_blocks(&h0, DEFAULT_DEGENERACY_TOL);
        assert_eq!(blocks.multiplicities(), vec![1, 3, 4, 3, 1]);
        // |00,1> = 1, |01,0> = 3, |10,0> = 6
        assert_eq!(blocks.blocks()[1].composite_indices, Some(vec![1, 3, 6]));
    }

    #[test]
    fn non_degenerate_diagonal_gives_singletons() {
        let h = HermitianOperator::from_diagonal(&[0.3, -1.0, 2.0, 0.1]);
        let blocks = degenerate_blocks(&h, DEFAULT_DEGENERACY_TOL);
        assert_eq!(blocks.multiplicities(), vec![1; 4]);
        assert_eq!(blocks.energies(), vec![-1.0, 0.1, 0.3, 2.0]);
    }

    #[test]
    fn non_diagonal_local_hamiltonians_give_product_eigenbasis_blocks() {
        // rotate both qubit Hamiltonians; blocks must still be {1, 2, 1}
        let mut rng = seeded(22);
        let u = crate::random::haar_unitary(2, &mut rng);
        let h = HermitianOperator::from_hermitian_part(
            &(u.matrix() * qubit_hamiltonian(1.0).matrix() * u.matrix().adjoint()),
        );
        let sys = CompositeSystem::new(vec![h.clone(), h]).unwrap();
        let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
        assert_eq!(blocks.multiplicities(), vec![1, 2, 1]);
        let mid = &blocks.blocks()[1];
        assert!((mid.local_a_energies[0] - 1.0).abs() < 1e-10);
        assert!(mid.local_a_energies[1].abs() < 1e-10);
        let sum: ComplexMatrix = blocks
            .projectors()
            .iter()
            .fold(ComplexMatrix::zeros(4, 4), |a, p| a + p);
        assert!(max_abs(&(sum - ComplexMatrix::identity(4, 4))) < 1e-12);
    }
}
