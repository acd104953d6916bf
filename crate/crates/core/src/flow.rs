//! Optimal energy flow out of the colder subsystem A, under energy-preserving
//! and under arbitrary unitaries.

use crate::entropic::ExchangeLedger;
use crate::error::{Error, Result};
use crate::model::{BlockStructure, CompositeSystem};
use crate::operator::{
    max_abs, unitarity_defect, ComplexMatrix, DensityMatrix, HermitianOperator, UnitaryOperator,
    UNITARITY_TOL,
};

/// Restriction of a state to one degenerate block, diagonalised.
#[derive(Debug, Clone)]
pub struct BlockEigen {
    pub energy: f64,
    /// Eigenvalues of `Π_ν ϱ Π_ν` on the block, non-increasing.
    pub populations: Vec<f64>,
    /// Matching eigenvectors as columns, in the full space.
    pub vectors: ComplexMatrix,
}

#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub blocks: Vec<BlockEigen>,
}

impl BlockSpectrum {
    pub fn total_population(&self) -> f64 {
        self.blocks.iter().flat_map(|b| b.populations.iter()).sum()
    }
}

fn check_blocks(rho: &DensityMatrix, blocks: &BlockStructure) -> Result<()> {
    if blocks.dim() != rho.dim() {
        return Err(Error::dims(
            format!("block structure of dim {}", blocks.dim()),
            rho.dim(),
        ));
    }
    Ok(())
}

pub fn block_spectrum(rho: &DensityMatrix, blocks: &BlockStructure) -> Result<BlockSpectrum> {
    check_blocks(rho, blocks)?;
    let out = blocks
        .blocks()
        .iter()
        .map(|b| {
            let restricted = b.basis.adjoint() * rho.matrix() * &b.basis;
            let spec = HermitianOperator::from_hermitian_part(&restricted).eig();
            // eig is ascending; a stable sort on the reversed order keeps ties in basis order
            let m = spec.values.len();
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| spec.values[y].total_cmp(&spec.values[x]));
            BlockEigen {
                energy: b.energy,
                populations: order.iter().map(|&k| spec.values[k]).collect(),
                vectors: &b.basis
                    * ComplexMatrix::from_columns(
                        &order
                            .iter()
                            .map(|&k| spec.vectors.column(k))
                            .collect::<Vec<_>>(),
                    ),
            }
        })
        .collect();
    Ok(BlockSpectrum { blocks: out })
}

/// `Σ_ν Π_ν ϱ Π_ν`.
pub fn block_dephase(rho: &DensityMatrix, blocks: &BlockStructure) -> Result<DensityMatrix> {
    check_blocks(rho, blocks)?;
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for p in blocks.projectors() {
        out += &p * rho.matrix() * &p;
    }
    Ok(DensityMatrix::from_state_unchecked(out))
}

/// Where one eigenvalue of the initial state was sent.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Assignment {
    /// Index of the degenerate block, or of the A level for the arbitrary-unitary optimum.
    pub group: usize,
    pub population: f64,
    pub local_a_energy: f64,
}

#[derive(Debug, Clone)]
pub struct OptimalFlowResult {
    pub delta_e_a: f64,
    pub unitary: UnitaryOperator,
    pub sigma_a: DensityMatrix,
    /// Occupations of A's energy levels (ascending energy) after the optimal unitary.
    pub occupations: Vec<f64>,
    pub assignments: Vec<Assignment>,
}

/// Weight of `v` (a composite vector) on `|w> ⊗ 1` for every column `w` of `wa`.
fn a_level_weights(
    v: nalgebra::DVectorView<'_, num_complex::Complex64>,
    wa: &ComplexMatrix,
    d_b: usize,
) -> Vec<f64> {
    let d_a = wa.nrows();
    let m = ComplexMatrix::from_fn(d_a, d_b, |i, j| v[i * d_b + j]);
    let proj = wa.adjoint() * m;
    (0..d_a).map(|i| proj.row(i).norm_squared()).collect()
}

fn check_sorted_blocks(system: &CompositeSystem, blocks: &BlockStructure) -> Result<()> {
    if blocks.dim() != system.dim() {
        return Err(Error::dims(
            format!("block structure of dim {}", system.dim()),
            blocks.dim(),
        ));
    }
    let ha = system.lifted(0);
    let scale = max_abs(ha.matrix()).max(1.0);
    for (nu, b) in blocks.blocks().iter().enumerate() {
        let r = b.basis.adjoint() * ha.matrix() * &b.basis;
        let m = b.multiplicity();
        let diag_ok = (0..m).all(|k| (r[(k, k)].re - b.local_a_energies[k]).abs() <= 1e-9 * scale);
        let off_ok = (0..m).all(|i| (0..m).all(|j| i == j || r[(i, j)].norm() <= 1e-9 * scale));
        let sorted = b.local_a_energies.windows(2).all(|w| w[0] >= w[1]);
        if !(diag_ok && off_ok && sorted) {
            return Err(Error::InvalidParameter(format!(
                "block {nu} is not sorted in local energy of subsystem A; use CompositeSystem::block_structure"
            )));
        }
    }
    Ok(())
}

/// Minimal `ΔE_A` over unitaries commuting with `H_0`.
///
/// In each degenerate block the eigenvalues of the block restriction of `ϱ`,
/// largest first, are mapped onto the block basis vectors in order of
/// increasing local energy of A. `blocks` must come from
/// [`CompositeSystem::block_structure`].
pub fn optimal_energy_preserving(
    rho: &DensityMatrix,
    system: &CompositeSystem,
    blocks: &BlockStructure,
) -> Result<OptimalFlowResult> {
    system.check_bipartite()?;
    system.check_state(rho)?;
    check_sorted_blocks(system, blocks)?;
    let spectrum = block_spectrum(rho, blocks)?;
    let dims = system.local_dims();
    let a_spec = system.local_hamiltonian(0).eig();

    let dim = system.dim();
    let mut u = ComplexMatrix::zeros(dim, dim);
    let mut occupations = vec![0.0; dims[0]];
    let mut assignments = Vec::with_capacity(dim);
    for (nu, (block, eigen)) in blocks.blocks().iter().zip(&spectrum.blocks).enumerate() {
        let m = block.multiplicity();
        for n in 0..m {
            // basis is stored non-increasing in A energy, so walk it backwards
            let target = m - 1 - n;
            let e = block.basis.column(target);
            u += e * eigen.vectors.column(n).adjoint();
            let p = eigen.populations[n].max(0.0);
            for (i, w) in a_level_weights(e, &a_spec.vectors, dims[1])
                .into_iter()
                .enumerate()
            {
                occupations[i] += p * w;
            }
            assignments.push(Assignment {
                group: nu,
                population: eigen.populations[n],
                local_a_energy: block.local_a_energies[target],
            });
        }
    }
    let unitary = UnitaryOperator::from_unitary_unchecked(u);
    finish(
        rho,
        system,
        unitary,
        occupations,
        assignments,
        &a_spec.values,
    )
}

fn finish(
    rho: &DensityMatrix,
    system: &CompositeSystem,
    unitary: UnitaryOperator,
    occupations: Vec<f64>,
    assignments: Vec<Assignment>,
    a_energies: &[f64],
) -> Result<OptimalFlowResult> {
    let e_initial = system.local_energy(rho, 0)?;
    let delta_e_a = occupations
        .iter()
        .zip(a_energies)
        .map(|(q, e)| q * e)
        .sum::<f64>()
        - e_initial;
    let sigma_a = system.marginal(&rho.evolve(&unitary)?, 0)?;
    Ok(OptimalFlowResult {
        delta_e_a,
        unitary,
        sigma_a,
        occupations,
        assignments,
    })
}

/// Full exchange ledger for `σ = U ϱ U^dagger`.
pub fn delta_e_for_unitary(
    rho: &DensityMatrix,
    u: &UnitaryOperator,
    system: &CompositeSystem,
) -> Result<ExchangeLedger> {
    let deviation = unitarity_defect(u.matrix());
    if deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    system.check_state(rho)?;
    let sigma = rho.evolve(u)?;
    ExchangeLedger::compute(rho, &sigma, system)
}

/// `E(Tr_B[U ϱ U^dagger]) - E(ϱ_A)` without the entropy bookkeeping.
pub fn delta_e_a(
    rho: &DensityMatrix,
    u: &UnitaryOperator,
    system: &CompositeSystem,
) -> Result<f64> {
    let sigma = rho.evolve(u)?;
    Ok(system.local_energy(&sigma, 0)? - system.local_energy(rho, 0)?)
}

/// Minimal `ΔE_A` over all unitaries on AB.
///
/// The global eigenvalues, largest first, fill A's levels from the lowest
/// energy up in groups of `d_B`.
pub fn optimal_arbitrary_unitary(
    rho: &DensityMatrix,
    system: &CompositeSystem,
) -> Result<OptimalFlowResult> {
    system.check_bipartite()?;
    system.check_state(rho)?;
    let dims = system.local_dims();
    let (d_a, d_b) = (dims[0], dims[1]);
    let a_spec = system.local_hamiltonian(0).eig();
    let b_spec = system.local_hamiltonian(1).eig();
    let spec = rho.eig();
    let dim = system.dim();

    let mut u = ComplexMatrix::zeros(dim, dim);
    let mut occupations = vec![0.0; d_a];
    let mut assignments = Vec::with_capacity(dim);
    for (i, occupation) in occupations.iter_mut().enumerate() {
        for j in 0..d_b {
            let k = dim - 1 - (i * d_b + j);
            let target = a_spec
                .vectors
                .column(i)
                .kronecker(&b_spec.vectors.column(j));
            u += target * spec.vectors.column(k).adjoint();
            *occupation += spec.values[k];
            assignments.push(Assignment {
                group: i,
                population: spec.values[k],
                local_a_energy: a_spec.values[i],
            });
        }
    }
    let unitary = UnitaryOperator::from_unitary_unchecked(u);
    finish(
        rho,
        system,
        unitary,
        occupations,
        assignments,
        &a_spec.values,
    )
}
