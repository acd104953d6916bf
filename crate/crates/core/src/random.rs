//! Reproducible random matrices for property checks and sampling oracles.
//!
//! Every generator draws from a ChaCha8 stream, so a `(seed, stream)` pair
//! identifies a sequence on any platform.

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::model::BlockStructure;
use crate::operator::{
    partial_trace, tensor_product, ComplexMatrix, DensityMatrix, HermitianOperator, UnitaryOperator,
};

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` under the same seed (one per worker).
pub fn seeded_stream(seed: u64, stream: u64) -> Rng64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the phase fix on `R`.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> UnitaryOperator {
    let qr = ginibre(dim, dim, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    UnitaryOperator::from_unitary_unchecked(q)
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
    HermitianOperator::from_hermitian_part(&ginibre(dim, dim, rng))
}

/// Full-rank random state `G G^dagger / Tr` (Hilbert-Schmidt measure).
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    random_density_matrix_rank(dim, dim, rng)
}

pub fn random_density_matrix_rank(dim: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(dim, rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_state_unchecked(m.unscale(tr))
}

pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let v = DVector::from_fn(dim, |_, _| gaussian(rng));
    DensityMatrix::pure(&v).expect("gaussian vector is non-zero")
}

/// Random energy-preserving unitary: an independent Haar unitary on every
/// degenerate block.
pub fn random_block_unitary(blocks: &BlockStructure, rng: &mut impl Rng) -> UnitaryOperator {
    let inner: Vec<ComplexMatrix> = blocks
        .blocks()
        .iter()
        .map(|b| haar_unitary(b.multiplicity(), rng).matrix().clone())
        .collect();
    blocks.lift_block_operators(&inner)
}

/// Random state whose marginals are exactly `gamma_a` and `gamma_b`.
///
/// Adds a random Hermitian perturbation with vanishing partial traces to
/// `gamma_a ⊗ gamma_b`, scaled to a random fraction of the largest step that
/// keeps the result positive semidefinite.
pub fn random_state_with_marginals(
    gamma_a: &DensityMatrix,
    gamma_b: &DensityMatrix,
    rng: &mut impl Rng,
) -> DensityMatrix {
    let (da, db) = (gamma_a.dim(), gamma_b.dim());
    let base = tensor_product(gamma_a.matrix(), gamma_b.matrix());
    let x = random_hermitian(da * db, rng).into_inner();
    let xa = partial_trace(&x, &[da, db], &[0]).unwrap();
    let xb = partial_trace(&x, &[da, db], &[1]).unwrap();
    let ia = ComplexMatrix::identity(da, da);
    let ib = ComplexMatrix::identity(db, db);
    let tr = x.trace();
    let y = &x
        - tensor_product(&xa, &ib).unscale(db as f64)
        - tensor_product(&ia, &xb).unscale(da as f64)
        + ComplexMatrix::identity(da * db, da * db) * (tr / (da * db) as f64);

    // Largest t with base + t y >= 0, by bisection on the minimum eigenvalue.
    let min_eig = |t: f64| {
        HermitianOperator::from_hermitian_part(&(&base + y.scale(t)))
            .eig()
            .values[0]
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while min_eig(hi) > 0.0 && hi < 1e6 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if min_eig(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = lo * rng.random_range(0.05..0.95);
    DensityMatrix::from_state_unchecked(&base + y.scale(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{max_abs, unitarity_defect};

    #[test]
    fn haar_is_unitary() {
        let mut rng = seeded(10);
        for d in [1, 2, 4, 9] {
            assert!(unitarity_defect(haar_unitary(d, &mut rng).matrix()) < 1e-12);
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| seeded_stream(7, 1).random()).collect();
        let mut r1 = seeded_stream(7, 1);
        let mut r2 = seeded_stream(7, 2);
        let x: u64 = r1.random();
        let y: u64 = r2.random();
        assert_eq!(a[0], x);
        assert_ne!(x, y);
    }

    #[test]
    fn thermal_marginals_are_exact() {
        let mut rng = seeded(11);
        let ga = DensityMatrix::diagonal(&[0.8, 0.2]).unwrap();
        let gb = DensityMatrix::diagonal(&[0.6, 0.3, 0.1]).unwrap();
        for _ in 0..10 {
            let rho = random_state_with_marginals(&ga, &gb, &mut rng);
            assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
            let ra = partial_trace(rho.matrix(), &[2, 3], &[0]).unwrap();
            let rb = partial_trace(rho.matrix(), &[2, 3], &[1]).unwrap();
            assert!(max_abs(&(ra - ga.matrix())) < 1e-13);
            assert!(max_abs(&(rb - gb.matrix())) < 1e-13);
        }
    }
}
