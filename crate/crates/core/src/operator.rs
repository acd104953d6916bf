//! Dense complex-matrix kernel.
//!
//! Composite indices are subsystem-A-major throughout the crate: for a
//! bipartite space the basis vector `|i>_A |j>_B` sits at `i * d_B + j`,
//! which is the layout produced by [`tensor_product`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Relative max-norm tolerance for accepting a matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Max-norm tolerance on `U U^dagger - 1`.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Tolerance on `Tr[rho] - 1`.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues of a density matrix down to `-POSITIVITY_TOL` are accepted and clipped to zero.
pub const POSITIVITY_TOL: f64 = 1e-12;

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::dims(
            "non-empty square matrix",
            format!("{}x{}", m.nrows(), m.ncols()),
        ));
    }
    Ok(())
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    check_square(m)?;
    let deviation = hermiticity_defect(m);
    if deviation > HERMITICITY_TOL * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Real trace of a square matrix.
pub fn real_trace(m: &ComplexMatrix) -> f64 {
    m.trace().re
}

/// `Re Tr[a b]` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    /// Rebuilds `V f(diag(lambda)) V^dagger`.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= w;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    check_hermitian(m)?;
    Ok(eig_unchecked(m))
}

fn eig_unchecked(m: &ComplexMatrix) -> Spectrum {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_columns(
        &order
            .iter()
            .map(|&k| eig.eigenvectors.column(k))
            .collect::<Vec<_>>(),
    );
    Spectrum { values, vectors }
}

/// Kronecker product `a ⊗ b`, index `(i, j) -> i * d_b + j`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Offsets of every multi-index over `subs` (enumerated A-major) into the full index.
fn sub_offsets(dims: &[usize], strides: &[usize], subs: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for &k in subs {
        offsets = offsets
            .iter()
            .flat_map(|&o| (0..dims[k]).map(move |i| o + i * strides[k]))
            .collect();
    }
    offsets
}

/// Reduced matrix on the subsystems listed in `keep`; everything else is traced out.
///
/// The kept subsystems appear in ascending order regardless of the order in `keep`.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || m.nrows() != total || m.ncols() != total {
        return Err(Error::dims(
            format!("{total}x{total} for subsystem dims {dims:?}"),
            format!("{}x{}", m.nrows(), m.ncols()),
        ));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::dims(
            format!("subsystem index < {}", dims.len()),
            bad,
        ));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let st = strides(dims);
    let keep_off = sub_offsets(dims, &st, &kept);
    let trace_off = sub_offsets(dims, &st, &traced);

    let dk = keep_off.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for (r, &ro) in keep_off.iter().enumerate() {
        for (c, &co) in keep_off.iter().enumerate() {
            out[(r, c)] = trace_off.iter().map(|&t| m[(ro + t, co + t)]).sum();
        }
    }
    Ok(out)
}

/// Trace norm distance `(1/2) Σ σ_k(a - b)`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    let diff = a.matrix() - b.matrix();
    Ok(0.5 * diff.singular_values().iter().sum::<f64>())
}

/// A Hermitian operator (Hamiltonians, observables).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_hermitian(&m)?;
        Ok(HermitianOperator(hermitian_part(&m)))
    }

    /// Takes `(m + m^dagger) / 2`; never fails on square input.
    pub fn from_hermitian_part(m: &ComplexMatrix) -> Self {
        HermitianOperator(hermitian_part(m))
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&v| C64::new(v, 0.0)));
        HermitianOperator(ComplexMatrix::from_diagonal(&d))
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator(ComplexMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn eig(&self) -> Spectrum {
        eig_unchecked(&self.0)
    }

    /// `Tr[H rho]`.
    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        trace_of_product(&self.0, rho.matrix())
    }

    pub fn tensor(&self, other: &HermitianOperator) -> HermitianOperator {
        HermitianOperator(tensor_product(&self.0, &other.0))
    }

    pub fn scaled(&self, s: f64) -> HermitianOperator {
        HermitianOperator(self.0.scale(s))
    }

    /// Max-entry norm of `[self, m]`.
    pub fn commutator_norm(&self, m: &ComplexMatrix) -> f64 {
        max_abs(&(&self.0 * m - m * &self.0))
    }
}

impl std::ops::Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator(&self.0 + &rhs.0)
    }
}

/// A unit-trace positive semidefinite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_hermitian(&m)?;
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let h = hermitian_part(&m);
        let min = eig_unchecked(&h).values[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix(h))
    }

    /// Wraps a matrix already known to be a state up to round-off (images of
    /// states under unitaries, partial traces, tensor products).
    pub(crate) fn from_state_unchecked(m: ComplexMatrix) -> Self {
        DensityMatrix(hermitian_part(&m))
    }

    /// Nearest state in the sense used for numerically produced candidates:
    /// Hermitian part, negative eigenvalues clipped, renormalised.
    pub fn project(m: &ComplexMatrix) -> Result<Self> {
        check_square(m)?;
        let spec = eig_unchecked(m);
        let total: f64 = spec.values.iter().map(|v| v.max(0.0)).sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidState("no positive spectral weight".into()));
        }
        Ok(DensityMatrix(hermitian_part(
            &spec.map(|v| C64::new(v.max(0.0) / total, 0.0)),
        )))
    }

    pub fn pure(psi: &ComplexVector) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("state vector has zero norm".into()));
        }
        let v = psi.unscale(n);
        Ok(DensityMatrix(&v * v.adjoint()))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(ComplexMatrix::identity(dim, dim).unscale(dim as f64))
    }

    /// Diagonal state from populations (must sum to one).
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let d = DVector::from_iterator(
            populations.len(),
            populations.iter().map(|&p| C64::new(p, 0.0)),
        );
        DensityMatrix::new(ComplexMatrix::from_diagonal(&d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    /// Eigenvalues ascending, with values in `[-POSITIVITY_TOL, 0)` clipped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eig().values
    }

    /// Eigendecomposition with clipped eigenvalues.
    pub fn eig(&self) -> Spectrum {
        let mut spec = eig_unchecked(&self.0);
        for v in &mut spec.values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        spec
    }

    pub fn purity(&self) -> f64 {
        trace_of_product(&self.0, &self.0)
    }

    pub fn populations(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix(tensor_product(&self.0, &other.0))
    }

    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
        Ok(DensityMatrix::from_state_unchecked(partial_trace(
            &self.0, dims, keep,
        )?))
    }

    /// `U rho U^dagger`.
    pub fn evolve(&self, u: &UnitaryOperator) -> Result<DensityMatrix> {
        if u.dim() != self.dim() {
            return Err(Error::dims(self.dim(), u.dim()));
        }
        Ok(DensityMatrix::from_state_unchecked(
            u.matrix() * &self.0 * u.matrix().adjoint(),
        ))
    }

    /// Convex combination `Σ w_k rho_k` (weights must be non-negative and sum to one).
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
        let dim = parts
            .first()
            .map(|(_, r)| r.dim())
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, r) in parts {
            if r.dim() != dim {
                return Err(Error::dims(dim, r.dim()));
            }
            if *w < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "negative mixture weight {w}"
                )));
            }
            acc += r.matrix().scale(*w);
        }
        DensityMatrix::new(acc)
    }
}

/// A unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator(ComplexMatrix);

pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - ComplexMatrix::identity(n, n)))
}

impl UnitaryOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_square(&m)?;
        let deviation = unitarity_defect(&m);
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(UnitaryOperator(m))
    }

    pub(crate) fn from_unitary_unchecked(m: ComplexMatrix) -> Self {
        UnitaryOperator(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOperator(ComplexMatrix::identity(dim, dim))
    }

    /// Unitary from a permutation: `|k> -> |perm[k]>`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = ComplexMatrix::zeros(n, n);
        for (k, &target) in perm.iter().enumerate() {
            if target >= n || seen[target] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[target] = true;
            m[(target, k)] = C64::new(1.0, 0.0);
        }
        Ok(UnitaryOperator(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn adjoint(&self) -> UnitaryOperator {
        UnitaryOperator(self.0.adjoint())
    }

    pub fn compose(&self, after: &UnitaryOperator) -> UnitaryOperator {
        UnitaryOperator(&after.0 * &self.0)
    }

    pub fn tensor(&self, other: &UnitaryOperator) -> UnitaryOperator {
        UnitaryOperator(tensor_product(&self.0, &other.0))
    }
}

/// `exp(-i H t)` for a fixed Hermitian `H` (ℏ = 1), with the spectrum cached.
#[derive(Debug, Clone)]
pub struct Propagator {
    spectrum: Spectrum,
}

impl Propagator {
    pub fn new(h: &HermitianOperator) -> Self {
        Propagator { spectrum: h.eig() }
    }

    pub fn at(&self, t: f64) -> UnitaryOperator {
        UnitaryOperator(
            self.spectrum
                .map(|lambda| C64::from_polar(1.0, -lambda * t)),
        )
    }
}

pub fn propagator(h: &HermitianOperator, t: f64) -> UnitaryOperator {
    Propagator::new(h).at(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density_matrix, random_hermitian, seeded};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn basis_projector(d: usize, k: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(k, k)] = c(1.0);
        m
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = ComplexMatrix::identity(2, 2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4, 4));
    }

    #[test]
    fn basis_tensor_lands_on_a_major_index() {
        let m = tensor_product(&basis_projector(2, 0), &basis_projector(2, 1));
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == 1 && j == 1 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], c(expected));
            }
        }
    }

    #[test]
    fn tensor_matches_four_index_loop() {
        let mut rng = seeded(1);
        let a = random_hermitian(2, &mut rng).into_inner()
            + ComplexMatrix::from_fn(2, 2, |i, j| C64::new(0.0, (i + 2 * j) as f64));
        let b = random_hermitian(2, &mut rng).into_inner();
        let ab = tensor_product(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert_eq!(ab[(i * 2 + j, k * 2 + l)], a[(i, k)] * b[(j, l)]);
                    }
                }
            }
        }
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let psi = ComplexVector::from_vec(vec![c(s), c(0.0), c(0.0), c(s)]);
        let rho = DensityMatrix::pure(&psi).unwrap();
        let red = partial_trace(rho.matrix(), &[2, 2], &[0]).unwrap();
        assert!(max_abs(&(red - ComplexMatrix::identity(2, 2).scale(0.5))) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_returns_factor() {
        let mut rng = seeded(2);
        let a = random_density_matrix(3, &mut rng);
        let b = random_density_matrix(2, &mut rng);
        let c3 = random_density_matrix(2, &mut rng);
        let ab = tensor_product(a.matrix(), b.matrix());
        assert!(max_abs(&(partial_trace(&ab, &[3, 2], &[0]).unwrap() - a.matrix())) < 1e-12);
        assert!(max_abs(&(partial_trace(&ab, &[3, 2], &[1]).unwrap() - b.matrix())) < 1e-12);

        let abc = tensor_all([a.matrix(), b.matrix(), c3.matrix()]);
        let only_c = partial_trace(&abc, &[3, 2, 2], &[2]).unwrap();
        assert!(max_abs(&(only_c - c3.matrix())) < 1e-12);
        let ac = partial_trace(&abc, &[3, 2, 2], &[2, 0]).unwrap();
        assert!(max_abs(&(ac - tensor_product(a.matrix(), c3.matrix()))) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(4, 4);
        assert!(matches!(
            partial_trace(&m, &[3, 2], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(partial_trace(&m, &[2, 2], &[5]).is_err());
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let h = HermitianOperator::from_diagonal(&[3.0, 1.0, 2.0]);
        let spec = eig_hermitian(h.matrix()).unwrap();
        assert_eq!(spec.values.len(), 3);
        for (v, e) in spec.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_of_pauli_x() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let spec = eig_hermitian(&m).unwrap();
        assert!((spec.values[0] + 1.0).abs() < 1e-14);
        assert!((spec.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = seeded(3);
        for d in [2, 5, 12] {
            let h = random_hermitian(d, &mut rng);
            let spec = eig_hermitian(h.matrix()).unwrap();
            let v = &spec.vectors;
            assert!(max_abs(&(v.adjoint() * v - ComplexMatrix::identity(d, d))) < 1e-10);
            let rebuilt = spec.map(c);
            assert!(max_abs(&(rebuilt - h.matrix())) < 1e-10 * max_abs(h.matrix()).max(1.0));
            assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn propagator_of_diagonal_hamiltonian() {
        let eps = 0.7;
        let t = 1.3;
        let u = propagator(&HermitianOperator::from_diagonal(&[0.0, eps]), t);
        assert!((u.matrix()[(0, 0)] - c(1.0)).norm() < 1e-14);
        assert!((u.matrix()[(1, 1)] - C64::from_polar(1.0, -eps * t)).norm() < 1e-14);
        assert!(u.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn propagator_at_zero_and_group_property() {
        let mut rng = seeded(4);
        let h = random_hermitian(6, &mut rng);
        let p = Propagator::new(&h);
        assert!(max_abs(&(p.at(0.0).matrix() - ComplexMatrix::identity(6, 6))) < 1e-12);
        let t = 0.83;
        let prod = p.at(t).matrix() * p.at(-t).matrix();
        assert!(max_abs(&(prod - ComplexMatrix::identity(6, 6))) < 1e-10);
        assert!(UnitaryOperator::new(p.at(t).matrix().clone()).is_ok());
    }

    #[test]
    fn conjugation_preserves_spectrum() {
        let mut rng = seeded(5);
        let rho = random_density_matrix(5, &mut rng);
        let u = propagator(&random_hermitian(5, &mut rng), 2.1);
        let out = rho.evolve(&u).unwrap();
        assert!(hermiticity_defect(out.matrix()) < 1e-12);
        assert!((real_trace(out.matrix()) - 1.0).abs() < 1e-10);
        for (a, b) in rho.eigenvalues().iter().zip(out.eigenvalues()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_distance_examples() {
        let mut rng = seeded(6);
        let rho = random_density_matrix(3, &mut rng);
        assert!(trace_distance(&rho, &rho).unwrap().abs() < 1e-14);
        let zero = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let one = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-14);
        assert!(trace_distance(&zero, &rho).is_err());
    }

    #[test]
    fn trace_distance_matches_spectral_oracle() {
        let mut rng = seeded(7);
        for _ in 0..20 {
            let a = random_density_matrix(4, &mut rng);
            let b = random_density_matrix(4, &mut rng);
            let d = trace_distance(&a, &b).unwrap();
            let oracle: f64 = 0.5
                * eig_hermitian(&(a.matrix() - b.matrix()))
                    .unwrap()
                    .values
                    .iter()
                    .map(|v| v.abs())
                    .sum::<f64>();
            assert!((d - oracle).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&d));
            assert!((d - trace_distance(&b, &a).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.5, -0.5]).is_err());
        assert!(DensityMatrix::diagonal(&[1.0 + 5e-13, -5e-13]).is_ok());
        let u = ComplexMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
        assert!(matches!(
            UnitaryOperator::new(u),
            Err(Error::NotUnitary { .. })
        ));
    }
}
