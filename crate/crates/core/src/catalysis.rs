//! Catalytic energy flow: a catalyst C is coupled to AB, restored exactly by
//! choosing it as the fixed point of the reduced channel, and the optimal
//! energy-preserving unitary is applied to AB afterwards.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::catalytic_bound;
use crate::entropic::{clausius_bound_check, ExchangeLedger};
use crate::error::{Error, Result};
use crate::flow::{optimal_arbitrary_unitary, optimal_energy_preserving};
use crate::model::{
    effective_temperatures, qubit_hamiltonian, rho_lambda_theta, tavis_cummings, CompositeSystem,
    CorrelatedStateParams, DEFAULT_DEGENERACY_TOL, MIXTURE_SLACK,
};
use crate::operator::{
    max_abs, trace_distance, ComplexMatrix, DensityMatrix, HermitianOperator, Propagator,
    UnitaryOperator,
};
use crate::scalar::golden_section;

/// Singular values of `M - 1` at or below this count as eigenvalue one.
pub const FIXED_POINT_TOL: f64 = 1e-9;
/// If no singular value of `M - 1` is below this, the channel is not trace preserving.
pub const FIXED_POINT_FAILURE: f64 = 1e-6;
/// Values of `ΔE_A(τ)` closer than this are treated as ties.
pub const TAU_TIE_TOL: f64 = 1e-12;

/// Unitary dynamics of `A ⊗ B ⊗ C` parametrised by a dimensionless time.
pub trait CatalyticDynamics: Send + Sync {
    fn catalyst_dim(&self) -> usize;
    /// Non-interacting Hamiltonian on `A ⊗ B ⊗ C`.
    fn h0(&self) -> &HermitianOperator;
    fn unitary(&self, tau: f64) -> UnitaryOperator;
}

/// Tavis-Cummings coupling of two atoms to a cavity catalyst.
///
/// `unitary(τ)` is `exp(-i (H_0 + V) τ t_0)` with `t_0 = 1/g`, or `1/ε` when `g = 0`.
#[derive(Debug, Clone)]
pub struct TavisCummingsDynamics {
    pub epsilon: f64,
    pub g: f64,
    pub n_fock: usize,
    h0: HermitianOperator,
    propagator: Propagator,
    time_unit: f64,
}

impl TavisCummingsDynamics {
    pub fn new(epsilon: f64, g: f64, n_fock: usize) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) || !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "need ε > 0 and g >= 0, got ε = {epsilon}, g = {g}"
            )));
        }
        let (h0, v) = tavis_cummings(epsilon, g, n_fock)?;
        let propagator = Propagator::new(&(&h0 + &v));
        let time_unit = if g > 0.0 { 1.0 / g } else { 1.0 / epsilon };
        Ok(TavisCummingsDynamics {
            epsilon,
            g,
            n_fock,
            h0,
            propagator,
            time_unit,
        })
    }

    pub fn time_unit(&self) -> f64 {
        self.time_unit
    }
}

impl CatalyticDynamics for TavisCummingsDynamics {
    fn catalyst_dim(&self) -> usize {
        self.n_fock
    }

    fn h0(&self) -> &HermitianOperator {
        &self.h0
    }

    fn unitary(&self, tau: f64) -> UnitaryOperator {
        self.propagator.at(tau * self.time_unit)
    }
}

/// A time-independent unitary on `A ⊗ B ⊗ C`.
#[derive(Debug, Clone)]
pub struct FixedUnitaryDynamics {
    pub unitary: UnitaryOperator,
    pub h0: HermitianOperator,
    pub catalyst_dim: usize,
}

impl CatalyticDynamics for FixedUnitaryDynamics {
    fn catalyst_dim(&self) -> usize {
        self.catalyst_dim
    }

    fn h0(&self) -> &HermitianOperator {
        &self.h0
    }

    fn unitary(&self, _tau: f64) -> UnitaryOperator {
        self.unitary.clone()
    }
}

fn check_split(rho_ab: &DensityMatrix, u: &UnitaryOperator, d_c: usize) -> Result<()> {
    if d_c == 0 || u.dim() != rho_ab.dim() * d_c {
        return Err(Error::dims(
            format!(
                "unitary of dim {} x {d_c} = {}",
                rho_ab.dim(),
                rho_ab.dim() * d_c
            ),
            u.dim(),
        ));
    }
    Ok(())
}

/// Matrix of `ω -> Tr_AB[U (ϱ ⊗ ω) U^dagger]` acting on row-major `vec(ω)`,
/// where `vec(ω)[c d_C + c'] = ω[c, c']`.
pub fn reduced_channel_matrix(
    rho_ab: &DensityMatrix,
    u: &UnitaryOperator,
    d_c: usize,
) -> Result<ComplexMatrix> {
    check_split(rho_ab, u, d_c)?;
    let d_ab = rho_ab.dim();
    let spec = rho_ab.eig();
    let um = u.matrix();
    let mut m = ComplexMatrix::zeros(d_c * d_c, d_c * d_c);
    // Kraus operators K_{x,k}[c', c] = √r_k Σ_y U[(x, c'), (y, c)] v_k[y]
    for (k, &r) in spec.values.iter().enumerate() {
        if r <= 0.0 {
            continue;
        }
        let v = spec.vectors.column(k);
        let sr = r.sqrt();
        for x in 0..d_ab {
            let kraus = DMatrix::from_fn(d_c, d_c, |cp, c| {
                let mut acc = C64::new(0.0, 0.0);
                for y in 0..d_ab {
                    acc += um[(x * d_c + cp, y * d_c + c)] * v[y];
                }
                acc * sr
            });
            m += kraus.kronecker(&kraus.map(|z| z.conj()));
        }
    }
    Ok(m)
}

fn vec_row_major(m: &ComplexMatrix) -> nalgebra::DVector<C64> {
    let d = m.nrows();
    nalgebra::DVector::from_fn(d * d, |k, _| m[(k / d, k % d)])
}

fn unvec_row_major(v: &[C64], d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| v[i * d + j])
}

fn apply_channel(m: &ComplexMatrix, omega: &ComplexMatrix) -> ComplexMatrix {
    let out = m * vec_row_major(omega);
    unvec_row_major(out.as_slice(), omega.nrows())
}

/// Catalyst state that the reduced channel maps to itself.
#[derive(Debug, Clone)]
pub struct CatalystSolution {
    pub omega: DensityMatrix,
    /// `trace_distance(ω, Λ(ω))`.
    pub residual: f64,
    /// Dimension of the eigenvalue-one eigenspace of the reduced channel.
    pub fixed_space_dim: usize,
    pub tau: Option<f64>,
    /// False when the fixed space holds more than one state; `omega` is then
    /// the maximum-entropy fixed state.
    pub unique: bool,
}

/// Solves `ω = Tr_AB[U (ϱ ⊗ ω) U^dagger]`.
pub fn fixed_point_catalyst(
    rho_ab: &DensityMatrix,
    u: &UnitaryOperator,
    d_c: usize,
) -> Result<CatalystSolution> {
    let m = reduced_channel_matrix(rho_ab, u, d_c)?;
    let n = d_c * d_c;
    let a = &m - ComplexMatrix::identity(n, n);
    let svd = a.svd(true, true);
    let (left, vt) = (
        svd.u.as_ref().expect("requested"),
        svd.v_t.as_ref().expect("requested"),
    );
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| sv[x].total_cmp(&sv[y]));
    let smallest = sv[order[0]];
    if smallest > FIXED_POINT_FAILURE {
        return Err(Error::FixedPointNotFound { smallest });
    }
    let kernel: Vec<usize> = {
        let k: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&i| sv[i] <= FIXED_POINT_TOL)
            .collect();
        if k.is_empty() {
            vec![order[0]]
        } else {
            k
        }
    };
    let right = ComplexMatrix::from_fn(n, kernel.len(), |r, c| vt[(kernel[c], r)].conj());
    let left = ComplexMatrix::from_fn(n, kernel.len(), |r, c| left[(r, kernel[c])]);

    let omega = if kernel.len() == 1 {
        let x = unvec_row_major(right.column(0).as_slice(), d_c);
        let tr = x.trace();
        DensityMatrix::project(&x.map(|z| z / tr))?
    } else {
        // spectral projector onto the fixed space applied to 1/d
        let gram = left.adjoint() * &right;
        let gram_inv = gram.try_inverse().ok_or_else(|| {
            Error::RootFinding("eigenvalue one of the reduced channel is not semisimple".into())
        })?;
        let start = vec_row_major(DensityMatrix::maximally_mixed(d_c).matrix());
        let projected = &right * (gram_inv * (left.adjoint() * start));
        let omega0 = DensityMatrix::project(&unvec_row_major(projected.as_slice(), d_c))?;
        maximise_entropy_in_span(omega0, &right, d_c)
    };
    let image = apply_channel(&m, omega.matrix());
    let residual = trace_distance(&omega, &DensityMatrix::from_state_unchecked(image))?;
    Ok(CatalystSolution {
        omega,
        residual,
        fixed_space_dim: kernel.len(),
        tau: None,
        unique: kernel.len() == 1,
    })
}

/// Real coordinates of a Hermitian matrix in an orthonormal basis for `Tr[A B]`.
fn herm_to_real(h: &ComplexMatrix) -> Vec<f64> {
    let d = h.nrows();
    let s2 = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(h[(i, i)].re);
        for j in i + 1..d {
            out.push(s2 * h[(i, j)].re);
            out.push(s2 * h[(i, j)].im);
        }
    }
    out
}

fn real_to_herm(x: &[f64], d: usize) -> ComplexMatrix {
    let s2 = std::f64::consts::SQRT_2;
    let mut h = ComplexMatrix::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        h[(i, i)] = C64::new(x[k], 0.0);
        k += 1;
        for j in i + 1..d {
            let z = C64::new(x[k], x[k + 1]) / s2;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

fn orthonormal_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let top = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > 1e-8 * top.max(1e-300))
        .collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

fn entropy_of(spec_values: &[f64]) -> f64 {
    spec_values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Projected-gradient entropy ascent over states in the span of `fixed` (columns
/// are row-major vectorised matrices), starting from the fixed state `omega0`.
fn maximise_entropy_in_span(
    omega0: DensityMatrix,
    fixed: &ComplexMatrix,
    d: usize,
) -> DensityMatrix {
    // Hermitian, traceless directions inside the fixed space
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for c in 0..fixed.ncols() {
        let x = unvec_row_major(fixed.column(c).as_slice(), d);
        let xd = x.adjoint();
        cols.push(herm_to_real(&(&x + &xd).scale(0.5)));
        cols.push(herm_to_real(&(&x - &xd).map(|z| z * C64::new(0.0, -0.5))));
    }
    let n = d * d;
    let span = orthonormal_columns(&DMatrix::from_fn(n, cols.len(), |r, c| cols[c][r]));
    let trace_dir = herm_to_real(&ComplexMatrix::identity(d, d));
    let t = nalgebra::DVector::from_vec(trace_dir);
    let coeff = span.transpose() * &t;
    let traceless = if coeff.norm() > 0.0 {
        let q = &span * &coeff;
        orthonormal_columns(&(&span - (&q * coeff.transpose()).unscale(coeff.norm_squared())))
    } else {
        span
    };
    if traceless.ncols() == 0 {
        return omega0;
    }

    let mut omega = omega0;
    let mut s = entropy_of(&omega.eigenvalues());
    for _ in 0..500 {
        let spec = omega.eig();
        let grad = spec.map(|p| C64::new(-(p.max(1e-300)).ln(), 0.0));
        let g = nalgebra::DVector::from_vec(herm_to_real(&grad));
        let step_dir = &traceless * (traceless.transpose() * g);
        let norm = step_dir.norm();
        if norm < 1e-13 {
            break;
        }
        let dir = real_to_herm(step_dir.as_slice(), d);
        let mut eta = 1.0 / norm;
        let mut improved = false;
        while eta * norm > 1e-16 {
            let trial = omega.matrix() + dir.scale(eta);
            let spec_t = HermitianOperator::from_hermitian_part(&trial).eig();
            if spec_t.values[0] >= 0.0 {
                let st = entropy_of(&spec_t.values);
                if st > s {
                    omega = DensityMatrix::from_state_unchecked(trial);
                    s = st;
                    improved = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    omega
}

/// One run of the two-step protocol at a fixed time.
#[derive(Debug, Clone)]
pub struct ProtocolResult {
    pub tau: f64,
    /// `E(σ'_A) - E(ϱ_A)`.
    pub delta_e_a: f64,
    /// `Tr_C[U(τ) (ϱ ⊗ ω) U(τ)^dagger]`.
    pub sigma_ab_interaction: DensityMatrix,
    /// State of AB after the optimal energy-preserving unitary.
    pub sigma_ab: DensityMatrix,
    pub catalyst: CatalystSolution,
    /// `trace_distance(ω, Tr_AB[final state])`.
    pub catalyst_residual: f64,
    /// Largest violation of energy conservation in either step.
    pub energy_residual: f64,
}

/// Couples the fixed-point catalyst to AB for time `tau`, then applies the
/// optimal energy-preserving unitary for the resulting AB state.
pub fn catalytic_protocol(
    rho_ab: &DensityMatrix,
    tau: f64,
    system: &CompositeSystem,
    dynamics: &dyn CatalyticDynamics,
) -> Result<ProtocolResult> {
    system.check_bipartite()?;
    system.check_state(rho_ab)?;
    let d_c = dynamics.catalyst_dim();
    let u = dynamics.unitary(tau);
    check_split(rho_ab, &u, d_c)?;
    let h0 = dynamics.h0();
    let commutator = max_abs(&(h0.matrix() * u.matrix() - u.matrix() * h0.matrix()));
    if commutator > 1e-9 * max_abs(h0.matrix()).max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "catalytic unitary does not conserve H_0 (commutator {commutator:.3e})"
        )));
    }

    let mut catalyst = fixed_point_catalyst(rho_ab, &u, d_c)?;
    catalyst.tau = Some(tau);
    let initial = rho_ab.tensor(&catalyst.omega);
    let total = initial.evolve(&u)?;
    let dims = [system.dim(), d_c];
    let sigma_ab_interaction = total.partial_trace(&dims, &[0])?;
    let omega_after = total.partial_trace(&dims, &[1])?;
    let catalyst_residual = trace_distance(&catalyst.omega, &omega_after)?;
    let step1 = (h0.expectation(&total) - h0.expectation(&initial)).abs();

    let blocks = system.block_structure(DEFAULT_DEGENERACY_TOL);
    let flow = optimal_energy_preserving(&sigma_ab_interaction, system, &blocks)?;
    let sigma_ab = sigma_ab_interaction.evolve(&flow.unitary)?;
    let step2 =
        (system.h0().expectation(&sigma_ab) - system.h0().expectation(&sigma_ab_interaction)).abs();
    let delta_e_a = system.local_energy(&sigma_ab, 0)? - system.local_energy(rho_ab, 0)?;
    Ok(ProtocolResult {
        tau,
        delta_e_a,
        sigma_ab_interaction,
        sigma_ab,
        catalyst,
        catalyst_residual,
        energy_residual: step1.max(step2),
    })
}

/// Coarse grid of `points` times evenly spaced on `[tau_min, tau_max]`, followed
/// by golden-section refinement around the best grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauScan {
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub refine_iterations: usize,
}

impl Default for TauScan {
    fn default() -> Self {
        TauScan {
            tau_min: 0.05,
            tau_max: 20.0,
            points: 400,
            refine_iterations: 40,
        }
    }
}

impl TauScan {
    /// `points` times `k tau_max / points`, `k = 1..=points`.
    pub fn uniform(tau_max: f64, points: usize) -> Self {
        TauScan {
            tau_min: tau_max / points.max(1) as f64,
            tau_max,
            points,
            ..TauScan::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_min > 0.0 && self.tau_max > self.tau_min && self.tau_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < τ_min < τ_max, got [{}, {}]",
                self.tau_min, self.tau_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter(
                "τ grid needs at least two points".into(),
            ));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.tau_max - self.tau_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.tau_max
                } else {
                    self.tau_min + k as f64 * step
                }
            })
            .collect()
    }
}

/// Result of minimising `ΔE_A(τ)` over the scan.
#[derive(Debug, Clone)]
pub struct TauOptimum {
    pub tau_star: f64,
    /// `ΔE_A^c`, the minimum found.
    pub delta_e_cat: f64,
    /// Best value on the coarse grid and its time.
    pub coarse_min: f64,
    pub coarse_tau: f64,
    /// True when the `τ -> 0` limit (no interaction, only the optimal
    /// energy-preserving unitary) beat every scanned time; `tau_star` is then 0.
    pub at_limit: bool,
    /// Protocol record at `tau_star`.
    pub protocol: ProtocolResult,
}

/// Minimises `ΔE_A(τ)`. Ties go to the smallest `τ`.
pub fn optimize_tau(
    rho_ab: &DensityMatrix,
    system: &CompositeSystem,
    dynamics: &dyn CatalyticDynamics,
    scan: &TauScan,
) -> Result<TauOptimum> {
    scan.validate()?;
    let grid = scan.grid();
    let mut eval = |t: f64| catalytic_protocol(rho_ab, t, system, dynamics).map(|r| r.delta_e_a);
    let values = grid
        .iter()
        .map(|&t| eval(t))
        .collect::<Result<Vec<f64>>>()?;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let best = values
        .iter()
        .position(|&v| v <= min + TAU_TIE_TOL)
        .expect("non-empty grid");
    let (coarse_tau, coarse_min) = (grid[best], values[best]);

    let mut tau_star = coarse_tau;
    let mut value = coarse_min;
    if scan.refine_iterations > 0 {
        let lo = grid[best.saturating_sub(1)];
        let hi = grid[(best + 1).min(grid.len() - 1)];
        let (t, v) = golden_section(&mut eval, lo, hi, scan.refine_iterations)?;
        if v < value - TAU_TIE_TOL {
            tau_star = t;
            value = v;
        }
    }

    let limit = catalytic_protocol(rho_ab, 0.0, system, dynamics)?;
    let at_limit = limit.delta_e_a < value - TAU_TIE_TOL;
    let protocol = if at_limit {
        limit
    } else {
        catalytic_protocol(rho_ab, tau_star, system, dynamics)?
    };
    Ok(TauOptimum {
        tau_star: protocol.tau,
        delta_e_cat: protocol.delta_e_a,
        coarse_min,
        coarse_tau,
        at_limit,
        protocol,
    })
}

/// Parameters of a `(λ, θ)` sweep over `ϱ(λ, θ)` with a Tavis-Cummings catalyst.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub lambdas: Vec<f64>,
    pub thetas: Vec<f64>,
    /// Times in units of `1/g`.
    pub tau: TauScan,
    pub beta_a: f64,
    pub beta_b: f64,
    pub epsilon: f64,
    pub g: f64,
    pub n_fock: usize,
    pub with_bound: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let grid = linspace01(25);
        SweepConfig {
            lambdas: grid.clone(),
            thetas: grid,
            tau: TauScan::uniform(20.0, 400),
            beta_a: 2.0,
            beta_b: 0.5,
            epsilon: 1.0,
            g: 0.1,
            n_fock: 3,
            with_bound: true,
        }
    }
}

/// `n` evenly spaced points on `[0, 1]`.
pub fn linspace01(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

impl SweepConfig {
    pub fn with_grid(n: usize) -> Self {
        SweepConfig {
            lambdas: linspace01(n),
            thetas: linspace01(n),
            ..SweepConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambdas.is_empty() || self.thetas.is_empty() {
            return Err(Error::InvalidParameter(
                "λ and θ grids must be non-empty".into(),
            ));
        }
        self.tau.validate()?;
        for &x in self.lambdas.iter().chain(&self.thetas) {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidParameter(format!(
                    "grid value {x} outside [0, 1]"
                )));
            }
        }
        self.params(0.0, 0.0).validate()?;
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coupling g = {} must be finite and >= 0",
                self.g
            )));
        }
        Ok(())
    }

    pub fn params(&self, lambda: f64, theta: f64) -> CorrelatedStateParams {
        CorrelatedStateParams {
            lambda,
            theta,
            beta_a: self.beta_a,
            beta_b: self.beta_b,
            epsilon: self.epsilon,
        }
    }

    /// Grid points with `λ + θ <= 1`, λ-major.
    pub fn admissible_points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for &l in &self.lambdas {
            for &t in &self.thetas {
                if l + t <= 1.0 + MIXTURE_SLACK {
                    out.push((l, t));
                }
            }
        }
        out
    }

    pub fn dynamics(&self) -> Result<TavisCummingsDynamics> {
        TavisCummingsDynamics::new(self.epsilon, self.g, self.n_fock)
    }
}

/// One grid point of a sweep. Numerical failures leave `NaN` values and a message.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub lambda: f64,
    pub theta: f64,
    pub de_star: f64,
    pub de_cat: f64,
    pub tau_star: f64,
    /// `ΔE★_A - ΔE_A^c`.
    pub advantage: f64,
    pub catalyst_residual: f64,
    pub energy_residual: f64,
    pub bound: f64,
    pub bound_entropy_residual: f64,
    pub bound_energy_residual: f64,
    pub de_arbitrary: f64,
    /// Slack of the Clausius-type inequality for `ϱ -> σ'` at the effective
    /// temperatures of the initial marginals.
    pub clausius_slack: f64,
    pub error: Option<String>,
}

impl SweepRecord {
    fn failed(lambda: f64, theta: f64, err: &Error) -> Self {
        let nan = f64::NAN;
        SweepRecord {
            lambda,
            theta,
            de_star: nan,
            de_cat: nan,
            tau_star: nan,
            advantage: nan,
            catalyst_residual: nan,
            energy_residual: nan,
            bound: nan,
            bound_entropy_residual: nan,
            bound_energy_residual: nan,
            de_arbitrary: nan,
            clausius_slack: nan,
            error: Some(err.to_string()),
        }
    }
}

fn sweep_point(
    config: &SweepConfig,
    dynamics: &TavisCummingsDynamics,
    lambda: f64,
    theta: f64,
) -> Result<SweepRecord> {
    let params = config.params(lambda, theta.min(1.0 - lambda).max(0.0));
    let rho = rho_lambda_theta(&params)?;
    let system = params.system();
    let blocks = system.block_structure(DEFAULT_DEGENERACY_TOL);
    let de_star = optimal_energy_preserving(&rho, &system, &blocks)?.delta_e_a;
    let de_arbitrary = optimal_arbitrary_unitary(&rho, &system)?.delta_e_a;
    let opt = optimize_tau(&rho, &system, dynamics, &config.tau)?;
    let (beta_a, beta_b) = effective_temperatures(&params)?;
    let ledger = ExchangeLedger::compute(&rho, &opt.protocol.sigma_ab, &system)?;
    let clausius_slack = clausius_bound_check(&ledger, beta_a, beta_b).slack;
    let (bound, bound_entropy_residual, bound_energy_residual) = if config.with_bound {
        let b = catalytic_bound(&rho, &system)?;
        (b.value, b.entropy_residual, b.energy_residual)
    } else {
        (f64::NAN, f64::NAN, f64::NAN)
    };
    Ok(SweepRecord {
        lambda,
        theta,
        de_star,
        de_cat: opt.delta_e_cat,
        tau_star: opt.tau_star,
        advantage: de_star - opt.delta_e_cat,
        catalyst_residual: opt.protocol.catalyst_residual,
        energy_residual: opt.protocol.energy_residual,
        bound,
        bound_entropy_residual,
        bound_energy_residual,
        de_arbitrary,
        clausius_slack,
        error: None,
    })
}

/// Evaluates every admissible grid point on the current rayon pool; the
/// output order is the order of [`SweepConfig::admissible_points`].
pub fn sweep_lambda_theta(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let dynamics = config.dynamics()?;
    Ok(config
        .admissible_points()
        .into_par_iter()
        .map(|(l, t)| {
            sweep_point(config, &dynamics, l, t).unwrap_or_else(|e| SweepRecord::failed(l, t, &e))
        })
        .collect())
}

/// Two resonant qubits in `(|00><00| + |11><11|)/2` and a qubit catalyst
/// coupled by a fixed energy-preserving permutation of `A ⊗ B ⊗ C`.
#[derive(Debug, Clone)]
pub struct ToyScenario {
    pub system: CompositeSystem,
    pub rho_ab: DensityMatrix,
    pub dynamics: FixedUnitaryDynamics,
}

/// Builds the three-qubit toy example with gap `epsilon`.
pub fn toy_scenario(epsilon: f64) -> Result<ToyScenario> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gap ε = {epsilon} must be positive"
        )));
    }
    let system = CompositeSystem::qubits(&[epsilon, epsilon])?;
    let rho_ab = DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5])?;
    // |abc> with index 4a + 2b + c: 001->010->001, 011->101->110->011
    let perm = [0, 2, 1, 5, 4, 6, 3, 7];
    let unitary = UnitaryOperator::permutation(&perm)?;
    let h = qubit_hamiltonian(epsilon);
    let h0 = CompositeSystem::new(vec![h.clone(), h.clone(), h])?
        .h0()
        .clone();
    Ok(ToyScenario {
        system,
        rho_ab,
        dynamics: FixedUnitaryDynamics {
            unitary,
            h0,
            catalyst_dim: 2,
        },
    })
}
