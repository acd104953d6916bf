//! Entropies, mutual information and the energy-exchange bookkeeping between
//! two subsystems.

use crate::error::{Error, Result};
use crate::model::{gibbs_state, CompositeSystem};
use crate::operator::{max_abs, DensityMatrix};

/// Eigenvalues below this are treated as zero in entropy formulas.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Weight of `rho` outside the support of `sigma` above which `S(rho||sigma) = +∞`.
pub const NULL_SPACE_MASS_TOL: f64 = 1e-10;
/// Max-norm distance from the Gibbs state at which a marginal still counts as thermal.
pub const THERMAL_TOL: f64 = 1e-8;
/// Slack allowed on the Clausius-type inequality.
pub const CLAUSIUS_SLACK: f64 = 1e-9;

/// `S(rho) = -Tr[rho ln rho]` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&p| p > SUPPORT_TOL)
        .map(|&p| -p * p.ln())
        .sum()
}

/// `S(rho||sigma) = Tr[rho (ln rho - ln sigma)]`, or `+∞` when `rho` has weight
/// on the kernel of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::dims(rho.dim(), sigma.dim()));
    }
    let spec = sigma.eig();
    let mut cross = 0.0;
    let mut null_mass = 0.0;
    for (k, &q) in spec.values.iter().enumerate() {
        let v = spec.vectors.column(k);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if q > SUPPORT_TOL {
            cross += weight * q.ln();
        } else {
            null_mass += weight;
        }
    }
    if null_mass > NULL_SPACE_MASS_TOL {
        return Ok(f64::INFINITY);
    }
    Ok(-von_neumann_entropy(rho) - cross)
}

/// `I(A:B) = S(rho_AB || rho_A ⊗ rho_B)`.
pub fn mutual_information(rho_ab: &DensityMatrix, d_a: usize, d_b: usize) -> Result<f64> {
    if rho_ab.dim() != d_a * d_b {
        return Err(Error::dims(
            format!("{d_a}x{d_b} = {}", d_a * d_b),
            rho_ab.dim(),
        ));
    }
    let ra = rho_ab.partial_trace(&[d_a, d_b], &[0])?;
    let rb = rho_ab.partial_trace(&[d_a, d_b], &[1])?;
    relative_entropy(rho_ab, &ra.tensor(&rb))
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)`.
pub fn mutual_information_from_entropies(
    rho_ab: &DensityMatrix,
    d_a: usize,
    d_b: usize,
) -> Result<f64> {
    if rho_ab.dim() != d_a * d_b {
        return Err(Error::dims(
            format!("{d_a}x{d_b} = {}", d_a * d_b),
            rho_ab.dim(),
        ));
    }
    let ra = rho_ab.partial_trace(&[d_a, d_b], &[0])?;
    let rb = rho_ab.partial_trace(&[d_a, d_b], &[1])?;
    Ok(von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(rho_ab))
}

/// Energy and entropy changes of a bipartite transformation `rho -> sigma`.
///
/// `relent_a` and `relent_b` are `S(sigma_x || rho_x)`, measured against the
/// initial marginals; for thermal initial marginals these are the
/// relative entropies to the Gibbs states.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ExchangeLedger {
    pub delta_e_a: f64,
    pub delta_e_b: f64,
    /// Total change of the non-interacting energy, `ΔE_A + ΔE_B`.
    pub work: f64,
    pub delta_s_a: f64,
    pub delta_s_b: f64,
    pub delta_s_ab: f64,
    pub delta_i: f64,
    pub relent_a: f64,
    pub relent_b: f64,
}

impl ExchangeLedger {
    pub fn compute(
        rho: &DensityMatrix,
        sigma: &DensityMatrix,
        system: &CompositeSystem,
    ) -> Result<Self> {
        system.check_bipartite()?;
        system.check_state(rho)?;
        system.check_state(sigma)?;
        let dims = system.local_dims();
        let (ra, rb) = (system.marginal(rho, 0)?, system.marginal(rho, 1)?);
        let (sa, sb) = (system.marginal(sigma, 0)?, system.marginal(sigma, 1)?);
        let ha = system.local_hamiltonian(0);
        let hb = system.local_hamiltonian(1);
        let delta_e_a = ha.expectation(&sa) - ha.expectation(&ra);
        let delta_e_b = hb.expectation(&sb) - hb.expectation(&rb);
        let delta_s_a = von_neumann_entropy(&sa) - von_neumann_entropy(&ra);
        let delta_s_b = von_neumann_entropy(&sb) - von_neumann_entropy(&rb);
        let delta_s_ab = von_neumann_entropy(sigma) - von_neumann_entropy(rho);
        let delta_i = mutual_information_from_entropies(sigma, dims[0], dims[1])?
            - mutual_information_from_entropies(rho, dims[0], dims[1])?;
        Ok(ExchangeLedger {
            delta_e_a,
            delta_e_b,
            work: delta_e_a + delta_e_b,
            delta_s_a,
            delta_s_b,
            delta_s_ab,
            delta_i,
            relent_a: relative_entropy(&sa, &ra)?,
            relent_b: relative_entropy(&sb, &rb)?,
        })
    }
}

fn thermal_reference(
    rho: &DensityMatrix,
    system: &CompositeSystem,
    k: usize,
    beta: f64,
    label: char,
) -> Result<DensityMatrix> {
    let gamma = gibbs_state(beta, system.local_hamiltonian(k))?;
    let deviation = max_abs(&(system.marginal(rho, k)?.matrix() - gamma.matrix()));
    if deviation > THERMAL_TOL {
        return Err(Error::NotThermal {
            subsystem: label,
            deviation,
        });
    }
    Ok(gamma)
}

/// Absolute residual of the exact exchange identity
/// `(β_A - β_B) ΔE_A = ΔS_A + ΔS_B - β_B W + S(σ_A||γ_A) + S(σ_B||γ_B)`,
/// which holds for any final state `sigma` when the initial marginals are
/// Gibbs states at `beta_a` and `beta_b`.
pub fn exchange_identity_residual(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    system: &CompositeSystem,
    beta_a: f64,
    beta_b: f64,
) -> Result<f64> {
    system.check_bipartite()?;
    let gamma_a = thermal_reference(rho, system, 0, beta_a, 'A')?;
    let gamma_b = thermal_reference(rho, system, 1, beta_b, 'B')?;
    let ledger = ExchangeLedger::compute(rho, sigma, system)?;
    let relent_a = relative_entropy(&system.marginal(sigma, 0)?, &gamma_a)?;
    let relent_b = relative_entropy(&system.marginal(sigma, 1)?, &gamma_b)?;
    let lhs = (beta_a - beta_b) * ledger.delta_e_a;
    let rhs = ledger.delta_s_a + ledger.delta_s_b - beta_b * ledger.work + relent_a + relent_b;
    Ok((lhs - rhs).abs())
}

/// Both sides of `ΔE_A (β_A - β_B) >= ΔI - β_B W`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClausiusCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

pub fn clausius_bound_check(ledger: &ExchangeLedger, beta_a: f64, beta_b: f64) -> ClausiusCheck {
    let lhs = ledger.delta_e_a * (beta_a - beta_b);
    let rhs = ledger.delta_i - beta_b * ledger.work;
    let slack = lhs - rhs;
    ClausiusCheck {
        lhs,
        rhs,
        slack,
        satisfied: slack >= -CLAUSIUS_SLACK,
    }
}
