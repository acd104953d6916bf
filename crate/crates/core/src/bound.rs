//! Lower bound on catalytic energy flow: minimise `E(σ_A) - E(ϱ_A)` over
//! states `σ_AB` with `S(σ) >= S(ϱ)` and `E(σ) = E(ϱ)`.
//!
//! `H_A ⊗ 1` and `H_AB` commute, so dephasing in their joint eigenbasis only
//! raises entropy and the problem reduces to probability vectors `p` over the
//! product eigenbasis. The optimum lies on the family
//! `p ∝ exp(-(α a + λ h))`, where `a` and `h` are the A and total energies of
//! the basis states, unless the entropy constraint is inactive.

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::entropic::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::model::CompositeSystem;
use crate::operator::{ComplexMatrix, DensityMatrix};
use crate::scalar::{bisect, bracket};

/// Feasibility tolerance reported with every bound.
pub const BOUND_FEASIBILITY_TOL: f64 = 1e-7;
const NEWTON_MAX_ITER: usize = 100;
const ENTROPY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    /// `E(σ★_A) - E(ϱ_A)`.
    pub value: f64,
    #[serde(skip)]
    pub sigma: DensityMatrix,
    /// `(α, λ)` of the optimal exponential-family state; `None` when the
    /// entropy constraint is inactive.
    pub multipliers: Option<(f64, f64)>,
    /// `S(σ★) - S(ϱ)`.
    pub entropy_residual: f64,
    /// `E(σ★) - E(ϱ)`.
    pub energy_residual: f64,
    pub entropy_binding: bool,
    /// False when the solver stopped without meeting both constraints to
    /// working precision; the value is then the best point found.
    pub converged: bool,
}

/// The diagonal problem in the product eigenbasis.
struct Problem {
    a: Vec<f64>,
    h: Vec<f64>,
    s0: f64,
    e0: f64,
    e_a0: f64,
    basis: ComplexMatrix,
    scale: f64,
}

struct Moments {
    p: Vec<f64>,
    mean_a: f64,
    mean_h: f64,
    entropy: f64,
    cov_aa: f64,
    cov_ah: f64,
    cov_hh: f64,
}

fn product_basis(system: &CompositeSystem) -> Result<(Vec<f64>, Vec<f64>, ComplexMatrix)> {
    system.check_bipartite()?;
    let sa = system.local_hamiltonian(0).eig();
    let sb = system.local_hamiltonian(1).eig();
    let (da, db) = (sa.values.len(), sb.values.len());
    let mut a = Vec::with_capacity(da * db);
    let mut h = Vec::with_capacity(da * db);
    let mut basis = ComplexMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            let k = i * db + j;
            a.push(sa.values[i]);
            h.push(sa.values[i] + sb.values[j]);
            basis.set_column(k, &sa.vectors.column(i).kronecker(&sb.vectors.column(j)));
        }
    }
    Ok((a, h, basis))
}

/// Normalised weights `exp(-x_k) / Σ exp(-x)` restricted to `support`.
fn softmin(x: &[f64], support: &[usize]) -> Vec<f64> {
    let lo = support.iter().map(|&k| x[k]).fold(f64::INFINITY, f64::min);
    let mut p = vec![0.0; x.len()];
    let mut z = 0.0;
    for &k in support {
        p[k] = (-(x[k] - lo)).exp();
        z += p[k];
    }
    p.iter_mut().for_each(|v| *v /= z);
    p
}

fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.ln()).sum()
}

impl Problem {
    fn new(rho: &DensityMatrix, system: &CompositeSystem) -> Result<Self> {
        system.check_state(rho)?;
        let (a, h, basis) = product_basis(system)?;
        let scale = h.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        Ok(Problem {
            s0: von_neumann_entropy(rho),
            e0: system.total_energy(rho)?,
            e_a0: system.local_energy(rho, 0)?,
            a,
            h,
            basis,
            scale,
        })
    }

    fn all(&self) -> Vec<usize> {
        (0..self.a.len()).collect()
    }

    fn moments(&self, p: Vec<f64>) -> Moments {
        let mean = |f: &[f64]| p.iter().zip(f).map(|(p, f)| p * f).sum::<f64>();
        let mean_a = mean(&self.a);
        let mean_h = mean(&self.h);
        let cov = |f: &[f64], mf: f64, g: &[f64], mg: f64| {
            p.iter()
                .zip(f.iter().zip(g))
                .map(|(p, (f, g))| p * (f - mf) * (g - mg))
                .sum::<f64>()
        };
        Moments {
            mean_a,
            mean_h,
            entropy: entropy(&p),
            cov_aa: cov(&self.a, mean_a, &self.a, mean_a),
            cov_ah: cov(&self.a, mean_a, &self.h, mean_h),
            cov_hh: cov(&self.h, mean_h, &self.h, mean_h),
            p,
        }
    }

    fn family(&self, alpha: f64, lambda: f64, support: &[usize]) -> Moments {
        let x: Vec<f64> = self
            .a
            .iter()
            .zip(&self.h)
            .map(|(a, h)| alpha * a + lambda * h)
            .collect();
        self.moments(softmin(&x, support))
    }

    fn energy_tol(&self) -> f64 {
        1e-12 * self.scale
    }

    /// `λ` with `⟨h⟩ = E_0` at fixed `α`, over `support`; `None` if E_0 is out of reach.
    fn solve_lambda(&self, alpha: f64, support: &[usize]) -> Option<f64> {
        let f = |l: f64| self.family(alpha, l, support).mean_h - self.e0;
        let (lo, hi) = bracket(f, -1.0, 1.0, 80)?;
        Some(bisect(f, lo, hi, 2000))
    }

    fn state(&self, p: &[f64]) -> DensityMatrix {
        let d = DVector::from_iterator(p.len(), p.iter().map(|&v| C64::new(v, 0.0)));
        DensityMatrix::from_state_unchecked(
            &self.basis * ComplexMatrix::from_diagonal(&d) * self.basis.adjoint(),
        )
    }

    fn result(
        &self,
        m: &Moments,
        multipliers: Option<(f64, f64)>,
        binding: bool,
        converged: bool,
    ) -> BoundResult {
        BoundResult {
            value: m.mean_a - self.e_a0,
            sigma: self.state(&m.p),
            multipliers,
            entropy_residual: m.entropy - self.s0,
            energy_residual: m.mean_h - self.e0,
            entropy_binding: binding,
            converged,
        }
    }

    /// Support of the optimal face of `min a.p` subject to `h.p = E_0`.
    fn linear_face(&self) -> Vec<usize> {
        let n = self.a.len();
        let tol = self.energy_tol();
        let mut candidates: Vec<(f64, Vec<usize>)> = Vec::new();
        for k in 0..n {
            if (self.h[k] - self.e0).abs() <= tol {
                candidates.push((self.a[k], vec![k]));
            }
        }
        for k in 0..n {
            for l in 0..n {
                if self.h[k] < self.e0 - tol && self.h[l] > self.e0 + tol {
                    let w = (self.h[l] - self.e0) / (self.h[l] - self.h[k]);
                    candidates.push((w * self.a[k] + (1.0 - w) * self.a[l], vec![k, l]));
                }
            }
        }
        let best = candidates.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let a_tol = 1e-12 * self.a.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut face: Vec<usize> = candidates
            .into_iter()
            .filter(|c| c.0 <= best + a_tol)
            .flat_map(|c| c.1)
            .collect();
        face.sort_unstable();
        face.dedup();
        face
    }

    /// Maximum-entropy distribution on the optimal linear face.
    fn face_optimum(&self) -> Moments {
        let face = self.linear_face();
        let tol = self.energy_tol();
        if face.iter().all(|&k| (self.h[k] - self.e0).abs() <= tol) {
            return self.family(0.0, 0.0, &face);
        }
        // a is affine in h on the face, so fixing ⟨h⟩ also fixes ⟨a⟩
        let t = self.solve_lambda(0.0, &face).unwrap_or(0.0);
        self.family(0.0, t, &face)
    }

    fn residual(&self, m: &Moments) -> (f64, f64) {
        ((m.mean_h - self.e0) / self.scale, m.entropy - self.s0)
    }

    fn converged(&self, m: &Moments) -> bool {
        (m.mean_h - self.e0).abs() <= self.energy_tol()
            && (m.entropy - self.s0).abs() <= ENTROPY_TOL.max(1e-12 * self.s0)
    }

    /// Damped Newton on `(⟨h⟩ - E_0, S - S_0) = 0` with `α >= 0`.
    fn newton(&self, start: (f64, f64)) -> Option<(f64, f64)> {
        let all = self.all();
        // the Jacobian is singular at α = 0, where both rows are proportional
        let alpha_floor = 0.1 / self.a.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let (mut alpha, mut lambda) = (start.0.max(alpha_floor), start.1);
        let mut m = self.family(alpha, lambda, &all);
        for _ in 0..NEWTON_MAX_ITER {
            if self.converged(&m) {
                return Some((alpha, lambda));
            }
            let (f1, f2) = self.residual(&m);
            let j11 = -m.cov_ah / self.scale;
            let j12 = -m.cov_hh / self.scale;
            let j21 = -alpha * m.cov_aa - lambda * m.cov_ah;
            let j22 = -alpha * m.cov_ah - lambda * m.cov_hh;
            let det = j11 * j22 - j12 * j21;
            if !det.is_finite() || det.abs() < 1e-300 {
                return None;
            }
            let da = -(j22 * f1 - j12 * f2) / det;
            let dl = -(-j21 * f1 + j11 * f2) / det;
            let norm = f1.hypot(f2);
            let mut step = 1.0;
            let mut accepted = false;
            while step > 1e-12 {
                let (na, nl) = ((alpha + step * da).max(0.0), lambda + step * dl);
                let trial = self.family(na, nl, &all);
                let (g1, g2) = self.residual(&trial);
                if g1.hypot(g2) < norm {
                    alpha = na;
                    lambda = nl;
                    m = trial;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                return None;
            }
        }
        self.converged(&m).then_some((alpha, lambda))
    }

    /// Monotone nested bisection: `λ(α)` fixes the energy, then `α` is bisected
    /// on a log scale until the entropy matches.
    fn nested_bisection(&self) -> Option<(f64, f64)> {
        let all = self.all();
        let entropy_at = |alpha: f64| {
            let l = self.solve_lambda(alpha, &all)?;
            Some((l, self.family(alpha, l, &all).entropy - self.s0))
        };
        let (_, s_zero) = entropy_at(0.0)?;
        if s_zero <= 0.0 {
            return None;
        }
        let mut hi = 1.0;
        while entropy_at(hi)?.1 > 0.0 {
            hi *= 2.0;
            if hi > 1e15 {
                return None;
            }
        }
        let mut lo = hi / 2.0;
        while lo > 1e-15 && entropy_at(lo)?.1 <= 0.0 {
            lo /= 2.0;
        }
        let (mut llo, mut lhi) = (lo.ln(), hi.ln());
        for _ in 0..200 {
            let mid = 0.5 * (llo + lhi);
            if mid == llo || mid == lhi {
                break;
            }
            if entropy_at(mid.exp())?.1 > 0.0 {
                llo = mid;
            } else {
                lhi = mid;
            }
        }
        let alpha = llo.exp();
        Some((alpha, entropy_at(alpha)?.0))
    }

    /// Entropy-constrained optimum when E_0 sits at an edge of the spectrum of `h`.
    fn edge_level(&self) -> Option<Vec<usize>> {
        let tol = self.energy_tol();
        let hmin = self.h.iter().copied().fold(f64::INFINITY, f64::min);
        let hmax = self.h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let level = |e: f64| {
            (0..self.h.len())
                .filter(|&k| (self.h[k] - e).abs() <= tol)
                .collect::<Vec<_>>()
        };
        if (self.e0 - hmin).abs() <= tol {
            Some(level(hmin))
        } else if (self.e0 - hmax).abs() <= tol {
            Some(level(hmax))
        } else {
            None
        }
    }

    fn solve_on_level(&self, level: &[usize]) -> BoundResult {
        let f = |alpha: f64| self.family(alpha, 0.0, level).entropy - self.s0;
        let mut hi = 1.0;
        while f(hi) > 0.0 && hi < 1e15 {
            hi *= 2.0;
        }
        let alpha = bisect(f, 0.0, hi, 2000);
        let m = self.family(alpha, 0.0, level);
        let converged = m.entropy >= self.s0 - 1e-9;
        self.result(&m, Some((alpha, 0.0)), true, converged)
    }

    /// `λ` at `α = 0` matching the energy, used as the default starting point.
    fn effective_beta(&self) -> f64 {
        self.solve_lambda(0.0, &self.all()).unwrap_or(0.0)
    }

    fn solve(&self, start: Option<(f64, f64)>) -> BoundResult {
        let face = self.face_optimum();
        if face.entropy >= self.s0 - ENTROPY_TOL {
            return self.result(&face, None, false, true);
        }
        if let Some(level) = self.edge_level() {
            return self.solve_on_level(&level);
        }
        let all = self.all();
        // at maximal entropy for its energy the Gibbs point is the only feasible state
        let beta = self.effective_beta();
        let gibbs = self.family(0.0, beta, &all);
        if gibbs.entropy - self.s0 <= ENTROPY_TOL {
            return self.result(&gibbs, Some((0.0, beta)), true, true);
        }
        let start = start.unwrap_or((0.0, beta));
        if let Some((a, l)) = self.newton(start).or_else(|| self.nested_bisection()) {
            let m = self.family(a, l, &all);
            let ok = (m.mean_h - self.e0).abs() <= BOUND_FEASIBILITY_TOL
                && m.entropy >= self.s0 - BOUND_FEASIBILITY_TOL;
            return self.result(&m, Some((a, l)), true, ok);
        }
        let l = self.effective_beta();
        self.result(&self.family(0.0, l, &all), Some((0.0, l)), true, false)
    }
}

/// `σ ∝ exp(-(α H_A ⊗ 1 + λ H_AB))` on a bipartite system.
pub fn exponential_family_state(
    alpha: f64,
    lambda: f64,
    system: &CompositeSystem,
) -> Result<DensityMatrix> {
    if !alpha.is_finite() || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "multipliers must be finite, got ({alpha}, {lambda})"
        )));
    }
    let (a, h, basis) = product_basis(system)?;
    let x: Vec<f64> = a
        .iter()
        .zip(&h)
        .map(|(a, h)| alpha * a + lambda * h)
        .collect();
    let p = softmin(&x, &(0..x.len()).collect::<Vec<_>>());
    let d = DVector::from_iterator(p.len(), p.iter().map(|&v| C64::new(v, 0.0)));
    Ok(DensityMatrix::from_state_unchecked(
        &basis * ComplexMatrix::from_diagonal(&d) * basis.adjoint(),
    ))
}

/// Minimal `ΔE_A` over states with no less entropy and the same total energy as `rho`.
pub fn catalytic_bound(rho: &DensityMatrix, system: &CompositeSystem) -> Result<BoundResult> {
    Ok(Problem::new(rho, system)?.solve(None))
}

/// As [`catalytic_bound`], with the Newton iteration started from `initial = (α, λ)`.
pub fn catalytic_bound_from(
    rho: &DensityMatrix,
    system: &CompositeSystem,
    initial: (f64, f64),
) -> Result<BoundResult> {
    Ok(Problem::new(rho, system)?.solve(Some(initial)))
}

/// One grid point where the bound exceeds the catalytic optimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundViolation {
    pub lambda: f64,
    pub theta: f64,
    pub bound: f64,
    pub de_cat: f64,
    pub de_star: f64,
    pub bound_entropy_residual: f64,
    pub bound_energy_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundOrderingReport {
    pub points: usize,
    /// `min (ΔE_A^c - bound)` over the grid.
    pub worst_slack: f64,
    pub violations: Vec<BoundViolation>,
    pub pass: bool,
}

/// Checks `bound <= ΔE_A^c + tol` on every sweep record that carries a bound.
pub fn verify_bound_ordering(
    records: &[crate::catalysis::SweepRecord],
    tol: f64,
) -> BoundOrderingReport {
    let mut worst = f64::INFINITY;
    let mut violations = Vec::new();
    let mut points = 0;
    for r in records
        .iter()
        .filter(|r| r.error.is_none() && r.bound.is_finite())
    {
        points += 1;
        let slack = r.de_cat - r.bound;
        worst = worst.min(slack);
        if slack < -tol {
            violations.push(BoundViolation {
                lambda: r.lambda,
                theta: r.theta,
                bound: r.bound,
                de_cat: r.de_cat,
                de_star: r.de_star,
                bound_entropy_residual: r.bound_entropy_residual,
                bound_energy_residual: r.bound_energy_residual,
            });
        }
    }
    BoundOrderingReport {
        points,
        worst_slack: worst,
        pass: violations.is_empty() && points > 0,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{optimal_arbitrary_unitary, optimal_energy_preserving};
    use crate::model::{
        bell_states, gibbs_state, rho_lambda_theta, CorrelatedStateParams, DEFAULT_DEGENERACY_TOL,
    };
    use crate::operator::max_abs;
    use crate::random::{random_density_matrix, random_pure_state, seeded};

    fn qubits() -> CompositeSystem {
        CompositeSystem::qubits(&[1.0, 1.0]).unwrap()
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
    fn family_special_points() {
        let sys = qubits();
        let s = exponential_family_state(0.0, 0.0, &sys).unwrap();
        assert!(max_abs(&(s.matrix() - DensityMatrix::maximally_mixed(4).matrix())) < 1e-15);
        let g = gibbs_state(1.3, sys.h0()).unwrap();
        assert!(
            max_abs(&(exponential_family_state(0.0, 1.3, &sys).unwrap().matrix() - g.matrix()))
                < 1e-14
        );
        assert!(exponential_family_state(f64::NAN, 0.0, &sys).is_err());
        // huge multipliers do not overflow
        let cold = exponential_family_state(1e5, 1e5, &sys).unwrap();
        assert!((cold.populations()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn excited_a_population_decreases_with_alpha() {
        let sys = qubits();
        for lambda in [-1.0, 0.0, 0.7] {
            let mut last = f64::INFINITY;
            for k in 0..40 {
                let s = exponential_family_state(k as f64 * 0.25, lambda, &sys).unwrap();
                let pa = sys.marginal(&s, 0).unwrap().populations()[1];
                assert!(pa < last);
                last = pa;
            }
        }
    }

    #[test]
    fn maximally_mixed_bound_is_zero() {
        let b = catalytic_bound(&DensityMatrix::maximally_mixed(4), &qubits()).unwrap();
        assert!(b.value.abs() < 1e-9);
        assert!(b.converged);
    }

    /// Brute-force minimum of `a.p` over a fine grid of the feasible polytope of
    /// diagonal states with `h.p = E_0` (entropy constraint vacuous).
    fn polytope_oracle(rho: &DensityMatrix, sys: &CompositeSystem) -> f64 {
        let e0 = sys.total_energy(rho).unwrap();
        let ea = sys.local_energy(rho, 0).unwrap();
        // equal-gap qubits: levels |00>, |01>, |10>, |11> with h = 0, 1, 1, 2 and a = 0, 0, 1, 1
        let n = 400;
        let mut best = f64::INFINITY;
        for i in 0..=n {
            for j in 0..=n - i {
                let p01 = i as f64 / n as f64;
                let p10 = j as f64 / n as f64;
                // p00 + p11 = 1 - p01 - p10 and p01 + p10 + 2 p11 = e0
                let p11 = 0.5 * (e0 - p01 - p10);
                let p00 = 1.0 - p01 - p10 - p11;
                if p11 < -1e-12 || p00 < -1e-12 {
                    continue;
                }
                best = best.min(p10 + p11);
            }
        }
        best - ea
    }

    #[test]
    fn pure_state_bound_is_linear_minimum() {
        let sys = qubits();
        let mut rng = seeded(60);
        for _ in 0..10 {
            let rho = random_pure_state(4, &mut rng);
            let b = catalytic_bound(&rho, &sys).unwrap();
            assert!(!b.entropy_binding);
            assert!(b.multipliers.is_none());
            assert!((b.value - polytope_oracle(&rho, &sys)).abs() < 2e-3);
            assert!(b.value <= polytope_oracle(&rho, &sys) + 1e-12);
            assert!(b.energy_residual.abs() < 1e-7 && b.entropy_residual >= -1e-7);
        }
    }

    #[test]
    fn bound_is_feasible_and_below_optimal_flow() {
        let sys = qubits();
        let blocks = sys.block_structure(DEFAULT_DEGENERACY_TOL);
        let mut rng = seeded(61);
        for _ in 0..40 {
            let rho = random_density_matrix(4, &mut rng);
            let b = catalytic_bound(&rho, &sys).unwrap();
            assert!(b.converged);
            assert!(b.energy_residual.abs() <= 1e-7 && b.entropy_residual >= -1e-7);
            assert!(
                (von_neumann_entropy(&b.sigma) - von_neumann_entropy(&rho) - b.entropy_residual)
                    .abs()
                    < 1e-10
            );
            let star = optimal_energy_preserving(&rho, &sys, &blocks)
                .unwrap()
                .delta_e_a;
            assert!(b.value <= star + 1e-9);
        }
    }

    #[test]
    fn bound_does_not_depend_on_starting_multipliers() {
        let sys = qubits();
        for &(l, t) in &[(0.3, 0.2), (0.75, 0.0), (0.1, 0.6), (0.5, 0.5)] {
            let rho = rho_lambda_theta(&params(l, t)).unwrap();
            let reference = catalytic_bound(&rho, &sys).unwrap();
            for start in [(0.0, 0.0), (3.0, -1.0), (0.5, 4.0), (20.0, 0.1)] {
                let b = catalytic_bound_from(&rho, &sys, start).unwrap();
                assert!(
                    (b.value - reference.value).abs() < 1e-7,
                    "({l}, {t}) from {start:?}"
                );
            }
        }
    }

    #[test]
    fn nested_bisection_agrees_with_newton() {
        let sys = qubits();
        let mut rng = seeded(62);
        for _ in 0..20 {
            let rho = random_density_matrix(4, &mut rng);
            let p = Problem::new(&rho, &sys).unwrap();
            if p.face_optimum().entropy >= p.s0 {
                continue;
            }
            let (a1, l1) = p.newton((0.0, p.effective_beta())).unwrap();
            let (a2, l2) = p.nested_bisection().unwrap();
            let v1 = p.family(a1, l1, &p.all()).mean_a;
            let v2 = p.family(a2, l2, &p.all()).mean_a;
            assert!((v1 - v2).abs() < 1e-8);
        }
    }

    #[test]
    fn bound_can_undercut_the_arbitrary_unitary_optimum() {
        // higher-entropy spectra outside the unitary orbit are feasible
        let sys = qubits();
        let rho = rho_lambda_theta(&params(0.75, 0.0)).unwrap();
        let b = catalytic_bound(&rho, &sys).unwrap();
        let arb = optimal_arbitrary_unitary(&rho, &sys).unwrap().delta_e_a;
        assert!(b.value < arb);
    }

    #[test]
    fn bell_state_bound() {
        let sys = qubits();
        let (phi, psi) = bell_states();
        for s in [phi, psi] {
            let b = catalytic_bound(&s, &sys).unwrap();
            assert!((b.value - polytope_oracle(&s, &sys)).abs() < 1e-9);
        }
    }
}
