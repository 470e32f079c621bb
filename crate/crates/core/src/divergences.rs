//! Distinguishability measures evaluated directly from covariance matrices.
//!
//! Relative entropy and its variance go through Gibbs-form quadratic
//! Hamiltonians obtained from the Williamson decomposition: with
//! S V Sᵀ = diag(ν,ν) and per-mode inverse temperature
//! β = ln((ν+1/2)/(ν−1/2)), the Hamiltonian matrix is G = Sᵀ(diag β ⊕ diag β)S
//! and everything reduces to traces of small products.
//!
//! Fidelity uses the auxiliary-spectrum form
//!     F = Π_i 2(w_i + √(w_i² − 1/4)) / √det(V₁+V₂),
//! where ±i·w_i is the spectrum of
//!     M = 1/4·Σ^{-1/2} Ω Σ^{-1/2} + (Σ^{-1/2}V₂) Ω (V₁Σ^{-1/2}),  Σ = V₁+V₂.
//! This grouping never forms V₂ΩV₁ directly: every factor is O(‖V‖^{1/2}),
//! so 1 − F stays accurate for nearly identical states even when one mode
//! occupancy is ~10⁴ — which is exactly the regime the finite-difference QFI
//! probes. Correctness is anchored on the thermal closed forms, the Fock
//! oracle, and the pure-state identity F = det(V₁+V₂)^{−1/2}.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianState};
use crate::linalg;
use crate::tol;

/// Entropy of one thermal mode of mean x: g(x) = (x+1)ln(x+1) − x ln x,
/// evaluated as x·ln1p(1/x) + ln1p(x) (stable for x → 0 and x ≫ 1).
pub fn entropy_g(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (1.0 / x).ln_1p() + x.ln_1p()
    }
}

/// Von Neumann entropy in nats: Σ_i g(ν_i − 1/2).
pub fn entropy(state: &GaussianState) -> Result<f64> {
    let nus = state.symplectic_eigenvalues()?;
    Ok(nus.iter().map(|&nu| entropy_g(nu - 0.5)).sum())
}

/// Gibbs Hamiltonian matrix G = Sᵀ(diag β ⊕ diag β)S of a state, plus its ν.
///
/// Pure modes (ν − 1/2 < NU_PURE) have β = +∞. When `pure_beta_zero` they are
/// assigned β = 0 instead — exact for first-argument use, where such modes
/// carry no weight in any trace against the state's own support. Otherwise
/// they are an error (the relative entropy against a rank-deficient second
/// argument diverges).
fn gibbs_matrix(cov: &Array2<f64>, pure_beta_zero: bool) -> Result<(Array2<f64>, Vec<f64>)> {
    let w = gaussian::williamson(cov)?;
    let n = w.nus.len();
    let mut beta = Vec::with_capacity(n);
    for &nu in &w.nus {
        let x = nu - 0.5;
        if x < tol::NU_PURE {
            if pure_beta_zero {
                beta.push(0.0);
            } else {
                return Err(Error::SecondArgumentPure { min_nu: nu });
            }
        } else {
            beta.push((1.0 / x).ln_1p());
        }
    }
    let smat = w.s.mat();
    let mut scaled = smat.clone();
    for j in 0..n {
        scaled.row_mut(j).mapv_inplace(|v| v * beta[j]);
        scaled.row_mut(n + j).mapv_inplace(|v| v * beta[j]);
    }
    let g = linalg::symmetrize(&smat.t().dot(&scaled));
    Ok((g, w.nus))
}

fn check_same_modes(s1: &GaussianState, s2: &GaussianState) -> Result<()> {
    if s1.n_modes() != s2.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: s1.n_modes(),
            got: s2.n_modes(),
        });
    }
    Ok(())
}

/// Tr[A·B] for symmetric A, B.
fn trace_sym_product(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y).sum()
}

/// Tr[A²] for a general square A.
fn trace_square(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a[[i, j]] * a[[j, i]];
        }
    }
    acc
}

/// Quantum relative entropy D(ρ₁‖ρ₂) in nats:
///   D = −Σ g(ν₁ − 1/2) + 1/2·Tr[G₂V₁] + 1/2·Σ ln(ν₂² − 1/4).
/// The last two terms are −Tr[ρ₁ ln ρ₂] with ln ρ₂ expressed through G₂ and
/// its normalization.
pub fn relative_entropy(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    check_same_modes(s1, s2)?;
    let (g2, nus2) = gibbs_matrix(s2.cov(), false)?;
    let nus1 = s1.symplectic_eigenvalues()?;
    let neg_entropy: f64 = nus1.iter().map(|&nu| entropy_g(nu - 0.5)).sum();
    let cross = 0.5 * trace_sym_product(&g2, s1.cov());
    let log_norm: f64 = nus2
        .iter()
        .map(|&nu| (nu - 0.5).ln() + (nu + 0.5).ln())
        .sum::<f64>()
        * 0.5;
    Ok((cross + log_norm - neg_entropy).max(0.0))
}

/// Quantum relative entropy variance V(ρ₁‖ρ₂) in nats²:
///   V = 1/2·Tr[(V₁M)²] + 1/8·Tr[(ΩM)²],   M = G₁ − G₂,
/// with pure modes of ρ₁ entering at β = 0 (their fluctuation terms vanish
/// on the support of ρ₁, so the substitution is exact, not an approximation).
pub fn relative_entropy_variance(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    check_same_modes(s1, s2)?;
    let (g1, _) = gibbs_matrix(s1.cov(), true)?;
    let (g2, _) = gibbs_matrix(s2.cov(), false)?;
    let m = &g1 - &g2;
    let om = gaussian::symplectic_form(s1.n_modes());
    let t_state = trace_square(&s1.cov().dot(&m));
    let t_comm = trace_square(&om.dot(&m));
    Ok((0.5 * t_state + 0.125 * t_comm).max(0.0))
}

/// Uhlmann fidelity F(ρ₁, ρ₂) = ‖√ρ₁√ρ₂‖₁² between zero-mean Gaussian states
/// of 1 or 2 modes. See the module docs for the evaluation route. Pure
/// auxiliary directions (w_i → 1/2) take √(w² − 1/4) → 0 via clamping, which
/// reproduces the pure-state determinant identity exactly.
pub fn fidelity(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    check_same_modes(s1, s2)?;
    let n = s1.n_modes();
    if n > 2 {
        return Err(Error::UnsupportedModeCount(n));
    }
    let sigma = s1.cov() + s2.cov();
    let (w, q) = linalg::eigh(&sigma)?;
    if w[0] <= 0.0 {
        return Err(Error::NonPositiveDefinite(w[0]));
    }
    let det_sigma: f64 = w.iter().product();
    let qd = &q * &w.mapv(|x| x.powf(-0.5));
    let sm12 = linalg::symmetrize(&qd.dot(&q.t()));
    let om = gaussian::symplectic_form(n);
    let quarter = sm12.dot(&om).dot(&sm12) * 0.25;
    let product = sm12.dot(s2.cov()).dot(&om).dot(&s1.cov().dot(&sm12));
    let m = quarter + product;
    let mut ims: Vec<f64> = linalg::eigvals(&m)?.iter().map(|z| z.im).collect();
    ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut fid = 1.0 / det_sigma.sqrt();
    for &wi in &ims[n..] {
        fid *= 2.0 * (wi + (wi * wi - 0.25).max(0.0).sqrt());
    }
    Ok(fid.clamp(0.0, 1.0))
}

/// Both finite-difference QFI estimators at one step, plus the Richardson
/// extrapolation over steps (δ, 2δ).
#[derive(Debug, Clone, Copy)]
pub struct QfiEstimate {
    /// 8[1 − √F(σ_{x−δ/2}, σ_{x+δ/2})]/δ².
    pub from_sqrt: f64,
    /// −4 ln F(σ_{x−δ/2}, σ_{x+δ/2})/δ².
    pub from_log: f64,
    /// (4·I(δ) − I(2δ))/3 on the sqrt form; cancels the O(δ²) truncation.
    pub richardson: f64,
}

/// Default central-difference step for a parameter value x.
pub fn default_qfi_step(x: f64) -> f64 {
    (1e-3 * x).max(1e-4)
}

/// Finite-difference quantum Fisher information of a one-parameter state
/// family at x. Central differences: both estimators compare the states at
/// x ± δ/2 (and x ± δ for the Richardson step). The two forms agree as δ→0;
/// a >5% split, or fidelity ≤ 1/2, rejects the step as too large.
pub fn qfi_finite_difference<F>(family: F, x: f64, delta: f64) -> Result<QfiEstimate>
where
    F: Fn(f64) -> Result<GaussianState>,
{
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {delta}")));
    }
    let fid_at = |step: f64| -> Result<f64> {
        let lo = family(x - step / 2.0)?;
        let hi = family(x + step / 2.0)?;
        fidelity(&lo, &hi)
    };
    let f1 = fid_at(delta)?;
    let from_sqrt = 8.0 * (1.0 - f1.sqrt()) / (delta * delta);
    let from_log = -4.0 * f1.ln() / (delta * delta);
    if f1 <= 0.5 {
        return Err(Error::StepTooLarge {
            i_sqrt: from_sqrt,
            i_log: from_log,
        });
    }
    if from_sqrt > 0.0 && ((from_sqrt - from_log) / from_sqrt).abs() > tol::QFI_ESTIMATOR_SPLIT {
        return Err(Error::StepTooLarge {
            i_sqrt: from_sqrt,
            i_log: from_log,
        });
    }
    let f2 = fid_at(2.0 * delta)?;
    let coarse = 8.0 * (1.0 - f2.sqrt()) / (4.0 * delta * delta);
    Ok(QfiEstimate {
        from_sqrt,
        from_log,
        richardson: (4.0 * from_sqrt - coarse) / 3.0,
    })
}
