//! Truncated number-basis reference implementation.
//!
//! Builds the probe output from the unitary dilation acting on
//! (arm, environment) — beamsplitter for the thermal channel, two-mode
//! squeezer for the amplifier — and computes every divergence spectrally.
//! This is the independent oracle for the Gaussian path, valid at small
//! occupancies where the cutoff gates hold; the covariance path owns the
//! high-squeezing regime.
//!
//! Every state constructed here is real in the number basis: thermal
//! mixtures are diagonal, TMSV amplitudes are real, and both dilation
//! generators are real antisymmetric, so the unitaries are real orthogonal.
//! Density matrices are therefore stored as real symmetric matrices. The
//! squeezer phase convention is exp(r(a†e† − ae)); any other phase differs
//! by a local rotation that no reported quantity can see.

use ndarray::{Array1, Array2};
use ndarray_linalg::c64;

use crate::channels::{self, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg;
use crate::report::{DivergenceReport, Method};
use crate::tol;

/// Per-mode cutoff and the admissible truncated mass.
#[derive(Debug, Clone, Copy)]
pub struct TruncationConfig {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl TruncationConfig {
    pub fn new(n_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Config("n_max must be ≥ 1".into()));
        }
        if !(tail_tol > 0.0 && tail_tol <= 1e-3) {
            return Err(Error::Config(format!(
                "tail_tol must lie in (0, 1e-3], got {tail_tol}"
            )));
        }
        Ok(Self { n_max, tail_tol })
    }

    /// Smallest cutoff putting every factor state's tail below `tail_tol`,
    /// then doubled once as safety margin.
    pub fn adaptive(spec: &ChannelSpec, n_s: f64, tail_tol: f64) -> Result<Self> {
        let needed = |mean: f64| -> usize {
            if mean <= 0.0 {
                return 1;
            }
            // geometric tail (mean/(mean+1))^{n_max+1} ≤ tail_tol
            let ratio = (mean / (mean + 1.0)).ln();
            (tail_tol.ln() / ratio).ceil() as usize
        };
        let n_max = needed(n_s).max(needed(spec.n_b())).max(4) * 2;
        Self::new(n_max, tail_tol)
    }
}

/// Truncated density operator: real symmetric matrix of dimension
/// (n_max+1)^n_modes plus the truncated mass 1 − trace.
#[derive(Debug, Clone)]
pub struct FockDensityMatrix {
    n_modes: usize,
    n_max: usize,
    dm: Array2<f64>,
    tail_mass: f64,
}

impl FockDensityMatrix {
    /// Ingest an externally assembled matrix, enforcing symmetry, the
    /// eigenvalue floor, and trace ≤ 1.
    pub fn from_matrix(dm: Array2<f64>, n_modes: usize, n_max: usize) -> Result<Self> {
        let dim = (n_max + 1).pow(n_modes as u32);
        if dm.nrows() != dim || dm.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: dm.nrows(),
            });
        }
        let defect = linalg::max_abs_diff(&dm, &dm.t().to_owned());
        if defect > 1e-12 {
            return Err(Error::InvalidState(format!(
                "density matrix asymmetric: defect {defect:.3e}"
            )));
        }
        let dm = linalg::symmetrize(&dm);
        let (evals, _) = linalg::eigh(&dm)?;
        if evals[0] < -1e-10 {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {:.3e}",
                evals[0]
            )));
        }
        let trace = dm.diag().sum();
        if trace > 1.0 + 1e-10 {
            return Err(Error::InvalidState(format!("trace {trace} exceeds 1")));
        }
        Ok(Self {
            n_modes,
            n_max,
            dm,
            tail_mass: (1.0 - trace).max(0.0),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dm(&self) -> &Array2<f64> {
        &self.dm
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }
}

/// Truncated pure state as an amplitude vector over the same grid.
#[derive(Debug, Clone)]
pub struct FockKet {
    pub n_modes: usize,
    pub n_max: usize,
    pub amp: Array1<f64>,
    /// Probability mass beyond the cutoff: 1 − ‖amp‖².
    pub tail_mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Thermal,
    Tmsv,
}

/// Thermal input builds a density matrix; TMSV builds a (two-mode) ket.
#[derive(Debug, Clone)]
pub enum FockState {
    Density(FockDensityMatrix),
    Ket(FockKet),
}

/// Geometric weights (1/(mean+1))(mean/(mean+1))^n for n ≤ n_max, plus the
/// exact tail beyond the cutoff.
fn geometric_weights(mean: f64, n_max: usize) -> (Vec<f64>, f64) {
    let d = n_max + 1;
    if mean <= 0.0 {
        let mut w = vec![0.0; d];
        w[0] = 1.0;
        return (w, 0.0);
    }
    let ratio = mean / (mean + 1.0);
    let mut w = Vec::with_capacity(d);
    let mut cur = 1.0 / (mean + 1.0);
    for _ in 0..d {
        w.push(cur);
        cur *= ratio;
    }
    (w, ratio.powi(d as i32))
}

pub fn build_state(kind: StateKind, param: f64, cfg: &TruncationConfig) -> Result<FockState> {
    if !(param >= 0.0) {
        return Err(Error::NegativeNoise(param));
    }
    match kind {
        StateKind::Thermal => {
            let (w, tail) = geometric_weights(param, cfg.n_max);
            if tail > cfg.tail_tol {
                return Err(Error::CutoffTooSmall {
                    tail_mass: tail,
                    tail_tol: cfg.tail_tol,
                });
            }
            let dm = Array2::from_diag(&Array1::from_vec(w));
            Ok(FockState::Density(FockDensityMatrix {
                n_modes: 1,
                n_max: cfg.n_max,
                dm,
                tail_mass: tail,
            }))
        }
        StateKind::Tmsv => {
            let (w, tail) = geometric_weights(param, cfg.n_max);
            if tail > cfg.tail_tol {
                return Err(Error::CutoffTooSmall {
                    tail_mass: tail,
                    tail_tol: cfg.tail_tol,
                });
            }
            let d = cfg.n_max + 1;
            let mut amp = Array1::zeros(d * d);
            for (n, &wn) in w.iter().enumerate() {
                amp[n * d + n] = wn.sqrt();
            }
            Ok(FockState::Ket(FockKet {
                n_modes: 2,
                n_max: cfg.n_max,
                amp,
                tail_mass: tail,
            }))
        }
    }
}

/// Annihilation operator on a (n_max+1)-dimensional truncation.
fn ladder(d: usize) -> Array2<f64> {
    let mut a = Array2::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = (n as f64).sqrt();
    }
    a
}

/// x = (a + a†)/√2.
fn x_op(d: usize) -> Array2<f64> {
    let a = ladder(d);
    (&a + &a.t()) / std::f64::consts::SQRT_2
}

/// p = i·B with B = (a† − a)/√2 real antisymmetric.
fn b_op(d: usize) -> Array2<f64> {
    let a = ladder(d);
    (&a.t() - &a) / std::f64::consts::SQRT_2
}

/// exp(G) for real antisymmetric G that is block diagonal under `sector`:
/// the generator never connects different sector keys, so each block
/// exponential is exact for the truncated generator as a whole. Each block
/// goes through the Hermitian iG eigensolve.
fn exp_antisymmetric_sectored(
    gen: &Array2<f64>,
    dim: usize,
    sector: impl Fn(usize) -> i64,
) -> Result<Array2<f64>> {
    let mut buckets: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for idx in 0..dim {
        buckets.entry(sector(idx)).or_default().push(idx);
    }
    let mut u = Array2::zeros((dim, dim));
    for block in buckets.values() {
        let k = block.len();
        let mut h = Array2::<c64>::zeros((k, k));
        for (bi, &gi) in block.iter().enumerate() {
            for (bj, &gj) in block.iter().enumerate() {
                h[[bi, bj]] = c64::new(0.0, gen[[gi, gj]]);
            }
        }
        let (lam, q) = linalg::eigh_complex(&h)?;
        // exp(G)|block = Q e^{−iλ} Q†
        let mut qe = q.clone();
        for (j, &l) in lam.iter().enumerate() {
            let phase = c64::new(0.0, -l).exp();
            qe.column_mut(j).mapv_inplace(|z| z * phase);
        }
        let eb = qe.dot(&q.mapv(|z| z.conj()).t());
        for (bi, &gi) in block.iter().enumerate() {
            for (bj, &gj) in block.iter().enumerate() {
                debug_assert!(eb[[bi, bj]].im.abs() < 1e-10);
                u[[gi, gj]] = eb[[bi, bj]].re;
            }
        }
    }
    Ok(u)
}

/// Dilation unitary on (arm, environment), basis index m·d + e.
fn dilation_unitary(spec: &ChannelSpec, d: usize) -> Result<Array2<f64>> {
    let dim = d * d;
    let mut gen = Array2::zeros((dim, dim));
    match *spec {
        ChannelSpec::Thermal { eta, .. } => {
            // beamsplitter θ(a†e − ae†), cos θ = √η; conserves m + e
            let theta = eta.sqrt().min(1.0).acos();
            for m in 0..d {
                for e in 0..d {
                    let from = m * d + e;
                    if m + 1 < d && e >= 1 {
                        gen[[(m + 1) * d + (e - 1), from]] +=
                            theta * (((m + 1) * e) as f64).sqrt();
                    }
                    if m >= 1 && e + 1 < d {
                        gen[[(m - 1) * d + (e + 1), from]] -=
                            theta * ((m * (e + 1)) as f64).sqrt();
                    }
                }
            }
            exp_antisymmetric_sectored(&gen, dim, |idx| ((idx / d) + (idx % d)) as i64)
        }
        ChannelSpec::Amplifier { gain, .. } => {
            // two-mode squeezer r(a†e† − ae), cosh r = √G; conserves m − e
            let r = gain.sqrt().acosh();
            for m in 0..d {
                for e in 0..d {
                    let from = m * d + e;
                    if m + 1 < d && e + 1 < d {
                        gen[[(m + 1) * d + (e + 1), from]] +=
                            r * (((m + 1) * (e + 1)) as f64).sqrt();
                    }
                    if m >= 1 && e >= 1 {
                        gen[[(m - 1) * d + (e - 1), from]] -= r * ((m * e) as f64).sqrt();
                    }
                }
            }
            exp_antisymmetric_sectored(&gen, dim, |idx| (idx / d) as i64 - (idx % d) as i64)
        }
    }
}

/// Probe output from first principles: TMSV(n_s) ⊗ thermal(n_b) through the
/// dilation unitary on (arm, environment), environment traced out. Output
/// mode order is (channel output, retained arm), matching
/// [`channels::probe_output`]. The result's first/second moments are checked
/// against the covariance path to [`tol::FOCK_MOMENT`].
pub fn dilation_output(spec: &ChannelSpec, n_s: f64, cfg: &TruncationConfig) -> Result<FockDensityMatrix> {
    if !(n_s >= 0.0) {
        return Err(Error::NegativeSqueezing(n_s));
    }
    let d = cfg.n_max + 1;
    let (psi2, tail_s) = geometric_weights(n_s, cfg.n_max);
    let (lam, tail_b) = geometric_weights(spec.n_b(), cfg.n_max);
    for tail in [tail_s, tail_b] {
        if tail > cfg.tail_tol {
            return Err(Error::CutoffTooSmall {
                tail_mass: tail,
                tail_tol: cfg.tail_tol,
            });
        }
    }
    let psi: Vec<f64> = psi2.iter().map(|w| w.sqrt()).collect();
    let u = dilation_unitary(spec, d)?;

    // Kraus columns: v_{fe}[b·d + r] = √λ_e · ψ_r · U[b·d + f, r·d + e];
    // ρ_out = Σ_{fe} v v ᵀ assembled as one Gram product C·Cᵀ.
    let dim = d * d;
    let mut c = Array2::<f64>::zeros((dim, dim));
    for e in 0..d {
        let sqrt_lam = lam[e].sqrt();
        if sqrt_lam == 0.0 {
            continue;
        }
        for f in 0..d {
            let col = e * d + f;
            for b in 0..d {
                for r in 0..d {
                    c[[b * d + r, col]] = sqrt_lam * psi[r] * u[[b * d + f, r * d + e]];
                }
            }
        }
    }
    let dm = c.dot(&c.t());
    let trace = dm.diag().sum();
    let rho = FockDensityMatrix {
        n_modes: 2,
        n_max: cfg.n_max,
        dm: linalg::symmetrize(&dm),
        tail_mass: (1.0 - trace).max(0.0),
    };

    let reference = channels::probe_output(spec, n_s)?;
    let max_abs = linalg::max_abs_diff(&moments_covariance(&rho), reference.cov());
    if max_abs > tol::FOCK_MOMENT {
        return Err(Error::MomentMismatch {
            max_abs,
            tol: tol::FOCK_MOMENT,
        });
    }
    Ok(rho)
}

/// Tr[ρ (P ⊗ Q)] over the two-mode grid.
fn expect_two_mode(rho: &Array2<f64>, d: usize, p: &Array2<f64>, q: &Array2<f64>) -> f64 {
    let mut acc = 0.0;
    for b in 0..d {
        for r in 0..d {
            let row = b * d + r;
            for bp in 0..d {
                let pv = p[[bp, b]];
                if pv == 0.0 {
                    continue;
                }
                for rp in 0..d {
                    acc += rho[[row, bp * d + rp]] * pv * q[[rp, r]];
                }
            }
        }
    }
    acc
}

/// Quadrature covariance (xx..pp ordering) of a truncated state, from
/// ladder-operator moments. For the real symmetric matrices this module
/// produces, every ⟨{x,p}⟩/2 entry vanishes identically: the operator is
/// i·(real antisymmetric) and Tr[sym · antisym] = 0, so the x-p block is
/// written as exact zeros. Means are zero for the same reason.
pub fn moments_covariance(rho: &FockDensityMatrix) -> Array2<f64> {
    let d = rho.n_max + 1;
    let x = x_op(d);
    let b = b_op(d);
    match rho.n_modes {
        1 => {
            let xx = trace_product(&rho.dm, &x.dot(&x));
            let pp = -trace_product(&rho.dm, &b.dot(&b));
            let mut cov = Array2::zeros((2, 2));
            cov[[0, 0]] = xx;
            cov[[1, 1]] = pp;
            cov
        }
        2 => {
            let eye = Array2::eye(d);
            let x2 = x.dot(&x);
            let b2 = b.dot(&b);
            let mut cov = Array2::zeros((4, 4));
            cov[[0, 0]] = expect_two_mode(&rho.dm, d, &x2, &eye);
            cov[[1, 1]] = expect_two_mode(&rho.dm, d, &eye, &x2);
            cov[[0, 1]] = expect_two_mode(&rho.dm, d, &x, &x);
            cov[[1, 0]] = cov[[0, 1]];
            cov[[2, 2]] = -expect_two_mode(&rho.dm, d, &b2, &eye);
            cov[[3, 3]] = -expect_two_mode(&rho.dm, d, &eye, &b2);
            cov[[2, 3]] = -expect_two_mode(&rho.dm, d, &b, &b);
            cov[[3, 2]] = cov[[2, 3]];
            cov
        }
        n => panic!("moments only implemented for 1 or 2 modes, got {n}"),
    }
}

/// Tr[ρ A] for symmetric ρ.
fn trace_product(rho: &Array2<f64>, a: &Array2<f64>) -> f64 {
    rho.iter().zip(a.t().iter()).map(|(&x, &y)| x * y).sum()
}

/// Partial trace of a two-mode state onto one mode (0 = channel output,
/// 1 = retained arm).
pub fn partial_trace(rho: &FockDensityMatrix, keep: usize) -> Result<FockDensityMatrix> {
    if rho.n_modes != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.n_modes,
        });
    }
    if keep > 1 {
        return Err(Error::IndexOutOfRange {
            index: keep,
            n_modes: 2,
        });
    }
    let d = rho.n_max + 1;
    let mut out = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0.0;
            for t in 0..d {
                let (ri, rj) = if keep == 0 {
                    (i * d + t, j * d + t)
                } else {
                    (t * d + i, t * d + j)
                };
                acc += rho.dm[[ri, rj]];
            }
            out[[i, j]] = acc;
        }
    }
    Ok(FockDensityMatrix {
        n_modes: 1,
        n_max: rho.n_max,
        dm: out,
        tail_mass: rho.tail_mass,
    })
}

/// Spectral divergences plus Rényi families and trace distance.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub base: DivergenceReport,
    /// (α, D_α) with D_α = ln(Tr ρ^α σ^{1−α})/(α−1).
    pub petz: Vec<(f64, f64)>,
    /// (α, D̃_α) with D̃_α = ln(Tr (σ^{(1−α)/2α} ρ σ^{(1−α)/2α})^α)/(α−1).
    pub sandwiched: Vec<(f64, f64)>,
    pub trace_distance: f64,
}

/// All divergences via eigendecomposition. Eigenvalues at or below
/// [`tol::SPECTRAL_FLOOR`] are projected out consistently on both sides; if
/// more than [`tol::SUPPORT_LEAK`] of ρ's mass falls outside σ's support the
/// relative quantities are refused rather than silently truncated.
pub fn spectral_divergences(
    rho: &FockDensityMatrix,
    sigma: &FockDensityMatrix,
    alphas: &[f64],
) -> Result<SpectralReport> {
    if rho.dm.nrows() != sigma.dm.nrows() {
        return Err(Error::DimensionMismatch {
            expected: rho.dm.nrows(),
            got: sigma.dm.nrows(),
        });
    }
    for &alpha in alphas {
        if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "Rényi order must lie in (0,1)∪(1,∞), got {alpha}"
            )));
        }
    }
    let (p, up) = linalg::eigh(&rho.dm)?;
    let (q, uq) = linalg::eigh(&sigma.dm)?;
    let overlap = up.t().dot(&uq);
    let w = overlap.mapv(|x| x * x);
    let dim = p.len();
    let sup_p: Vec<usize> = (0..dim).filter(|&i| p[i] > tol::SPECTRAL_FLOOR).collect();
    let sup_q: Vec<usize> = (0..dim).filter(|&j| q[j] > tol::SPECTRAL_FLOOR).collect();

    let mut leaked = 0.0;
    for &i in &sup_p {
        for j in 0..dim {
            if q[j] <= tol::SPECTRAL_FLOOR {
                leaked += p[i] * w[[i, j]];
            }
        }
    }
    if leaked > tol::SUPPORT_LEAK {
        return Err(Error::SupportViolation { leaked });
    }

    // D = Σ p ln p − Σ p W ln q ; V adds the squared-log moments.
    let mut d_val = 0.0;
    let mut second = 0.0;
    for &i in &sup_p {
        let lp = p[i].ln();
        d_val += p[i] * lp;
        second += p[i] * lp * lp;
        for &j in &sup_q {
            let lq = q[j].ln();
            let pw = p[i] * w[[i, j]];
            d_val -= pw * lq;
            second += pw * (lq * lq - 2.0 * lp * lq);
        }
    }
    let v_val = (second - d_val * d_val).max(0.0);

    // F = (Σ singular values of diag(√p)·⟨u_p|u_q⟩·diag(√q))².
    let mut a = Array2::zeros((sup_p.len(), sup_q.len()));
    for (bi, &i) in sup_p.iter().enumerate() {
        for (bj, &j) in sup_q.iter().enumerate() {
            a[[bi, bj]] = p[i].sqrt() * overlap[[i, j]] * q[j].sqrt();
        }
    }
    let f_val = {
        use ndarray_linalg::SVD;
        let (_, s, _) = a.svd(false, false)?;
        let sum: f64 = s.sum();
        (sum * sum).clamp(0.0, 1.0)
    };

    let mut petz = Vec::with_capacity(alphas.len());
    let mut sandwiched = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let mut tr = 0.0;
        for &i in &sup_p {
            for &j in &sup_q {
                tr += p[i].powf(alpha) * w[[i, j]] * q[j].powf(1.0 - alpha);
            }
        }
        petz.push((alpha, tr.ln() / (alpha - 1.0)));

        // sandwiched: work in σ's support eigenbasis
        let s_exp = (1.0 - alpha) / (2.0 * alpha);
        let rho_in_q = uq.t().dot(&rho.dm).dot(&uq);
        let k = sup_q.len();
        let mut mid = Array2::zeros((k, k));
        for (bi, &i) in sup_q.iter().enumerate() {
            for (bj, &j) in sup_q.iter().enumerate() {
                mid[[bi, bj]] = q[i].powf(s_exp) * rho_in_q[[i, j]] * q[j].powf(s_exp);
            }
        }
        let (lam, _) = linalg::eigh(&mid)?;
        let tr_s: f64 = lam
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| l.powf(alpha))
            .sum();
        sandwiched.push((alpha, tr_s.ln() / (alpha - 1.0)));
    }

    let diff = &rho.dm - &sigma.dm;
    let (dl, _) = linalg::eigh(&diff)?;
    let trace_distance = 0.5 * dl.iter().map(|x| x.abs()).sum::<f64>();

    Ok(SpectralReport {
        base: DivergenceReport::nats(d_val.max(0.0), v_val, f_val, Method::FockOracle),
        petz,
        sandwiched,
        trace_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences as gauss;
    use crate::thermal::{renyi_thermal, thermal_divergences, ThermalPair};
    use approx::assert_abs_diff_eq;

    fn thermal_dm(n: f64, n_max: usize) -> FockDensityMatrix {
        match build_state(StateKind::Thermal, n, &TruncationConfig::new(n_max, 1e-3).unwrap())
            .unwrap()
        {
            FockState::Density(d) => d,
            FockState::Ket(_) => unreachable!(),
        }
    }

    #[test]
    fn truncation_config_domains() {
        assert!(TruncationConfig::new(0, 1e-7).is_err());
        assert!(TruncationConfig::new(10, 0.0).is_err());
        assert!(TruncationConfig::new(10, 1e-2).is_err());
        let cfg = TruncationConfig::adaptive(
            &ChannelSpec::thermal(0.6, 0.3).unwrap(),
            0.5,
            1e-7,
        )
        .unwrap();
        assert_eq!(cfg.n_max, 30);
        // hotter environment pushes the cutoff up
        let hot = TruncationConfig::adaptive(&ChannelSpec::thermal(0.6, 5.0).unwrap(), 0.5, 1e-7)
            .unwrap();
        assert!(hot.n_max > cfg.n_max);
    }

    #[test]
    fn thermal_matrix_is_geometric_with_exact_tail() {
        let n = 0.5;
        let rho = thermal_dm(n, 30);
        let ratio = n / (n + 1.0);
        assert_abs_diff_eq!(rho.dm()[[0, 0]], 1.0 / (n + 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(rho.dm()[[5, 5]], ratio.powi(5) / (n + 1.0), epsilon = 1e-15);
        assert_eq!(rho.dm()[[0, 1]], 0.0);
        let trace: f64 = rho.dm().diag().sum();
        assert_abs_diff_eq!(trace + rho.tail_mass(), 1.0, epsilon = 1e-13);

        // vacuum is a corner case of the geometric weights
        let vac = thermal_dm(0.0, 4);
        assert_eq!(vac.dm()[[0, 0]], 1.0);
        assert_eq!(vac.tail_mass(), 0.0);
    }

    #[test]
    fn cutoff_gate_refuses_fat_tails() {
        let cfg = TruncationConfig::new(4, 1e-7).unwrap();
        assert!(matches!(
            build_state(StateKind::Thermal, 5.0, &cfg),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(matches!(
            dilation_output(&ChannelSpec::thermal(0.5, 5.0).unwrap(), 0.1, &cfg),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn tmsv_ket_sits_on_the_diagonal_grid() {
        let cfg = TruncationConfig::new(20, 1e-3).unwrap();
        let ket = match build_state(StateKind::Tmsv, 0.5, &cfg).unwrap() {
            FockState::Ket(k) => k,
            FockState::Density(_) => unreachable!(),
        };
        let d = 21;
        let norm2: f64 = ket.amp.iter().map(|a| a * a).sum();
        assert_abs_diff_eq!(norm2 + ket.tail_mass, 1.0, epsilon = 1e-14);
        assert!(ket.amp[0] > 0.0 && ket.amp[d + 1] > 0.0);
        assert_eq!(ket.amp[1], 0.0); // off-grid component |0,1⟩
    }

    #[test]
    fn from_matrix_rejects_junk() {
        let mut asym = Array2::eye(4);
        asym[[0, 1]] = 1e-3;
        assert!(FockDensityMatrix::from_matrix(asym, 1, 3).is_err());
        let mut neg = Array2::eye(4) * 0.25;
        neg[[3, 3]] = -0.25;
        assert!(FockDensityMatrix::from_matrix(neg, 1, 3).is_err());
        assert!(FockDensityMatrix::from_matrix(Array2::eye(4), 1, 3).is_err()); // trace 4
        assert!(FockDensityMatrix::from_matrix(Array2::eye(4) * 0.25, 2, 3).is_err()); // shape
    }

    #[test]
    fn dilation_retained_arm_stays_thermal() {
        let cfg = TruncationConfig::new(25, 1e-3).unwrap();
        let n_s = 0.5;
        let rho = dilation_output(&ChannelSpec::thermal(0.5, 0.2).unwrap(), n_s, &cfg).unwrap();
        let arm = partial_trace(&rho, 1).unwrap();
        let reference = thermal_dm(n_s, 25);
        for i in 0..10 {
            assert_abs_diff_eq!(arm.dm()[[i, i]], reference.dm()[[i, i]], epsilon = 1e-8);
        }
        // channel-output marginal has the heated mean η·n_s + (1−η)·n_b
        let out = partial_trace(&rho, 0).unwrap();
        let mean: f64 = (0..26).map(|i| i as f64 * out.dm()[[i, i]]).sum();
        assert_abs_diff_eq!(mean, 0.5 * n_s + 0.5 * 0.2, epsilon = 1e-6);
        assert!(partial_trace(&arm, 0).is_err());
        assert!(partial_trace(&rho, 2).is_err());
    }

    #[test]
    fn moments_of_a_thermal_matrix() {
        let rho = thermal_dm(0.7, 40);
        let cov = moments_covariance(&rho);
        assert_abs_diff_eq!(cov[[0, 0]], 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(cov[[1, 1]], 1.2, epsilon = 1e-12);
        assert_eq!(cov[[0, 1]], 0.0);
    }

    #[test]
    fn amplifier_dilation_matches_the_covariance_path() {
        // the moment gate inside dilation_output is the assertion here
        let spec = ChannelSpec::amplifier(1.5, 0.3).unwrap();
        let cfg = TruncationConfig::adaptive(&spec, 0.4, 1e-8).unwrap();
        let rho = dilation_output(&spec, 0.4, &cfg).unwrap();
        assert!(rho.tail_mass() < 1e-5);
    }

    #[test]
    fn spectral_self_comparison() {
        let rho = thermal_dm(0.4, 40);
        let rep = spectral_divergences(&rho, &rho, &[]).unwrap();
        assert!(rep.base.d.abs() < 1e-12);
        assert!(rep.base.v.abs() < 1e-12);
        assert_abs_diff_eq!(rep.base.f, 1.0, epsilon = 1e-10);
        assert!(rep.trace_distance < 1e-12);
    }

    #[test]
    fn spectral_matches_thermal_closed_forms() {
        let pair = ThermalPair::new(0.2, 0.5).unwrap();
        let cf = thermal_divergences(pair).unwrap();
        let r1 = thermal_dm(0.2, 60);
        let r2 = thermal_dm(0.5, 60);
        let rep = spectral_divergences(&r1, &r2, &[0.5, 2.0]).unwrap();
        assert_abs_diff_eq!(rep.base.d, cf.d, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.base.v, cf.v, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.base.f, cf.f, epsilon = 1e-10);
        // commuting states: both Rényi families coincide with the classical one
        for (alpha, want) in [(0.5, renyi_thermal(0.5, pair).unwrap()),
                              (2.0, renyi_thermal(2.0, pair).unwrap())] {
            let petz = rep.petz.iter().find(|(a, _)| *a == alpha).unwrap().1;
            let sand = rep.sandwiched.iter().find(|(a, _)| *a == alpha).unwrap().1;
            assert_abs_diff_eq!(petz, want, epsilon = 1e-10);
            assert_abs_diff_eq!(sand, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_identities_on_a_noncommuting_pair() {
        let spec1 = ChannelSpec::thermal(0.6, 0.1).unwrap();
        let spec2 = ChannelSpec::thermal(0.6, 0.3).unwrap();
        let cfg = TruncationConfig::new(24, 1e-3).unwrap();
        let r1 = dilation_output(&spec1, 0.5, &cfg).unwrap();
        let r2 = dilation_output(&spec2, 0.5, &cfg).unwrap();
        let rep = spectral_divergences(&r1, &r2, &[0.5, 2.0]).unwrap();

        // D̃_{1/2} = −ln F as matrix identity; numerically the two routes
        // treat sub-floor spectrum differently, and the fidelity side feels
        // discarded directions at the √SPECTRAL_FLOOR ≈ 1e-7 scale
        let sand_half = rep.sandwiched.iter().find(|(a, _)| *a == 0.5).unwrap().1;
        assert_abs_diff_eq!(sand_half, -rep.base.f.ln(), epsilon = 2e-6);
        // Petz dominates sandwiched at α = 2
        let petz2 = rep.petz.iter().find(|(a, _)| *a == 2.0).unwrap().1;
        let sand2 = rep.sandwiched.iter().find(|(a, _)| *a == 2.0).unwrap().1;
        assert!(petz2 >= sand2 - 1e-12);
        // Fuchs-van de Graaf brackets
        let t = rep.trace_distance;
        let f = rep.base.f;
        assert!(t >= 1.0 - f.sqrt() - 1e-12);
        assert!(t <= (1.0 - f).sqrt() + 1e-12);
        // and the Gaussian path agrees on this mildly-occupied pair
        let g1 = channels::probe_output(&spec1, 0.5).unwrap();
        let g2 = channels::probe_output(&spec2, 0.5).unwrap();
        assert_abs_diff_eq!(rep.base.d, gauss::relative_entropy(&g1, &g2).unwrap(), epsilon = 1e-6);
        assert_abs_diff_eq!(rep.base.f, gauss::fidelity(&g1, &g2).unwrap(), epsilon = 1e-6);
    }

    #[test]
    fn support_violation_is_detected() {
        let mixed = thermal_dm(0.5, 30);
        let vac = thermal_dm(0.0, 30);
        assert!(matches!(
            spectral_divergences(&mixed, &vac, &[]),
            Err(Error::SupportViolation { .. })
        ));
        // vacuum against mixed is fine
        assert!(spectral_divergences(&vac, &mixed, &[]).is_ok());
    }

    #[test]
    fn spectral_alpha_domain() {
        let rho = thermal_dm(0.2, 20);
        for bad in [0.0, 1.0, -1.0, f64::NAN] {
            assert!(spectral_divergences(&rho, &rho, &[bad]).is_err());
        }
    }
}
