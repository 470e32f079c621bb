//! Symplectic linear algebra on covariance matrices.
//!
//! Conventions, fixed once for the whole crate: quadrature ordering is
//! xx..pp, the symplectic form is Ω = [[0, I],[−I, 0]], and the vacuum
//! variance is 1/2 (ħ = 1). The source material displays its 4×4 covariance
//! in x/p blocks with the inter-mode correlation +c in the x block and −c in
//! the p block, which pins this ordering; it never states the convention
//! outright. [`to_interleaved`]/[`from_interleaved`] convert for external
//! consumers and are used nowhere internally.

use ndarray::{Array1, Array2};
use ndarray_linalg::c64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::tol;

/// The symplectic form Ω with blocks [[0, I_n],[−I_n, 0]].
pub fn symplectic_form(n_modes: usize) -> Array2<f64> {
    assert!(n_modes >= 1, "need at least one mode");
    let mut om = Array2::zeros((2 * n_modes, 2 * n_modes));
    for i in 0..n_modes {
        om[[i, n_modes + i]] = 1.0;
        om[[n_modes + i, i]] = -1.0;
    }
    om
}

fn permute_both(cov: &Array2<f64>, perm: &[usize]) -> Array2<f64> {
    let d = perm.len();
    let mut out = Array2::zeros((d, d));
    for (i, &pi) in perm.iter().enumerate() {
        for (j, &pj) in perm.iter().enumerate() {
            out[[i, j]] = cov[[pi, pj]];
        }
    }
    out
}

/// Reorder a covariance matrix from xx..pp to x1 p1 x2 p2 ...
pub fn to_interleaved(cov: &Array2<f64>) -> Array2<f64> {
    let n = cov.nrows() / 2;
    let perm: Vec<usize> = (0..2 * n)
        .map(|i| if i % 2 == 0 { i / 2 } else { n + i / 2 })
        .collect();
    permute_both(cov, &perm)
}

/// Inverse of [`to_interleaved`].
pub fn from_interleaved(cov: &Array2<f64>) -> Array2<f64> {
    let n = cov.nrows() / 2;
    let perm: Vec<usize> = (0..n)
        .map(|i| 2 * i)
        .chain((0..n).map(|i| 2 * i + 1))
        .collect();
    permute_both(cov, &perm)
}

/// Zero-mean Gaussian state: covariance in xx..pp ordering plus mode count.
/// The mean vector is retained for generality but is always zero here.
#[derive(Debug, Clone)]
pub struct GaussianState {
    n_modes: usize,
    cov: Array2<f64>,
    mean: Array1<f64>,
}

impl GaussianState {
    /// Ingest a covariance matrix. Enforces shape, symmetry to
    /// [`tol::COV_SYMMETRY`] relative, and physicality
    /// (min ν ≥ 1/2 − [`tol::NU_PHYSICAL`]); stores the symmetrized matrix.
    pub fn from_cov(cov: Array2<f64>) -> Result<Self> {
        let dim = cov.nrows();
        if cov.ncols() != dim || dim == 0 || dim % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim.max(2) / 2 * 2,
                got: cov.ncols(),
            });
        }
        let scale = linalg::max_abs(&cov).max(1.0);
        let defect = linalg::max_abs_diff(&cov, &cov.t().to_owned());
        if defect > tol::COV_SYMMETRY * scale {
            return Err(Error::InvalidState(format!(
                "covariance asymmetric: defect {:.3e} at scale {:.3e}",
                defect, scale
            )));
        }
        let cov = linalg::symmetrize(&cov);
        let nus = symplectic_eigenvalues(&cov)?;
        let min_nu = nus.last().copied().unwrap_or(f64::NAN);
        if !(min_nu >= 0.5 - tol::NU_PHYSICAL) {
            return Err(Error::InvalidState(format!(
                "unphysical state: min symplectic eigenvalue {min_nu} < 1/2"
            )));
        }
        let n_modes = dim / 2;
        Ok(Self {
            n_modes,
            cov,
            mean: Array1::zeros(dim),
        })
    }

    /// Construction for internal call sites whose output is valid by
    /// symplectic/CPTP algebra; skips the eigensolve.
    pub(crate) fn from_parts_unchecked(cov: Array2<f64>, mean: Array1<f64>) -> Self {
        let n_modes = cov.nrows() / 2;
        Self { n_modes, cov, mean }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn cov(&self) -> &Array2<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &Array1<f64> {
        &self.mean
    }

    /// Symplectic eigenvalues of this state's covariance, descending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues(&self.cov)
    }
}

/// Symplectic eigenvalues of a covariance matrix, sorted descending.
///
/// Computed as the positive imaginary parts of eig(ΩV); the pairing ±iν is
/// verified. Balancing inside dgeev keeps the small ν accurate when another
/// mode's occupancy is large.
pub fn symplectic_eigenvalues(cov: &Array2<f64>) -> Result<Vec<f64>> {
    let dim = cov.nrows();
    assert!(dim % 2 == 0 && dim > 0, "covariance must be even-dimensional");
    let n = dim / 2;
    let m = symplectic_form(n).dot(cov);
    let vals = linalg::eigvals(&m)?;
    let scale = linalg::max_abs(cov).max(1.0);
    let stray_real = vals.iter().fold(0.0f64, |acc, z| acc.max(z.re.abs()));
    if stray_real > 1e-8 * scale {
        return Err(Error::InvalidState(format!(
            "spectrum of ΩV not ±iν paired (max |Re λ| = {stray_real:.3e}); \
             covariance is not positive definite"
        )));
    }
    let mut nus: Vec<f64> = vals.iter().filter(|z| z.im > 0.0).map(|z| z.im).collect();
    if nus.len() != n {
        return Err(Error::NonPositiveDefinite(0.0));
    }
    nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(nus)
}

/// Real 2n×2n matrix satisfying S Ω Sᵀ = Ω.
#[derive(Debug, Clone)]
pub struct SymplecticMatrix {
    n_modes: usize,
    mat: Array2<f64>,
}

impl SymplecticMatrix {
    /// Validates the symplectic condition to [`tol::SYMPLECTIC_DEFECT`].
    pub fn new(mat: Array2<f64>) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim || dim == 0 || dim % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: mat.ncols(),
            });
        }
        let n = dim / 2;
        let om = symplectic_form(n);
        let defect = linalg::max_abs_diff(&mat.dot(&om).dot(&mat.t()), &om);
        if defect > tol::SYMPLECTIC_DEFECT {
            return Err(Error::InvalidState(format!(
                "matrix is not symplectic: ‖SΩSᵀ − Ω‖_max = {defect:.3e}"
            )));
        }
        Ok(Self { n_modes: n, mat })
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            n_modes,
            mat: Array2::eye(2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mat(&self) -> &Array2<f64> {
        &self.mat
    }

    /// S⁻¹ = Ω Sᵀ Ωᵀ, exact for symplectic S; no factorization needed.
    pub fn inverse(&self) -> Self {
        let om = symplectic_form(self.n_modes);
        Self {
            n_modes: self.n_modes,
            mat: om.dot(&self.mat.t()).dot(&om.t()),
        }
    }
}

/// Williamson normal form S V Sᵀ = diag(ν)⊕diag(ν).
#[derive(Debug, Clone)]
pub struct Williamson {
    pub s: SymplecticMatrix,
    /// Symplectic eigenvalues, descending, matching the diagonal S V Sᵀ.
    pub nus: Vec<f64>,
    /// Condition number of V exceeded [`tol::ILL_CONDITIONED`]; results are
    /// still returned, accuracy degrades.
    pub ill_conditioned: bool,
}

/// Williamson decomposition via the V^{1/2}-polar route.
///
/// A = V^{−1/2} Ω V^{−1/2} is real antisymmetric, so iA is Hermitian with
/// spectrum ±1/ν_j; for the +1/ν_j eigenvector u_j, the rows √2·Im(u_j)ᵀ
/// (x slot) and √2·Re(u_j)ᵀ (p slot) assemble an orthogonal R with
/// R V^{−1/2} symplectic up to the diag(√ν) rescale. This stays valid under
/// degenerate ν: eigenvectors of distinct ±1/ν branches are automatically
/// orthogonal in the required real sense.
pub fn williamson(cov: &Array2<f64>) -> Result<Williamson> {
    let dim = cov.nrows();
    assert!(
        cov.ncols() == dim && dim % 2 == 0 && dim > 0,
        "covariance must be square and even-dimensional"
    );
    let n = dim / 2;
    let (w, q) = linalg::eigh(cov)?;
    if w[0] <= 0.0 {
        return Err(Error::NonPositiveDefinite(w[0]));
    }
    let ill_conditioned = w[dim - 1] / w[0] > tol::ILL_CONDITIONED;
    let qd = &q * &w.mapv(|x| x.powf(-0.5));
    let v_m12 = qd.dot(&q.t());
    let a = v_m12.dot(&symplectic_form(n)).dot(&v_m12);
    let h = a.mapv(|x| c64::new(0.0, x));
    let (lam, u) = linalg::eigh_complex(&h)?;
    // Ascending positive λ = 1/ν occupy the top n slots, so walking them in
    // order yields ν descending.
    let mut r = Array2::<f64>::zeros((dim, dim));
    let mut nus = Vec::with_capacity(n);
    for (slot, j) in (n..dim).enumerate() {
        if lam[j] <= 0.0 {
            return Err(Error::NonPositiveDefinite(lam[j]));
        }
        nus.push(1.0 / lam[j]);
        let col = u.column(j);
        for k in 0..dim {
            r[[slot, k]] = std::f64::consts::SQRT_2 * col[k].im;
            r[[n + slot, k]] = std::f64::consts::SQRT_2 * col[k].re;
        }
    }
    for j in 0..n {
        let root = nus[j].sqrt();
        r.row_mut(j).mapv_inplace(|x| x * root);
        r.row_mut(n + j).mapv_inplace(|x| x * root);
    }
    let s_mat = r.dot(&v_m12);
    let s = SymplecticMatrix::new(s_mat)?;
    Ok(Williamson {
        s,
        nus,
        ill_conditioned,
    })
}

/// Congruence action: cov ↦ S cov Sᵀ, mean ↦ S mean.
pub fn apply_symplectic(s: &SymplecticMatrix, state: &GaussianState) -> Result<GaussianState> {
    if s.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: state.n_modes(),
            got: s.n_modes(),
        });
    }
    let cov = linalg::symmetrize(&s.mat().dot(state.cov()).dot(&s.mat().t()));
    let mean = s.mat().dot(state.mean());
    Ok(GaussianState::from_parts_unchecked(cov, mean))
}

/// Restriction to a subset of modes (partial trace over the rest).
pub fn marginal(state: &GaussianState, modes: &[usize]) -> Result<GaussianState> {
    let n = state.n_modes();
    for (i, &m) in modes.iter().enumerate() {
        if m >= n {
            return Err(Error::IndexOutOfRange {
                index: m,
                n_modes: n,
            });
        }
        if modes[..i].contains(&m) {
            return Err(Error::InvalidState(format!("duplicate mode index {m}")));
        }
    }
    let k = modes.len();
    let pick = |i: usize| -> usize {
        // first k slots are x rows, then p rows
        if i < k {
            modes[i]
        } else {
            n + modes[i - k]
        }
    };
    let mut cov = Array2::zeros((2 * k, 2 * k));
    let mut mean = Array1::zeros(2 * k);
    for i in 0..2 * k {
        mean[i] = state.mean()[pick(i)];
        for j in 0..2 * k {
            cov[[i, j]] = state.cov()[[pick(i), pick(j)]];
        }
    }
    Ok(GaussianState::from_parts_unchecked(cov, mean))
}

/// Diagnostics over a candidate covariance matrix; never errors.
#[derive(Debug, Clone)]
pub struct StateDiagnostics {
    /// max|C − Cᵀ| / max(1, max|C|).
    pub symmetry_defect: f64,
    /// min ν − 1/2; NaN when the spectrum could not be extracted.
    pub min_nu_minus_half: f64,
    /// All ν within [`tol::PURITY_WINDOW`] of 1/2.
    pub pure: bool,
}

impl StateDiagnostics {
    pub fn physical(&self) -> bool {
        self.symmetry_defect <= tol::COV_SYMMETRY
            && self.min_nu_minus_half >= -tol::NU_PHYSICAL
    }
}

pub fn validate_state(cov: &Array2<f64>) -> StateDiagnostics {
    let scale = linalg::max_abs(cov).max(1.0);
    let symmetry_defect = linalg::max_abs_diff(cov, &cov.t().to_owned()) / scale;
    let symm = linalg::symmetrize(cov);
    match symplectic_eigenvalues(&symm) {
        Ok(nus) => StateDiagnostics {
            symmetry_defect,
            min_nu_minus_half: nus.last().unwrap() - 0.5,
            pure: nus
                .iter()
                .all(|&nu| (nu - 0.5).abs() <= tol::PURITY_WINDOW),
        },
        Err(_) => StateDiagnostics {
            symmetry_defect,
            min_nu_minus_half: f64::NAN,
            pure: false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{probe_output, tmsv, ChannelSpec};
    use ndarray::array;

    #[test]
    fn omega_squares_to_minus_identity() {
        let om = symplectic_form(3);
        assert!(linalg::max_abs_diff(&om.dot(&om), &(Array2::eye(6) * -1.0)) == 0.0);
    }

    #[test]
    fn interleave_round_trip() {
        let cov = probe_output(&ChannelSpec::thermal(0.7, 0.4).unwrap(), 1.3)
            .unwrap()
            .cov()
            .clone();
        let there = to_interleaved(&cov);
        assert_eq!(there[[0, 1]], cov[[0, 2]]);
        assert!(linalg::max_abs_diff(&from_interleaved(&there), &cov) == 0.0);
    }

    #[test]
    fn from_cov_rejects_asymmetry_and_unphysical() {
        let mut bad = Array2::eye(2);
        bad[[0, 1]] = 1e-3;
        assert!(matches!(
            GaussianState::from_cov(bad),
            Err(Error::InvalidState(_))
        ));
        // ν = 0.3 < 1/2: a valid matrix but not a state
        assert!(GaussianState::from_cov(Array2::eye(2) * 0.3).is_err());
        assert!(GaussianState::from_cov(Array2::eye(2) * 0.5).is_ok());
    }

    #[test]
    fn symplectic_eigenvalues_of_known_states() {
        let th = GaussianState::from_cov(Array2::eye(2) * 1.7).unwrap();
        let nus = th.symplectic_eigenvalues().unwrap();
        assert!((nus[0] - 1.7).abs() < 1e-12);

        // TMSV is pure: both ν = 1/2 despite large diagonal entries
        let s = tmsv(50.0).unwrap();
        for nu in s.symplectic_eigenvalues().unwrap() {
            assert!((nu - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn symplectic_eigenvalues_reject_indefinite_input() {
        let junk = array![[1.0, 0.0], [0.0, -1.0]];
        assert!(symplectic_eigenvalues(&junk).is_err());
    }

    #[test]
    fn williamson_diagonalizes_thermal_and_probe_covariances() {
        for cov in [
            Array2::eye(2) * 2.3,
            probe_output(&ChannelSpec::thermal(0.6, 0.4).unwrap(), 2.0)
                .unwrap()
                .cov()
                .clone(),
            probe_output(&ChannelSpec::amplifier(1.8, 0.7).unwrap(), 5.0)
                .unwrap()
                .cov()
                .clone(),
        ] {
            let w = williamson(&cov).unwrap();
            let n = cov.nrows() / 2;
            let mut diag = Array2::zeros(cov.dim());
            for (j, &nu) in w.nus.iter().enumerate() {
                diag[[j, j]] = nu;
                diag[[n + j, n + j]] = nu;
            }
            let resid = linalg::max_abs_diff(&w.s.mat().dot(&cov).dot(&w.s.mat().t()), &diag);
            assert!(resid < tol::WILLIAMSON_RESIDUAL * linalg::max_abs(&cov));
            assert!(!w.ill_conditioned);
            // spectrum agrees with the eigvals route, both descending
            let nus = symplectic_eigenvalues(&cov).unwrap();
            for (a, b) in w.nus.iter().zip(&nus) {
                assert!((a - b).abs() < 1e-9 * b);
            }
        }
    }

    #[test]
    fn symplectic_matrix_validates_and_inverts() {
        assert!(SymplecticMatrix::new(Array2::eye(4)).is_ok());
        assert!(SymplecticMatrix::new(Array2::eye(2) * 2.0).is_err());

        // single-mode squeezer diag(z, 1/z) is symplectic
        let s = SymplecticMatrix::new(array![[3.0, 0.0], [0.0, 1.0 / 3.0]]).unwrap();
        let prod = s.mat().dot(s.inverse().mat());
        assert!(linalg::max_abs_diff(&prod, &Array2::eye(2)) < 1e-15);
    }

    #[test]
    fn marginal_picks_the_right_blocks() {
        let st = probe_output(&ChannelSpec::thermal(0.6, 0.4).unwrap(), 2.0).unwrap();
        let arm = marginal(&st, &[1]).unwrap();
        // retained arm of the probe is thermal(n_s) untouched by the channel
        assert!((arm.cov()[[0, 0]] - 2.5).abs() < 1e-15);
        assert!((arm.cov()[[1, 1]] - 2.5).abs() < 1e-15);
        assert!(arm.cov()[[0, 1]].abs() < 1e-15);
        assert!(marginal(&st, &[2]).is_err());
        assert!(marginal(&st, &[0, 0]).is_err());
    }

    #[test]
    fn apply_symplectic_is_a_congruence() {
        let st = GaussianState::from_cov(Array2::eye(2) * 1.5).unwrap();
        let s = SymplecticMatrix::new(array![[2.0, 0.0], [0.0, 0.5]]).unwrap();
        let out = apply_symplectic(&s, &st).unwrap();
        assert!((out.cov()[[0, 0]] - 6.0).abs() < 1e-15);
        assert!((out.cov()[[1, 1]] - 0.375).abs() < 1e-15);
        let wrong = SymplecticMatrix::identity(2);
        assert!(apply_symplectic(&wrong, &st).is_err());
    }

    #[test]
    fn diagnostics_classify_physical_pure_and_junk() {
        let d = validate_state(tmsv(1.0).unwrap().cov());
        assert!(d.physical() && d.pure);
        let d = validate_state(&(Array2::eye(2) * 1.2));
        assert!(d.physical() && !d.pure);
        let d = validate_state(&(Array2::eye(2) * 0.2));
        assert!(!d.physical());
        assert!(validate_state(&array![[1.0, 0.0], [0.0, -1.0]])
            .min_nu_minus_half
            .is_nan());
    }
}
