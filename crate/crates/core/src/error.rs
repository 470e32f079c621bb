use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("covariance matrix is not positive definite (min eigenvalue {0:.3e})")]
    NonPositiveDefinite(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mode index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },

    #[error("thermal occupation must be nonnegative, got {0}")]
    NegativeNoise(f64),

    #[error("TMSV mean photon number must be nonnegative, got {0}")]
    NegativeSqueezing(f64),

    #[error("invalid channel spec: {0}")]
    InvalidSpec(String),

    #[error("state invalid: {0}")]
    InvalidState(String),

    #[error("second argument has a pure mode (min symplectic eigenvalue {min_nu}); relative entropy diverges")]
    SecondArgumentPure { min_nu: f64 },

    #[error("fidelity supports 1 or 2 modes, got {0}")]
    UnsupportedModeCount(usize),

    #[error("finite-difference step too large: estimators {i_sqrt:.6e} and {i_log:.6e} disagree beyond 5%")]
    StepTooLarge { i_sqrt: f64, i_log: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Rényi divergence diverges: geometric-series ratio r = {r} >= 1")]
    Divergent { r: f64 },

    #[error("degenerate hypothesis: both means equal {0}")]
    DegenerateMeans(f64),

    #[error("Fock cutoff too small: tail mass {tail_mass:.3e} exceeds tolerance {tail_tol:.3e}")]
    CutoffTooSmall { tail_mass: f64, tail_tol: f64 },

    #[error("dilation moments disagree with the covariance path by {max_abs:.3e} (tolerance {tol:.3e})")]
    MomentMismatch { max_abs: f64, tol: f64 },

    #[error("support violation: {leaked:.3e} of the first state's mass lies outside the second state's support")]
    SupportViolation { leaked: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("linear algebra backend: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),
}
