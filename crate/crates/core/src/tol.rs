//! Every numerical threshold in one place. Nothing else in the crate is
//! allowed an inline magic tolerance.

/// Relative symmetry defect accepted when ingesting a covariance matrix.
pub const COV_SYMMETRY: f64 = 1e-12;

/// Max-norm defect accepted in the symplectic condition S Ω Sᵀ = Ω.
pub const SYMPLECTIC_DEFECT: f64 = 1e-10;

/// Physicality slack: states must satisfy ν ≥ 1/2 − NU_PHYSICAL for every
/// symplectic eigenvalue. Pure modes of exactly-constructed states land a few
/// ulps below 1/2 after an eigensolve.
pub const NU_PHYSICAL: f64 = 1e-10;

/// A mode counts as pure when ν − 1/2 < NU_PURE. Below this, log(ν − 1/2) is
/// dominated by eigensolver noise, so entropy-like terms take their pure-state
/// limits instead of being evaluated.
pub const NU_PURE: f64 = 1e-10;

/// Purity window used by state diagnostics (looser than NU_PURE because it
/// classifies rather than guards a logarithm).
pub const PURITY_WINDOW: f64 = 1e-9;

/// Relative Williamson round-trip residual ‖S V Sᵀ − diag(ν,ν)‖ / ‖V‖.
pub const WILLIAMSON_RESIDUAL: f64 = 1e-9;

/// Covariance condition number beyond which results carry an
/// ill-conditioning diagnostic. At transmissivity 0.5 this corresponds to a
/// probe arm near N_S ~ 1e12, far past any regime exercised here.
pub const ILL_CONDITIONED: f64 = 1e12;

/// Eigenvalues of a Fock density matrix below this floor are treated as
/// outside the support (no logarithm is taken of them).
pub const SPECTRAL_FLOOR: f64 = 1e-14;

/// Mass of the first state allowed to leak outside the second state's
/// numerical support before spectral divergences refuse to answer.
pub const SUPPORT_LEAK: f64 = 1e-10;

/// Max absolute disagreement tolerated between dilation-output moments and
/// the covariance-path probe state, given a tail-gated cutoff.
pub const FOCK_MOMENT: f64 = 1e-5;

/// Agreement demanded between the Gaussian path and the Fock oracle where
/// both are computable (small occupancies).
pub const ORACLE_AGREEMENT: f64 = 1e-5;

/// Relative disagreement between the two finite-difference QFI estimators
/// beyond which the step is rejected as too large.
pub const QFI_ESTIMATOR_SPLIT: f64 = 0.05;

/// Data-processing gap is mathematically ≥ 0; tiny negatives up to this are
/// rounding in the exact-test log sums.
pub const GAP_SLACK: f64 = 1e-9;

/// Assembled type-I error must hit ε this closely (the test randomizes at
/// the threshold, so the size is exact up to summation rounding).
pub const SIZE_EXACTNESS: f64 = 1e-12;
