//! Thermal states, the TMSV probe, and the covariance-level action of the
//! thermal (lossy) and amplifier channels.
//!
//! Channel action is implemented directly on covariances via the (X, Y)
//! maps — exact at any occupancy, no cutoff. The Kraus/dilation route lives
//! only in [`crate::fock`], as the independent oracle.

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;

/// Single-mode channel acting at fixed transmissivity/gain with environment
/// occupation `n_b` (the excess noise being discriminated or estimated).
///
/// The variants make "exactly one of η/G" structural. η = 1 and G = 1
/// (identity channel) are allowed here; discrimination-level operations
/// reject the degenerate cases they cannot use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    Thermal { eta: f64, n_b: f64 },
    Amplifier { gain: f64, n_b: f64 },
}

impl ChannelSpec {
    pub fn thermal(eta: f64, n_b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidSpec(format!(
                "transmissivity must lie in [0, 1], got {eta}"
            )));
        }
        if !(n_b >= 0.0) {
            return Err(Error::NegativeNoise(n_b));
        }
        Ok(Self::Thermal { eta, n_b })
    }

    pub fn amplifier(gain: f64, n_b: f64) -> Result<Self> {
        if !(gain >= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "gain must be ≥ 1, got {gain}"
            )));
        }
        if !(n_b >= 0.0) {
            return Err(Error::NegativeNoise(n_b));
        }
        Ok(Self::Amplifier { gain, n_b })
    }

    pub fn n_b(&self) -> f64 {
        match *self {
            Self::Thermal { n_b, .. } | Self::Amplifier { n_b, .. } => n_b,
        }
    }

    /// Same channel, different environment occupation. This is the
    /// one-parameter family the QFI differentiates along.
    pub fn with_n_b(&self, n_b: f64) -> Result<Self> {
        match *self {
            Self::Thermal { eta, .. } => Self::thermal(eta, n_b),
            Self::Amplifier { gain, .. } => Self::amplifier(gain, n_b),
        }
    }

    /// Quadrature scaling x of the (X, Y) covariance action: √η or √G.
    pub(crate) fn quad_scale(&self) -> f64 {
        match *self {
            Self::Thermal { eta, .. } => eta.sqrt(),
            Self::Amplifier { gain, .. } => gain.sqrt(),
        }
    }

    /// Added-noise variance y: (1−η)(n_b + 1/2) or (G−1)(n_b + 1/2).
    pub(crate) fn added_noise(&self) -> f64 {
        match *self {
            Self::Thermal { eta, n_b } => (1.0 - eta) * (n_b + 0.5),
            Self::Amplifier { gain, n_b } => (gain - 1.0) * (n_b + 0.5),
        }
    }
}

/// Probe configuration: TMSV mean photons per arm and number of channel uses.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeSpec {
    pub n_s: f64,
    pub m: u32,
}

impl ProbeSpec {
    pub fn new(n_s: f64, m: u32) -> Result<Self> {
        if !(n_s >= 0.0) {
            return Err(Error::NegativeSqueezing(n_s));
        }
        if m < 1 {
            return Err(Error::InvalidSpec("channel uses m must be ≥ 1".into()));
        }
        Ok(Self { n_s, m })
    }
}

/// Thermal state of mean photon number n_b: cov = (n_b + 1/2)·I₂.
pub fn thermal_state(n_b: f64) -> Result<GaussianState> {
    if !(n_b >= 0.0) {
        return Err(Error::NegativeNoise(n_b));
    }
    let cov = Array2::eye(2) * (n_b + 0.5);
    Ok(GaussianState::from_parts_unchecked(cov, Array1::zeros(2)))
}

/// Two-mode squeezed vacuum with mean photon number n_s per arm; the pure
/// purification of thermal(n_s). Off-diagonal c₀ = √(n_s(n_s+1)), positive
/// in the x block, negative in the p block.
pub fn tmsv(n_s: f64) -> Result<GaussianState> {
    if !(n_s >= 0.0) {
        return Err(Error::NegativeSqueezing(n_s));
    }
    let diag = n_s + 0.5;
    let c0 = (n_s * (n_s + 1.0)).sqrt();
    let mut cov = Array2::zeros((4, 4));
    for i in 0..4 {
        cov[[i, i]] = diag;
    }
    cov[[0, 1]] = c0;
    cov[[1, 0]] = c0;
    cov[[2, 3]] = -c0;
    cov[[3, 2]] = -c0;
    Ok(GaussianState::from_parts_unchecked(cov, Array1::zeros(4)))
}

/// Apply the channel to one mode of a state: cov ← X cov Xᵀ + Y embedded at
/// `mode`, which scales that mode's rows/columns by √η (resp. √G) and adds
/// the noise variance on its diagonal. Cross-covariances with untouched
/// modes pick up one factor of the scale.
pub fn apply_channel(
    state: &GaussianState,
    mode: usize,
    spec: &ChannelSpec,
) -> Result<GaussianState> {
    let n = state.n_modes();
    if mode >= n {
        return Err(Error::IndexOutOfRange {
            index: mode,
            n_modes: n,
        });
    }
    let x = spec.quad_scale();
    let y = spec.added_noise();
    let mut cov = state.cov().clone();
    let mut mean = state.mean().clone();
    for idx in [mode, n + mode] {
        cov.row_mut(idx).mapv_inplace(|v| v * x);
        cov.column_mut(idx).mapv_inplace(|v| v * x);
        cov[[idx, idx]] += y;
        mean[idx] *= x;
    }
    Ok(GaussianState::from_parts_unchecked(cov, mean))
}

/// The pre-measurement probe state: channel acting on the first arm of
/// TMSV(n_s). For the thermal channel its covariance carries the entries
/// a = ηN_S + (1−η)N_B + 1/2 (channel-output mode), b = N_S + 1/2,
/// c = √(ηN_S(N_S+1)); the amplifier analogue replaces η by G and
/// (1−η)N_B by (G−1)(N_B+1).
pub fn probe_output(spec: &ChannelSpec, n_s: f64) -> Result<GaussianState> {
    apply_channel(&tmsv(n_s)?, 0, spec)
}
