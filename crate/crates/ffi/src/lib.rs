//! C interface. Handles are opaque heap pointers created and destroyed here;
//! every fallible call returns an [`NbStatus`] and writes its result through
//! out-pointers, leaving them untouched on failure. The message behind the
//! most recent failure is kept per thread and read back with
//! [`nb_last_error_message`].

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use noisebound::bounds;
use noisebound::channels::{probe_output, thermal_state, tmsv, ChannelSpec, ProbeSpec};
use noisebound::divergences;
use noisebound::error::Error;
use noisebound::gaussian::GaussianState;
use noisebound::strategy::{self, StrategySpec};
use noisebound::thermal::{self, ThermalPair};

/// Outcome of a call. Anything but OK leaves a message for
/// [`nb_last_error_message`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NbStatus {
    Ok = 0,
    /// A required pointer argument was NULL, or a buffer had the wrong size.
    NullPointer,
    /// Parameters outside the channel or test domain: η ∉ [0,1], G < 1,
    /// negative occupations, ε ∉ (0,1), hypotheses that coincide.
    InvalidArgument,
    /// The inputs describe no physical Gaussian state, or the requested
    /// quantity needs a full-rank second argument.
    Unphysical,
    /// The quantity is infinite at these inputs (vacuum alternatives and
    /// high Rényi orders).
    Divergent,
    /// A numerical guard tripped: truncation too small, finite-difference
    /// step unusable, tolerance breach.
    Numerical,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember(message: &str, status: NbStatus) -> NbStatus {
    let owned = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
    status
}

fn fail(err: Error) -> NbStatus {
    let status = match err {
        Error::InvalidSpec(_)
        | Error::Config(_)
        | Error::Domain(_)
        | Error::NegativeNoise(_)
        | Error::NegativeSqueezing(_)
        | Error::UnsupportedModeCount(_)
        | Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. } => NbStatus::InvalidArgument,
        Error::NonPositiveDefinite(_)
        | Error::InvalidState(_)
        | Error::SecondArgumentPure { .. } => NbStatus::Unphysical,
        Error::Divergent { .. } => NbStatus::Divergent,
        _ => NbStatus::Numerical,
    };
    remember(&err.to_string(), status)
}

fn null_arg() -> NbStatus {
    remember("required pointer argument was NULL", NbStatus::NullPointer)
}

/// Message for the most recent failure on this thread. Empty string when no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn nb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// A Gaussian channel with fixed transmissivity or gain and environment
/// occupation.
pub struct NbChannel {
    inner: ChannelSpec,
}

/// A zero-mean Gaussian state: mode count plus covariance matrix.
pub struct NbState {
    inner: GaussianState,
}

unsafe fn give<T>(out: *mut *mut T, value: T) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    out.write(Box::into_raw(Box::new(value)));
    NbStatus::Ok
}

/// Lossy thermal channel with transmissivity `eta` in [0,1] and environment
/// mean photon number `n_b` ≥ 0.
///
/// # Safety
/// `out` must be a valid pointer; on OK it receives a handle to release with
/// [`nb_channel_free`].
#[no_mangle]
pub unsafe extern "C" fn nb_channel_thermal(
    eta: f64,
    n_b: f64,
    out: *mut *mut NbChannel,
) -> NbStatus {
    match ChannelSpec::thermal(eta, n_b) {
        Ok(inner) => give(out, NbChannel { inner }),
        Err(e) => fail(e),
    }
}

/// Phase-insensitive amplifier with gain ≥ 1.
///
/// # Safety
/// As [`nb_channel_thermal`].
#[no_mangle]
pub unsafe extern "C" fn nb_channel_amplifier(
    gain: f64,
    n_b: f64,
    out: *mut *mut NbChannel,
) -> NbStatus {
    match ChannelSpec::amplifier(gain, n_b) {
        Ok(inner) => give(out, NbChannel { inner }),
        Err(e) => fail(e),
    }
}

/// Releases a channel handle. NULL is accepted and ignored.
///
/// # Safety
/// `channel` must have come from a constructor in this library and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nb_channel_free(channel: *mut NbChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Single-mode thermal state with mean photon number `n_b`.
///
/// # Safety
/// `out` must be valid; on OK it receives a handle to release with
/// [`nb_state_free`].
#[no_mangle]
pub unsafe extern "C" fn nb_state_thermal(n_b: f64, out: *mut *mut NbState) -> NbStatus {
    match thermal_state(n_b) {
        Ok(inner) => give(out, NbState { inner }),
        Err(e) => fail(e),
    }
}

/// Two-mode squeezed vacuum with per-arm mean photon number `n_s`.
///
/// # Safety
/// As [`nb_state_thermal`].
#[no_mangle]
pub unsafe extern "C" fn nb_state_tmsv(n_s: f64, out: *mut *mut NbState) -> NbStatus {
    match tmsv(n_s) {
        Ok(inner) => give(out, NbState { inner }),
        Err(e) => fail(e),
    }
}

/// Output of sending one arm of a TMSV probe with energy `n_s` through the
/// channel, the other arm kept ideal: a two-mode state.
///
/// # Safety
/// `channel` must be a live channel handle; `out` as in
/// [`nb_state_thermal`].
#[no_mangle]
pub unsafe extern "C" fn nb_probe_output(
    channel: *const NbChannel,
    n_s: f64,
    out: *mut *mut NbState,
) -> NbStatus {
    if channel.is_null() {
        return null_arg();
    }
    match probe_output(&(*channel).inner, n_s) {
        Ok(inner) => give(out, NbState { inner }),
        Err(e) => fail(e),
    }
}

/// Releases a state handle. NULL is accepted and ignored.
///
/// # Safety
/// `state` must have come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nb_state_free(state: *mut NbState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of modes of a state.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_state_mode_count(
    state: *const NbState,
    out: *mut usize,
) -> NbStatus {
    if state.is_null() || out.is_null() {
        return null_arg();
    }
    out.write((*state).inner.n_modes());
    NbStatus::Ok
}

/// Copies the covariance matrix, row major in (x_1..x_n, p_1..p_n) ordering
/// with vacuum variance 1/2, into `buf`. `len` must be exactly (2n)² for an
/// n-mode state.
///
/// # Safety
/// `state` must be live and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nb_state_covariance(
    state: *const NbState,
    buf: *mut f64,
    len: usize,
) -> NbStatus {
    if state.is_null() || buf.is_null() {
        return null_arg();
    }
    let cov = (*state).inner.cov();
    if len != cov.len() {
        return remember(
            &format!("covariance needs a buffer of {} doubles, got {len}", cov.len()),
            NbStatus::NullPointer,
        );
    }
    let dst = std::slice::from_raw_parts_mut(buf, len);
    for (slot, &x) in dst.iter_mut().zip(cov.iter()) {
        *slot = x;
    }
    NbStatus::Ok
}

unsafe fn pairwise(
    a: *const NbState,
    b: *const NbState,
    out: *mut f64,
    f: impl Fn(&GaussianState, &GaussianState) -> Result<f64, Error>,
) -> NbStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return null_arg();
    }
    match f(&(*a).inner, &(*b).inner) {
        Ok(v) => {
            out.write(v);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Umegaki relative entropy D(a‖b) in nats.
///
/// # Safety
/// All pointers must be valid; the states must have equal mode counts.
#[no_mangle]
pub unsafe extern "C" fn nb_relative_entropy(
    a: *const NbState,
    b: *const NbState,
    out: *mut f64,
) -> NbStatus {
    pairwise(a, b, out, |x, y| divergences::relative_entropy(x, y))
}

/// Relative entropy variance V(a‖b) in nats².
///
/// # Safety
/// As [`nb_relative_entropy`].
#[no_mangle]
pub unsafe extern "C" fn nb_relative_entropy_variance(
    a: *const NbState,
    b: *const NbState,
    out: *mut f64,
) -> NbStatus {
    pairwise(a, b, out, |x, y| divergences::relative_entropy_variance(x, y))
}

/// Uhlmann fidelity F(a,b) ∈ [0,1].
///
/// # Safety
/// As [`nb_relative_entropy`].
#[no_mangle]
pub unsafe extern "C" fn nb_fidelity(
    a: *const NbState,
    b: *const NbState,
    out: *mut f64,
) -> NbStatus {
    pairwise(a, b, out, |x, y| divergences::fidelity(x, y))
}

/// Closed-form D, V, F between single-mode thermal states of means `n1`, `n2`.
///
/// # Safety
/// The out pointers must each be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_thermal_divergences(
    n1: f64,
    n2: f64,
    d: *mut f64,
    v: *mut f64,
    f: *mut f64,
) -> NbStatus {
    if d.is_null() || v.is_null() || f.is_null() {
        return null_arg();
    }
    let pair = match ThermalPair::new(n1, n2) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    match thermal::thermal_divergences(pair) {
        Ok(r) => {
            d.write(r.d);
            v.write(r.v);
            f.write(r.f);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Petz-Rényi divergence of order `alpha` between thermal states.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_renyi_thermal(
    alpha: f64,
    n1: f64,
    n2: f64,
    out: *mut f64,
) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    let result = ThermalPair::new(n1, n2).and_then(|pair| thermal::renyi_thermal(alpha, pair));
    match result {
        Ok(v) => {
            out.write(v);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Quantum Fisher information for estimating the mean photon number of a
/// thermal state: 1/(n_b(n_b+1)).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_qfi_thermal(n_b: f64, out: *mut f64) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    match thermal::qfi_thermal(n_b) {
        Ok(v) => {
            out.write(v);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Optimal randomized threshold test on the total count of m geometric
/// observations, discriminating mean `n1` from `n2` at type-I budget ε.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NbBinaryTest {
    /// −ln β at the optimum.
    pub dh: f64,
    pub log_beta: f64,
    /// Count threshold on the total.
    pub threshold: u64,
    /// Acceptance probability exactly at the threshold.
    pub randomization: f64,
    /// Nonzero when the acceptance region is total < threshold.
    pub accept_below: bool,
    /// Exact type-I error the test achieves.
    pub size: f64,
}

/// Exact Neyman-Pearson test for m-copy thermal discrimination.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_exact_binary_test(
    m: u64,
    n1: f64,
    n2: f64,
    epsilon: f64,
    out: *mut NbBinaryTest,
) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    match strategy::exact_binary_test(m, n1, n2, epsilon) {
        Ok(t) => {
            out.write(NbBinaryTest {
                dh: t.dh,
                log_beta: t.log_beta,
                threshold: t.threshold,
                randomization: t.randomization,
                accept_below: t.accept_below,
                size: t.size,
            });
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Photon-counting strategy versus the environment benchmark at one probe
/// energy. All error quantities in nats.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NbStrategyReport {
    /// Counted-mode mean under either hypothesis.
    pub n_eff_1: f64,
    pub n_eff_2: f64,
    /// −ln β of the counting strategy.
    pub dh_strategy: f64,
    /// −ln β of the exact test on the environment pair.
    pub dh_environment: f64,
    /// Second-order expansion of the environment benchmark.
    pub second_order: f64,
    /// dh_environment − dh_strategy, nonnegative up to roundoff.
    pub gap: f64,
}

/// Full strategy-versus-bound comparison: the channels must share their
/// fixed parameter and differ only in environment occupation.
///
/// # Safety
/// `c1` and `c2` must be live channel handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn nb_bound_gap(
    c1: *const NbChannel,
    c2: *const NbChannel,
    n_s: f64,
    m: u32,
    epsilon: f64,
    out: *mut NbStrategyReport,
) -> NbStatus {
    if c1.is_null() || c2.is_null() || out.is_null() {
        return null_arg();
    }
    let run = || -> Result<strategy::StrategyResult, Error> {
        let probe = ProbeSpec::new(n_s, m)?;
        let spec = StrategySpec::new((*c1).inner.clone(), (*c2).inner.clone(), probe, epsilon)?;
        strategy::bound_gap_report(&spec, n_s)
    };
    match run() {
        Ok(r) => {
            out.write(NbStrategyReport {
                n_eff_1: r.n_eff_1,
                n_eff_2: r.n_eff_2,
                dh_strategy: r.dh_strategy,
                dh_environment: r.dh_environment,
                second_order: r.second_order,
                gap: r.gap,
            });
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Mean photon number of the counted mode after the decoupling symplectic,
/// at environment occupation `n_b`.
///
/// # Safety
/// `channel` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn nb_effective_thermal_mean(
    channel: *const NbChannel,
    n_s: f64,
    n_b: f64,
    out: *mut f64,
) -> NbStatus {
    if channel.is_null() || out.is_null() {
        return null_arg();
    }
    match strategy::effective_thermal_mean(&(*channel).inner, n_s, n_b) {
        Ok(v) => {
            out.write(v);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Second-order expansion m·d + √(m·v)·Φ⁻¹(ε) of the hypothesis-testing
/// relative entropy.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_second_order_dh(
    m: u64,
    d: f64,
    v: f64,
    epsilon: f64,
    out: *mut f64,
) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    match bounds::second_order_dh(m, d, v, epsilon) {
        Ok(x) => {
            out.write(x);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Cramér-Rao floor n_b(n_b+1)/m on the variance of an unbiased
/// excess-noise estimator.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nb_cramer_rao(m: u64, n_b: f64, out: *mut f64) -> NbStatus {
    if out.is_null() {
        return null_arg();
    }
    match bounds::cramer_rao(m, n_b) {
        Ok(x) => {
            out.write(x);
            NbStatus::Ok
        }
        Err(e) => fail(e),
    }
}
