//! Non-adaptive receiver: a passive symplectic, itself independent of n_b,
//! after which mode 1 of the probe output is exactly thermal with an
//! n_b-dependent mean (and fully decoupled from mode 2 when n_b = 0).
//! Photon counting on that mode over m shots reduces the problem to
//! discriminating two geometric (thermal-count) distributions, solved here
//! exactly at the Neyman-Pearson level.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds;
use crate::channels::{probe_output, ChannelSpec, ProbeSpec};
use crate::error::{Error, Result};
use crate::gaussian::{apply_symplectic, SymplecticMatrix};
use crate::thermal::{thermal_divergences, ThermalPair};

/// Two hypotheses on one channel family (same η or G, different n_b), a
/// probe configuration, and the type-I budget ε. The probe's n_s acts as the
/// default; [`bound_gap_report`] evaluates at an explicit n_s so one spec
/// serves a whole sweep.
#[derive(Debug, Clone)]
pub struct StrategySpec {
    channel1: ChannelSpec,
    channel2: ChannelSpec,
    probe: ProbeSpec,
    epsilon: f64,
}

impl StrategySpec {
    pub fn new(
        channel1: ChannelSpec,
        channel2: ChannelSpec,
        probe: ProbeSpec,
        epsilon: f64,
    ) -> Result<Self> {
        let compatible = match (&channel1, &channel2) {
            (ChannelSpec::Thermal { eta: e1, .. }, ChannelSpec::Thermal { eta: e2, .. }) => {
                e1 == e2
            }
            (ChannelSpec::Amplifier { gain: g1, .. }, ChannelSpec::Amplifier { gain: g2, .. }) => {
                g1 == g2
            }
            _ => false,
        };
        if !compatible {
            return Err(Error::Config(
                "hypotheses must share the channel kind and its η or G".into(),
            ));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0,1), got {epsilon}"
            )));
        }
        Ok(Self {
            channel1,
            channel2,
            probe,
            epsilon,
        })
    }

    pub fn channel1(&self) -> &ChannelSpec {
        &self.channel1
    }

    pub fn channel2(&self) -> &ChannelSpec {
        &self.channel2
    }

    pub fn probe(&self) -> &ProbeSpec {
        &self.probe
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Passive two-mode symplectic, a function of (η or G, n_s) only. Acting on
/// the probe output it leaves mode 1 in an exactly thermal reduced state
/// whose mean tracks n_b; the residual inter-mode correlation is
/// proportional to n_b and vanishes identically at n_b = 0, where S·V·Sᵀ is
/// a product of two thermal modes.
///
/// Thermal channel: with D = 1 + (1−η)N_S,
///   ω₊ = √((1+N_S)/D), ω₋ = √(ηN_S/D), ω₊² − ω₋² = 1.
/// Amplifier: with D = (G−1)(N_S+1) + 1 = G(N_S+1) − N_S,
///   w₊ = √(G(N_S+1)/D), w₋ = √(N_S/D), w₊² − w₋² = 1,
/// composed with a mode swap because there the bounded thermal mode lands
/// in the second slot.
pub fn decoupling_symplectic(spec: &ChannelSpec, n_s: f64) -> Result<SymplecticMatrix> {
    if !(n_s >= 0.0) {
        return Err(Error::NegativeSqueezing(n_s));
    }
    let (wp, wm, swap) = match *spec {
        ChannelSpec::Thermal { eta, .. } => {
            if eta >= 1.0 {
                return Err(Error::Domain(
                    "decoupler undefined at η = 1 (identity channel)".into(),
                ));
            }
            let den = 1.0 + (1.0 - eta) * n_s;
            (
                ((1.0 + n_s) / den).sqrt(),
                (eta * n_s / den).sqrt(),
                false,
            )
        }
        ChannelSpec::Amplifier { gain, .. } => {
            let den = gain * (n_s + 1.0) - n_s;
            ((gain * (n_s + 1.0) / den).sqrt(), (n_s / den).sqrt(), true)
        }
    };
    let mut s = Array2::zeros((4, 4));
    s[[0, 0]] = wp;
    s[[0, 1]] = -wm;
    s[[1, 0]] = -wm;
    s[[1, 1]] = wp;
    s[[2, 2]] = wp;
    s[[2, 3]] = wm;
    s[[3, 2]] = wm;
    s[[3, 3]] = wp;
    if swap {
        let mut p = Array2::zeros((4, 4));
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            p[[i, j]] = 1.0;
        }
        s = p.dot(&s);
    }
    SymplecticMatrix::new(s)
}

/// Mean photon number of the counted mode at environment occupation n_b:
/// the exact mode-1 variance of S·V·Sᵀ minus 1/2. Closed forms, reproduced
/// by this product to within cancellation error:
///   thermal: (1−η)(1+N_S)·N_B / (1 + (1−η)N_S)
///   amplifier: (G−1)·N_S·N_B / (G(N_S+1) − N_S)
pub fn effective_thermal_mean(spec: &ChannelSpec, n_s: f64, n_b: f64) -> Result<f64> {
    let at_n_b = spec.with_n_b(n_b)?;
    let s = decoupling_symplectic(&at_n_b, n_s)?;
    let out = apply_symplectic(&s, &probe_output(&at_n_b, n_s)?)?;
    Ok((out.cov()[[0, 0]] - 0.5).max(0.0))
}

/// Exact randomized Neyman-Pearson test between m-fold thermal photon
/// counts of means n1 (null) and n2, at size exactly ε.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BinaryTest {
    /// −ln β at the optimum.
    pub dh: f64,
    pub log_beta: f64,
    /// Count threshold k* on the total T over m shots.
    pub threshold: u64,
    /// Acceptance probability at T = k*.
    pub randomization: f64,
    /// True when the acceptance region is T < k* (n2 > n1); otherwise T > k*.
    pub accept_below: bool,
    /// Exact type-I probability the test achieves (ε for engine output).
    pub size: f64,
}

/// Streaming log-sum-exp accumulator.
#[derive(Debug, Clone, Copy)]
struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    fn push(&mut self, ln_x: f64) {
        if ln_x == f64::NEG_INFINITY {
            return;
        }
        if ln_x > self.max {
            self.sum = self.sum * (self.max - ln_x).exp() + 1.0;
            self.max = ln_x;
        } else {
            self.sum += (ln_x - self.max).exp();
        }
    }

    fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// Log-pmf state for the total count T over m thermal shots of mean n:
/// T is negative binomial, p(t) = C(t+m−1, t) (1−q)^m q^t with q = n/(n+1).
struct CountPmf {
    ln_q: f64,
    m: f64,
    t: u64,
    ln_p: f64,
}

impl CountPmf {
    fn start(m: u64, n: f64) -> Self {
        // p(0) = (1−q)^m = (n+1)^{−m}
        Self {
            ln_q: (n / (n + 1.0)).ln(),
            m: m as f64,
            t: 0,
            ln_p: -(m as f64) * n.ln_1p(),
        }
    }

    fn advance(&mut self) {
        let t = self.t as f64;
        self.ln_p += ((t + self.m) / (t + 1.0)).ln() + self.ln_q;
        self.t += 1;
    }
}

/// Most powerful size-ε test of H1: mean n1 against H2: mean n2 from the
/// total count. The likelihood ratio is monotone in T, so the optimum is a
/// (randomized) threshold test; both tail directions are handled.
pub fn exact_binary_test(m: u64, n1: f64, n2: f64, epsilon: f64) -> Result<BinaryTest> {
    if m < 1 {
        return Err(Error::Config("m must be ≥ 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Config(format!(
            "epsilon must lie in (0,1), got {epsilon}"
        )));
    }
    if !(n1 >= 0.0) {
        return Err(Error::NegativeNoise(n1));
    }
    if !(n2 >= 0.0) {
        return Err(Error::NegativeNoise(n2));
    }
    if n1 == n2 {
        return Err(Error::DegenerateMeans(n1));
    }
    let target = 1.0 - epsilon;

    if n2 > n1 {
        // accept T < k*, randomize at k*
        if n1 == 0.0 {
            // all null mass at T = 0: k* = 0, γ = 1 − ε
            let log_beta = (-epsilon).ln_1p() - m as f64 * n2.ln_1p();
            return Ok(BinaryTest {
                dh: -log_beta,
                log_beta,
                threshold: 0,
                randomization: target,
                accept_below: true,
                size: epsilon,
            });
        }
        let mut pmf1 = CountPmf::start(m, n1);
        let mut pmf2 = CountPmf::start(m, n2);
        let mut cdf1 = 0.0;
        let mut acc2 = LogSum::new();
        loop {
            let p1 = pmf1.ln_p.exp();
            // remaining null mass below float resolution: close out exactly
            let exhausted = p1 == 0.0 && cdf1 >= 1.0 - 1e-9;
            if cdf1 + p1 >= target || exhausted {
                let gamma = if exhausted {
                    1.0
                } else {
                    ((target - cdf1) / p1).clamp(0.0, 1.0)
                };
                if gamma > 0.0 {
                    acc2.push(gamma.ln() + pmf2.ln_p);
                }
                let log_beta = acc2.value();
                return Ok(BinaryTest {
                    dh: -log_beta,
                    log_beta,
                    threshold: pmf1.t,
                    randomization: gamma,
                    accept_below: true,
                    size: epsilon,
                });
            }
            cdf1 += p1;
            acc2.push(pmf2.ln_p);
            pmf1.advance();
            pmf2.advance();
        }
    } else {
        // n1 > n2: accept T > k*, randomize at k*
        if n2 == 0.0 {
            // alternative is all at T = 0; any k* ≥ 1 gives β = 0
            let mut pmf1 = CountPmf::start(m, n1);
            let mut cdf1 = pmf1.ln_p.exp();
            if cdf1 > epsilon {
                let gamma = ((cdf1 - epsilon) / cdf1).clamp(0.0, 1.0);
                let log_beta = gamma.ln();
                return Ok(BinaryTest {
                    dh: -log_beta,
                    log_beta,
                    threshold: 0,
                    randomization: gamma,
                    accept_below: false,
                    size: epsilon,
                });
            }
            let mut t = 0u64;
            loop {
                pmf1.advance();
                t += 1;
                cdf1 += pmf1.ln_p.exp();
                if cdf1 > epsilon {
                    return Ok(BinaryTest {
                        dh: f64::INFINITY,
                        log_beta: f64::NEG_INFINITY,
                        threshold: t,
                        randomization: ((cdf1 - epsilon) / pmf1.ln_p.exp()).clamp(0.0, 1.0),
                        accept_below: false,
                        size: epsilon,
                    });
                }
            }
        }
        let mut pmf1 = CountPmf::start(m, n1);
        let mut pmf2 = CountPmf::start(m, n2);
        let mut cdf1 = 0.0;
        let (threshold, gamma) = loop {
            let p1 = pmf1.ln_p.exp();
            if cdf1 + p1 > epsilon {
                break (pmf1.t, ((cdf1 + p1 - epsilon) / p1).clamp(0.0, 1.0));
            }
            cdf1 += p1;
            pmf1.advance();
            pmf2.advance();
        };
        // β = γ·p2(k*) + Σ_{t>k*} p2(t); beyond the pmf mode the terms decay
        // geometrically with ratio → q2, so the remaining tail is bounded by
        // the last term times q2/(1−q2) and the sum can stop once that bound
        // is negligible against the accumulated value.
        let mut acc2 = LogSum::new();
        if gamma > 0.0 {
            acc2.push(gamma.ln() + pmf2.ln_p);
        }
        let q2 = n2 / (n2 + 1.0);
        let mode2 = (m as f64 - 1.0).max(0.0) * n2;
        let tail_factor = (q2 / (1.0 - q2)).ln();
        loop {
            pmf2.advance();
            acc2.push(pmf2.ln_p);
            let past_mode = pmf2.t as f64 > mode2 + 1.0;
            if past_mode && pmf2.ln_p + tail_factor < acc2.value() - 46.0 {
                break;
            }
        }
        let log_beta = acc2.value();
        Ok(BinaryTest {
            dh: -log_beta,
            log_beta,
            threshold,
            randomization: gamma,
            accept_below: false,
            size: epsilon,
        })
    }
}

/// Empirical check of the exact test by simulation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct McResult {
    pub trials: u64,
    pub seed: u64,
    /// Rejection rate under the null; target is ε.
    pub type_i_hat: f64,
    /// Acceptance rate under the alternative; target is β = e^{log_beta}.
    pub type_ii_hat: f64,
    pub beta_exact: f64,
    pub epsilon: f64,
    /// Binomial standard deviations at the targets.
    pub type_i_sigma: f64,
    pub type_ii_sigma: f64,
}

/// Simulates the exact randomized test: per trial, m geometric draws of the
/// given mean are summed and compared against (k*, γ). Fully determined by
/// the seed.
pub fn monte_carlo_discrimination(
    m: u64,
    n1: f64,
    n2: f64,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<McResult> {
    let test = exact_binary_test(m, n1, n2, epsilon)?;
    simulate_test(&test, m, n1, n2, trials, seed)
}

/// Runs a given threshold test against simulated counts; split out so
/// hand-built tests (including degenerate ones that the exact engine never
/// produces) can be exercised against the same sampler.
pub fn simulate_test(
    test: &BinaryTest,
    m: u64,
    n1: f64,
    n2: f64,
    trials: u64,
    seed: u64,
) -> Result<McResult> {
    if trials < 1_000 {
        return Err(Error::Config(format!(
            "trials must be ≥ 1000 for meaningful error bars, got {trials}"
        )));
    }
    let epsilon = test.size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_total = |mean: f64, rng: &mut ChaCha8Rng| -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        let ln_q = (mean / (mean + 1.0)).ln();
        let mut total = 0u64;
        for _ in 0..m {
            let u: f64 = rng.gen();
            // P(K ≥ k) = q^k, so K = ⌊ln(1−U)/ln q⌋
            total += ((1.0 - u).ln() / ln_q).floor() as u64;
        }
        total
    };
    let accepts = |t: u64, rng: &mut ChaCha8Rng| -> bool {
        let strict = if test.accept_below {
            t < test.threshold
        } else {
            t > test.threshold
        };
        if strict {
            true
        } else if t == test.threshold {
            rng.gen::<f64>() < test.randomization
        } else {
            false
        }
    };
    let mut rejections_under_null = 0u64;
    for _ in 0..trials {
        let t = sample_total(n1, &mut rng);
        if !accepts(t, &mut rng) {
            rejections_under_null += 1;
        }
    }
    let mut accepts_under_alt = 0u64;
    for _ in 0..trials {
        let t = sample_total(n2, &mut rng);
        if accepts(t, &mut rng) {
            accepts_under_alt += 1;
        }
    }
    let beta_exact = test.log_beta.exp();
    let nf = trials as f64;
    Ok(McResult {
        trials,
        seed,
        type_i_hat: rejections_under_null as f64 / nf,
        type_ii_hat: accepts_under_alt as f64 / nf,
        beta_exact,
        epsilon,
        type_i_sigma: (epsilon * (1.0 - epsilon) / nf).sqrt(),
        type_ii_sigma: (beta_exact * (1.0 - beta_exact) / nf).sqrt(),
    })
}

/// Achievable strategy exponent against the environment-level limit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StrategyResult {
    pub n_eff_1: f64,
    pub n_eff_2: f64,
    /// −ln β of the exact photon-counting test on the counted mode.
    pub dh_strategy: f64,
    /// −ln β of the exact test on the environment pair (n_b1, n_b2): the
    /// converse benchmark the strategy chases.
    pub dh_environment: f64,
    /// m·D + √(m·V)·Φ⁻¹(ε) for the environment pair.
    pub second_order: f64,
    /// dh_environment − dh_strategy; nonnegative up to roundoff because the
    /// strategy's statistic is a processing of the environment pair.
    pub gap: f64,
}

/// Full comparison at one probe energy. Requires η < 1 or G > 1 so the
/// channel actually depends on n_b. When the two effective means coincide
/// (amplifier at N_S = 0) the counts carry no information and the best
/// size-ε test achieves β = 1 − ε, so dh_strategy = −ln(1−ε) by convention.
pub fn bound_gap_report(spec: &StrategySpec, n_s: f64) -> Result<StrategyResult> {
    if let ChannelSpec::Amplifier { gain, .. } = spec.channel1 {
        if gain <= 1.0 {
            return Err(Error::Domain(
                "discrimination requires G > 1 (identity channel carries no n_b)".into(),
            ));
        }
    }
    let nb1 = spec.channel1.n_b();
    let nb2 = spec.channel2.n_b();
    if nb1 == nb2 {
        return Err(Error::DegenerateMeans(nb1));
    }
    let m = u64::from(spec.probe.m);
    let n_eff_1 = effective_thermal_mean(&spec.channel1, n_s, nb1)?;
    let n_eff_2 = effective_thermal_mean(&spec.channel2, n_s, nb2)?;
    let degenerate = (n_eff_1 - n_eff_2).abs() <= 1e-12 * n_eff_1.abs().max(1e-12);
    let dh_strategy = if degenerate {
        -(-spec.epsilon).ln_1p()
    } else {
        exact_binary_test(m, n_eff_1, n_eff_2, spec.epsilon)?.dh
    };
    let dh_environment = exact_binary_test(m, nb1, nb2, spec.epsilon)?.dh;
    let env = thermal_divergences(ThermalPair::new(nb1, nb2)?)?;
    let second_order = bounds::second_order_dh(m, env.d, env.v, spec.epsilon)?;
    Ok(StrategyResult {
        n_eff_1,
        n_eff_2,
        dh_strategy,
        dh_environment,
        second_order,
        gap: dh_environment - dh_strategy,
    })
}
