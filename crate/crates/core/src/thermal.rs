//! Closed-form divergences between single-mode thermal states. These are the
//! environment-side quantities that every Gaussian-path value converges to in
//! the high-squeezing limit, and the inputs to the second-order expansion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{DivergenceReport, Method};

/// A pair of thermal occupations (N₁ for the true state, N₂ for the
/// alternative).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThermalPair {
    pub n1: f64,
    pub n2: f64,
}

impl ThermalPair {
    pub fn new(n1: f64, n2: f64) -> Result<Self> {
        if !(n1 >= 0.0) {
            return Err(Error::NegativeNoise(n1));
        }
        if !(n2 >= 0.0) {
            return Err(Error::NegativeNoise(n2));
        }
        Ok(Self { n1, n2 })
    }
}

/// g(x, y) = (x+1)·ln(y+1) − x·ln y. With y = x this is the entropy of a
/// thermal mode; the mixed form carries the cross terms of thermal relative
/// entropy. g(0,0) = 0 by the x·ln x limit.
pub fn g(x: f64, y: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 {
        return Err(Error::Domain(format!("g needs nonnegative arguments, got ({x}, {y})")));
    }
    if y == 0.0 {
        if x == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::Domain(format!("g({x}, 0) diverges: −x·ln y term")));
    }
    Ok((x + 1.0) * y.ln_1p() - x * y.ln())
}

/// D(θ(n1)‖θ(n2)) = −g(n1,n1) + g(n1,n2), regrouped into two ln1p terms so
/// nearby occupations don't cancel: (n1+1)ln1p(Δ/(n1+1)) − n1·ln1p(Δ/n1).
fn d_thermal(n1: f64, n2: f64) -> Result<f64> {
    if n2 == 0.0 && n1 > 0.0 {
        return Err(Error::Domain(
            "relative entropy against the vacuum diverges for a mixed state".into(),
        ));
    }
    if n1 == n2 {
        return Ok(0.0);
    }
    let delta = n2 - n1;
    let first = (n1 + 1.0) * (delta / (n1 + 1.0)).ln_1p();
    let second = if n1 == 0.0 {
        0.0
    } else {
        n1 * (delta / n1).ln_1p()
    };
    Ok((first - second).max(0.0))
}

/// V(θ(n1)‖θ(n2)) = n1(n1+1)·ln²((1+1/n1)/(1+1/n2)); the log collapses to
/// ln1p((n2−n1)/(n1(n2+1))), again cancellation-free. v(0, ·) = 0 by limit.
fn v_thermal(n1: f64, n2: f64) -> Result<f64> {
    if n1 == 0.0 {
        return Ok(0.0);
    }
    if n2 == 0.0 {
        return Err(Error::Domain(
            "relative entropy variance against the vacuum diverges".into(),
        ));
    }
    let log_ratio = ((n2 - n1) / (n1 * (n2 + 1.0))).ln_1p();
    Ok(n1 * (n1 + 1.0) * log_ratio * log_ratio)
}

/// F(θ(n1), θ(n2)) = [√((n1+1)(n2+1)) − √(n1·n2)]^{−2}.
fn f_thermal(n1: f64, n2: f64) -> f64 {
    let root = ((n1 + 1.0) * (n2 + 1.0)).sqrt() - (n1 * n2).sqrt();
    1.0 / (root * root)
}

/// All three closed forms for a thermal pair, in nats.
pub fn thermal_divergences(pair: ThermalPair) -> Result<DivergenceReport> {
    let d = d_thermal(pair.n1, pair.n2)?;
    let v = v_thermal(pair.n1, pair.n2)?;
    let f = f_thermal(pair.n1, pair.n2);
    Ok(DivergenceReport::nats(d, v, f, Method::ClosedForm))
}

/// Rényi divergence of order α between thermal states. Their eigenbases
/// coincide (number basis), so this is the classical Rényi divergence of two
/// geometric distributions and the Petz and sandwiched families agree; one
/// value serves both. Requires r = (n1/(n1+1))^α (n2/(n2+1))^{1−α} < 1.
pub fn renyi_thermal(alpha: f64, pair: ThermalPair) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Rényi order must lie in (0,1)∪(1,∞), got {alpha}"
        )));
    }
    let ThermalPair { n1, n2 } = pair;
    if n1 == n2 {
        return Ok(0.0);
    }
    // ln(n/(n+1)) = −ln1p(1/n); occupation 0 sends the factor to 0^power
    let r = if n1 == 0.0 {
        // 0^α = 0 for α > 0, unless the n2 factor diverges faster — it cannot,
        // since n2 > 0 here (n1 ≠ n2)
        0.0
    } else if n2 == 0.0 {
        if alpha > 1.0 {
            return Err(Error::Divergent { r: f64::INFINITY });
        }
        0.0
    } else {
        (-alpha * (1.0 / n1).ln_1p() - (1.0 - alpha) * (1.0 / n2).ln_1p()).exp()
    };
    if r >= 1.0 {
        return Err(Error::Divergent { r });
    }
    let log_num = -alpha * n1.ln_1p() + (alpha - 1.0) * n2.ln_1p();
    Ok((log_num - (-r).ln_1p()) / (alpha - 1.0))
}

/// Quantum Fisher information for the excess noise of a thermal state:
/// 1/(n_b(n_b+1)). Diverges as n_b → 0 (vacuum is perfectly distinguishable
/// from any noise at first order).
pub fn qfi_thermal(n_b: f64) -> Result<f64> {
    if !(n_b > 0.0) {
        return Err(Error::Domain(format!(
            "thermal QFI defined for n_b > 0, got {n_b}"
        )));
    }
    Ok(1.0 / (n_b * (n_b + 1.0)))
}
