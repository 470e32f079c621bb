//! Analytic bound evaluators: the second-order hypothesis-testing expansion
//! and the Cramér-Rao variance floor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::thermal;

/// Standard normal CDF via the error function.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

fn gaussian_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Φ⁻¹(p): Acklam's rational approximation (≈1e-9 absolute by itself)
/// polished by one Newton step against the error function.
pub fn inverse_gaussian_cdf(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "inverse normal CDF needs p in (0,1), got {p}"
        )));
    }
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    Ok(x - (gaussian_cdf(x) - p) / gaussian_pdf(x))
}

/// Second-order expansion of the hypothesis-testing relative entropy:
/// m·d + √(m·v)·Φ⁻¹(ε). The O(ln m) remainder is omitted; acceptance tests
/// fit its constant instead of assuming one.
pub fn second_order_dh(m: u64, d: f64, v: f64, epsilon: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("m must be ≥ 1".into()));
    }
    if !(v >= 0.0) {
        return Err(Error::Domain(format!("variance must be ≥ 0, got {v}")));
    }
    let z = inverse_gaussian_cdf(epsilon)?;
    let m = m as f64;
    Ok(m * d + (m * v).sqrt() * z)
}

/// Cramér-Rao floor on the variance of an unbiased excess-noise estimator
/// after m probe uses: n_b(n_b+1)/m.
pub fn cramer_rao(m: u64, n_b: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("m must be ≥ 1".into()));
    }
    Ok(1.0 / (m as f64 * thermal::qfi_thermal(n_b)?))
}

/// Inputs and outputs of the bound evaluation for one setting.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundReport {
    pub m: u64,
    pub epsilon: f64,
    pub d: f64,
    pub v: f64,
    pub expansion: f64,
    pub cr_variance_floor: Option<f64>,
}
