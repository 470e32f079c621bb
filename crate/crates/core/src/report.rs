//! Reporting value types shared by the library surface and the CLI.

use serde::Serialize;

/// Which computational path produced a set of divergence values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Gaussian,
    FockOracle,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    Nats,
    Bits,
}

/// Relative entropy D, relative entropy variance V, fidelity F between a
/// fixed pair of states. D and V carry the log base; F is base-free.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergenceReport {
    pub d: f64,
    pub v: f64,
    pub f: f64,
    pub method: Method,
    pub log_base: LogBase,
}

impl DivergenceReport {
    pub fn nats(d: f64, v: f64, f: f64, method: Method) -> Self {
        Self {
            d,
            v,
            f,
            method,
            log_base: LogBase::Nats,
        }
    }

    /// Rescale to the requested base. D divides by ln 2, V by ln²2 (it is a
    /// variance of a log quantity), F is untouched.
    pub fn in_base(self, base: LogBase) -> Self {
        match (self.log_base, base) {
            (LogBase::Nats, LogBase::Bits) => {
                let ln2 = std::f64::consts::LN_2;
                Self {
                    d: self.d / ln2,
                    v: self.v / (ln2 * ln2),
                    f: self.f,
                    method: self.method,
                    log_base: LogBase::Bits,
                }
            }
            (LogBase::Bits, LogBase::Nats) => {
                let ln2 = std::f64::consts::LN_2;
                Self {
                    d: self.d * ln2,
                    v: self.v * (ln2 * ln2),
                    f: self.f,
                    method: self.method,
                    log_base: LogBase::Nats,
                }
            }
            _ => self,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_conversion_round_trips() {
        let r = DivergenceReport::nats(0.7, 0.3, 0.9, Method::Gaussian);
        let bits = r.in_base(LogBase::Bits);
        let ln2 = std::f64::consts::LN_2;
        assert!((bits.d * ln2 - r.d).abs() < 1e-15);
        assert!((bits.v * ln2 * ln2 - r.v).abs() < 1e-15);
        assert_eq!(bits.f, r.f);
        let back = bits.in_base(LogBase::Nats);
        assert!((back.d - r.d).abs() < 1e-15 && (back.v - r.v).abs() < 1e-15);
        // same-base conversion is the identity
        assert_eq!(r.in_base(LogBase::Nats).d, r.d);
    }
}
