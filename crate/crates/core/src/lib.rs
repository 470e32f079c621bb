//! Fundamental limits for discriminating and estimating excess noise in
//! thermal and amplifier bosonic Gaussian channels.
//!
//! The library works in the covariance-matrix picture throughout: a zero-mean
//! Gaussian state is a real symmetric matrix in `xx..pp` quadrature ordering
//! with vacuum variance 1/2. On top of that sit
//!
//! - symplectic linear algebra ([`gaussian`]),
//! - channel constructors and the TMSV probe ([`channels`]),
//! - distinguishability measures D, V, F and finite-difference QFI
//!   ([`divergences`]),
//! - closed forms for thermal-state pairs ([`thermal`]),
//! - a truncated Fock-basis oracle that cross-checks every Gaussian-path
//!   formula from first principles ([`fock`]),
//! - the decoupling-symplectic photodetection strategy and an exact
//!   Neyman-Pearson engine for geometric counts ([`strategy`]),
//! - second-order expansion and Cramér-Rao evaluators ([`bounds`]).
//!
//! The binary `noisebound` exposes sweeps and reports over these pieces; see
//! [`cli`].

pub mod bounds;
pub mod channels;
pub mod cli;
pub mod divergences;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod report;
pub mod strategy;
pub mod thermal;
pub mod tol;

pub use error::{Error, Result};
