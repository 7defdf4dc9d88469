//! Screening of coupled long/short-wave systems for integrability.
//!
//! A system is given by two polynomial dispersion laws. For each
//! resonance process the crate samples the resonance manifold, evaluates the
//! interaction coefficient where one is known, decides numerically whether the
//! manifold is degenerate, and combines both into a verdict.

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficients;
pub mod config;
pub mod degeneracy;
pub mod dispersion;
pub mod error;
pub mod poly;
pub mod report;
pub mod resonance;
pub mod roots;

pub use config::Config;
pub use dispersion::{make_system, Branch, DispersionLaw, SystemId, SystemParams, WaveSystem};
pub use error::{Error, Result};
pub use resonance::{ManifoldPoint, ProcessId, ResonanceProcess};
