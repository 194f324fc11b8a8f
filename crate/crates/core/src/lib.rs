//! Tipping-point analysis toolkit for adaptive SIS epidemic networks.
//!
//! The crate is organized around one workflow: simulate the full adaptive
//! network ([`netsis`]), extract coarse variables either from mean-field
//! counts or from a spectral embedding of graph motifs ([`manifold`]),
//! identify an effective SDE from snapshot pairs ([`esde`]), analyze the
//! identified drift with continuation tools ([`dynsys`]), and compute
//! escape-time statistics through the unstable limit cycle ([`escape`]).
//! The three-variable mean-field model lives in [`meanfield`].

pub mod dynsys;
pub mod error;
pub mod escape;
pub mod esde;
pub mod integrate;
pub mod manifold;
pub mod meanfield;
pub mod netsis;
pub mod rng;

pub use error::CoreError;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
