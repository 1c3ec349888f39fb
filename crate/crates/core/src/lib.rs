//! Simulation and verification of time- and polarization-resolved
//! multiboson correlation sampling through random linear interferometers.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: complex matrices, permanents, Haar unitaries, embeddings.
//! - [`photon`]: single-photon spectra, temporal amplitudes and overlaps.
//! - [`dist`]: time grids, detection events and exact event probabilities.
//! - [`sampler`]: exact sampling, empirical statistics and distances.

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dist;
pub mod error;
pub mod linalg;
pub mod photon;
pub mod sampler;

pub use error::{Error, Result};
pub use num_complex::Complex64;
