//! Variational quantum classifier benchmark for Higgs signal/background
//! discrimination, built on an exact dense statevector simulator.

pub mod bench;
pub mod circuits;
pub mod error;
pub mod optimize;
pub mod preprocess;
pub mod qsim;
pub mod vqc;

pub use error::{Error, Result};
