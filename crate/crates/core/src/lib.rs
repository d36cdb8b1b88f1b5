//! Hyperbolic metric machinery and deterministic, sampled verification of
//! Schwarz–Pick type contraction inequalities.

pub mod ball;
pub mod catalog;
pub mod cli;
pub mod conformal;
pub mod disk;
pub mod error;
pub mod format;
pub mod ode;
pub mod quadrature;
pub mod suite;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
