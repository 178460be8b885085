//! Numerical laboratory for number coherent states of the Heisenberg-Weyl
//! and SU(1,1) groups, the Landau-level problem in the Landau and symmetric
//! gauges, and the contraction of su(1,1) onto the oscillator algebra.
//!
//! Closed-form expressions are always paired with an independent
//! truncated-matrix construction so that each can be checked against the
//! other; see [`verify`] for the assembled suite.

pub mod errata;
pub mod error;

pub mod cli;
pub mod contraction;
pub mod fock;
pub mod landau;

mod series;
pub mod special;

pub mod su11;
pub mod verify;
pub mod weyl;

pub use nalgebra::Complex;
pub type Complex64 = Complex<f64>;

pub use error::{LabError, Result};
pub use fock::{FockDim, FockVector, OperatorMatrix};
pub use series::TAIL_MASS_LIMIT;
