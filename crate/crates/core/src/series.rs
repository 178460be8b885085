//! Summation of Fock-space expansions whose coefficients are themselves
//! finite sums of log-space terms.

use crate::error::{LabError, Result};
use crate::Complex64;

/// Terms more than this many natural-log units below the running maximum
/// are treated as negligible (forty decades).
pub(crate) const TAIL_LOG_DROP: f64 = 40.0 * std::f64::consts::LN_10;

/// Largest squared-norm mass allowed to fall beyond the truncation.
pub const TAIL_MASS_LIMIT: f64 = 1e-16;

const MAX_TERMS: usize = 2_000_000;

#[derive(Debug, Clone)]
pub(crate) struct Expansion {
    pub coeffs: Vec<Complex64>,
    pub tail_mass: f64,
}

/// Accumulates the complex sum of `exp(log_mag + i phase)` terms and tracks
/// the largest single-term magnitude, which bounds the result without being
/// affected by cancellation.
#[derive(Debug, Default)]
pub(crate) struct TermSum {
    pub value: Complex64,
    pub log_bound: f64,
}

impl TermSum {
    pub fn new() -> Self {
        TermSum {
            value: Complex64::new(0.0, 0.0),
            log_bound: f64::NEG_INFINITY,
        }
    }

    pub fn push(&mut self, log_mag: f64, phase: f64) {
        self.value += Complex64::from_polar(log_mag.exp(), phase);
        self.log_bound = self.log_bound.max(log_mag);
    }
}

/// Evaluates coefficients `q = 0, 1, ...` until `q >= min_index` and the
/// term bound has dropped forty decades below the running maximum. Indices
/// below `dim` are returned; the squared mass of the rest is the tail.
pub(crate) fn expand(
    dim: usize,
    min_index: usize,
    mut coefficient: impl FnMut(usize) -> TermSum,
) -> Result<Expansion> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    let mut tail_mass = 0.0;
    let mut running_max = f64::NEG_INFINITY;
    for q in 0..MAX_TERMS {
        let term = coefficient(q);
        running_max = running_max.max(term.log_bound);
        if q < dim {
            coeffs[q] = term.value;
        } else {
            tail_mass += term.value.norm_sqr();
        }
        if q >= min_index && term.log_bound < running_max - TAIL_LOG_DROP {
            return Ok(Expansion { coeffs, tail_mass });
        }
    }
    Err(LabError::NonConvergence(format!(
        "expansion did not reach the forty-decade tail within {MAX_TERMS} terms"
    )))
}

pub(crate) fn check_tail(expansion: &Expansion, dim: usize) -> Result<()> {
    if expansion.tail_mass > TAIL_MASS_LIMIT {
        return Err(LabError::TailNotConverged {
            tail_mass: expansion.tail_mass,
            dim,
        });
    }
    Ok(())
}
