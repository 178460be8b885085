//! Contraction of su(1,1) onto the oscillator algebra. With `k = 1/(2c^2)`
//! the rescaled generators `h± = c K±`, `h0 = K0 - k` approach `a^dag`, `a`
//! and the number operator as `c -> 0`, and the Perelomov states with
//! `xi = c alpha` approach the Heisenberg-Weyl number coherent states.

use crate::error::{LabError, Result};
use crate::fock::{build_ladder, commutator, FockDim, FockVector, OperatorMatrix};
use crate::su11::{perelomov_ncs, su11_generators, BargmannIndex, SU11Parameter};
use crate::weyl::{number_coherent_state, WeylParameter};
use crate::Complex64;

/// Contraction parameters used by the default verification profile.
pub const DEFAULT_C_GRID: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionParam {
    c: f64,
}

impl ContractionParam {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(LabError::domain(
                "c",
                c,
                "contraction parameter must be positive",
            ));
        }
        Ok(ContractionParam { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `k = 1 / (2 c^2)`.
    pub fn k(&self) -> BargmannIndex {
        BargmannIndex::new(0.5 / (self.c * self.c))
            .expect("positive finite c gives a positive index")
    }
}

#[derive(Debug, Clone)]
pub struct ContractedGenerators {
    pub h_plus: OperatorMatrix,
    pub h_minus: OperatorMatrix,
    pub h_zero: OperatorMatrix,
}

/// `h± = c K±`, `h0 = K0 - I / (2 c^2)`.
pub fn contract_generators(cp: &ContractionParam, dim: FockDim) -> ContractedGenerators {
    let k = cp.k();
    let g = su11_generators(k, dim);
    let scale = Complex64::new(cp.c, 0.0);
    let shift = OperatorMatrix::identity(dim).scaled(Complex64::new(k.value(), 0.0));
    ContractedGenerators {
        h_plus: g.k_plus.scaled(scale),
        h_minus: g.k_minus.scaled(scale),
        h_zero: g.k_zero.sub(&shift).expect("same dimension"),
    }
}

/// Largest index of the block on which contraction residuals are measured.
pub fn contraction_interior(dim: FockDim) -> usize {
    dim.get() / 4
}

/// `(r1, r2)`: max-norms of `[h-, h+] - I` and `[h0, h+] - h+` on the
/// indices `0..=n_max/4`. Analytically `[h-, h+] - I = 2 c^2 diag(n)` there,
/// so `r1 = 2 c^2 n_max/4` and `r2 = 0`.
pub fn commutator_residual(cp: &ContractionParam, dim: FockDim) -> Result<(f64, f64)> {
    let h = contract_generators(cp, dim);
    let block = contraction_interior(dim) + 1;
    let r1 = commutator(&h.h_minus, &h.h_plus)?
        .sub(&OperatorMatrix::identity(dim))?
        .block_max_abs(block);
    let r2 = commutator(&h.h_zero, &h.h_plus)?
        .sub(&h.h_plus)?
        .block_max_abs(block);
    Ok((r1, r2))
}

/// Max-norm of `h+ - a^dag` on the contraction interior.
pub fn ladder_contraction_gap(cp: &ContractionParam, dim: FockDim) -> Result<f64> {
    let h = contract_generators(cp, dim);
    let l = build_ladder(dim);
    h.h_plus
        .block_max_diff(&l.a_dag, contraction_interior(dim) + 1)
}

/// Perelomov state `D(c alpha)|k, n>` with `k = 1/(2c^2)`, read in the
/// oscillator basis `|k, n> -> |n>`.
pub fn contracted_coherent_state(
    alpha: Complex64,
    cp: &ContractionParam,
    n: usize,
    dim: FockDim,
) -> Result<FockVector> {
    let p = SU11Parameter::from_xi(alpha * cp.c)?;
    Ok(perelomov_ncs(n, cp.k(), &p, dim)?.coeffs)
}

/// `1 - |<D(alpha) n | D(c alpha) k, n>|`.
pub fn overlap_deficit(
    alpha: Complex64,
    cp: &ContractionParam,
    n: usize,
    dim: FockDim,
) -> Result<f64> {
    let target = number_coherent_state(n, &WeylParameter::new(alpha)?, dim)?.coeffs;
    let contracted = contracted_coherent_state(alpha, cp, n, dim)?;
    Ok(1.0 - target.inner(&contracted)?.norm())
}

/// Distance between the two states after aligning their global phase,
/// `min_theta |psi - e^{i theta} phi| = sqrt(2 (1 - |<psi|phi>|))` for unit
/// vectors.
pub fn aligned_distance(deficit: f64) -> f64 {
    (2.0 * deficit.max(0.0)).sqrt()
}

/// `(1 - c^2 |alpha|^2)^{1/(2c^2)}` for each `c`; tends to `e^{-|alpha|^2/2}`.
pub fn exponent_limit_sequence(alpha: Complex64, cs: &[f64]) -> Result<Vec<f64>> {
    cs.iter()
        .map(|&c| {
            let cp = ContractionParam::new(c)?;
            let x = cp.c * cp.c * alpha.norm_sqr();
            if x >= 1.0 {
                return Err(LabError::domain(
                    "c",
                    c,
                    "c^2 |alpha|^2 must stay below one",
                ));
            }
            Ok(((-x).ln_1p() / (2.0 * cp.c * cp.c)).exp())
        })
        .collect()
}

/// One Richardson step eliminating an error term of order `c^order` from
/// values at `c` and `c / 2`.
pub fn richardson(coarse: f64, fine: f64, order: i32) -> f64 {
    let w = 2f64.powi(order);
    (w * fine - coarse) / (w - 1.0)
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub order: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

pub fn power_law_fit(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(LabError::DimMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(LabError::domain(
            "points",
            xs.len() as f64,
            "a fit needs at least two points",
        ));
    }
    for &v in xs.iter().chain(ys) {
        if !(v > 0.0 && v.is_finite()) {
            return Err(LabError::domain(
                "value",
                v,
                "log-log fit needs positive data",
            ));
        }
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let count = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / count;
    let my = ly.iter().sum::<f64>() / count;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::domain(
            "x",
            xs[0],
            "abscissae must not all coincide",
        ));
    }
    let order = sxy / sxx;
    let intercept = my - order * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(PowerFit {
        order,
        prefactor: intercept.exp(),
        r_squared,
    })
}
