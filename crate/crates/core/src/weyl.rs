//! Heisenberg-Weyl displacement operator, oscillator number coherent states
//! `D(alpha)|n>`, the displaced ladder operators, and displaced Hermite
//! wavefunctions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{LabError, Result};
use crate::fock::{build_ladder, mat_exp, subdiagonal_exp, FockDim, FockVector, OperatorMatrix};
use crate::series::{check_tail, expand, TermSum};
use crate::special::{hermite_functions, log_factorial_unchecked};
use crate::Complex64;

pub const MAX_WAVEFUNCTION_DEGREE: usize = 100;

/// Tolerance for agreement between `D^dag a D` and `a + alpha` on the
/// interior block.
pub const LADDER_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylParameter {
    alpha: Complex64,
}

impl WeylParameter {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(LabError::domain("alpha", alpha.norm(), "must be finite"));
        }
        Ok(WeylParameter { alpha })
    }

    /// `alpha = (beta x0 + i p0 / (hbar beta)) / sqrt(2)` with
    /// `beta = sqrt(m omega / hbar)`, so that `D(alpha)` translates a
    /// wavefunction by `x0` and boosts it by `p0`.
    pub fn from_phase_space(x0: f64, p0: f64, beta: f64, hbar: f64) -> Result<Self> {
        if !(beta > 0.0 && hbar > 0.0) {
            return Err(LabError::domain(
                "beta",
                beta,
                "beta and hbar must be positive",
            ));
        }
        Self::new(Complex64::new(beta * x0, p0 / (hbar * beta)) * FRAC_1_SQRT_2)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Displacement along position: `(x0, p0)` recovered from `alpha`.
    pub fn phase_space(&self, beta: f64, hbar: f64) -> (f64, f64) {
        let scaled = self.alpha * std::f64::consts::SQRT_2;
        (scaled.re / beta, scaled.im * hbar * beta)
    }
}

/// Mean occupation `|alpha|^2` must stay below a quarter of the dimension.
pub fn check_guard(param: &WeylParameter, dim: FockDim) -> Result<()> {
    let occupation = param.alpha.norm_sqr();
    if occupation > dim.get() as f64 / 4.0 {
        return Err(LabError::TruncationGuard(format!(
            "|alpha|^2 = {occupation} exceeds n_max/4 = {} at dimension {dim}",
            dim.get() as f64 / 4.0
        )));
    }
    Ok(())
}

fn generator(param: &WeylParameter, dim: FockDim) -> Result<OperatorMatrix> {
    let l = build_ladder(dim);
    l.a_dag
        .scaled(param.alpha)
        .sub(&l.a.scaled(param.alpha.conj()))
}

/// `exp(alpha a^dag - alpha* a)` on the truncated space.
pub fn weyl_operator(param: &WeylParameter, dim: FockDim) -> Result<OperatorMatrix> {
    check_guard(param, dim)?;
    mat_exp(&generator(param, dim)?)
}

/// `e^{-|alpha|^2/2} exp(alpha a^dag) exp(-alpha* a)`.
pub fn weyl_disentangled(param: &WeylParameter, dim: FockDim) -> Result<OperatorMatrix> {
    check_guard(param, dim)?;
    let roots: Vec<f64> = (1..dim.get()).map(|p| (p as f64).sqrt()).collect();
    let raise_sub: Vec<Complex64> = roots.iter().map(|r| param.alpha * *r).collect();
    let raise = subdiagonal_exp(dim, &raise_sub)?;
    // exp(-alpha* a) = [exp(-alpha a^dag)]^dag
    let lower_sub: Vec<Complex64> = roots.iter().map(|r| -param.alpha * *r).collect();
    let lower = subdiagonal_exp(dim, &lower_sub)?.adjoint();
    let prefactor = Complex64::new((-0.5 * param.alpha.norm_sqr()).exp(), 0.0);
    Ok(raise.compose(&lower)?.scaled(prefactor))
}

/// `D(alpha)|n>` from its normal-ordered double-sum expansion.
#[derive(Debug, Clone)]
pub struct NumberCoherentState {
    pub n: usize,
    pub param: WeylParameter,
    pub coeffs: FockVector,
    /// Squared norm of the expansion beyond the truncation.
    pub tail_mass: f64,
}

/// Coefficient `<q|D(alpha)|n>` as a sum over the number of annihilations
/// `j` (with `q - n + j` creations).
pub(crate) fn displaced_number_coefficient(n: usize, alpha: Complex64, q: usize) -> TermSum {
    let mut sum = TermSum::new();
    let log_abs = alpha.norm().ln();
    let theta = alpha.arg();
    let base =
        -0.5 * alpha.norm_sqr() + 0.5 * (log_factorial_unchecked(q) + log_factorial_unchecked(n));
    for j in n.saturating_sub(q)..=n {
        let k = q + j - n;
        let log_mag = base + (k + j) as f64 * log_abs
            - log_factorial_unchecked(k)
            - log_factorial_unchecked(j)
            - log_factorial_unchecked(n - j);
        let phase = theta * (k as f64 - j as f64) + PI * (j % 2) as f64;
        sum.push(log_mag, phase);
    }
    sum
}

pub fn number_coherent_state(
    n: usize,
    param: &WeylParameter,
    dim: FockDim,
) -> Result<NumberCoherentState> {
    if 2 * n >= dim.get() {
        return Err(LabError::domain(
            "n",
            n as f64,
            format!("must be below n_max/2 at dimension {dim}"),
        ));
    }
    check_guard(param, dim)?;
    if param.alpha.norm() == 0.0 {
        return Ok(NumberCoherentState {
            n,
            param: *param,
            coeffs: FockVector::basis(dim, n)?,
            tail_mass: 0.0,
        });
    }
    let expansion = expand(dim.get(), n, |q| {
        displaced_number_coefficient(n, param.alpha, q)
    })?;
    check_tail(&expansion, dim.get())?;
    Ok(NumberCoherentState {
        n,
        param: *param,
        coeffs: FockVector::from_coeffs(expansion.coeffs)?,
        tail_mass: expansion.tail_mass,
    })
}

/// `(A, A^dag) = (a + alpha, a^dag + alpha*)`, checked against the numerical
/// conjugation `D^dag a D` on the interior block.
pub fn transformed_ladder(
    param: &WeylParameter,
    dim: FockDim,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let d = weyl_operator(param, dim)?;
    let l = build_ladder(dim);
    let shift = OperatorMatrix::identity(dim).scaled(param.alpha);
    let closed = l.a.add(&shift)?;
    let conjugated = d.adjoint().compose(&l.a)?.compose(&d)?;
    let residual = conjugated.block_max_diff(&closed, dim.interior())?;
    if residual > LADDER_AGREEMENT_TOL {
        return Err(LabError::Agreement {
            residual,
            tolerance: LADDER_AGREEMENT_TOL,
        });
    }
    let closed_dag = closed.adjoint();
    Ok((closed, closed_dag))
}

/// `(a - alpha, a^dag - alpha*) = (D a D^dag, D a^dag D^dag)`: the pair that
/// lowers and raises the displaced states `D(alpha)|n>`. The conjugation
/// `D^dag a D = a + alpha` of [`transformed_ladder`] instead ladders
/// `D(-alpha)|n>`.
pub fn displaced_ladder(
    param: &WeylParameter,
    dim: FockDim,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let d = weyl_operator(param, dim)?;
    let l = build_ladder(dim);
    let shift = OperatorMatrix::identity(dim).scaled(param.alpha);
    let closed = l.a.sub(&shift)?;
    let conjugated = d.compose(&l.a)?.compose(&d.adjoint())?;
    let residual = conjugated.block_max_diff(&closed, dim.interior())?;
    if residual > LADDER_AGREEMENT_TOL {
        return Err(LabError::Agreement {
            residual,
            tolerance: LADDER_AGREEMENT_TOL,
        });
    }
    let closed_dag = closed.adjoint();
    Ok((closed, closed_dag))
}

/// `N_n e^{-beta^2 (x - x0)^2 / 2} H_n(beta (x - x0))` with
/// `N_n = (beta / (sqrt(pi) 2^n n!))^{1/2}`, normalized on the real line.
pub fn displaced_hermite_wavefunction(
    n: usize,
    beta: f64,
    x0: f64,
    xs: &[f64],
) -> Result<Vec<f64>> {
    if n > MAX_WAVEFUNCTION_DEGREE {
        return Err(LabError::domain(
            "n",
            n as f64,
            format!("degree above {MAX_WAVEFUNCTION_DEGREE}"),
        ));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(LabError::domain("beta", beta, "must be positive"));
    }
    let root = beta.sqrt();
    Ok(xs
        .iter()
        .map(|&x| root * hermite_functions(n, beta * (x - x0))[n])
        .collect())
}
