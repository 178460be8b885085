//! Positive discrete series of su(1,1) on a truncated Fock space: the
//! generators, the Perelomov displacement operator and its normal-ordered
//! factorization, and the Perelomov number coherent states `D(xi)|k,n>`.

use std::f64::consts::{PI, TAU};

use crate::error::{LabError, Result};
use crate::fock::{mat_exp, subdiagonal_exp, FockDim, FockVector, OperatorMatrix};
use crate::series::{check_tail, expand, TermSum};
use crate::special::{log_factorial_unchecked, log_pochhammer};
use crate::Complex64;

/// `tanh(tau/2)` saturates to one in double precision beyond this.
pub const TAU_SATURATION: f64 = 40.0;

/// Bargmann index `k > 0` labelling the representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannIndex(f64);

impl BargmannIndex {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(LabError::domain("k", k, "Bargmann index must be positive"));
        }
        Ok(BargmannIndex(k))
    }

    /// `k = m/2 + 1/2` for the radial problem with angular momentum `m`.
    pub fn from_angular(m: u32) -> Self {
        BargmannIndex(0.5 * m as f64 + 0.5)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Displacement parameters `(tau, phi)` with `xi = -(tau/2) e^{-i phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU11Parameter {
    tau: f64,
    phi: f64,
}

impl SU11Parameter {
    /// `phi` is reduced into `[0, 2 pi)`.
    pub fn new(tau: f64, phi: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(LabError::domain("tau", tau, "must be finite"));
        }
        if !phi.is_finite() {
            return Err(LabError::domain("phi", phi, "must be finite"));
        }
        Ok(SU11Parameter {
            tau,
            phi: phi.rem_euclid(TAU),
        })
    }

    /// Inverse of [`SU11Parameter::xi`]: `tau = 2|xi|`, `phi = -arg(-xi)`.
    pub fn from_xi(xi: Complex64) -> Result<Self> {
        if xi.norm() == 0.0 {
            return Self::new(0.0, 0.0);
        }
        Self::new(2.0 * xi.norm(), -(-xi).arg())
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn xi(&self) -> Complex64 {
        -0.5 * self.tau * Complex64::from_polar(1.0, -self.phi)
    }

    pub fn zeta(&self) -> Complex64 {
        -(0.5 * self.tau).tanh() * Complex64::from_polar(1.0, -self.phi)
    }

    /// `ln(1 - |zeta|^2) = -2 ln cosh(tau/2)`.
    pub fn eta(&self) -> f64 {
        -(0.5 * self.tau).sinh().powi(2).ln_1p()
    }
}

#[derive(Debug, Clone)]
pub struct Su11Generators {
    pub k_plus: OperatorMatrix,
    pub k_minus: OperatorMatrix,
    pub k_zero: OperatorMatrix,
}

fn raising_elements(k: BargmannIndex, dim: FockDim) -> Vec<f64> {
    let two_k = 2.0 * k.value();
    (0..dim.get() - 1)
        .map(|n| ((n as f64 + 1.0) * (two_k + n as f64)).sqrt())
        .collect()
}

/// `K+|k,n> = sqrt((n+1)(2k+n)) |k,n+1>`, `K- = K+^dag`, `K0 = diag(k+n)`.
pub fn su11_generators(k: BargmannIndex, dim: FockDim) -> Su11Generators {
    let raise = raising_elements(k, dim);
    let k_plus = OperatorMatrix::from_fn(dim, |i, j| {
        if i == j + 1 {
            Complex64::new(raise[j], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let k_minus = k_plus.adjoint();
    let k_zero = OperatorMatrix::diagonal(dim, |n| Complex64::new(k.value() + n as f64, 0.0));
    Su11Generators {
        k_plus,
        k_minus,
        k_zero,
    }
}

/// `(2k + n_in_use) sinh^2(tau/2) <= n_max / 4`, where `n_in_use` is the
/// highest basis state the caller displaces.
pub fn check_guard(
    p: &SU11Parameter,
    k: BargmannIndex,
    n_in_use: usize,
    dim: FockDim,
) -> Result<()> {
    let pumped = (2.0 * k.value() + n_in_use as f64) * (0.5 * p.tau).sinh().powi(2);
    if pumped > dim.get() as f64 / 4.0 {
        return Err(LabError::TruncationGuard(format!(
            "(2k + n) sinh^2(tau/2) = {pumped} exceeds n_max/4 = {} at dimension {dim}",
            dim.get() as f64 / 4.0
        )));
    }
    Ok(())
}

/// `exp(xi K+ - xi* K-)` on the truncated space.
pub fn perelomov_displacement(
    p: &SU11Parameter,
    k: BargmannIndex,
    n_in_use: usize,
    dim: FockDim,
) -> Result<OperatorMatrix> {
    check_guard(p, k, n_in_use, dim)?;
    let g = su11_generators(k, dim);
    let xi = p.xi();
    mat_exp(&g.k_plus.scaled(xi).sub(&g.k_minus.scaled(xi.conj()))?)
}

/// `(zeta, eta)` of the normal-ordered form
/// `D(xi) = exp(zeta K+) exp(eta K0) exp(-zeta* K-)`.
pub fn normal_form_factors(p: &SU11Parameter) -> Result<(Complex64, f64)> {
    if p.tau.abs() >= TAU_SATURATION {
        return Err(LabError::domain(
            "tau",
            p.tau,
            format!("|tau| must be below {TAU_SATURATION}"),
        ));
    }
    Ok((p.zeta(), p.eta()))
}

/// The normal-ordered product `exp(zeta K+) exp(eta K0) exp(-zeta* K-)`,
/// each factor evaluated exactly (the outer two are nilpotent on the
/// truncated space).
pub fn normal_form_product(
    p: &SU11Parameter,
    k: BargmannIndex,
    dim: FockDim,
) -> Result<OperatorMatrix> {
    let (zeta, eta) = normal_form_factors(p)?;
    let raise = raising_elements(k, dim);
    let plus_sub: Vec<Complex64> = raise.iter().map(|r| zeta * *r).collect();
    let left = subdiagonal_exp(dim, &plus_sub)?;
    // exp(-zeta* K-) = [exp(-zeta K+)]^dag
    let minus_sub: Vec<Complex64> = raise.iter().map(|r| -zeta * *r).collect();
    let right = subdiagonal_exp(dim, &minus_sub)?.adjoint();
    let middle = OperatorMatrix::diagonal(dim, |n| {
        Complex64::new((eta * (k.value() + n as f64)).exp(), 0.0)
    });
    left.compose(&middle)?.compose(&right)
}

/// Coefficient `<k,s|zeta>` of the standard coherent state `D(xi)|k,0>`:
/// `(1 - |zeta|^2)^k sqrt(Gamma(s + 2k) / (s! Gamma(2k))) zeta^s`.
pub(crate) fn standard_coefficient(k: f64, p: &SU11Parameter, s: usize) -> TermSum {
    let zeta = p.zeta();
    let mut sum = TermSum::new();
    let log_mag = k * p.eta()
        + 0.5 * (log_pochhammer(2.0 * k, s) - log_factorial_unchecked(s))
        + s as f64 * zeta.norm().ln();
    sum.push(log_mag, s as f64 * zeta.arg());
    sum
}

/// Coefficient `<k,q|D(xi)|k,n>` from the normal-ordered expansion: a sum
/// over `j` lowerings followed by `q - n + j` raisings.
pub(crate) fn displaced_coefficient(n: usize, k: f64, p: &SU11Parameter, q: usize) -> TermSum {
    let zeta = p.zeta();
    let eta = p.eta();
    let log_abs = zeta.norm().ln();
    let theta = zeta.arg();
    let two_k = 2.0 * k;
    let base = 0.5 * (log_factorial_unchecked(n) + log_factorial_unchecked(q));
    let mut sum = TermSum::new();
    for j in n.saturating_sub(q)..=n {
        let s = q + j - n;
        let low = two_k + (n - j) as f64;
        let log_mag = base + (s + j) as f64 * log_abs
            - log_factorial_unchecked(s)
            - log_factorial_unchecked(j)
            + eta * (k + (n - j) as f64)
            + 0.5 * (log_pochhammer(low, j) + log_pochhammer(low, s))
            - log_factorial_unchecked(n - j);
        let phase = theta * (s as f64 - j as f64) + PI * (j % 2) as f64;
        sum.push(log_mag, phase);
    }
    sum
}

/// Perelomov number coherent state `D(xi)|k,n>` in the `|k,q>` basis.
#[derive(Debug, Clone)]
pub struct PerelomovState {
    pub n: usize,
    pub k: BargmannIndex,
    pub param: SU11Parameter,
    pub coeffs: FockVector,
    pub tail_mass: f64,
}

fn check_state_index(n: usize, dim: FockDim) -> Result<()> {
    if 2 * n >= dim.get() {
        return Err(LabError::domain(
            "n",
            n as f64,
            format!("must be below n_max/2 at dimension {dim}"),
        ));
    }
    Ok(())
}

pub fn perelomov_ncs(
    n: usize,
    k: BargmannIndex,
    p: &SU11Parameter,
    dim: FockDim,
) -> Result<PerelomovState> {
    check_state_index(n, dim)?;
    check_guard(p, k, n, dim)?;
    normal_form_factors(p)?;
    let coeffs = if p.zeta().norm() == 0.0 {
        (FockVector::basis(dim, n)?, 0.0)
    } else {
        let expansion = expand(dim.get(), n, |q| displaced_coefficient(n, k.value(), p, q))?;
        check_tail(&expansion, dim.get())?;
        (
            FockVector::from_coeffs(expansion.coeffs)?,
            expansion.tail_mass,
        )
    };
    Ok(PerelomovState {
        n,
        k,
        param: *p,
        coeffs: coeffs.0,
        tail_mass: coeffs.1,
    })
}

/// Standard coherent state `D(xi)|k,0>` from its single-sum expansion.
pub fn perelomov_standard(
    k: BargmannIndex,
    p: &SU11Parameter,
    dim: FockDim,
) -> Result<PerelomovState> {
    check_guard(p, k, 0, dim)?;
    normal_form_factors(p)?;
    let coeffs = if p.zeta().norm() == 0.0 {
        (FockVector::basis(dim, 0)?, 0.0)
    } else {
        let expansion = expand(dim.get(), 0, |s| standard_coefficient(k.value(), p, s))?;
        check_tail(&expansion, dim.get())?;
        (
            FockVector::from_coeffs(expansion.coeffs)?,
            expansion.tail_mass,
        )
    };
    Ok(PerelomovState {
        n: 0,
        k,
        param: *p,
        coeffs: coeffs.0,
        tail_mass: coeffs.1,
    })
}

/// `L± = D(xi) K± D(xi)^dag` by numerical conjugation. These raise and
/// lower the displaced states `D(xi)|k,n>`.
pub fn su11_ladder_transformed(
    p: &SU11Parameter,
    k: BargmannIndex,
    dim: FockDim,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let d = perelomov_displacement(p, k, 0, dim)?;
    let g = su11_generators(k, dim);
    let d_dag = d.adjoint();
    let l_plus = d.compose(&g.k_plus)?.compose(&d_dag)?;
    let l_minus = d.compose(&g.k_minus)?.compose(&d_dag)?;
    Ok((l_plus, l_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply, commutator};

    fn dim(n: usize) -> FockDim {
        FockDim::new(n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bk(k: f64) -> BargmannIndex {
        BargmannIndex::new(k).unwrap()
    }

    #[test]
    fn parameter_relations() {
        let p = SU11Parameter::new(1.0, 0.0).unwrap();
        let (zeta, eta) = normal_form_factors(&p).unwrap();
        assert!((zeta - c(-0.462_117_157_3, 0.0)).norm() < 1e-10);
        // -2 ln cosh(1/2)
        assert!((eta + 0.240_229_013_916_554_9).abs() < 1e-13);
        // eta = ln(1 - |zeta|^2) independently
        assert!((eta - (1.0 - zeta.norm_sqr()).ln()).abs() < 1e-15);
        assert_eq!(
            normal_form_factors(&SU11Parameter::new(0.0, 2.0).unwrap()).unwrap(),
            (c(-0.0, 0.0), -0.0)
        );

        for (tau, phi) in [(0.7, 0.3), (-1.1, 5.0), (2.5, 3.0)] {
            let p = SU11Parameter::new(tau, phi).unwrap();
            assert!(p.zeta().norm() < 1.0);
            assert!(p.eta() <= 0.0);
            assert!((p.zeta().arg() - p.xi().arg()).abs() < 1e-12);
            let back = SU11Parameter::from_xi(p.xi()).unwrap();
            assert!((back.xi() - p.xi()).norm() < 1e-14);
        }
        assert!(normal_form_factors(&SU11Parameter::new(40.0, 0.0).unwrap()).is_err());
        assert!(SU11Parameter::new(f64::NAN, 0.0).is_err());
        assert!(BargmannIndex::new(0.0).is_err());
        assert_eq!(BargmannIndex::from_angular(3).value(), 2.0);
    }

    #[test]
    fn generator_entries() {
        let g = su11_generators(bk(0.5), dim(3));
        assert_eq!(g.k_plus.get(1, 0), c(1.0, 0.0));
        assert_eq!(g.k_plus.get(2, 1), c(2.0, 0.0));
        assert_eq!(g.k_minus, g.k_plus.adjoint());
        assert_eq!(g.k_zero.get(2, 2), c(2.5, 0.0));
    }

    #[test]
    fn commutation_relations_and_casimir() {
        for k in [0.5, 1.0, 1.5, 5.0, 2.3] {
            let d = dim(24);
            let g = su11_generators(bk(k), d);
            let interior = 23;
            let c1 = commutator(&g.k_minus, &g.k_plus).unwrap();
            assert!(
                c1.block_max_diff(&g.k_zero.scaled(c(2.0, 0.0)), interior)
                    .unwrap()
                    < 1e-12
            );
            let c2 = commutator(&g.k_zero, &g.k_plus).unwrap();
            assert!(c2.block_max_diff(&g.k_plus, 24).unwrap() < 1e-12);
            let c3 = commutator(&g.k_zero, &g.k_minus).unwrap();
            assert!(
                c3.block_max_diff(&g.k_minus.scaled(c(-1.0, 0.0)), 24)
                    .unwrap()
                    < 1e-12
            );

            let k0sq = g.k_zero.compose(&g.k_zero).unwrap();
            let sym = g
                .k_plus
                .compose(&g.k_minus)
                .unwrap()
                .add(&g.k_minus.compose(&g.k_plus).unwrap())
                .unwrap()
                .scaled(c(0.5, 0.0));
            let casimir = k0sq.sub(&sym).unwrap();
            let expect = OperatorMatrix::identity(d).scaled(c(k * (k - 1.0), 0.0));
            assert!(
                casimir.block_max_diff(&expect, interior).unwrap() < 1e-10,
                "k={k}"
            );
        }
    }

    #[test]
    fn zero_displacement() {
        let d = dim(16);
        let p = SU11Parameter::new(0.0, 1.0).unwrap();
        assert_eq!(
            perelomov_displacement(&p, bk(1.0), 0, d).unwrap(),
            OperatorMatrix::identity(d)
        );
        let s = perelomov_ncs(3, bk(1.5), &p, d).unwrap();
        assert_eq!(s.coeffs, FockVector::basis(d, 3).unwrap());
        let (lp, lm) = su11_ladder_transformed(&p, bk(1.5), d).unwrap();
        let g = su11_generators(bk(1.5), d);
        assert_eq!(lp, g.k_plus);
        assert_eq!(lm, g.k_minus);
    }

    #[test]
    fn standard_state_is_first_column() {
        let d = dim(128);
        let k = bk(1.0);
        let p = SU11Parameter::new(1.0, 0.0).unwrap();
        let disp = perelomov_displacement(&p, k, 0, d).unwrap();
        let state = perelomov_standard(k, &p, d).unwrap();
        for s in 0..60 {
            assert!(
                (disp.get(s, 0) - state.coeffs.get(s)).norm() < 1e-9,
                "s={s}"
            );
        }
        let ncs0 = perelomov_ncs(0, k, &p, d).unwrap();
        assert!(ncs0.coeffs.sub(&state.coeffs).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn expansion_matches_exponential() {
        let d = dim(128);
        let k = bk(1.0);
        let p = SU11Parameter::new(0.6, 1.1).unwrap();
        let disp = perelomov_displacement(&p, k, 2, d).unwrap();
        let oracle = apply(&disp, &FockVector::basis(d, 2).unwrap()).unwrap();
        let state = perelomov_ncs(2, k, &p, d).unwrap();
        let overlap = oracle.inner(&state.coeffs).unwrap();
        assert!((overlap - c(1.0, 0.0)).norm() < 1e-9, "{overlap}");
        assert!((state.coeffs.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn normal_form_identity() {
        let d = dim(128);
        let k = bk(1.5);
        let p = SU11Parameter::new(0.8, PI / 3.0).unwrap();
        let direct = perelomov_displacement(&p, k, 0, d).unwrap();
        let product = normal_form_product(&p, k, d).unwrap();
        let err = direct.block_max_diff(&product, 16).unwrap();
        assert!(err < 1e-9, "{err:e}");
    }

    #[test]
    fn transformed_ladder_acts_on_displaced_states() {
        let d = dim(128);
        let k = bk(1.0);
        let p = SU11Parameter::new(0.5, 0.0).unwrap();
        let (lp, lm) = su11_ladder_transformed(&p, k, d).unwrap();
        let s1 = perelomov_ncs(1, k, &p, d).unwrap().coeffs;
        let s2 = perelomov_ncs(2, k, &p, d).unwrap().coeffs;
        let factor = (2.0_f64 * (2.0 + 1.0)).sqrt();
        let err = apply(&lp, &s1)
            .unwrap()
            .sub(&s2.scaled(c(factor, 0.0)))
            .unwrap()
            .max_abs();
        assert!(err < 1e-8, "{err:e}");
        let s0 = perelomov_ncs(0, k, &p, d).unwrap().coeffs;
        assert!(apply(&lm, &s0).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn guard_rejects_large_displacement() {
        let p = SU11Parameter::new(4.0, 0.0).unwrap();
        assert!(matches!(
            perelomov_displacement(&p, bk(1.0), 0, dim(32)),
            Err(LabError::TruncationGuard(_))
        ));
        assert!(
            perelomov_ncs(16, bk(1.0), &SU11Parameter::new(0.1, 0.0).unwrap(), dim(32)).is_err()
        );
    }
}
