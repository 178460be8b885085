//! A charged particle in a uniform magnetic field. In the Landau gauge the
//! transverse problem is a displaced oscillator that a Weyl tilt
//! diagonalizes; in the symmetric gauge the radial problem carries an
//! su(1,1) representation whose Perelomov number coherent states have a
//! closed form in terms of Laguerre polynomials.
//!
//! Internally every computation runs in natural units `hbar = mass = c = 1`
//! with the Larmor frequency as the only scale. [`LandauConfig`] holds the
//! physical inputs and converts at the boundary.

use std::f64::consts::PI;

use crate::error::{LabError, Result};
use crate::fock::{build_ladder, FockDim, FockVector, OperatorMatrix};
use crate::series::{check_tail, expand};
use crate::special::{laguerre, log_factorial_unchecked, MAX_POLY_DEGREE};
use crate::su11::{displaced_coefficient, BargmannIndex, SU11Parameter};
use crate::weyl::{displaced_hermite_wavefunction, weyl_operator, WeylParameter};
use crate::Complex64;

/// Largest radial or angular quantum number accepted by the Sturmian basis.
pub const MAX_STURMIAN_INDEX: usize = 100;
/// Largest quantum numbers accepted by the symmetric-gauge closed form.
pub const MAX_CLOSED_FORM_INDEX: usize = 60;
/// `1 - |zeta|^2` below this is treated as the pole of the closed form.
pub const POLE_MARGIN: f64 = 1e-12;

/// Physical inputs of the Landau problem in any consistent unit system
/// (Gaussian units in the formulas below).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauConfig {
    pub b_field: f64,
    pub charge: f64,
    pub mass: f64,
    pub c_light: f64,
    pub hbar: f64,
    pub k_x: f64,
    pub k_z: f64,
}

impl LandauConfig {
    pub fn new(
        b_field: f64,
        charge: f64,
        mass: f64,
        c_light: f64,
        hbar: f64,
        k_x: f64,
        k_z: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("B", b_field),
            ("charge", charge),
            ("mass", mass),
            ("c_light", c_light),
            ("hbar", hbar),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(LabError::domain(name, value, "must be positive and finite"));
            }
        }
        for (name, value) in [("k_x", k_x), ("k_z", k_z)] {
            if !value.is_finite() {
                return Err(LabError::domain(name, value, "must be finite"));
            }
        }
        Ok(LandauConfig {
            b_field,
            charge,
            mass,
            c_light,
            hbar,
            k_x,
            k_z,
        })
    }

    /// Natural units: `hbar = mass = c = e = 1`, so `B = omega` and the orbit
    /// center `d` fixes `k_x = omega d`.
    pub fn natural(omega: f64, d: f64, k_z: f64) -> Result<Self> {
        if !d.is_finite() {
            return Err(LabError::domain("d", d, "must be finite"));
        }
        Self::new(omega, 1.0, 1.0, 1.0, 1.0, omega * d, k_z)
    }

    /// Larmor frequency `eB / (mass c)`.
    pub fn omega(&self) -> f64 {
        self.charge * self.b_field / (self.mass * self.c_light)
    }

    /// Orbit center `hbar c k_x / (eB)`.
    pub fn d(&self) -> f64 {
        self.hbar * self.c_light * self.k_x / (self.charge * self.b_field)
    }

    /// `sqrt(hbar c / (eB))`.
    pub fn magnetic_length(&self) -> f64 {
        (self.hbar * self.c_light / (self.charge * self.b_field)).sqrt()
    }

    /// Oscillator scale `sqrt(mass omega / hbar) = 1 / magnetic_length`.
    pub fn beta(&self) -> f64 {
        (self.mass * self.omega() / self.hbar).sqrt()
    }

    pub fn mu(&self) -> f64 {
        self.hbar * self.omega()
    }

    pub fn nu(&self) -> f64 {
        -(self.hbar * self.mass * self.omega().powi(3) / 2.0).sqrt() * self.d()
    }

    /// Free motion along the field, `hbar^2 k_z^2 / (2 mass)`.
    pub fn longitudinal_energy(&self) -> f64 {
        (self.hbar * self.k_z).powi(2) / (2.0 * self.mass)
    }

    /// Tilt that centers the orbit: `y0 = d`, `p_y0 = 0`, so
    /// `alpha = beta d / sqrt 2 = -nu / mu`.
    pub fn tilt_parameter(&self) -> Result<WeylParameter> {
        WeylParameter::from_phase_space(self.d(), 0.0, self.beta(), self.hbar)
    }
}

/// `mu (a^dag a + 1/2) + nu (a + a^dag)`.
pub fn landau_hamiltonian_fock(cfg: &LandauConfig, dim: FockDim) -> Result<OperatorMatrix> {
    if dim.get() < 4 {
        return Err(LabError::DimTooSmall(dim.get()));
    }
    let l = build_ladder(dim);
    let mu = Complex64::new(cfg.mu(), 0.0);
    let nu = Complex64::new(cfg.nu(), 0.0);
    let half = OperatorMatrix::identity(dim).scaled(Complex64::new(0.5, 0.0));
    l.number
        .add(&half)?
        .scaled(mu)
        .add(&l.a.add(&l.a_dag)?.scaled(nu))
}

/// Ascending eigenvalues of a Hermitian operator.
pub fn hermitian_spectrum(h: &OperatorMatrix) -> Result<Vec<f64>> {
    if !h.is_finite() {
        return Err(LabError::NonConvergence("non-finite Hamiltonian".into()));
    }
    let symmetrized = (h.entries() + h.entries().adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = symmetrized
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Spectrum of the transverse Hamiltonian, shifted by the longitudinal
/// kinetic energy and the constant `mass omega^2 d^2 / 2` dropped when
/// completing the square, so that it is directly comparable to
/// [`landau_energy`].
pub fn landau_levels_numeric(cfg: &LandauConfig, dim: FockDim) -> Result<Vec<f64>> {
    let h = landau_hamiltonian_fock(cfg, dim)?;
    let shift = cfg.longitudinal_energy() + 0.5 * cfg.mass * (cfg.omega() * cfg.d()).powi(2);
    Ok(hermitian_spectrum(&h)?
        .into_iter()
        .map(|e| e + shift)
        .collect())
}

/// `D(alpha)^dag H D(alpha)`.
pub fn tilt_hamiltonian(
    h: &OperatorMatrix,
    param: &WeylParameter,
    dim: FockDim,
) -> Result<OperatorMatrix> {
    let d = weyl_operator(param, dim)?;
    d.adjoint().compose(h)?.compose(&d)
}

/// Largest off-diagonal modulus on the leading `block`.
pub fn off_diagonal_max(m: &OperatorMatrix, block: usize) -> f64 {
    let block = block.min(m.dim().get());
    let mut worst: f64 = 0.0;
    for i in 0..block {
        for j in 0..block {
            if i != j {
                worst = worst.max(m.get(i, j).norm());
            }
        }
    }
    worst
}

/// `(n + 1/2) hbar omega + hbar^2 k_z^2 / (2 mass)`.
pub fn landau_energy(n: usize, cfg: &LandauConfig) -> f64 {
    (n as f64 + 0.5) * cfg.mu() + cfg.longitudinal_energy()
}

/// Normalized displaced Hermite profile centered on the orbit `y0 = d`.
pub fn landau_eigenfunction(n: usize, cfg: &LandauConfig, ys: &[f64]) -> Result<Vec<f64>> {
    displaced_hermite_wavefunction(n, 1.0 / cfg.magnetic_length(), cfg.d(), ys)
}

fn check_sturmian(n: usize, m: usize) -> Result<()> {
    for (name, v) in [("n", n), ("m", m)] {
        if v > MAX_STURMIAN_INDEX {
            return Err(LabError::domain(
                name,
                v as f64,
                format!("Sturmian index above {MAX_STURMIAN_INDEX}"),
            ));
        }
    }
    Ok(())
}

/// Log of `sqrt(2 / m!) e^{-y/2} y^{m/2}`, the envelope shared by all radial
/// indices once the Laguerre factor is normalized.
fn log_envelope(m: usize, y: f64) -> Option<f64> {
    if y == 0.0 && m > 0 {
        return None;
    }
    let power = if m == 0 { 0.0 } else { 0.5 * m as f64 * y.ln() };
    Some(0.5 * (2f64.ln() - log_factorial_unchecked(m)) - 0.5 * y + power)
}

/// `U_n(y) = sqrt(2 n!/(n+m)!) e^{-y/2} y^{m/2} L_n^m(y)`, orthonormal
/// under the measure `dy / 2` (that is `rho d rho` with `y = rho^2`).
pub fn sturmian_radial(n: usize, m: usize, y: f64) -> Result<f64> {
    check_sturmian(n, m)?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(LabError::domain("y", y, "must be nonnegative and finite"));
    }
    let Some(log_env) = log_envelope(m, y) else {
        return Ok(0.0);
    };
    let log_ratio = 0.5
        * (log_factorial_unchecked(n) + log_factorial_unchecked(m)
            - log_factorial_unchecked(n + m));
    Ok((log_env + log_ratio).exp() * laguerre(n, m, y)?)
}

/// `U_0 .. U_{count-1}` at one point via the normalized three-term
/// recurrence, which stays finite for indices far beyond the factorial range.
pub(crate) fn sturmian_values(count: usize, m: usize, y: f64) -> Vec<f64> {
    let mut out = vec![0.0; count];
    let Some(log_env) = log_envelope(m, y) else {
        return out;
    };
    let mf = m as f64;
    let (mut prev, mut cur) = (0.0, log_env.exp());
    for (s, slot) in out.iter_mut().enumerate() {
        *slot = cur;
        let sf = s as f64;
        let next = ((2.0 * sf + mf + 1.0 - y) * cur - (sf * (sf + mf)).sqrt() * prev)
            / ((sf + 1.0) * (sf + mf + 1.0)).sqrt();
        prev = cur;
        cur = next;
    }
    out
}

/// Relative residual of the radial equation
/// `U'' + U'/x - m^2 U / x^2 + (lambda - x^2) U = 0` at `x`, with
/// `U(x) = U_n(x^2)`, `lambda = 4n + 2m + 2` and central differences of
/// step `h`. Normalized by the sum of the term magnitudes.
pub fn radial_equation_residual(n: usize, m: usize, x: f64, h: f64) -> Result<f64> {
    if !(x > h && h > 0.0) {
        return Err(LabError::domain("x", x, "must exceed the difference step"));
    }
    let u = |t: f64| sturmian_radial(n, m, t * t);
    let (um, u0, up) = (u(x - h)?, u(x)?, u(x + h)?);
    let second = (up - 2.0 * u0 + um) / (h * h);
    let first = (up - um) / (2.0 * h) / x;
    let centrifugal = (m * m) as f64 / (x * x) * u0;
    let lambda = (4 * n + 2 * m + 2) as f64;
    let potential = (lambda - x * x) * u0;
    let residual = second + first - centrifugal + potential;
    let scale = second.abs() + first.abs() + centrifugal.abs() + (lambda + x * x) * u0.abs();
    Ok(residual.abs() / scale)
}

/// Radial and angular labels of a symmetric-gauge state; the Bargmann index
/// follows from `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricGaugeState {
    pub n: usize,
    pub m: u32,
    pub k_z: f64,
}

impl SymmetricGaugeState {
    pub fn bargmann_index(&self) -> BargmannIndex {
        BargmannIndex::from_angular(self.m)
    }

    pub fn energy(&self, cfg: &LandauConfig) -> f64 {
        symmetric_gauge_energy(self.n, self.m, cfg)
    }
}

/// `lambda = 4 (E - hbar^2 k_z^2 / 2 mass) / (hbar omega) - 2m`.
pub fn symmetric_gauge_lambda(energy: f64, m: u32, cfg: &LandauConfig) -> f64 {
    4.0 * (energy - cfg.longitudinal_energy()) / cfg.mu() - 2.0 * m as f64
}

/// Energy at the Sturmian eigenvalue `lambda = 4n + 2m + 2`.
pub fn symmetric_gauge_energy(n: usize, m: u32, cfg: &LandauConfig) -> f64 {
    let lambda = (4 * n) as f64 + 2.0 * m as f64 + 2.0;
    (lambda + 2.0 * m as f64) * cfg.mu() / 4.0 + cfg.longitudinal_energy()
}

fn check_closed_form(n: usize, m: u32, p: &SU11Parameter) -> Result<Complex64> {
    if n > MAX_CLOSED_FORM_INDEX || m as usize > MAX_CLOSED_FORM_INDEX {
        return Err(LabError::domain(
            "n",
            n.max(m as usize) as f64,
            format!("quantum numbers above {MAX_CLOSED_FORM_INDEX}"),
        ));
    }
    if p.tau().abs() >= crate::su11::TAU_SATURATION {
        return Err(LabError::domain("tau", p.tau(), "tanh saturates"));
    }
    let zeta = p.zeta();
    // 1 - |zeta|^2 = e^eta, exact even when |zeta| rounds to one
    if p.eta().exp() < POLE_MARGIN {
        return Err(LabError::PoleGuard(format!(
            "1 - |zeta|^2 = {:e} at zeta = {zeta}",
            p.eta().exp()
        )));
    }
    Ok(zeta)
}

fn check_point(rho: f64, phi_ang: f64) -> Result<()> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(LabError::domain(
            "rho",
            rho,
            "must be nonnegative and finite",
        ));
    }
    if !phi_ang.is_finite() {
        return Err(LabError::domain("phi", phi_ang, "must be finite"));
    }
    Ok(())
}

fn finite_or_pole(value: Complex64, zeta: Complex64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(LabError::PoleGuard(format!(
            "non-finite closed form at zeta = {zeta}"
        )))
    }
}

/// Symmetric-gauge Perelomov number coherent state `D(xi)|k, n>` with
/// `k = (m+1)/2`, as a wavefunction of `(rho, phi)` in units where the
/// Sturmian variable is `y = rho^2`. Normalized under `rho d rho d phi`.
///
/// The resummed form uses the Laguerre argument
/// `rho^2 (1 - |zeta|^2) / |1 - zeta|^2` and the unimodular factor
/// `((1 - zeta*) / (1 - zeta))^n`, both regular at `zeta = 0`. The overall
/// sign `(-1)^n` is kept as a fixed phase convention.
pub fn pncs_symmetric_closed(
    n: usize,
    m: u32,
    p: &SU11Parameter,
    rho: f64,
    phi_ang: f64,
) -> Result<Complex64> {
    let zeta = check_closed_form(n, m, p)?;
    check_point(rho, phi_ang)?;
    let one = Complex64::new(1.0, 0.0);
    let mu = m as usize;
    let deficit = p.eta().exp();
    let gap = one - zeta;
    let norm =
        (0.5 * (log_factorial_unchecked(n) - log_factorial_unchecked(n + mu))).exp() / PI.sqrt();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rotation = ((one - zeta.conj()) / gap).powu(n as u32);
    let amplitude = deficit.powf(0.5 * (m as f64 + 1.0)) / gap.powu(m + 1);
    let gauss = (-(rho * rho) * (one + zeta) / (2.0 * gap)).exp();
    let arg = rho * rho * deficit / gap.norm_sqr();
    let radial = rho.powi(m as i32) * laguerre(n, mu, arg)?;
    let angular = Complex64::from_polar(1.0, m as f64 * phi_ang);
    let value = angular * rotation * amplitude * gauss * (sign * norm * radial);
    finite_or_pole(value, zeta)
}

/// The reference closed form exactly as printed: `sigma = (1 - |zeta|^2) /
/// ((1 - zeta)(-zeta*))`, the Laguerre argument
/// `rho^2 sigma / ((1 - zeta)(1 - sigma))` and a `1 / sqrt(pi)` prefactor.
/// Kept for the errata comparison; `sigma` is undefined at `zeta = 0`.
pub fn pncs_symmetric_printed(
    n: usize,
    m: u32,
    p: &SU11Parameter,
    rho: f64,
    phi_ang: f64,
) -> Result<Complex64> {
    let zeta = check_closed_form(n, m, p)?;
    check_point(rho, phi_ang)?;
    if zeta.norm() < POLE_MARGIN {
        return Err(LabError::PoleGuard("sigma is undefined at zeta = 0".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let mu = m as usize;
    let deficit = 1.0 - zeta.norm_sqr();
    let gap = one - zeta;
    let sigma = deficit / (gap * -zeta.conj());
    let norm = (0.5 * (2f64.ln() + log_factorial_unchecked(n) - log_factorial_unchecked(n + mu)))
        .exp()
        / PI.sqrt();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let prefactor = (-zeta.conj()).powu(n as u32)
        * deficit.powf(0.5 * (m as f64 + 1.0))
        * (one + sigma).powu(n as u32)
        / gap.powu(m + 1);
    let gauss = (-(rho * rho) * (one + zeta) / (2.0 * gap)).exp();
    let arg = rho * rho * sigma / (gap * (one - sigma));
    let radial = Complex64::new(rho.powi(m as i32), 0.0) * complex_laguerre(n, mu, arg);
    let angular = Complex64::from_polar(1.0, m as f64 * phi_ang);
    let value = angular * prefactor * gauss * radial * (sign * norm);
    finite_or_pole(value, zeta)
}

fn complex_laguerre(n: usize, m: usize, x: Complex64) -> Complex64 {
    let m = m as f64;
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for j in 0..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + m - x) * cur - (jf + m) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `sum_s c_s U_s(rho^2) e^{i m phi} / sqrt(2 pi)` for coefficients in the
/// `|k, s>` basis with `k = (m+1)/2`.
pub fn sturmian_series(coeffs: &[Complex64], m: u32, rho: f64, phi_ang: f64) -> Result<Complex64> {
    check_point(rho, phi_ang)?;
    if m as usize > MAX_POLY_DEGREE {
        return Err(LabError::domain("m", m as f64, "angular number too large"));
    }
    let basis = sturmian_values(coeffs.len(), m as usize, rho * rho);
    let sum: Complex64 = coeffs.iter().zip(&basis).map(|(c, u)| c * *u).sum();
    Ok(sum * Complex64::from_polar(1.0, m as f64 * phi_ang) / (2.0 * PI).sqrt())
}

/// Ground truth for the closed form: the Fock-space coefficients of
/// `D(xi)|k, n>` summed term by term against the Sturmian basis, using the
/// first `terms` indices. The tail beyond `terms` must be negligible.
pub fn pncs_symmetric_oracle(
    n: usize,
    m: u32,
    p: &SU11Parameter,
    rho: f64,
    phi_ang: f64,
    terms: usize,
) -> Result<Complex64> {
    if terms <= n {
        return Err(LabError::domain("terms", terms as f64, "must exceed n"));
    }
    let k = BargmannIndex::from_angular(m).value();
    let expansion = expand(terms, n, |q| displaced_coefficient(n, k, p, q))?;
    check_tail(&expansion, terms)?;
    sturmian_series(&expansion.coeffs, m, rho, phi_ang)
}

/// Fock coefficients of a Landau-gauge state in the oscillator basis: a
/// convenience used by the CLI for the `landau` family.
pub fn landau_state(n: usize, cfg: &LandauConfig, dim: FockDim) -> Result<FockVector> {
    let param = cfg.tilt_parameter()?;
    Ok(crate::weyl::number_coherent_state(n, &param, dim)?.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{make_quadrature, QuadratureKind};

    fn dim(n: usize) -> FockDim {
        FockDim::new(n).unwrap()
    }

    #[test]
    fn derived_quantities_are_consistent() {
        let cfg = LandauConfig::new(2.5, 1.3, 0.7, 3.0, 0.9, 0.4, 0.2).unwrap();
        let lhs = cfg.d() * cfg.omega() * cfg.mass;
        assert!((lhs - cfg.hbar * cfg.k_x).abs() < 1e-14);
        let l2 =
            cfg.magnetic_length().powi(2) * cfg.charge * cfg.b_field / (cfg.hbar * cfg.c_light);
        assert!((l2 - 1.0).abs() < 1e-14);
        assert!((cfg.beta() * cfg.magnetic_length() - 1.0).abs() < 1e-14);
        let alpha = cfg.tilt_parameter().unwrap().alpha();
        assert!((alpha.re + cfg.nu() / cfg.mu()).abs() < 1e-14);
        assert_eq!(alpha.im, 0.0);
        assert!(LandauConfig::new(-1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn undisplaced_hamiltonian_is_diagonal() {
        let cfg = LandauConfig::natural(1.3, 0.0, 0.0).unwrap();
        let h = landau_hamiltonian_fock(&cfg, dim(8)).unwrap();
        assert_eq!(off_diagonal_max(&h, 8), 0.0);
        assert!((h.get(3, 3).re - 1.3 * 3.5).abs() < 1e-15);
        assert!(landau_hamiltonian_fock(&cfg, dim(3)).is_err());
    }

    #[test]
    fn displaced_hamiltonian_is_real_tridiagonal() {
        let cfg = LandauConfig::natural(1.0, 0.7, 0.0).unwrap();
        let h = landau_hamiltonian_fock(&cfg, dim(10)).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let v = h.get(i, j);
                assert_eq!(v.im, 0.0);
                assert_eq!(v, h.get(j, i));
                if i.abs_diff(j) > 1 {
                    assert_eq!(v.re, 0.0);
                }
            }
        }
    }

    #[test]
    fn spectrum_matches_completed_square() {
        let cfg = LandauConfig::natural(1.0, 0.7, 0.0).unwrap();
        let h = landau_hamiltonian_fock(&cfg, dim(128)).unwrap();
        let values = hermitian_spectrum(&h).unwrap();
        let shift = cfg.nu().powi(2) / cfg.mu();
        for (n, e) in values.iter().take(10).enumerate() {
            assert!((e - (n as f64 + 0.5 - shift)).abs() < 1e-8, "n={n}: {e}");
        }
    }

    #[test]
    fn tilting_diagonalizes() {
        let cfg = LandauConfig::natural(1.0, 0.7, 0.0).unwrap();
        let d = dim(128);
        let h = landau_hamiltonian_fock(&cfg, d).unwrap();
        let tilted = tilt_hamiltonian(&h, &cfg.tilt_parameter().unwrap(), d).unwrap();
        assert!(off_diagonal_max(&tilted, 32) < 1e-8);
        let untouched = tilt_hamiltonian(
            &h,
            &WeylParameter::new(Complex64::new(0.0, 0.0)).unwrap(),
            d,
        )
        .unwrap();
        assert!(untouched.block_max_diff(&h, 128).unwrap() < 1e-15);
        let generic = tilt_hamiltonian(
            &h,
            &WeylParameter::new(Complex64::new(0.3, 0.0)).unwrap(),
            d,
        )
        .unwrap();
        assert!(generic.block_max_diff(&generic.adjoint(), 128).unwrap() < 1e-10);
    }

    #[test]
    fn energy_ignores_kx() {
        let a = LandauConfig::new(1.0, 1.0, 1.0, 1.0, 1.0, 0.3, 0.5).unwrap();
        let b = LandauConfig { k_x: -2.0, ..a };
        assert_eq!(landau_energy(3, &a), landau_energy(3, &b));
        assert_eq!(
            landau_energy(0, &LandauConfig::natural(2.0, 0.0, 0.0).unwrap()),
            1.0
        );
    }

    #[test]
    fn eigenfunction_is_centered_and_normalized() {
        let cfg = LandauConfig::natural(1.0, 0.8, 0.0).unwrap();
        let ys: Vec<f64> = (0..161).map(|i| -3.2 + 0.05 * i as f64).collect();
        let psi = landau_eigenfunction(0, &cfg, &ys).unwrap();
        let peak = psi
            .iter()
            .cloned()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((ys[peak.0] - 0.8).abs() < 1e-9);

        let rule = make_quadrature(QuadratureKind::GaussHermite, 40).unwrap();
        let lam = cfg.magnetic_length();
        let norm = rule.integrate(|t| {
            let y = cfg.d() + lam * t;
            let v = landau_eigenfunction(4, &cfg, &[y]).unwrap()[0];
            lam * v * v * (t * t).exp()
        });
        assert!((norm - 1.0).abs() < 1e-8, "{norm}");
    }

    #[test]
    fn sturmian_values_and_orthonormality() {
        assert!((sturmian_radial(0, 0, 0.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sturmian_radial(2, 3, 0.0).unwrap(), 0.0);
        for n in 0..5 {
            assert!(sturmian_radial(n, 2, 1e-6).unwrap() > 0.0);
        }
        let m = 2;
        let rule = make_quadrature(QuadratureKind::GaussLaguerre { m: m as u32 }, 40).unwrap();
        for i in 0..=6 {
            for j in 0..=6 {
                // weight y^m e^{-y} is already inside U_i U_j
                let g = rule.integrate(|y| {
                    sturmian_radial(i, m, y).unwrap()
                        * sturmian_radial(j, m, y).unwrap()
                        * y.powi(-(m as i32))
                        * y.exp()
                        / 2.0
                });
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-8, "({i},{j}) {g}");
            }
        }
    }

    #[test]
    fn recurrence_matches_direct_formula() {
        for m in [0, 1, 3] {
            for y in [0.0, 0.3, 2.0, 9.5] {
                let values = sturmian_values(12, m, y);
                for (n, v) in values.iter().enumerate() {
                    let direct = sturmian_radial(n, m, y).unwrap();
                    assert!(
                        (v - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                        "{n} {m} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn radial_equation_holds() {
        for n in 0..=4 {
            for m in 0..=3 {
                for i in 1..=10 {
                    let x = 0.3 * i as f64;
                    let r = radial_equation_residual(n, m, x, 1e-4).unwrap();
                    assert!(r < 1e-4, "n={n} m={m} x={x}: {r:e}");
                }
            }
        }
    }

    #[test]
    fn gauge_spectra_agree() {
        let cfg = LandauConfig::natural(1.7, 0.0, 0.6).unwrap();
        for n in 0..10 {
            assert_eq!(symmetric_gauge_energy(n, 0, &cfg), landau_energy(n, &cfg));
            let lam = symmetric_gauge_lambda(symmetric_gauge_energy(n, 2, &cfg), 2, &cfg);
            assert!((lam - (4 * n + 6) as f64).abs() < 1e-12);
        }
        let free = cfg.longitudinal_energy();
        assert_eq!(symmetric_gauge_lambda(free, 0, &cfg), 0.0);
        let natural = LandauConfig::natural(1.0, 0.0, 0.0).unwrap();
        assert_eq!(
            symmetric_gauge_lambda(landau_energy(0, &natural), 0, &natural),
            2.0
        );
    }

    #[test]
    fn closed_form_reduces_at_zero_displacement() {
        let p = SU11Parameter::new(0.0, 0.0).unwrap();
        for (n, m) in [(0, 0), (2, 1), (3, 2)] {
            for rho in [0.0, 0.4, 1.7] {
                let got = pncs_symmetric_closed(n, m, &p, rho, 0.3).unwrap();
                let radial = sturmian_radial(n, m as usize, rho * rho).unwrap();
                let expect = Complex64::from_polar(1.0, m as f64 * 0.3) * radial
                    / (2.0 * PI).sqrt()
                    * if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((got - expect).norm() < 1e-14);
            }
        }
        assert!(pncs_symmetric_printed(0, 0, &p, 1.0, 0.0).is_err());
    }

    #[test]
    fn closed_form_matches_oracle() {
        let p = SU11Parameter::new(0.6, 0.4).unwrap();
        let (n, m) = (2, 1);
        let reference = pncs_symmetric_oracle(n, m, &p, 1.0, 0.2, 400).unwrap();
        let phase = reference / pncs_symmetric_closed(n, m, &p, 1.0, 0.2).unwrap();
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        for i in 0..20 {
            let rho = 0.15 * i as f64;
            let o = pncs_symmetric_oracle(n, m, &p, rho, 0.2, 400).unwrap();
            let c = pncs_symmetric_closed(n, m, &p, rho, 0.2).unwrap() * phase;
            assert!((o - c).norm() < 1e-10, "rho={rho}: {o} vs {c}");
        }
    }

    #[test]
    fn printed_form_disagrees_beyond_ground_state() {
        let p = SU11Parameter::new(0.6, 0.4).unwrap();
        let o = pncs_symmetric_oracle(2, 1, &p, 1.0, 0.0, 400).unwrap();
        let printed = pncs_symmetric_printed(2, 1, &p, 1.0, 0.0).unwrap();
        assert!((o.norm() - printed.norm()).abs() > 1e-3);
    }

    #[test]
    fn oracle_is_stable_in_term_count() {
        let p = SU11Parameter::new(0.3, 0.0).unwrap();
        let a = pncs_symmetric_oracle(1, 0, &p, 0.9, 0.0, 60).unwrap();
        let b = pncs_symmetric_oracle(1, 0, &p, 0.9, 0.0, 120).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn pole_guard_fires_before_overflow() {
        let mut tau = 1.0;
        while tau < 39.0 {
            let p = SU11Parameter::new(tau, PI).unwrap();
            match pncs_symmetric_closed(1, 1, &p, 0.5, 0.0) {
                Ok(v) => assert!(v.re.is_finite() && v.im.is_finite()),
                Err(LabError::PoleGuard(_)) => return,
                Err(e) => panic!("unexpected {e}"),
            }
            tau += 1.0;
        }
        panic!("pole guard never fired");
    }
}
