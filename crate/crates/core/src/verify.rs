//! The verification suite: every closed form checked against its
//! independent construction over a fixed default grid, plus the exact
//! algebraic identities and convergence orders of the contraction.

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::contraction::{
    aligned_distance, commutator_residual, contract_generators, contraction_interior,
    exponent_limit_sequence, ladder_contraction_gap, overlap_deficit, power_law_fit, richardson,
    ContractionParam, DEFAULT_C_GRID,
};
use crate::errata::{Erratum, ERRATA};
use crate::error::{LabError, Result};
use crate::fock::{apply, build_ladder, commutator, FockDim, FockVector, OperatorMatrix};
use crate::landau::{
    hermitian_spectrum, landau_eigenfunction, landau_energy, landau_hamiltonian_fock,
    landau_levels_numeric, off_diagonal_max, pncs_symmetric_closed, pncs_symmetric_oracle,
    radial_equation_residual, sturmian_radial, sturmian_series, symmetric_gauge_energy,
    tilt_hamiltonian, LandauConfig,
};
use crate::special::{make_quadrature, QuadratureKind};
use crate::su11::{
    normal_form_product, perelomov_displacement, perelomov_ncs, perelomov_standard,
    su11_generators, su11_ladder_transformed, BargmannIndex, SU11Parameter,
};
use crate::weyl::{
    displaced_ladder, number_coherent_state, transformed_ladder, weyl_disentangled, weyl_operator,
    WeylParameter,
};
use crate::Complex64;

/// Truncation used by the default grid.
pub const VERIFY_DIM: usize = 128;
/// Leading block on which the disentangled oscillator identity is compared.
pub const H4_PRODUCT_BLOCK: usize = 32;
/// Leading block on which the su(1,1) normal form is compared.
pub const SU11_PRODUCT_BLOCK: usize = 16;
/// Leading block for the tilted Landau Hamiltonian.
pub const LANDAU_BLOCK: usize = 32;
/// Tolerance for identities that hold exactly in floating point.
pub const EXACT_TOL: f64 = 1e-14;

/// Largest error of a check over its grid and where it occurred.
#[derive(Debug, Clone, PartialEq)]
struct Measurement {
    value: f64,
    at: String,
}

impl Measurement {
    fn new() -> Self {
        Measurement {
            value: 0.0,
            at: String::new(),
        }
    }

    fn record(&mut self, value: f64, at: impl FnOnce() -> String) {
        if self.value.is_nan() {
            return;
        }
        if self.at.is_empty() || value.is_nan() || value > self.value {
            self.value = value;
            self.at = at();
        }
    }
}

type CheckFn = fn() -> Result<Measurement>;

struct CheckSpec {
    name: &'static str,
    anchor: &'static str,
    grid: &'static str,
    tolerance: f64,
    run: CheckFn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub grid: String,
    pub worst_point: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub wall_ms: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub tolerance_scale: f64,
    pub injected_fault: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub errata: Vec<Erratum>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {:<44} [{}]  {:.3e} < {:.1e}  ({:.0} ms)\n",
                c.name, c.anchor, c.measured, c.tolerance, c.wall_ms
            ));
            if let Some(e) = &c.error {
                out.push_str(&format!("      error: {e}\n"));
            } else if !c.passed {
                out.push_str(&format!("      worst at {}\n", c.worst_point));
            }
        }
        out.push_str(&format!("errata entries: {}\n", self.errata.len()));
        for e in &self.errata {
            out.push_str(&format!("  {} ({})\n", e.id, e.construct));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.checks.len() - failed,
            self.checks.len()
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Multiplies every default tolerance; above one needs `allow_loose`.
    pub tolerance_scale: f64,
    pub allow_loose: bool,
    /// Name of a check whose tolerance is forced to zero.
    pub inject_fault: Option<String>,
    /// Run only checks whose name starts with this prefix.
    pub only: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance_scale: 1.0,
            allow_loose: false,
            inject_fault: None,
            only: None,
        }
    }
}

impl VerifyOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance_scale > 0.0 && self.tolerance_scale.is_finite()) {
            return Err(LabError::domain(
                "tolerance_scale",
                self.tolerance_scale,
                "must be positive and finite",
            ));
        }
        if self.tolerance_scale > 1.0 && !self.allow_loose {
            return Err(LabError::domain(
                "tolerance_scale",
                self.tolerance_scale,
                "loosening the default tolerances requires --allow-loose",
            ));
        }
        if let Some(name) = &self.inject_fault {
            if !SUITE.iter().any(|c| c.name == name) {
                return Err(LabError::invalid(
                    "inject_fault",
                    format!("no check named {name:?}"),
                ));
            }
        }
        if let Some(prefix) = &self.only {
            if !SUITE.iter().any(|c| c.name.starts_with(prefix.as_str())) {
                return Err(LabError::invalid(
                    "only",
                    format!("no check starts with {prefix:?}"),
                ));
            }
        }
        Ok(())
    }
}

/// Names of all checks in suite order.
pub fn check_names() -> Vec<&'static str> {
    SUITE.iter().map(|c| c.name).collect()
}

/// Default tolerance of a named check.
pub fn default_tolerance(name: &str) -> Option<f64> {
    SUITE.iter().find(|c| c.name == name).map(|c| c.tolerance)
}

pub fn run_verification(opts: &VerifyOptions) -> Result<VerificationReport> {
    opts.validate()?;
    let selected: Vec<&CheckSpec> = SUITE
        .iter()
        .filter(|c| opts.only.as_deref().is_none_or(|p| c.name.starts_with(p)))
        .collect();
    let records: Vec<CheckRecord> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|spec| scope.spawn(move || run_check(spec, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checks do not panic"))
            .collect()
    });
    Ok(VerificationReport {
        passed: records.iter().all(|r| r.passed),
        tolerance_scale: opts.tolerance_scale,
        injected_fault: opts.inject_fault.clone(),
        checks: records,
        errata: ERRATA.to_vec(),
    })
}

fn run_check(spec: &CheckSpec, opts: &VerifyOptions) -> CheckRecord {
    let tolerance = if opts.inject_fault.as_deref() == Some(spec.name) {
        0.0
    } else {
        spec.tolerance * opts.tolerance_scale
    };
    let start = Instant::now();
    let outcome = (spec.run)();
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (measured, worst_point, error) = match outcome {
        Ok(m) => (m.value, m.at, None),
        Err(e) => (f64::NAN, String::new(), Some(e.to_string())),
    };
    CheckRecord {
        name: spec.name.to_string(),
        anchor: spec.anchor.to_string(),
        grid: spec.grid.to_string(),
        worst_point,
        measured,
        tolerance,
        passed: measured < tolerance,
        wall_ms,
        error,
    }
}

fn dim(n: usize) -> FockDim {
    FockDim::new(n).expect("suite dimensions are valid")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Twenty-five displacements with `|alpha| <= 1.5`: five radii by five angles.
pub fn h4_alpha_grid() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(25);
    for r in [0.3, 0.6, 0.9, 1.2, 1.5] {
        for j in 0..5 {
            out.push(Complex64::from_polar(r, 0.1 + 2.0 * PI * j as f64 / 5.0));
        }
    }
    out
}

pub const SU11_STATE_K: [f64; 3] = [0.5, 1.0, 2.0];
pub const SU11_PRODUCT_K: [f64; 4] = [0.5, 1.0, 1.5, 5.0];
pub const SU11_TAU: [f64; 4] = [0.3, 0.6, 0.9, 1.2];
pub const SU11_PHI: [f64; 4] = [0.3, 1.9, 3.5, 5.1];

fn su11_points(ks: &[f64]) -> Vec<(BargmannIndex, SU11Parameter)> {
    let mut out = Vec::new();
    for &k in ks {
        for tau in SU11_TAU {
            for phi in SU11_PHI {
                out.push((
                    BargmannIndex::new(k).expect("positive"),
                    SU11Parameter::new(tau, phi).expect("finite"),
                ));
            }
        }
    }
    out
}

fn h4_closed_sum() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for alpha in h4_alpha_grid() {
        let p = WeylParameter::new(alpha)?;
        let disp = weyl_operator(&p, d)?;
        for n in 0..=8 {
            let oracle = apply(&disp, &FockVector::basis(d, n)?)?;
            let state = number_coherent_state(n, &p, d)?.coeffs;
            let deficit = (c(1.0, 0.0) - oracle.inner(&state)?).norm();
            m.record(deficit, || format!("n={n} alpha={alpha:.4}"));
        }
    }
    Ok(m)
}

fn h4_disentangled() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for alpha in h4_alpha_grid() {
        let p = WeylParameter::new(alpha)?;
        let err =
            weyl_operator(&p, d)?.block_max_diff(&weyl_disentangled(&p, d)?, H4_PRODUCT_BLOCK)?;
        m.record(err, || format!("alpha={alpha:.4}"));
    }
    Ok(m)
}

fn h4_transformed_ladder() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let l = build_ladder(d);
    let mut m = Measurement::new();
    for alpha in h4_alpha_grid() {
        let p = WeylParameter::new(alpha)?;
        let disp = weyl_operator(&p, d)?;
        let conjugated = disp.adjoint().compose(&l.a)?.compose(&disp)?;
        let (closed, _) = transformed_ladder(&p, d)?;
        let err = conjugated.block_max_diff(&closed, d.interior())?;
        m.record(err, || format!("alpha={alpha:.4}"));
    }
    Ok(m)
}

fn h4_displaced_ladder() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for alpha in h4_alpha_grid() {
        let p = WeylParameter::new(alpha)?;
        let (lower, raise) = displaced_ladder(&p, d)?;
        let states: Vec<FockVector> = (0..=9)
            .map(|n| number_coherent_state(n, &p, d).map(|s| s.coeffs))
            .collect::<Result<_>>()?;
        for n in 0..=8 {
            let up = apply(&raise, &states[n])?
                .sub(&states[n + 1].scaled(c(((n + 1) as f64).sqrt(), 0.0)))?
                .max_abs();
            let down = if n == 0 {
                apply(&lower, &states[0])?.max_abs()
            } else {
                apply(&lower, &states[n])?
                    .sub(&states[n - 1].scaled(c((n as f64).sqrt(), 0.0)))?
                    .max_abs()
            };
            m.record(up.max(down), || format!("n={n} alpha={alpha:.4}"));
        }
    }
    Ok(m)
}

fn su11_closure() -> Result<Measurement> {
    let d = dim(64);
    let block = d.get() - 1;
    let mut m = Measurement::new();
    for k in SU11_PRODUCT_K {
        let g = su11_generators(BargmannIndex::new(k)?, d);
        let e1 = commutator(&g.k_minus, &g.k_plus)?
            .block_max_diff(&g.k_zero.scaled(c(2.0, 0.0)), block)?;
        let e2 = commutator(&g.k_zero, &g.k_plus)?.block_max_diff(&g.k_plus, block)?;
        let e3 = commutator(&g.k_zero, &g.k_minus)?
            .block_max_diff(&g.k_minus.scaled(c(-1.0, 0.0)), block)?;
        m.record(e1.max(e2).max(e3), || format!("k={k}"));
    }
    Ok(m)
}

fn su11_casimir() -> Result<Measurement> {
    let d = dim(64);
    let mut m = Measurement::new();
    for k in SU11_PRODUCT_K {
        let g = su11_generators(BargmannIndex::new(k)?, d);
        let sym = g
            .k_plus
            .compose(&g.k_minus)?
            .add(&g.k_minus.compose(&g.k_plus)?)?
            .scaled(c(0.5, 0.0));
        let casimir = g.k_zero.compose(&g.k_zero)?.sub(&sym)?;
        let expect = OperatorMatrix::identity(d).scaled(c(k * (k - 1.0), 0.0));
        let scale = (k + d.get() as f64).powi(2);
        let err = casimir.block_max_diff(&expect, d.get() - 1)? / scale;
        m.record(err, || format!("k={k}"));
    }
    Ok(m)
}

fn su11_standard_state() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for (k, p) in su11_points(&SU11_STATE_K)
        .into_iter()
        .chain([(BargmannIndex::new(1.0)?, SU11Parameter::new(1.0, 0.0)?)])
    {
        let disp = perelomov_displacement(&p, k, 0, d)?;
        let state = perelomov_standard(k, &p, d)?.coeffs;
        let mut err: f64 = 0.0;
        for s in 0..d.interior() {
            err = err.max((disp.get(s, 0) - state.get(s)).norm());
        }
        m.record(err, || {
            format!("k={} tau={} phi={:.2}", k.value(), p.tau(), p.phi())
        });
    }
    Ok(m)
}

fn su11_normal_form() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for (k, p) in su11_points(&SU11_PRODUCT_K) {
        let err = perelomov_displacement(&p, k, 0, d)?
            .block_max_diff(&normal_form_product(&p, k, d)?, SU11_PRODUCT_BLOCK)?;
        m.record(err, || {
            format!("k={} tau={} phi={:.2}", k.value(), p.tau(), p.phi())
        });
    }
    Ok(m)
}

fn su11_ncs() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for (k, p) in su11_points(&SU11_STATE_K) {
        let disp = perelomov_displacement(&p, k, 6, d)?;
        for n in 0..=6 {
            let oracle = apply(&disp, &FockVector::basis(d, n)?)?;
            let state = perelomov_ncs(n, k, &p, d)?.coeffs;
            let deficit = (c(1.0, 0.0) - oracle.inner(&state)?).norm();
            m.record(deficit, || {
                format!("n={n} k={} tau={} phi={:.2}", k.value(), p.tau(), p.phi())
            });
        }
    }
    Ok(m)
}

fn su11_ladder() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for (k, p) in su11_points(&SU11_STATE_K) {
        let (lp, lm) = su11_ladder_transformed(&p, k, d)?;
        let states: Vec<FockVector> = (0..=7)
            .map(|n| perelomov_ncs(n, k, &p, d).map(|s| s.coeffs))
            .collect::<Result<_>>()?;
        let two_k = 2.0 * k.value();
        for n in 0..=6 {
            let nf = n as f64;
            let up = apply(&lp, &states[n])?
                .sub(&states[n + 1].scaled(c(((nf + 1.0) * (two_k + nf)).sqrt(), 0.0)))?
                .max_abs();
            let down = if n == 0 {
                apply(&lm, &states[0])?.max_abs()
            } else {
                apply(&lm, &states[n])?
                    .sub(&states[n - 1].scaled(c((nf * (two_k + nf - 1.0)).sqrt(), 0.0)))?
                    .max_abs()
            };
            m.record(up.max(down), || {
                format!("n={n} k={} tau={} phi={:.2}", k.value(), p.tau(), p.phi())
            });
        }
    }
    Ok(m)
}

fn landau_configs() -> Result<Vec<LandauConfig>> {
    let mut out = Vec::new();
    for omega in [1.0, 2.5] {
        for d in [0.0, 0.7, 1.5] {
            for kz in [0.0, 0.8] {
                out.push(LandauConfig::natural(omega, d, kz)?);
            }
        }
    }
    // physical units with non-trivial constants
    out.push(LandauConfig::new(3.0, 0.5, 2.0, 1.5, 0.8, 0.9, 0.4)?);
    Ok(out)
}

fn landau_spectrum() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for cfg in landau_configs()? {
        let levels = landau_levels_numeric(&cfg, d)?;
        for (n, e) in levels.iter().take(11).enumerate() {
            let err = (e - landau_energy(n, &cfg)).abs() / cfg.mu();
            m.record(err, || {
                format!(
                    "n={n} omega={:.3} d={:.3} kz={}",
                    cfg.omega(),
                    cfg.d(),
                    cfg.k_z
                )
            });
        }
    }
    Ok(m)
}

fn landau_tilted_spectrum() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for cfg in landau_configs()? {
        let h = landau_hamiltonian_fock(&cfg, d)?;
        let tilted = tilt_hamiltonian(&h, &cfg.tilt_parameter()?, d)?;
        let block = OperatorMatrix::from_fn(FockDim::new(LANDAU_BLOCK)?, |i, j| tilted.get(i, j));
        let shift = cfg.longitudinal_energy() + 0.5 * cfg.mass * (cfg.omega() * cfg.d()).powi(2);
        let values = hermitian_spectrum(&block)?;
        for (n, e) in values.iter().take(11).enumerate() {
            let err = (e + shift - landau_energy(n, &cfg)).abs() / cfg.mu();
            m.record(err, || {
                format!("n={n} omega={:.3} d={:.3}", cfg.omega(), cfg.d())
            });
        }
    }
    Ok(m)
}

fn landau_tilt() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    for cfg in landau_configs()? {
        let h = landau_hamiltonian_fock(&cfg, d)?;
        let tilted = tilt_hamiltonian(&h, &cfg.tilt_parameter()?, d)?;
        let err = off_diagonal_max(&tilted, LANDAU_BLOCK) / cfg.mu();
        m.record(err, || format!("omega={:.3} d={:.3}", cfg.omega(), cfg.d()));
    }
    Ok(m)
}

fn landau_norm() -> Result<Measurement> {
    let rule = make_quadrature(QuadratureKind::GaussHermite, 60)?;
    let mut m = Measurement::new();
    for cfg in landau_configs()? {
        let lam = cfg.magnetic_length();
        for n in [0, 4, 10] {
            let ys: Vec<f64> = rule.nodes.iter().map(|t| cfg.d() + lam * t).collect();
            let psi = landau_eigenfunction(n, &cfg, &ys)?;
            let norm: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .zip(&psi)
                .map(|((t, w), v)| w * lam * v * v * (t * t).exp())
                .sum();
            m.record((norm - 1.0).abs(), || format!("n={n} lambda={lam:.3}"));
        }
    }
    Ok(m)
}

fn sturmian_orthonormality() -> Result<Measurement> {
    let mut m = Measurement::new();
    for mm in 0..=3u32 {
        let rule = make_quadrature(QuadratureKind::GaussLaguerre { m: mm }, 40)?;
        let values: Vec<Vec<f64>> = (0..=6)
            .map(|n| {
                rule.nodes
                    .iter()
                    .map(|&y| sturmian_radial(n, mm as usize, y))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        // the weight y^m e^{-y} is already inside U_i U_j
        let strip: Vec<f64> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(y, w)| w * y.powi(-(mm as i32)) * y.exp() / 2.0)
            .collect();
        for i in 0..=6 {
            for j in 0..=6 {
                let g: f64 = (0..strip.len())
                    .map(|q| strip[q] * values[i][q] * values[j][q])
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                m.record((g - expect).abs(), || format!("m={mm} ({i},{j})"));
            }
        }
    }
    Ok(m)
}

fn radial_equation() -> Result<Measurement> {
    let mut m = Measurement::new();
    for n in 0..=4 {
        for mm in 0..=3 {
            for i in 1..=10 {
                let x = 0.3 * i as f64;
                let r = radial_equation_residual(n, mm, x, 1e-4)?;
                m.record(r, || format!("n={n} m={mm} x={x:.1}"));
            }
        }
    }
    Ok(m)
}

fn gauge_consistency() -> Result<Measurement> {
    let mut m = Measurement::new();
    for omega in [0.5, 1.0, 3.0] {
        for kz in [0.0, 0.6, 1.3] {
            let cfg = LandauConfig::natural(omega, 0.0, kz)?;
            for n in 0..=10 {
                let diff = (symmetric_gauge_energy(n, 0, &cfg) - landau_energy(n, &cfg)).abs();
                m.record(diff, || format!("n={n} omega={omega} kz={kz}"));
            }
        }
    }
    Ok(m)
}

const SYMMETRIC_TAU: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
const SYMMETRIC_PHI: [f64; 3] = [0.0, 0.9, 2.4];
const ORACLE_TERMS: usize = 400;

fn radii() -> Vec<f64> {
    (0..20).map(|i| 0.2 * i as f64).collect()
}

/// Max-norm relative error of `candidate` against `reference` after fitting
/// one global phase at the reference's largest sample.
pub fn phase_fitted_error(reference: &[Complex64], candidate: &[Complex64]) -> f64 {
    let (i, peak) = reference
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.norm()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if peak == 0.0 {
        return candidate.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    let phase = reference[i] / candidate[i];
    let phase = phase / phase.norm();
    reference
        .iter()
        .zip(candidate)
        .map(|(r, v)| (r - v * phase).norm())
        .fold(0.0, f64::max)
        / peak
}

fn symmetric_closed_form() -> Result<Measurement> {
    let mut m = Measurement::new();
    let rs = radii();
    for n in 0..=4 {
        for mm in 0..=3u32 {
            for tau in SYMMETRIC_TAU {
                for phi in SYMMETRIC_PHI {
                    let p = SU11Parameter::new(tau, phi)?;
                    let angle = 0.7;
                    let oracle: Vec<Complex64> = rs
                        .iter()
                        .map(|&r| pncs_symmetric_oracle(n, mm, &p, r, angle, ORACLE_TERMS))
                        .collect::<Result<_>>()?;
                    let closed: Vec<Complex64> = rs
                        .iter()
                        .map(|&r| pncs_symmetric_closed(n, mm, &p, r, angle))
                        .collect::<Result<_>>()?;
                    let err = phase_fitted_error(&oracle, &closed);
                    m.record(err, || format!("n={n} m={mm} tau={tau} phi={phi}"));
                }
            }
        }
    }
    Ok(m)
}

fn symmetric_ground_state() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let mut m = Measurement::new();
    let rs = radii();
    for mm in 0..=3u32 {
        for (tau, phi) in [(0.5, 0.9), (1.0, 2.4)] {
            let p = SU11Parameter::new(tau, phi)?;
            let coeffs = perelomov_standard(BargmannIndex::from_angular(mm), &p, d)?.coeffs;
            let raw: Vec<Complex64> = coeffs.coeffs().iter().copied().collect();
            let standard: Vec<Complex64> = rs
                .iter()
                .map(|&r| sturmian_series(&raw, mm, r, 0.4))
                .collect::<Result<_>>()?;
            let closed: Vec<Complex64> = rs
                .iter()
                .map(|&r| pncs_symmetric_closed(0, mm, &p, r, 0.4))
                .collect::<Result<_>>()?;
            let err = phase_fitted_error(&standard, &closed);
            m.record(err, || format!("m={mm} tau={tau} phi={phi}"));
        }
    }
    Ok(m)
}

const CONTRACTION_DIM: usize = 64;

fn contraction_generators() -> Result<Measurement> {
    let d = dim(CONTRACTION_DIM);
    let l = build_ladder(d);
    let mut m = Measurement::new();
    for c in DEFAULT_C_GRID {
        let cp = ContractionParam::new(c)?;
        let h = contract_generators(&cp, d);
        let shift = h.h_zero.block_max_diff(&l.number, d.get())?;
        let raise_err = commutator(&h.h_zero, &h.h_plus)?.block_max_diff(&h.h_plus, d.get())?;
        let lower_err = commutator(&h.h_zero, &h.h_minus)?
            .block_max_diff(&h.h_minus.scaled(Complex64::new(-1.0, 0.0)), d.get())?;
        let (r1, _) = commutator_residual(&cp, d)?;
        let n_star = contraction_interior(d) as f64;
        let r1_err = (r1 - 2.0 * c * c * n_star).abs();
        m.record(shift.max(raise_err).max(lower_err).max(r1_err), || {
            format!("c={c}")
        });
    }
    Ok(m)
}

fn contraction_commutator_order() -> Result<Measurement> {
    let d = dim(CONTRACTION_DIM);
    let r1s: Vec<f64> = DEFAULT_C_GRID
        .iter()
        .map(|&c| commutator_residual(&ContractionParam::new(c)?, d).map(|r| r.0))
        .collect::<Result<_>>()?;
    let fit = power_law_fit(&DEFAULT_C_GRID, &r1s)?;
    let mut m = Measurement::new();
    m.record((fit.order - 2.0).abs(), || {
        format!("order={:.6} R2={:.6}", fit.order, fit.r_squared)
    });
    Ok(m)
}

fn contraction_ladder_order() -> Result<Measurement> {
    let d = dim(CONTRACTION_DIM);
    let gaps: Vec<f64> = DEFAULT_C_GRID
        .iter()
        .map(|&c| ladder_contraction_gap(&ContractionParam::new(c)?, d))
        .collect::<Result<_>>()?;
    let fit = power_law_fit(&DEFAULT_C_GRID, &gaps)?;
    let mut m = Measurement::new();
    m.record((fit.order - 2.0).abs(), || {
        format!(
            "order={:.6} C={:.4} R2={:.6}",
            fit.order, fit.prefactor, fit.r_squared
        )
    });
    Ok(m)
}

const CONTRACTION_STATES: [(usize, f64); 3] = [(0, 0.6), (2, 0.4), (4, 1.0)];

fn deficits(n: usize, alpha: f64) -> Result<Vec<f64>> {
    let d = dim(VERIFY_DIM);
    DEFAULT_C_GRID
        .iter()
        .map(|&cv| overlap_deficit(c(alpha, 0.0), &ContractionParam::new(cv)?, n, d))
        .collect()
}

fn contraction_state_order() -> Result<Measurement> {
    let mut m = Measurement::new();
    for (n, alpha) in CONTRACTION_STATES {
        let dist: Vec<f64> = deficits(n, alpha)?
            .into_iter()
            .map(aligned_distance)
            .collect();
        let fit = power_law_fit(&DEFAULT_C_GRID, &dist)?;
        m.record((fit.order - 2.0).abs(), || {
            format!("n={n} alpha={alpha} order={:.4}", fit.order)
        });
    }
    Ok(m)
}

fn contraction_deficit_order() -> Result<Measurement> {
    let mut m = Measurement::new();
    for (n, alpha) in CONTRACTION_STATES {
        let fit = power_law_fit(&DEFAULT_C_GRID, &deficits(n, alpha)?)?;
        m.record((fit.order - 4.0).abs(), || {
            format!("n={n} alpha={alpha} order={:.4}", fit.order)
        });
    }
    Ok(m)
}

fn contraction_deficit_halving() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let alpha = c(0.4, 0.0);
    let coarse = overlap_deficit(alpha, &ContractionParam::new(0.08)?, 2, d)?;
    let fine = overlap_deficit(alpha, &ContractionParam::new(0.04)?, 2, d)?;
    let mut m = Measurement::new();
    m.record((fine - 0.25 * coarse).max(0.0), || {
        format!("deficit(0.08)={coarse:.3e} deficit(0.04)={fine:.3e}")
    });
    Ok(m)
}

fn contraction_near_limit() -> Result<Measurement> {
    let d = dim(VERIFY_DIM);
    let deficit = overlap_deficit(c(0.6, 0.0), &ContractionParam::new(0.05)?, 0, d)?;
    let mut m = Measurement::new();
    m.record(deficit, || "n=0 alpha=0.6 c=0.05".into());
    Ok(m)
}

fn contraction_exponent_limit() -> Result<Measurement> {
    let mut m = Measurement::new();
    let a = c(0.6, 0.0);
    let target = (-0.5 * a.norm_sqr()).exp();
    let seq = exponent_limit_sequence(a, &DEFAULT_C_GRID)?;
    let extrapolated = richardson(seq[2], seq[3], 2);
    m.record((extrapolated - target).abs(), || {
        "alpha=0.6 Richardson(0.05, 0.025)".into()
    });
    let small = c(0.25, 0.0);
    let raw = exponent_limit_sequence(small, &[0.025])?[0];
    m.record((raw - (-0.5 * small.norm_sqr()).exp()).abs(), || {
        "alpha=0.25 c=0.025".into()
    });
    Ok(m)
}

fn contraction_exponent_order() -> Result<Measurement> {
    let a = c(0.6, 0.0);
    let target = (-0.5 * a.norm_sqr()).exp();
    let errors: Vec<f64> = exponent_limit_sequence(a, &DEFAULT_C_GRID)?
        .iter()
        .map(|v| (v - target).abs())
        .collect();
    let fit = power_law_fit(&DEFAULT_C_GRID, &errors)?;
    let mut m = Measurement::new();
    m.record((fit.order - 2.0).abs(), || {
        format!("order={:.6}", fit.order)
    });
    Ok(m)
}

const SUITE: &[CheckSpec] = &[
    CheckSpec {
        name: "h4.closed-sum-vs-exponential",
        anchor: "h4/number-coherent-state",
        grid: "n<=8, 25 alpha with |alpha|<=1.5, dim 128",
        tolerance: 1e-10,
        run: h4_closed_sum,
    },
    CheckSpec {
        name: "h4.disentangled-identity",
        anchor: "h4/disentangled-form",
        grid: "25 alpha with |alpha|<=1.5, dim 128, block 32",
        tolerance: 1e-9,
        run: h4_disentangled,
    },
    CheckSpec {
        name: "h4.transformed-ladder",
        anchor: "h4/transformed-ladder",
        grid: "25 alpha with |alpha|<=1.5, dim 128, block 64",
        tolerance: 1e-9,
        run: h4_transformed_ladder,
    },
    CheckSpec {
        name: "h4.displaced-ladder",
        anchor: "h4/ladder-action",
        grid: "n<=8, 25 alpha with |alpha|<=1.5, dim 128",
        tolerance: 1e-8,
        run: h4_displaced_ladder,
    },
    CheckSpec {
        name: "su11.closure",
        anchor: "su11/commutation-relations",
        grid: "k in {1/2,1,3/2,5}, dim 64, block 63",
        tolerance: 1e-10,
        run: su11_closure,
    },
    CheckSpec {
        name: "su11.casimir",
        anchor: "su11/casimir",
        grid: "k in {1/2,1,3/2,5}, dim 64, block 63, relative to (k+n_max)^2",
        tolerance: 1e-9,
        run: su11_casimir,
    },
    CheckSpec {
        name: "su11.standard-state-vs-exponential",
        anchor: "su11/standard-coherent-state",
        grid: "k in {1/2,1,2}, tau<=1.2, 4 phi, plus k=1 tau=1; rows < 64",
        tolerance: 1e-9,
        run: su11_standard_state,
    },
    CheckSpec {
        name: "su11.normal-form-identity",
        anchor: "su11/normal-form",
        grid: "k in {1/2,1,3/2,5}, tau in {0.3,0.6,0.9,1.2}, 4 phi, dim 128, block 16",
        tolerance: 1e-9,
        run: su11_normal_form,
    },
    CheckSpec {
        name: "su11.number-state-vs-exponential",
        anchor: "su11/number-coherent-state",
        grid: "n<=6, k in {1/2,1,2}, tau in {0.3,0.6,0.9,1.2}, 4 phi, dim 128",
        tolerance: 1e-9,
        run: su11_ncs,
    },
    CheckSpec {
        name: "su11.displaced-ladder",
        anchor: "su11/ladder-action",
        grid: "n<=6, k in {1/2,1,2}, tau in {0.3,0.6,0.9,1.2}, 4 phi, dim 128",
        tolerance: 1e-8,
        run: su11_ladder,
    },
    CheckSpec {
        name: "landau.spectrum",
        anchor: "landau/energy-spectrum",
        grid: "n<=10, omega in {1,2.5}, d in {0,0.7,1.5}, kz in {0,0.8}, one physical config; units of hbar omega",
        tolerance: 1e-8,
        run: landau_spectrum,
    },
    CheckSpec {
        name: "landau.tilted-spectrum",
        anchor: "landau/energy-spectrum",
        grid: "n<=10 on the leading 32x32 block of the tilted Hamiltonian",
        tolerance: 1e-8,
        run: landau_tilted_spectrum,
    },
    CheckSpec {
        name: "landau.tilt-removes-linear-terms",
        anchor: "landau/tilted-hamiltonian",
        grid: "y0=d, p0=0; off-diagonal max on block 32, units of hbar omega",
        tolerance: 1e-8,
        run: landau_tilt,
    },
    CheckSpec {
        name: "landau.eigenfunction-norm",
        anchor: "landau/eigenfunction",
        grid: "n in {0,4,10}, 60-point Gauss-Hermite",
        tolerance: 1e-8,
        run: landau_norm,
    },
    CheckSpec {
        name: "symmetric.sturmian-orthonormality",
        anchor: "symmetric/sturmian-basis",
        grid: "n,n'<=6, m<=3, measure dy/2, 40-point Gauss-Laguerre",
        tolerance: 1e-8,
        run: sturmian_orthonormality,
    },
    CheckSpec {
        name: "symmetric.radial-equation",
        anchor: "symmetric/radial-equation",
        grid: "n<=4, m<=3, x in {0.3..3.0}, step 1e-4",
        tolerance: 1e-4,
        run: radial_equation,
    },
    CheckSpec {
        name: "symmetric.gauge-consistency",
        anchor: "symmetric/energy-spectrum",
        grid: "n<=10, m=0, omega in {0.5,1,3}, kz in {0,0.6,1.3}, natural units",
        tolerance: EXACT_TOL,
        run: gauge_consistency,
    },
    CheckSpec {
        name: "symmetric.closed-form-vs-resummation",
        anchor: "symmetric/closed-form",
        grid: "n<=4, m<=3, tau in {0.25,0.5,0.75,1}, 3 phi, 20 radii; relative, one fitted phase",
        tolerance: 1e-8,
        run: symmetric_closed_form,
    },
    CheckSpec {
        name: "symmetric.ground-state-reduction",
        anchor: "symmetric/standard-coherent-state",
        grid: "n=0, m<=3, (tau,phi) in {(0.5,0.9),(1,2.4)}, 20 radii",
        tolerance: 1e-8,
        run: symmetric_ground_state,
    },
    CheckSpec {
        name: "contraction.generator-identities",
        anchor: "contraction/generators",
        grid: "c in {0.2,0.1,0.05,0.025}, dim 64",
        tolerance: 1e-12,
        run: contraction_generators,
    },
    CheckSpec {
        name: "contraction.commutator-order",
        anchor: "contraction/commutators",
        grid: "|order-2| of r1 over c in {0.2,0.1,0.05,0.025}",
        tolerance: 0.1,
        run: contraction_commutator_order,
    },
    CheckSpec {
        name: "contraction.ladder-order",
        anchor: "contraction/generators",
        grid: "|order-2| of max|h+ - a^dag| on indices <= n_max/4",
        tolerance: 0.1,
        run: contraction_ladder_order,
    },
    CheckSpec {
        name: "contraction.state-order",
        anchor: "contraction/coherent-states",
        grid: "|order-2| of the phase-aligned state distance, (n,alpha) in {(0,0.6),(2,0.4),(4,1)}",
        tolerance: 0.2,
        run: contraction_state_order,
    },
    CheckSpec {
        name: "contraction.deficit-order",
        anchor: "contraction/coherent-states",
        grid: "|order-4| of 1-|overlap|, same states",
        tolerance: 0.2,
        run: contraction_deficit_order,
    },
    CheckSpec {
        name: "contraction.deficit-halving",
        anchor: "contraction/coherent-states",
        grid: "deficit(c=0.04) - deficit(c=0.08)/4 for n=2 alpha=0.4",
        tolerance: 1e-6,
        run: contraction_deficit_halving,
    },
    CheckSpec {
        name: "contraction.overlap-near-limit",
        anchor: "contraction/coherent-states",
        grid: "1-|overlap| at n=0 alpha=0.6 c=0.05",
        tolerance: 1e-3,
        run: contraction_near_limit,
    },
    CheckSpec {
        name: "contraction.exponent-limit",
        anchor: "contraction/exponent-limit",
        grid: "alpha=0.6 extrapolated from c in {0.05,0.025}; alpha=0.25 at c=0.025",
        tolerance: 1e-6,
        run: contraction_exponent_limit,
    },
    CheckSpec {
        name: "contraction.exponent-order",
        anchor: "contraction/exponent-limit",
        grid: "|order-2| of the sequence error at alpha=0.6",
        tolerance: 0.1,
        run: contraction_exponent_order,
    },
];
