//! Command-line front end: `state`, `sample`, `verify` and `contract-sweep`.
//!
//! Data goes out as CSV with a `#`-prefixed metadata header. The only
//! run-dependent line is `# timestamp:`; everything else is a pure function
//! of the inputs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::contraction::{
    aligned_distance, commutator_residual, overlap_deficit, power_law_fit, ContractionParam,
    DEFAULT_C_GRID,
};
use crate::error::{LabError, Result};
use crate::fock::{FockDim, FockVector};
use crate::landau::{landau_eigenfunction, landau_state, pncs_symmetric_closed, LandauConfig};
use crate::special::hermite_functions;
use crate::su11::{perelomov_ncs, BargmannIndex, SU11Parameter};
use crate::verify::{run_verification, VerifyOptions};
use crate::weyl::{number_coherent_state, WeylParameter};
use crate::Complex64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Gaussian-unit constants for an electron, used by `--units physical`.
pub mod cgs {
    pub const ELECTRON_CHARGE: f64 = 4.803_204_712_570_263e-10;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;
    pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
    pub const HBAR: f64 = 1.054_571_817e-27;
}

#[derive(Debug, Parser)]
#[command(
    name = "coherent-lab",
    version,
    about = "Number coherent states of h(4) and su(1,1) on a truncated Fock space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the Fock coefficients of a state.
    State(StateArgs),
    /// Sample a wavefunction on a coordinate grid.
    Sample(SampleArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Sweep the contraction parameter and fit convergence orders.
    ContractSweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    H4,
    Su11,
    Landau,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Units {
    Natural,
    Physical,
}

#[derive(Debug, Args)]
struct StateParams {
    #[arg(long, value_enum)]
    family: Family,
    /// Fock or radial quantum number.
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Angular quantum number (symmetric gauge).
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Bargmann index (su11 family).
    #[arg(long)]
    k: Option<f64>,
    /// Displacement as "re,im" (h4 family).
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    tau: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
    #[arg(long, default_value_t = 128)]
    dim: usize,
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    units: Units,
    /// Magnetic field; the Larmor frequency in natural units.
    #[arg(long = "B", default_value_t = 1.0)]
    b_field: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kx: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kz: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[command(flatten)]
    params: StateParams,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    params: StateParams,
    /// Coordinate grid "min:max:count" (y for h4/landau, rho for symmetric).
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Azimuthal angle for the symmetric gauge.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    angle: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Machine-readable JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Force one check's tolerance to zero.
    #[arg(long)]
    inject_fault: Option<String>,
    /// Multiply every default tolerance.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,
    #[arg(long)]
    allow_loose: bool,
    /// Run only checks whose name starts with this prefix.
    #[arg(long)]
    only: Option<String>,
    /// List check names and default tolerances.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Contraction parameters "min:max:count"; the default grid when absent.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value = "0.6,0", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 128)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::State(a) => cmd_state(&a),
        Command::Sample(a) => cmd_sample(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::ContractSweep(a) => cmd_contract_sweep(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_VALIDATION
            }
        }
    }
}

/// `"re,im"` or a bare real number.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| {
                LabError::invalid("alpha", format!("cannot parse {text:?} as \"re,im\""))
            })
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(LabError::invalid(
            "alpha",
            format!("cannot parse {text:?} as \"re,im\""),
        )),
    }
}

/// `"min:max:count"`, evenly spaced and inclusive; a single point is `min`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let bad = || LabError::invalid("grid", format!("expected \"min:max:count\", got {text:?}"));
    let [lo, hi, count] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) || count == 0 || hi < lo {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count).map(|i| lo + step * i as f64).collect())
}

fn fock_dim(n: usize) -> Result<FockDim> {
    FockDim::new(n)
}

fn landau_config(p: &StateParams) -> Result<LandauConfig> {
    match p.units {
        Units::Natural => {
            if !(p.b_field > 0.0 && p.b_field.is_finite()) {
                return Err(LabError::domain(
                    "B",
                    p.b_field,
                    "must be positive and finite",
                ));
            }
            LandauConfig::natural(p.b_field, p.kx / p.b_field, p.kz)
        }
        Units::Physical => LandauConfig::new(
            p.b_field,
            cgs::ELECTRON_CHARGE,
            cgs::ELECTRON_MASS,
            cgs::SPEED_OF_LIGHT,
            cgs::HBAR,
            p.kx,
            p.kz,
        ),
    }
}

fn su11_index(p: &StateParams) -> Result<BargmannIndex> {
    match p.k {
        Some(k) => BargmannIndex::new(k),
        None => Err(LabError::invalid("k", "the su11 family needs --k")),
    }
}

struct Header {
    lines: Vec<(String, String)>,
}

impl Header {
    fn new(command: &str) -> Self {
        Header {
            lines: vec![
                (
                    "generator".into(),
                    format!("coherent-lab {}", env!("CARGO_PKG_VERSION")),
                ),
                ("command".into(), command.into()),
            ],
        }
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    fn params(&mut self, p: &StateParams) {
        self.push("family", format!("{:?}", p.family).to_lowercase());
        self.push("n", p.n);
        self.push("m", p.m);
        if let Some(k) = p.k {
            self.push("k", k);
        }
        self.push("alpha", &p.alpha);
        self.push("tau", p.tau);
        self.push("phi", p.phi);
        self.push("dim", p.dim);
        self.push("units", format!("{:?}", p.units).to_lowercase());
        self.push("B", p.b_field);
        self.push("kx", p.kx);
        self.push("kz", p.kz);
    }

    fn render(&self, columns: &str) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        let _ = writeln!(out, "# timestamp: {stamp}");
        let _ = writeln!(out, "{columns}");
        out
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to standard output when no path is given.
fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    let io_err = |e: std::io::Error| LabError::invalid("out", e.to_string());
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(io_err)
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
            tmp.write_all(contents.as_bytes()).map_err(io_err)?;
            tmp.persist(path).map_err(|e| io_err(e.error))?;
            Ok(())
        }
    }
}

struct StateOutput {
    coeffs: FockVector,
    tail_mass: f64,
}

fn compute_state(p: &StateParams) -> Result<StateOutput> {
    let dim = fock_dim(p.dim)?;
    match p.family {
        Family::H4 => {
            let s =
                number_coherent_state(p.n, &WeylParameter::new(parse_complex(&p.alpha)?)?, dim)?;
            Ok(StateOutput {
                coeffs: s.coeffs,
                tail_mass: s.tail_mass,
            })
        }
        Family::Su11 => {
            let s = perelomov_ncs(p.n, su11_index(p)?, &SU11Parameter::new(p.tau, p.phi)?, dim)?;
            Ok(StateOutput {
                coeffs: s.coeffs,
                tail_mass: s.tail_mass,
            })
        }
        Family::Symmetric => {
            let k = BargmannIndex::from_angular(p.m);
            let s = perelomov_ncs(p.n, k, &SU11Parameter::new(p.tau, p.phi)?, dim)?;
            Ok(StateOutput {
                coeffs: s.coeffs,
                tail_mass: s.tail_mass,
            })
        }
        Family::Landau => Ok(StateOutput {
            coeffs: landau_state(p.n, &landau_config(p)?, dim)?,
            tail_mass: 0.0,
        }),
    }
}

fn cmd_state(a: &StateArgs) -> Result<i32> {
    let p = &a.params;
    let state = compute_state(p)?;
    let mut header = Header::new("state");
    header.params(p);
    header.push("tail_mass", format!("{:e}", state.tail_mass));
    let mut body = header.render("index,re,im,cumulative_norm");
    let coeffs = state.coeffs.coeffs();
    let last = coeffs.iter().rposition(|z| z.norm() > 0.0).unwrap_or(0);
    let mut cumulative = 0.0;
    for (q, z) in coeffs.iter().enumerate().take(last + 1) {
        cumulative += z.norm_sqr();
        let _ = writeln!(body, "{q},{:?},{:?},{:?}", z.re, z.im, cumulative);
    }
    emit(p.out.as_deref(), &body)?;
    Ok(EXIT_OK)
}

fn cmd_sample(a: &SampleArgs) -> Result<i32> {
    let p = &a.params;
    let grid = parse_grid(&a.grid)?;
    if !a.angle.is_finite() {
        return Err(LabError::domain("angle", a.angle, "must be finite"));
    }
    let mut header = Header::new("sample");
    header.params(p);
    header.push("grid", &a.grid);
    let body = match p.family {
        Family::Symmetric => {
            header.push("angle", a.angle);
            if grid.iter().any(|r| *r < 0.0) {
                return Err(LabError::invalid("grid", "radii must be nonnegative"));
            }
            let sp = SU11Parameter::new(p.tau, p.phi)?;
            let mut body = header.render("rho,phi,re,im,modulus2");
            for &rho in &grid {
                let v = pncs_symmetric_closed(p.n, p.m, &sp, rho, a.angle)?;
                let _ = writeln!(
                    body,
                    "{rho:?},{:?},{:?},{:?},{:?}",
                    a.angle,
                    v.re,
                    v.im,
                    v.norm_sqr()
                );
            }
            body
        }
        Family::Landau => {
            let cfg = landau_config(p)?;
            header.push("magnetic_length", format!("{:e}", cfg.magnetic_length()));
            header.push("orbit_center", format!("{:e}", cfg.d()));
            let values = landau_eigenfunction(p.n, &cfg, &grid)?;
            let mut body = header.render("y,re,im,abs2");
            for (y, v) in grid.iter().zip(values) {
                let _ = writeln!(body, "{y:?},{v:?},{:?},{:?}", 0.0, v * v);
            }
            body
        }
        Family::H4 => {
            // sum_q c_q phi_q(x) with oscillator length one
            let state = compute_state(p)?;
            let coeffs = state.coeffs.coeffs();
            let mut body = header.render("y,re,im,abs2");
            for &x in &grid {
                let basis = hermite_functions(coeffs.len() - 1, x);
                let v: Complex64 = coeffs.iter().zip(&basis).map(|(c, f)| c * *f).sum();
                let _ = writeln!(body, "{x:?},{:?},{:?},{:?}", v.re, v.im, v.norm_sqr());
            }
            body
        }
        Family::Su11 => {
            return Err(LabError::invalid(
                "family",
                "su11 has no coordinate realization of its own; sample the symmetric family",
            ))
        }
    };
    emit(p.out.as_deref(), &body)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    if a.list {
        let mut body = String::new();
        for name in crate::verify::check_names() {
            let tol = crate::verify::default_tolerance(name).unwrap_or(f64::NAN);
            let _ = writeln!(body, "{name} {tol:e}");
        }
        emit(None, &body)?;
        return Ok(EXIT_OK);
    }
    let opts = VerifyOptions {
        tolerance_scale: a.tolerance_scale,
        allow_loose: a.allow_loose,
        inject_fault: a.inject_fault.clone(),
        only: a.only.clone(),
    };
    let report = run_verification(&opts)?;
    if let Some(path) = &a.out {
        emit(Some(path), &report.to_json())?;
    }
    emit(None, &report.summary())?;
    if report.passed {
        Ok(EXIT_OK)
    } else {
        for f in report.failures() {
            eprintln!("failed: {} [{}]", f.name, f.anchor);
        }
        Ok(EXIT_VERIFICATION)
    }
}

fn cmd_contract_sweep(a: &SweepArgs) -> Result<i32> {
    let mut cs = match &a.grid {
        Some(g) => parse_grid(g)?,
        None => DEFAULT_C_GRID.to_vec(),
    };
    for &c in &cs {
        ContractionParam::new(c)?;
    }
    cs.sort_by(|x, y| y.total_cmp(x));
    let alpha = parse_complex(&a.alpha)?;
    let dim = fock_dim(a.dim)?;
    let mut r1s = Vec::with_capacity(cs.len());
    let mut deficits = Vec::with_capacity(cs.len());
    for &c in &cs {
        let cp = ContractionParam::new(c)?;
        r1s.push(commutator_residual(&cp, dim)?.0);
        deficits.push(overlap_deficit(alpha, &cp, a.n, dim)?);
    }
    let mut header = Header::new("contract-sweep");
    header.push("alpha", &a.alpha);
    header.push("n", a.n);
    header.push("dim", a.dim);
    header.push("grid", a.grid.as_deref().unwrap_or("default"));
    let mut order_cell = String::new();
    if cs.len() >= 2 {
        let r1_fit = power_law_fit(&cs, &r1s)?;
        header.push("r1_order", r1_fit.order);
        header.push("r1_r_squared", r1_fit.r_squared);
        if deficits.iter().all(|d| *d > 0.0) {
            let fit = power_law_fit(&cs, &deficits)?;
            header.push("deficit_order", fit.order);
            header.push("deficit_r_squared", fit.r_squared);
            let dist: Vec<f64> = deficits.iter().map(|d| aligned_distance(*d)).collect();
            let fit = power_law_fit(&cs, &dist)?;
            header.push("aligned_distance_order", fit.order);
            header.push("aligned_distance_r_squared", fit.r_squared);
        }
        order_cell = format!("{:?}", r1_fit.order);
    }
    let mut body = header.render("c,r1,overlap_deficit,fitted_order");
    for ((c, r1), d) in cs.iter().zip(&r1s).zip(&deficits) {
        let _ = writeln!(body, "{c:?},{r1:?},{d:?},{order_cell}");
    }
    emit(a.out.as_deref(), &body)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(
            parse_complex("0.5,-0.25").unwrap(),
            Complex64::new(0.5, -0.25)
        );
        assert_eq!(parse_complex(" 2 ").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("nan,0").is_err());
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("-2:2:1").unwrap(), vec![-2.0]);
        for bad in ["0:1", "1:0:3", "0:1:0", "a:1:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn bad_flags_are_validation_errors() {
        assert_eq!(
            run(["coherent-lab", "state", "--family", "nope"]),
            EXIT_VALIDATION
        );
        assert_eq!(
            run(["coherent-lab", "state", "--family", "su11"]),
            EXIT_VALIDATION
        );
        assert_eq!(
            run(["coherent-lab", "state", "--family", "h4", "--dim", "1"]),
            EXIT_VALIDATION
        );
        assert_eq!(
            run(["coherent-lab", "verify", "--tolerance-scale", "2"]),
            EXIT_VALIDATION
        );
    }
}
