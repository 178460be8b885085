//! Hermite and associated Laguerre polynomials, log-Gamma, and Gauss
//! quadrature rules for the Hermite and generalized Laguerre weights.
//!
//! Hermite polynomials use the physicists' convention
//! `H_{n+1} = 2x H_n - 2n H_{n-1}`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{LabError, Result};

pub const MAX_POLY_DEGREE: usize = 200;
pub const MAX_QUADRATURE_ORDER: usize = 512;
const MAX_LOG_GAMMA_ARG: f64 = 1.0e6;

fn check_degree(name: &'static str, n: usize) -> Result<()> {
    if n > MAX_POLY_DEGREE {
        return Err(LabError::domain(
            name,
            n as f64,
            format!("degree above {MAX_POLY_DEGREE}"),
        ));
    }
    Ok(())
}

pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_degree("n", n)?;
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..n {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Associated Laguerre polynomial `L_n^m(x)`.
pub fn laguerre(n: usize, m: usize, x: f64) -> Result<f64> {
    check_degree("n", n)?;
    check_degree("m", m)?;
    let m = m as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + m - x) * cur - (jf + m) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Orthonormal Hermite functions `(2^n n! sqrt(pi))^{-1/2} H_n(t) e^{-t^2/2}`
/// for `n = 0..=n_max`, evaluated by the normalized recurrence so that large
/// degrees neither overflow nor lose the Gaussian envelope.
pub fn hermite_functions(n_max: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * t * t).exp();
    out.push(cur);
    for j in 0..n_max {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * t * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut product = 1.0_f64;
        let mut logs = vec![0.0; 171];
        for (n, slot) in logs.iter_mut().enumerate().skip(1) {
            product *= n as f64;
            *slot = product.ln();
        }
        logs
    })
}

/// `ln n!` for `n <= 10^6`.
pub fn log_factorial(n: u64) -> Result<f64> {
    if n as f64 > MAX_LOG_GAMMA_ARG {
        return Err(LabError::domain("n", n as f64, "above 1e6"));
    }
    Ok(log_factorial_unchecked(n as usize))
}

pub(crate) fn log_factorial_unchecked(n: usize) -> f64 {
    let table = factorial_table();
    if n < table.len() {
        table[n]
    } else {
        stirling(n as f64 + 1.0)
    }
}

// Bernoulli-number coefficients B_{2j} / (2j (2j - 1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// Accurate to double precision for x >= 10.
fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for coeff in STIRLING {
        series += coeff * power;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// `ln Gamma(x)` for `0 < x <= 10^6`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= MAX_LOG_GAMMA_ARG) {
        return Err(LabError::domain("x", x, "log_gamma needs 0 < x <= 1e6"));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= MAX_LOG_GAMMA_ARG + 1.0 {
        return log_factorial_unchecked(x as usize - 1);
    }
    if x >= 10.0 {
        return stirling(x);
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 10.0 {
        product *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - product.ln()
}

/// `ln [Gamma(x + count) / Gamma(x)]`; summed directly for short runs so
/// that large arguments do not cancel.
pub(crate) fn log_pochhammer(x: f64, count: usize) -> f64 {
    if count == 0 {
        return 0.0;
    }
    if count <= 512 {
        let mut acc = 0.0;
        let mut product = 1.0_f64;
        for i in 0..count {
            product *= x + i as f64;
            if product > 1.0e250 {
                acc += product.ln();
                product = 1.0;
            }
        }
        acc + product.ln()
    } else {
        log_gamma_unchecked(x + count as f64) - log_gamma_unchecked(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Weight `e^{-x^2}` on the real line.
    GaussHermite,
    /// Weight `x^m e^{-x}` on `[0, inf)`.
    GaussLaguerre { m: u32 },
}

impl QuadratureKind {
    /// Recurrence coefficients of the orthonormal polynomials and the total
    /// mass of the weight function.
    fn jacobi(self, order: usize) -> (Vec<f64>, Vec<f64>, f64) {
        match self {
            QuadratureKind::GaussHermite => {
                let diag = vec![0.0; order];
                let off = (1..order).map(|j| (j as f64 / 2.0).sqrt()).collect();
                (diag, off, PI.sqrt())
            }
            QuadratureKind::GaussLaguerre { m } => {
                let m = m as f64;
                let diag = (0..order).map(|j| 2.0 * j as f64 + m + 1.0).collect();
                let off = (1..order)
                    .map(|j| (j as f64 * (j as f64 + m)).sqrt())
                    .collect();
                (diag, off, log_gamma_unchecked(m + 1.0).exp())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// `sum_i w_i f(x_i)`, approximating the integral of `f` times the weight.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Gauss rule of the given order: Golub-Welsch eigenvalues for the nodes,
/// polished by Newton steps on the orthonormal recurrence, with weights from
/// the Christoffel function.
pub fn make_quadrature(kind: QuadratureKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(LabError::domain(
            "order",
            order as f64,
            format!("quadrature order must be in 1..={MAX_QUADRATURE_ORDER}"),
        ));
    }
    if let QuadratureKind::GaussLaguerre { m } = kind {
        if m as usize > MAX_POLY_DEGREE {
            return Err(LabError::domain("m", m as f64, "Laguerre order above 200"));
        }
    }
    let (diag, off, mass) = kind.jacobi(order);
    let mut nodes = tridiagonal_eigenvalues(diag.clone(), off.clone())?;
    nodes.sort_by(|a, b| a.total_cmp(b));

    let recurrence = Recurrence {
        diag: &diag,
        off: &off,
        mass,
    };
    let mut weights = Vec::with_capacity(order);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let step = recurrence.newton_step(*x);
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        weights.push(recurrence.christoffel(*x));
    }

    Ok(QuadratureRule {
        kind,
        nodes,
        weights,
    })
}

struct Recurrence<'a> {
    diag: &'a [f64],
    off: &'a [f64],
    mass: f64,
}

impl Recurrence<'_> {
    // b_j p_j = (x - a_{j-1}) p_{j-1} - b_{j-1} p_{j-2}, with p_0 = mass^{-1/2}.
    // Values are rescaled jointly; the returned log-scale undoes that.
    fn christoffel(&self, x: f64) -> f64 {
        let n = self.diag.len();
        let mut prev = 0.0;
        let mut cur = 1.0 / self.mass.sqrt();
        let mut sum = cur * cur;
        let mut log_scale = 0.0;
        for j in 0..n - 1 {
            let b_prev = if j == 0 { 0.0 } else { self.off[j - 1] };
            let next = ((x - self.diag[j]) * cur - b_prev * prev) / self.off[j];
            prev = cur;
            cur = next;
            sum += cur * cur;
            if cur.abs() > 1e100 {
                prev *= 1e-100;
                cur *= 1e-100;
                sum *= 1e-200;
                log_scale += 100.0 * 10f64.ln();
            }
        }
        // w = 1 / sum_j p_j^2
        (-(sum.ln() + 2.0 * log_scale)).exp()
    }

    // p_n / p_n' at x, where p_n is the (unnormalized) degree-n polynomial.
    fn newton_step(&self, x: f64) -> f64 {
        let n = self.diag.len();
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for j in 0..n {
            let b2 = if j == 0 {
                0.0
            } else {
                self.off[j - 1] * self.off[j - 1]
            };
            let p_next = (x - self.diag[j]) * p - b2 * p_prev;
            let d_next = p + (x - self.diag[j]) * d - b2 * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            let scale = p.abs().max(d.abs());
            if scale > 1e100 {
                p *= 1e-100;
                p_prev *= 1e-100;
                d *= 1e-100;
                d_prev *= 1e-100;
            }
        }
        p / d
    }
}

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = off;
    e.push(0.0);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(LabError::NonConvergence(
                    "tridiagonal QL iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        for x in [-2.0, 0.0, 0.3, 5.0] {
            assert_eq!(hermite(0, x).unwrap(), 1.0);
        }
        assert_eq!(hermite(1, 0.5).unwrap(), 1.0);
        // explicit 8x^3 - 12x
        let explicit = |x: f64| 8.0 * x.powi(3) - 12.0 * x;
        assert_eq!(explicit(1.0), -4.0);
        assert_eq!(hermite(3, 1.0).unwrap(), -4.0);
        for x in [-1.7, 0.2, 2.9] {
            assert!((hermite(3, x).unwrap() - explicit(x)).abs() < 1e-12);
        }
        assert!(hermite(201, 0.0).is_err());
        assert!(hermite(200, 0.1).is_ok());
    }

    #[test]
    fn laguerre_values() {
        for m in [0, 3, 7] {
            assert_eq!(laguerre(0, m, 2.5).unwrap(), 1.0);
        }
        assert_eq!(laguerre(2, 1, 0.0).unwrap(), 3.0);
        // explicit L_1^m(x) = 1 + m - x
        assert_eq!(laguerre(1, 2, 1.0).unwrap(), 2.0);
        // L_n^m(0) = C(n + m, n)
        assert_eq!(laguerre(4, 3, 0.0).unwrap(), 35.0);
        // L_2^0(x) = (x^2 - 4x + 2) / 2
        assert!((laguerre(2, 0, 1.5).unwrap() - (2.25 - 6.0 + 2.0) / 2.0).abs() < 1e-15);
        assert!(laguerre(201, 0, 1.0).is_err());
        assert!(laguerre(3, 201, 1.0).is_err());
    }

    #[test]
    fn hermite_functions_match_polynomials() {
        for t in [-3.1, -0.4, 0.0, 1.3, 4.0] {
            let funcs = hermite_functions(20, t);
            for (n, value) in funcs.iter().enumerate() {
                let norm = (-0.5 * (2.0_f64.powi(n as i32) * PI.sqrt()).ln()
                    - 0.5 * log_factorial(n as u64).unwrap())
                .exp();
                let direct = norm * hermite(n, t).unwrap() * (-0.5 * t * t).exp();
                assert!(
                    (value - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                    "n={n} t={t}"
                );
            }
        }
    }

    #[test]
    fn log_factorial_values() {
        assert_eq!(log_factorial(0).unwrap(), 0.0);
        assert_eq!(log_factorial(1).unwrap(), 0.0);
        let exact: u128 = (1..=20u128).product();
        assert_eq!(exact, 2_432_902_008_176_640_000);
        let ratio = log_factorial(20).unwrap().exp() / exact as f64;
        assert!((ratio - 1.0).abs() < 1e-13, "{ratio}");
        assert!(log_factorial(1_000_001).is_err());
        // table/Stirling seam
        let seam = log_factorial(171).unwrap() - log_factorial(170).unwrap();
        assert!((seam - 171f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        let half = log_gamma(0.5).unwrap();
        let expect = PI.sqrt().ln();
        assert!(
            ((half - expect) / expect).abs() < 1e-13,
            "{half} vs {expect}"
        );
        // Gamma(3.5) = 15 sqrt(pi) / 8
        let v = log_gamma(3.5).unwrap();
        let e = (15.0 * PI.sqrt() / 8.0).ln();
        assert!(((v - e) / e).abs() < 1e-13);
        // recurrence across the Stirling switch
        for x in [0.1, 2.7, 9.5, 9.99, 10.5, 123.25] {
            let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            assert!(
                (lhs - f64::ln(x)).abs() < 2e-13 * (1.0 + f64::ln(x).abs()),
                "x={x}"
            );
        }
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(2.0e6).is_err());
    }

    #[test]
    fn pochhammer_matches_gamma_difference() {
        for (x, n) in [(1.5, 3), (801.0, 40), (2.0, 100), (0.25, 64)] {
            let direct = log_pochhammer(x, n);
            let via = log_gamma(x + n as f64).unwrap() - log_gamma(x).unwrap();
            assert!(
                (direct - via).abs() < 1e-10 * (1.0 + via.abs()),
                "x={x} n={n}"
            );
        }
    }

    #[test]
    fn quadrature_small_rules() {
        let one = make_quadrature(QuadratureKind::GaussHermite, 1).unwrap();
        assert_eq!(one.nodes, vec![0.0]);
        assert!((one.weights[0] - PI.sqrt()).abs() < 1e-15);

        for order in [1, 5, 30, 100] {
            let rule = make_quadrature(QuadratureKind::GaussLaguerre { m: 0 }, order).unwrap();
            let mass: f64 = rule.weights.iter().sum();
            assert!((mass - 1.0).abs() < 1e-12, "order {order}: {mass}");
        }
        assert!(make_quadrature(QuadratureKind::GaussHermite, 0).is_err());
        assert!(make_quadrature(QuadratureKind::GaussHermite, 513).is_err());
    }

    #[test]
    fn quadrature_second_moment() {
        let rule = make_quadrature(QuadratureKind::GaussHermite, 40).unwrap();
        let moment = rule.integrate(|x| x * x);
        assert!((moment - PI.sqrt() / 2.0).abs() < 1e-12, "{moment}");
    }

    #[test]
    fn quadrature_rule_shape() {
        for kind in [
            QuadratureKind::GaussHermite,
            QuadratureKind::GaussLaguerre { m: 0 },
            QuadratureKind::GaussLaguerre { m: 5 },
        ] {
            for order in [2, 17, 64, 512] {
                let rule = make_quadrature(kind, order).unwrap();
                assert_eq!(rule.order(), order);
                assert!(
                    rule.nodes.windows(2).all(|w| w[0] < w[1]),
                    "{kind:?} {order}"
                );
                assert!(rule.weights.iter().all(|&w| w >= 0.0));
                let mass: f64 = rule.weights.iter().sum();
                let expect = kind.jacobi(1).2;
                assert!(
                    ((mass - expect) / expect).abs() < 1e-12,
                    "{kind:?} {order}: {mass}"
                );
            }
        }
    }

    #[test]
    fn quadrature_exact_for_high_degree_polynomials() {
        // int x^{2p} e^{-x^2} = Gamma(p + 1/2); int x^{p+m} e^{-x} = Gamma(p + m + 1)
        let order = 12;
        let herm = make_quadrature(QuadratureKind::GaussHermite, order).unwrap();
        for p in 0..order {
            let got = herm.integrate(|x| x.powi(2 * p as i32));
            let expect = log_gamma(p as f64 + 0.5).unwrap().exp();
            assert!(((got - expect) / expect).abs() < 1e-10, "p={p}");
        }
        let lag = make_quadrature(QuadratureKind::GaussLaguerre { m: 3 }, order).unwrap();
        for p in 0..2 * order {
            let got = lag.integrate(|x| x.powi(p as i32));
            let expect = log_gamma(p as f64 + 4.0).unwrap().exp();
            assert!(((got - expect) / expect).abs() < 1e-10, "p={p}");
        }
    }
}
