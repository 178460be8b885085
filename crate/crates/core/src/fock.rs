//! Truncated Fock space: dense complex operators and state vectors, the
//! oscillator ladder operators, and a scaling-and-squaring matrix exponential.
//!
//! Every operator is an `n_max x n_max` matrix indexed by the Fock quantum
//! number starting at zero. Truncation corrupts the top of the space, so
//! identities involving displaced operators are only asserted on a leading
//! "interior" block.

use nalgebra::{DMatrix, DVector};
use std::fmt;

use crate::error::{LabError, Result};
use crate::Complex64;

/// Number of retained basis states `|0>, ..., |n_max - 1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockDim(usize);

impl FockDim {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(LabError::DimTooSmall(n_max));
        }
        Ok(FockDim(n_max))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Size of the default interior block, `n_max / 2`.
    pub fn interior(self) -> usize {
        self.0 / 2
    }
}

impl fmt::Display for FockDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_same(left: FockDim, right: FockDim) -> Result<()> {
    if left != right {
        return Err(LabError::DimMismatch {
            left: left.get(),
            right: right.get(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: FockDim,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(LabError::DimMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        let dim = FockDim::new(entries.nrows())?;
        Ok(OperatorMatrix { dim, entries })
    }

    pub fn from_fn(dim: FockDim, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = dim.get();
        OperatorMatrix {
            dim,
            entries: DMatrix::from_fn(n, n, f),
        }
    }

    pub fn zeros(dim: FockDim) -> Self {
        let n = dim.get();
        OperatorMatrix {
            dim,
            entries: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(dim: FockDim) -> Self {
        let n = dim.get();
        OperatorMatrix {
            dim,
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn diagonal(dim: FockDim, mut f: impl FnMut(usize) -> Complex64) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                f(i)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> FockDim {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            dim: self.dim,
            entries: self.entries.adjoint(),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        OperatorMatrix {
            dim: self.dim,
            entries: &self.entries * factor,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(OperatorMatrix {
            dim: self.dim,
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(OperatorMatrix {
            dim: self.dim,
            entries: &self.entries - &other.entries,
        })
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(OperatorMatrix {
            dim: self.dim,
            entries: matmul(&self.entries, &other.entries),
        })
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.entries
            .column_iter()
            .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry modulus on the leading `block x block` sub-matrix.
    pub fn block_max_abs(&self, block: usize) -> f64 {
        let b = block.min(self.dim.get());
        let mut worst = 0.0_f64;
        for j in 0..b {
            for i in 0..b {
                worst = worst.max(self.entries[(i, j)].norm());
            }
        }
        worst
    }

    /// Largest entry-wise difference on the leading `block x block` sub-matrix.
    pub fn block_max_diff(&self, other: &Self, block: usize) -> Result<f64> {
        check_same(self.dim, other.dim)?;
        Ok(self.sub(other)?.block_max_abs(block))
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    dim: FockDim,
    coeffs: DVector<Complex64>,
}

impl FockVector {
    pub fn zeros(dim: FockDim) -> Self {
        FockVector {
            dim,
            coeffs: DVector::zeros(dim.get()),
        }
    }

    /// The Fock state `|n>`.
    pub fn basis(dim: FockDim, n: usize) -> Result<Self> {
        if n >= dim.get() {
            return Err(LabError::domain(
                "n",
                n as f64,
                format!("basis index must be below the dimension {dim}"),
            ));
        }
        let mut v = Self::zeros(dim);
        v.coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        let dim = FockDim::new(coeffs.len())?;
        Ok(FockVector {
            dim,
            coeffs: DVector::from_vec(coeffs),
        })
    }

    pub fn dim(&self) -> FockDim {
        self.dim
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_same(self.dim, other.dim)?;
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        FockVector {
            dim: self.dim,
            coeffs: &self.coeffs * factor,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(FockVector {
            dim: self.dim,
            coeffs: &self.coeffs - &other.coeffs,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Annihilation, creation and number operators on a truncated space.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub number: OperatorMatrix,
}

pub fn build_ladder(dim: FockDim) -> Ladder {
    let a = OperatorMatrix::from_fn(dim, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let a_dag = a.adjoint();
    // a_dag * a is diagonal with exact integer entries
    let number = OperatorMatrix::diagonal(dim, |n| Complex64::new(n as f64, 0.0));
    Ladder { a, a_dag, number }
}

/// `AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.compose(b)?.sub(&b.compose(a)?)
}

pub fn apply(m: &OperatorMatrix, v: &FockVector) -> Result<FockVector> {
    check_same(m.dim, v.dim)?;
    Ok(FockVector {
        dim: v.dim,
        coeffs: &m.entries * &v.coeffs,
    })
}

// Degree-13 diagonal Pade coefficients and the matching scaling threshold.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA_13: f64 = 5.371_920_351_148_152;
const MAX_SQUARINGS: i32 = 1024;

/// Complex product through four real products, which take nalgebra's
/// blocked real kernel instead of the generic complex loop.
fn matmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

/// Matrix exponential by scaling and squaring with a [13/13] Pade kernel.
pub fn mat_exp(m: &OperatorMatrix) -> Result<OperatorMatrix> {
    if !m.is_finite() {
        return Err(LabError::NonConvergence(
            "matrix exponential of a non-finite matrix".into(),
        ));
    }
    let n = m.dim.get();
    let norm = m.norm_one();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    if squarings > MAX_SQUARINGS {
        return Err(LabError::NonConvergence(format!(
            "norm {norm:e} requires {squarings} squarings"
        )));
    }

    let scale = Complex64::new(2.0_f64.powi(-squarings), 0.0);
    let a = &m.entries * scale;
    let ident = DMatrix::<Complex64>::identity(n, n);
    let a2 = matmul(&a, &a);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a4, &a2);
    let b = |i: usize| Complex64::new(PADE13[i], 0.0);

    let u_inner = matmul(&a6, &(&a6 * b(13) + &a4 * b(11) + &a2 * b(9)));
    let u = matmul(
        &a,
        &(u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &ident * b(1)),
    );
    let v_inner = matmul(&a6, &(&a6 * b(12) + &a4 * b(10) + &a2 * b(8)));
    let v = v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &ident * b(0);

    let denom = &v - &u;
    let numer = &v + &u;
    let mut r = denom.lu().solve(&numer).ok_or_else(|| {
        LabError::NonConvergence("singular Pade denominator in matrix exponential".into())
    })?;
    for _ in 0..squarings {
        r = matmul(&r, &r);
    }

    let out = OperatorMatrix {
        dim: m.dim,
        entries: r,
    };
    if !out.is_finite() {
        return Err(LabError::NonConvergence(format!(
            "matrix exponential overflowed (input norm {norm:e})"
        )));
    }
    Ok(out)
}

/// Exponential of a matrix whose only nonzero entries lie on the first
/// subdiagonal (`M[p+1][p] = sub[p]`). The series terminates, and each entry
/// is a single product `prod sub[l..i] / (i - l)!`, so no cancellation occurs.
pub fn subdiagonal_exp(dim: FockDim, sub: &[Complex64]) -> Result<OperatorMatrix> {
    let n = dim.get();
    if sub.len() + 1 != n {
        return Err(LabError::DimMismatch {
            left: sub.len() + 1,
            right: n,
        });
    }
    let mut entries = DMatrix::<Complex64>::zeros(n, n);
    for l in 0..n {
        let mut value = Complex64::new(1.0, 0.0);
        entries[(l, l)] = value;
        for i in l + 1..n {
            value *= sub[i - 1] / (i - l) as f64;
            entries[(i, l)] = value;
        }
    }
    Ok(OperatorMatrix { dim, entries })
}
