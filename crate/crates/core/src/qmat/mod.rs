//! Dense complex linear algebra for register-sized matrices (side ≤ 16).
//!
//! Subsystems are ordered big-endian: for dims `[d0, d1, ..]` the basis index
//! is `i0·(d1·d2·..) + i1·(d2·..) + ..`, so subsystem 0 (the system qubit) is
//! the most significant digit.

mod eigen;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, trace_norm_hermitian, HermitianEigen};

/// Hermiticity tolerance used throughout the crate.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmatError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is not Hermitian (max |h - h†| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix data has {len} entries, not a square of side {dim}")]
    BadShape { dim: usize, len: usize },
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self, QmatError> {
        if data.len() != dim * dim {
            return Err(QmatError::BadShape { dim, len: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self, QmatError> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, QmatError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(QmatError::BadShape { dim, len: row.len() * dim });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Rank-one projector |ψ⟩⟨ψ|.
    pub fn outer(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    /// `u · self · u†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        let left = u * self;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += left[(i, k)] * u[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on matrices of different size");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() < tol
    }

    /// `max |(U U† - I)_ij|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self * &self.adjoint();
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product of different sizes");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum of different sizes");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference of different sizes");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| if z.im == 0.0 { format!("{:+.6}", z.re) } else { format!("{:+.6}{:+.6}i", z.re, z.im) })
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_dims(rho: &ComplexMatrix, dims: &[usize]) -> Result<(), QmatError> {
    let total: usize = dims.iter().product();
    if total != rho.dim || dims.is_empty() {
        return Err(QmatError::DimensionMismatch { expected: total, actual: rho.dim });
    }
    Ok(())
}

/// Splits a flat index into per-subsystem digits (big-endian).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Reduced matrix on the subsystems listed in `keep`, tracing out the rest.
///
/// `keep` is interpreted as a set; the output keeps the subsystems in their
/// original (ascending) order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix, QmatError> {
    check_dims(rho, dims)?;
    let n = dims.len();
    let mut kept = vec![false; n];
    for &k in keep {
        if k >= n {
            return Err(QmatError::InvalidSubsystem { index: k, count: n });
        }
        kept[k] = true;
    }
    let kept_dims: Vec<usize> = (0..n).filter(|&i| kept[i]).map(|i| dims[i]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim);

    let mut row_digits = vec![0; n];
    let mut col_digits = vec![0; n];
    let mut kr = Vec::with_capacity(n);
    let mut kc = Vec::with_capacity(n);
    for r in 0..rho.dim {
        digits(r, dims, &mut row_digits);
        for c in 0..rho.dim {
            digits(c, dims, &mut col_digits);
            // Only diagonal blocks of the traced subsystems contribute.
            if (0..n).any(|i| !kept[i] && row_digits[i] != col_digits[i]) {
                continue;
            }
            kr.clear();
            kc.clear();
            for i in (0..n).filter(|&i| kept[i]) {
                kr.push(row_digits[i]);
                kc.push(col_digits[i]);
            }
            let (ro, co) = (flatten(&kr, &kept_dims), flatten(&kc, &kept_dims));
            out[(ro, co)] += rho[(r, c)];
        }
    }
    Ok(out)
}

/// Partial transpose with respect to `subsystem`.
pub fn partial_transpose(rho: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<ComplexMatrix, QmatError> {
    check_dims(rho, dims)?;
    if subsystem >= dims.len() {
        return Err(QmatError::InvalidSubsystem { index: subsystem, count: dims.len() });
    }
    let n = dims.len();
    let mut out = ComplexMatrix::zeros(rho.dim);
    let mut rd = vec![0; n];
    let mut cd = vec![0; n];
    for r in 0..rho.dim {
        for c in 0..rho.dim {
            digits(r, dims, &mut rd);
            digits(c, dims, &mut cd);
            std::mem::swap(&mut rd[subsystem], &mut cd[subsystem]);
            out[(flatten(&rd, dims), flatten(&cd, dims))] = rho[(r, c)];
        }
    }
    Ok(out)
}
