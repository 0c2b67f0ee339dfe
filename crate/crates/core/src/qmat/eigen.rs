//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::{ComplexMatrix, QmatError, HERMITIAN_TOL};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigen-decomposition `h = V · diag(values) · V†`, values ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.dim()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// `V · diag(f(λ)) · V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let w = f(self.values[k]);
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen, QmatError> {
    let deviation = h.hermiticity_deviation();
    if deviation >= HERMITIAN_TOL {
        return Err(QmatError::NotHermitian { deviation });
    }
    let n = h.dim();
    // Symmetrize so round-off in the input does not bias the rotations.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * h.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while max_off_diagonal(&a) >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(QmatError::NoConvergence { sweeps, residual: max_off_diagonal(&a) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a_pq = |a_pq| e^{iφ}`, the transform is `G = diag(1, e^{-iφ}) · R(θ)`
/// on the (p, q) plane, where `R(θ)` is the real rotation zeroing the
/// now-real off-diagonal entry.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let theta = 0.5 * (2.0 * mag).atan2(gamma - alpha);
    let (s, c) = theta.sin_cos();

    // G = [[g_pp, g_pq], [g_qp, g_qq]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    // A ← A G, V ← V G
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    // A ← G† A
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>, QmatError> {
    hermitian_eigen(h).map(|e| e.values)
}

/// Trace norm `Σ|λ_i|` of a Hermitian matrix.
pub fn trace_norm_hermitian(h: &ComplexMatrix) -> Result<f64, QmatError> {
    Ok(hermitian_eigenvalues(h)?.iter().map(|l| l.abs()).sum())
}
