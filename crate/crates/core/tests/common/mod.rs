#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qcollide::model::DensityMatrix;
use qcollide::ComplexMatrix;

pub const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn complex_entries(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(r, i)| Complex64::new(r, i)), dim * dim)
}

pub fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_entries(dim).prop_map(move |v| ComplexMatrix::from_vec(dim, v).unwrap())
}

pub fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|m| (&m + &m.adjoint()).scale(c(0.5)))
}

/// `G G† / Tr(G G†)`: full-rank density matrices.
pub fn density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|g| {
        let m = &g * &g.adjoint();
        let t = m.trace();
        m.scale(t.inv())
    })
}

pub fn qubit_state() -> impl Strategy<Value = DensityMatrix> {
    density(2).prop_map(|m| DensityMatrix::qubit(m).unwrap())
}

/// Gram–Schmidt on the columns of a random matrix.
pub fn unitary(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_filter_map("degenerate columns", move |m| {
        let mut cols: Vec<Vec<Complex64>> = Vec::new();
        for j in 0..dim {
            let mut v: Vec<Complex64> = (0..dim).map(|i| m[(i, j)]).collect();
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= proj * y;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                return None;
            }
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
        let mut out = ComplexMatrix::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                out[(i, j)] = *z;
            }
        }
        Some(out)
    })
}

/// Applies Kraus operators: `Σ K ρ K†`.
pub fn apply_kraus(rho: &ComplexMatrix, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    kraus.iter().fold(ComplexMatrix::zeros(rho.dim()), |acc, k| &acc + &rho.conjugate_by(k))
}
