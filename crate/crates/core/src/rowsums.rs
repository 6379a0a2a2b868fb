//! Nekrasov row sums `h_i(A)` and the weights `z_i(A)`.
//!
//! Both quantities are defined by a forward recursion over the rows, so they
//! are always computed in index order. [`h_via_triangular_solve`] evaluates
//! `h` a second way, as `|a_ii| [(|D| - |L|)^{-1} |U| e]_i`, and exists to
//! cross-check the recursion.

use thiserror::Error;

use crate::matrix::Matrix;
use crate::triangular::LowerTriangular;

/// A diagonal entry is zero, so the row-sum recursions are undefined.
/// `row` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("diagonal entry in row {} is zero", .row + 1)]
pub struct ZeroDiagonal {
    pub row: usize,
}

pub(crate) fn nonzero_diagonal(a: &Matrix) -> Result<Vec<f64>, ZeroDiagonal> {
    let d = a.diagonal_moduli();
    match d.iter().position(|&x| x == 0.0) {
        Some(row) => Err(ZeroDiagonal { row }),
        None => Ok(d),
    }
}

/// `h_1 = sum_{j>1} |a_1j|`,
/// `h_i = sum_{j<i} |a_ij| h_j / |a_jj| + sum_{j>i} |a_ij|`.
pub fn nekrasov_row_sums(a: &Matrix) -> Result<Vec<f64>, ZeroDiagonal> {
    let d = nonzero_diagonal(a)?;
    let n = a.order();
    let mut h = vec![0.0; n];
    // h_j / |a_jj|, divided once per j
    let mut ratio = vec![0.0; n];
    for i in 0..n {
        let lower: f64 = (0..i).map(|j| a.abs(i, j) * ratio[j]).sum();
        let upper: f64 = (i + 1..n).map(|j| a.abs(i, j)).sum();
        h[i] = lower + upper;
        ratio[i] = h[i] / d[i];
    }
    Ok(h)
}

/// `z_1 = 1`, `z_i = sum_{j<i} (|a_ij| / |a_jj|) z_j + 1`.
pub fn z_weights(a: &Matrix) -> Result<Vec<f64>, ZeroDiagonal> {
    let d = nonzero_diagonal(a)?;
    let n = a.order();
    let mut z = vec![1.0; n];
    for i in 1..n {
        z[i] = (0..i).map(|j| a.abs(i, j) / d[j] * z[j]).sum::<f64>() + 1.0;
    }
    Ok(z)
}

/// The lower-triangular M-matrix `|D| - |L|`.
pub fn lower_m_matrix(a: &Matrix) -> Result<LowerTriangular, ZeroDiagonal> {
    nonzero_diagonal(a)?;
    let n = a.order();
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            t[i * n + j] = -a.abs(i, j);
        }
        t[i * n + i] = a.abs(i, i);
    }
    Ok(LowerTriangular::new(n, t))
}

/// `h_i = |a_ii| [(|D| - |L|)^{-1} |U| e]_i`, via one explicit forward solve.
pub fn h_via_triangular_solve(a: &Matrix) -> Result<Vec<f64>, ZeroDiagonal> {
    let m = lower_m_matrix(a)?;
    let n = a.order();
    let upper_sums: Vec<f64> = (0..n)
        .map(|i| (i + 1..n).map(|j| a.abs(i, j)).sum())
        .collect();
    let y = m.solve(&upper_sums);
    Ok(y.iter()
        .enumerate()
        .map(|(i, yi)| a.abs(i, i) * yi)
        .collect())
}

/// `h` and `z` for one matrix, tagged with that matrix's digest.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSums {
    pub h: Vec<f64>,
    pub z: Vec<f64>,
    pub source_digest: u64,
}

impl RowSums {
    pub fn compute(a: &Matrix) -> Result<Self, ZeroDiagonal> {
        Ok(Self {
            h: nekrasov_row_sums(a)?,
            z: z_weights(a)?,
            source_digest: a.digest(),
        })
    }

    /// Whether these vectors were computed from `a`.
    pub fn belongs_to(&self, a: &Matrix) -> bool {
        self.source_digest == a.digest()
    }
}
