//! Dense square complex matrices and the standard splitting `A = D - L - U`.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix order must be at least 1")]
    Empty,
    #[error("expected {expected} entries for the given order, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

/// Dense, row-major, square matrix of complex doubles.
///
/// Every entry is finite and the order is at least one; both are checked at
/// construction, so downstream code never has to re-validate them.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != n * n {
            return Err(MatrixError::WrongLength {
                expected: n * n,
                got: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(MatrixError::NonFinite {
                row: k / n,
                col: k % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Real matrix from a row-major slice of length `n * n`.
    pub fn from_real(n: usize, data: &[f64]) -> Result<Self, MatrixError> {
        Self::new(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    /// Real diagonal matrix. Panics on an empty or non-finite diagonal.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = Complex64::new(d, 0.0);
        }
        Self::new(n, data).expect("diagonal must be non-empty and finite")
    }

    /// Order `n` of the matrix.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn abs(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j].norm()
    }

    /// `|a_ii|` for every row.
    pub fn diagonal_moduli(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.abs(i, i)).collect()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Symmetric permutation `P A P^T`: entry `(i, j)` of the result is
    /// `a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                data.push(self[(pi, pj)]);
            }
        }
        Self { n, data }
    }

    /// Returns a copy with every off-diagonal entry multiplied by `t`.
    pub fn scale_off_diagonal(&self, t: f64) -> Self {
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(k, &z)| if k / n == k % n { z } else { z * t })
            .collect();
        Self { n, data }
    }

    /// Returns a copy with row `i` multiplied by `t`.
    pub fn scale_row(&self, i: usize, t: f64) -> Self {
        let mut out = self.clone();
        for z in &mut out.data[i * self.n..(i + 1) * self.n] {
            *z *= t;
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Self {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += aik * other[(k, j)];
                }
            }
        }
        Self { n, data }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!(self.n, other.n, "order mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self { n: self.n, data }
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Standard splitting with the sign convention `A = D - L - U`.
    pub fn split(&self) -> Splitting {
        let n = self.n;
        let zero = Complex64::new(0.0, 0.0);
        let mut l = vec![zero; n * n];
        let mut u = vec![zero; n * n];
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => d.push(a),
                    std::cmp::Ordering::Greater => l[i * n + j] = -a,
                    std::cmp::Ordering::Less => u[i * n + j] = -a,
                }
            }
        }
        Splitting {
            d,
            l: Matrix { n, data: l },
            u: Matrix { n, data: u },
        }
    }

    /// Comparison matrix: `|a_ii|` on the diagonal, `-|a_ij|` elsewhere.
    pub fn comparison(&self) -> Self {
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let m = z.norm();
                Complex64::new(if k / n == k % n { m } else { -m }, 0.0)
            })
            .collect();
        Self { n, data }
    }

    /// `r_i = sum_{j != i} |a_ij|`.
    pub fn deleted_row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, z)| z.norm())
                    .sum()
            })
            .collect()
    }

    /// 64-bit FNV-1a over the order and the bit patterns of every entry.
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |word: u64| {
            for b in word.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        eat(self.n as u64);
        for z in &self.data {
            eat(z.re.to_bits());
            eat(z.im.to_bits());
        }
        h
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                if z.im == 0.0 {
                    write!(f, "{:>10} ", z.re)?;
                } else {
                    write!(f, "{:>10} ", z)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Diagonal, strictly lower and strictly upper parts with `A = D - L - U`.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub d: Vec<Complex64>,
    pub l: Matrix,
    pub u: Matrix,
}

impl Splitting {
    pub fn order(&self) -> usize {
        self.d.len()
    }

    /// Rebuilds `D - L - U`. Only copies and negations are involved, so the
    /// result is bit-for-bit the original matrix.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.order();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(match i.cmp(&j) {
                    std::cmp::Ordering::Equal => self.d[i],
                    std::cmp::Ordering::Greater => -self.l[(i, j)],
                    std::cmp::Ordering::Less => -self.u[(i, j)],
                });
            }
        }
        Matrix { n, data }
    }
}
