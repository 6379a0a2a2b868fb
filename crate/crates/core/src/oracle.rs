//! Dense LU with partial pivoting, used as ground truth for `||A^{-1}||_inf`.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("matrix is singular to working precision")]
pub struct Singular;

/// Packed `PA = LU` factorization.
///
/// `lu` holds the unit-lower `L` below the diagonal and `U` on and above it.
/// `pivots[k]` is the row swapped into position `k` at elimination step `k`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
    sign: f64,
    singular: bool,
}

pub fn lu_factor(a: &Matrix) -> LuFactors {
    let n = a.order();
    let mut lu = a.as_slice().to_vec();
    let mut pivots = Vec::with_capacity(n);
    let mut sign = 1.0;

    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[i * n + k].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        pivots.push(p);
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        if pmax == 0.0 {
            continue;
        }
        let pivot = lu[k * n + k];
        for i in k + 1..n {
            let m = lu[i * n + k] / pivot;
            lu[i * n + k] = m;
            if m == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let ukj = lu[k * n + j];
                lu[i * n + j] -= m * ukj;
            }
        }
    }

    let umax = (0..n).map(|i| lu[i * n + i].norm()).fold(0.0, f64::max);
    let tol = n as f64 * f64::EPSILON * umax;
    let singular = (0..n).any(|i| lu[i * n + i].norm() <= tol);
    LuFactors {
        n,
        lu,
        pivots,
        sign,
        singular,
    }
}

impl LuFactors {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Sign of the row permutation, `+1` or `-1`.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn u(&self, i: usize, j: usize) -> Complex64 {
        if j >= i {
            self.lu[i * self.n + j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn l(&self, i: usize, j: usize) -> Complex64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[i * self.n + j],
            std::cmp::Ordering::Equal => Complex64::new(1.0, 0.0),
            std::cmp::Ordering::Less => Complex64::new(0.0, 0.0),
        }
    }

    /// `P^T L U`, which should reproduce the factored matrix.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.n;
        let mut rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..=i.min(j)).map(|k| self.l(i, k) * self.u(k, j)).sum())
                    .collect()
            })
            .collect();
        for k in (0..n).rev() {
            rows.swap(k, self.pivots[k]);
        }
        Matrix::from_rows(rows).expect("reconstruction of a valid factorization")
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>, Singular> {
        if self.singular {
            return Err(Singular);
        }
        let n = self.n;
        let mut x = b.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            x.swap(k, p);
        }
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Full inverse, one solve per unit vector.
    pub fn inverse(&self) -> Result<Matrix, Singular> {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                data[i * n + j] = v;
            }
        }
        Matrix::new(n, data).map_err(|_| Singular)
    }
}

pub fn inverse_entrywise(a: &Matrix) -> Result<Matrix, Singular> {
    lu_factor(a).inverse()
}

/// `||A^{-1}||_inf`, computed from the full inverse.
pub fn exact_inverse_inf_norm(a: &Matrix) -> Result<f64, Singular> {
    Ok(inverse_entrywise(a)?.inf_norm())
}

/// `||A X - I||_inf`.
pub fn residual(a: &Matrix, inverse: &Matrix) -> f64 {
    a.matmul(inverse)
        .sub(&Matrix::identity(a.order()))
        .inf_norm()
}
