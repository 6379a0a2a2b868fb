//! Random matrix ensembles for sweeps and property tests.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Probability that an off-diagonal slot is populated.
const FILL: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

fn entry(rng: &mut SplitMix64, field: Field) -> Complex64 {
    match field {
        Field::Real => Complex64::new(rng.uniform(-1.0, 1.0), 0.0),
        Field::Complex => Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
    }
}

/// Random sign (real) or phase (complex) times `modulus`.
fn with_modulus(rng: &mut SplitMix64, field: Field, modulus: f64) -> Complex64 {
    match field {
        Field::Real => {
            let s = if rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
            Complex64::new(s * modulus, 0.0)
        }
        Field::Complex => Complex64::from_polar(modulus, rng.uniform(0.0, 2.0 * PI)),
    }
}

/// Uniform `(0, 2]`.
fn slack(rng: &mut SplitMix64) -> f64 {
    2.0 * (1.0 - rng.next_f64())
}

/// Every entry, diagonal included, uniform in `[-1, 1]` (both parts for
/// complex).
pub fn random_matrix(rng: &mut SplitMix64, n: usize, field: Field) -> Matrix {
    let data = (0..n * n).map(|_| entry(rng, field)).collect();
    Matrix::new(n, data).expect("finite entries")
}

/// Sparse-ish off-diagonal pattern with entries in `[-1, 1]`, zero diagonal.
fn off_diagonal_pattern(rng: &mut SplitMix64, n: usize, field: Field) -> Vec<Complex64> {
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.next_f64() < FILL {
                data[i * n + j] = entry(rng, field);
            }
        }
    }
    data
}

/// Nekrasov by construction: diagonals are set in index order to
/// `|a_ii| = h_i(A) + delta` with `delta` uniform in `(0, 2]`.
pub fn random_nekrasov(rng: &mut SplitMix64, n: usize, field: Field) -> Matrix {
    let mut data = off_diagonal_pattern(rng, n, field);
    let mut ratio = vec![0.0; n];
    for i in 0..n {
        let lower: f64 = (0..i).map(|j| data[i * n + j].norm() * ratio[j]).sum();
        let upper: f64 = (i + 1..n).map(|j| data[i * n + j].norm()).sum();
        let h = lower + upper;
        let modulus = h + slack(rng);
        let d = with_modulus(rng, field, modulus);
        data[i * n + i] = d;
        ratio[i] = h / d.norm();
    }
    Matrix::new(n, data).expect("finite entries")
}

/// SDD by construction: `|a_ii| = r_i(A) + delta`, `delta` uniform in `(0, 2]`.
pub fn random_sdd(rng: &mut SplitMix64, n: usize, field: Field) -> Matrix {
    let mut data = off_diagonal_pattern(rng, n, field);
    for i in 0..n {
        let r: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| data[i * n + j].norm())
            .sum();
        let modulus = r + slack(rng);
        data[i * n + i] = with_modulus(rng, field, modulus);
    }
    Matrix::new(n, data).expect("finite entries")
}

/// Fisher-Yates shuffle of `0..n`.
pub fn random_permutation(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.below(i + 1));
    }
    p
}

/// A Nekrasov matrix under a random symmetric permutation: a Gudkov matrix,
/// and therefore an H-matrix, that is usually not Nekrasov itself.
pub fn random_gudkov(rng: &mut SplitMix64, n: usize, field: Field) -> Matrix {
    let a = random_nekrasov(rng, n, field);
    let p = random_permutation(rng, n);
    a.permuted(&p)
}
