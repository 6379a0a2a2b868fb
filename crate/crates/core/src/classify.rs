//! Membership tests for the dominance classes SDD ⊆ Nekrasov ⊆ H, and a
//! search for Gudkov permutations.
//!
//! Dominance is tested with exact strict floating comparisons. The per-row
//! margins are returned alongside every verdict so callers can apply their
//! own tolerance.

use serde::Serialize;

use crate::matrix::Matrix;
use crate::oracle;
use crate::rowsums::{self, ZeroDiagonal};

/// Default order up to which the Gudkov search enumerates every permutation.
pub const DEFAULT_GUDKOV_LIMIT: usize = 8;

/// Relative guard on the entries of `<A>^{-1}` in the H-matrix test.
pub const H_MATRIX_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SddTest {
    pub holds: bool,
    /// `|a_ii| - r_i(A)`
    pub margins: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NekrasovTest {
    pub holds: bool,
    /// `|a_ii| - h_i(A)`, absent when a diagonal entry is zero.
    pub margins: Option<Vec<f64>>,
}

fn all_positive(margins: &[f64]) -> bool {
    margins.iter().all(|&m| m > 0.0)
}

pub fn classify_sdd(a: &Matrix) -> SddTest {
    let margins: Vec<f64> = a
        .diagonal_moduli()
        .iter()
        .zip(a.deleted_row_sums())
        .map(|(d, r)| d - r)
        .collect();
    SddTest {
        holds: all_positive(&margins),
        margins,
    }
}

pub fn classify_nekrasov(a: &Matrix) -> NekrasovTest {
    match rowsums::nekrasov_row_sums(a) {
        Ok(h) => {
            let margins: Vec<f64> = a
                .diagonal_moduli()
                .iter()
                .zip(&h)
                .map(|(d, h)| d - h)
                .collect();
            NekrasovTest {
                holds: all_positive(&margins),
                margins: Some(margins),
            }
        }
        Err(_) => NekrasovTest {
            holds: false,
            margins: None,
        },
    }
}

/// `C = E - (|D| - |L|)^{-1} |U|`, one forward solve per column of `|U|`.
pub fn szulc_matrix(a: &Matrix) -> Result<Matrix, ZeroDiagonal> {
    let m = rowsums::lower_m_matrix(a)?;
    let n = a.order();
    let mut c = vec![0.0; n * n];
    for j in 0..n {
        let col: Vec<f64> = (0..n)
            .map(|i| if i < j { a.abs(i, j) } else { 0.0 })
            .collect();
        for (i, w) in m.solve(&col).into_iter().enumerate() {
            c[i * n + j] = -w;
        }
    }
    for i in 0..n {
        c[i * n + i] += 1.0;
    }
    Ok(Matrix::from_real(n, &c).expect("finite for a nonzero diagonal"))
}

/// Nekrasov test through the matrix `C = E - (|D| - |L|)^{-1} |U|`.
///
/// `C` must be SDD with a positive diagonal. Since `(|D| - |L|)^{-1} |U|` is
/// entrywise nonnegative this is exactly `(|D| - |L|)^{-1} |U| e < e`. SDD
/// alone is not enough: a diagonal entry of `C` below `-1` can still
/// dominate its row.
pub fn classify_nekrasov_szulc(a: &Matrix) -> Result<bool, ZeroDiagonal> {
    let c = szulc_matrix(a)?;
    let positive_diagonal = (0..c.order()).all(|i| c[(i, i)].re > 0.0);
    Ok(positive_diagonal && classify_sdd(&c).holds)
}

/// `<A>` is a nonsingular M-matrix: its inverse exists and is entrywise
/// nonnegative up to `H_MATRIX_REL_TOL * ||<A>^{-1}||_inf`.
pub fn classify_h_matrix(a: &Matrix) -> bool {
    match oracle::inverse_entrywise(&a.comparison()) {
        Ok(inv) => {
            let tol = H_MATRIX_REL_TOL * inv.inf_norm();
            inv.as_slice().iter().all(|z| z.re >= -tol)
        }
        Err(_) => false,
    }
}

/// Outcome of [`find_gudkov_permutation`].
///
/// `permutation[k]` is the original index placed at position `k`, so the
/// Nekrasov matrix is `a.permuted(&permutation)`. When `permutation` is
/// `None` and `exhaustive` is false, the search gave up and nothing is
/// proven.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GudkovSearch {
    pub permutation: Option<Vec<usize>>,
    pub exhaustive: bool,
}

pub fn find_gudkov_permutation(a: &Matrix, limit: usize) -> GudkovSearch {
    let n = a.order();
    if classify_nekrasov(a).holds {
        return GudkovSearch {
            permutation: Some((0..n).collect()),
            exhaustive: true,
        };
    }
    // Every symmetric permutation keeps the same multiset of diagonal entries.
    if rowsums::nonzero_diagonal(a).is_err() {
        return GudkovSearch {
            permutation: None,
            exhaustive: true,
        };
    }
    if n <= limit {
        enumerate_permutations(a)
    } else {
        let budget = (1..=n as u64)
            .try_fold(1u64, |acc, k| acc.checked_mul(k))
            .and_then(|f| f.checked_mul(limit as u64))
            .unwrap_or(u64::MAX);
        prefix_search(a, budget)
    }
}

/// Tries all `n!` orderings in lexicographic order.
fn enumerate_permutations(a: &Matrix) -> GudkovSearch {
    let n = a.order();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if classify_nekrasov(&a.permuted(&perm)).holds {
            return GudkovSearch {
                permutation: Some(perm),
                exhaustive: true,
            };
        }
        if !next_permutation(&mut perm) {
            return GudkovSearch {
                permutation: None,
                exhaustive: true,
            };
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

struct PrefixSearch<'a> {
    a: &'a Matrix,
    diag: Vec<f64>,
    budget: u64,
    expanded: u64,
    prefix: Vec<usize>,
    // h_k / |a_kk| for each placed index, aligned with `prefix`
    ratios: Vec<f64>,
    used: Vec<bool>,
}

impl PrefixSearch<'_> {
    /// `|a_cc| - h` for candidate `c` placed right after the current prefix.
    /// Only the prefix and `c` matter: the remaining indices all land to the
    /// right of `c` in any completion.
    fn margin(&self, c: usize) -> (f64, f64) {
        let lower: f64 = self
            .prefix
            .iter()
            .zip(&self.ratios)
            .map(|(&p, r)| self.a.abs(c, p) * r)
            .sum();
        let upper: f64 = (0..self.diag.len())
            .filter(|&m| m != c && !self.used[m])
            .map(|m| self.a.abs(c, m))
            .sum();
        let h = lower + upper;
        (self.diag[c] - h, h)
    }

    /// Depth-first extension of the prefix. `Err(())` means the node budget
    /// ran out.
    fn extend(&mut self) -> Result<bool, ()> {
        let n = self.diag.len();
        if self.prefix.len() == n {
            return Ok(true);
        }
        if self.expanded >= self.budget {
            return Err(());
        }
        self.expanded += 1;

        let mut candidates: Vec<(usize, f64, f64)> = (0..n)
            .filter(|&c| !self.used[c])
            .map(|c| {
                let (m, h) = self.margin(c);
                (c, m, h)
            })
            .filter(|&(_, m, _)| m > 0.0)
            .collect();
        // most dominant candidate first, ties by index for determinism
        candidates.sort_by(|x, y| {
            (y.1 / self.diag[y.0])
                .total_cmp(&(x.1 / self.diag[x.0]))
                .then(x.0.cmp(&y.0))
        });

        for (c, _, h) in candidates {
            self.prefix.push(c);
            self.ratios.push(h / self.diag[c]);
            self.used[c] = true;
            if self.extend()? {
                return Ok(true);
            }
            self.used[c] = false;
            self.ratios.pop();
            self.prefix.pop();
        }
        Ok(false)
    }
}

/// Greedy depth-first search over orderings. The first index must head an
/// SDD row (its Nekrasov sum is its plain deleted row sum); each further
/// index must satisfy its Nekrasov inequality given the indices before it.
fn prefix_search(a: &Matrix, budget: u64) -> GudkovSearch {
    let n = a.order();
    let mut search = PrefixSearch {
        a,
        diag: a.diagonal_moduli(),
        budget,
        expanded: 0,
        prefix: Vec::with_capacity(n),
        ratios: Vec::with_capacity(n),
        used: vec![false; n],
    };
    match search.extend() {
        Ok(true) => GudkovSearch {
            permutation: Some(search.prefix),
            exhaustive: true,
        },
        Ok(false) => GudkovSearch {
            permutation: None,
            exhaustive: true,
        },
        Err(()) => GudkovSearch {
            permutation: None,
            exhaustive: false,
        },
    }
}

/// Verdicts for every class, with margins.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub is_sdd: bool,
    pub is_nekrasov: bool,
    pub is_h_matrix: bool,
    pub gudkov: GudkovSearch,
    pub sdd_margins: Vec<f64>,
    pub nekrasov_margins: Option<Vec<f64>>,
}

impl Classification {
    pub fn of(a: &Matrix, gudkov_limit: usize) -> Self {
        let sdd = classify_sdd(a);
        let nek = classify_nekrasov(a);
        let gudkov = find_gudkov_permutation(a, gudkov_limit);
        // a Gudkov matrix is a permuted Nekrasov matrix, hence H
        let is_h_matrix = nek.holds || gudkov.permutation.is_some() || classify_h_matrix(a);
        Self {
            is_sdd: sdd.holds,
            is_nekrasov: nek.holds,
            is_h_matrix,
            gudkov,
            sdd_margins: sdd.margins,
            nekrasov_margins: nek.margins,
        }
    }

    /// Narrowest class label: `SDD`, `Nekrasov`, `Gudkov`, `H` or `none`.
    pub fn label(&self) -> &'static str {
        if self.is_sdd {
            "SDD"
        } else if self.is_nekrasov {
            "Nekrasov"
        } else if self.gudkov.permutation.is_some() {
            "Gudkov"
        } else if self.is_h_matrix {
            "H"
        } else {
            "none"
        }
    }
}
