//! Upper bounds on `||A^{-1}||_inf`.
//!
//! * Varah, for SDD matrices: `1 / min_i (|a_ii| - r_i)`.
//! * [`nekrasov_bound_2`]: `max_i (z_i / |a_ii|) / (1 - max_i (h_i / |a_ii|))`.
//! * [`nekrasov_bound_3`]: `max_i z_i / min_i (|a_ii| - h_i)`.
//!
//! The two Nekrasov bounds apply to every Nekrasov matrix and neither one
//! dominates the other, so [`best_bound`] takes the smallest one available.

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify_nekrasov, classify_sdd};
use crate::matrix::Matrix;
use crate::oracle::{self, Singular};
use crate::rowsums::RowSums;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("matrix is not strictly diagonally dominant")]
    NotSdd,
    #[error("matrix is not a Nekrasov matrix")]
    NotNekrasov,
}

pub fn varah_bound(a: &Matrix) -> Result<f64, BoundError> {
    let t = classify_sdd(a);
    if !t.holds {
        return Err(BoundError::NotSdd);
    }
    Ok(1.0 / t.margins.iter().copied().fold(f64::INFINITY, f64::min))
}

fn nekrasov_row_sums(a: &Matrix) -> Result<(Vec<f64>, RowSums), BoundError> {
    if !classify_nekrasov(a).holds {
        return Err(BoundError::NotNekrasov);
    }
    let rs = RowSums::compute(a).map_err(|_| BoundError::NotNekrasov)?;
    Ok((a.diagonal_moduli(), rs))
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::NEG_INFINITY, f64::max)
}

pub fn nekrasov_bound_2(a: &Matrix) -> Result<f64, BoundError> {
    let (d, rs) = nekrasov_row_sums(a)?;
    let num = max_of(rs.z.iter().zip(&d).map(|(z, d)| z / d));
    let worst = max_of(rs.h.iter().zip(&d).map(|(h, d)| h / d));
    Ok(num / (1.0 - worst))
}

pub fn nekrasov_bound_3(a: &Matrix) -> Result<f64, BoundError> {
    let (d, rs) = nekrasov_row_sums(a)?;
    let num = max_of(rs.z.iter().copied());
    let den =
        rs.h.iter()
            .zip(&d)
            .map(|(h, d)| d - h)
            .fold(f64::INFINITY, f64::min);
    Ok(num / den)
}

/// Every applicable bound, the smallest of them, and optionally the exact
/// norm from the LU oracle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BoundReport {
    pub varah: Option<f64>,
    pub bound2: Option<f64>,
    pub bound3: Option<f64>,
    pub best: Option<f64>,
    pub exact: Option<f64>,
}

impl BoundReport {
    pub fn has_bounds(&self) -> bool {
        self.best.is_some()
    }

    /// Computes the exact norm and stores it in the report.
    pub fn with_exact(mut self, a: &Matrix) -> Result<Self, Singular> {
        self.exact = Some(oracle::exact_inverse_inf_norm(a)?);
        Ok(self)
    }

    /// Present bounds that fall below `exact * (1 - rel_slack)`, by name.
    pub fn violations(&self, rel_slack: f64) -> Vec<&'static str> {
        let Some(exact) = self.exact else {
            return Vec::new();
        };
        [
            ("varah", self.varah),
            ("bound2", self.bound2),
            ("bound3", self.bound3),
        ]
        .into_iter()
        .filter_map(|(name, b)| b.filter(|&b| b < exact * (1.0 - rel_slack)).map(|_| name))
        .collect()
    }
}

pub fn best_bound(a: &Matrix) -> BoundReport {
    let varah = varah_bound(a).ok();
    let bound2 = nekrasov_bound_2(a).ok();
    let bound3 = nekrasov_bound_3(a).ok();
    let best = [varah, bound2, bound3]
        .into_iter()
        .flatten()
        .reduce(f64::min);
    BoundReport {
        varah,
        bound2,
        bound3,
        best,
        exact: None,
    }
}
