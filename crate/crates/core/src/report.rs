//! JSON and plain-text rendering of classification and bound results.
//!
//! JSON carries full doubles with `null` for anything absent. The text
//! renderers round to four decimals, half away from zero.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{best_bound, BoundReport};
use crate::classify::{Classification, GudkovSearch};
use crate::io::{builtin, NamedMatrix, BUILTIN_NAMES};
use crate::oracle;

/// Rounds half away from zero to four decimals and prints exactly four.
pub fn fmt4(x: f64) -> String {
    let r = (x * 1e4).round() / 1e4;
    // avoid printing "-0.0000"
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.4}")
}

fn fmt4_or_dash(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), fmt4)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassFlags {
    pub sdd: bool,
    pub nekrasov: bool,
    pub h_matrix: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Margins {
    pub sdd: Vec<f64>,
    pub nekrasov: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValues {
    pub varah: Option<f64>,
    pub bound2: Option<f64>,
    pub bound3: Option<f64>,
    pub best: Option<f64>,
}

/// The JSON report object. Field names are a stable interface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub n: usize,
    pub class: ClassFlags,
    pub margins: Margins,
    pub bounds: BoundValues,
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gudkov: Option<GudkovSearch>,
}

impl Report {
    pub fn new(
        input: &NamedMatrix,
        class: &Classification,
        bounds: &BoundReport,
        include_gudkov: bool,
    ) -> Self {
        Self {
            name: input.name.clone(),
            n: input.matrix.order(),
            class: ClassFlags {
                sdd: class.is_sdd,
                nekrasov: class.is_nekrasov,
                h_matrix: class.is_h_matrix,
            },
            margins: Margins {
                sdd: class.sdd_margins.clone(),
                nekrasov: class.nekrasov_margins.clone(),
            },
            bounds: BoundValues {
                varah: bounds.varah,
                bound2: bounds.bound2,
                bound3: bounds.bound3,
                best: bounds.best,
            },
            exact: bounds.exact,
            gudkov: include_gudkov.then(|| class.gudkov.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn permutation_text(g: &GudkovSearch) -> String {
    match &g.permutation {
        Some(p) => {
            let idx: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
            format!("({})", idx.join(", "))
        }
        None if g.exhaustive => "none (exhaustive)".to_string(),
        None => "not found (search incomplete)".to_string(),
    }
}

/// Classification block: verdicts, Gudkov ordering (1-based) and per-row
/// margins.
pub fn classification_text(name: &str, class: &Classification) -> String {
    let mut s = String::new();
    let n = class.sdd_margins.len();
    writeln!(s, "matrix: {name} (n = {n})").unwrap();
    writeln!(s, "class: {}", class.label()).unwrap();
    writeln!(s, "sdd: {}", class.is_sdd).unwrap();
    writeln!(s, "nekrasov: {}", class.is_nekrasov).unwrap();
    writeln!(s, "h_matrix: {}", class.is_h_matrix).unwrap();
    writeln!(s, "gudkov: {}", permutation_text(&class.gudkov)).unwrap();
    writeln!(
        s,
        "{:>4}  {:>12}  {:>12}",
        "row", "sdd margin", "nek margin"
    )
    .unwrap();
    for i in 0..n {
        let nek = class
            .nekrasov_margins
            .as_ref()
            .map_or_else(|| "-".to_string(), |m| fmt4(m[i]));
        writeln!(
            s,
            "{:>4}  {:>12}  {:>12}",
            i + 1,
            fmt4(class.sdd_margins[i]),
            nek
        )
        .unwrap();
    }
    s
}

pub fn bounds_text(name: &str, n: usize, b: &BoundReport) -> String {
    let mut s = String::new();
    writeln!(s, "matrix: {name} (n = {n})").unwrap();
    let line = |s: &mut String, label: &str, v: Option<f64>, why: &str| {
        match v {
            Some(x) => writeln!(s, "{label:<7}{}", fmt4(x)),
            None => writeln!(s, "{label:<7}- ({why})"),
        }
        .unwrap()
    };
    line(&mut s, "varah", b.varah, "not SDD");
    line(&mut s, "bound2", b.bound2, "not Nekrasov");
    line(&mut s, "bound3", b.bound3, "not Nekrasov");
    line(&mut s, "best", b.best, "no applicable bound");
    if let Some(x) = b.exact {
        writeln!(s, "exact  {}", fmt4(x)).unwrap();
    }
    s
}

/// One row of the table comparing the bounds on the built-in matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaperRow {
    pub name: String,
    pub class: String,
    pub exact: Option<f64>,
    pub varah: Option<f64>,
    pub bound2: Option<f64>,
    pub bound3: Option<f64>,
}

pub fn paper_table() -> Vec<PaperRow> {
    BUILTIN_NAMES
        .iter()
        .map(|name| {
            let m = builtin(name).expect("built-in").matrix;
            let class = Classification::of(&m, 0);
            let b = best_bound(&m);
            PaperRow {
                name: name.to_string(),
                class: class.label().to_string(),
                exact: oracle::exact_inverse_inf_norm(&m).ok(),
                varah: b.varah,
                bound2: b.bound2,
                bound3: b.bound3,
            }
        })
        .collect()
}

pub fn paper_table_text(rows: &[PaperRow]) -> String {
    let mut s = format!(
        "{:<7} {:<9} {:>8} {:>8} {:>8} {:>8}\n",
        "matrix", "class", "exact", "varah", "bound2", "bound3"
    );
    for r in rows {
        writeln!(
            s,
            "{:<7} {:<9} {:>8} {:>8} {:>8} {:>8}",
            r.name,
            r.class,
            fmt4_or_dash(r.exact),
            fmt4_or_dash(r.varah),
            fmt4_or_dash(r.bound2),
            fmt4_or_dash(r.bound3)
        )
        .unwrap();
    }
    s
}
