//! Randomized soundness sweep: generate Nekrasov matrices, compare both
//! bounds against the LU oracle.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::best_bound;
use crate::generate::{random_nekrasov, Field};
use crate::report::fmt4;
use crate::rng::SplitMix64;

/// A bound counts as violated when it falls below `exact * (1 - SLACK)`.
pub const SOUNDNESS_REL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tightness {
    pub min: f64,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub count: usize,
    pub n: usize,
    pub seed: u64,
    pub violations: usize,
    /// `exact / bound`, at most 1 for a sound bound.
    pub bound2_tightness: Tightness,
    pub bound3_tightness: Tightness,
    pub bound2_wins: usize,
    pub bound3_wins: usize,
    pub ties: usize,
}

fn tightness(mut ratios: Vec<f64>) -> Tightness {
    ratios.sort_by(f64::total_cmp);
    let k = ratios.len();
    let median = if k % 2 == 1 {
        ratios[k / 2]
    } else {
        0.5 * (ratios[k / 2 - 1] + ratios[k / 2])
    };
    Tightness {
        min: ratios[0],
        median,
    }
}

/// Each matrix gets its own child generator split off the seeded parent.
/// Panics if `count` or `n` is zero.
pub fn run_sweep(count: usize, n: usize, seed: u64) -> SweepSummary {
    assert!(count >= 1 && n >= 1, "sweep needs count >= 1 and n >= 1");
    let mut rng = SplitMix64::new(seed);
    let mut r2 = Vec::with_capacity(count);
    let mut r3 = Vec::with_capacity(count);
    let (mut violations, mut wins2, mut wins3, mut ties) = (0, 0, 0, 0);

    for _ in 0..count {
        let mut child = rng.split();
        let a = random_nekrasov(&mut child, n, Field::Real);
        let report = match best_bound(&a).with_exact(&a) {
            Ok(r) => r,
            Err(_) => {
                // a Nekrasov matrix is nonsingular
                violations += 1;
                continue;
            }
        };
        let (Some(b2), Some(b3), Some(exact)) = (report.bound2, report.bound3, report.exact) else {
            violations += 1;
            continue;
        };
        if !report.violations(SOUNDNESS_REL_SLACK).is_empty() {
            violations += 1;
        }
        r2.push(exact / b2);
        r3.push(exact / b3);
        match b2.total_cmp(&b3) {
            std::cmp::Ordering::Less => wins2 += 1,
            std::cmp::Ordering::Greater => wins3 += 1,
            std::cmp::Ordering::Equal => ties += 1,
        }
    }

    let empty = Tightness {
        min: f64::NAN,
        median: f64::NAN,
    };
    SweepSummary {
        count,
        n,
        seed,
        violations,
        bound2_tightness: if r2.is_empty() { empty } else { tightness(r2) },
        bound3_tightness: if r3.is_empty() { empty } else { tightness(r3) },
        bound2_wins: wins2,
        bound3_wins: wins3,
        ties,
    }
}

impl SweepSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "sweep: count={} n={} seed={}",
            self.count, self.n, self.seed
        )
        .unwrap();
        writeln!(s, "violations: {}", self.violations).unwrap();
        for (name, t) in [
            ("bound2", self.bound2_tightness),
            ("bound3", self.bound3_tightness),
        ] {
            writeln!(
                s,
                "{name} tightness (exact/bound): min {} median {}",
                fmt4(t.min),
                fmt4(t.median)
            )
            .unwrap();
        }
        writeln!(
            s,
            "smaller bound: bound2 {}, bound3 {}, tie {}",
            self.bound2_wins, self.bound3_wins, self.ties
        )
        .unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
