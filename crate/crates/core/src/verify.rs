//! Cross-validation over a grid of `(r, s, p)`.
//!
//! Each cell compares the oracle, the bare recurrence and the dispatcher, and
//! checks the symmetry and bound properties. The symmetry checks use the bare
//! recurrence on the transformed parameters, so they never go through the
//! reductions they are checking.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{period_for_rank, Prime};
use crate::delta::{delta_det_mod_p, delta_sequence, recurrence_partition};
use crate::error::Result;
use crate::fastpath::{jordan_partition, largest_part, standard_criterion};
use crate::oracle::{oracle_partition_with_ceiling, DEFAULT_ORACLE_CEILING};
use crate::partitions::{deviation, standard_partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub r_max: u64,
    pub s_max: u64,
    pub primes: Vec<Prime>,
    /// Ceiling on `rs` for oracle calls on grid cells.
    pub ceiling: u64,
    /// The scaled cell `(pr, ps)` is also checked against the oracle when
    /// `p^2 rs` is at most this; otherwise only against the recurrence.
    pub scaled_oracle_limit: u64,
}

impl VerifyConfig {
    pub fn new(r_max: u64, s_max: u64, primes: Vec<Prime>) -> Self {
        VerifyConfig {
            r_max,
            s_max,
            primes,
            ceiling: DEFAULT_ORACLE_CEILING,
            scaled_oracle_limit: 2_500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub r: u64,
    pub s: u64,
    pub p: u64,
    pub check: String,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cells: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.check == check)
    }
}

/// Names of the checks run per cell, in report order.
pub const CHECKS: &[&str] = &[
    "oracle-vs-recurrence",
    "oracle-vs-dispatcher",
    "record-invariants",
    "periodicity",
    "duality",
    "p-multiple",
    "uniform-iff",
    "standard-criterion",
    "largest-part",
    "delta-zero-pattern",
];

struct Cell {
    r: u64,
    s: u64,
    p: Prime,
    checks: usize,
    violations: Vec<Violation>,
}

impl Cell {
    fn expect<T: PartialEq + ToString>(&mut self, check: &str, expected: &T, found: &T) {
        self.checks += 1;
        if expected != found {
            self.violations.push(Violation {
                r: self.r,
                s: self.s,
                p: self.p.get(),
                check: check.to_string(),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
}

fn check_cell(r: u64, s: u64, p: Prime, config: &VerifyConfig) -> Result<Cell> {
    let mut cell = Cell {
        r,
        s,
        p,
        checks: 0,
        violations: Vec::new(),
    };
    let q = period_for_rank(p, r)?.q;

    let oracle = oracle_partition_with_ceiling(r, s, p, config.ceiling)?;
    let eps = deviation(&oracle, s)?;
    let recurrence = recurrence_partition(r, s, p)?;
    let record = jordan_partition(r, s, p.get())?;
    cell.expect("oracle-vs-recurrence", &oracle, &recurrence);
    cell.expect("oracle-vs-dispatcher", &oracle, &record.lambda);
    let invariants = record.check_invariants().map_err(|e| e.to_string());
    cell.expect(
        "record-invariants",
        &String::from("ok"),
        &invariants.err().unwrap_or("ok".into()),
    );

    let shifted = recurrence_partition(r, s + q, p)?;
    cell.expect("periodicity", &eps, &deviation(&shifted, s + q)?);

    let neg = (q - s % q) % q;
    let s_dual = if neg >= r {
        neg
    } else {
        neg + (r - neg).div_ceil(q) * q
    };
    let dual = recurrence_partition(r, s_dual, p)?;
    cell.expect(
        "duality",
        &eps.negative_reverse(),
        &deviation(&dual, s_dual)?,
    );

    let pn = p.get();
    let scaled_expected = oracle.k_multiple(pn)?;
    cell.expect(
        "p-multiple",
        &scaled_expected,
        &recurrence_partition(pn * r, pn * s, p)?,
    );
    if pn * pn * r * s <= config.scaled_oracle_limit.min(config.ceiling) {
        let scaled_oracle = oracle_partition_with_ceiling(pn * r, pn * s, p, config.ceiling)?;
        cell.expect("p-multiple", &scaled_expected, &scaled_oracle);
    }

    cell.expect("uniform-iff", &s.is_multiple_of(q), &eps.is_zero());

    if standard_criterion(r, s, p) {
        cell.expect("standard-criterion", &standard_partition(r, s)?, &oracle);
    }

    let (l1, mult) = largest_part(r, s, p)?;
    cell.expect("largest-part", &l1, &oracle.largest());
    cell.expect("largest-part", &mult, &oracle.largest_multiplicity());

    let seq = delta_sequence(r, s, p)?;
    for i in 0..=r {
        let det_zero = delta_det_mod_p(r, s, p, i)? == 0;
        cell.expect("delta-zero-pattern", &seq.vanishes(i as usize), &det_zero);
    }
    Ok(cell)
}

/// Checks every `1 <= r <= min(r_max, s)`, `s <= s_max`, and listed prime.
///
/// Cells run in parallel; violations are reported in `(p, r, s)` order.
pub fn verify_grid(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut grid = Vec::new();
    for &p in &config.primes {
        for r in 1..=config.r_max {
            for s in r..=config.s_max {
                grid.push((r, s, p));
            }
        }
    }
    let cells = grid
        .into_par_iter()
        .map(|(r, s, p)| check_cell(r, s, p, config))
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerifyReport {
        cells: cells.len(),
        ..Default::default()
    };
    for cell in cells {
        report.checks += cell.checks;
        report.violations.extend(cell.violations);
    }
    Ok(report)
}
