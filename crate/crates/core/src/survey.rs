//! Tables of deviation vectors for fixed `r`, and the census of all of them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{next_prime, period_for_rank, primes_up_to, Prime};
use crate::error::{JordanError, Result};
use crate::fastpath::jordan_partition;
use crate::partitions::DeviationVector;

/// Which prime a table row is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "p")]
pub enum TablePrime {
    /// A prime `p < 2r - 3`, listed individually.
    Small(Prime),
    /// Any prime `p' >= 2r - 3`; computed with the given representative.
    Generic(Prime),
}

impl TablePrime {
    pub fn prime(self) -> Prime {
        match self {
            TablePrime::Small(p) | TablePrime::Generic(p) => p,
        }
    }

    /// `"3"` for a small prime, `"p'"` for the generic row.
    pub fn label(self) -> String {
        match self {
            TablePrime::Small(p) => p.to_string(),
            TablePrime::Generic(_) => "p'".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub prime: TablePrime,
    /// `p^m` for small primes, the representative prime for the generic row.
    pub modulus: u64,
    pub residue: u64,
    /// The `s` actually computed: least `s >= r` in the residue class.
    pub s: u64,
    pub epsilon: DeviationVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationTable {
    pub r: u64,
    pub rows: Vec<TableRow>,
}

/// Representative for the generic large-prime row: the least prime
/// `p' >= 2r - 2`, so that class `r - 1` is already a standard class.
pub fn generic_prime(r: u64) -> Result<Prime> {
    next_prime(2 * r.max(1) - 2)
}

fn least_in_class(residue: u64, r: u64, modulus: u64) -> u64 {
    if residue >= r {
        residue
    } else {
        residue + (r - residue).div_ceil(modulus) * modulus
    }
}

fn table_row(r: u64, prime: TablePrime, modulus: u64, residue: u64) -> Result<TableRow> {
    let s = least_in_class(residue, r, modulus);
    let record = jordan_partition(r, s, prime.prime().get())?;
    Ok(TableRow {
        prime,
        modulus,
        residue,
        s,
        epsilon: record.epsilon,
    })
}

/// Rows for each prime `p < 2r - 3` (residues `0..=p^m/2`) followed by the
/// generic row (residues `0..=r-1`, the last being the standard vector).
pub fn deviation_table(r: u64) -> Result<DeviationTable> {
    if r == 0 {
        return Err(JordanError::invalid("r must be positive"));
    }
    let mut cells = Vec::new();
    for p in primes_up_to((2 * r).saturating_sub(4)) {
        let q = period_for_rank(p, r)?.q;
        cells.extend((0..=q / 2).map(|a| (TablePrime::Small(p), q, a)));
    }
    let generic = generic_prime(r)?;
    cells.extend((0..r).map(|a| (TablePrime::Generic(generic), generic.get(), a)));

    let rows = cells
        .into_par_iter()
        .map(|(prime, q, a)| table_row(r, prime, q, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeviationTable { r, rows })
}

/// A parameter choice attaining a deviation vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: u64,
    pub p: Prime,
}

/// The distinct deviation vectors for fixed `r`, each with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationCensus {
    pub r: u64,
    pub prime_bound: u64,
    vectors: BTreeMap<DeviationVector, Witness>,
}

impl DeviationCensus {
    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = (&DeviationVector, &Witness)> {
        self.vectors.iter()
    }

    pub fn contains(&self, v: &DeviationVector) -> bool {
        self.vectors.contains_key(v)
    }

    /// `2^(r-1)`, saturating.
    pub fn bound(&self) -> u64 {
        1u64.checked_shl((self.r - 1) as u32).unwrap_or(u64::MAX)
    }
}

pub fn default_prime_bound(r: u64) -> u64 {
    3 * r
}

/// Every `eps(r, s, p)` over one full period of `s` for each prime
/// `p <= prime_bound`, plus the standard vector that all larger primes attain.
pub fn enumerate_deviation_vectors(r: u64, prime_bound: u64) -> Result<DeviationCensus> {
    if r == 0 {
        return Err(JordanError::invalid("r must be positive"));
    }
    if prime_bound < 3 * r {
        return Err(JordanError::invalid(format!(
            "prime bound {prime_bound} is below 3r = {}",
            3 * r
        )));
    }
    let mut cells = Vec::new();
    for p in primes_up_to(prime_bound) {
        let q = period_for_rank(p, r)?.q;
        cells.extend((r..r + q).map(|s| (p, s)));
    }
    let found = cells
        .into_par_iter()
        .map(|(p, s)| Ok((jordan_partition(r, s, p.get())?.epsilon, Witness { s, p })))
        .collect::<Result<Vec<_>>>()?;

    let mut vectors = BTreeMap::new();
    for (eps, witness) in found {
        vectors.entry(eps).or_insert(witness);
    }
    let p = generic_prime(r)?;
    let s = least_in_class(r - 1, r, p.get());
    vectors
        .entry(DeviationVector::standard(r))
        .or_insert(Witness { s, p });
    Ok(DeviationCensus {
        r,
        prime_bound,
        vectors,
    })
}

/// `n_r <= 2^(r-1)`.
pub fn check_bound(census: &DeviationCensus) -> bool {
    census.count() as u64 <= census.bound()
}
