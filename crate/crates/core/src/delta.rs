//! The binomial determinants `delta_i` and the recurrence built on them.
//!
//! `delta_i` is the determinant of the `i x i` integer matrix with entries
//! `C(s + r - 2i, s - i + j - k)`. Only whether it vanishes mod `p` matters,
//! and that is decided from its p-adic valuation, which has the closed form
//!
//! ```text
//! v_p(delta_i) = sum_{t=s}^{r+s-1-i} v_p(t^(i)) - sum_{t=i}^{r-1} v_p(t^(i))
//! ```
//!
//! where `t^(i)` is the falling factorial of length `i`. No big integers are
//! ever formed.

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_mod_p, falling_valuation, Prime};
use crate::error::{JordanError, Result};
use crate::linalg::det_mod_p;
use crate::partitions::Partition;

fn check_shape(r: u64, s: u64, i: u64) -> Result<()> {
    if r == 0 || r > s {
        return Err(JordanError::invalid(format!(
            "delta needs 1 <= r <= s, got r={r}, s={s}"
        )));
    }
    if i > r {
        return Err(JordanError::invalid(format!(
            "delta index {i} exceeds r={r}"
        )));
    }
    r.checked_add(s).ok_or(JordanError::Overflow("r+s"))?;
    Ok(())
}

/// `v_p(delta_i)` for `0 <= i <= r <= s`.
pub fn delta_valuation(r: u64, s: u64, p: Prime, i: u64) -> Result<u64> {
    check_shape(r, s, i)?;
    if i == 0 || i == r {
        return Ok(0);
    }
    let mut numerator = 0u64;
    for t in s..=r + s - 1 - i {
        numerator += falling_valuation(t, i, p)?;
    }
    let mut denominator = 0u64;
    for t in i..r {
        denominator += falling_valuation(t, i, p)?;
    }
    numerator.checked_sub(denominator).ok_or_else(|| {
        JordanError::Internal(format!("negative valuation for delta_{i}({r},{s},{p})"))
    })
}

/// `delta_i mod p` computed as a determinant over F_p.
pub fn delta_det_mod_p(r: u64, s: u64, p: Prime, i: u64) -> Result<u64> {
    check_shape(r, s, i)?;
    let top = s + r - 2 * i;
    let base = (s - i) as i64;
    let n = i as i64;
    let matrix = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| binomial_mod_p(top, base + j - k, p))
                .collect()
        })
        .collect();
    Ok(det_mod_p(matrix, p.get()))
}

/// `v_p(delta_0), ..., v_p(delta_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSequence {
    pub r: u64,
    pub s: u64,
    pub p: Prime,
    valuations: Vec<u64>,
}

impl DeltaSequence {
    pub fn valuations(&self) -> &[u64] {
        &self.valuations
    }

    /// Whether `delta_i = 0` in F_p.
    pub fn vanishes(&self, i: usize) -> bool {
        self.valuations[i] > 0
    }

    pub fn vanishing_pattern(&self) -> Vec<bool> {
        self.valuations.iter().map(|&v| v > 0).collect()
    }
}

pub fn delta_sequence(r: u64, s: u64, p: Prime) -> Result<DeltaSequence> {
    check_shape(r, s, 0)?;
    let valuations = (0..=r)
        .map(|i| delta_valuation(r, s, p, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaSequence {
        r,
        s,
        p,
        valuations,
    })
}

/// Runs the reverse recurrence for `lambda_r, ..., lambda_1` given which
/// `delta_i` vanish (`vanishes[i]`, `0 <= i <= r`).
///
/// If `delta_i = 0` then `lambda_i = lambda_(i+1)`. Otherwise
/// `lambda_i = r + s - 2i + d`, where `d >= 1` is the distance down to the
/// next nonvanishing `delta_(i-d)`. `delta_0` and `delta_r` never vanish.
pub fn partition_from_vanishing(r: u64, s: u64, vanishes: &[bool]) -> Result<Partition> {
    check_shape(r, s, 0)?;
    if vanishes.len() as u64 != r + 1 {
        return Err(JordanError::invalid(format!(
            "vanishing pattern has length {}, expected {}",
            vanishes.len(),
            r + 1
        )));
    }
    if vanishes[0] || vanishes[r as usize] {
        return Err(JordanError::invalid("delta_0 and delta_r are 1"));
    }
    let ru = r as usize;
    let mut lambda = vec![0u64; ru + 1];
    for i in (1..=ru).rev() {
        lambda[i] = if vanishes[i] {
            lambda[i + 1]
        } else {
            let d = (1..=i)
                .find(|&d| !vanishes[i - d])
                .expect("delta_0 does not vanish") as u64;
            r + s + d - 2 * i as u64
        };
    }
    lambda.remove(0);
    let total: u64 = lambda.iter().sum();
    if total != r * s || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(JordanError::Internal(format!(
            "recurrence produced {lambda:?} for (r,s)=({r},{s})"
        )));
    }
    Partition::new(lambda).map_err(|e| JordanError::Internal(e.to_string()))
}

/// `lambda(r, s, p)` from the delta recurrence alone, for `r <= s`.
pub fn recurrence_partition(r: u64, s: u64, p: Prime) -> Result<Partition> {
    let seq = delta_sequence(r, s, p)?;
    partition_from_vanishing(r, s, &seq.vanishing_pattern())
}
