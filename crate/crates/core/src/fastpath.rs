//! Symmetry reductions, closed forms, and the dispatcher.
//!
//! Order of work in [`jordan_partition`]: swap so that `r <= s`, strip the
//! largest common power of `p` from `r` and `s`, move `s` into a canonical
//! residue class mod `p^m` (periodicity, then duality), try the closed forms,
//! and only then fall back to the delta recurrence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_mod_p, period_for_rank, Prime};
use crate::delta::{partition_from_vanishing, recurrence_partition};
use crate::error::{JordanError, Result};
use crate::oracle::oracle_partition_with_ceiling;
use crate::partitions::{deviation, standard_partition, DeviationVector, JordanRecord, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionKind {
    #[serde(rename = "swap-r-s")]
    Swap,
    #[serde(rename = "periodicity")]
    Periodicity,
    #[serde(rename = "duality")]
    Duality,
    #[serde(rename = "p-multiple")]
    PMultiple,
}

impl ReductionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Swap => "swap-r-s",
            ReductionKind::Periodicity => "periodicity",
            ReductionKind::Duality => "duality",
            ReductionKind::PMultiple => "p-multiple",
        }
    }
}

/// One symmetry step, mapping the pair `(r, s)` to a new pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub from: (u64, u64),
    pub to: (u64, u64),
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:({},{})->({},{})",
            self.kind.as_str(),
            self.from.0,
            self.from.1,
            self.to.0,
            self.to.1
        )
    }
}

fn require_ordered(r: u64, s: u64) -> Result<()> {
    if r == 0 || r > s {
        return Err(JordanError::invalid(format!(
            "need 1 <= r <= s, got r={r}, s={s}"
        )));
    }
    r.checked_add(s).ok_or(JordanError::Overflow("r+s"))?;
    Ok(())
}

/// Result of [`canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub s_star: u64,
    /// `true` when `s_star` lies in the class of `-s`; then
    /// `eps(r, s) = negative_reverse(eps(r, s_star))`.
    pub dual: bool,
    pub reductions: Vec<Reduction>,
}

/// Smallest `t >= r` with `t = class (mod q)`.
fn lift_class(class: u64, r: u64, q: u64) -> Result<u64> {
    if class >= r {
        return Ok(class);
    }
    let steps = (r - class).div_ceil(q);
    steps
        .checked_mul(q)
        .and_then(|x| x.checked_add(class))
        .ok_or(JordanError::Overflow("residue lift"))
}

/// Moves `s` into the residue class `a` or `-a` mod `p^m`, whichever is at
/// most `p^m / 2`, and lifts it to the least representative `>= r`.
pub fn canonicalize(r: u64, s: u64, p: Prime) -> Result<Canonical> {
    require_ordered(r, s)?;
    let q = period_for_rank(p, r)?.q;
    let a = s % q;
    let neg = (q - a) % q;
    let mut reductions = Vec::new();

    let s_same = lift_class(a, r, q)?;
    if s_same != s {
        reductions.push(Reduction {
            kind: ReductionKind::Periodicity,
            from: (r, s),
            to: (r, s_same),
        });
    }
    if neg < a {
        let s_star = lift_class(neg, r, q)?;
        reductions.push(Reduction {
            kind: ReductionKind::Duality,
            from: (r, s_same),
            to: (r, s_star),
        });
        Ok(Canonical {
            s_star,
            dual: true,
            reductions,
        })
    } else {
        Ok(Canonical {
            s_star: s_same,
            dual: false,
            reductions,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormKind {
    /// `s = 0 mod p^m`
    Uniform,
    /// `s = 1 mod p^m`
    PlusOne,
    /// `s = -1 mod p^m`
    MinusOne,
    /// `s = 2 mod p^m`
    PlusTwo,
    /// `s = -2 mod p^m`
    MinusTwo,
    /// `s` avoids `0, +-1, ..., +-(r-2)` mod `p`
    Standard,
}

impl ClosedFormKind {
    pub fn method(self) -> Method {
        match self {
            ClosedFormKind::Uniform => Method::Uniform,
            ClosedFormKind::Standard => Method::Standard,
            _ => Method::ClosedForm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub kind: ClosedFormKind,
    pub epsilon: DeviationVector,
}

/// True when `s mod p` avoids `0, +-1, ..., +-(r-2)`.
pub fn standard_criterion(r: u64, s: u64, p: Prime) -> bool {
    if r < 2 {
        return true;
    }
    let p = p.get();
    let residue = s % p;
    if r - 2 >= p - 1 {
        return false;
    }
    (0..=r - 2).all(|j| residue != j && residue != (p - j) % p)
}

fn vector_from(head: &[i64], fill: i64, tail: &[i64], r: u64) -> Result<DeviationVector> {
    let fill_len = r as usize - head.len() - tail.len();
    let mut entries = head.to_vec();
    entries.extend(std::iter::repeat_n(fill, fill_len));
    entries.extend_from_slice(tail);
    DeviationVector::new(entries).map_err(|e| JordanError::Internal(e.to_string()))
}

/// The deviation vector when a closed form applies, for `r <= s`.
///
/// The standard criterion is tried right after the uniform case; where it
/// overlaps the `+-1`, `+-2` forms they give the same vector.
pub fn closed_form(r: u64, s: u64, p: Prime) -> Result<Option<ClosedForm>> {
    require_ordered(r, s)?;
    let q = period_for_rank(p, r)?.q;
    let a = s % q;
    let ri = r as i64;
    let r_divisible = r.is_multiple_of(p.get());

    let found = if a == 0 {
        Some((ClosedFormKind::Uniform, DeviationVector::zero(r)))
    } else if standard_criterion(r, s, p) {
        Some((ClosedFormKind::Standard, DeviationVector::standard(r)))
    } else if a == 1 {
        Some((ClosedFormKind::PlusOne, vector_from(&[ri - 1], -1, &[], r)?))
    } else if a == q - 1 {
        Some((
            ClosedFormKind::MinusOne,
            vector_from(&[], 1, &[-(ri - 1)], r)?,
        ))
    } else if a == 2 {
        let head = if r_divisible {
            [ri - 2, ri - 2]
        } else {
            [ri - 1, ri - 3]
        };
        Some((ClosedFormKind::PlusTwo, vector_from(&head, -2, &[], r)?))
    } else if a == q - 2 {
        let tail = if r_divisible {
            [2 - ri, 2 - ri]
        } else {
            [3 - ri, 1 - ri]
        };
        Some((ClosedFormKind::MinusTwo, vector_from(&[], 2, &tail, r)?))
    } else {
        None
    };
    Ok(found.map(|(kind, epsilon)| ClosedForm { kind, epsilon }))
}

/// Largest part `lambda_1 = r + s - k` and its multiplicity `k`, where
/// `k >= 1` is minimal with `C(r+s-1-k, r-1) != 0 mod p`.
pub fn largest_part(r: u64, s: u64, p: Prime) -> Result<(u64, u64)> {
    require_ordered(r, s)?;
    (1..=r)
        .find(|&k| binomial_mod_p(r + s - 1 - k, (r - 1) as i64, p) != 0)
        .map(|k| (r + s - k, k))
        .ok_or_else(|| JordanError::Internal(format!("no largest part for ({r},{s},{p})")))
}

/// `r`, `s` divided by the largest common power `p^k`, with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PMultiple {
    pub r: u64,
    pub s: u64,
    pub factor: u64,
}

/// `lambda(r, s, p)` is the `factor`-multiple of `lambda(r', s', p)`.
pub fn p_multiple_reduce(r: u64, s: u64, p: Prime) -> Option<PMultiple> {
    let p = p.get();
    let (mut r, mut s, mut factor) = (r, s, 1u64);
    while r > 0 && s > 0 && r % p == 0 && s % p == 0 {
        r /= p;
        s /= p;
        factor *= p;
    }
    (factor > 1).then_some(PMultiple { r, s, factor })
}

/// Which engine to use for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Reductions and closed forms, falling back to the recurrence.
    Auto,
    Oracle {
        ceiling: u64,
    },
    Recurrence,
    /// Closed forms only, applied to the given `s` without reductions.
    Closed,
}

fn validate_inputs(r: u64, s: u64, p: u64) -> Result<(u64, u64, Option<Prime>, Vec<Reduction>)> {
    if r == 0 || s == 0 {
        return Err(JordanError::invalid(format!(
            "r and s must be positive, got r={r}, s={s}"
        )));
    }
    let prime = if p == 0 { None } else { Some(Prime::new(p)?) };
    r.checked_mul(s).ok_or(JordanError::Overflow("rs"))?;
    r.checked_add(s).ok_or(JordanError::Overflow("r+s"))?;
    let mut reductions = Vec::new();
    let (r, s) = if r > s {
        reductions.push(Reduction {
            kind: ReductionKind::Swap,
            from: (r, s),
            to: (s, r),
        });
        (s, r)
    } else {
        (r, s)
    };
    Ok((r, s, prime, reductions))
}

fn finish(
    r: u64,
    s: u64,
    p: Option<Prime>,
    lambda: crate::partitions::Partition,
    method: Method,
    reductions: Vec<Reduction>,
) -> Result<JordanRecord> {
    let m = match p {
        Some(p) => period_for_rank(p, r)?.m,
        None => 0,
    };
    let epsilon = deviation(&lambda, s).map_err(|e| JordanError::Internal(e.to_string()))?;
    let record = JordanRecord {
        r,
        s,
        p: p.map_or(0, Prime::get),
        m,
        lambda,
        epsilon,
        method,
        reductions,
    };
    record.check_invariants()?;
    Ok(record)
}

/// `lambda(r, s, p)` for any `r, s >= 1` and `p` prime or 0.
pub fn jordan_partition(r: u64, s: u64, p: u64) -> Result<JordanRecord> {
    jordan_partition_with(r, s, p, Engine::Auto)
}

pub fn jordan_partition_with(r: u64, s: u64, p: u64, engine: Engine) -> Result<JordanRecord> {
    let (r, s, prime, mut reductions) = validate_inputs(r, s, p)?;
    let Some(prime) = prime else {
        return match engine {
            Engine::Oracle { .. } => Err(JordanError::Inapplicable(
                "the oracle works over F_p and needs a prime".into(),
            )),
            Engine::Recurrence => {
                let lambda = partition_from_vanishing(r, s, &vec![false; r as usize + 1])?;
                finish(r, s, None, lambda, Method::Recurrence, reductions)
            }
            Engine::Auto | Engine::Closed => finish(
                r,
                s,
                None,
                standard_partition(r, s)?,
                Method::CharZero,
                reductions,
            ),
        };
    };

    match engine {
        Engine::Oracle { ceiling } => {
            let lambda = oracle_partition_with_ceiling(r, s, prime, ceiling)?;
            finish(r, s, Some(prime), lambda, Method::Oracle, reductions)
        }
        Engine::Recurrence => {
            let lambda = recurrence_partition(r, s, prime)?;
            finish(r, s, Some(prime), lambda, Method::Recurrence, reductions)
        }
        Engine::Closed => {
            let cf = closed_form(r, s, prime)?.ok_or_else(|| {
                JordanError::Inapplicable(format!("no closed form for ({r},{s},{prime})"))
            })?;
            let lambda = cf.epsilon.to_partition(s)?;
            finish(r, s, Some(prime), lambda, cf.kind.method(), reductions)
        }
        Engine::Auto => {
            let (r1, s1, factor) = match p_multiple_reduce(r, s, prime) {
                Some(pm) => {
                    reductions.push(Reduction {
                        kind: ReductionKind::PMultiple,
                        from: (r, s),
                        to: (pm.r, pm.s),
                    });
                    (pm.r, pm.s, pm.factor)
                }
                None => (r, s, 1),
            };
            let canon = canonicalize(r1, s1, prime)?;
            reductions.extend(canon.reductions.iter().copied());
            let (eps, method) = match closed_form(r1, canon.s_star, prime)? {
                Some(cf) => (cf.epsilon, cf.kind.method()),
                None => {
                    let lambda = recurrence_partition(r1, canon.s_star, prime)?;
                    (deviation(&lambda, canon.s_star)?, Method::Recurrence)
                }
            };
            let eps = if canon.dual {
                eps.negative_reverse()
            } else {
                eps
            };
            let mut lambda = eps.to_partition(s1)?;
            if factor > 1 {
                lambda = lambda.k_multiple(factor)?;
            }
            finish(r, s, Some(prime), lambda, method, reductions)
        }
    }
}
