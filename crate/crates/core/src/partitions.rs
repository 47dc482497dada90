//! Partitions, deviation vectors and the result envelope.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};
use crate::fastpath::Reduction;

/// A weakly decreasing list of positive integers, stored one entry per part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(JordanError::invalid("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(JordanError::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(JordanError::invalid(
                "partition parts must be weakly decreasing",
            ));
        }
        Ok(Partition(parts))
    }

    /// Sorts `parts` into decreasing order before validating.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u64 {
        self.0[0]
    }

    pub fn size(&self) -> Result<u64> {
        self.0.iter().try_fold(0u64, |acc, &x| {
            acc.checked_add(x)
                .ok_or(JordanError::Overflow("partition size"))
        })
    }

    /// Number of parts equal to the largest part.
    pub fn largest_multiplicity(&self) -> u64 {
        self.0.iter().take_while(|&&x| x == self.0[0]).count() as u64
    }

    /// Each part `t` becomes `k` copies of `k t`.
    pub fn k_multiple(&self, k: u64) -> Result<Partition> {
        if k == 0 {
            return Err(JordanError::invalid("multiple must be positive"));
        }
        let mut parts = Vec::with_capacity(self.0.len().saturating_mul(k as usize));
        for &t in &self.0 {
            let scaled = t
                .checked_mul(k)
                .ok_or(JordanError::Overflow("k-multiple"))?;
            parts.extend(std::iter::repeat_n(scaled, k as usize));
        }
        Ok(Partition(parts))
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = JordanError;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// `lambda - (s, ..., s)` for a Jordan partition: weakly decreasing, sums to zero.
///
/// Trailing zeros are kept, so the length is always the rank `r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DeviationVector(Vec<i64>);

impl DeviationVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(JordanError::invalid("deviation vector must be nonempty"));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(JordanError::invalid(
                "deviation vector entries must be weakly decreasing",
            ));
        }
        let sum = entries
            .iter()
            .try_fold(0i64, |acc, &x| acc.checked_add(x))
            .ok_or(JordanError::Overflow("deviation sum"))?;
        if sum != 0 {
            return Err(JordanError::invalid(format!(
                "deviation vector must sum to zero, got {sum}"
            )));
        }
        Ok(DeviationVector(entries))
    }

    pub fn zero(r: u64) -> Self {
        DeviationVector(vec![0; r as usize])
    }

    /// `(r-1, r-3, ..., -(r-1))`.
    pub fn standard(r: u64) -> Self {
        let r = r as i64;
        DeviationVector((1..=r).map(|i| r + 1 - 2 * i).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `(e_1, ..., e_r) -> (-e_r, ..., -e_1)`. An involution.
    pub fn negative_reverse(&self) -> DeviationVector {
        DeviationVector(self.0.iter().rev().map(|&e| -e).collect())
    }

    pub fn max_abs(&self) -> u64 {
        self.0.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    /// Rebuilds `lambda` for a given second argument `s`.
    pub fn to_partition(&self, s: u64) -> Result<Partition> {
        let parts = self
            .0
            .iter()
            .map(|&e| {
                let part = s as i128 + e as i128;
                if part <= 0 || part > u64::MAX as i128 {
                    Err(JordanError::invalid(format!(
                        "deviation {self} is incompatible with s={s}"
                    )))
                } else {
                    Ok(part as u64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for DeviationVector {
    type Error = JordanError;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        DeviationVector::new(entries)
    }
}

impl From<DeviationVector> for Vec<i64> {
    fn from(d: DeviationVector) -> Vec<i64> {
        d.0
    }
}

/// Renders as `(a,b,...)` with no spaces.
impl fmt::Display for DeviationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl FromStr for DeviationVector {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| JordanError::invalid(format!("expected (a,b,...), got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| JordanError::invalid(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DeviationVector::new(entries)
    }
}

/// Deviation of `lambda` from `(s, ..., s)`.
pub fn deviation(lambda: &Partition, s: u64) -> Result<DeviationVector> {
    let entries = lambda
        .parts()
        .iter()
        .map(|&x| {
            let d = x as i128 - s as i128;
            i64::try_from(d).map_err(|_| JordanError::Overflow("deviation"))
        })
        .collect::<Result<Vec<_>>>()?;
    DeviationVector::new(entries)
}

/// `(s+r-1, s+r-3, ..., s-r+1)`, the characteristic-zero answer.
pub fn standard_partition(r: u64, s: u64) -> Result<Partition> {
    if r == 0 || r > s {
        return Err(JordanError::invalid(format!(
            "standard partition needs 1 <= r <= s, got r={r}, s={s}"
        )));
    }
    s.checked_add(r).ok_or(JordanError::Overflow("r+s"))?;
    Ok(Partition((1..=r).map(|i| r + s + 1 - 2 * i).collect()))
}

/// `r` copies of `s`.
pub fn uniform_partition(r: u64, s: u64) -> Result<Partition> {
    if r == 0 || s == 0 {
        return Err(JordanError::invalid("uniform partition needs r, s >= 1"));
    }
    Ok(Partition(vec![s; r as usize]))
}

/// Which engine produced a [`JordanRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Recurrence,
    ClosedForm,
    Standard,
    Uniform,
    CharZero,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Recurrence => "recurrence",
            Method::ClosedForm => "closed-form",
            Method::Standard => "standard",
            Method::Uniform => "uniform",
            Method::CharZero => "char-zero",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The Jordan partition of `J_r (x) J_s` in characteristic `p`, with provenance.
///
/// `r <= s` always holds here; inputs with `r > s` are swapped and the swap is
/// recorded in `reductions`. `p = 0` means characteristic zero, and then `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanRecord {
    pub r: u64,
    pub s: u64,
    pub p: u64,
    pub m: u32,
    pub lambda: Partition,
    pub epsilon: DeviationVector,
    pub method: Method,
    pub reductions: Vec<Reduction>,
}

impl JordanRecord {
    /// Checks the structural guarantees every Jordan partition satisfies.
    pub fn check_invariants(&self) -> Result<()> {
        let (r, s) = (self.r, self.s);
        let fail = |what: String| {
            Err(JordanError::Internal(format!(
                "({r},{s},{}): {what}",
                self.p
            )))
        };
        if self.lambda.len() as u64 != r {
            return fail(format!(
                "{} has {} parts, expected {r}",
                self.lambda,
                self.lambda.len()
            ));
        }
        if self.lambda.size()? != r * s {
            return fail(format!("{} does not sum to {}", self.lambda, r * s));
        }
        let l1 = self.lambda.largest();
        if l1 < s || l1 > r + s - 1 {
            return fail(format!("largest part {l1} outside [{s}, {}]", r + s - 1));
        }
        if self.epsilon.max_abs() > r - 1 {
            return fail(format!("deviation {} exceeds r-1", self.epsilon));
        }
        if deviation(&self.lambda, s)? != self.epsilon {
            return fail(format!(
                "{} inconsistent with {}",
                self.epsilon, self.lambda
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn dv(v: &[i64]) -> DeviationVector {
        DeviationVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(deviation(&part(&[2, 2]), 2).unwrap(), dv(&[0, 0]));
        assert_eq!(deviation(&part(&[4, 2]), 3).unwrap(), dv(&[1, -1]));
        assert_eq!(
            deviation(&part(&[18, 18, 18, 14]), 17).unwrap(),
            dv(&[1, 1, 1, -3])
        );
        assert!(deviation(&part(&[4, 2]), 2).is_err());
    }

    #[test]
    fn negative_reverse_examples() {
        assert_eq!(dv(&[0, 0, 0]).negative_reverse(), dv(&[0, 0, 0]));
        assert_eq!(dv(&[3, -1, -1, -1]).negative_reverse(), dv(&[1, 1, 1, -3]));
        assert_eq!(dv(&[2, 0, -2]).negative_reverse(), dv(&[2, 0, -2]));
    }

    #[test]
    fn k_multiple_examples() {
        assert_eq!(part(&[5, 3, 1]).k_multiple(1).unwrap(), part(&[5, 3, 1]));
        assert_eq!(part(&[4, 2]).k_multiple(2).unwrap(), part(&[8, 8, 4, 4]));
        assert_eq!(part(&[3]).k_multiple(3).unwrap(), part(&[9, 9, 9]));
        assert!(part(&[3]).k_multiple(0).is_err());
        assert_eq!(
            part(&[u64::MAX / 2]).k_multiple(3),
            Err(JordanError::Overflow("k-multiple"))
        );
    }

    #[test]
    fn standard_and_uniform_examples() {
        assert_eq!(standard_partition(1, 9).unwrap(), part(&[9]));
        assert_eq!(standard_partition(3, 4).unwrap(), part(&[6, 4, 2]));
        assert_eq!(standard_partition(2, 3).unwrap(), part(&[4, 2]));
        assert!(standard_partition(4, 3).is_err());
        assert_eq!(uniform_partition(1, 7).unwrap(), part(&[7]));
        assert_eq!(uniform_partition(3, 3).unwrap(), part(&[3, 3, 3]));
        assert_eq!(uniform_partition(4, 8).unwrap(), part(&[8, 8, 8, 8]));
    }

    #[test]
    fn constructors_reject_malformed_input() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(DeviationVector::new(vec![1, 0]).is_err());
        assert!(DeviationVector::new(vec![-1, 1]).is_err());
        assert_eq!(Partition::from_unsorted(vec![2, 4]).unwrap(), part(&[4, 2]));
    }

    #[test]
    fn rendering_and_parsing() {
        let v = dv(&[1, 1, 1, -3]);
        assert_eq!(v.to_string(), "(1,1,1,-3)");
        assert_eq!("(1,1,1,-3)".parse::<DeviationVector>().unwrap(), v);
        assert_eq!(" ( 0 ) ".parse::<DeviationVector>().unwrap(), dv(&[0]));
        assert!("1,2".parse::<DeviationVector>().is_err());
        assert!("(1,x)".parse::<DeviationVector>().is_err());
        assert_eq!(part(&[18, 18, 18, 14]).to_string(), "(18,18,18,14)");
    }

    #[test]
    fn standard_vector_shape() {
        assert_eq!(DeviationVector::standard(1), dv(&[0]));
        assert_eq!(DeviationVector::standard(4), dv(&[3, 1, -1, -3]));
        for r in 1..20 {
            for s in r..r + 5 {
                let lam = standard_partition(r, s).unwrap();
                assert_eq!(deviation(&lam, s).unwrap(), DeviationVector::standard(r));
                assert!(deviation(&uniform_partition(r, s).unwrap(), s)
                    .unwrap()
                    .is_zero());
            }
        }
    }
}
