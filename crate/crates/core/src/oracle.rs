//! Brute-force ground truth.
//!
//! The algebra `A = F_p[x, y] / (x^r, y^s)` with multiplication by `x + y` is a
//! nilpotent operator whose Jordan type equals that of `J_r (x) J_s`. The
//! oracle computes the ranks of its powers by elimination over F_p and reads
//! the partition off the rank profile.
//!
//! Multiplication by `x + y` raises total degree by one, so the image of the
//! degree-`d` monomials under the `k`-th power lives in degree `d + k`. The
//! rank of the `rs x rs` power is the sum of the ranks of these homogeneous
//! blocks, each at most `r x r`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_mod_p, Prime};
use crate::error::{JordanError, Result};
use crate::linalg::rank_mod_p;
use crate::partitions::Partition;

/// Default upper bound on `rs` for the oracle.
pub const DEFAULT_ORACLE_CEILING: u64 = 20_000;

/// An element of `A`, as a sparse map `(i, j) -> coefficient` for `x^i y^j`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraVector {
    coefficients: BTreeMap<(u64, u64), u64>,
}

impl AlgebraVector {
    pub fn zero() -> Self {
        AlgebraVector::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, i: u64, j: u64) -> u64 {
        self.coefficients.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero terms in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), u64)> + '_ {
        self.coefficients.iter().map(|(&k, &v)| (k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.coefficients.len()
    }

    fn add_term(&mut self, i: u64, j: u64, c: u64, p: u64) {
        let c = c % p;
        if c == 0 {
            return;
        }
        let entry = self.coefficients.entry((i, j)).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.coefficients.remove(&(i, j));
        }
    }
}

/// `F_p[x, y] / (x^r, y^s)` with basis `x^i y^j`, `0 <= i < r`, `0 <= j < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialAlgebra {
    r: u64,
    s: u64,
    p: Prime,
}

impl MonomialAlgebra {
    pub fn new(r: u64, s: u64, p: Prime) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(JordanError::invalid("algebra needs r, s >= 1"));
        }
        r.checked_mul(s).ok_or(JordanError::Overflow("rs"))?;
        r.checked_add(s).ok_or(JordanError::Overflow("r+s"))?;
        Ok(MonomialAlgebra { r, s, p })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dimension(&self) -> u64 {
        self.r * self.s
    }

    pub fn monomial(&self, i: u64, j: u64) -> Result<AlgebraVector> {
        if i >= self.r || j >= self.s {
            return Err(JordanError::invalid(format!(
                "x^{i} y^{j} is outside A({},{})",
                self.r, self.s
            )));
        }
        Ok(self.vector([((i, j), 1)]))
    }

    pub fn one(&self) -> AlgebraVector {
        self.vector([((0, 0), 1)])
    }

    /// Builds a vector from terms, reducing coefficients mod p and dropping
    /// monomials that vanish in `A`.
    pub fn vector(&self, terms: impl IntoIterator<Item = ((u64, u64), u64)>) -> AlgebraVector {
        let mut v = AlgebraVector::zero();
        for ((i, j), c) in terms {
            if i < self.r && j < self.s {
                v.add_term(i, j, c, self.p.get());
            }
        }
        v
    }

    /// Multiplication by `x + y`.
    pub fn apply_nilpotent(&self, v: &AlgebraVector) -> AlgebraVector {
        let p = self.p.get();
        let mut out = AlgebraVector::zero();
        for ((i, j), c) in v.terms() {
            if i + 1 < self.r {
                out.add_term(i + 1, j, c, p);
            }
            if j + 1 < self.s {
                out.add_term(i, j + 1, c, p);
            }
        }
        out
    }

    /// `(x + y)^n` expanded binomially and truncated; zero for `n >= r + s - 1`.
    pub fn power_expansion(&self, n: u64) -> AlgebraVector {
        let mut v = AlgebraVector::zero();
        if let Some((lo, hi)) = self.degree_range(n) {
            for i in lo..=hi {
                v.add_term(i, n - i, binomial_mod_p(n, i as i64, self.p), self.p.get());
            }
        }
        v
    }

    /// `w_i = sum_{j=0}^{i} (-1)^j x^(r-1-j) y^(s-1-i+j)` for `0 <= i < r`,
    /// a basis of the annihilator of `x + y`. Requires `r <= s`.
    pub fn annihilator_basis(&self) -> Result<Vec<AlgebraVector>> {
        if self.r > self.s {
            return Err(JordanError::invalid("annihilator basis requires r <= s"));
        }
        let p = self.p.get();
        let (r, s) = (self.r, self.s);
        Ok((0..r)
            .map(|i| {
                let mut w = AlgebraVector::zero();
                for j in 0..=i {
                    let sign = if j % 2 == 0 { 1 } else { p - 1 };
                    w.add_term(r - 1 - j, s - 1 - i + j, sign, p);
                }
                w
            })
            .collect())
    }

    /// Dimension of the span of `vectors`.
    pub fn rank_of(&self, vectors: &[AlgebraVector]) -> usize {
        let s = self.s;
        let width = self.dimension() as usize;
        let mut rows: Vec<Vec<u64>> = vectors
            .iter()
            .map(|v| {
                let mut row = vec![0; width];
                for ((i, j), c) in v.terms() {
                    row[(i * s + j) as usize] = c;
                }
                row
            })
            .collect();
        rank_mod_p(&mut rows, self.p.get())
    }

    /// Exponent range `[lo, hi]` of `x` among degree-`d` monomials, if any.
    fn degree_range(&self, d: u64) -> Option<(u64, u64)> {
        let lo = d.saturating_sub(self.s - 1);
        let hi = d.min(self.r - 1);
        (lo <= hi).then_some((lo, hi))
    }

    /// Ranks of `N^0, N^1, ...` for `N` = multiplication by `x + y`, ending at 0.
    pub fn rank_profile(&self) -> RankProfile {
        let p = self.p.get();
        let top = self.r + self.s - 2;

        // One block per source degree: the images of its monomials under N^k,
        // as dense rows indexed by the x-exponent offset in the target degree.
        struct Block {
            target: u64,
            rows: Vec<Vec<u64>>,
        }
        let mut blocks: Vec<Block> = (0..=top)
            .filter_map(|d| {
                let (lo, hi) = self.degree_range(d)?;
                let n = (hi - lo + 1) as usize;
                let rows = (0..n)
                    .map(|k| {
                        let mut row = vec![0; n];
                        row[k] = 1;
                        row
                    })
                    .collect();
                Some(Block { target: d, rows })
            })
            .collect();

        let mut ranks = vec![self.dimension()];
        loop {
            blocks.retain(|b| b.target < top);
            for block in &mut blocks {
                let (lo, _) = self.degree_range(block.target).expect("nonempty degree");
                let (nlo, nhi) = self
                    .degree_range(block.target + 1)
                    .expect("nonempty degree");
                let width = (nhi - nlo + 1) as usize;
                for row in &mut block.rows {
                    let mut next = vec![0; width];
                    for (k, &c) in row.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let i = lo + k as u64;
                        // x * x^i y^j -> x^(i+1) y^j, y * x^i y^j -> x^i y^(j+1)
                        for target_i in [i + 1, i] {
                            if (nlo..=nhi).contains(&target_i) {
                                let slot = &mut next[(target_i - nlo) as usize];
                                *slot = (*slot + c) % p;
                            }
                        }
                    }
                    *row = next;
                }
                block.target += 1;
            }
            let rank: u64 = blocks
                .iter()
                .map(|b| rank_mod_p(&mut b.rows.clone(), p) as u64)
                .sum();
            ranks.push(rank);
            if rank == 0 {
                break;
            }
        }
        RankProfile { ranks }
    }
}

/// `ranks[k] = dim im N^k` for a nilpotent `N`, ending at the first 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    ranks: Vec<u64>,
}

impl RankProfile {
    pub fn new(ranks: Vec<u64>) -> Result<Self> {
        let bad = |why: &str| {
            Err(JordanError::invalid(format!(
                "rank profile {ranks:?}: {why}"
            )))
        };
        match ranks.first() {
            None => return bad("empty"),
            Some(_) if ranks.last() != Some(&0) => return bad("must end at 0"),
            _ => {}
        }
        if ranks.windows(2).any(|w| w[0] <= w[1]) {
            return bad("must strictly decrease");
        }
        if ranks.windows(3).any(|w| w[0] - w[1] < w[1] - w[2]) {
            return bad("differences must weakly decrease");
        }
        Ok(RankProfile { ranks })
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }
}

/// Rank profile of the oracle operator, guarded by `ceiling` on `rs`.
pub fn rank_profile(r: u64, s: u64, p: Prime, ceiling: u64) -> Result<RankProfile> {
    let algebra = MonomialAlgebra::new(r, s, p)?;
    if algebra.dimension() > ceiling {
        return Err(JordanError::ResourceLimit {
            dimension: algebra.dimension(),
            ceiling,
        });
    }
    Ok(algebra.rank_profile())
}

/// The multiplicity of part `t` is `r_(t-1) - 2 r_t + r_(t+1)`.
pub fn partition_from_ranks(profile: &RankProfile) -> Result<Partition> {
    let ranks = profile.ranks();
    let at = |k: usize| ranks.get(k).copied().unwrap_or(0);
    let mut parts = Vec::new();
    for t in (1..ranks.len()).rev() {
        let mult = (at(t - 1) + at(t + 1))
            .checked_sub(2 * at(t))
            .ok_or_else(|| JordanError::invalid("rank profile is not convex"))?;
        parts.extend(std::iter::repeat_n(t as u64, mult as usize));
    }
    Partition::new(parts)
}

pub fn oracle_partition(r: u64, s: u64, p: Prime) -> Result<Partition> {
    oracle_partition_with_ceiling(r, s, p, DEFAULT_ORACLE_CEILING)
}

pub fn oracle_partition_with_ceiling(r: u64, s: u64, p: Prime, ceiling: u64) -> Result<Partition> {
    partition_from_ranks(&rank_profile(r, s, p, ceiling)?)
}
