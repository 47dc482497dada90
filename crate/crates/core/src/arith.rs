//! Exact modular and p-adic arithmetic.
//!
//! Everything here works on `u64` with checked operations. Primes are capped
//! at `u32::MAX` so that a product of two residues always fits in a `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};

/// Largest prime accepted by [`Prime::new`].
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// A prime `p <= MAX_PRIME`, verified by deterministic trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(JordanError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = JordanError;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= bound`, in increasing order (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    let bound = bound.min(MAX_PRIME);
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(Prime(i as u64));
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> Result<Prime> {
    let mut c = n.max(2);
    while c <= MAX_PRIME {
        if is_prime(c) {
            return Ok(Prime(c));
        }
        c += 1;
    }
    Err(JordanError::Overflow("next prime"))
}

/// `p^m` together with its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: Prime,
    pub m: u32,
    pub q: u64,
}

/// Smallest power `p^m >= r`.
///
/// For `r >= 2` this satisfies `p^(m-1) < r <= p^m`; `r = 1` gives `m = 0`.
pub fn period_for_rank(p: Prime, r: u64) -> Result<PrimePower> {
    if r == 0 {
        return Err(JordanError::invalid("rank must be positive"));
    }
    let mut q = 1u64;
    let mut m = 0u32;
    while q < r {
        q = q.checked_mul(p.get()).ok_or(JordanError::Overflow("p^m"))?;
        m += 1;
    }
    Ok(PrimePower { p, m, q })
}

/// `v_p(n!)` by Legendre's formula.
pub fn legendre_valuation(n: u64, p: Prime) -> u64 {
    let p = p.get();
    let mut total = 0;
    let mut rest = n;
    while rest >= p {
        rest /= p;
        total += rest;
    }
    total
}

/// `v_p` of the falling factorial `n (n-1) ... (n-i+1)`.
pub fn falling_valuation(n: u64, i: u64, p: Prime) -> Result<u64> {
    if i > n {
        return Err(JordanError::invalid(format!(
            "falling factorial needs n >= i, got n={n}, i={i}"
        )));
    }
    Ok(legendre_valuation(n, p) - legendre_valuation(n - i, p))
}

/// `v_p(C(n, k))` via Kummer/Legendre; zero outside `0 <= k <= n`.
pub fn binomial_valuation(n: u64, k: u64, p: Prime) -> u64 {
    if k > n {
        return 0;
    }
    legendre_valuation(n, p) - legendre_valuation(k, p) - legendre_valuation(n - k, p)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime (Fermat).
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// `C(a, b) mod p` for `0 <= b <= a < p`.
fn small_binomial(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let mut num = 1;
    let mut den = 1;
    for t in 0..b {
        num = mul_mod(num, a - t, p);
        den = mul_mod(den, t + 1, p);
    }
    mul_mod(num, inv_mod(den, p), p)
}

/// `C(n, k) mod p` by Lucas' theorem. Returns 0 for `k < 0` or `k > n`.
pub fn binomial_mod_p(n: u64, k: i64, p: Prime) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let p = p.get();
    let (mut n, mut k) = (n, k as u64);
    let mut acc = 1 % p;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binomial(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc
}
