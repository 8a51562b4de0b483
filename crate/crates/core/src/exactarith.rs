//! Exact scalars and the number-theoretic primitives used throughout the crate.
//!
//! Every coefficient, dimension and binomial is an arbitrary-precision
//! [`Integer`]; Chern characters carry [`Rational`] coefficients. Machine
//! integers appear only for indices and for residues modulo a small prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element of ℤ. Zero has a single representation.
pub type Integer = BigInt;

/// Element of ℚ, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest prime accepted by [`Prime::new`]; keeps `p²` and weight sums inside `u64`/`i64`.
pub const MAX_PRIME: u64 = 65_521;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("binomial upper argument must be non-negative, got {0}")]
    NegativeUpper(Integer),
    #[error("binomial lower argument must be non-negative for Lucas reduction, got {0}")]
    NegativeLower(Integer),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("gcd(0, 0) has no Bezout certificate")]
    GcdOfZeros,
    #[error("binomial lower argument {0} is too large to iterate")]
    LowerTooLarge(Integer),
}

/// Trial-division primality test. Inputs are single-word.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated prime `p ≤ MAX_PRIME`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(ArithError::PrimeTooLarge(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p²`, the rank of the ambient unitary group.
    pub fn square(self) -> u64 {
        self.0 * self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    pub fn to_integer(self) -> Integer {
        Integer::from(self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = ArithError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
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

/// `C(n, k)` for `n ≥ 0`, with `C(n, k) = 0` when `k < 0` or `k > n`.
///
/// Running product `∏ (n - k + i) / i`; each partial product is itself a
/// binomial coefficient, so every division is exact.
pub fn binomial(n: &Integer, k: &Integer) -> Result<Integer, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeUpper(n.clone()));
    }
    if k.is_negative() || k > n {
        return Ok(Integer::zero());
    }
    let complement = n - k;
    let k = if &complement < k {
        complement
    } else {
        k.clone()
    };
    let steps = k
        .to_u64()
        .ok_or_else(|| ArithError::LowerTooLarge(k.clone()))?;
    let base = n - &k;
    let mut acc = Integer::one();
    for i in 1..=steps {
        acc *= &base + i;
        acc /= i;
    }
    Ok(acc)
}

/// Infallible [`binomial`] for machine-sized arguments.
pub fn binom(n: u64, k: i64) -> Integer {
    binomial(&Integer::from(n), &Integer::from(k)).expect("n is non-negative")
}

/// `C(n, k) mod p` as the product of digit-wise binomials of the base-`p`
/// expansions of `n` and `k` (Lucas).
pub fn binomial_mod_lucas(n: &Integer, k: &Integer, p: u64) -> Result<u64, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if n.is_negative() {
        return Err(ArithError::NegativeUpper(n.clone()));
    }
    if k.is_negative() {
        return Err(ArithError::NegativeLower(k.clone()));
    }
    let base = Integer::from(p);
    let (mut n, mut k) = (n.clone(), k.clone());
    let mut acc = 1u64;
    while !k.is_zero() {
        let (nq, nd) = n.div_rem(&base);
        let (kq, kd) = k.div_rem(&base);
        let nd = nd.to_u64().expect("digit < p");
        let kd = kd.to_u64().expect("digit < p");
        acc = mul_mod(acc, digit_binomial_mod(nd, kd, p), p);
        if acc == 0 {
            return Ok(0);
        }
        n = nq;
        k = kq;
    }
    Ok(acc % p)
}

/// `C(n, k) mod p` for single base-`p` digits `n, k < p`.
fn digit_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u64, 1u64);
    for j in 0..k {
        num = mul_mod(num, n - j, p);
        den = mul_mod(den, j + 1, p);
    }
    // den is a product of factors in [1, p), hence a unit mod p.
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(|a|, |b|) ≥ 0` and
/// `u·a + v·b = g`. The pair is the one produced by the standard remainder
/// sequence, so it is deterministic.
pub fn ext_gcd(a: &Integer, b: &Integer) -> Result<(Integer, Integer, Integer), ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Non-negative residue of `a` modulo a positive `m`.
pub fn modulo(a: &Integer, m: &Integer) -> Integer {
    a.mod_floor(m)
}
