use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::RepError;
use crate::exactarith::{Integer, Prime};

/// Non-decreasing exponent sequence `L = (ℓ₁ ≤ … ≤ ℓ_r)` indexing the monomial
/// `λ_L = λ_{ℓ₁}⋯λ_{ℓ_r}`. The empty sequence is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentSeq(Vec<u64>);

impl ExponentSeq {
    pub fn unit() -> Self {
        ExponentSeq(Vec::new())
    }

    /// Accepts any order and sorts; every entry must lie in `[1, p²−1]`.
    pub fn new(mut entries: Vec<u64>, p: Prime) -> Result<Self, RepError> {
        let top = p.square() - 1;
        if let Some(&bad) = entries.iter().find(|&&l| l == 0 || l > top) {
            return Err(RepError::LambdaIndexOutOfRange {
                index: bad,
                max: top,
            });
        }
        entries.sort_unstable();
        Ok(ExponentSeq(entries))
    }

    /// Like [`ExponentSeq::new`] but also rejects unsorted input.
    pub fn from_sorted(entries: Vec<u64>, p: Prime) -> Result<Self, RepError> {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(RepError::NotNonDecreasing(entries));
        }
        Self::new(entries, p)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ℓ₁ + … + ℓ_r`.
    pub fn weight(&self) -> u64 {
        self.0.iter().sum()
    }

    fn merge(&self, other: &ExponentSeq) -> ExponentSeq {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        ExponentSeq(v)
    }
}

impl fmt::Display for ExponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Element `x = Σ_L α_L(x)·λ_L` of `R(SU(p²)) = ℤ[λ₁, …, λ_{p²−1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SUPolynomial {
    prime: Prime,
    terms: BTreeMap<ExponentSeq, Integer>,
}

impl SUPolynomial {
    pub fn zero(p: Prime) -> Self {
        SUPolynomial {
            prime: p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::constant(p, Integer::one())
    }

    pub fn constant(p: Prime, c: Integer) -> Self {
        let mut out = Self::zero(p);
        out.add_term(ExponentSeq::unit(), c);
        out
    }

    /// The generator `λ_ℓ`.
    pub fn lambda(ell: u64, p: Prime) -> Result<Self, RepError> {
        Self::monomial(vec![ell], Integer::one(), p)
    }

    /// `c·λ_L`.
    pub fn monomial(entries: Vec<u64>, c: Integer, p: Prime) -> Result<Self, RepError> {
        let seq = ExponentSeq::new(entries, p)?;
        let mut out = Self::zero(p);
        out.add_term(seq, c);
        Ok(out)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    fn add_term(&mut self, seq: ExponentSeq, c: Integer) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(seq.clone()).or_insert_with(Integer::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&seq);
        }
    }

    /// `α_L(x)`.
    pub fn coefficient(&self, seq: &ExponentSeq) -> Integer {
        self.terms.get(seq).cloned().unwrap_or_else(Integer::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentSeq, &Integer)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn check_prime(&self, other: &SUPolynomial) -> Result<(), RepError> {
        if self.prime != other.prime {
            return Err(RepError::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SUPolynomial) -> Result<SUPolynomial, RepError> {
        self.check_prime(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SUPolynomial) -> Result<SUPolynomial, RepError> {
        self.add(&other.scale(&-Integer::one()))
    }

    pub fn scale(&self, c: &Integer) -> SUPolynomial {
        let mut out = Self::zero(self.prime);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &SUPolynomial) -> Result<SUPolynomial, RepError> {
        self.check_prime(other)?;
        let mut out = Self::zero(self.prime);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                out.add_term(sa.merge(sb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> SUPolynomial {
        let mut acc = Self::one(self.prime);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same prime");
        }
        acc
    }
}

impl fmt::Display for SUPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (seq, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if seq.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*")?;
                let names: Vec<String> = seq.entries().iter().map(|l| format!("L{l}")).collect();
                f.write_str(&names.join("*"))?;
            }
        }
        Ok(())
    }
}
