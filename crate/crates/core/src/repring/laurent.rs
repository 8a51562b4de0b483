use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactarith::Integer;

/// Element of `R(S¹) = ℤ[z, z⁻¹]`, stored as a weight → multiplicity map.
///
/// A weight `a` with multiplicity `m` stands for `m·zᵃ`. Zero multiplicities
/// are never stored, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentElement {
    terms: BTreeMap<i64, Integer>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Integer::one())
    }

    /// `m·zʷ`.
    pub fn monomial(weight: i64, multiplicity: Integer) -> Self {
        let mut out = Self::zero();
        out.add_term(weight, multiplicity);
        out
    }

    /// Sums the given `(weight, multiplicity)` pairs; repeated weights accumulate.
    pub fn from_terms<I, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, M)>,
        M: Into<Integer>,
    {
        let mut out = Self::zero();
        for (w, m) in terms {
            out.add_term(w, m.into());
        }
        out
    }

    pub fn add_term(&mut self, weight: i64, multiplicity: Integer) {
        if multiplicity.is_zero() {
            return;
        }
        let slot = self.terms.entry(weight).or_insert_with(Integer::zero);
        *slot += multiplicity;
        if slot.is_zero() {
            self.terms.remove(&weight);
        }
    }

    pub fn multiplicity(&self, weight: i64) -> Integer {
        self.terms
            .get(&weight)
            .cloned()
            .unwrap_or_else(Integer::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Integer)> + '_ {
        self.terms.iter().map(|(w, m)| (*w, m))
    }

    /// Number of distinct weights.
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

    /// Virtual dimension: the total multiplicity.
    pub fn dim(&self) -> Integer {
        self.terms.values().sum()
    }

    /// True when every multiplicity is non-negative (an honest representation).
    pub fn is_genuine(&self) -> bool {
        self.terms.values().all(|m| !m.is_negative())
    }

    /// Image under `z ↦ z⁻¹`.
    pub fn conjugate(&self) -> Self {
        LaurentElement {
            terms: self.terms.iter().map(|(w, m)| (-w, m.clone())).collect(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.terms
            .iter()
            .all(|(w, m)| self.terms.get(&-w) == Some(m))
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentElement {
            terms: self.terms.iter().map(|(w, m)| (*w, m * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Ring product in `ℤ[z, z⁻¹]`: convolution of the weight maps.
pub fn laurent_mul(a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
    let mut out = LaurentElement::zero();
    for (wa, ma) in &a.terms {
        for (wb, mb) in &b.terms {
            out.add_term(wa + wb, ma * mb);
        }
    }
    out
}

impl Add for &LaurentElement {
    type Output = LaurentElement;

    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (w, m) in &rhs.terms {
            out.add_term(*w, m.clone());
        }
        out
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;

    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (w, m) in &rhs.terms {
            out.add_term(*w, -m);
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;

    fn neg(self) -> LaurentElement {
        LaurentElement {
            terms: self.terms.iter().map(|(w, m)| (*w, -m)).collect(),
        }
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;

    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        laurent_mul(self, rhs)
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}: {m}")?;
        }
        f.write_str("}")
    }
}
