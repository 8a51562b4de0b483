//! Characteristic classes over `H*(BS¹; ℤ) = ℤ[t]`, truncated at `t^N`.
//!
//! A virtual weight system `Σ m_a·zᵃ` splits into line bundles of first Chern
//! class `a·t`, so its total Chern class is `∏ (1 + a·t)^{m_a}` and its Chern
//! character is `Σ m_a·e^{a·t}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactarith::{binomial, Integer, Rational};
use crate::repring::LaurentElement;

/// Degree of truncation sufficient for `H⁴`.
pub const DEFAULT_TRUNCATION: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("series truncated at t^{have} cannot provide c_{needed}")]
    TruncationTooLow { needed: usize, have: usize },
    #[error("constant term is {0}, not 1; not a total Chern class")]
    NotTotalChernClass(Integer),
    #[error("first Chern class is {0}, expected 0")]
    NonzeroFirstChern(Integer),
    #[error("degree-2 character coefficient {0} is not an integer")]
    NonIntegralCharacter(Rational),
}

/// Polynomial in `t` modulo `t^{N+1}`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T> TruncatedSeries<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T:
        Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Neg<Output = T>,
{
    /// Series with the given coefficients; the truncation degree is `len − 1`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series has at least a constant term"
        );
        TruncatedSeries { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(T::one(), degree)
    }

    pub fn constant(c: T, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        out.coeffs[0] = c;
        out
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Re-truncates (or zero-extends) to degree `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, T::zero());
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    /// Product truncated at the smaller of the two degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse for series with constant term 1, else `None`.
    pub fn inverse(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.degree();
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = T::one();
        for k in 1..=n {
            // inv[k] = −Σ_{j=1..k} s[j]·inv[k−j]
            let mut acc = T::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &inv[k - j]);
            }
            inv[k] = -&acc;
        }
        Some(TruncatedSeries { coeffs: inv })
    }
}

impl<T: fmt::Display + Zero + One + PartialEq + Signed> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `(1 + a·t)^m` for `m ≥ 0`, truncated at `t^N`.
fn line_power(a: i64, m: &Integer, degree: usize) -> TruncatedSeries<Integer> {
    let a = Integer::from(a);
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut a_pow = Integer::one();
    for k in 0..=degree {
        coeffs.push(binomial(m, &Integer::from(k)).expect("m >= 0") * &a_pow);
        a_pow *= &a;
    }
    TruncatedSeries::new(coeffs)
}

/// Total Chern class `∏_a (1 + a·t)^{m_a}` of a virtual weight system, truncated at `t^N`.
/// Negative multiplicities go through the truncated inverse.
pub fn total_chern(v: &LaurentElement, degree: usize) -> TruncatedSeries<Integer> {
    let mut acc = TruncatedSeries::one(degree);
    for (a, m) in v.iter() {
        if a == 0 {
            continue;
        }
        let factor = line_power(a, &m.abs(), degree);
        let factor = if m.is_negative() {
            factor.inverse().expect("constant term is 1")
        } else {
            factor
        };
        acc = acc.mul(&factor);
    }
    acc
}

fn chern_coefficient(s: &TruncatedSeries<Integer>, i: usize) -> Result<Integer, ChernError> {
    if s.degree() < i {
        return Err(ChernError::TruncationTooLow {
            needed: i,
            have: s.degree(),
        });
    }
    if !s.coeffs()[0].is_one() {
        return Err(ChernError::NotTotalChernClass(s.coeffs()[0].clone()));
    }
    Ok(s.coeffs()[i].clone())
}

/// Coefficient of `t` in a total Chern class.
pub fn c1(s: &TruncatedSeries<Integer>) -> Result<Integer, ChernError> {
    chern_coefficient(s, 1)
}

/// Coefficient of `t²` in a total Chern class.
pub fn c2(s: &TruncatedSeries<Integer>) -> Result<Integer, ChernError> {
    chern_coefficient(s, 2)
}

/// Chern character `Σ_a m_a Σ_{k≤N} aᵏ tᵏ / k!`.
pub fn chern_character(v: &LaurentElement, degree: usize) -> TruncatedSeries<Rational> {
    let mut power_sums = vec![Integer::zero(); degree + 1];
    for (a, m) in v.iter() {
        let a = Integer::from(a);
        let mut a_pow = Integer::one();
        for s in power_sums.iter_mut() {
            *s += m * &a_pow;
            a_pow *= &a;
        }
    }
    let mut factorial = Integer::one();
    let coeffs = power_sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            if k > 0 {
                factorial *= Integer::from(k);
            }
            Rational::new(s, factorial.clone())
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `c₂` read off the character: with `c₁ = 0`, `ch = dim − c₂ + …`.
pub fn c2_from_character(v: &LaurentElement) -> Result<Integer, ChernError> {
    let ch = chern_character(v, 2);
    let first = &ch.coeffs()[1];
    if !first.is_zero() {
        return Err(ChernError::NonzeroFirstChern(first.to_integer()));
    }
    let second = &ch.coeffs()[2];
    if !second.is_integer() {
        return Err(ChernError::NonIntegralCharacter(second.clone()));
    }
    Ok(-second.to_integer())
}

/// `c₂(ξη) = dim η·c₂(ξ) + dim ξ·c₂(η)` for bundles with vanishing `c₁`.
pub fn c2_product_rule(
    dim_a: &Integer,
    c2_a: &Integer,
    dim_b: &Integer,
    c2_b: &Integer,
) -> Integer {
    dim_b * c2_a + dim_a * c2_b
}
