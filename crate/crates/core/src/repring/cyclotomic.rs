use std::fmt;

use num_traits::{One, Zero};

use crate::exactarith::{Integer, Prime};

/// Element of `R(μ_p) = ℤ{1, ζ, …, ζ^{p−1}}`; index `i` holds the coefficient of `ζⁱ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    coeffs: Vec<Integer>,
}

impl CyclotomicElement {
    pub fn zero(p: Prime) -> Self {
        CyclotomicElement {
            coeffs: vec![Integer::zero(); p.get() as usize],
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::zeta_power(p, 0, Integer::one())
    }

    /// `c·ζᵉ`, with the exponent reduced mod `p`.
    pub fn zeta_power(p: Prime, exponent: u64, c: Integer) -> Self {
        let mut out = Self::zero(p);
        let idx = (exponent % p.get()) as usize;
        out.coeffs[idx] = c;
        out
    }

    /// Builds from explicit coefficients; the length fixes `p`.
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        assert!(!coeffs.is_empty(), "R(μ_p) element needs p coefficients");
        CyclotomicElement { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &CyclotomicElement) {
        assert_eq!(self.order(), other.order(), "mismatched cyclic orders");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Product in `ℤ[ζ]/(ζᵖ − 1)`.
    pub fn mul(&self, other: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.order(), other.order(), "mismatched cyclic orders");
        let n = self.order();
        let mut coeffs = vec![Integer::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[(i + j) % n] += a * b;
            }
        }
        CyclotomicElement { coeffs }
    }
}

/// True iff the element lies in `ℤ{1}`, i.e. all `ζ¹ … ζ^{p−1}` coefficients vanish.
pub fn in_trivial_span(c: &CyclotomicElement) -> bool {
    c.coeffs[1..].iter().all(Zero::is_zero)
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> CyclotomicElement {
        CyclotomicElement::from_coeffs(v.iter().map(|&x| Integer::from(x)).collect())
    }

    #[test]
    fn trivial_span() {
        assert!(in_trivial_span(&c(&[324, 0, 0])));
        assert!(!in_trivial_span(&c(&[0, 9, 0])));
    }

    #[test]
    fn products_wrap_around() {
        let p = Prime::new(3).unwrap();
        let zeta = CyclotomicElement::zeta_power(p, 1, Integer::one());
        let zeta2 = CyclotomicElement::zeta_power(p, 2, Integer::one());
        assert_eq!(zeta.mul(&zeta2), CyclotomicElement::one(p));
        assert_eq!(c(&[1, 2, 0]).mul(&c(&[0, 1, 3])), c(&[6, 1, 5]));
    }
}
