//! Representation rings of `S¹`, `μ_p` and `SU(p²)`, and the restriction maps
//! `Δ₁*: R(SU(p²)) → R(μ_p)` and `φ₁*: R(SU(p²)) → R(S¹)`.
//!
//! `Δ₁` is the inclusion of the central `μ_p`; `φ₁` is the circle
//! `x ↦ diag(x, x⁻¹, 1, …, 1)`.

mod cyclotomic;
mod laurent;
pub mod oracle;
mod supoly;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactarith::{binom, Integer, Prime};

pub use cyclotomic::{in_trivial_span, CyclotomicElement};
pub use laurent::{laurent_mul, LaurentElement};
pub use oracle::{phi1_star_lambda_bruteforce, DEFAULT_ORACLE_CAP};
pub use supoly::{ExponentSeq, SUPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("lambda index {index} outside [1, {max}]")]
    LambdaIndexOutOfRange { index: u64, max: u64 },
    #[error("exponent sequence {0:?} is not non-decreasing")]
    NotNonDecreasing(Vec<u64>),
    #[error("elements over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("oracle would enumerate {subsets} subsets, above cap {cap}")]
    OracleCapExceeded { subsets: Integer, cap: u64 },
}

/// Closed form of `φ₁*(λ_ℓ)`:
/// `C(p²−2, ℓ−2) + C(p²−2, ℓ−1)(z + z⁻¹) + C(p²−2, ℓ)`.
pub fn phi1_star_lambda(ell: u64, p: Prime) -> Result<LaurentElement, RepError> {
    let top = p.square() - 1;
    if ell == 0 || ell > top {
        return Err(RepError::LambdaIndexOutOfRange {
            index: ell,
            max: top,
        });
    }
    let n = p.square() - 2;
    let l = ell as i64;
    let side = binom(n, l - 1);
    let middle = binom(n, l - 2) + binom(n, l);
    Ok(LaurentElement::from_terms([
        (1, side.clone()),
        (-1, side),
        (0, middle),
    ]))
}

/// `φ₁*(x) = Σ_L α_L ∏ᵢ φ₁*(λ_{ℓᵢ})`.
pub fn phi1_star(x: &SUPolynomial) -> LaurentElement {
    let mut cache = BTreeMap::new();
    let mut out = LaurentElement::zero();
    for (seq, coeff) in x.iter() {
        let image = phi1_star_monomial_cached(seq, x.prime(), &mut cache);
        out = &out + &image.scale(coeff);
    }
    out
}

/// `φ₁*(λ_L)` for a single monomial.
pub fn phi1_star_monomial(seq: &ExponentSeq, p: Prime) -> LaurentElement {
    phi1_star_monomial_cached(seq, p, &mut BTreeMap::new())
}

fn phi1_star_monomial_cached(
    seq: &ExponentSeq,
    p: Prime,
    cache: &mut BTreeMap<u64, LaurentElement>,
) -> LaurentElement {
    let mut acc = LaurentElement::one();
    for &ell in seq.entries() {
        let factor = cache
            .entry(ell)
            .or_insert_with(|| phi1_star_lambda(ell, p).expect("ExponentSeq entries are in range"));
        acc = &acc * factor;
    }
    acc
}

/// `Δ₁*(x) = Σ_L α_L · ∏ᵢ C(p², ℓᵢ) · ζ^{Σ ℓᵢ}`.
pub fn delta1_star(x: &SUPolynomial) -> CyclotomicElement {
    let p = x.prime();
    let mut out = CyclotomicElement::zero(p);
    for (seq, coeff) in x.iter() {
        let dim: Integer = seq
            .entries()
            .iter()
            .map(|&l| binom(p.square(), l as i64))
            .product();
        out.add_assign(&CyclotomicElement::zeta_power(p, seq.weight(), coeff * dim));
    }
    out
}

/// Necessary condition for `x ∈ Im π*`: `α_L(x) = 0` whenever `Σ ℓᵢ ≢ 0 mod p`.
pub fn weight_sum_condition(x: &SUPolynomial) -> bool {
    let p = x.prime().get();
    x.iter().all(|(seq, _)| seq.weight() % p == 0)
}
