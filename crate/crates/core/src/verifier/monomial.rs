use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LambdaData, VerifyError};
use crate::chern::{c2, total_chern};
use crate::exactarith::{Integer, Prime};
use crate::repring::{phi1_star_monomial, ExponentSeq};

/// Product-rule bookkeeping for `c₂(φ₁*(λ_L))`.
///
/// `delta_l = ∏ dim φ₁*(λ_{ℓᵢ})`, `delta_l_i[i] = delta_l / dim φ₁*(λ_{ℓᵢ})`
/// and `total_c2 = Σ delta_l_i[i] · factor_c2[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Breakdown {
    pub exponents: ExponentSeq,
    #[serde(with = "crate::decimal")]
    pub delta_l: Integer,
    #[serde(with = "crate::decimal::vec")]
    pub delta_l_i: Vec<Integer>,
    #[serde(with = "crate::decimal::vec")]
    pub factor_c2: Vec<Integer>,
    #[serde(with = "crate::decimal")]
    pub total_c2: Integer,
}

/// `c₂(φ₁*(λ_L))` through the product rule. For `r ≥ 2` the total must be
/// divisible by `p`; a violation is returned as an error.
pub fn monomial_c2(seq: &ExponentSeq, p: Prime) -> Result<C2Breakdown, VerifyError> {
    let table = LambdaData::build(p, seq.entries().iter().copied());
    monomial_c2_with(seq, p, &table)
}

pub(crate) fn monomial_c2_with(
    seq: &ExponentSeq,
    p: Prime,
    table: &LambdaData,
) -> Result<C2Breakdown, VerifyError> {
    // Re-validate: ExponentSeq may have been deserialized.
    let seq = ExponentSeq::from_sorted(seq.entries().to_vec(), p)?;
    let dims: Vec<&Integer> = seq.entries().iter().map(|&l| table.dim(l)).collect();
    let delta_l: Integer = dims.iter().copied().product();
    let delta_l_i: Vec<Integer> = dims.iter().map(|d| &delta_l / *d).collect();
    let factor_c2: Vec<Integer> = seq.entries().iter().map(|&l| table.c2(l).clone()).collect();
    let total_c2: Integer = delta_l_i.iter().zip(&factor_c2).map(|(d, c)| d * c).sum();
    debug_assert!(seq.len() != 1 || delta_l_i[0].is_one());
    if seq.len() >= 2 && !(&total_c2 % p.get()).is_zero() {
        return Err(VerifyError::DivisibilityViolation {
            exponents: seq.to_string(),
            c2: total_c2,
        });
    }
    Ok(C2Breakdown {
        exponents: seq,
        delta_l,
        delta_l_i,
        factor_c2,
        total_c2,
    })
}

/// `c₂(φ₁*(λ_L))` straight from the total Chern class of the Laurent product.
pub fn monomial_c2_direct(seq: &ExponentSeq, p: Prime) -> Integer {
    c2(&total_chern(&phi1_star_monomial(seq, p), 2)).expect("degree 2, constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::binom;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn seq(v: &[u64], p: Prime) -> ExponentSeq {
        ExponentSeq::new(v.to_vec(), p).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn cube_of_standard() {
        let b = monomial_c2(&seq(&[1, 1, 1], p3()), p3()).unwrap();
        assert_eq!(b.delta_l, Integer::from(729));
        assert_eq!(b.delta_l_i, ints(&[81, 81, 81]));
        assert_eq!(b.factor_c2, ints(&[-1, -1, -1]));
        assert_eq!(b.total_c2, Integer::from(-243));
        assert_eq!(
            monomial_c2_direct(&seq(&[1, 1, 1], p3()), p3()),
            Integer::from(-243)
        );
    }

    #[test]
    fn singletons_follow_closed_form() {
        for pv in [3, 5, 7] {
            let pr = Prime::new(pv).unwrap();
            for ell in 1..pr.square() {
                let b = monomial_c2(&seq(&[ell], pr), pr).unwrap();
                assert_eq!(b.total_c2, -binom(pr.square() - 2, ell as i64 - 1));
                assert_eq!(b.delta_l_i, ints(&[1]));
            }
        }
    }

    #[test]
    fn mixed_pair() {
        let s = seq(&[1, 2], p3());
        let b = monomial_c2(&s, p3()).unwrap();
        assert_eq!(b.delta_l_i, ints(&[36, 9]));
        assert_eq!(b.total_c2, Integer::from(-99));
        assert_eq!(monomial_c2_direct(&s, p3()), Integer::from(-99));
    }

    #[test]
    fn product_rule_agrees_with_direct_for_short_monomials() {
        let pr = Prime::new(5).unwrap();
        for a in 1..25 {
            for b in a..25 {
                let s = seq(&[a, b], pr);
                assert_eq!(
                    monomial_c2(&s, pr).unwrap().total_c2,
                    monomial_c2_direct(&s, pr)
                );
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        let bad: ExponentSeq = serde_json::from_str("[2, 1]").unwrap();
        assert!(matches!(monomial_c2(&bad, p3()), Err(VerifyError::Rep(_))));
        let out_of_range: ExponentSeq = serde_json::from_str("[9]").unwrap();
        assert!(monomial_c2(&out_of_range, p3()).is_err());
    }
}
