//! Empirical sweep over every monomial `λ_L` passing the weight-sum filter.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::monomial::{monomial_c2_direct, monomial_c2_with};
use super::{LambdaData, VerifyError};
use crate::exactarith::{Integer, Prime};
use crate::parallel::Execution;
use crate::repring::ExponentSeq;

/// Default guard on the number of monomials a sweep may enumerate.
pub const DEFAULT_SWEEP_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepViolation {
    pub exponents: ExponentSeq,
    #[serde(with = "crate::decimal")]
    pub product_rule_c2: Integer,
    #[serde(with = "crate::decimal")]
    pub direct_c2: Integer,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub max_total_degree: u64,
    /// Qualifying monomials checked.
    pub monomials: u64,
    /// `(r, count)` pairs: monomials per length `r`, ascending.
    pub by_length: Vec<(usize, u64)>,
    /// Monomials whose product-rule `c₂` was also recomputed from the Laurent product.
    pub dual_path_checked: u64,
    pub violations: Vec<SweepViolation>,
    pub pass: bool,
}

/// All non-empty non-decreasing `L` with entries in `[1, p²−1]`,
/// `Σ ℓᵢ ≤ max_total_degree` and `Σ ℓᵢ ≡ 0 mod p`, in lexicographic order.
pub fn weight_condition_monomials(
    p: Prime,
    max_total_degree: u64,
    limit: u64,
) -> Result<Vec<ExponentSeq>, VerifyError> {
    let top = p.square() - 1;
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut visited = 0u64;
    extend(
        &mut current,
        1,
        max_total_degree,
        top,
        p.get(),
        &mut out,
        &mut visited,
        limit,
    )?;
    Ok(out
        .into_iter()
        .map(|v| ExponentSeq::from_sorted(v, p).expect("generated in range"))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    current: &mut Vec<u64>,
    min_entry: u64,
    budget: u64,
    top: u64,
    p: u64,
    out: &mut Vec<Vec<u64>>,
    visited: &mut u64,
    limit: u64,
) -> Result<(), VerifyError> {
    let hi = top.min(budget);
    for ell in min_entry..=hi {
        *visited += 1;
        if *visited > limit {
            return Err(VerifyError::SweepLimit { limit });
        }
        current.push(ell);
        if current.iter().sum::<u64>() % p == 0 {
            out.push(current.clone());
        }
        extend(current, ell, budget - ell, top, p, out, visited, limit)?;
        current.pop();
    }
    Ok(())
}

/// Checks `p | c₂(φ₁*(λ_L))` for every qualifying `L`, computing `c₂` both by
/// the product rule and from the Laurent product; any disagreement or
/// non-divisible value is a violation.
pub fn sweep_weight_condition_monomials(
    p: Prime,
    max_total_degree: u64,
) -> Result<SweepSummary, VerifyError> {
    sweep_with(
        p,
        max_total_degree,
        DEFAULT_SWEEP_LIMIT,
        Execution::default(),
    )
}

pub fn sweep_with(
    p: Prime,
    max_total_degree: u64,
    limit: u64,
    exec: Execution,
) -> Result<SweepSummary, VerifyError> {
    let monomials = weight_condition_monomials(p, max_total_degree, limit)?;
    let table = LambdaData::build(p, 1..p.square());
    sweep_monomials(p, max_total_degree, monomials, &table, exec)
}

pub(crate) fn sweep_monomials(
    p: Prime,
    max_total_degree: u64,
    monomials: Vec<ExponentSeq>,
    table: &LambdaData,
    exec: Execution,
) -> Result<SweepSummary, VerifyError> {
    let mut by_length = BTreeMap::new();
    for m in &monomials {
        *by_length.entry(m.len()).or_insert(0) += 1;
    }
    let count = monomials.len() as u64;
    let results = exec.map(monomials, |seq| check_one(&seq, p, table));
    let mut violations = Vec::new();
    for r in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    Ok(SweepSummary {
        max_total_degree,
        monomials: count,
        by_length: by_length.into_iter().collect(),
        dual_path_checked: count,
        pass: violations.is_empty(),
        violations,
    })
}

fn check_one(
    seq: &ExponentSeq,
    p: Prime,
    table: &LambdaData,
) -> Result<Option<SweepViolation>, VerifyError> {
    let direct = monomial_c2_direct(seq, p);
    let (rule, reason) = match monomial_c2_with(seq, p, table) {
        Ok(b) => (b.total_c2, None),
        Err(VerifyError::DivisibilityViolation { c2, .. }) => {
            (c2, Some("c2 not divisible by p".to_string()))
        }
        Err(e) => return Err(e),
    };
    let reason = match reason {
        Some(r) => Some(r),
        None if rule != direct => Some("product rule disagrees with direct computation".into()),
        None if !(&direct % p.get()).is_zero() => Some("c2 not divisible by p".into()),
        None => None,
    };
    Ok(reason.map(|reason| SweepViolation {
        exponents: seq.clone(),
        product_rule_c2: rule,
        direct_c2: direct,
        reason,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn seqs(list: &[&[u64]]) -> Vec<ExponentSeq> {
        list.iter()
            .map(|v| ExponentSeq::new(v.to_vec(), p3()).unwrap())
            .collect()
    }

    #[test]
    fn enumeration_bound_six() {
        let got = weight_condition_monomials(p3(), 6, 1_000).unwrap();
        for expected in seqs(&[
            &[3],
            &[6],
            &[1, 2],
            &[1, 1, 1],
            &[3, 3],
            &[1, 2, 3],
            &[2, 2, 2],
            &[1, 1, 1, 3],
        ]) {
            assert!(got.contains(&expected), "missing {expected}");
        }
        assert!(got.iter().all(|s| s.weight() % 3 == 0 && s.weight() <= 6));
        // Brute force: all multisets over [1,8] with weight ≤ 6, filtered.
        let mut brute = 0;
        for code in 0..9u32.pow(6) {
            let mut v: Vec<u64> = Vec::new();
            let mut c = code;
            for _ in 0..6 {
                let d = (c % 9) as u64;
                c /= 9;
                if d > 0 {
                    v.push(d);
                }
            }
            let sorted = v.windows(2).all(|w| w[0] <= w[1]);
            let canonical = {
                // count each multiset once: zeros (padding) must all sit at the high digits
                let digits: Vec<u32> = (0..6).map(|i| code / 9u32.pow(i) % 9).collect();
                let first_zero = digits.iter().position(|&d| d == 0).unwrap_or(6);
                digits[first_zero..].iter().all(|&d| d == 0)
            };
            let w: u64 = v.iter().sum();
            if canonical && sorted && !v.is_empty() && w <= 6 && w.is_multiple_of(3) {
                brute += 1;
            }
        }
        assert_eq!(got.len(), brute);
    }

    #[test]
    fn vacuous_when_bound_below_p() {
        let s = sweep_weight_condition_monomials(p3(), 2).unwrap();
        assert_eq!(s.monomials, 0);
        assert!(s.pass);
    }

    #[test]
    fn sweep_p3_passes_and_is_stable() {
        let a = sweep_with(p3(), 12, DEFAULT_SWEEP_LIMIT, Execution::Sequential).unwrap();
        let b = sweep_with(p3(), 12, DEFAULT_SWEEP_LIMIT, Execution::Parallel).unwrap();
        assert!(a.pass);
        assert_eq!(a, b);
        assert_eq!(a.monomials, a.by_length.iter().map(|(_, n)| n).sum::<u64>());
    }

    #[test]
    fn singleton_three_has_c2_minus_21() {
        let s = ExponentSeq::new(vec![3], p3()).unwrap();
        assert_eq!(monomial_c2_direct(&s, p3()), Integer::from(-21));
    }

    #[test]
    fn limit_guard() {
        assert_eq!(
            weight_condition_monomials(p3(), 12, 10),
            Err(VerifyError::SweepLimit { limit: 10 })
        );
    }
}
