//! Brute-force torus oracle for the circle restriction of `λ_ℓ`.
//!
//! `λ_ℓ` restricted to the maximal torus is the ℓ-th elementary symmetric
//! function of `z₁ … z_{p²}`; pulling back along `x ↦ (x, x⁻¹, 1, …, 1)` makes
//! each ℓ-subset of coordinates contribute one copy of `z^{weight sum}`.
//! The oracle walks every subset explicitly and never touches a binomial
//! closed form, so it is independent of [`super::phi1_star_lambda`].

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{LaurentElement, RepError};
use crate::exactarith::{binom, Integer, Prime};
use crate::parallel::Execution;

/// Default resource guard on the number of enumerated subsets.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// Circle weights of the standard representation: `(1, −1, 0, …, 0)` of length `p²`.
pub fn standard_weights(p: Prime) -> Vec<i64> {
    let mut w = vec![0i64; p.square() as usize];
    w[0] = 1;
    w[1] = -1;
    w
}

/// Tally of weight sums over all `size`-element subsets of `weights`.
///
/// Work is split by the smallest chosen index; the merged tally does not
/// depend on the split or on the execution strategy.
pub fn tally_subset_sums(weights: &[i64], size: usize, exec: Execution) -> BTreeMap<i64, u64> {
    let n = weights.len();
    let mut total = BTreeMap::new();
    if size == 0 {
        total.insert(0, 1);
        return total;
    }
    if size > n {
        return total;
    }
    let firsts: Vec<usize> = (0..=n - size).collect();
    let partials = exec.map(firsts, |first| tally_with_first(weights, first, size));
    for part in partials {
        for (w, c) in part {
            *total.entry(w).or_insert(0) += c;
        }
    }
    total
}

/// Subsets whose smallest index is `first`.
fn tally_with_first(weights: &[i64], first: usize, size: usize) -> BTreeMap<i64, u64> {
    let n = weights.len();
    let rest = size - 1;
    let mut out = BTreeMap::new();
    if rest == 0 {
        out.insert(weights[first], 1);
        return out;
    }
    let lo = first + 1;
    let mut idx: Vec<usize> = (lo..lo + rest).collect();
    // prefix[j] = weights[first] + Σ_{t<j} weights[idx[t]]
    let mut prefix = vec![0i64; rest + 1];
    prefix[0] = weights[first];
    for t in 0..rest {
        prefix[t + 1] = prefix[t] + weights[idx[t]];
    }
    loop {
        *out.entry(prefix[rest]).or_insert(0) += 1;
        let mut j = rest;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < n - rest + j {
                break;
            }
        }
        idx[j] += 1;
        for t in j + 1..rest {
            idx[t] = idx[t - 1] + 1;
        }
        for t in j..rest {
            prefix[t + 1] = prefix[t] + weights[idx[t]];
        }
    }
}

/// Enumerates every ℓ-subset of the standard weights and tallies the sums.
///
/// Refuses with [`RepError::OracleCapExceeded`] when `C(p², ℓ) > cap`; callers
/// treat that as "skipped", not as a failure.
pub fn phi1_star_lambda_bruteforce(
    ell: u64,
    p: Prime,
    cap: u64,
) -> Result<LaurentElement, RepError> {
    phi1_star_lambda_bruteforce_with(ell, p, cap, Execution::default())
}

pub fn phi1_star_lambda_bruteforce_with(
    ell: u64,
    p: Prime,
    cap: u64,
    exec: Execution,
) -> Result<LaurentElement, RepError> {
    let top = p.square() - 1;
    if ell == 0 || ell > top {
        return Err(RepError::LambdaIndexOutOfRange {
            index: ell,
            max: top,
        });
    }
    let subsets = binom(p.square(), ell as i64);
    if subsets > Integer::from(cap) {
        return Err(RepError::OracleCapExceeded { subsets, cap });
    }
    let tally = tally_subset_sums(&standard_weights(p), ell as usize, exec);
    let counted: u64 = tally.values().sum();
    debug_assert_eq!(Integer::from(counted), subsets);
    Ok(LaurentElement::from_terms(
        tally.into_iter().map(|(w, c)| (w, Integer::from(c))),
    ))
}

/// Number of subsets the oracle would enumerate for `λ_ℓ`, if it fits in `u64`.
pub fn oracle_workload(ell: u64, p: Prime) -> Option<u64> {
    binom(p.square(), ell as i64).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn hand_countable_case() {
        // {1,−1}×1, {1,0}×7, {−1,0}×7, {0,0}×21
        let got = phi1_star_lambda_bruteforce(2, p(3), 1_000).unwrap();
        assert_eq!(got, LaurentElement::from_terms([(0, 22), (1, 7), (-1, 7)]));
    }

    #[test]
    fn singleton_subsets_are_the_weights() {
        let got = phi1_star_lambda_bruteforce(1, p(3), 1_000).unwrap();
        assert_eq!(got, LaurentElement::from_terms([(1, 1), (-1, 1), (0, 7)]));
    }

    #[test]
    fn cap_is_enforced() {
        let err = phi1_star_lambda_bruteforce(4, p(3), 125).unwrap_err();
        assert_eq!(
            err,
            RepError::OracleCapExceeded {
                subsets: Integer::from(126),
                cap: 125
            }
        );
        assert!(phi1_star_lambda_bruteforce(4, p(3), 126).is_ok());
    }

    #[test]
    fn tally_counts_every_subset() {
        let w = [3i64, -1, 4, 1, -5, 9, 2];
        for size in 0..=7 {
            let seq = tally_subset_sums(&w, size, Execution::Sequential);
            let par = tally_subset_sums(&w, size, Execution::Parallel);
            assert_eq!(seq, par);
            assert_eq!(
                Integer::from(seq.values().sum::<u64>()),
                binom(7, size as i64)
            );
        }
        assert!(tally_subset_sums(&w, 8, Execution::Sequential).is_empty());
    }

    #[test]
    fn tally_matches_bitmask_enumeration() {
        let w = [2i64, -3, 0, 5, 1, -1, 4, 0, 7];
        for size in 1..=w.len() {
            let mut expected = BTreeMap::new();
            for mask in 0u32..(1 << w.len()) {
                if mask.count_ones() as usize == size {
                    let s: i64 = (0..w.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| w[i])
                        .sum();
                    *expected.entry(s).or_insert(0u64) += 1;
                }
            }
            assert_eq!(tally_subset_sums(&w, size, Execution::default()), expected);
        }
    }
}
