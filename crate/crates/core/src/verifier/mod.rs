//! The finite certificate for the Chern subgroup index at a fixed prime,
//! plus empirical sweeps and oracle cross-checks.
//!
//! Upper bound: every `x` in the image of `π*` has `p | c₂(φ₁*(x))`. This
//! follows from `p | C(p², ℓ)` (all `δ_{L,i}` with `r ≥ 2` vanish mod `p`),
//! the weight-sum filter, and `p | C(p²−2, pk−1)`. Lower bound: an explicit
//! virtual `y` reaches `c₂ = p`.

mod bezout;
mod certificates;
mod monomial;
mod oracle_check;
mod report;
mod sweep;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chern::{c1, c2, total_chern, ChernError};
use crate::exactarith::{ArithError, Integer, Prime};
use crate::repring::{phi1_star_lambda, LaurentElement, RepError};

pub use bezout::{construct_y, BezoutCertificate, CongruenceCheck, YChern, YConstruction};
pub use certificates::{
    central_invariance, certify_dim_divisibility, certify_pk_c2_divisibility, lambda_c2_table,
    CentralCheck, CentralInvariance, DimCertificate, DimCheck, LambdaC2Row, LambdaC2Table,
    PkCertificate, PkCheck,
};
pub use monomial::{monomial_c2, monomial_c2_direct, C2Breakdown};
pub use oracle_check::{run_oracle, OracleEntry, OracleStatus, OracleSummary};
pub use report::{
    verify_theorem, IndexReport, SweepOutcome, SweepSetting, Timings, VerificationReport,
    VerifyOptions, EXTERNAL_AXIOM, REPORT_VERSION,
};
pub use sweep::{
    sweep_weight_condition_monomials, sweep_with, weight_condition_monomials, SweepSummary,
    SweepViolation, DEFAULT_SWEEP_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("the theorem is stated for odd primes; p = 2 is outside its scope")]
    EvenPrime,
    #[error("theorem mode needs truncation degree >= 2, got {0}")]
    TruncationTooLow(usize),
    #[error("C(p^2-2, p-1) mod p^2 = {residue}, expected p")]
    CongruenceFailed { residue: Integer },
    #[error("gcd(C(p^2-2, p-1), p^(2p-1)) = {gcd}, expected p")]
    GcdMismatch { gcd: Integer },
    #[error("Bezout identity does not reproduce -p")]
    BezoutIdentityFailed,
    #[error("constructed element has c2 = {achieved}, expected p")]
    YChernMismatch { achieved: Integer },
    #[error("c2 of lambda_{exponents} is {c2}, not divisible by p")]
    DivisibilityViolation { exponents: String, c2: Integer },
    #[error("sweep exceeded the limit of {limit} enumeration steps")]
    SweepLimit { limit: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Chern(#[from] ChernError),
}

pub(crate) fn require_odd(p: Prime) -> Result<(), VerifyError> {
    if p.is_odd() {
        Ok(())
    } else {
        Err(VerifyError::EvenPrime)
    }
}

#[derive(Debug, Clone)]
struct LambdaEntry {
    dim: Integer,
    c1: Integer,
    c2: Integer,
}

/// Dimensions and Chern classes of `φ₁*(λ_ℓ)`, computed once from the
/// Laurent image and its total Chern class.
#[derive(Debug, Clone)]
pub struct LambdaData {
    entries: BTreeMap<u64, LambdaEntry>,
}

impl LambdaData {
    /// Out-of-range indices are ignored.
    pub fn build(p: Prime, ells: impl IntoIterator<Item = u64>) -> Self {
        Self::build_with_degree(p, ells, 2)
    }

    pub fn build_with_degree(p: Prime, ells: impl IntoIterator<Item = u64>, degree: usize) -> Self {
        let mut entries = BTreeMap::new();
        for ell in ells {
            if entries.contains_key(&ell) {
                continue;
            }
            let Ok(image) = phi1_star_lambda(ell, p) else {
                continue;
            };
            entries.insert(ell, Self::entry(&image, degree.max(2)));
        }
        LambdaData { entries }
    }

    fn entry(image: &LaurentElement, degree: usize) -> LambdaEntry {
        let chern = total_chern(image, degree);
        LambdaEntry {
            dim: image.dim(),
            c1: c1(&chern).expect("degree >= 2"),
            c2: c2(&chern).expect("degree >= 2"),
        }
    }

    fn get(&self, ell: u64) -> &LambdaEntry {
        self.entries
            .get(&ell)
            .unwrap_or_else(|| panic!("lambda_{ell} was not precomputed"))
    }

    pub fn dim(&self, ell: u64) -> &Integer {
        &self.get(ell).dim
    }

    pub fn c1(&self, ell: u64) -> &Integer {
        &self.get(ell).c1
    }

    pub fn c2(&self, ell: u64) -> &Integer {
        &self.get(ell).c2
    }
}
