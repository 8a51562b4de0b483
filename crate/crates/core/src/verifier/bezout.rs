//! Lower bound: a virtual element with `c₂ = p·t²`.
//!
//! `c₂(φ₁*(λ_p)) = −C(p²−2, p−1)` and `c₂(φ₁*(λ₁ᵖ)) = −p^{2p−1}`. Since
//! `C(p²−2, p−1) ≡ p mod p²`, their gcd is `p`, so some
//! `β₁·C(p²−2, p−1) + β₂·p^{2p−1} = −p`, and `y = β₁λ_p + β₂λ₁ᵖ` has `c₂ = p`.

use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::chern::{c1, c2, total_chern};
use crate::exactarith::{binom, ext_gcd, modulo, Integer, Prime};
use crate::repring::{phi1_star, SUPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    /// `C(p²−2, p−1)`.
    #[serde(with = "crate::decimal")]
    pub binomial: Integer,
    #[serde(with = "crate::decimal")]
    pub modulus: Integer,
    #[serde(with = "crate::decimal")]
    pub residue: Integer,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    #[serde(with = "crate::decimal")]
    pub binomial: Integer,
    /// `p^{2p−1}`.
    #[serde(with = "crate::decimal")]
    pub power: Integer,
    #[serde(with = "crate::decimal")]
    pub gcd: Integer,
    #[serde(with = "crate::decimal")]
    pub target: Integer,
    #[serde(with = "crate::decimal::option")]
    pub beta1: Option<Integer>,
    #[serde(with = "crate::decimal::option")]
    pub beta2: Option<Integer>,
    pub identity_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YChern {
    pub element: Option<String>,
    #[serde(with = "crate::decimal::option")]
    pub c1: Option<Integer>,
    #[serde(with = "crate::decimal::option")]
    pub c2: Option<Integer>,
    pub pass: bool,
}

/// Everything the lower-bound argument computes, pass or fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YEvaluation {
    pub congruence: CongruenceCheck,
    pub bezout: BezoutCertificate,
    pub y: YChern,
}

/// Successful outcome of [`construct_y`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YConstruction {
    pub beta1: Integer,
    pub beta2: Integer,
    pub c2: Integer,
}

pub(crate) fn evaluate_y(p: Prime) -> Result<YEvaluation, VerifyError> {
    let pi = p.to_integer();
    let binomial = binom(p.square() - 2, p.get() as i64 - 1);
    let modulus = &pi * &pi;
    let residue = modulo(&binomial, &modulus);
    let congruence = CongruenceCheck {
        pass: residue == pi,
        binomial: binomial.clone(),
        modulus,
        residue,
    };

    let power: Integer = Pow::pow(&pi, 2 * p.get() - 1);
    let target = -&pi;
    let (gcd, u, v) = ext_gcd(&binomial, &power)?;
    let (beta1, beta2) = if (&target % &gcd).is_zero() {
        let scale = &target / &gcd;
        (Some(u * &scale), Some(v * &scale))
    } else {
        (None, None)
    };
    let identity_holds = match (&beta1, &beta2) {
        (Some(b1), Some(b2)) => b1 * &binomial + b2 * &power == target,
        _ => false,
    };
    let bezout = BezoutCertificate {
        binomial,
        power,
        gcd,
        target,
        beta1: beta1.clone(),
        beta2: beta2.clone(),
        identity_holds,
    };

    let y = match (beta1, beta2) {
        (Some(b1), Some(b2)) => {
            let lambda_p = SUPolynomial::lambda(p.get(), p)?;
            let lambda_1_pow = SUPolynomial::lambda(1, p)?.pow(p.get() as u32);
            let element = lambda_p.scale(&b1).add(&lambda_1_pow.scale(&b2))?;
            let chern = total_chern(&phi1_star(&element), 2);
            let (first, second) = (c1(&chern)?, c2(&chern)?);
            YChern {
                element: Some(format!("{b1}*L{p} + {b2}*L1^{p}")),
                pass: first.is_zero() && second == pi,
                c1: Some(first),
                c2: Some(second),
            }
        }
        _ => YChern {
            element: None,
            c1: None,
            c2: None,
            pass: false,
        },
    };
    Ok(YEvaluation {
        congruence,
        bezout,
        y,
    })
}

/// Builds `y = β₁λ_p + β₂λ₁ᵖ` with `c₂(φ₁*(y)) = p` and checks it through the
/// virtual total Chern class. Fails loudly if any step of the argument breaks.
pub fn construct_y(p: Prime) -> Result<YConstruction, VerifyError> {
    let eval = evaluate_y(p)?;
    if !eval.congruence.pass {
        return Err(VerifyError::CongruenceFailed {
            residue: eval.congruence.residue,
        });
    }
    if eval.bezout.gcd != p.to_integer() {
        return Err(VerifyError::GcdMismatch {
            gcd: eval.bezout.gcd,
        });
    }
    if !eval.bezout.identity_holds {
        return Err(VerifyError::BezoutIdentityFailed);
    }
    match (eval.bezout.beta1, eval.bezout.beta2, eval.y.c2) {
        (Some(beta1), Some(beta2), Some(c2)) if eval.y.pass => {
            Ok(YConstruction { beta1, beta2, c2 })
        }
        (_, _, c2) => Err(VerifyError::YChernMismatch {
            achieved: c2.unwrap_or_default(),
        }),
    }
}
