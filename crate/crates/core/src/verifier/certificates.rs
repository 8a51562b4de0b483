//! Finite divisibility certificates and the per-generator `c₂` table.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{require_odd, LambdaData, VerifyError};
use crate::exactarith::{binom, binomial_mod_lucas, modulo, Integer, Prime};
use crate::repring::{delta1_star, in_trivial_span, weight_sum_condition, SUPolynomial};

/// `p | C(p², ℓ)` checked by exact reduction and by Lucas digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCheck {
    pub ell: u64,
    #[serde(with = "crate::decimal")]
    pub binomial: Integer,
    pub residue_exact: u64,
    pub residue_lucas: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCertificate {
    pub checks: Vec<DimCheck>,
    pub pass: bool,
}

/// `p | C(p²−2, pk−1)`, i.e. `p | c₂(φ₁*(λ_{pk}))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkCheck {
    pub k: u64,
    pub ell: u64,
    #[serde(with = "crate::decimal")]
    pub binomial: Integer,
    pub residue_exact: u64,
    pub residue_lucas: u64,
    #[serde(with = "crate::decimal")]
    pub c2: Integer,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkCertificate {
    pub checks: Vec<PkCheck>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaC2Row {
    pub ell: u64,
    #[serde(with = "crate::decimal")]
    pub dim: Integer,
    #[serde(with = "crate::decimal")]
    pub c1: Integer,
    #[serde(with = "crate::decimal")]
    pub c2: Integer,
    /// `−C(p²−2, ℓ−1)`.
    #[serde(with = "crate::decimal")]
    pub closed_form: Integer,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaC2Table {
    pub rows: Vec<LambdaC2Row>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCheck {
    pub element: String,
    /// Coefficient of `1` in `Δ₁*` of the element.
    #[serde(with = "crate::decimal")]
    pub trivial_coefficient: Integer,
    pub in_trivial_span: bool,
    pub weight_condition: bool,
}

/// `Δ₁*(λ_p)` and `Δ₁*(λ₁ᵖ)` lie in `ℤ{1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralInvariance {
    pub checks: Vec<CentralCheck>,
    pub pass: bool,
}

fn residues(n: u64, k: i64, p: Prime) -> Result<(Integer, u64, u64), VerifyError> {
    let b = binom(n, k);
    let exact = modulo(&b, &p.to_integer())
        .try_into()
        .expect("residue below p fits u64");
    let lucas = binomial_mod_lucas(&Integer::from(n), &Integer::from(k), p.get())?;
    Ok((b, exact, lucas))
}

/// `p | C(p², ℓ)` for every `ℓ ∈ [1, p²−1]`. Rejects `p = 2`.
pub fn certify_dim_divisibility(p: Prime) -> Result<DimCertificate, VerifyError> {
    require_odd(p)?;
    dim_divisibility(p)
}

pub(crate) fn dim_divisibility(p: Prime) -> Result<DimCertificate, VerifyError> {
    let checks = (1..p.square())
        .map(|ell| {
            let (binomial, residue_exact, residue_lucas) = residues(p.square(), ell as i64, p)?;
            Ok(DimCheck {
                ell,
                binomial,
                residue_exact,
                residue_lucas,
                pass: residue_exact == 0 && residue_lucas == 0,
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(DimCertificate { checks, pass })
}

/// `p | C(p²−2, pk−1)` for `k ∈ [1, p−1]`, both by exact reduction and Lucas,
/// and the computed `c₂(φ₁*(λ_{pk}))` equals `−C(p²−2, pk−1)`. Rejects `p = 2`.
pub fn certify_pk_c2_divisibility(p: Prime) -> Result<PkCertificate, VerifyError> {
    require_odd(p)?;
    let table = LambdaData::build(p, (1..p.get()).map(|k| p.get() * k));
    pk_divisibility(p, &table)
}

pub(crate) fn pk_divisibility(p: Prime, table: &LambdaData) -> Result<PkCertificate, VerifyError> {
    let checks = (1..p.get())
        .map(|k| {
            let ell = p.get() * k;
            let (binomial, residue_exact, residue_lucas) =
                residues(p.square() - 2, ell as i64 - 1, p)?;
            let c2 = table.c2(ell).clone();
            let pass = residue_exact == 0 && residue_lucas == 0 && c2 == -&binomial;
            Ok(PkCheck {
                k,
                ell,
                binomial,
                residue_exact,
                residue_lucas,
                c2,
                pass,
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(PkCertificate { checks, pass })
}

/// `c₁` and `c₂` of every `φ₁*(λ_ℓ)` via the total Chern class, against the closed form.
pub fn lambda_c2_table(p: Prime, table: &LambdaData) -> LambdaC2Table {
    let rows: Vec<LambdaC2Row> = (1..p.square())
        .map(|ell| {
            let closed_form = -binom(p.square() - 2, ell as i64 - 1);
            let c1 = table.c1(ell).clone();
            let c2 = table.c2(ell).clone();
            LambdaC2Row {
                ell,
                dim: table.dim(ell).clone(),
                matches: c1.is_zero() && c2 == closed_form,
                c1,
                c2,
                closed_form,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.matches);
    LambdaC2Table { rows, pass }
}

pub fn central_invariance(p: Prime) -> CentralInvariance {
    let lambda_p = SUPolynomial::lambda(p.get(), p).expect("p < p²");
    let lambda_1_pow = SUPolynomial::lambda(1, p)
        .expect("1 < p²")
        .pow(p.get() as u32);
    let checks: Vec<CentralCheck> = [
        (format!("L{p}"), lambda_p),
        (format!("L1^{p}"), lambda_1_pow),
    ]
    .into_iter()
    .map(|(element, x)| {
        let image = delta1_star(&x);
        CentralCheck {
            element,
            trivial_coefficient: image.coeffs()[0].clone(),
            in_trivial_span: in_trivial_span(&image),
            weight_condition: weight_sum_condition(&x),
        }
    })
    .collect();
    let pass = checks
        .iter()
        .all(|c| c.in_trivial_span && c.weight_condition);
    CentralInvariance { checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn dim_certificate_p3() {
        let cert = certify_dim_divisibility(p(3)).unwrap();
        let dims: Vec<Integer> = cert.checks.iter().map(|c| c.binomial.clone()).collect();
        let expected: Vec<Integer> = [9, 36, 84, 126, 126, 84, 36, 9].map(Integer::from).to_vec();
        assert_eq!(dims, expected);
        assert!(cert.pass);
        assert_eq!(cert.checks[0].binomial, Integer::from(9));
    }

    #[test]
    fn dim_certificate_p5() {
        let cert = certify_dim_divisibility(p(5)).unwrap();
        assert_eq!(cert.checks.len(), 24);
        assert!(cert.pass);
    }

    #[test]
    fn pk_certificate_p3_p5() {
        let cert = certify_pk_c2_divisibility(p(3)).unwrap();
        let b: Vec<Integer> = cert.checks.iter().map(|c| c.binomial.clone()).collect();
        assert_eq!(b, vec![Integer::from(21), Integer::from(21)]);
        assert!(cert.pass);

        let cert = certify_pk_c2_divisibility(p(5)).unwrap();
        let b: Vec<Integer> = cert.checks.iter().map(|c| c.binomial.clone()).collect();
        let expected: Vec<Integer> = [4i64, 9, 14, 19].iter().map(|&k| binom(23, k)).collect();
        assert_eq!(b, expected);
        assert!(cert.pass);
    }

    #[test]
    fn even_prime_is_rejected() {
        assert_eq!(certify_dim_divisibility(p(2)), Err(VerifyError::EvenPrime));
        assert_eq!(
            certify_pk_c2_divisibility(p(2)),
            Err(VerifyError::EvenPrime)
        );
    }

    #[test]
    fn lambda_table_p3() {
        let pr = p(3);
        let t = lambda_c2_table(pr, &LambdaData::build(pr, 1..9));
        let c2s: Vec<Integer> = t.rows.iter().map(|r| r.c2.clone()).collect();
        let expected: Vec<Integer> = [-1, -7, -21, -35, -35, -21, -7, -1]
            .map(Integer::from)
            .to_vec();
        assert_eq!(c2s, expected);
        assert!(t.pass);
    }

    #[test]
    fn central_checks_pass() {
        for v in [2, 3, 5, 7, 11] {
            assert!(central_invariance(p(v)).pass);
        }
        let r = central_invariance(p(3));
        assert_eq!(r.checks[0].trivial_coefficient, Integer::from(84));
        assert_eq!(r.checks[1].trivial_coefficient, Integer::from(729));
    }
}
