//! Exact verification that the Chern subgroup of `H⁴(BSU(p²)/μ_p; ℤ) ≅ ℤ`
//! is `p·ℤ` for a given odd prime `p`.
//!
//! Everything is detected on the circle `φ₁: S¹ → SU(p²)`,
//! `x ↦ diag(x, x⁻¹, 1, …, 1)`, where representation rings are Laurent
//! polynomials and `H*(BS¹; ℤ) = ℤ[t]`.
//!
//! - [`exactarith`]: big integers, binomials, Lucas reduction, extended Euclid.
//! - [`repring`]: `R(S¹)`, `R(μ_p)`, `R(SU(p²))` and the restriction maps.
//! - [`chern`]: truncated total Chern classes and Chern characters.
//! - [`verifier`]: divisibility certificates, the Bezout construction, sweeps and reports.

pub mod chern;
pub mod decimal;
pub mod exactarith;
pub mod parallel;
pub mod repring;
pub mod verifier;

pub use exactarith::{Integer, Prime, Rational};
pub use parallel::Execution;
