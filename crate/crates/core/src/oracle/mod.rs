//! Ground truth that does not go through the counting formulas: cyclotomic coset
//! pairings, polynomial arithmetic over GF(2^m), factorization of `x^n' - 1`, and
//! exhaustive search over generator polynomials.

mod cosets;
mod enumerate;
mod factor;
mod gf;
mod poly;

pub use cosets::{build_cosets, pair_count, CosetPairing, MAX_COSET_MODULUS};
pub use enumerate::{code_field, enumerate_self_dual, self_dual_generators, EnumerationLimits};
pub use factor::{distinct_degree, equal_degree, factor_xn_minus_1};
pub use gf::FieldRep;
pub use poly::GFPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("field degree {0} is not supported (1..=32)")]
    UnsupportedDegree(u32),
    #[error("{0:#b} is not an irreducible modulus")]
    ReducibleModulus(u64),
    #[error("{0} is not an element of the field")]
    NotAFieldElement(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("conjugation needs a field of even degree, got {0}")]
    NotSquareField(u32),
    #[error("equal-degree splitting did not separate all factors")]
    IncompleteFactorization,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}
