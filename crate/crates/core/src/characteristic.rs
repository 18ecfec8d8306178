//! The indicator functions `chi_l` and `lambda_l`.
//!
//! `chi_l(j) = 0` exactly when `j | 2^(ls) + 1` for some `s >= 1`, and
//! `lambda_l(j) = 0` exactly when such an `s` can be chosen odd. Both are
//! decided with one order computation: `-1` lies in the cyclic group generated
//! by `a = 2^l mod j` iff `m = ord_j(a)` is even and `a^(m/2) = -1`, and then the
//! solutions are precisely `s = m/2 (mod m)`.

use num_integer::Integer;

use crate::numtheory::{self, NumTheoryError, OrderProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiResult {
    /// 0 or 1.
    pub value: u8,
    /// An `s` with `j | 2^(ls) + 1`, present when `value` is 0.
    pub witness: Option<u64>,
}

impl ChiResult {
    fn one() -> Self {
        Self {
            value: 1,
            witness: None,
        }
    }

    fn zero(witness: u64) -> Self {
        Self {
            value: 0,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacteristicError {
    #[error("modulus {0} must be odd and positive")]
    EvenModulus(u64),
    #[error("l must be positive")]
    ZeroExponent,
    #[error("primes must be distinct, got {0} twice")]
    RepeatedPrime(u64),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

fn check_inputs(l: u64, j: u64) -> Result<(), CharacteristicError> {
    if l == 0 {
        return Err(CharacteristicError::ZeroExponent);
    }
    if j.is_multiple_of(2) {
        return Err(CharacteristicError::EvenModulus(j));
    }
    Ok(())
}

/// Half-order of `a` modulo `j` when `a^(m/2) = -1`, where `m` is the supplied order.
pub(crate) fn minus_one_exponent(a: u64, order: u64, j: u64) -> Option<u64> {
    if j == 1 {
        return Some(1);
    }
    if order % 2 == 1 {
        return None;
    }
    let half = order / 2;
    (numtheory::pow_mod(a, half, j) == j - 1).then_some(half)
}

/// `(chi_l(j), lambda_l(j))` given `a = 2^l mod j` and its order.
pub(crate) fn classify(a: u64, order: u64, j: u64) -> (ChiResult, ChiResult) {
    match minus_one_exponent(a, order, j) {
        None => (ChiResult::one(), ChiResult::one()),
        Some(s) if j == 1 || s % 2 == 1 => (ChiResult::zero(s), ChiResult::zero(s)),
        Some(s) => (ChiResult::zero(s), ChiResult::one()),
    }
}

fn order_of_power(l: u64, j: u64) -> Result<(u64, u64), CharacteristicError> {
    let a = numtheory::pow_mod(2, l, j);
    let order = numtheory::mult_order(a, j)?;
    Ok((a, order))
}

pub fn chi(l: u64, j: u64) -> Result<ChiResult, CharacteristicError> {
    check_inputs(l, j)?;
    if j == 1 {
        return Ok(ChiResult::zero(1));
    }
    let (a, order) = order_of_power(l, j)?;
    Ok(classify(a, order, j).0)
}

pub fn lambda(l: u64, j: u64) -> Result<ChiResult, CharacteristicError> {
    check_inputs(l, j)?;
    if j == 1 {
        return Ok(ChiResult::zero(1));
    }
    let (a, order) = order_of_power(l, j)?;
    Ok(classify(a, order, j).1)
}

fn prime_profile(l: u64, p: u64) -> Result<OrderProfile, CharacteristicError> {
    if l == 0 {
        return Err(CharacteristicError::ZeroExponent);
    }
    Ok(OrderProfile::new(p, 1, l)?)
}

/// `chi_l(p)` for an odd prime: 1 iff `ord_p(2^l)` is odd.
pub fn chi_prime(l: u64, p: u64) -> Result<u8, CharacteristicError> {
    let profile = prime_profile(l, p)?;
    Ok(u8::from(profile.ord_base % 2 == 1))
}

/// `lambda_l(p)` for an odd prime: 0 iff `2 || ord_p(2^l)`.
pub fn lambda_prime(l: u64, p: u64) -> Result<u8, CharacteristicError> {
    let profile = prime_profile(l, p)?;
    Ok(u8::from(profile.base_order_valuation() != 1))
}

/// `chi_l(pq)` for distinct odd primes.
///
/// 1 when either prime has `chi = 1`; otherwise 1 exactly when the 2-adic
/// valuations of `ord_p(2)` and `ord_q(2)` differ.
pub fn chi_two_primes(l: u64, p: u64, q: u64) -> Result<u8, CharacteristicError> {
    if p == q {
        return Err(CharacteristicError::RepeatedPrime(p));
    }
    let pp = prime_profile(l, p)?;
    let qp = prime_profile(l, q)?;
    let chi_p = pp.ord_base.is_odd();
    let chi_q = qp.ord_base.is_odd();
    Ok(u8::from(chi_p || chi_q || pp.gamma != qp.gamma))
}

/// `lambda_l(pq) = max(lambda_l(p), lambda_l(q))` for distinct odd primes.
pub fn lambda_two_primes(l: u64, p: u64, q: u64) -> Result<u8, CharacteristicError> {
    if p == q {
        return Err(CharacteristicError::RepeatedPrime(p));
    }
    Ok(lambda_prime(l, p)?.max(lambda_prime(l, q)?))
}
