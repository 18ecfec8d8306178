//! GF(2^m) for m <= 32 with elements packed into the low bits of a `u64`.
//!
//! Bit `i` of an element is the coefficient of `x^i` in its polynomial basis
//! representation modulo the field's defining polynomial.

use super::OracleError;

/// Carry-less product of two polynomials over GF(2) of degree below 64.
#[inline]
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let wide = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= wide << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

#[inline]
fn degree_of(f: u128) -> i32 {
    127 - f.leading_zeros() as i32
}

/// Reduces a GF(2)[x] polynomial modulo `modulus`.
fn reduce(mut x: u128, modulus: u64) -> u64 {
    let m = degree_of(modulus as u128);
    let wide = modulus as u128;
    let mut d = degree_of(x);
    while d >= m {
        x ^= wide << (d - m);
        d = degree_of(x);
    }
    x as u64
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = reduce(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `m` is irreducible iff `gcd(f, x^(2^k) - x) = 1`
/// for every `1 <= k <= m/2`.
pub(crate) fn is_irreducible_gf2(f: u64) -> bool {
    if f < 2 {
        return false;
    }
    let m = degree_of(f as u128);
    let mut power = reduce(0b10, f);
    for _ in 1..=m / 2 {
        power = reduce(clmul(power, power), f);
        if gf2_gcd(f, power ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// A binary extension field GF(2^m), given by a monic irreducible modulus of
/// degree `m` over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldRep {
    degree: u32,
    modulus: u64,
}

impl FieldRep {
    pub const MAX_DEGREE: u32 = 32;

    /// The field defined by the lexicographically smallest monic irreducible
    /// polynomial of the given degree (coefficients read high to low as a binary
    /// number). Degree 1 gives `x` itself, i.e. plain GF(2).
    pub fn canonical(degree: u32) -> Result<Self, OracleError> {
        if degree == 0 || degree > Self::MAX_DEGREE {
            return Err(OracleError::UnsupportedDegree(degree));
        }
        let low = 1u64 << degree;
        let modulus = (low..low << 1)
            .find(|&f| is_irreducible_gf2(f))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self { degree, modulus })
    }

    /// A field with a caller-chosen modulus, checked for irreducibility.
    pub fn with_modulus(modulus: u64) -> Result<Self, OracleError> {
        if modulus < 2 {
            return Err(OracleError::ReducibleModulus(modulus));
        }
        let degree = degree_of(modulus as u128) as u32;
        if degree > Self::MAX_DEGREE {
            return Err(OracleError::UnsupportedDegree(degree));
        }
        if !is_irreducible_gf2(modulus) {
            return Err(OracleError::ReducibleModulus(modulus));
        }
        Ok(Self { degree, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        reduce(clmul(a, b), self.modulus)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64, OracleError> {
        if a == 0 {
            return Err(OracleError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, mut a: u64, k: u32) -> u64 {
        for _ in 0..k {
            a = self.mul(a, a);
        }
        a
    }
}
