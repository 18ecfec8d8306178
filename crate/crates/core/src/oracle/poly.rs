use std::fmt;

use super::gf::FieldRep;
use super::OracleError;

/// Polynomial over a [`FieldRep`], coefficients lowest degree first with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFPoly {
    coeffs: Vec<u64>,
    field: FieldRep,
}

impl GFPoly {
    pub fn new(field: FieldRep, mut coeffs: Vec<u64>) -> Result<Self, OracleError> {
        if let Some(&c) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(OracleError::NotAFieldElement(c));
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Self { coeffs, field })
    }

    fn from_raw(field: FieldRep, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs, field }
    }

    pub fn zero(field: FieldRep) -> Self {
        Self {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: FieldRep) -> Self {
        Self {
            coeffs: vec![1],
            field,
        }
    }

    pub fn x(field: FieldRep) -> Self {
        Self {
            coeffs: vec![0, 1],
            field,
        }
    }

    /// `x^n - 1`, which is `x^n + 1` in characteristic 2.
    pub fn x_pow_minus_one(field: FieldRep, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] ^= 1;
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> FieldRep {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Self::from_raw(self.field, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::from_raw(self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= f.mul(a, b);
            }
        }
        Self::from_raw(f, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), OracleError> {
        let dd = divisor.degree().ok_or(OracleError::DivisionByZero)?;
        let f = self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] ^= f.mul(c, b);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, OracleError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of an exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, OracleError> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(OracleError::InexactDivision);
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self, OracleError> {
        self.mul(other).rem(modulus)
    }

    /// `self^(2^k) mod modulus`.
    pub fn pow_two_power_mod(&self, k: u64, modulus: &Self) -> Result<Self, OracleError> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..k {
            acc = acc.mul_mod(&acc, modulus)?;
        }
        Ok(acc)
    }

    /// Applies `c -> c^(2^k)` to every coefficient.
    pub fn map_frobenius(&self, k: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.field.frobenius(c, k))
            .collect();
        Self::from_raw(self.field, coeffs)
    }

    /// `f*(x) = f(0)^(-1) x^deg(f) f(1/x)`.
    pub fn reciprocal(&self) -> Result<Self, OracleError> {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(OracleError::ZeroConstantTerm);
        }
        let mut reversed = self.coeffs.clone();
        reversed.reverse();
        Ok(Self::from_raw(self.field, reversed).scale(self.field.inv(c0)?))
    }

    /// `f†(x) = f(0)^(-s) x^deg(f) sum f_i^s x^(-i)` with `s` the square root of the
    /// field order. Needs an even-degree field.
    pub fn conj_reciprocal(&self) -> Result<Self, OracleError> {
        let degree = self.field.degree();
        if !degree.is_multiple_of(2) {
            return Err(OracleError::NotSquareField(degree));
        }
        let half = degree / 2;
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(OracleError::ZeroConstantTerm);
        }
        let mut reversed = self.map_frobenius(half).coeffs;
        reversed.reverse();
        let norm = self.field.inv(self.field.frobenius(c0, half))?;
        Ok(Self::from_raw(self.field, reversed).scale(norm))
    }
}

impl fmt::Debug for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GFPoly({self})")
    }
}

/// Prints terms highest degree first; non-unit coefficients appear as `[bits]`.
impl fmt::Display for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c == 1 {
                String::new()
            } else {
                format!("[{c:b}]")
            };
            match i {
                0 if c == 1 => write!(f, "1")?,
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> FieldRep {
        FieldRep::canonical(m).unwrap()
    }

    fn poly(field: FieldRep, coeffs: &[u64]) -> GFPoly {
        GFPoly::new(field, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn square_of_x_plus_one() {
        let f = gf(1);
        let p = poly(f, &[1, 1]);
        assert_eq!(p.mul(&p), poly(f, &[1, 0, 1]));
    }

    #[test]
    fn divide_x3_plus_1() {
        let f = gf(1);
        let (q, r) = poly(f, &[1, 0, 0, 1]).divrem(&poly(f, &[1, 1])).unwrap();
        assert_eq!(q, poly(f, &[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            poly(f, &[1]).divrem(&GFPoly::zero(f)),
            Err(OracleError::DivisionByZero)
        );
    }

    #[test]
    fn reciprocal_examples() {
        let f = gf(1);
        assert_eq!(poly(f, &[1, 1]).reciprocal().unwrap(), poly(f, &[1, 1]));
        assert_eq!(
            poly(f, &[1, 1, 0, 1]).reciprocal().unwrap(),
            poly(f, &[1, 0, 1, 1])
        );
        assert_eq!(
            poly(f, &[0, 1]).reciprocal(),
            Err(OracleError::ZeroConstantTerm)
        );
    }

    #[test]
    fn gf4_reciprocal_and_conjugate() {
        let f = gf(2);
        let omega = 0b10;
        let omega2 = 0b11;
        let p = poly(f, &[omega, 1]);
        assert_eq!(p.reciprocal().unwrap(), poly(f, &[omega2, 1]));
        // conjugation w -> w^2 and reversal cancel for a linear factor with root w
        assert_eq!(p.conj_reciprocal().unwrap(), poly(f, &[omega, 1]));
        assert_eq!(
            poly(f, &[omega2, 1]).conj_reciprocal().unwrap(),
            poly(f, &[omega2, 1])
        );
        assert_eq!(
            poly(gf(3), &[1, 1]).conj_reciprocal(),
            Err(OracleError::NotSquareField(3))
        );
    }

    #[test]
    fn gcd_is_monic() {
        let f = gf(2);
        let a = poly(f, &[1, 0, 0, 1]); // x^3 + 1
        let b = poly(f, &[0b10, 0b10]); // w(x + 1)
        assert_eq!(a.gcd(&b), poly(f, &[1, 1]));
    }

    #[test]
    fn display() {
        let f = gf(2);
        assert_eq!(poly(f, &[0b11, 1, 0, 1]).to_string(), "x^3 + x + [11]");
        assert_eq!(GFPoly::zero(f).to_string(), "0");
    }
}
