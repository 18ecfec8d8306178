//! Exact integer number theory over `u64`: factorization, Euler's totient,
//! multiplicative orders, 2-adic valuations and the prime-power order ladder.
//!
//! Moduli are kept below 2^64 and every modular product goes through `u128`.
//! The ladder values `ord_{p^i}(2^l)` can outgrow that range for large `i`, so
//! they are returned as [`BigUint`].

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// Trial division bound used by [`factorize`] before falling back to Pollard rho.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumTheoryError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{a} is not invertible modulo {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("{0} does not fit in 64 bits")]
    Overflow(String),
}

/// A positive integer stored as its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the empty
/// list is the factorization of 1. The reconstructed value may exceed `u64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self { pairs: Vec::new() }
    }

    /// Builds a factorization from caller-supplied pairs, checking canonical order
    /// and primality of every base.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self, NumTheoryError> {
        for window in pairs.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(NumTheoryError::InvalidFactorization(format!(
                    "primes must be strictly increasing ({} then {})",
                    window[0].0, window[1].0
                )));
            }
        }
        for &(p, e) in &pairs {
            if !is_prime(p) {
                return Err(NumTheoryError::InvalidFactorization(format!(
                    "{p} is not prime"
                )));
            }
            if e == 0 {
                return Err(NumTheoryError::InvalidFactorization(format!(
                    "exponent of {p} must be positive"
                )));
            }
        }
        Ok(Self { pairs })
    }

    /// Single prime power `p^r`.
    pub fn prime_power(p: u64, r: u32) -> Result<Self, NumTheoryError> {
        Self::from_pairs(vec![(p, r)])
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.pairs.first().is_none_or(|&(p, _)| p != 2)
    }

    pub fn distinct_primes(&self) -> usize {
        self.pairs.len()
    }

    pub fn value(&self) -> BigUint {
        self.pairs
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    /// The value as a `u64`, or `None` when it does not fit.
    pub fn value_u64(&self) -> Option<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            let pe = p.checked_pow(e)?;
            acc.checked_mul(pe)
        })
    }

    /// All divisors together with their factorizations, in no particular order.
    pub fn divisors(&self) -> Vec<(u64, Factorization)> {
        let mut out = vec![(1u64, Factorization::one())];
        for &(p, e) in &self.pairs {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for (d, f) in &out {
                let mut value = *d;
                next.push((value, f.clone()));
                for k in 1..=e {
                    value = value.saturating_mul(p);
                    let mut pairs = f.pairs.clone();
                    pairs.push((p, k));
                    next.push((value, Factorization { pairs }));
                }
            }
            out = next;
        }
        out
    }

    fn merge(&mut self, p: u64, e: u32) {
        match self.pairs.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.pairs[i].1 += e,
            Err(i) => self.pairs.insert(i, (p, e)),
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho. `n` is odd and composite.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = 2u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho always finds a factor of a composite")
}

fn split_into(n: u64, out: &mut Factorization) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.merge(n, 1);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Canonical factorization of `n`: trial division up to [`TRIAL_DIVISION_LIMIT`],
/// then Miller-Rabin and Pollard rho on whatever cofactor remains.
pub fn factorize(n: u64) -> Result<Factorization, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::Zero);
    }
    let mut out = Factorization::one();
    let mut rest = n;
    let twos = rest.trailing_zeros();
    if twos > 0 {
        out.pairs.push((2, twos));
        rest >>= twos;
    }
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT && d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            out.pairs.push((d, e));
        }
        d += 2;
    }
    split_into(rest, &mut out);
    Ok(out)
}

/// Euler's totient, `prod p^(e-1) (p-1)`.
pub fn euler_phi(f: &Factorization) -> BigUint {
    f.pairs.iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e - 1) * BigUint::from(p - 1)
    })
}

/// Totient when the factorization describes a value below 2^64.
pub fn euler_phi_u64(f: &Factorization) -> Option<u64> {
    f.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
        acc.checked_mul(p.checked_pow(e - 1)?)?.checked_mul(p - 1)
    })
}

/// Factorization of the unit group order `phi(m)`, given the factorization of `m`.
pub fn totient_factorization(m: &Factorization) -> Result<Factorization, NumTheoryError> {
    let mut out = Factorization::one();
    for &(p, e) in &m.pairs {
        if e > 1 {
            out.merge(p, e - 1);
        }
        for &(q, k) in factorize(p - 1)?.pairs() {
            out.merge(q, k);
        }
    }
    Ok(out)
}

/// Multiplicative order of `a` modulo `m`, with `ord_1(a) = 1`.
///
/// Starts from the group order `phi(m)` and strips prime factors while the
/// power stays at one.
pub fn mult_order(a: u64, m: u64) -> Result<u64, NumTheoryError> {
    if m == 0 {
        return Err(NumTheoryError::Zero);
    }
    mult_order_factored(a, m, &factorize(m)?)
}

/// [`mult_order`] with the factorization of `m` already known.
pub fn mult_order_factored(
    a: u64,
    m: u64,
    m_factors: &Factorization,
) -> Result<u64, NumTheoryError> {
    if m == 1 {
        return Ok(1);
    }
    let a = a % m;
    if a.gcd(&m) != 1 {
        return Err(NumTheoryError::NotCoprime { a, m });
    }
    let group = totient_factorization(m_factors)?;
    let mut order = group
        .value_u64()
        .ok_or_else(|| NumTheoryError::Overflow(format!("phi({m})")))?;
    for &(q, _) in group.pairs() {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Linear-search order, for validating [`mult_order`] on small moduli.
pub fn mult_order_naive(a: u64, m: u64) -> Result<u64, NumTheoryError> {
    if m == 0 {
        return Err(NumTheoryError::Zero);
    }
    if m == 1 {
        return Ok(1);
    }
    let a = a % m;
    if a.gcd(&m) != 1 {
        return Err(NumTheoryError::NotCoprime { a, m });
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Ok(k)
}

/// Largest `g` with `2^g | n`. `n` must be positive.
pub fn two_adic_valuation(n: u64) -> u32 {
    assert!(n > 0, "2-adic valuation of 0 is undefined");
    n.trailing_zeros()
}

/// Largest `k` with `p^k | n`, for `n > 0` and `p > 1`.
pub fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn require_odd_prime(p: u64) -> Result<(), NumTheoryError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(NumTheoryError::NotOddPrime(p));
    }
    Ok(())
}

/// Order data of 2 and `2^l` modulo powers of an odd prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderProfile {
    pub p: u64,
    pub r: u32,
    pub l: u64,
    /// `ord_p(2)`.
    pub ord_p_2: u64,
    /// `2^gamma || ord_p(2)`.
    pub gamma: u32,
    /// `2^v2_l || l`.
    pub v2_l: u32,
    /// Largest `alpha <= r` with `p` not dividing `ord_{p^alpha}(2^l)`.
    pub alpha: u32,
    /// `ord_p(2^l)`.
    pub ord_base: u64,
    /// Whether 2 generates the units modulo `p^2`, i.e. `ord_{p^2}(2) = p(p-1)`.
    pub primitive_mod_p_squared: bool,
}

impl OrderProfile {
    pub fn new(p: u64, r: u32, l: u64) -> Result<Self, NumTheoryError> {
        require_odd_prime(p)?;
        if r == 0 || l == 0 {
            return Err(NumTheoryError::Zero);
        }
        let ord_p_2 = mult_order(2, p)?;
        let gamma = two_adic_valuation(ord_p_2);
        let v2_l = two_adic_valuation(l);
        let ord_base = ord_p_2 / ord_p_2.gcd(&l);

        // Walk up the ladder: ord_{p^i}(2^l) is either ord_{p^(i-1)}(2^l) or p times it,
        // so it stays at ord_base exactly while 2^(l * ord_base) = 1 mod p^i.
        let p_big = BigUint::from(p);
        let base = BigUint::from(2u32);
        let exponent = BigUint::from(l) * BigUint::from(ord_base);
        let mut alpha = 1u32;
        let mut modulus = p_big.clone();
        while alpha < r {
            modulus *= &p_big;
            if base.modpow(&exponent, &modulus).is_one() {
                alpha += 1;
            } else {
                break;
            }
        }

        let p_squared = BigUint::from(p) * BigUint::from(p);
        let primitive_mod_p_squared =
            ord_p_2 == p - 1 && !base.modpow(&BigUint::from(p - 1), &p_squared).is_one();

        Ok(Self {
            p,
            r,
            l,
            ord_p_2,
            gamma,
            v2_l,
            alpha,
            ord_base,
            primitive_mod_p_squared,
        })
    }

    /// 2-adic valuation of `ord_p(2^l)`, i.e. `gamma - min(v2_l, gamma)`.
    pub fn base_order_valuation(&self) -> u32 {
        self.gamma - self.v2_l.min(self.gamma)
    }
}

/// `ord_{p^i}(2^l)`, or `ord_{p^i}(2^{2l})` when `doubled` is set, from the profile's
/// ladder: constant up to `alpha` and multiplied by `p` at each level above it.
///
/// `alpha` is capped at the profile's `r`, so levels `i > r` are only exact when
/// the true `alpha` is below `r`.
pub fn ord_prime_power(profile: &OrderProfile, i: u32, doubled: bool) -> BigUint {
    assert!(i >= 1, "prime-power level starts at 1");
    let mut order = BigUint::from(profile.ord_base);
    if i > profile.alpha {
        order *= BigUint::from(profile.p).pow(i - profile.alpha);
    }
    if doubled && profile.ord_base.is_multiple_of(2) {
        order >>= 1;
    }
    order
}

/// Same as [`ord_prime_power`] but as a `u64`, when it fits.
pub fn ord_prime_power_u64(
    profile: &OrderProfile,
    i: u32,
    doubled: bool,
) -> Result<u64, NumTheoryError> {
    ord_prime_power(profile, i, doubled)
        .to_u64()
        .ok_or_else(|| {
            NumTheoryError::Overflow(format!("ord_{}^{}(2^{})", profile.p, i, profile.l))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_one());
        assert_eq!(factorize(1331).unwrap().pairs(), &[(11, 3)]);
        assert_eq!(factorize(45).unwrap().pairs(), &[(3, 2), (5, 1)]);
        assert_eq!(factorize(0), Err(NumTheoryError::Zero));
    }

    #[test]
    fn factorize_large_semiprime() {
        // Both factors above the trial-division bound.
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.pairs(), &[(p, 1), (q, 1)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.value_u64(), Some(u64::MAX));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&Factorization::one()), BigUint::from(1u32));
        assert_eq!(euler_phi(&factorize(121).unwrap()), BigUint::from(110u32));
        assert_eq!(euler_phi(&factorize(21).unwrap()), BigUint::from(12u32));
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 11), Ok(10));
        assert_eq!(mult_order(16, 11), Ok(5));
        assert_eq!(mult_order(2, 1), Ok(1));
        assert_eq!(
            mult_order(6, 9),
            Err(NumTheoryError::NotCoprime { a: 6, m: 9 })
        );
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic_valuation(5), 0);
        assert_eq!(two_adic_valuation(12), 2);
        assert_eq!(two_adic_valuation(10), 1);
        assert_eq!(p_adic_valuation(605, 11), 2);
    }

    #[test]
    fn profile_examples() {
        let p = OrderProfile::new(11, 3, 4).unwrap();
        assert_eq!((p.gamma, p.ord_base, p.alpha), (1, 5, 1));
        assert!(p.primitive_mod_p_squared);
        let p = OrderProfile::new(7, 1, 1).unwrap();
        assert_eq!((p.gamma, p.ord_base, p.alpha), (0, 3, 1));
        let p = OrderProfile::new(3, 1, 1).unwrap();
        assert_eq!((p.gamma, p.ord_base, p.alpha), (1, 2, 1));
        assert_eq!(
            OrderProfile::new(9, 1, 1),
            Err(NumTheoryError::NotOddPrime(9))
        );
        assert_eq!(
            OrderProfile::new(2, 1, 1),
            Err(NumTheoryError::NotOddPrime(2))
        );
    }

    #[test]
    fn wieferich_prime_has_alpha_two() {
        // 2^1092 = 1 mod 1093^2.
        let p = OrderProfile::new(1093, 3, 1).unwrap();
        assert_eq!(p.alpha, 2);
        assert!(!p.primitive_mod_p_squared);
        // Capped at r.
        assert_eq!(OrderProfile::new(1093, 1, 1).unwrap().alpha, 1);
    }

    #[test]
    fn ladder_examples() {
        let prof = OrderProfile::new(11, 3, 4).unwrap();
        assert_eq!(ord_prime_power(&prof, 2, false), BigUint::from(55u32));
        assert_eq!(ord_prime_power(&prof, 3, false), BigUint::from(605u32));
        let prof = OrderProfile::new(5, 1, 1).unwrap();
        assert_eq!(ord_prime_power(&prof, 1, true), BigUint::from(2u32));
        let prof = OrderProfile::new(7, 1, 1).unwrap();
        assert_eq!(ord_prime_power(&prof, 1, true), BigUint::from(3u32));
    }

    #[test]
    fn from_pairs_rejects_bad_input() {
        assert!(Factorization::from_pairs(vec![(5, 1), (3, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(9, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(3, 0)]).is_err());
        let f = Factorization::from_pairs(vec![(3, 1), (7, 2)]).unwrap();
        assert_eq!(f.value_u64(), Some(147));
        assert_eq!(f.to_string(), "3 * 7^2");
    }

    #[test]
    fn divisors_of_45() {
        let mut ds: Vec<u64> = factorize(45)
            .unwrap()
            .divisors()
            .into_iter()
            .map(|(d, _)| d)
            .collect();
        ds.sort_unstable();
        assert_eq!(ds, vec![1, 3, 5, 9, 15, 45]);
    }
}
