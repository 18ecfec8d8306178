//! Exponents `t(n', l)` and `tau(n', l)` of the self-dual code counts and the
//! counts `(2^nu + 1)^t` themselves.
//!
//! Three routes are provided. The general divisor sum works for any odd `n'`
//! below 2^64. The prime-power route needs only `ord_p(2)`, whether 2 is a
//! primitive root mod `p^2`, and the ladder height `alpha`. The two-prime route
//! splits the divisor sum into the `p^i`, `q^j` and mixed `p^i q^j` parts. All
//! three are exact; rational intermediate values are kept as reduced fractions.
//!
//! The mixed part of the two-prime route carries the same factor 1/2 as the
//! divisor sum it comes from. [`MixedTermScaling::Unhalved`] drops it, which
//! reproduces the unscaled two-prime identity and is only useful for showing
//! that the verification harness catches the discrepancy.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characteristic::{self, CharacteristicError};
use crate::numtheory::{self, Factorization, NumTheoryError, OrderProfile};

/// Expanded values above this many bits are left as `base^exponent`.
pub const MAX_VALUE_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Euclidean,
    Hermitian,
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::Euclidean, Kind::Hermitian];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Euclidean => "euclidean",
            Kind::Hermitian => "hermitian",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(Kind::Euclidean),
            "hermitian" => Ok(Kind::Hermitian),
            other => Err(format!(
                "unknown kind '{other}' (expected euclidean or hermitian)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    GeneralSum,
    PrimePower,
    TwoPrime,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::GeneralSum => "general-sum",
            Method::PrimePower => "prime-power",
            Method::TwoPrime => "two-prime",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general-sum" => Ok(Method::GeneralSum),
            "prime-power" => Ok(Method::PrimePower),
            "two-prime" => Ok(Method::TwoPrime),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// Whether the mixed `p^i q^j` part of the two-prime route is halved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MixedTermScaling {
    #[default]
    Halved,
    Unhalved,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("nu must be at least 1")]
    ZeroNu,
    #[error("l must be positive")]
    ZeroExponent,
    #[error("odd part must be odd, got {0}")]
    EvenOddPart(String),
    #[error("odd part {0} is too large for the divisor sum")]
    TooLarge(String),
    #[error("{method} does not apply to odd part {odd_part}")]
    MethodNotApplicable { method: Method, odd_part: String },
    #[error("hypotheses of the closed form do not hold for p={p}, l={l}: {reason}")]
    HypothesisViolated {
        p: u64,
        l: u64,
        reason: &'static str,
    },
    #[error("internal arithmetic error: {0}")]
    NonInteger(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error(transparent)]
    Characteristic(#[from] CharacteristicError),
}

/// Code length `n = 2^nu * n'` with `nu >= 1` and `n'` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSpec {
    nu: u32,
    odd_part: Factorization,
}

impl LengthSpec {
    pub fn new(nu: u32, odd_part: Factorization) -> Result<Self, CountError> {
        if nu == 0 {
            return Err(CountError::ZeroNu);
        }
        if !odd_part.is_odd() {
            return Err(CountError::EvenOddPart(odd_part.to_string()));
        }
        Ok(Self { nu, odd_part })
    }

    /// Convenience constructor factoring a `u64` odd part.
    pub fn from_odd(nu: u32, odd: u64) -> Result<Self, CountError> {
        Self::new(nu, numtheory::factorize(odd)?)
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn odd_part(&self) -> &Factorization {
        &self.odd_part
    }

    /// Total length, when it fits in a `u64`.
    pub fn length(&self) -> Option<u64> {
        self.odd_part
            .value_u64()?
            .checked_mul(1u64.checked_shl(self.nu)?)
    }

    /// `2^nu + 1`.
    pub fn base(&self) -> BigUint {
        (BigUint::one() << self.nu) + 1u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub exponent: BigUint,
    pub base: BigUint,
    /// `base^exponent`, or `None` when it would exceed [`MAX_VALUE_BITS`].
    pub value: Option<BigUint>,
    pub kind: Kind,
    pub method: Method,
}

impl CountResult {
    fn new(exponent: BigUint, base: BigUint, kind: Kind, method: Method) -> Self {
        let bits = exponent.clone() * BigUint::from(base.bits());
        let value = if bits <= BigUint::from(MAX_VALUE_BITS) {
            // bits bound keeps the exponent well inside u32
            let e = u32::try_from(&exponent).expect("exponent bounded by MAX_VALUE_BITS");
            Some(base.pow(e))
        } else {
            None
        };
        Self {
            exponent,
            base,
            value,
            kind,
            method,
        }
    }
}

fn half_to_integer(sum: BigRational, what: impl FnOnce() -> String) -> Result<BigUint, CountError> {
    let half = sum / BigInt::from(2);
    to_natural(half, what)
}

fn to_natural(x: BigRational, what: impl FnOnce() -> String) -> Result<BigUint, CountError> {
    if !x.is_integer() {
        return Err(CountError::NonInteger(format!(
            "{} = {} is not an integer",
            what(),
            x
        )));
    }
    x.to_integer()
        .to_biguint()
        .ok_or_else(|| CountError::NonInteger(format!("{} is negative", what())))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn check_odd(n: &Factorization) -> Result<(), CountError> {
    if !n.is_odd() {
        return Err(CountError::EvenOddPart(n.to_string()));
    }
    Ok(())
}

/// Shared divisor sum: `1/2 * sum_{d | n'} ind(d) phi(d) / ord_d(g)` where
/// `g = 2^l` with `ind = chi_l` (Euclidean) or `g = 2^(2l)` with `ind = lambda_l`
/// (Hermitian).
fn divisor_sum(n: &Factorization, l: u64, kind: Kind) -> Result<BigUint, CountError> {
    if l == 0 {
        return Err(CountError::ZeroExponent);
    }
    check_odd(n)?;
    if n.value_u64().is_none() {
        return Err(CountError::TooLarge(n.to_string()));
    }
    let mut sum = BigRational::zero();
    for (d, fd) in n.divisors() {
        let a = numtheory::pow_mod(2, l, d);
        let order = numtheory::mult_order_factored(a, d, &fd)?;
        let (chi, lambda) = characteristic::classify(a, order, d);
        let (indicator, denominator) = match kind {
            Kind::Euclidean => (chi.value, order),
            Kind::Hermitian => {
                let a2 = numtheory::mul_mod(a, a, d);
                (lambda.value, numtheory::mult_order_factored(a2, d, &fd)?)
            }
        };
        if indicator == 0 {
            continue;
        }
        let phi = numtheory::euler_phi(&fd);
        sum += ratio(phi, BigUint::from(denominator));
    }
    half_to_integer(sum, || format!("exponent for n'={n}, l={l}, {kind}"))
}

/// `t(n', l)` by the divisor sum over all `d | n'`.
pub fn t_general(n_prime: &Factorization, l: u64) -> Result<BigUint, CountError> {
    divisor_sum(n_prime, l, Kind::Euclidean)
}

/// `tau(n', l)` by the divisor sum over all `d | n'`.
pub fn tau_general(n_prime: &Factorization, l: u64) -> Result<BigUint, CountError> {
    divisor_sum(n_prime, l, Kind::Hermitian)
}

/// `sum_{i=1}^{r} gcd(p^(i-1) (p-1), m)` in closed form.
///
/// With `p^k || m` and `m = p^k m'`, the i-th term is `p^min(i-1,k) * gcd(p-1, m')`,
/// so the terms stop growing after `i = k + 1`.
fn gcd_ladder_sum(p: u64, r: u32, m: u64) -> BigUint {
    let k = numtheory::p_adic_valuation(m, p);
    let m_rest = m / p.pow(k);
    let unit = BigUint::from((p - 1).gcd(&m_rest));
    let p_big = BigUint::from(p);
    let growing = r.min(k + 1);
    // sum_{i=0}^{growing-1} p^i
    let geometric = (p_big.pow(growing) - 1u32) / (p - 1);
    let flat = if r > k + 1 {
        BigUint::from(r - k - 1) * p_big.pow(k)
    } else {
        BigUint::zero()
    };
    unit * (geometric + flat)
}

/// `p^alpha - 1 + (p - 1)(r - alpha) p^(alpha - 1)`.
fn ladder_bracket(p: u64, r: u32, alpha: u32) -> BigUint {
    let p_big = BigUint::from(p);
    p_big.pow(alpha) - 1u32 + BigUint::from(p - 1) * BigUint::from(r - alpha) * p_big.pow(alpha - 1)
}

fn double_l(l: u64) -> Result<u64, CountError> {
    l.checked_mul(2)
        .ok_or_else(|| CountError::NumTheory(NumTheoryError::Overflow(format!("2 * {l}"))))
}

/// `t(p^r, l)` without summing over divisors.
///
/// Zero unless `2^gamma | l`. When 2 is a primitive root mod `p^2` the sum of
/// gcds applies; otherwise the `alpha` closed form.
pub fn t_prime_power(p: u64, r: u32, l: u64) -> Result<BigUint, CountError> {
    let profile = OrderProfile::new(p, r, l)?;
    if profile.v2_l < profile.gamma {
        return Ok(BigUint::zero());
    }
    if profile.primitive_mod_p_squared {
        let sum = BigRational::from(BigInt::from(gcd_ladder_sum(p, r, l)));
        return half_to_integer(sum, || format!("t({p}^{r}, {l}) primitive-root form"));
    }
    let bracket = ladder_bracket(p, r, profile.alpha);
    let value = ratio(bracket, BigUint::from(2 * profile.ord_base));
    to_natural(value, || format!("t({p}^{r}, {l}) closed form"))
}

/// `tau(p^r, l)` without summing over divisors.
///
/// Dispatches on `v2(l)` against `gamma`: at or above `gamma` the coefficient is
/// `1 / (2 ord_p(2^l))`, exactly `gamma - 1` gives zero, and further below the
/// coefficient doubles to `1 / ord_p(2^l)`.
pub fn tau_prime_power(p: u64, r: u32, l: u64) -> Result<BigUint, CountError> {
    let profile = OrderProfile::new(p, r, l)?;
    let v = profile.v2_l;
    let gamma = profile.gamma;
    if gamma >= 1 && v == gamma - 1 {
        return Ok(BigUint::zero());
    }
    if profile.primitive_mod_p_squared {
        let sum = BigRational::from(BigInt::from(gcd_ladder_sum(p, r, double_l(l)?)));
        return half_to_integer(sum, || format!("tau({p}^{r}, {l}) primitive-root form"));
    }
    let bracket = ladder_bracket(p, r, profile.alpha);
    let denominator = if v >= gamma {
        2 * profile.ord_base
    } else {
        profile.ord_base
    };
    to_natural(ratio(bracket, BigUint::from(denominator)), || {
        format!("tau({p}^{r}, {l}) closed form")
    })
}

/// `(r/2) gcd(p - 1, l)`, valid when `p` does not divide `l`, `ord_p(2^l)` is odd
/// and 2 is a primitive root mod `p^2`.
pub fn t_corollary_check(p: u64, r: u32, l: u64) -> Result<BigUint, CountError> {
    let profile = OrderProfile::new(p, r, l)?;
    if l.is_multiple_of(p) {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "p divides l",
        });
    }
    if profile.ord_base % 2 == 0 {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "ord_p(2^l) is even",
        });
    }
    if !profile.primitive_mod_p_squared {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "2 is not a primitive root mod p^2",
        });
    }
    let value = ratio(
        BigUint::from(r) * BigUint::from((p - 1).gcd(&l)),
        BigUint::from(2u32),
    );
    to_natural(value, || {
        format!("(r/2) gcd(p-1, l) for p={p}, r={r}, l={l}")
    })
}

/// `r gcd((p - 1)/2, l)`, valid when `p` does not divide `l`, 2 is a primitive
/// root mod `p^2`, and `ord_p(2^l)` is odd or divisible by 4.
pub fn tau_corollary_check(p: u64, r: u32, l: u64) -> Result<BigUint, CountError> {
    let profile = OrderProfile::new(p, r, l)?;
    if l.is_multiple_of(p) {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "p divides l",
        });
    }
    if profile.base_order_valuation() == 1 {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "2 exactly divides ord_p(2^l)",
        });
    }
    if !profile.primitive_mod_p_squared {
        return Err(CountError::HypothesisViolated {
            p,
            l,
            reason: "2 is not a primitive root mod p^2",
        });
    }
    Ok(BigUint::from(r) * BigUint::from(((p - 1) / 2).gcd(&l)))
}

/// Two-prime exponent for `n' = p^r q^s`, Euclidean or Hermitian, with the
/// mixed term scaled as requested.
pub fn two_prime_exponent(
    p: u64,
    q: u64,
    r: u32,
    s: u32,
    l: u64,
    kind: Kind,
    scaling: MixedTermScaling,
) -> Result<BigUint, CountError> {
    if p == q {
        return Err(CharacteristicError::RepeatedPrime(p).into());
    }
    let pp = OrderProfile::new(p, r, l)?;
    let qp = OrderProfile::new(q, s, l)?;
    let doubled = kind == Kind::Hermitian;

    let (ind_p, ind_q, ind_pq) = match kind {
        Kind::Euclidean => {
            let chi_p = pp.ord_base % 2 == 1;
            let chi_q = qp.ord_base % 2 == 1;
            (chi_p, chi_q, chi_p || chi_q || pp.gamma != qp.gamma)
        }
        Kind::Hermitian => {
            let lam_p = pp.base_order_valuation() != 1;
            let lam_q = qp.base_order_valuation() != 1;
            (lam_p, lam_q, lam_p || lam_q)
        }
    };
    let single = |prime: u64, exp: u32| match kind {
        Kind::Euclidean => t_prime_power(prime, exp, l),
        Kind::Hermitian => tau_prime_power(prime, exp, l),
    };

    let mut total = BigUint::zero();
    if ind_p {
        total += single(p, r)?;
    }
    if ind_q {
        total += single(q, s)?;
    }
    if ind_pq {
        let p_big = BigUint::from(p);
        let q_big = BigUint::from(q);
        let mut mixed = BigRational::zero();
        for i in 1..=r {
            let phi_p = p_big.pow(i - 1) * BigUint::from(p - 1);
            let ord_p = numtheory::ord_prime_power(&pp, i, doubled);
            for j in 1..=s {
                let phi_q = q_big.pow(j - 1) * BigUint::from(q - 1);
                let ord_q = numtheory::ord_prime_power(&qp, j, doubled);
                mixed += ratio(&phi_p * phi_q, ord_p.lcm(&ord_q));
            }
        }
        let what = || format!("mixed term for {p}^{r} * {q}^{s}, l={l}, {kind}");
        total += match scaling {
            MixedTermScaling::Halved => half_to_integer(mixed, what)?,
            MixedTermScaling::Unhalved => to_natural(mixed, what)?,
        };
    }
    Ok(total)
}

/// `t(p^r q^s, l)` by the two-prime decomposition.
pub fn t_two_primes(p: u64, q: u64, r: u32, s: u32, l: u64) -> Result<BigUint, CountError> {
    two_prime_exponent(p, q, r, s, l, Kind::Euclidean, MixedTermScaling::Halved)
}

/// `tau(p^r q^s, l)` by the two-prime decomposition.
pub fn tau_two_primes(p: u64, q: u64, r: u32, s: u32, l: u64) -> Result<BigUint, CountError> {
    two_prime_exponent(p, q, r, s, l, Kind::Hermitian, MixedTermScaling::Halved)
}

/// The cheapest route that applies to an odd part with this many distinct primes.
pub fn preferred_method(odd_part: &Factorization) -> Method {
    match odd_part.distinct_primes() {
        1 => Method::PrimePower,
        2 => Method::TwoPrime,
        _ => Method::GeneralSum,
    }
}

/// The exponent `t` or `tau` for `odd_part` along a specific route.
pub fn exponent_with(
    odd_part: &Factorization,
    l: u64,
    kind: Kind,
    method: Method,
) -> Result<BigUint, CountError> {
    if l == 0 {
        return Err(CountError::ZeroExponent);
    }
    check_odd(odd_part)?;
    let not_applicable = || CountError::MethodNotApplicable {
        method,
        odd_part: odd_part.to_string(),
    };
    match (method, odd_part.pairs()) {
        (Method::GeneralSum, _) => divisor_sum(odd_part, l, kind),
        (Method::PrimePower, &[(p, r)]) => match kind {
            Kind::Euclidean => t_prime_power(p, r, l),
            Kind::Hermitian => tau_prime_power(p, r, l),
        },
        (Method::TwoPrime, &[(p, r), (q, s)]) => {
            two_prime_exponent(p, q, r, s, l, kind, MixedTermScaling::Halved)
        }
        _ => Err(not_applicable()),
    }
}

/// Number of Euclidean self-dual cyclic codes of length `2^nu n'` over GF(2^l), or
/// Hermitian ones over GF(2^(2l)), using the cheapest applicable route.
pub fn count_self_dual(spec: &LengthSpec, l: u64, kind: Kind) -> Result<CountResult, CountError> {
    count_self_dual_with(spec, l, kind, preferred_method(spec.odd_part()))
}

/// [`count_self_dual`] along a forced route.
pub fn count_self_dual_with(
    spec: &LengthSpec,
    l: u64,
    kind: Kind,
    method: Method,
) -> Result<CountResult, CountError> {
    let exponent = exponent_with(spec.odd_part(), l, kind, method)?;
    Ok(CountResult::new(exponent, spec.base(), kind, method))
}

/// Self-dual cyclic codes of length `n` exist over a field of characteristic 2
/// exactly when `n` is even. `field_exponent` names the field and does not change
/// the answer.
pub fn exists_self_dual(n: u64, field_exponent: u64, kind: Kind) -> bool {
    let _ = (field_exponent, kind);
    n > 0 && n.is_multiple_of(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `tau(p^r, l) = t(p^r, 2l)`.
    Equal,
    /// `0 = tau(p^r, l) < t(p^r, 2l)`.
    TauZeroLess,
    /// `tau(p^r, l) > t(p^r, 2l) = 0`.
    TZeroLess,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::TauZeroLess => "tau-zero-less",
            Relation::TZeroLess => "t-zero-less",
        }
    }

    /// Whether the relation holds for the given values.
    pub fn holds(self, tau: &BigUint, t_doubled: &BigUint) -> bool {
        match self {
            Relation::Equal => tau == t_doubled,
            Relation::TauZeroLess => tau.is_zero() && !t_doubled.is_zero(),
            Relation::TZeroLess => t_doubled.is_zero() && !tau.is_zero(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTComparison {
    pub relation: Relation,
    pub tau: BigUint,
    pub t_doubled: BigUint,
}

/// Relation between the Hermitian exponent over GF(2^(2l)) and the Euclidean one
/// over the same field, predicted from `v2(l)` against `gamma` and then checked
/// against the computed values.
pub fn compare_tau_t(p: u64, r: u32, l: u64) -> Result<TauTComparison, CountError> {
    let profile = OrderProfile::new(p, r, l)?;
    let relation = predicted_relation(&profile);
    let tau = tau_prime_power(p, r, l)?;
    let t_doubled = t_prime_power(p, r, double_l(l)?)?;
    if !relation.holds(&tau, &t_doubled) {
        return Err(CountError::Inconsistent(format!(
            "p={p}, r={r}, l={l}: predicted {relation} but tau={tau}, t(p^r, 2l)={t_doubled}"
        )));
    }
    Ok(TauTComparison {
        relation,
        tau,
        t_doubled,
    })
}

/// The relation implied by the 2-adic valuations alone.
pub fn predicted_relation(profile: &OrderProfile) -> Relation {
    let v = profile.v2_l;
    let gamma = profile.gamma;
    if v >= gamma {
        Relation::Equal
    } else if v + 1 == gamma {
        Relation::TauZeroLess
    } else {
        Relation::TZeroLess
    }
}
