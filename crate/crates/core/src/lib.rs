//! Exact counts of Euclidean and Hermitian self-dual cyclic codes of even length
//! over binary extension fields.
//!
//! A length `n = 2^nu * n'` with `n'` odd has `(2^nu + 1)^t` Euclidean self-dual
//! cyclic codes over GF(2^l) and `(2^nu + 1)^tau` Hermitian ones over GF(2^(2l)).
//! The exponents are computed by [`counting`] along three routes (general divisor
//! sum, prime-power closed form, two-prime decomposition) and checked against the
//! independent [`oracle`] module by [`verify`].
//!
//! ```
//! use selfdual_core::{count_self_dual, Kind, LengthSpec};
//!
//! let spec = LengthSpec::from_odd(1, 1331).unwrap();
//! let count = count_self_dual(&spec, 4, Kind::Euclidean).unwrap();
//! assert_eq!(count.value.unwrap(), 27u32.into());
//! ```

pub mod characteristic;
pub mod counting;
pub mod exec;
pub mod numtheory;
pub mod oracle;
pub mod table;
pub mod verify;

pub use characteristic::{chi, lambda, ChiResult};
pub use counting::{
    compare_tau_t, count_self_dual, count_self_dual_with, exists_self_dual, t_general,
    t_prime_power, t_two_primes, tau_general, tau_prime_power, tau_two_primes, CountError,
    CountResult, Kind, LengthSpec, Method, MixedTermScaling, Relation,
};
pub use exec::Strategy;
pub use numtheory::{factorize, Factorization, OrderProfile};
