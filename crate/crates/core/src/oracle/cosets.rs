//! Cyclotomic cosets of `q = 2^l` (or `2^(2l)`) modulo an odd `n'`, with the
//! involution that the reciprocal or conjugate-reciprocal map induces on them.
//!
//! Cosets index the irreducible factors of `x^n' - 1`; a coset moved by the
//! involution corresponds to a factor whose (conjugate) reciprocal is a different
//! factor. Counting moved pairs gives `t` or `tau` without any number theory.

use crate::counting::Kind;
use crate::numtheory;

use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPairing {
    pub modulus_n: u64,
    /// `2^l mod n'` (Euclidean) or `2^(2l) mod n'` (Hermitian).
    pub multiplier: u64,
    /// Sorted residue lists, ordered by smallest element.
    pub cosets: Vec<Vec<u64>>,
    /// `pairing[i]` is the coset hit by the involution applied to coset `i`.
    pub pairing: Vec<usize>,
}

pub const MAX_COSET_MODULUS: u64 = 1 << 24;

pub fn build_cosets(n_prime: u64, l: u64, kind: Kind) -> Result<CosetPairing, OracleError> {
    if n_prime.is_multiple_of(2) {
        return Err(OracleError::EvenModulus(n_prime));
    }
    if n_prime > MAX_COSET_MODULUS {
        return Err(OracleError::ResourceLimit(format!(
            "coset modulus {n_prime} exceeds {MAX_COSET_MODULUS}"
        )));
    }
    let n = n_prime;
    let step = numtheory::pow_mod(2, l, n);
    let multiplier = match kind {
        Kind::Euclidean => step,
        Kind::Hermitian => numtheory::mul_mod(step, step, n),
    };
    // a -> -a, or a -> -2^l a
    let twist = match kind {
        Kind::Euclidean => 1 % n,
        Kind::Hermitian => step,
    };

    let mut index_of = vec![usize::MAX; n as usize];
    let mut cosets = Vec::new();
    for start in 0..n {
        if index_of[start as usize] != usize::MAX {
            continue;
        }
        let idx = cosets.len();
        let mut members = Vec::new();
        let mut a = start;
        loop {
            index_of[a as usize] = idx;
            members.push(a);
            a = numtheory::mul_mod(a, multiplier, n);
            if a == start {
                break;
            }
        }
        members.sort_unstable();
        cosets.push(members);
    }

    let pairing = cosets
        .iter()
        .map(|c| {
            let image = (n - numtheory::mul_mod(c[0], twist, n)) % n;
            index_of[image as usize]
        })
        .collect();

    Ok(CosetPairing {
        modulus_n: n,
        multiplier,
        cosets,
        pairing,
    })
}

/// Number of unordered pairs `{C, C'}` with `C' = pairing(C) != C`.
pub fn pair_count(pairing: &CosetPairing) -> u64 {
    let moved = pairing
        .pairing
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i != j)
        .count();
    (moved / 2) as u64
}
