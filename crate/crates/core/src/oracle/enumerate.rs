//! Brute-force count of self-dual cyclic codes at small lengths.
//!
//! With `x^n - 1 = prod f_i^(2^nu)`, every cyclic code is generated by some
//! `g = prod f_i^(e_i)`, `0 <= e_i <= 2^nu`. The code is Euclidean self-dual iff
//! `g = h*` and Hermitian self-dual iff `g = h†`, where `h = (x^n - 1) / g`.

use crate::counting::{Kind, LengthSpec};
use crate::exec::{self, Strategy};

use super::factor::factor_xn_minus_1;
use super::gf::FieldRep;
use super::poly::GFPoly;
use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_length: u64,
    pub max_iterations: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self {
            max_length: 30,
            max_iterations: 1_000_000,
        }
    }
}

/// The field the codes live in: GF(2^l) for Euclidean, GF(2^(2l)) for Hermitian.
pub fn code_field(l: u64, kind: Kind) -> Result<FieldRep, OracleError> {
    let degree = match kind {
        Kind::Euclidean => l,
        Kind::Hermitian => l.saturating_mul(2),
    };
    let degree = u32::try_from(degree).map_err(|_| OracleError::UnsupportedDegree(u32::MAX))?;
    FieldRep::canonical(degree)
}

struct Search {
    kind: Kind,
    multiplicity: u32,
    /// `powers[i][e] = f_i^e`.
    powers: Vec<Vec<GFPoly>>,
    field: FieldRep,
}

impl Search {
    fn digits(&self, mut index: u64) -> Vec<u32> {
        let radix = u64::from(self.multiplicity) + 1;
        (0..self.powers.len())
            .map(|_| {
                let d = (index % radix) as u32;
                index /= radix;
                d
            })
            .collect()
    }

    fn candidate(&self, index: u64) -> Result<Option<GFPoly>, OracleError> {
        let exps = self.digits(index);
        let mut g = GFPoly::one(self.field);
        let mut h = GFPoly::one(self.field);
        for (i, &e) in exps.iter().enumerate() {
            g = g.mul(&self.powers[i][e as usize]);
            h = h.mul(&self.powers[i][(self.multiplicity - e) as usize]);
        }
        let dual = match self.kind {
            Kind::Euclidean => h.reciprocal()?,
            Kind::Hermitian => h.conj_reciprocal()?,
        };
        Ok((g == dual).then_some(g))
    }
}

/// Generator polynomials of all self-dual cyclic codes for the given length,
/// in enumeration order.
pub fn self_dual_generators(
    spec: &LengthSpec,
    l: u64,
    kind: Kind,
    limits: EnumerationLimits,
    strategy: Strategy,
) -> Result<Vec<GFPoly>, OracleError> {
    let length = spec
        .length()
        .filter(|&n| n <= limits.max_length)
        .ok_or_else(|| {
            OracleError::ResourceLimit(format!(
                "length 2^{} * {} exceeds the enumeration bound {}",
                spec.nu(),
                spec.odd_part(),
                limits.max_length
            ))
        })?;
    let n_prime = length >> spec.nu();
    let field = code_field(l, kind)?;
    let factors = factor_xn_minus_1(n_prime, field)?;
    let multiplicity = 1u32 << spec.nu();

    let radix = u64::from(multiplicity) + 1;
    let total = u32::try_from(factors.len())
        .ok()
        .and_then(|k| radix.checked_pow(k))
        .filter(|&t| t <= limits.max_iterations)
        .ok_or_else(|| {
            OracleError::ResourceLimit(format!(
                "{radix}^{} generator candidates exceed the iteration bound {}",
                factors.len(),
                limits.max_iterations
            ))
        })?;

    let powers = factors
        .iter()
        .map(|f| {
            let mut row = vec![GFPoly::one(field)];
            for e in 1..=multiplicity as usize {
                row.push(row[e - 1].mul(f));
            }
            row
        })
        .collect();
    let search = Search {
        kind,
        multiplicity,
        powers,
        field,
    };

    const CHUNK: u64 = 256;
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK).min(total)))
        .collect();
    let found = exec::map_ordered(&chunks, strategy, |&(start, end)| {
        let mut hits = Vec::new();
        for index in start..end {
            if let Some(g) = search.candidate(index)? {
                hits.push(g);
            }
        }
        Ok::<_, OracleError>(hits)
    });
    let mut out = Vec::new();
    for chunk in found {
        out.extend(chunk?);
    }
    Ok(out)
}

/// Number of self-dual cyclic codes found by exhaustive search.
pub fn enumerate_self_dual(
    spec: &LengthSpec,
    l: u64,
    kind: Kind,
    limits: EnumerationLimits,
) -> Result<u64, OracleError> {
    Ok(self_dual_generators(spec, l, kind, limits, Strategy::default())?.len() as u64)
}
