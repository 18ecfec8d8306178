//! Factorization of `x^n' - 1` over GF(2^m) for odd `n'`.
//!
//! The polynomial is squarefree, so distinct-degree factorization followed by
//! equal-degree splitting is enough. Equal-degree splitting is deterministic: for
//! factors of degree `d` the absolute trace `T(a) = sum_{i < md} a^(2^i)` takes a
//! value in GF(2) on each factor, and running `a` over the GF(2)-basis
//! `{ e_k x^j }` of `GF(2^m)[x] / (f)` separates every pair of factors.

use super::gf::FieldRep;
use super::poly::GFPoly;
use super::OracleError;

/// Groups of irreducible factors sharing a degree, as `(product, degree)`.
pub fn distinct_degree(f: &GFPoly) -> Result<Vec<(GFPoly, usize)>, OracleError> {
    let field = f.field();
    let m = u64::from(field.degree());
    let x = GFPoly::x(field);
    let mut rest = f.monic();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0usize;
    while let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        d += 1;
        if deg < 2 * d {
            out.push((rest.clone(), deg));
            break;
        }
        // h = x^(Q^d) mod rest
        h = h.pow_two_power_mod(m, &rest)?;
        let g = rest.gcd(&h.add(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    Ok(out)
}

/// `sum_{i < k} a^(2^i) mod modulus`.
fn trace(a: &GFPoly, k: u64, modulus: &GFPoly) -> Result<GFPoly, OracleError> {
    let mut term = a.rem(modulus)?;
    let mut acc = term.clone();
    for _ in 1..k {
        term = term.mul_mod(&term, modulus)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Splits a product of distinct monic irreducibles of degree `d` into its factors.
pub fn equal_degree(f: &GFPoly, d: usize) -> Result<Vec<GFPoly>, OracleError> {
    let field = f.field();
    let total = f.degree().unwrap_or(0);
    if total == d {
        return Ok(vec![f.monic()]);
    }
    let trace_len = u64::from(field.degree()) * d as u64;
    let mut pieces = vec![f.monic()];
    'basis: for j in 0..total {
        for k in 0..field.degree() {
            if pieces.iter().all(|p| p.degree() == Some(d)) {
                break 'basis;
            }
            let mut coeffs = vec![0u64; j + 1];
            coeffs[j] = 1u64 << k;
            let a = GFPoly::new(field, coeffs)?;
            let t = trace(&a, trace_len, f)?;
            let mut next = Vec::with_capacity(pieces.len() + 1);
            for piece in pieces {
                if piece.degree() == Some(d) {
                    next.push(piece);
                    continue;
                }
                let u = piece.gcd(&t);
                match u.degree() {
                    Some(du) if du > 0 && Some(du) < piece.degree() => {
                        next.push(piece.div_exact(&u)?);
                        next.push(u);
                    }
                    _ => next.push(piece),
                }
            }
            pieces = next;
        }
    }
    if pieces.iter().any(|p| p.degree() != Some(d)) {
        return Err(OracleError::IncompleteFactorization);
    }
    Ok(pieces)
}

fn sort_key(p: &GFPoly) -> (usize, Vec<u64>) {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    (p.degree().unwrap_or(0), c)
}

/// Monic irreducible factors of `x^n' - 1` over `field`, sorted by degree and
/// then by coefficients read from the top.
pub fn factor_xn_minus_1(n_prime: u64, field: FieldRep) -> Result<Vec<GFPoly>, OracleError> {
    if n_prime.is_multiple_of(2) {
        return Err(OracleError::EvenModulus(n_prime));
    }
    let n = usize::try_from(n_prime)
        .map_err(|_| OracleError::ResourceLimit(format!("n' = {n_prime}")))?;
    let f = GFPoly::x_pow_minus_one(field, n);
    let mut factors = Vec::new();
    for (group, d) in distinct_degree(&f)? {
        factors.extend(equal_degree(&group, d)?);
    }
    factors.sort_by_key(sort_key);
    Ok(factors)
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
    fn seven_over_gf2() {
        let f = gf(1);
        let factors = factor_xn_minus_1(7, f).unwrap();
        assert_eq!(
            factors,
            vec![
                poly(f, &[1, 1]),
                poly(f, &[1, 1, 0, 1]),
                poly(f, &[1, 0, 1, 1])
            ]
        );
    }

    #[test]
    fn one_over_gf2() {
        let f = gf(1);
        assert_eq!(factor_xn_minus_1(1, f).unwrap(), vec![poly(f, &[1, 1])]);
    }

    #[test]
    fn three_over_gf4_splits() {
        let factors = factor_xn_minus_1(3, gf(2)).unwrap();
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|p| p.degree() == Some(1)));
    }

    #[test]
    fn rejects_even() {
        assert_eq!(
            factor_xn_minus_1(4, gf(1)),
            Err(OracleError::EvenModulus(4))
        );
    }

    #[test]
    fn product_reconstructs() {
        for m in 1..=4 {
            let f = gf(m);
            for n in (1..=63u64).step_by(2) {
                let factors = factor_xn_minus_1(n, f).unwrap();
                let product = factors.iter().fold(GFPoly::one(f), |acc, p| acc.mul(p));
                assert_eq!(
                    product,
                    GFPoly::x_pow_minus_one(f, n as usize),
                    "m={m} n={n}"
                );
            }
        }
    }
}
