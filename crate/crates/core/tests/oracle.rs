use proptest::prelude::*;

use selfdual_core::exec::Strategy as Exec;
use selfdual_core::numtheory::factorize;
use selfdual_core::oracle::{
    build_cosets, code_field, enumerate_self_dual, factor_xn_minus_1, pair_count,
    self_dual_generators, EnumerationLimits, FieldRep, GFPoly,
};
use selfdual_core::{count_self_dual, Kind, LengthSpec};

/// Rabin's test over GF(2^m): `f` of degree `d` is irreducible iff
/// `x^(q^d) = x mod f` and `gcd(x^(q^(d/r)) - x, f) = 1` for each prime `r | d`.
fn is_irreducible(f: &GFPoly) -> bool {
    let field = f.field();
    let m = u64::from(field.degree());
    let d = f.degree().unwrap();
    if d == 0 {
        return false;
    }
    let x = GFPoly::x(field);
    let frob = |k: u64| x.pow_two_power_mod(m * k, f).unwrap();
    if frob(d as u64) != x.rem(f).unwrap() {
        return false;
    }
    factorize(d as u64).unwrap().pairs().iter().all(|&(r, _)| {
        let g = f.gcd(&frob(d as u64 / r).add(&x));
        g.degree() == Some(0)
    })
}

#[test]
fn canonical_fields() {
    assert_eq!(FieldRep::canonical(1).unwrap().modulus(), 0b10);
    assert_eq!(FieldRep::canonical(2).unwrap().modulus(), 0b111);
    assert_eq!(FieldRep::canonical(3).unwrap().modulus(), 0b1011);
    assert_eq!(FieldRep::canonical(4).unwrap().modulus(), 0b10011);
    assert_eq!(FieldRep::canonical(8).unwrap().modulus(), 0x11b);
    assert!(FieldRep::with_modulus(0b101).is_err());
}

#[test]
fn field_axioms_small() {
    for m in 1..=6u32 {
        let f = FieldRep::canonical(m).unwrap();
        for a in 1..f.order() {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
            assert_eq!(f.pow(a, f.order() - 1), 1);
            assert_eq!(f.frobenius(a, m), a);
        }
    }
}

#[test]
fn factors_match_cosets() {
    for m in 1..=4u32 {
        let field = FieldRep::canonical(m).unwrap();
        for n in (1..=45u64).step_by(2) {
            let factors = factor_xn_minus_1(n, field).unwrap();
            let mut degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
            let cosets = build_cosets(n, u64::from(m), Kind::Euclidean).unwrap();
            let mut sizes: Vec<usize> = cosets.cosets.iter().map(Vec::len).collect();
            degrees.sort_unstable();
            sizes.sort_unstable();
            assert_eq!(degrees, sizes, "m={m} n={n}");
            for f in &factors {
                assert!(f.is_monic());
                assert!(is_irreducible(f), "m={m} n={n} f={f}");
            }
        }
    }
}

/// Counts factors moved by the (conjugate) reciprocal map, which must agree with
/// the coset pairing count.
#[test]
fn factor_involution_matches_coset_pairs() {
    for l in 1..=2u64 {
        for kind in Kind::ALL {
            let field = code_field(l, kind).unwrap();
            for n in (1..=35u64).step_by(2) {
                let factors = factor_xn_minus_1(n, field).unwrap();
                let mut moved = 0;
                for f in &factors {
                    let image = match kind {
                        Kind::Euclidean => f.reciprocal().unwrap(),
                        Kind::Hermitian => f.conj_reciprocal().unwrap(),
                    };
                    assert!(factors.contains(&image), "image of {f} is not a factor");
                    if image != *f {
                        moved += 1;
                    }
                }
                let pairs = pair_count(&build_cosets(n, l, kind).unwrap());
                assert_eq!(moved / 2, pairs, "n={n} l={l} {kind}");
            }
        }
    }
}

#[test]
fn enumeration_matches_formula() {
    let limits = EnumerationLimits::default();
    for kind in Kind::ALL {
        for l in 1..=2u64 {
            for nu in 1..=3u32 {
                for odd in (1..=15u64).step_by(2) {
                    if (odd << nu) > 16 {
                        continue;
                    }
                    let spec = LengthSpec::from_odd(nu, odd).unwrap();
                    let brute = enumerate_self_dual(&spec, l, kind, limits).unwrap();
                    let formula = count_self_dual(&spec, l, kind).unwrap().value.unwrap();
                    assert_eq!(formula, brute.into(), "nu={nu} n'={odd} l={l} {kind}");
                }
            }
        }
    }
}

#[test]
fn generators_have_half_degree() {
    for kind in Kind::ALL {
        for (nu, odd) in [(1u32, 7u64), (2, 3), (1, 5), (3, 1)] {
            let spec = LengthSpec::from_odd(nu, odd).unwrap();
            let n = spec.length().unwrap() as usize;
            let gens = self_dual_generators(
                &spec,
                1,
                kind,
                EnumerationLimits::default(),
                Exec::Sequential,
            )
            .unwrap();
            let field = code_field(1, kind).unwrap();
            let xn = GFPoly::x_pow_minus_one(field, n);
            for g in gens {
                assert_eq!(g.degree(), Some(n / 2));
                assert!(xn.rem(&g).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn strategies_enumerate_identically() {
    let spec = LengthSpec::from_odd(1, 15).unwrap();
    let limits = EnumerationLimits::default();
    let seq = self_dual_generators(&spec, 1, Kind::Euclidean, limits, Exec::Sequential).unwrap();
    let par = self_dual_generators(&spec, 1, Kind::Euclidean, limits, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
}

fn poly_strategy(m: u32) -> impl Strategy<Value = GFPoly> {
    let field = FieldRep::canonical(m).unwrap();
    let top = field.order();
    (prop::collection::vec(0..top, 1..8), 1..top).prop_map(move |(mut c, c0)| {
        c[0] = c0;
        GFPoly::new(field, c).unwrap()
    })
}

proptest! {
    #[test]
    fn reciprocal_is_an_involution_up_to_scaling(f in poly_strategy(3)) {
        let back = f.reciprocal().unwrap().reciprocal().unwrap();
        prop_assert_eq!(back, f.monic());
    }

    #[test]
    fn conj_reciprocal_is_an_involution_up_to_scaling(f in poly_strategy(4)) {
        let back = f.conj_reciprocal().unwrap().conj_reciprocal().unwrap();
        prop_assert_eq!(back, f.monic());
    }

    #[test]
    fn reciprocal_is_multiplicative(f in poly_strategy(2), g in poly_strategy(2)) {
        let lhs = f.mul(&g).reciprocal().unwrap();
        let rhs = f.reciprocal().unwrap().mul(&g.reciprocal().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_reconstructs(f in poly_strategy(4), g in poly_strategy(4)) {
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&r), f);
        prop_assert!(r.degree().is_none_or(|d| Some(d) < g.degree()));
    }
}
