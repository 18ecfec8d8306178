use num_bigint::BigUint;
use proptest::prelude::*;

use selfdual_core::counting::{
    exponent_with, t_corollary_check, tau_corollary_check, two_prime_exponent, MixedTermScaling,
};
use selfdual_core::numtheory::{self, is_prime, Factorization, OrderProfile};
use selfdual_core::oracle::{build_cosets, pair_count};
use selfdual_core::{
    compare_tau_t, count_self_dual, factorize, t_general, t_prime_power, t_two_primes, tau_general,
    tau_prime_power, tau_two_primes, Kind, LengthSpec, Method, Relation,
};

fn odd_primes_up_to(n: u64) -> Vec<u64> {
    (3..=n).step_by(2).filter(|&p| is_prime(p)).collect()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn known_values() {
    let n = factorize(1331).unwrap();
    assert_eq!(t_general(&n, 4).unwrap(), big(3));
    assert_eq!(tau_general(&n, 4).unwrap(), big(3));
    assert_eq!(t_general(&factorize(7).unwrap(), 1).unwrap(), big(1));
    assert_eq!(t_general(&factorize(1).unwrap(), 1).unwrap(), big(0));
    assert_eq!(t_general(&factorize(21).unwrap(), 1).unwrap(), big(2));
    assert_eq!(t_two_primes(3, 7, 1, 1, 1).unwrap(), big(2));
    assert_eq!(
        two_prime_exponent(3, 7, 1, 1, 1, Kind::Euclidean, MixedTermScaling::Unhalved).unwrap(),
        big(3)
    );
}

#[test]
fn general_sum_matches_coset_pairs() {
    for n in (1..=105u64).step_by(2) {
        let f = factorize(n).unwrap();
        for l in 1..=8u64 {
            for kind in Kind::ALL {
                let general = match kind {
                    Kind::Euclidean => t_general(&f, l),
                    Kind::Hermitian => tau_general(&f, l),
                }
                .unwrap();
                let oracle = pair_count(&build_cosets(n, l, kind).unwrap());
                assert_eq!(general, big(oracle), "n'={n} l={l} {kind}");
            }
        }
    }
}

#[test]
fn prime_power_route_matches_general() {
    for p in odd_primes_up_to(31) {
        for r in 1..=3u32 {
            let f = Factorization::prime_power(p, r).unwrap();
            for l in 1..=10u64 {
                assert_eq!(
                    t_prime_power(p, r, l).unwrap(),
                    t_general(&f, l).unwrap(),
                    "t p={p} r={r} l={l}"
                );
                assert_eq!(
                    tau_prime_power(p, r, l).unwrap(),
                    tau_general(&f, l).unwrap(),
                    "tau p={p} r={r} l={l}"
                );
            }
        }
    }
}

#[test]
fn two_prime_route_matches_general() {
    let primes = [3u64, 5, 7, 11, 13];
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for r in 1..=2u32 {
                for s in 1..=2u32 {
                    let f = Factorization::from_pairs(vec![(p, r), (q, s)]).unwrap();
                    for l in 1..=6u64 {
                        assert_eq!(
                            t_two_primes(p, q, r, s, l).unwrap(),
                            t_general(&f, l).unwrap()
                        );
                        assert_eq!(
                            tau_two_primes(p, q, r, s, l).unwrap(),
                            tau_general(&f, l).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn unhalved_mixed_term_disagrees_somewhere() {
    let mut mismatches = 0;
    for (p, q) in [(3u64, 5u64), (3, 7), (5, 7)] {
        let f = Factorization::from_pairs(vec![(p, 1), (q, 1)]).unwrap();
        for l in 1..=4u64 {
            let wrong =
                two_prime_exponent(p, q, 1, 1, l, Kind::Euclidean, MixedTermScaling::Unhalved);
            if wrong.ok() != Some(t_general(&f, l).unwrap()) {
                mismatches += 1;
            }
        }
    }
    assert!(mismatches > 0);
}

#[test]
fn corollary_closed_forms_agree_when_hypotheses_hold() {
    let mut t_hits = 0;
    let mut tau_hits = 0;
    for p in odd_primes_up_to(60) {
        for r in 1..=3u32 {
            let f = Factorization::prime_power(p, r).unwrap();
            for l in 1..=12u64 {
                if let Ok(v) = t_corollary_check(p, r, l) {
                    assert_eq!(v, t_general(&f, l).unwrap(), "t p={p} r={r} l={l}");
                    t_hits += 1;
                }
                if let Ok(v) = tau_corollary_check(p, r, l) {
                    assert_eq!(v, tau_general(&f, l).unwrap(), "tau p={p} r={r} l={l}");
                    tau_hits += 1;
                }
            }
        }
    }
    assert!(t_hits > 50 && tau_hits > 50, "{t_hits} {tau_hits}");
    // 2 has order 3 mod 7: not primitive, so the closed form does not apply.
    assert!(t_corollary_check(7, 2, 1).is_err());
}

#[test]
fn tau_t_trichotomy() {
    let mut seen = std::collections::HashSet::new();
    for p in odd_primes_up_to(50) {
        for r in 1..=3u32 {
            let f = Factorization::prime_power(p, r).unwrap();
            for l in 1..=16u64 {
                let cmp = compare_tau_t(p, r, l).unwrap();
                let tau = tau_general(&f, l).unwrap();
                let t2 = t_general(&f, 2 * l).unwrap();
                assert_eq!(cmp.tau, tau);
                assert_eq!(cmp.t_doubled, t2);
                assert!(cmp.relation.holds(&tau, &t2), "p={p} r={r} l={l}");
                seen.insert(cmp.relation);
            }
        }
    }
    assert_eq!(seen.len(), 3);
    assert!(seen.contains(&Relation::Equal));
}

#[test]
fn method_routes_agree_on_counts() {
    for n in [5u64, 9, 25, 15, 63, 105] {
        let spec = LengthSpec::from_odd(2, n).unwrap();
        let r = count_self_dual(&spec, 3, Kind::Euclidean).unwrap();
        let g = exponent_with(spec.odd_part(), 3, Kind::Euclidean, Method::GeneralSum).unwrap();
        assert_eq!(r.exponent, g);
        assert_eq!(r.base, big(5));
        assert_eq!(r.value, Some(big(5).pow(u32::try_from(&g).unwrap())));
    }
    let f = factorize(105).unwrap();
    assert!(exponent_with(&f, 1, Kind::Euclidean, Method::TwoPrime).is_err());
    assert!(exponent_with(&f, 1, Kind::Euclidean, Method::PrimePower).is_err());
}

#[test]
fn large_parameters_stay_exact() {
    let t = t_prime_power(3, 40, 1).unwrap();
    let tau = tau_prime_power(3, 40, 1).unwrap();
    assert_eq!(t, big(0));
    assert_eq!(tau, big(0));
    let t = t_prime_power(3, 40, 2).unwrap();
    assert_eq!(t, t_corollary_check(3, 40, 2).unwrap());
    assert_eq!(t, big(40));
    let spec = LengthSpec::new(3, Factorization::prime_power(3, 40).unwrap()).unwrap();
    let r = count_self_dual(&spec, 2, Kind::Euclidean).unwrap();
    assert_eq!(r.value, Some(big(9).pow(40)));
}

proptest! {
    #[test]
    fn exponents_are_bounded_by_half_the_odd_part(n in (0u64..2000).prop_map(|x| 2 * x + 1), l in 1u64..12) {
        let f = factorize(n).unwrap();
        let t = t_general(&f, l).unwrap();
        let tau = tau_general(&f, l).unwrap();
        prop_assert!(&t * 2u32 <= big(n));
        prop_assert!(&tau * 2u32 <= big(n));
    }

    #[test]
    fn prime_power_route_matches_general_random(
        p in prop::sample::select(odd_primes_up_to(200)),
        r in 1u32..4,
        l in 1u64..30,
    ) {
        let f = Factorization::prime_power(p, r).unwrap();
        prop_assert_eq!(t_prime_power(p, r, l).unwrap(), t_general(&f, l).unwrap());
        prop_assert_eq!(tau_prime_power(p, r, l).unwrap(), tau_general(&f, l).unwrap());
    }

    #[test]
    fn t_vanishes_exactly_below_gamma(p in prop::sample::select(odd_primes_up_to(500)), l in 1u64..64) {
        let profile = OrderProfile::new(p, 1, l).unwrap();
        let t = t_prime_power(p, 1, l).unwrap();
        prop_assert_eq!(t == big(0), profile.v2_l < profile.gamma);
        prop_assert_eq!(profile.ord_base, profile.ord_p_2 / num_integer::gcd(profile.ord_p_2, l));
        prop_assert_eq!(numtheory::pow_mod(2, l * profile.ord_base, p), 1);
    }
}
