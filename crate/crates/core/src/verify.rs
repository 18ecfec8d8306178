//! Cross-checks between every route to `t` and `tau` and the independent oracles.
//!
//! Each family sweeps a parameter grid and records every mismatch. A mismatch is
//! a bug, so nothing here is tolerance-based: all comparisons are exact integer
//! equality.

use std::fmt;

use num_bigint::BigUint;

use crate::counting::{self, CountError, Kind, LengthSpec, Method, MixedTermScaling};
use crate::exec::{self, Strategy};
use crate::numtheory::{self, Factorization};
use crate::oracle::{self, EnumerationLimits};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub odd_max: u64,
    pub l_max: u64,
    pub enumerate_max_length: u64,
    /// Enumeration runs over `l = 1..=min(l_max, enumerate_l_max)`.
    pub enumerate_l_max: u64,
    pub scaling: MixedTermScaling,
    pub strategy: Strategy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            odd_max: 105,
            l_max: 8,
            enumerate_max_length: 16,
            enumerate_l_max: 2,
            scaling: MixedTermScaling::Halved,
            strategy: Strategy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub families: Vec<FamilyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.families.iter().map(|f| f.cases).sum()
    }

    /// Family name and message of the first recorded mismatch.
    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        self.families
            .iter()
            .find_map(|f| f.failures.first().map(|m| (f.name, m.as_str())))
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<26} {:>8} {:>9}  status",
            "check", "cases", "failures"
        )?;
        for fam in &self.families {
            let status = if fam.passed() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<26} {:>8} {:>9}  {}",
                fam.name,
                fam.cases,
                fam.failures.len(),
                status
            )?;
        }
        Ok(())
    }
}

pub const GENERAL_VS_ORACLE: &str = "general-vs-oracle";
pub const PRIME_POWER_VS_GENERAL: &str = "prime-power-vs-general";
pub const TWO_PRIME_VS_GENERAL: &str = "two-prime-vs-general";
pub const COROLLARY_CLOSED_FORMS: &str = "corollary-closed-forms";
pub const TAU_T_TRICHOTOMY: &str = "tau-t-trichotomy";
pub const EXHAUSTIVE_ENUMERATION: &str = "exhaustive-enumeration";

fn symbol(kind: Kind) -> &'static str {
    match kind {
        Kind::Euclidean => "t",
        Kind::Hermitian => "tau",
    }
}

fn general(n: &Factorization, l: u64, kind: Kind) -> Result<BigUint, CountError> {
    counting::exponent_with(n, l, kind, Method::GeneralSum)
}

/// Runs a family over `cases`; `None` from `check` means the case was skipped.
fn run_family<T: Sync>(
    name: &'static str,
    cases: &[T],
    strategy: Strategy,
    check: impl Fn(&T) -> Option<Result<(), String>> + Sync + Send,
) -> FamilyReport {
    let outcomes = exec::map_ordered(cases, strategy, check);
    let mut report = FamilyReport {
        name,
        cases: 0,
        failures: Vec::new(),
    };
    for outcome in outcomes.into_iter().flatten() {
        report.cases += 1;
        if let Err(msg) = outcome {
            report.failures.push(msg);
        }
    }
    report
}

fn odd_values(max: u64) -> Vec<(u64, Factorization)> {
    (1..=max)
        .step_by(2)
        .map(|n| (n, numtheory::factorize(n).expect("n is positive")))
        .collect()
}

fn grid<T: Clone>(values: &[T], l_max: u64) -> Vec<(T, u64, Kind)> {
    let mut out = Vec::new();
    for v in values {
        for l in 1..=l_max {
            for kind in Kind::ALL {
                out.push((v.clone(), l, kind));
            }
        }
    }
    out
}

fn general_vs_oracle(cfg: &VerifyConfig) -> FamilyReport {
    let cases = grid(&odd_values(cfg.odd_max), cfg.l_max);
    run_family(
        GENERAL_VS_ORACLE,
        &cases,
        cfg.strategy,
        |((n, fact), l, kind)| {
            let outcome = (|| {
                let formula = general(fact, *l, *kind).map_err(|e| e.to_string())?;
                let pairing = oracle::build_cosets(*n, *l, *kind).map_err(|e| e.to_string())?;
                let pairs = BigUint::from(oracle::pair_count(&pairing));
                if formula != pairs {
                    return Err(format!(
                        "{}({n}, {l}): general {formula} != coset pairs {pairs}",
                        symbol(*kind)
                    ));
                }
                Ok(())
            })();
            Some(outcome)
        },
    )
}

fn prime_power_vs_general(cfg: &VerifyConfig) -> FamilyReport {
    let values: Vec<_> = odd_values(cfg.odd_max)
        .into_iter()
        .filter(|(_, f)| f.distinct_primes() == 1)
        .collect();
    let cases = grid(&values, cfg.l_max);
    run_family(
        PRIME_POWER_VS_GENERAL,
        &cases,
        cfg.strategy,
        |((n, fact), l, kind)| {
            let outcome = (|| {
                let fast = counting::exponent_with(fact, *l, *kind, Method::PrimePower)
                    .map_err(|e| e.to_string())?;
                let slow = general(fact, *l, *kind).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!(
                        "{}({n}, {l}): prime-power {fast} != general {slow}",
                        symbol(*kind)
                    ));
                }
                Ok(())
            })();
            Some(outcome)
        },
    )
}

fn two_prime_vs_general(cfg: &VerifyConfig) -> FamilyReport {
    let values: Vec<_> = odd_values(cfg.odd_max)
        .into_iter()
        .filter(|(_, f)| f.distinct_primes() == 2)
        .collect();
    let cases = grid(&values, cfg.l_max);
    let scaling = cfg.scaling;
    run_family(
        TWO_PRIME_VS_GENERAL,
        &cases,
        cfg.strategy,
        |((n, fact), l, kind)| {
            let outcome = (|| {
                let [(p, r), (q, s)] = fact.pairs() else {
                    unreachable!("filtered to two primes")
                };
                let fast = counting::two_prime_exponent(*p, *q, *r, *s, *l, *kind, scaling)
                    .map_err(|e| e.to_string())?;
                let slow = general(fact, *l, *kind).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!(
                        "{}({n}, {l}): two-prime {fast} != general {slow}",
                        symbol(*kind)
                    ));
                }
                Ok(())
            })();
            Some(outcome)
        },
    )
}

fn corollary_closed_forms(cfg: &VerifyConfig) -> FamilyReport {
    let values: Vec<_> = odd_values(cfg.odd_max)
        .into_iter()
        .filter_map(|(_, f)| match f.pairs() {
            &[(p, r)] => Some((p, r)),
            _ => None,
        })
        .collect();
    let cases = grid(&values, cfg.l_max);
    run_family(
        COROLLARY_CLOSED_FORMS,
        &cases,
        cfg.strategy,
        |((p, r), l, kind)| {
            let closed = match kind {
                Kind::Euclidean => counting::t_corollary_check(*p, *r, *l),
                Kind::Hermitian => counting::tau_corollary_check(*p, *r, *l),
            };
            let closed = match closed {
                Ok(v) => v,
                Err(CountError::HypothesisViolated { .. }) => return None,
                Err(e) => return Some(Err(e.to_string())),
            };
            let outcome = (|| {
                let fact = Factorization::prime_power(*p, *r).map_err(|e| e.to_string())?;
                let slow = general(&fact, *l, *kind).map_err(|e| e.to_string())?;
                if closed != slow {
                    return Err(format!(
                        "{}({p}^{r}, {l}): closed form {closed} != general {slow}",
                        symbol(*kind)
                    ));
                }
                Ok(())
            })();
            Some(outcome)
        },
    )
}

fn tau_t_trichotomy(cfg: &VerifyConfig) -> FamilyReport {
    let mut cases = Vec::new();
    for (_, f) in odd_values(cfg.odd_max) {
        if let &[(p, r)] = f.pairs() {
            for l in 1..=cfg.l_max {
                cases.push((p, r, l));
            }
        }
    }
    run_family(TAU_T_TRICHOTOMY, &cases, cfg.strategy, |&(p, r, l)| {
        let outcome = (|| {
            let cmp = counting::compare_tau_t(p, r, l).map_err(|e| e.to_string())?;
            let fact = Factorization::prime_power(p, r).map_err(|e| e.to_string())?;
            let tau = general(&fact, l, Kind::Hermitian).map_err(|e| e.to_string())?;
            let t2 = general(&fact, 2 * l, Kind::Euclidean).map_err(|e| e.to_string())?;
            if !cmp.relation.holds(&tau, &t2) {
                return Err(format!(
                    "p={p}, r={r}, l={l}: {} fails for tau={tau}, t(p^r, 2l)={t2}",
                    cmp.relation
                ));
            }
            Ok(())
        })();
        Some(outcome)
    })
}

fn exhaustive_enumeration(cfg: &VerifyConfig) -> FamilyReport {
    let mut cases = Vec::new();
    for nu in 1u32..64 {
        let two_nu = 1u64 << nu;
        if two_nu > cfg.enumerate_max_length {
            break;
        }
        for odd in (1..=cfg.enumerate_max_length / two_nu).step_by(2) {
            for l in 1..=cfg.l_max.min(cfg.enumerate_l_max) {
                for kind in Kind::ALL {
                    cases.push((nu, odd, l, kind));
                }
            }
        }
    }
    let limits = EnumerationLimits {
        max_length: cfg.enumerate_max_length,
        ..Default::default()
    };
    run_family(
        EXHAUSTIVE_ENUMERATION,
        &cases,
        cfg.strategy,
        |&(nu, odd, l, kind)| {
            let outcome = (|| {
                let spec = LengthSpec::from_odd(nu, odd).map_err(|e| e.to_string())?;
                let formula =
                    counting::count_self_dual(&spec, l, kind).map_err(|e| e.to_string())?;
                let found =
                    oracle::self_dual_generators(&spec, l, kind, limits, Strategy::Sequential)
                        .map_err(|e| e.to_string())?;
                let n = odd << nu;
                if let Some(g) = found.iter().find(|g| g.degree() != Some((n / 2) as usize)) {
                    return Err(format!(
                        "n={n}, l={l}, {kind}: self-dual generator {g} has wrong degree"
                    ));
                }
                let expected = formula.value.clone().unwrap_or_default();
                if BigUint::from(found.len()) != expected {
                    return Err(format!(
                        "n={n}, l={l}, {kind}: enumerated {} != formula {}^{} = {}",
                        found.len(),
                        formula.base,
                        formula.exponent,
                        expected
                    ));
                }
                Ok(())
            })();
            Some(outcome)
        },
    )
}

/// Runs every family in a fixed order.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let families = vec![
        general_vs_oracle(cfg),
        prime_power_vs_general(cfg),
        two_prime_vs_general(cfg),
        corollary_closed_forms(cfg),
        tau_t_trichotomy(cfg),
        exhaustive_enumeration(cfg),
    ];
    VerifyReport { families }
}
