//! Interchangeable deciders for Hilbert-Mumford (semi)stability, looked up
//! by name.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_binomial, proper_subspaces, rref_in_place, Field, Matrix};
use crate::rational::Rational;
use crate::stability::VerdictKind;

use super::oneps::{mu_oneps, OnePs};
use super::point::{GrassPoint, Linearization};

pub const DEFAULT_BUDGET: u64 = 1 << 12;

/// Hard cap on the number of subspaces visited, whatever the budget.
pub const MAX_SUBSPACES: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Upper bound for `q^dim V` in exhaustive enumerations.
    pub budget: u64,
    /// Number of random subspaces drawn by the sampling strategy.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            samples: 256,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceWitness {
    pub basis: Vec<Vec<Rational>>,
    pub value: Rational,
}

/// Outcome of a Hilbert-Mumford test. `exhaustive` is false when only a
/// sample of subspaces was examined, in which case only an `unstable`
/// verdict is conclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmVerdict {
    pub method: String,
    pub kind: VerdictKind,
    pub exhaustive: bool,
    pub checked: usize,
    pub min_value: Option<Rational>,
    /// Subspaces attaining the minimum, when it is `<= 0`.
    pub witnesses: Vec<SubspaceWitness>,
}

pub trait HmStrategy<F: Field>: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn decide(&self, pt: &GrassPoint<F>, lin: &Linearization, opts: &SearchOptions) -> Result<HmVerdict>;
}

/// Every proper nonzero subspace of `V`, each visited once through its
/// reduced echelon basis.
pub struct ExhaustiveSubspaces;

/// Minimises the numerical function over the one-parameter subgroups
/// attached to every proper nonzero subspace.
pub struct OnePsFamily;

/// Random subspaces plus `L2` and the coordinate flags; a semi-decision
/// usable over the rationals.
pub struct SampledSubspaces;

fn budget_check<F: Field>(pt: &GrassPoint<F>, opts: &SearchOptions) -> Result<u64> {
    let q = pt
        .field()
        .order()
        .ok_or_else(|| Error::invalid("exhaustive search needs a finite field; use the 'sampled' method"))?;
    let n = pt.dim_v() as u32;
    let needed = (q as u128).saturating_pow(n);
    if needed > opts.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: format!("{q}^{n}"),
            budget: opts.budget,
        });
    }
    let total: u128 = (1..n).map(|k| gaussian_binomial(n, k, q)).sum();
    if total > MAX_SUBSPACES {
        return Err(Error::BudgetExceeded {
            needed: format!("{total} subspaces"),
            budget: MAX_SUBSPACES as u64,
        });
    }
    Ok(q)
}

fn lift<F: Field>(f: &F, u: &[Vec<F::Elem>]) -> Vec<Vec<Rational>> {
    u.iter().map(|v| v.iter().map(|e| f.lift(e)).collect()).collect()
}

/// Folds `(subspace, value)` pairs into a verdict; ties keep enumeration
/// order.
fn summarise<F: Field>(
    f: &F,
    method: &str,
    exhaustive: bool,
    values: impl IntoIterator<Item = (Matrix<F::Elem>, Rational)>,
) -> HmVerdict {
    let mut min: Option<Rational> = None;
    let mut best: Vec<Matrix<F::Elem>> = Vec::new();
    let mut checked = 0;
    for (u, v) in values {
        checked += 1;
        match &min {
            Some(m) if v > *m => {}
            Some(m) if v == *m => best.push(u),
            _ => {
                min = Some(v);
                best = vec![u];
            }
        }
    }
    let kind = VerdictKind::from_min(min.as_ref());
    let witnesses = match &min {
        Some(m) if !m.is_positive() => best
            .iter()
            .map(|u| SubspaceWitness {
                basis: lift(f, u),
                value: m.clone(),
            })
            .collect(),
        _ => Vec::new(),
    };
    HmVerdict {
        method: method.to_string(),
        kind,
        exhaustive,
        checked,
        min_value: min,
        witnesses,
    }
}

impl<F: Field> HmStrategy<F> for ExhaustiveSubspaces {
    fn name(&self) -> &'static str {
        "subspaces"
    }

    fn description(&self) -> &'static str {
        "exhaustive p*theta1 + q*theta2 over all proper subspaces (finite fields)"
    }

    fn decide(&self, pt: &GrassPoint<F>, lin: &Linearization, opts: &SearchOptions) -> Result<HmVerdict> {
        budget_check(pt, opts)?;
        let subs = proper_subspaces(pt.field(), pt.dim_v())?;
        let values = subs.into_iter().map(|u| {
            let v = pt.hm_value(&u, lin);
            (u, v)
        });
        Ok(summarise(pt.field(), "subspaces", true, values))
    }
}

impl<F: Field> HmStrategy<F> for OnePsFamily {
    fn name(&self) -> &'static str {
        "one-ps"
    }

    fn description(&self) -> &'static str {
        "minimum of the numerical function over subspace-induced 1-PS (finite fields)"
    }

    fn decide(&self, pt: &GrassPoint<F>, lin: &Linearization, opts: &SearchOptions) -> Result<HmVerdict> {
        budget_check(pt, opts)?;
        let f = pt.field();
        let mut values = Vec::new();
        for u in proper_subspaces(f, pt.dim_v())? {
            let lam = OnePs::for_subspace(f, &u, pt.dim_v())?;
            let v = mu_oneps(pt, &lam, lin)?;
            values.push((u, v));
        }
        Ok(summarise(f, "one-ps", true, values))
    }
}

impl<F: Field> HmStrategy<F> for SampledSubspaces {
    fn name(&self) -> &'static str {
        "sampled"
    }

    fn description(&self) -> &'static str {
        "random subspaces plus L2 and coordinate flags (any field; semi-decision)"
    }

    fn decide(&self, pt: &GrassPoint<F>, lin: &Linearization, opts: &SearchOptions) -> Result<HmVerdict> {
        let f = pt.field();
        let n = pt.dim_v();
        let mut family: Vec<Matrix<F::Elem>> = Vec::new();
        let push = |mut u: Matrix<F::Elem>, family: &mut Vec<Matrix<F::Elem>>| {
            rref_in_place(f, &mut u);
            if !u.is_empty() && u.len() < n && !family.contains(&u) {
                family.push(u);
            }
        };
        push(pt.l2_basis(), &mut family);
        for k in 1..n {
            let flag = (0..k)
                .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                .collect();
            push(flag, &mut family);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let elems = f.elements();
        if n > 1 {
            for _ in 0..opts.samples {
                let k = rng.gen_range(1..n);
                let u = (0..k)
                    .map(|_| {
                        (0..n)
                            .map(|_| match &elems {
                                Some(es) => es[rng.gen_range(0..es.len())].clone(),
                                None => f.from_i64(rng.gen_range(-2..=2)),
                            })
                            .collect()
                    })
                    .collect();
                push(u, &mut family);
            }
        }
        let values = family.into_iter().map(|u| {
            let v = pt.hm_value(&u, lin);
            (u, v)
        });
        Ok(summarise(f, "sampled", false, values))
    }
}

/// Names of the registered strategies, in registration order.
pub const STRATEGY_NAMES: [&str; 3] = ["subspaces", "one-ps", "sampled"];

pub fn strategies<F: Field>() -> Vec<Box<dyn HmStrategy<F>>> {
    vec![
        Box::new(ExhaustiveSubspaces),
        Box::new(OnePsFamily),
        Box::new(SampledSubspaces),
    ]
}

pub fn strategy<F: Field>(name: &str) -> Result<Box<dyn HmStrategy<F>>> {
    strategies::<F>()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "Hilbert-Mumford method",
            name: name.to_string(),
            known: STRATEGY_NAMES.join(", "),
        })
}

/// Exhaustive Hilbert-Mumford test with the given enumeration budget.
pub fn hm_check<F: Field>(pt: &GrassPoint<F>, lin: &Linearization, budget: u64) -> Result<HmVerdict> {
    let opts = SearchOptions {
        budget,
        ..SearchOptions::default()
    };
    ExhaustiveSubspaces.decide(pt, lin, &opts)
}
