//! Destabilizer search over named families of subpairs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{require_positive_alpha, CurveData, PairType};
use crate::linalg::{subspaces_of_dim, Field, PrimeField};
use crate::rational::Rational;
use crate::stability::{delta_alpha, section_bound, VerdictKind, Witness};
use crate::walls::{chambers, Chamber, Interval, Wall};

use super::bundle::{PairP1, PolySection};
use super::form::BinaryForm;
use super::subsheaf::{lambda_cap_h0, Saturation};

pub const DEFAULT_BUDGET: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Upper bound on `p^l`, the size of the coefficient space enumerated.
    pub budget: u64,
    /// Families to consult, by registered name.
    pub families: Vec<String>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            families: FAMILY_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// One member of a family: a subsheaf `F` with `Lambda ∩ H0(F)`, reduced
/// to its numerical type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subpair {
    pub family: String,
    #[serde(rename = "type")]
    pub ty: PairType,
    /// Splitting type of `F`.
    pub split: Vec<i64>,
    /// Sections generating `F` (before saturation, for searched subspaces).
    pub generators: Vec<PolySection>,
    /// Basis of `Lambda ∩ H0(F)`.
    pub sections: Vec<PolySection>,
}

pub trait SubpairFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn enumerate(&self, pair: &PairP1, field: &PrimeField, opts: &SearchOptions) -> Result<Vec<Subpair>>;
}

/// Saturations of the subsheaves generated by every nonzero subspace of
/// `Lambda` with coefficients in `{0, …, p-1}`.
pub struct Saturations;

/// The coordinate subbundles `O(a_1) ⊕ … ⊕ O(a_k)`, `k < rank`, which have
/// the largest degree a rank-`k` subsheaf can have.
pub struct CoordinateCaps;

fn subpair_from_saturation(pair: &PairP1, family: &str, gens: Vec<PolySection>) -> Result<Option<Subpair>> {
    let e = pair.bundle();
    let sat = Saturation::new(e, &gens)?;
    let k = sat.rank();
    if k == 0 || k == e.rank() {
        return Ok(None);
    }
    let degree = sat.degree()?;
    let split = sat.split_degrees();
    let sections = lambda_cap_h0(pair, &sat);
    Ok(Some(Subpair {
        family: family.to_string(),
        ty: PairType::int(k as i64, degree, sections.len() as u64),
        split,
        generators: gens,
        sections,
    }))
}

impl SubpairFamily for Saturations {
    fn name(&self) -> &'static str {
        "saturations"
    }

    fn description(&self) -> &'static str {
        "saturations of subsheaves generated by subspaces of Lambda over the prime field, lifted"
    }

    fn enumerate(&self, pair: &PairP1, field: &PrimeField, opts: &SearchOptions) -> Result<Vec<Subpair>> {
        let l = pair.lambda().len();
        let p = field.p() as u128;
        let needed = p.saturating_pow(l as u32);
        if needed > opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: format!("{p}^{l}"),
                budget: opts.budget,
            });
        }
        let mut coefficient_sets = Vec::new();
        for k in 1..=l {
            for u in subspaces_of_dim(field, l, k)? {
                let lifted: Vec<Vec<Rational>> = u.iter().map(|v| v.iter().map(|c| field.lift(c)).collect()).collect();
                coefficient_sets.push(lifted);
            }
        }
        let found: Vec<Option<Subpair>> = coefficient_sets
            .par_iter()
            .map(|coefs| {
                let gens = coefs
                    .iter()
                    .map(|c| PolySection::linear_combination(pair.bundle(), c, pair.lambda()))
                    .collect();
                subpair_from_saturation(pair, self.name(), gens)
            })
            .collect::<Result<_>>()?;
        Ok(found.into_iter().flatten().collect())
    }
}

impl SubpairFamily for CoordinateCaps {
    fn name(&self) -> &'static str {
        "coordinate-caps"
    }

    fn description(&self) -> &'static str {
        "coordinate subbundles O(a_1)+...+O(a_k) with their sections from Lambda"
    }

    fn enumerate(&self, pair: &PairP1, _field: &PrimeField, _opts: &SearchOptions) -> Result<Vec<Subpair>> {
        let e = pair.bundle();
        let mut out = Vec::new();
        for k in 1..e.rank() {
            let sat = Saturation::new(e, &coordinate_generators(pair, k))?;
            let sections = lambda_cap_h0(pair, &sat);
            out.push(Subpair {
                family: self.name().to_string(),
                ty: PairType::int(k as i64, e.top_degree_sum(k), sections.len() as u64),
                split: e.degrees()[..k].to_vec(),
                generators: Vec::new(),
                sections,
            });
        }
        Ok(out)
    }
}

/// `x^a_i` in the `i`-th summand for each `i < k` with `a_i >= 0`. Their
/// saturation carries the same sections as the first `k` summands, since
/// summands of negative degree have none.
fn coordinate_generators(pair: &PairP1, k: usize) -> Vec<PolySection> {
    let e = pair.bundle();
    e.degrees()[..k]
        .iter()
        .enumerate()
        .filter(|(_, a)| **a >= 0)
        .map(|(i, &a)| {
            let comps = e
                .degrees()
                .iter()
                .enumerate()
                .map(|(j, &b)| {
                    if j == i {
                        BinaryForm::monomial(a, 0, Rational::one())
                    } else {
                        BinaryForm::zero(b)
                    }
                })
                .collect();
            PolySection::new(e, comps).expect("unit section fits the bundle")
        })
        .collect()
}

pub const FAMILY_NAMES: [&str; 2] = ["saturations", "coordinate-caps"];

pub fn families() -> Vec<Box<dyn SubpairFamily>> {
    vec![Box::new(Saturations), Box::new(CoordinateCaps)]
}

pub fn family(name: &str) -> Result<Box<dyn SubpairFamily>> {
    families()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "subpair family",
            name: name.to_string(),
            known: FAMILY_NAMES.join(", "),
        })
}

/// Sanity checks that hold for every genuine subsheaf; a failure is a bug.
fn audit(pair: &PairP1, sub: &Subpair) -> Result<()> {
    let e = pair.bundle();
    let k = sub.ty.r.to_i64().unwrap_or(0) as usize;
    let cap = e.top_degree_sum(k);
    if sub.ty.d > Rational::integer(cap) {
        return Err(Error::Internal(format!(
            "rank {k} subsheaf of degree {} exceeds the cap {cap}",
            sub.ty.d
        )));
    }
    if sub.family == "saturations" {
        let top = sub.split.first().copied().unwrap_or(0);
        let h0: i64 = sub.split.iter().map(|b| (b + 1).max(0)).sum();
        let bound = section_bound(&CurveData::p1(), &sub.ty.r, &Rational::integer(top));
        if Rational::integer(h0) > bound {
            return Err(Error::Internal(format!(
                "subsheaf with splitting {:?} has more sections than allowed",
                sub.split
            )));
        }
    }
    Ok(())
}

/// All subpairs of the selected families, in a fixed enumeration order.
pub fn enumerate_subpairs(pair: &PairP1, field_order: u32, opts: &SearchOptions) -> Result<Vec<Subpair>> {
    let field = PrimeField::new(field_order)?;
    let mut out = Vec::new();
    for name in &opts.families {
        for sub in family(name)?.enumerate(pair, &field, opts)? {
            audit(pair, &sub)?;
            out.push(sub);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub family: String,
    #[serde(rename = "type")]
    pub ty: PairType,
    pub delta: Rational,
    pub split: Vec<i64>,
    pub generators: Vec<PolySection>,
    pub sections: Vec<PolySection>,
}

/// Verdict of a destabilizer search. Unless `kind` is unstable, it only
/// speaks about the families searched (`family_relative` is then true).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchVerdict {
    pub kind: VerdictKind,
    pub family_relative: bool,
    pub families: Vec<String>,
    pub family_size: usize,
    pub min_delta: Option<Rational>,
    /// The minimising subpair, smallest type first among ties.
    pub certificate: Option<Certificate>,
    /// Distinct types with margin `<= 0`.
    pub witnesses: Vec<Witness>,
}

pub fn verdict_from_subpairs(
    parent: &PairType,
    alpha: &Rational,
    subs: &[Subpair],
    families: Vec<String>,
) -> SearchVerdict {
    let deltas: Vec<Rational> = subs.iter().map(|s| delta_alpha(parent, &s.ty, alpha)).collect();
    let best = (0..subs.len()).min_by(|&i, &j| deltas[i].cmp(&deltas[j]).then_with(|| subs[i].ty.cmp(&subs[j].ty)));
    let min_delta = best.map(|i| deltas[i].clone());
    let kind = VerdictKind::from_min(min_delta.as_ref());
    let mut witnesses: Vec<Witness> = subs
        .iter()
        .zip(&deltas)
        .filter(|(_, d)| !d.is_positive())
        .map(|(s, d)| Witness {
            ty: s.ty.clone(),
            delta: d.clone(),
        })
        .collect();
    witnesses.sort_by(|a, b| a.delta.cmp(&b.delta).then_with(|| a.ty.cmp(&b.ty)));
    witnesses.dedup();
    SearchVerdict {
        kind,
        family_relative: kind != VerdictKind::Unstable,
        families,
        family_size: subs.len(),
        certificate: best.map(|i| Certificate {
            family: subs[i].family.clone(),
            ty: subs[i].ty.clone(),
            delta: deltas[i].clone(),
            split: subs[i].split.clone(),
            generators: subs[i].generators.clone(),
            sections: subs[i].sections.clone(),
        }),
        min_delta,
        witnesses,
    }
}

pub fn destabilizer_search(
    pair: &PairP1,
    alpha: &Rational,
    field_order: u32,
    opts: &SearchOptions,
) -> Result<SearchVerdict> {
    require_positive_alpha(alpha)?;
    let subs = enumerate_subpairs(pair, field_order, opts)?;
    Ok(verdict_from_subpairs(&pair.numerical_type(), alpha, &subs, opts.families.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Probe {
    Chamber { chamber: Chamber },
    Wall { alpha: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeEntry {
    #[serde(flatten)]
    pub probe: Probe,
    pub sample: Rational,
    pub verdict: SearchVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    #[serde(rename = "type")]
    pub ty: PairType,
    pub interval: Interval,
    pub walls: Vec<Wall>,
    /// Chambers and walls in increasing order of alpha.
    pub entries: Vec<RangeEntry>,
}

/// Splits the interval at the walls of the pair's type and runs the search
/// once per chamber (at its midpoint) and once at each wall. The subpair
/// family does not depend on alpha, so it is enumerated only once.
pub fn alpha_range_report(
    pair: &PairP1,
    interval: &Interval,
    field_order: u32,
    opts: &SearchOptions,
) -> Result<RangeReport> {
    let ty = pair.numerical_type();
    let report = chambers(&ty, &CurveData::p1(), interval)?;
    let subs = enumerate_subpairs(pair, field_order, opts)?;
    let judge = |a: &Rational| verdict_from_subpairs(&ty, a, &subs, opts.families.clone());
    let mut entries = Vec::new();
    let mut walls = report.walls.iter().peekable();
    for chamber in &report.chambers {
        while let Some(w) = walls.next_if(|w| w.alpha <= chamber.lo) {
            entries.push(RangeEntry {
                probe: Probe::Wall { alpha: w.alpha.clone() },
                sample: w.alpha.clone(),
                verdict: judge(&w.alpha),
            });
        }
        let sample = chamber.sample();
        entries.push(RangeEntry {
            verdict: judge(&sample),
            probe: Probe::Chamber { chamber: chamber.clone() },
            sample,
        });
    }
    for w in walls {
        entries.push(RangeEntry {
            probe: Probe::Wall { alpha: w.alpha.clone() },
            sample: w.alpha.clone(),
            verdict: judge(&w.alpha),
        });
    }
    Ok(RangeReport {
        ty,
        interval: interval.clone(),
        walls: report.walls,
        entries,
    })
}
