//! Critical values of alpha, chamber decomposition and numerical
//! Jordan-Hölder data for a fixed type.

use std::collections::BTreeMap;

use num::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{mu_alpha, CurveData, PairType};
use crate::rational::Rational;
use crate::stability::{existence_check, section_bound};

/// Half-open search interval `(lo, hi]` for alpha.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo.is_negative() {
            return Err(Error::invalid(format!("interval start {lo} must be >= 0")));
        }
        if hi <= lo {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        *alpha > self.lo && *alpha <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub alpha: Rational,
    pub witnesses: Vec<PairType>,
}

/// Open interval `(lo, hi)`, or `(lo, hi]` when `hi_closed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub lo: Rational,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Chamber {
    /// A rational strictly inside the chamber.
    pub fn sample(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::integer(2)
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        *alpha > self.lo && (*alpha < self.hi || (self.hi_closed && *alpha == self.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub interval: Interval,
    pub walls: Vec<Wall>,
    pub chambers: Vec<Chamber>,
}

fn rank_steps(t: &PairType, curve: &CurveData) -> Result<i64> {
    if !t.r.is_positive() {
        return Err(Error::ZeroRank);
    }
    t.check_on(curve)?;
    (&t.r * Rational::integer(curve.m_x() as i64))
        .to_i64()
        .ok_or_else(|| Error::invalid("rank too large"))
}

/// Whether a positive-rank type can occur as a Jordan-Hölder factor of a
/// semistable object of alpha-slope `slope`: factors with sections satisfy
/// `d/r >= -beta`, and their section count respects the bound for sheaves
/// whose subsheaves have slope at most `slope`.
pub fn admissible_factor(factor: &PairType, slope: &Rational, curve: &CurveData) -> bool {
    if factor.l == 0 {
        return true;
    }
    if &factor.d / &factor.r < -curve.beta() {
        return false;
    }
    let bound = section_bound(curve, &factor.r, slope).floor();
    num::BigInt::from(factor.l) <= bound
}

/// Whether the necessary existence conditions leave room for semistable
/// pairs of type `parent` at `alpha`; walls elsewhere are vacuous.
fn parent_can_be_semistable(parent: &PairType, alpha: &Rational, curve: &CurveData) -> Result<bool> {
    Ok(existence_check(parent, alpha, curve)?.feasible_semistable)
}

/// Solutions `(alpha, sub)` of `mu_alpha(sub) = mu_alpha(parent)` with
/// `alpha` in the interval, before any feasibility filtering.
pub fn raw_wall_solutions(
    parent: &PairType,
    curve: &CurveData,
    interval: &Interval,
) -> Result<Vec<(Rational, PairType)>> {
    let steps = rank_steps(parent, curve)?;
    let m = Rational::integer(curve.m_x() as i64);
    let cells: Vec<(i64, u64)> = (1..steps)
        .flat_map(|j| (0..=parent.l).map(move |l| (j, l)))
        .collect();

    let mut out: Vec<(Rational, PairType)> = cells
        .par_iter()
        .flat_map_iter(|&(j, sub_l)| {
            let sub_r = Rational::integer(j) / &m;
            let denom = &parent.r * Rational::integer(sub_l as i64)
                - &sub_r * Rational::integer(parent.l as i64);
            let mut found = Vec::new();
            if denom.is_zero() {
                return found;
            }
            // alpha(d') = (r' d - r d') / denom is monotone in d'.
            let d_at = |alpha: &Rational| (&sub_r * &parent.d - alpha * &denom) / &parent.r;
            let (a, b) = (d_at(&interval.lo), d_at(&interval.hi));
            let (lo_d, hi_d) = if a <= b { (a, b) } else { (b, a) };
            let k_lo = (&lo_d * &m).ceil().to_i64().unwrap_or(i64::MIN);
            let k_hi = (&hi_d * &m).floor().to_i64().unwrap_or(i64::MAX);
            for k in k_lo..=k_hi {
                let sub_d = Rational::integer(k) / &m;
                let alpha = (&sub_r * &parent.d - &parent.r * &sub_d) / &denom;
                if interval.contains(&alpha) {
                    found.push((
                        alpha,
                        PairType {
                            r: sub_r.clone(),
                            d: sub_d,
                            l: sub_l,
                        },
                    ));
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Walls of `parent` inside `interval`, ascending, each with its sorted
/// witness subtypes. Values of alpha at which the parent itself fails the
/// existence conditions are skipped.
pub fn wall_candidates(
    parent: &PairType,
    curve: &CurveData,
    interval: &Interval,
) -> Result<Vec<Wall>> {
    let mut grouped: BTreeMap<Rational, Vec<PairType>> = BTreeMap::new();
    for (alpha, sub) in raw_wall_solutions(parent, curve, interval)? {
        if !parent_can_be_semistable(parent, &alpha, curve)? {
            continue;
        }
        let slope = mu_alpha(parent, &alpha)?;
        let complement = parent - &sub;
        if admissible_factor(&sub, &slope, curve) && admissible_factor(&complement, &slope, curve)
        {
            grouped.entry(alpha).or_default().push(sub);
        }
    }
    Ok(grouped
        .into_iter()
        .map(|(alpha, mut witnesses)| {
            witnesses.sort();
            Wall { alpha, witnesses }
        })
        .collect())
}

/// Splits the interval at the given sorted wall positions.
pub fn chambers_between(interval: &Interval, walls: &[Rational]) -> Vec<Chamber> {
    let mut chambers = Vec::with_capacity(walls.len() + 1);
    let mut lo = interval.lo.clone();
    for w in walls {
        chambers.push(Chamber {
            lo: lo.clone(),
            hi: w.clone(),
            hi_closed: false,
        });
        lo = w.clone();
    }
    if lo < interval.hi {
        chambers.push(Chamber {
            lo,
            hi: interval.hi.clone(),
            hi_closed: true,
        });
    }
    chambers
}

pub fn chambers(parent: &PairType, curve: &CurveData, interval: &Interval) -> Result<ChamberReport> {
    let walls = wall_candidates(parent, curve, interval)?;
    let positions: Vec<Rational> = walls.iter().map(|w| w.alpha.clone()).collect();
    Ok(ChamberReport {
        interval: interval.clone(),
        chambers: chambers_between(interval, &positions),
        walls,
    })
}

/// All multisets of at least two admissible positive-rank types of the
/// same alpha-slope as `parent` summing to `parent`, each listed in
/// ascending order. `max_parts` defaults to `floor(m_X r)`.
pub fn numerical_jh(
    parent: &PairType,
    alpha: &Rational,
    curve: &CurveData,
    max_parts: Option<usize>,
) -> Result<Vec<Vec<PairType>>> {
    let steps = rank_steps(parent, curve)?;
    let slope = mu_alpha(parent, alpha)?;
    let max_parts = max_parts.unwrap_or(steps as usize);
    if max_parts < 2 {
        return Err(Error::invalid("max_parts must be at least 2"));
    }
    if !parent_can_be_semistable(parent, alpha, curve)? {
        return Ok(Vec::new());
    }
    let m = Rational::integer(curve.m_x() as i64);
    let mut factors = Vec::new();
    for j in 1..steps {
        let r = Rational::integer(j) / &m;
        for l in 0..=parent.l {
            let d = &slope * &r - alpha * Rational::integer(l as i64);
            if !d.is_multiple_of_recip(curve.m_x()) {
                continue;
            }
            let f = PairType { r: r.clone(), d, l };
            if admissible_factor(&f, &slope, curve) {
                factors.push(f);
            }
        }
    }
    factors.sort();

    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_decompositions(&factors, 0, parent.clone(), max_parts, &mut current, &mut out);
    Ok(out)
}

fn extend_decompositions(
    factors: &[PairType],
    start: usize,
    remaining: PairType,
    max_parts: usize,
    current: &mut Vec<PairType>,
    out: &mut Vec<Vec<PairType>>,
) {
    if remaining.r.is_zero() {
        if remaining.l == 0 && remaining.d.is_zero() && current.len() >= 2 {
            out.push(current.clone());
        }
        return;
    }
    if current.len() == max_parts {
        return;
    }
    for (i, f) in factors.iter().enumerate().skip(start) {
        if let Some(rest) = remaining.checked_sub(f) {
            current.push(f.clone());
            extend_decompositions(factors, i, rest, max_parts, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::stability::delta_alpha;
    use proptest::prelude::*;

    fn t(r: i64, d: i64, l: u64) -> PairType {
        PairType::int(r, d, l)
    }

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(q(lo, 1), q(hi, 1)).unwrap()
    }

    fn alphas(walls: &[Wall]) -> Vec<Rational> {
        walls.iter().map(|w| w.alpha.clone()).collect()
    }

    #[test]
    fn walls_of_rank_two_types() {
        let p1 = CurveData::p1();
        let walls = wall_candidates(&t(2, 3, 1), &p1, &iv(0, 10)).unwrap();
        assert_eq!(alphas(&walls), vec![q(1, 1), q(3, 1)]);
        assert_eq!(walls[0].witnesses, vec![t(1, 1, 1), t(1, 2, 0)]);
        assert_eq!(walls[1].witnesses, vec![t(1, 0, 1), t(1, 3, 0)]);

        let walls = wall_candidates(&t(2, 2, 1), &p1, &iv(0, 10)).unwrap();
        assert_eq!(alphas(&walls), vec![q(2, 1)]);
        // the unfiltered equation also has solutions at 4, 6, 8, 10
        let raw = raw_wall_solutions(&t(2, 2, 1), &p1, &iv(0, 10)).unwrap();
        assert!(raw.iter().any(|(a, s)| *a == q(4, 1) && *s == t(1, 3, 0)));

        assert!(wall_candidates(&t(1, 5, 2), &p1, &iv(0, 100)).unwrap().is_empty());
    }

    #[test]
    fn empty_interval_is_an_error() {
        assert!(matches!(
            Interval::new(q(10, 1), q(0, 1)),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(Interval::new(q(1, 1), q(1, 1)).is_err());
        assert!(Interval::new(q(-1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn chamber_examples() {
        let p1 = CurveData::p1();
        let rep = chambers(&t(2, 3, 1), &p1, &iv(0, 10)).unwrap();
        let bounds: Vec<_> = rep
            .chambers
            .iter()
            .map(|c| (c.lo.clone(), c.hi.clone(), c.hi_closed))
            .collect();
        assert_eq!(
            bounds,
            vec![
                (q(0, 1), q(1, 1), false),
                (q(1, 1), q(3, 1), false),
                (q(3, 1), q(10, 1), true)
            ]
        );

        let rep = chambers(&t(1, 5, 2), &p1, &iv(0, 10)).unwrap();
        assert_eq!(rep.chambers.len(), 1);
        assert!(rep.chambers[0].hi_closed);

        let rep = chambers(&t(2, 2, 1), &p1, &iv(0, 3)).unwrap();
        assert_eq!(rep.chambers.len(), 2);
        assert_eq!((rep.chambers[0].hi.clone(), rep.chambers[1].hi.clone()), (q(2, 1), q(3, 1)));

        // a wall on the closed end leaves no trailing chamber
        let rep = chambers(&t(2, 2, 1), &p1, &iv(0, 2)).unwrap();
        assert_eq!(rep.chambers.len(), 1);
        assert!(!rep.chambers[0].hi_closed);
    }

    #[test]
    fn jh_examples() {
        let p1 = CurveData::p1();
        assert_eq!(
            numerical_jh(&t(2, 2, 1), &q(2, 1), &p1, None).unwrap(),
            vec![vec![t(1, 0, 1), t(1, 2, 0)]]
        );
        assert_eq!(
            numerical_jh(&t(2, 3, 1), &q(1, 1), &p1, None).unwrap(),
            vec![vec![t(1, 1, 1), t(1, 2, 0)]]
        );
        assert!(numerical_jh(&t(2, 3, 1), &q(2, 1), &p1, None).unwrap().is_empty());
        assert!(numerical_jh(&t(2, 3, 1), &q(1, 1), &p1, Some(1)).is_err());
    }

    #[test]
    fn jh_with_three_parts() {
        // no sections: every split into slope-2 pieces counts
        let p1 = CurveData::p1();
        let parts = numerical_jh(&t(3, 6, 0), &q(1, 1), &p1, None).unwrap();
        assert!(parts.contains(&vec![t(1, 2, 0), t(1, 2, 0), t(1, 2, 0)]));
        assert!(parts.contains(&vec![t(1, 2, 0), t(2, 4, 0)]));
        assert!(numerical_jh(&t(3, 6, 0), &q(1, 1), &p1, Some(2))
            .unwrap()
            .iter()
            .all(|p| p.len() == 2));
    }

    #[test]
    fn fractional_ranks_on_non_integral_curves() {
        let curve = CurveData::new(2, 0, Rational::zero(), 1, 0).unwrap();
        let parent = t(1, 1, 1);
        let walls = wall_candidates(&parent, &curve, &iv(0, 10)).unwrap();
        assert!(!walls.is_empty());
        for w in &walls {
            for s in &w.witnesses {
                assert_eq!(s.r, q(1, 2));
                assert!(s.d.is_multiple_of_recip(2));
            }
        }
    }

    proptest! {
        #[test]
        fn witnesses_have_zero_margin(r in 1i64..5, d in -6i64..12, l in 0u64..4) {
            let parent = t(r, d, l);
            let p1 = CurveData::p1();
            for w in wall_candidates(&parent, &p1, &iv(0, 20)).unwrap() {
                prop_assert!(iv(0, 20).contains(&w.alpha));
                prop_assert!(!w.witnesses.is_empty());
                for s in &w.witnesses {
                    prop_assert!(delta_alpha(&parent, s, &w.alpha).is_zero());
                    prop_assert!(s.r.is_positive() && s.r < parent.r && s.l <= parent.l);
                }
            }
        }

        #[test]
        fn no_wall_above_alpha_ceiling(r in 2i64..5, d in 0i64..12, l in 1u64..4) {
            prop_assume!((l as i64) < r);
            let parent = t(r, d, l);
            let ceiling = (q(d, r)) / (q(1, 1) - q(l as i64, r));
            for w in wall_candidates(&parent, &CurveData::p1(), &iv(0, 40)).unwrap() {
                prop_assert!(w.alpha <= ceiling);
            }
        }

        #[test]
        fn equation_solutions_commute_with_twist(r in 1i64..4, d in -6i64..8, l in 0u64..3,
                                                 c in -3i64..4) {
            let p1 = CurveData::p1();
            let parent = t(r, d, l);
            let twisted = t(r, d + r * c, l);
            let shift = |s: &PairType| PairType {
                r: s.r.clone(),
                d: &s.d + &s.r * Rational::integer(c),
                l: s.l,
            };
            let a: Vec<_> = raw_wall_solutions(&parent, &p1, &iv(0, 15)).unwrap()
                .into_iter().map(|(al, s)| (al, shift(&s))).collect();
            let b = raw_wall_solutions(&twisted, &p1, &iv(0, 15)).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn positive_twist_keeps_filtered_walls(r in 1i64..4, d in -4i64..8, l in 0u64..3,
                                               c in 0i64..3) {
            let p1 = CurveData::p1();
            let twisted = wall_candidates(&t(r, d + r * c, l), &p1, &iv(0, 15)).unwrap();
            for w in wall_candidates(&t(r, d, l), &p1, &iv(0, 15)).unwrap() {
                let tw = twisted.iter().find(|x| x.alpha == w.alpha);
                prop_assert!(tw.is_some());
                for s in &w.witnesses {
                    let shifted = PairType { r: s.r.clone(), d: &s.d + &s.r * Rational::integer(c), l: s.l };
                    prop_assert!(tw.unwrap().witnesses.contains(&shifted));
                }
            }
        }

        #[test]
        fn jh_factors_sum_to_parent(r in 2i64..5, d in -2i64..10, l in 0u64..4,
                                    an in 1i64..20, ad in 1i64..4) {
            let parent = t(r, d, l);
            let alpha = q(an, ad);
            let slope = mu_alpha(&parent, &alpha).unwrap();
            for parts in numerical_jh(&parent, &alpha, &CurveData::p1(), None).unwrap() {
                prop_assert!(parts.len() >= 2);
                let total = parts.iter().fold(PairType::zero(), |acc, p| &acc + p);
                prop_assert_eq!(&total, &parent);
                for p in &parts {
                    prop_assert_eq!(mu_alpha(p, &alpha).unwrap(), slope.clone());
                }
            }
        }
    }
}
