//! The alpha-(semi)stability inequality for pairs and their subobjects,
//! section bounds and the necessary conditions for existence.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{hilbert_value, require_positive_alpha, CurveData, PairType};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    // Declared from worst to best so that `min` picks the weaker verdict.
    Unstable,
    StrictlySemistable,
    Stable,
}

impl VerdictKind {
    /// Verdict from the sign of the minimal margin over a family.
    pub fn from_min(min: Option<&Rational>) -> Self {
        match min.map(Rational::sign) {
            Some(Ordering::Less) => VerdictKind::Unstable,
            Some(Ordering::Equal) => VerdictKind::StrictlySemistable,
            _ => VerdictKind::Stable,
        }
    }

    pub fn is_semistable(self) -> bool {
        self != VerdictKind::Unstable
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Stable => "stable",
            VerdictKind::StrictlySemistable => "strictly_semistable",
            VerdictKind::Unstable => "unstable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "type")]
    pub ty: PairType,
    pub delta: Rational,
}

/// Stability verdict relative to an explicit family of subobject types.
///
/// Witnesses are the subobjects whose margin is `<= 0`, sorted by margin
/// and then by type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witnesses: Vec<Witness>,
}

/// Local data of a subsheaf `F`: rank, chi(F(n)) and `dim (Lambda cap H0(F))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsheafData {
    pub rk_f: Rational,
    pub chi_f_n: Rational,
    pub dim_meet: u64,
}

fn lr(n: u64) -> Rational {
    Rational::integer(n as i64)
}

/// `(d + alpha l) r' - r (d' + alpha l')`; non-negative exactly when the
/// subobject does not destabilise the parent.
pub fn delta_alpha(parent: &PairType, sub: &PairType, alpha: &Rational) -> Rational {
    (&parent.d + alpha * lr(parent.l)) * &sub.r - &parent.r * (&sub.d + alpha * lr(sub.l))
}

pub fn is_proper(parent: &PairType, sub: &PairType) -> bool {
    !sub.is_zero() && sub != parent
}

pub fn verdict_against(parent: &PairType, alpha: &Rational, subs: &[PairType]) -> Result<Verdict> {
    require_positive_alpha(alpha)?;
    if parent.r.is_zero() {
        return Err(Error::ZeroRank);
    }
    let mut witnesses = Vec::new();
    for sub in subs {
        if !is_proper(parent, sub) {
            return Err(Error::NotProper(sub.to_string()));
        }
        let delta = delta_alpha(parent, sub, alpha);
        if !delta.is_positive() {
            witnesses.push(Witness {
                ty: sub.clone(),
                delta,
            });
        }
    }
    witnesses.sort_by(|a, b| a.delta.cmp(&b.delta).then_with(|| a.ty.cmp(&b.ty)));
    witnesses.dedup();
    let kind = VerdictKind::from_min(witnesses.first().map(|w| &w.delta));
    Ok(Verdict { kind, witnesses })
}

/// Upper bound for `dim H0(E)` when every nonzero subsheaf of `E` has slope
/// at most `b`. Zero means sections are forced to vanish.
pub fn section_bound(curve: &CurveData, rk: &Rational, b: &Rational) -> Rational {
    let shifted = b + curve.beta();
    if shifted.is_negative() {
        return Rational::zero();
    }
    rk * (shifted + Rational::integer(curve.m_x() as i64 * curve.n_x() as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constraint {
    /// `l > 0` forces `d/r >= -beta`.
    #[serde(rename = "i")]
    SectionSlope,
    /// `0 < l < r` forces `alpha (1 - l/r) <= d/r + beta`.
    #[serde(rename = "ii")]
    AlphaCeiling,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::SectionSlope => "i",
            Constraint::AlphaCeiling => "ii",
        })
    }
}

/// Outcome of the necessary conditions for a semistable (resp. stable)
/// pair of a given type. "Feasible" only means "not excluded".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible_semistable: bool,
    pub feasible_stable: bool,
    pub violated: Vec<Constraint>,
}

pub fn existence_check(t: &PairType, alpha: &Rational, curve: &CurveData) -> Result<Feasibility> {
    if t.r.is_zero() {
        return Err(Error::ZeroRank);
    }
    require_positive_alpha(alpha)?;
    let slope = &t.d / &t.r;
    let mut violated = Vec::new();
    let mut strict_ok = true;

    if t.l > 0 && slope < -curve.beta() {
        violated.push(Constraint::SectionSlope);
    }
    let l = lr(t.l);
    if t.l > 0 && l < t.r {
        let lhs = alpha * (Rational::one() - &l / &t.r);
        let rhs = &slope + curve.beta();
        match lhs.cmp(&rhs) {
            Ordering::Greater => violated.push(Constraint::AlphaCeiling),
            Ordering::Equal => strict_ok = false,
            Ordering::Less => {}
        }
    }
    let feasible_semistable = violated.is_empty();
    Ok(Feasibility {
        feasible_semistable,
        feasible_stable: feasible_semistable && strict_ok,
        violated,
    })
}

/// The twisted form of the stability margin:
/// `(P(n) + alpha l) rk F - r (chi(F(n)) + alpha dim(Lambda cap H0(F)))`.
pub fn twisted_margin(
    parent: &PairType,
    sub: &SubsheafData,
    alpha: &Rational,
    n: i64,
    curve: &CurveData,
) -> Rational {
    let p_n = hilbert_value(parent, curve, n);
    (p_n + alpha * lr(parent.l)) * &sub.rk_f - &parent.r * (&sub.chi_f_n + alpha * lr(sub.dim_meet))
}
