use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::require_positive_alpha;
use crate::rational::Rational;
use crate::stability::VerdictKind;

/// Data attached to one subspace `U ⊂ V_n` and the subsheaf `F_U` it
/// generates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaAlphaInput {
    pub dim_u: u64,
    pub rk_f: Rational,
    pub dim_meet: u64,
    pub chi_f_n: Rational,
    pub p_n: Rational,
    pub alpha: Rational,
    pub l: u64,
    pub r: Rational,
}

/// `(P(n) + alpha l) rk F_U - r (dim U + alpha dim(L ∩ U))`.
pub fn theta_alpha_eval(input: &ThetaAlphaInput) -> Result<Rational> {
    require_positive_alpha(&input.alpha)?;
    let a = &input.alpha;
    Ok((&input.p_n + a * Rational::integer(input.l as i64)) * &input.rk_f
        - &input.r * (Rational::integer(input.dim_u as i64) + a * Rational::integer(input.dim_meet as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub theta: Rational,
    pub chi_f_n: Rational,
    pub dim_u: u64,
    pub proper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVerdict {
    pub kind: VerdictKind,
    /// Indices of the violating entries (unstable) or of the proper
    /// entries where both inequalities are equalities (strictly semistable).
    pub witnesses: Vec<usize>,
}

/// Semistable iff every entry has `theta >= 0` and, when `theta = 0`,
/// `chi(F_U(n)) >= dim U`; stable iff moreover each proper entry has one
/// of the two inequalities strict.
pub fn theta_verdict(entries: &[ThetaEntry]) -> ThetaVerdict {
    let dim = |e: &ThetaEntry| Rational::integer(e.dim_u as i64);
    let violating: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.theta.is_negative() || (e.theta.is_zero() && e.chi_f_n < dim(e)))
        .map(|(i, _)| i)
        .collect();
    if !violating.is_empty() {
        return ThetaVerdict {
            kind: VerdictKind::Unstable,
            witnesses: violating,
        };
    }
    let tight: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.proper && e.theta.is_zero() && e.chi_f_n == dim(e))
        .map(|(i, _)| i)
        .collect();
    ThetaVerdict {
        kind: if tight.is_empty() {
            VerdictKind::Stable
        } else {
            VerdictKind::StrictlySemistable
        },
        witnesses: tight,
    }
}
