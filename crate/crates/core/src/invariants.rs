//! Curve invariants, numerical pair types and the rank/degree calculus
//! obtained from Hilbert polynomials.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Numerical invariants of a polarised curve.
///
/// `beta` is the negative of the minimal slope of a quotient of the
/// structure sheaf, `n_x` the least twist that is very ample and `g` the
/// dimension of the sections of the dualising sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct CurveData {
    m_x: u32,
    chi_o: i64,
    beta: Rational,
    n_x: u32,
    g: u32,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    m_x: u32,
    chi_o: i64,
    beta: Rational,
    n_x: u32,
    g: u32,
}

impl TryFrom<RawCurve> for CurveData {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        CurveData::new(raw.m_x, raw.chi_o, raw.beta, raw.n_x, raw.g)
    }
}

impl From<CurveData> for RawCurve {
    fn from(c: CurveData) -> Self {
        RawCurve {
            m_x: c.m_x,
            chi_o: c.chi_o,
            beta: c.beta,
            n_x: c.n_x,
            g: c.g,
        }
    }
}

impl CurveData {
    pub fn new(m_x: u32, chi_o: i64, beta: Rational, n_x: u32, g: u32) -> Result<Self> {
        if m_x == 0 {
            return Err(Error::invalid("m_x must be positive"));
        }
        if n_x == 0 {
            return Err(Error::invalid("n_x must be positive"));
        }
        if beta.is_negative() {
            return Err(Error::invalid(format!("beta must be >= 0, got {beta}")));
        }
        if !beta.is_multiple_of_recip(m_x) {
            return Err(Error::invalid(format!(
                "m_x * beta must be an integer (m_x = {m_x}, beta = {beta})"
            )));
        }
        Ok(CurveData {
            m_x,
            chi_o,
            beta,
            n_x,
            g,
        })
    }

    /// The projective line with its hyperplane polarisation.
    pub fn p1() -> Self {
        CurveData {
            m_x: 1,
            chi_o: 1,
            beta: Rational::zero(),
            n_x: 1,
            g: 0,
        }
    }

    /// A smooth curve of genus `g`; `n_x` must be supplied since it depends
    /// on the chosen polarisation.
    pub fn smooth(g: u32, n_x: u32) -> Result<Self> {
        CurveData::new(1, 1 - g as i64, Rational::zero(), n_x, g)
    }

    /// Parses `P1`, `smooth:<g>:<n_x>` or `genus:<g>:<n_x>`.
    pub fn from_preset(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        if lower == "p1" {
            return Ok(CurveData::p1());
        }
        let parts: Vec<&str> = lower.split(':').collect();
        match parts.as_slice() {
            [kind, g, n_x] if *kind == "smooth" || *kind == "genus" => {
                let g = g
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad genus in curve preset '{name}'")))?;
                let n_x = n_x
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad n_x in curve preset '{name}'")))?;
                CurveData::smooth(g, n_x)
            }
            _ => Err(Error::invalid(format!(
                "unknown curve preset '{name}' (use P1 or smooth:<g>:<n_x>)"
            ))),
        }
    }

    pub fn m_x(&self) -> u32 {
        self.m_x
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn n_x(&self) -> u32 {
        self.n_x
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// chi(O_X(n)) = m_X n + chi(O_X).
    pub fn chi_twist(&self, n: i64) -> Rational {
        Rational::integer(self.m_x as i64 * n + self.chi_o)
    }
}

/// Numerical type `(r, d, l)` of a pair: rank, degree and number of
/// sections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairType {
    pub r: Rational,
    pub d: Rational,
    pub l: u64,
}

impl PairType {
    pub fn new(r: Rational, d: Rational, l: u64) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::invalid(format!("rank must be >= 0, got {r}")));
        }
        Ok(PairType { r, d, l })
    }

    /// Integer type, the common case on integral curves.
    pub fn int(r: i64, d: i64, l: u64) -> Self {
        PairType::new(Rational::integer(r), Rational::integer(d), l)
            .expect("non-negative integer rank")
    }

    pub fn zero() -> Self {
        PairType::int(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.d.is_zero() && self.l == 0
    }

    /// Checks that rank and degree are multiples of `1/m_X`.
    pub fn check_on(&self, curve: &CurveData) -> Result<()> {
        if !self.r.is_multiple_of_recip(curve.m_x()) || !self.d.is_multiple_of_recip(curve.m_x())
        {
            return Err(Error::invalid(format!(
                "type {self} is not in (1/{})Z x (1/{})Z",
                curve.m_x(),
                curve.m_x()
            )));
        }
        Ok(())
    }

    /// Componentwise difference, if `other` fits inside `self`.
    pub fn checked_sub(&self, other: &PairType) -> Option<PairType> {
        if other.l > self.l || other.r > self.r {
            return None;
        }
        Some(PairType {
            r: &self.r - &other.r,
            d: &self.d - &other.d,
            l: self.l - other.l,
        })
    }
}

impl Add for &PairType {
    type Output = PairType;
    fn add(self, rhs: &PairType) -> PairType {
        PairType {
            r: &self.r + &rhs.r,
            d: &self.d + &rhs.d,
            l: self.l + rhs.l,
        }
    }
}

impl Sub for &PairType {
    type Output = PairType;

    /// Panics if `rhs` has more sections or larger rank than `self`.
    fn sub(self, rhs: &PairType) -> PairType {
        self.checked_sub(rhs).expect("subtype fits in parent")
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.d, self.l)
    }
}

impl FromStr for PairType {
    type Err = Error;

    /// Parses `r,d,l`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [r, d, l] = parts.as_slice() else {
            return Err(Error::invalid(format!("type '{s}' must have the form r,d,l")));
        };
        let l = l
            .parse::<u64>()
            .map_err(|_| Error::invalid(format!("l in '{s}' must be a non-negative integer")))?;
        PairType::new(r.parse()?, d.parse()?, l)
    }
}

/// Rank and degree of a sheaf with Hilbert polynomial `m n + chi`.
pub fn rank_degree_from_hilbert(m: i64, chi: i64, curve: &CurveData) -> Result<(Rational, Rational)> {
    if m < 0 {
        return Err(Error::invalid("leading coefficient must be >= 0"));
    }
    let r = Rational::integer(m) / Rational::integer(curve.m_x() as i64);
    let d = Rational::integer(chi) - &r * Rational::integer(curve.chi_o());
    Ok((r, d))
}

/// chi(E(n)) for a sheaf of the given rank and degree.
pub fn hilbert_value(t: &PairType, curve: &CurveData, n: i64) -> Rational {
    &t.r * curve.chi_twist(n) + &t.d
}

/// Slope `d / r`.
pub fn mu(t: &PairType) -> Result<Rational> {
    if t.r.is_zero() {
        return Err(Error::ZeroRank);
    }
    Ok(&t.d / &t.r)
}

pub(crate) fn require_positive_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveAlpha(alpha.to_string()));
    }
    Ok(())
}

/// alpha-slope `(d + alpha l) / r`.
pub fn mu_alpha(t: &PairType, alpha: &Rational) -> Result<Rational> {
    if t.r.is_zero() {
        return Err(Error::ZeroRank);
    }
    require_positive_alpha(alpha)?;
    Ok((&t.d + alpha * Rational::integer(t.l as i64)) / &t.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn curve(m_x: u32, chi_o: i64) -> CurveData {
        CurveData::new(m_x, chi_o, Rational::zero(), 1, 0).unwrap()
    }

    #[test]
    fn rank_degree_examples() {
        let p1 = CurveData::p1();
        assert_eq!(rank_degree_from_hilbert(1, 3, &p1).unwrap(), (q(1, 1), q(2, 1)));
        assert_eq!(rank_degree_from_hilbert(2, 2, &p1).unwrap(), (q(2, 1), q(0, 1)));
        assert_eq!(
            rank_degree_from_hilbert(1, 0, &curve(2, -1)).unwrap(),
            (q(1, 2), q(1, 2))
        );
        assert!(rank_degree_from_hilbert(-1, 0, &p1).is_err());
    }

    #[test]
    fn hilbert_value_examples() {
        let p1 = CurveData::p1();
        assert_eq!(hilbert_value(&PairType::int(2, 3, 1), &p1, 5), q(15, 1));
        assert_eq!(hilbert_value(&PairType::int(1, 1, 0), &curve(2, 0), 3), q(7, 1));
        assert_eq!(hilbert_value(&PairType::int(1, -2, 0), &p1, 0), q(-1, 1));
    }

    #[test]
    fn slope_examples() {
        assert_eq!(mu(&PairType::int(2, 3, 0)).unwrap(), q(3, 2));
        assert_eq!(mu(&PairType::int(1, 0, 0)).unwrap(), q(0, 1));
        let half = PairType::new(q(1, 2), q(1, 2), 0).unwrap();
        assert_eq!(mu(&half).unwrap(), q(1, 1));
        assert_eq!(mu(&PairType::int(0, 1, 0)), Err(Error::ZeroRank));
        assert_eq!(Error::ZeroRank.to_string(), "slope undefined for rank 0");
    }

    #[test]
    fn alpha_slope_examples() {
        assert_eq!(mu_alpha(&PairType::int(2, 0, 2), &q(1, 2)).unwrap(), q(1, 2));
        for a in [q(1, 7), q(1, 1), q(9, 2)] {
            assert_eq!(mu_alpha(&PairType::int(1, 3, 0), &a).unwrap(), q(3, 1));
        }
        assert_eq!(mu_alpha(&PairType::int(3, 2, 4), &q(3, 4)).unwrap(), q(5, 3));
        assert!(matches!(
            mu_alpha(&PairType::int(1, 0, 1), &q(0, 1)),
            Err(Error::NonPositiveAlpha(_))
        ));
        assert!(mu_alpha(&PairType::int(1, 0, 1), &q(-1, 2)).is_err());
        assert_eq!(mu_alpha(&PairType::int(0, 1, 1), &q(1, 1)), Err(Error::ZeroRank));
    }

    #[test]
    fn curve_validation() {
        assert!(CurveData::new(0, 1, Rational::zero(), 1, 0).is_err());
        assert!(CurveData::new(1, 1, q(-1, 1), 1, 0).is_err());
        assert!(CurveData::new(2, 1, q(1, 3), 1, 0).is_err());
        assert!(CurveData::new(2, 1, q(1, 2), 1, 0).is_ok());
        assert_eq!(CurveData::from_preset("P1").unwrap(), CurveData::p1());
        let c = CurveData::from_preset("smooth:2:3").unwrap();
        assert_eq!((c.chi_o(), c.g(), c.n_x()), (-1, 2, 3));
        assert!(CurveData::from_preset("elliptic").is_err());
    }

    #[test]
    fn json_shapes() {
        let json = serde_json::to_string(&CurveData::p1()).unwrap();
        assert_eq!(json, r#"{"m_x":1,"chi_o":1,"beta":"0","n_x":1,"g":0}"#);
        let t: PairType = serde_json::from_str(r#"{"r":"1/2","d":"-3/2","l":2}"#).unwrap();
        assert_eq!(t, PairType::new(q(1, 2), q(-3, 2), 2).unwrap());
        assert_eq!(
            serde_json::to_string(&PairType::int(2, 3, 1)).unwrap(),
            r#"{"r":"2","d":"3","l":1}"#
        );
        assert!(serde_json::from_str::<CurveData>(
            r#"{"m_x":1,"chi_o":1,"beta":"-1","n_x":1,"g":0}"#
        )
        .is_err());
    }

    #[test]
    fn type_parsing() {
        assert_eq!("2,3,1".parse::<PairType>().unwrap(), PairType::int(2, 3, 1));
        assert_eq!("(1,-1,1)".parse::<PairType>().unwrap(), PairType::int(1, -1, 1));
        assert!("1,2".parse::<PairType>().is_err());
        assert!("-1,2,0".parse::<PairType>().is_err());
        assert!("1,2,-1".parse::<PairType>().is_err());
        let t = "1/2,1/2,0".parse::<PairType>().unwrap();
        assert!(t.check_on(&curve(2, 0)).is_ok());
        assert!(t.check_on(&CurveData::p1()).is_err());
    }

    fn arb_curve() -> impl Strategy<Value = CurveData> {
        (1u32..5, -4i64..4, 0i64..6, 1u32..4).prop_map(|(m, chi, b, n)| {
            CurveData::new(m, chi, q(b, m as i64), n, 0).unwrap()
        })
    }

    proptest! {
        #[test]
        fn alpha_slope_is_affine(r in 1i64..6, d in -20i64..20, l in 0u64..6,
                                 an in 1i64..40, ad in 1i64..9) {
            let t = PairType::int(r, d, l);
            let alpha = q(an, ad);
            let lhs = mu_alpha(&t, &alpha).unwrap();
            let rhs = mu(&t).unwrap() + &alpha * q(l as i64, r);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hilbert_steps_by_rank(curve in arb_curve(), rm in 0i64..8, dm in -20i64..20,
                                 n in -10i64..10) {
            let m = curve.m_x() as i64;
            let t = PairType::new(q(rm, m), q(dm, m), 0).unwrap();
            let step = hilbert_value(&t, &curve, n + 1) - hilbert_value(&t, &curve, n);
            prop_assert_eq!(step, &t.r * Rational::integer(m));
        }

        #[test]
        fn hilbert_round_trip(curve in arb_curve(), rm in 0i64..8, dm in -20i64..20) {
            let m = curve.m_x() as i64;
            let t = PairType::new(q(rm, m), q(dm, m), 0).unwrap();
            let lead = (&t.r * Rational::integer(m)).to_i64().unwrap();
            let chi = hilbert_value(&t, &curve, 0);
            // chi is an integer: r chi_O + d lies in (1/m_X)Z in general, so
            // only test the integral cases.
            prop_assume!(chi.is_integer());
            let (r, d) = rank_degree_from_hilbert(lead, chi.to_i64().unwrap(), &curve).unwrap();
            prop_assert!(r.is_multiple_of_recip(curve.m_x()));
            prop_assert!(d.is_multiple_of_recip(curve.m_x()));
            prop_assert_eq!(r, t.r);
            prop_assert_eq!(d, t.d);
        }
    }
}
