use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::PairType;
use crate::linalg::{rank, RationalField};
use crate::rational::Rational;

use super::form::BinaryForm;

/// `O(a_1) ⊕ … ⊕ O(a_r)` on the projective line, with `a_1 >= … >= a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "split degrees {degrees:?} must be non-increasing"
            )));
        }
        Ok(SplitBundle { degrees })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `Σ_{i <= k} a_i`, the largest degree of a rank-`k` subsheaf.
    pub fn top_degree_sum(&self, k: usize) -> i64 {
        self.degrees[..k].iter().sum()
    }

    /// Dimension of `H0(O(a + n))` for each summand.
    pub fn level_dims(&self, n: i64) -> Vec<usize> {
        self.degrees.iter().map(|a| (a + n + 1).max(0) as usize).collect()
    }

    /// `dim H0(E(n))`.
    pub fn h0_twist(&self, n: i64) -> usize {
        self.level_dims(n).iter().sum()
    }
}

/// `dim H0(E) = Σ_{a_i >= 0} (a_i + 1)`.
pub fn h0_split(e: &SplitBundle) -> usize {
    e.h0_twist(0)
}

/// A global section of a twist `E(n)`: one form of degree `a_i + n` per
/// summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolySection {
    components: Vec<BinaryForm>,
}

impl PolySection {
    pub fn new(bundle: &SplitBundle, components: Vec<BinaryForm>) -> Result<Self> {
        Self::at_twist(bundle, 0, components)
    }

    pub fn at_twist(bundle: &SplitBundle, n: i64, components: Vec<BinaryForm>) -> Result<Self> {
        if components.len() != bundle.rank() {
            return Err(Error::invalid(format!(
                "section has {} components for a rank {} bundle",
                components.len(),
                bundle.rank()
            )));
        }
        for (c, a) in components.iter().zip(bundle.degrees()) {
            if c.degree() != a + n && !c.is_zero() {
                return Err(Error::invalid(format!(
                    "component {c} should have degree {}",
                    a + n
                )));
            }
        }
        let components = components
            .into_iter()
            .zip(bundle.degrees())
            .map(|(c, a)| if c.degree() == a + n { c } else { BinaryForm::zero(a + n) })
            .collect();
        Ok(PolySection { components })
    }

    pub fn components(&self) -> &[BinaryForm] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BinaryForm::is_zero)
    }

    /// Coordinates in the monomial basis of `H0(E(n))`, summand by summand.
    pub fn coords(&self) -> Vec<Rational> {
        self.components.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn from_coords(bundle: &SplitBundle, n: i64, coords: &[Rational]) -> Self {
        let mut off = 0;
        let components = bundle
            .degrees()
            .iter()
            .map(|a| {
                let len = (a + n + 1).max(0) as usize;
                let f = BinaryForm::new(a + n, coords[off..off + len].to_vec())
                    .expect("coordinate slice matches degree");
                off += len;
                f
            })
            .collect();
        PolySection { components }
    }

    pub fn mul_form(&self, f: &BinaryForm) -> PolySection {
        PolySection {
            components: self.components.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn linear_combination(bundle: &SplitBundle, coeffs: &[Rational], sections: &[PolySection]) -> Self {
        let len = bundle.h0_twist(0);
        let mut acc = vec![Rational::zero(); len];
        for (c, s) in coeffs.iter().zip(sections) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(s.coords()) {
                *a += c * &x;
            }
        }
        PolySection::from_coords(bundle, 0, &acc)
    }
}

/// A Brill-Noether pair on the projective line: a split bundle and a basis
/// of a subspace of its global sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairP1 {
    bundle: SplitBundle,
    lambda: Vec<PolySection>,
}

impl PairP1 {
    pub fn new(bundle: SplitBundle, lambda: Vec<PolySection>) -> Result<Self> {
        let coords: Vec<Vec<Rational>> = lambda.iter().map(PolySection::coords).collect();
        if rank(&RationalField, &coords) != lambda.len() {
            return Err(Error::invalid("sections spanning Lambda are linearly dependent"));
        }
        Ok(PairP1 { bundle, lambda })
    }

    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }

    pub fn lambda(&self) -> &[PolySection] {
        &self.lambda
    }

    pub fn numerical_type(&self) -> PairType {
        PairType::int(self.bundle.rank() as i64, self.bundle.degree(), self.lambda.len() as u64)
    }
}

/// One component on the wire: a coefficient vector, a polynomial string,
/// or alternating `[monomial, coefficient, …]` terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum WireScalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum WireForm {
    Expr(String),
    List(Vec<WireScalar>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WirePair {
    degrees: Vec<i64>,
    lambda: Vec<Vec<WireForm>>,
}

fn has_variable(s: &str) -> bool {
    s.contains(['x', 'y'])
}

fn decode_form(w: &WireForm, degree: i64) -> Result<BinaryForm> {
    match w {
        WireForm::Expr(s) => BinaryForm::parse(s, degree),
        WireForm::List(items) => {
            let is_terms = items
                .iter()
                .any(|i| matches!(i, WireScalar::Text(s) if has_variable(s)));
            let scalar = |i: &WireScalar| -> Result<Rational> {
                match i {
                    WireScalar::Int(n) => Ok(Rational::integer(*n)),
                    WireScalar::Text(s) => s.parse(),
                }
            };
            if is_terms {
                if items.len() % 2 != 0 {
                    return Err(Error::invalid("monomial/coefficient list has odd length"));
                }
                let mut f = BinaryForm::zero(degree);
                for pair in items.chunks(2) {
                    let WireScalar::Text(mono) = &pair[0] else {
                        return Err(Error::invalid("expected a monomial string"));
                    };
                    let term = BinaryForm::parse(mono, degree)?.scale(&scalar(&pair[1])?);
                    f = f.add(&term);
                }
                Ok(f)
            } else if items.is_empty() && degree < 0 {
                Ok(BinaryForm::zero(degree))
            } else {
                BinaryForm::new(degree, items.iter().map(scalar).collect::<Result<_>>()?)
            }
        }
    }
}

fn encode_form(f: &BinaryForm) -> WireForm {
    WireForm::List(
        f.coeffs()
            .iter()
            .map(|c| match c.to_i64() {
                Some(n) => WireScalar::Int(n),
                None => WireScalar::Text(c.to_string()),
            })
            .collect(),
    )
}

impl TryFrom<WirePair> for PairP1 {
    type Error = Error;
    fn try_from(w: WirePair) -> Result<Self> {
        let bundle = SplitBundle::new(w.degrees)?;
        let lambda = w
            .lambda
            .iter()
            .map(|sec| {
                if sec.len() != bundle.rank() {
                    return Err(Error::invalid("section length differs from the rank"));
                }
                let comps = sec
                    .iter()
                    .zip(bundle.degrees())
                    .map(|(c, &a)| decode_form(c, a))
                    .collect::<Result<Vec<_>>>()?;
                PolySection::new(&bundle, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        PairP1::new(bundle, lambda)
    }
}

impl Serialize for PairP1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WirePair {
            degrees: self.bundle.degrees.clone(),
            lambda: self
                .lambda
                .iter()
                .map(|sec| sec.components.iter().map(encode_form).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairP1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PairP1::try_from(WirePair::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for PolySection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let comps: Vec<WireForm> = self.components.iter().map(encode_form).collect();
        comps.serialize(s)
    }
}

/// Reads coefficient arrays back; a form's degree is its length minus one.
impl<'de> Deserialize<'de> for PolySection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<Vec<Rational>>::deserialize(d)?;
        let components = comps
            .into_iter()
            .map(|c| BinaryForm::new(c.len() as i64 - 1, c))
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        Ok(PolySection { components })
    }
}
