use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::{hilbert_value, require_positive_alpha, CurveData, PairType};
use crate::linalg::{inverse, rank, transpose, Field, Matrix, PrimeField, RationalField};
use crate::rational::Rational;

/// A point `(kappa1, kappa2)` of `Gr(V ⊗ H, k) × Gr(l, V)`: a surjection
/// `kappa1: V ⊗ H -> L1` given as a `k × (dim V · dim H)` matrix, and an
/// inclusion `kappa2: L2 -> V` given as a `dim V × l` matrix.
///
/// Coordinates of `V ⊗ H` are ordered `v_i ⊗ h_j ↦ i · dim H + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassPoint<F: Field> {
    field: F,
    dim_v: usize,
    dim_h: usize,
    k: usize,
    l: usize,
    kappa1: Matrix<F::Elem>,
    kappa2: Matrix<F::Elem>,
}

impl<F: Field> GrassPoint<F> {
    pub fn new(
        field: F,
        dim_v: usize,
        dim_h: usize,
        kappa1: Matrix<F::Elem>,
        kappa2: Matrix<F::Elem>,
    ) -> Result<Self> {
        if dim_v == 0 || dim_h == 0 {
            return Err(Error::invalid("dim_v and dim_h must be positive"));
        }
        let k = kappa1.len();
        if kappa1.iter().any(|row| row.len() != dim_v * dim_h) {
            return Err(Error::invalid(format!(
                "kappa1 rows must have dim_v * dim_h = {} entries",
                dim_v * dim_h
            )));
        }
        if kappa2.len() != dim_v {
            return Err(Error::invalid(format!("kappa2 must have dim_v = {dim_v} rows")));
        }
        let l = kappa2.first().map_or(0, Vec::len);
        if kappa2.iter().any(|row| row.len() != l) {
            return Err(Error::invalid("kappa2 rows have unequal lengths"));
        }
        if rank(&field, &kappa1) != k {
            return Err(Error::invalid("kappa1 must have full row rank k"));
        }
        if l > 0 && rank(&field, &kappa2) != l {
            return Err(Error::invalid("kappa2 must have full column rank l"));
        }
        Ok(GrassPoint {
            field,
            dim_v,
            dim_h,
            k,
            l,
            kappa1,
            kappa2,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }
    pub fn dim_h(&self) -> usize {
        self.dim_h
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn kappa1(&self) -> &Matrix<F::Elem> {
        &self.kappa1
    }
    pub fn kappa2(&self) -> &Matrix<F::Elem> {
        &self.kappa2
    }

    /// Basis vectors of `L2` inside `V`.
    pub fn l2_basis(&self) -> Matrix<F::Elem> {
        transpose(&self.kappa2, self.l)
    }

    /// Checks that the rows of `u` are independent vectors of `V`.
    pub fn check_subspace(&self, u: &[Vec<F::Elem>]) -> Result<()> {
        if u.iter().any(|v| v.len() != self.dim_v) {
            return Err(Error::invalid(format!(
                "subspace vectors must have dim_v = {} entries",
                self.dim_v
            )));
        }
        if rank(&self.field, u) != u.len() {
            return Err(Error::DependentColumns);
        }
        Ok(())
    }

    /// `dim kappa1(U ⊗ H)`.
    pub fn image_dim(&self, u: &[Vec<F::Elem>]) -> usize {
        let f = &self.field;
        let images: Matrix<F::Elem> = u
            .iter()
            .flat_map(|vec| {
                (0..self.dim_h).map(move |j| {
                    // kappa1 applied to vec ⊗ h_j
                    self.kappa1
                        .iter()
                        .map(|row| {
                            vec.iter().enumerate().fold(f.zero(), |acc, (i, x)| {
                                f.add(&acc, &f.mul(&row[i * self.dim_h + j], x))
                            })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        rank(f, &images)
    }

    /// `dim (L2 ∩ U)`.
    pub fn meet_dim(&self, u: &[Vec<F::Elem>]) -> usize {
        let mut both = self.l2_basis();
        both.extend(u.iter().cloned());
        self.l + u.len() - rank(&self.field, &both)
    }

    pub fn theta1(&self, u: &[Vec<F::Elem>]) -> Result<Rational> {
        self.check_subspace(u)?;
        Ok(self.theta1_unchecked(u))
    }

    pub fn theta2(&self, u: &[Vec<F::Elem>]) -> Result<Rational> {
        self.check_subspace(u)?;
        Ok(self.theta2_unchecked(u))
    }

    pub(crate) fn theta1_unchecked(&self, u: &[Vec<F::Elem>]) -> Rational {
        Rational::integer(self.image_dim(u) as i64)
            - Rational::integer((self.k * u.len()) as i64) / Rational::integer(self.dim_v as i64)
    }

    pub(crate) fn theta2_unchecked(&self, u: &[Vec<F::Elem>]) -> Rational {
        Rational::integer((self.l * u.len()) as i64) / Rational::integer(self.dim_v as i64)
            - Rational::integer(self.meet_dim(u) as i64)
    }

    /// `p θ1(U) + q θ2(U)`.
    pub fn hm_value(&self, u: &[Vec<F::Elem>], lin: &Linearization) -> Rational {
        &lin.p * self.theta1_unchecked(u) + &lin.q * self.theta2_unchecked(u)
    }

    /// The image of the point under `g ∈ GL(V)`: `L2 ↦ g L2` and
    /// `kappa1 ↦ kappa1 ∘ (g⁻¹ ⊗ 1)`.
    pub fn transformed(&self, g: &[Vec<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        if g.len() != self.dim_v || g.iter().any(|r| r.len() != self.dim_v) {
            return Err(Error::invalid("basis change must be dim_v × dim_v"));
        }
        let ginv = inverse(f, g).ok_or_else(|| Error::invalid("basis change is singular"))?;
        let h = self.dim_h;
        let kappa1 = self
            .kappa1
            .iter()
            .map(|row| {
                (0..self.dim_v * h)
                    .map(|col| {
                        let (i2, j) = (col / h, col % h);
                        (0..self.dim_v).fold(f.zero(), |acc, i| {
                            f.add(&acc, &f.mul(&row[i * h + j], &ginv[i][i2]))
                        })
                    })
                    .collect()
            })
            .collect();
        let kappa2 = crate::linalg::mat_mul(f, g, &self.kappa2);
        GrassPoint::new(f.clone(), self.dim_v, h, kappa1, kappa2)
    }
}

/// Weights `(p, q)` of the ample line bundle `O(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLinearization")]
pub struct Linearization {
    pub p: Rational,
    pub q: Rational,
}

#[derive(Deserialize)]
struct RawLinearization {
    p: Rational,
    q: Rational,
}

impl TryFrom<RawLinearization> for Linearization {
    type Error = Error;
    fn try_from(raw: RawLinearization) -> Result<Self> {
        Linearization::new(raw.p, raw.q)
    }
}

impl Linearization {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if !p.is_positive() || !q.is_positive() {
            return Err(Error::invalid(format!(
                "linearization weights must be positive, got p = {p}, q = {q}"
            )));
        }
        Ok(Linearization { p, q })
    }

    /// `p = P(n) + alpha l`, `q = alpha r` for a pair type at twist `n`.
    pub fn for_pair(t: &PairType, alpha: &Rational, n: i64, curve: &CurveData) -> Result<Self> {
        require_positive_alpha(alpha)?;
        let p = hilbert_value(t, curve, n) + alpha * Rational::integer(t.l as i64);
        Linearization::new(p, alpha * &t.r)
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Linearization::new(&self.p * c, &self.q * c)
    }
}

/// JSON scalar: an integer or a `"p/q"` string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(Rational),
}

impl Scalar {
    fn rational(&self) -> Rational {
        match self {
            Scalar::Int(n) => Rational::integer(*n),
            Scalar::Text(r) => r.clone(),
        }
    }

    fn from_rational(r: Rational) -> Self {
        match r.to_i64() {
            Some(n) => Scalar::Int(n),
            None => Scalar::Text(r),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldTag {
    Prime(u32),
    Named(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPoint {
    q: FieldTag,
    dim_v: usize,
    dim_h: usize,
    k: usize,
    l: usize,
    kappa1: Vec<Vec<Scalar>>,
    kappa2: Vec<Vec<Scalar>>,
}

/// A point over either a small prime field or the rationals, as read from
/// JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyGrassPoint {
    Prime(GrassPoint<PrimeField>),
    Rational(GrassPoint<RationalField>),
}

fn to_prime(p: &PrimeField, m: &[Vec<Scalar>]) -> Result<Matrix<u32>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    let r = s.rational();
                    r.to_i64()
                        .map(|n| p.from_i64(n))
                        .ok_or_else(|| Error::invalid(format!("entry {r} is not an integer mod {}", p.p())))
                })
                .collect()
        })
        .collect()
}

fn lift_matrix<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Vec<Vec<Scalar>> {
    m.iter()
        .map(|row| row.iter().map(|e| Scalar::from_rational(f.lift(e))).collect())
        .collect()
}

impl TryFrom<RawPoint> for AnyGrassPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        let pt = match &raw.q {
            FieldTag::Prime(p) => {
                let f = PrimeField::new(*p)?;
                let k1 = to_prime(&f, &raw.kappa1)?;
                let k2 = to_prime(&f, &raw.kappa2)?;
                AnyGrassPoint::Prime(GrassPoint::new(f, raw.dim_v, raw.dim_h, k1, k2)?)
            }
            FieldTag::Named(name) if name.eq_ignore_ascii_case("rationals") => {
                let conv = |m: &[Vec<Scalar>]| -> Matrix<Rational> {
                    m.iter().map(|row| row.iter().map(Scalar::rational).collect()).collect()
                };
                AnyGrassPoint::Rational(GrassPoint::new(
                    RationalField,
                    raw.dim_v,
                    raw.dim_h,
                    conv(&raw.kappa1),
                    conv(&raw.kappa2),
                )?)
            }
            FieldTag::Named(name) => {
                return Err(Error::invalid(format!("unknown field '{name}'")));
            }
        };
        let (k, l) = match &pt {
            AnyGrassPoint::Prime(p) => (p.k, p.l),
            AnyGrassPoint::Rational(p) => (p.k, p.l),
        };
        if k != raw.k || l != raw.l {
            return Err(Error::invalid(format!(
                "declared k = {}, l = {} but matrices give k = {k}, l = {l}",
                raw.k, raw.l
            )));
        }
        Ok(pt)
    }
}

fn raw_of<F: Field>(pt: &GrassPoint<F>, tag: FieldTag) -> RawPoint {
    RawPoint {
        q: tag,
        dim_v: pt.dim_v,
        dim_h: pt.dim_h,
        k: pt.k,
        l: pt.l,
        kappa1: lift_matrix(&pt.field, &pt.kappa1),
        kappa2: lift_matrix(&pt.field, &pt.kappa2),
    }
}

impl Serialize for AnyGrassPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnyGrassPoint::Prime(p) => raw_of(p, FieldTag::Prime(p.field.p())).serialize(s),
            AnyGrassPoint::Rational(p) => raw_of(p, FieldTag::Named("rationals".into())).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AnyGrassPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoint::deserialize(d)?;
        AnyGrassPoint::try_from(raw).map_err(serde::de::Error::custom)
    }
}
