//! Subsheaves of a split bundle generated by global sections, and their
//! saturations, via exact linear algebra on graded pieces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, Matrix, RationalField};
use crate::rational::Rational;

use super::bundle::{PairP1, PolySection, SplitBundle};
use super::form::{det, BinaryForm};

/// Rank, degree and the twist at which the section count was verified to
/// follow `rank (n + 1) + degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedData {
    pub rank: usize,
    pub degree: i64,
    pub stab_n: i64,
}

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

/// Values of the sections at `(t, 1)` as an `rank E x #gens` matrix.
fn evaluate(gens: &[PolySection], t: i64) -> Matrix<Rational> {
    let rows = gens.first().map_or(0, |g| g.components().len());
    (0..rows)
        .map(|i| gens.iter().map(|g| g.components()[i].eval_affine(&r(t))).collect())
        .collect()
}

/// Affine points `t = 0..=D` such that any nonzero minor is nonzero at one
/// of them.
fn sample_points(e: &SplitBundle) -> std::ops::RangeInclusive<i64> {
    0..=e.degrees().iter().filter(|a| **a > 0).sum::<i64>()
}

fn check_gens(e: &SplitBundle, gens: &[PolySection]) -> Result<()> {
    for g in gens {
        PolySection::new(e, g.components().to_vec())?;
    }
    Ok(())
}

/// Rank of the matrix of sections over the function field.
pub fn generic_rank(e: &SplitBundle, gens: &[PolySection]) -> usize {
    if gens.is_empty() {
        return 0;
    }
    sample_points(e)
        .map(|t| rank(&RationalField, &evaluate(gens, t)))
        .max()
        .unwrap_or(0)
}

/// `dim span { m * g : m a monomial of degree n, g in gens }` inside
/// `H0(E(n))`.
pub fn level_span_dim(gens: &[PolySection], n: i64) -> usize {
    if n < 0 {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = gens
        .iter()
        .flat_map(|g| {
            (0..=n).map(move |j| g.mul_form(&BinaryForm::monomial(n - j, j, Rational::one())).coords())
        })
        .collect();
    rank(&RationalField, &rows)
}

pub fn generated_subsheaf_data(e: &SplitBundle, gens: &[PolySection]) -> Result<GeneratedData> {
    check_gens(e, gens)?;
    if gens.is_empty() {
        return Ok(GeneratedData {
            rank: 0,
            degree: 0,
            stab_n: 0,
        });
    }
    let rk = generic_rank(e, gens);
    let stab_n = e.degrees().iter().map(|a| a.abs()).sum::<i64>() + gens.len() as i64 + 1;
    let here = level_span_dim(gens, stab_n);
    let next = level_span_dim(gens, stab_n + 1);
    if next - here != rk {
        return Err(Error::Internal(format!(
            "section count not stabilised at n = {stab_n}: {here} -> {next} for rank {rk}"
        )));
    }
    let degree = here as i64 - rk as i64 * (stab_n + 1);
    if degree < 0 {
        return Err(Error::Internal(format!("generated subsheaf of negative degree {degree}")));
    }
    Ok(GeneratedData {
        rank: rk,
        degree,
        stab_n,
    })
}

/// The saturation of the subsheaf generated by some sections, described by
/// the linear conditions cutting its sections out of those of `E(n)`.
#[derive(Debug, Clone)]
pub struct Saturation {
    bundle: SplitBundle,
    rank: usize,
    /// Generators whose columns are independent over the function field.
    basis_gens: Vec<PolySection>,
    /// Rows of `E` where those columns have a nonzero maximal minor.
    rows: Vec<usize>,
}

/// Greedily picks indices of independent vectors.
fn independent_indices(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        acc.push(v.clone());
        if rank(&RationalField, &acc) == acc.len() {
            picked.push(i);
        } else {
            acc.pop();
        }
    }
    picked
}

impl Saturation {
    pub fn new(e: &SplitBundle, gens: &[PolySection]) -> Result<Self> {
        check_gens(e, gens)?;
        let rk = generic_rank(e, gens);
        let mut sat = Saturation {
            bundle: e.clone(),
            rank: rk,
            basis_gens: Vec::new(),
            rows: Vec::new(),
        };
        if rk == 0 {
            return Ok(sat);
        }
        let t = sample_points(e)
            .find(|&t| rank(&RationalField, &evaluate(gens, t)) == rk)
            .expect("generic rank is attained at a sample point");
        let values = evaluate(gens, t);
        let columns: Vec<Vec<Rational>> = (0..gens.len())
            .map(|j| values.iter().map(|row| row[j].clone()).collect())
            .collect();
        let cols = independent_indices(&columns);
        sat.basis_gens = cols.iter().map(|&j| gens[j].clone()).collect();
        let restricted: Vec<Vec<Rational>> = values
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        sat.rows = independent_indices(&restricted);
        debug_assert_eq!(sat.rows.len(), rk);
        Ok(sat)
    }

    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Linear forms on the coordinates of `H0(E(n))` whose common kernel is
    /// `H0(Fbar(n))`.
    pub fn conditions(&self, n: i64) -> Matrix<Rational> {
        let e = &self.bundle;
        let dims = e.level_dims(n);
        let total: usize = dims.iter().sum();
        let unit = |idx: usize| {
            let mut v = vec![Rational::zero(); total];
            v[idx] = Rational::one();
            v
        };
        if self.rank == 0 {
            return (0..total).map(unit).collect();
        }
        let k = self.rank;
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let mut out = Vec::new();
        for j in (0..e.rank()).filter(|j| !self.rows.contains(j)) {
            let mut rows_r = self.rows.clone();
            rows_r.push(j);
            rows_r.sort_unstable();
            // s lies in the span iff det [M'_R | s_R] = 0; expand along s.
            let cofactors: Vec<BinaryForm> = (0..=k)
                .map(|t| {
                    let minor_rows: Vec<usize> = rows_r.iter().copied().filter(|&x| x != rows_r[t]).collect();
                    let m: Vec<Vec<BinaryForm>> = minor_rows
                        .iter()
                        .map(|&i| self.basis_gens.iter().map(|g| g.components()[i].clone()).collect())
                        .collect();
                    let degs: Vec<i64> = minor_rows.iter().map(|&i| e.degrees()[i]).collect();
                    let c = det(&m, &degs);
                    if (t + k) % 2 == 0 {
                        c
                    } else {
                        c.neg()
                    }
                })
                .collect();
            let out_deg: i64 = rows_r.iter().map(|&i| e.degrees()[i]).sum::<i64>() + n;
            if out_deg < 0 {
                continue;
            }
            // column per coordinate of s: coefficients of cofactor * monomial
            let mut block = vec![vec![Rational::zero(); total]; (out_deg + 1) as usize];
            for (t, &i) in rows_r.iter().enumerate() {
                let deg_i = e.degrees()[i] + n;
                for m in 0..dims[i] {
                    let mono = BinaryForm::monomial(deg_i - m as i64, m as i64, Rational::one());
                    let prod = cofactors[t].mul(&mono);
                    if prod.degree() != out_deg {
                        continue;
                    }
                    for (row, c) in prod.coeffs().iter().enumerate() {
                        block[row][offsets[i] + m] = c.clone();
                    }
                }
            }
            out.extend(block.into_iter().filter(|row| row.iter().any(|c| !c.is_zero())));
        }
        out
    }

    /// `dim H0(Fbar(n))`.
    pub fn h0_twist(&self, n: i64) -> usize {
        let total = self.bundle.h0_twist(n);
        total - rank(&RationalField, &self.conditions(n))
    }

    /// Basis of `H0(Fbar(n))`.
    pub fn sections(&self, n: i64) -> Vec<PolySection> {
        let total = self.bundle.h0_twist(n);
        nullspace(&RationalField, &self.conditions(n), total)
            .iter()
            .map(|v| PolySection::from_coords(&self.bundle, n, v))
            .collect()
    }

    pub fn contains(&self, s: &PolySection, n: i64) -> bool {
        let coords = s.coords();
        self.conditions(n).iter().all(|row| {
            row.iter()
                .zip(&coords)
                .map(|(a, b)| a * b)
                .sum::<Rational>()
                .is_zero()
        })
    }

    /// Splitting type `b_1 >= … >= b_k` of the saturation, read off from the
    /// jumps of `n -> h0(Fbar(n))`.
    pub fn split_degrees(&self) -> Vec<i64> {
        let Some(&top) = self.bundle.degrees().first() else {
            return Vec::new();
        };
        let lowest = -(top + 1);
        let h: Vec<usize> = (lowest..=0).map(|n| self.h0_twist(n)).collect();
        let mut degrees = Vec::new();
        let mut prev_count = 0;
        for (idx, n) in (lowest + 1..=0).enumerate() {
            // number of summands with b >= -n
            let count = h[idx + 1] - h[idx];
            for _ in prev_count..count {
                degrees.push(-n);
            }
            prev_count = count;
        }
        degrees
    }

    pub fn degree(&self) -> Result<i64> {
        if self.rank == 0 {
            return Ok(0);
        }
        let top = self.bundle.degrees().first().copied().unwrap_or(0);
        let n = top.max(0) + 1;
        let here = self.h0_twist(n) as i64;
        let next = self.h0_twist(n + 1) as i64;
        if next - here != self.rank as i64 {
            return Err(Error::Internal(format!(
                "saturation sections not stabilised at n = {n}"
            )));
        }
        let degree = here - self.rank as i64 * (n + 1);
        let split = self.split_degrees();
        if split.len() != self.rank || split.iter().sum::<i64>() != degree {
            return Err(Error::Internal(format!(
                "saturation splitting {split:?} disagrees with degree {degree}"
            )));
        }
        Ok(degree)
    }
}

pub fn saturation_data(e: &SplitBundle, gens: &[PolySection]) -> Result<(usize, i64)> {
    let sat = Saturation::new(e, gens)?;
    Ok((sat.rank(), sat.degree()?))
}

/// Basis of `Lambda ∩ H0(Fbar)`, as combinations of the pair's sections.
pub fn lambda_cap_h0(pair: &PairP1, sat: &Saturation) -> Vec<PolySection> {
    let lambda = pair.lambda();
    if lambda.is_empty() {
        return Vec::new();
    }
    let conds = sat.conditions(0);
    let coords: Vec<Vec<Rational>> = lambda.iter().map(PolySection::coords).collect();
    // conditions evaluated on each basis section
    let m: Vec<Vec<Rational>> = conds
        .iter()
        .map(|row| {
            coords
                .iter()
                .map(|c| row.iter().zip(c).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    nullspace(&RationalField, &m, lambda.len())
        .iter()
        .map(|coef| PolySection::linear_combination(pair.bundle(), coef, lambda))
        .collect()
}
