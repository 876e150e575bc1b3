//! Dense exact linear algebra over prime fields and the rationals, plus
//! enumeration of subspaces of `F_q^n` by reduced echelon form.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Canonical rational representative (`0..p` for prime fields).
    fn lift(&self, a: &Self::Elem) -> Rational;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// All elements, in a fixed order starting with 0, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn order(&self) -> Option<u64> {
        self.elements().map(|e| e.len() as u64)
    }
}

/// `Z/pZ` for a prime `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p >= 1 << 16 {
            return Err(Error::invalid(format!("field order {p} is not a small prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        a * b % self.p
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        // a^(p-2) by square and multiply
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn lift(&self, a: &u32) -> Rational {
        Rational::integer(*a as i64)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::integer(n)
    }
    fn lift(&self, a: &Rational) -> Rational {
        a.clone()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn elements(&self) -> Option<Vec<Rational>> {
        None
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Row-reduces in place; returns the pivot columns. Zero rows end up at
/// the bottom and are truncated.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(found) = (row..m.len()).find(|&i| !f.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, found);
        let inv = f.inv(&m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || f.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref_in_place(f, &mut m).len()
}

pub fn transpose<E: Clone>(m: &[Vec<E>], rows_if_empty: usize) -> Matrix<E> {
    let cols = m.first().map_or(rows_if_empty, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Matrix<F::Elem> {
    let mut r = m.to_vec();
    let pivots = rref_in_place(f, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.sub(&f.zero(), &row[fc]);
            }
            v
        })
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

pub fn inverse<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(identity(f, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref_in_place(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Number of subspaces of dimension `k` in `F_q^n` (Gaussian binomial).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow(n - i).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow(i + 1).saturating_sub(1));
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

/// Every `k`-dimensional subspace of `F^n`, each as the rows of its unique
/// reduced echelon basis, in lexicographic order of pivot sets and then of
/// free entries.
pub fn subspaces_of_dim<F: Field>(f: &F, n: usize, k: usize) -> Result<Vec<Matrix<F::Elem>>> {
    let elems = f
        .elements()
        .ok_or_else(|| Error::invalid("subspace enumeration needs a finite field"))?;
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    for pivots in combinations(n, k) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut basis = vec![vec![f.zero(); n]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = f.one();
            }
            for (&(r, c), &d) in slots.iter().zip(&digits) {
                basis[r][c] = elems[d].clone();
            }
            out.push(basis);
            // odometer increment, last slot fastest
            let mut wrapped = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < elems.len() {
                    wrapped = false;
                    break;
                }
                *d = 0;
            }
            if wrapped {
                break;
            }
        }
    }
    Ok(out)
}

/// Proper nonzero subspaces of `F^n`, by increasing dimension.
pub fn proper_subspaces<F: Field>(f: &F, n: usize) -> Result<Vec<Matrix<F::Elem>>> {
    let mut all = Vec::new();
    for k in 1..n {
        all.extend(subspaces_of_dim(f, n, k)?);
    }
    Ok(all)
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Extends the rows of an echelon basis by standard basis vectors at the
/// non-pivot columns, giving a basis of the whole space.
pub fn complete_basis<F: Field>(f: &F, basis: &[Vec<F::Elem>], n: usize) -> Matrix<F::Elem> {
    let mut m = basis.to_vec();
    let pivots = rref_in_place(f, &mut m);
    let mut out = basis.to_vec();
    for c in (0..n).filter(|c| !pivots.contains(c)) {
        let mut e = vec![f.zero(); n];
        e[c] = f.one();
        out.push(e);
    }
    out
}
