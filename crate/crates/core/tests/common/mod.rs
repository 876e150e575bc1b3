//! Shared oracles and random generators for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bnpair_core::git::GrassPoint;
use bnpair_core::linalg::{inverse, rank, Field, PrimeField};
use bnpair_core::p1model::{BinaryForm, PairP1, PolySection, SplitBundle};
use bnpair_core::rational::{q, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ri(n: i64) -> Rational {
    Rational::integer(n)
}

/// Integer triple standing in for a type on the projective line.
pub type Tri = (i64, i64, i64);

/// Walls of `(r, d, l)` on P1 over `(lo, hi]`, found by scanning the sign
/// of the margin of every subtype with `|d'| <= d_bound` on a grid of step
/// `1/2` and solving exactly inside each bracketing cell. Subtypes and
/// their complements are filtered by the section slope condition and the
/// section count bound; values where the parent violates the ceiling are
/// dropped.
pub fn oracle_walls(parent: Tri, lo: i64, hi: i64, d_bound: i64) -> BTreeMap<Rational, BTreeSet<Tri>> {
    let (r, d, l) = parent;
    let grid: Vec<Rational> = (0..=(hi - lo) * 2).map(|i| ri(lo) + q(i, 2)).collect();
    let mut out: BTreeMap<Rational, BTreeSet<Tri>> = BTreeMap::new();
    for r1 in 1..r {
        for l1 in 0..=l {
            for d1 in -d_bound..=d_bound {
                let margin = |a: &Rational| (ri(d) + a * ri(l)) * ri(r1) - ri(r) * (ri(d1) + a * ri(l1));
                let mut roots = BTreeSet::new();
                for w in grid.windows(2) {
                    let (m0, m1) = (margin(&w[0]), margin(&w[1]));
                    if m0 == m1 {
                        continue;
                    }
                    if m0.is_zero() {
                        roots.insert(w[0].clone());
                    } else if m1.is_zero() {
                        roots.insert(w[1].clone());
                    } else if m0.is_negative() != m1.is_negative() {
                        // exact for a margin linear in alpha
                        roots.insert(&w[0] - &m0 * (&w[1] - &w[0]) / (&m1 - &m0));
                    }
                }
                for a in roots {
                    if a <= ri(lo) || a > ri(hi) {
                        continue;
                    }
                    if !parent_ok(parent, &a) {
                        continue;
                    }
                    let slope = (ri(d) + &a * ri(l)) / ri(r);
                    if factor_ok((r1, d1, l1), &slope) && factor_ok((r - r1, d - d1, l - l1), &slope) {
                        out.entry(a).or_default().insert((r1, d1, l1));
                    }
                }
            }
        }
    }
    out
}

fn parent_ok((r, d, l): Tri, a: &Rational) -> bool {
    if l > 0 && d < 0 {
        return false;
    }
    if l > 0 && l < r {
        return a * (ri(1) - q(l, r)) <= q(d, r);
    }
    true
}

fn factor_ok((r, d, l): Tri, slope: &Rational) -> bool {
    if l == 0 {
        return true;
    }
    if d < 0 {
        return false;
    }
    if slope.is_negative() {
        return false;
    }
    // h0 <= r (b + 1) for sheaves whose subsheaves have slope <= b
    ri(l) <= Rational::from((ri(r) * (slope + ri(1))).floor())
}

/// A point of `Gr(V⊗H, k) × Gr(l, V)` over GF(p) with random full-rank data.
pub fn random_grass_point(rng: &mut ChaCha8Rng, p: u32, dim_v: usize, dim_h: usize) -> GrassPoint<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let n = dim_v * dim_h;
    let k = rng.gen_range(1..=n);
    let l = rng.gen_range(1..=dim_v);
    let kappa1 = random_full_rank(rng, &f, k, n);
    let kappa2_t = random_full_rank(rng, &f, l, dim_v);
    let kappa2 = (0..dim_v).map(|i| (0..l).map(|j| kappa2_t[j][i]).collect()).collect();
    GrassPoint::new(f, dim_v, dim_h, kappa1, kappa2).unwrap()
}

/// `rows x cols` matrix of rank `rows` (requires `rows <= cols`).
pub fn random_full_rank(rng: &mut ChaCha8Rng, f: &PrimeField, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    loop {
        let m: Vec<Vec<u32>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..f.p())).collect())
            .collect();
        if rank(f, &m) == rows {
            return m;
        }
    }
}

pub fn random_invertible(rng: &mut ChaCha8Rng, f: &PrimeField, n: usize) -> Vec<Vec<u32>> {
    loop {
        let m = random_full_rank(rng, f, n, n);
        if inverse(f, &m).is_some() {
            return m;
        }
    }
}

pub fn random_form(rng: &mut ChaCha8Rng, degree: i64) -> BinaryForm {
    if degree < 0 {
        return BinaryForm::zero(degree);
    }
    let coeffs = (0..=degree).map(|_| ri(rng.gen_range(-2..=2))).collect();
    BinaryForm::new(degree, coeffs).unwrap()
}

pub fn random_section(rng: &mut ChaCha8Rng, e: &SplitBundle) -> PolySection {
    let comps = e.degrees().iter().map(|&a| random_form(rng, a)).collect();
    PolySection::new(e, comps).unwrap()
}

pub fn random_bundle(rng: &mut ChaCha8Rng, max_rank: usize, lo: i64, hi: i64) -> SplitBundle {
    let r = rng.gen_range(1..=max_rank);
    let mut degrees: Vec<i64> = (0..r).map(|_| rng.gen_range(lo..=hi)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    SplitBundle::new(degrees).unwrap()
}

/// A random pair with `l <= max_l` independent sections; sparse sections
/// make special subsheaves (and hence destabilizers) likely.
pub fn random_pair(rng: &mut ChaCha8Rng, max_rank: usize, max_l: usize) -> PairP1 {
    loop {
        let e = random_bundle(rng, max_rank, -2, 3);
        let h0 = e.h0_twist(0);
        let l = rng.gen_range(0..=max_l.min(h0));
        let sparse = rng.gen_bool(0.5);
        let lambda: Vec<PolySection> = (0..l)
            .map(|_| {
                let s = random_section(rng, &e);
                if sparse {
                    // keep a single summand
                    let keep = rng.gen_range(0..e.rank());
                    let comps = s
                        .components()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| if i == keep { c.clone() } else { BinaryForm::zero(e.degrees()[i]) })
                        .collect();
                    PolySection::new(&e, comps).unwrap()
                } else {
                    s
                }
            })
            .collect();
        if let Ok(p) = PairP1::new(e, lambda) {
            return p;
        }
    }
}

pub fn pair_from_json(s: &str) -> PairP1 {
    serde_json::from_str(s).unwrap()
}

/// Pairs used as regression fixtures across the tests.
pub fn regression_pairs() -> Vec<PairP1> {
    [
        r#"{"degrees":[1,1],"lambda":[["x","y"]]}"#,
        r#"{"degrees":[2,0],"lambda":[["x^2","0"]]}"#,
        r#"{"degrees":[1,1],"lambda":[["x","y"],["y","0"]]}"#,
        r#"{"degrees":[2,1],"lambda":[["x^2","y"],["x*y","0"],["0","x"]]}"#,
        r#"{"degrees":[2,2,0],"lambda":[["x^2","x*y","0"],["0","y^2","1"],["x*y","0","0"]]}"#,
        r#"{"degrees":[3,1],"lambda":[["x^3","y"],["y^3","x"]]}"#,
    ]
    .iter()
    .map(|s| pair_from_json(s))
    .collect()
}

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn lift_matrix(f: &PrimeField, m: &[Vec<u32>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|x| f.lift(x)).collect()).collect()
}
