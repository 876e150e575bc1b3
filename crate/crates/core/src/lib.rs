//! Exact computations for alpha-stability of Brill-Noether pairs (coherent
//! systems) on polarised curves: numerical invariants, stability margins
//! and existence conditions, wall and chamber structure in the parameter,
//! Hilbert-Mumford tests on products of Grassmannians, and a fully explicit
//! model on the projective line.
//!
//! All arithmetic is exact; see [`Rational`].

mod error;
pub mod git;
pub mod invariants;
pub mod linalg;
pub mod p1model;
pub mod rational;
pub mod stability;
pub mod walls;

pub use error::{Error, Result};
pub use invariants::{mu, mu_alpha, CurveData, PairType};
pub use rational::Rational;
pub use stability::{delta_alpha, existence_check, Verdict, VerdictKind};
pub use walls::{chambers, numerical_jh, wall_candidates, Interval};
