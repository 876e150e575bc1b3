use crate::error::{Error, Result};
use crate::linalg::{complete_basis, identity, rank, Field, Matrix};
use crate::rational::Rational;

use super::point::{GrassPoint, Linearization};

/// A one-parameter subgroup of `SL(V)`, diagonal in `basis` with the given
/// integer weights.
#[derive(Debug, Clone, PartialEq)]
pub struct OnePs<F: Field> {
    basis: Matrix<F::Elem>,
    weights: Vec<i64>,
}

impl<F: Field> OnePs<F> {
    pub fn new(field: &F, basis: Matrix<F::Elem>, weights: Vec<i64>) -> Result<Self> {
        let n = weights.len();
        if basis.len() != n || basis.iter().any(|v| v.len() != n) {
            return Err(Error::invalid("one-parameter subgroup basis must be dim_v × dim_v"));
        }
        if rank(field, &basis) != n {
            return Err(Error::DependentColumns);
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::NonzeroWeightSum(sum));
        }
        Ok(OnePs { basis, weights })
    }

    /// Weights on the standard basis.
    pub fn diagonal(field: &F, weights: Vec<i64>) -> Result<Self> {
        let basis = identity(field, weights.len());
        OnePs::new(field, basis, weights)
    }

    /// The subgroup acting with weight `dim V - dim U` on `U` and `-dim U`
    /// on the coordinate complement of `U`; `u` must be in echelon form.
    pub fn for_subspace(field: &F, u: &[Vec<F::Elem>], dim_v: usize) -> Result<Self> {
        let basis = complete_basis(field, u, dim_v);
        let k = u.len() as i64;
        let n = dim_v as i64;
        let weights = (0..dim_v)
            .map(|i| if (i as i64) < k { n - k } else { -k })
            .collect();
        OnePs::new(field, basis, weights)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// `V_(>= i)`: span of the basis vectors of weight at least `i`.
    pub fn filtration_step(&self, i: i64) -> Matrix<F::Elem> {
        self.basis
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w >= i)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

/// The numerical function `sum_i (p θ1 + q θ2)(V_(>= i))` of a point and
/// a one-parameter subgroup; only the finitely many proper nonzero
/// filtration steps contribute.
pub fn mu_oneps<F: Field>(pt: &GrassPoint<F>, lam: &OnePs<F>, lin: &Linearization) -> Result<Rational> {
    if lam.weights.len() != pt.dim_v() {
        return Err(Error::invalid("one-parameter subgroup has the wrong dimension"));
    }
    let (Some(&lo), Some(&hi)) = (lam.weights.iter().min(), lam.weights.iter().max()) else {
        return Ok(Rational::zero());
    };
    let mut total = Rational::zero();
    for i in (lo + 1)..=hi {
        let step = lam.filtration_step(i);
        total += pt.hm_value(&step, lin);
    }
    Ok(total)
}
