//! Sparse polynomials in n commuting variables.

use rand::Rng;

use crate::error::{GammaError, Result};
use crate::linalg::{cplx, CMatrix, Complex64};

/// A holomorphic polynomial in `n_vars` variables, stored as a sparse
/// list of `(multi-exponent, coefficient)` terms.
#[derive(Debug, Clone)]
pub struct Polynomial {
    n_vars: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl Polynomial {
    pub fn new(n_vars: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Result<Self> {
        if n_vars == 0 {
            return Err(GammaError::InvalidArgument(
                "a polynomial needs at least one variable".into(),
            ));
        }
        for (exp, _) in &terms {
            if exp.len() != n_vars {
                return Err(GammaError::InvalidArgument(format!(
                    "multi-exponent arity {} does not match {} variables",
                    exp.len(),
                    n_vars
                )));
            }
        }
        Ok(Polynomial { n_vars, terms })
    }

    /// The constant polynomial `c`.
    pub fn constant(n_vars: usize, c: Complex64) -> Result<Self> {
        Polynomial::new(n_vars, vec![(vec![0; n_vars], c)])
    }

    /// The coordinate polynomial `x_k` (0-based index).
    pub fn coordinate(n_vars: usize, k: usize) -> Result<Self> {
        if k >= n_vars {
            return Err(GammaError::InvalidArgument(format!(
                "coordinate index {k} out of range for {n_vars} variables"
            )));
        }
        let mut exp = vec![0u32; n_vars];
        exp[k] = 1;
        Polynomial::new(n_vars, vec![(exp, cplx(1.0, 0.0))])
    }

    /// A random sparse polynomial of total degree ≤ `max_degree` with
    /// unit-scale Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(n_vars: usize, max_degree: u32, terms: usize, rng: &mut R) -> Self {
        let mut list = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut exp = vec![0u32; n_vars];
            let degree = rng.random_range(0..=max_degree);
            for _ in 0..degree {
                let k = rng.random_range(0..n_vars);
                exp[k] += 1;
            }
            let coeff = crate::linalg::complex_gaussian(rng);
            list.push((exp, coeff));
        }
        Polynomial {
            n_vars,
            terms: list,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Complex64)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Evaluate at a scalar point.
    pub fn eval_scalar(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.n_vars {
            return Err(GammaError::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.n_vars,
                point.len()
            )));
        }
        let mut acc = cplx(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let mut term = *coeff;
            for (z, &e) in point.iter().zip(exp) {
                term *= z.powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluate at a commuting family of square matrices by accumulating
    /// monomials over cached matrix powers. Order independence over the
    /// family is a consequence of commutativity (and is tested, not
    /// assumed silently).
    pub fn eval_matrices(&self, mats: &[CMatrix]) -> Result<CMatrix> {
        if mats.len() != self.n_vars {
            return Err(GammaError::InvalidArgument(format!(
                "expected {} matrices, got {}",
                self.n_vars,
                mats.len()
            )));
        }
        let dim = mats.first().map(|m| m.nrows()).unwrap_or(0);
        if mats.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(GammaError::InvalidArgument(
                "matrices must be square and of equal size".into(),
            ));
        }

        // cache powers per variable up to the largest exponent used
        let mut powers: Vec<Vec<CMatrix>> = Vec::with_capacity(self.n_vars);
        for (v, m) in mats.iter().enumerate() {
            let max_exp = self
                .terms
                .iter()
                .map(|(e, _)| e[v])
                .max()
                .unwrap_or(0) as usize;
            let mut cache = Vec::with_capacity(max_exp + 1);
            cache.push(CMatrix::identity(dim, dim));
            for k in 1..=max_exp {
                let next = &cache[k - 1] * m;
                cache.push(next);
            }
            powers.push(cache);
        }

        let mut acc = CMatrix::zeros(dim, dim);
        for (exp, coeff) in &self.terms {
            let mut term = CMatrix::identity(dim, dim).scale(1.0) * *coeff;
            for (v, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term * &powers[v][e as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spectral_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        cplx(re, im)
    }

    #[test]
    fn scalar_evaluation() {
        // f = 2 x y² + 3
        let f = Polynomial::new(
            2,
            vec![(vec![1, 2], c(2.0, 0.0)), (vec![0, 0], c(3.0, 0.0))],
        )
        .unwrap();
        let v = f.eval_scalar(&[c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        // 2·2·(i²) + 3 = −4 + 3 = −1
        assert!((v - c(-1.0, 0.0)).norm() < 1e-14);
        assert_eq!(f.total_degree(), 3);
    }

    #[test]
    fn matrix_evaluation_matches_scalar_on_diagonals() {
        let f = Polynomial::new(
            2,
            vec![(vec![2, 0], c(1.0, 0.0)), (vec![1, 1], c(0.0, 1.0))],
        )
        .unwrap();
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let b = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5, 0.0), c(0.0, 1.0)]));
        let fm = f.eval_matrices(&[a.clone(), b.clone()]).unwrap();
        for k in 0..2 {
            let expect = f.eval_scalar(&[a[(k, k)], b[(k, k)]]).unwrap();
            assert!((fm[(k, k)] - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn evaluation_order_independent_for_commuting_matrices() {
        // evaluate f(x, y) and f(y, x) with arguments swapped accordingly
        let f = Polynomial::new(2, vec![(vec![2, 1], c(1.0, 0.5))]).unwrap();
        let g = Polynomial::new(2, vec![(vec![1, 2], c(1.0, 0.5))]).unwrap();
        // commuting pair: polynomials in one matrix
        let t = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.0), c(0.7, 0.1), c(0.0, 0.0), c(-0.2, 0.4)],
        );
        let a = &t * &t + &t * c(0.5, 0.0);
        let b = &t - CMatrix::identity(2, 2) * c(0.1, 0.2);
        let fab = f.eval_matrices(&[a.clone(), b.clone()]).unwrap();
        let gba = g.eval_matrices(&[b, a]).unwrap();
        assert!(spectral_norm(&(fab - gba)) < 1e-12);
    }

    #[test]
    fn arity_mismatch_rejected() {
        let f = Polynomial::coordinate(3, 0).unwrap();
        assert!(f.eval_scalar(&[c(1.0, 0.0)]).is_err());
        assert!(Polynomial::new(2, vec![(vec![1], c(1.0, 0.0))]).is_err());
    }
}
