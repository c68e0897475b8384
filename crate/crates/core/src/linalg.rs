//! Dense complex linear algebra helpers.
//!
//! Thin wrappers around `nalgebra` factorizations plus the handful of
//! subspace primitives the decomposition needs (numerical kernels,
//! orthonormal complements, Haar-distributed unitaries). All norms are
//! spectral unless a function name says otherwise.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{GammaError, Result};

pub type Complex64 = nalgebra::Complex<f64>;
pub type CMatrix = DMatrix<Complex64>;

/// Iteration cap for the iterative eigensolvers.
const MAX_EIG_ITER: usize = 8192;

pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest singular value; 0 for empty matrices.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |a, &s| a.max(s))
}

/// Frobenius norm of the strictly lower triangular part.
pub fn strict_lower_norm(m: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for j in 0..m.ncols() {
        for i in (j + 1)..m.nrows() {
            acc += m[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// `‖AB − BA‖ / (1 + ‖A‖‖B‖)` in the spectral norm.
pub fn commutation_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    let comm = a * b - b * a;
    spectral_norm(&comm) / (1.0 + spectral_norm(a) * spectral_norm(b))
}

/// `‖M − M*‖` in the spectral norm.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

/// Smallest eigenvalue of a (numerically) Hermitian matrix.
///
/// The input is symmetrized first so that round-off asymmetry cannot
/// poison the tridiagonalization. Returns `+∞` for the empty matrix.
pub fn hermitian_min_eig(m: &CMatrix) -> Result<f64> {
    let d = m.nrows();
    if d == 0 {
        return Ok(f64::INFINITY);
    }
    if d == 1 {
        return Ok(m[(0, 0)].re);
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = h
        .try_symmetric_eigen(f64::EPSILON, MAX_EIG_ITER)
        .ok_or_else(|| GammaError::NumericalFailure {
            context: "hermitian eigensolver".into(),
            residual: f64::NAN,
        })?;
    Ok(eig.eigenvalues.iter().fold(f64::INFINITY, |a, &v| a.min(v)))
}

/// All eigenvalues of a general complex matrix, via the Schur form.
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let d = m.nrows();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let schur = m
        .clone()
        .try_schur(f64::EPSILON, MAX_EIG_ITER)
        .ok_or_else(|| GammaError::NumericalFailure {
            context: "complex Schur decomposition".into(),
            residual: f64::NAN,
        })?;
    let (_, t) = schur.unpack();
    Ok((0..d).map(|k| t[(k, k)]).collect())
}

/// Unitary Schur factor `Q` with `Q* M Q` upper triangular.
pub fn schur_basis(m: &CMatrix) -> Result<CMatrix> {
    let d = m.nrows();
    if d <= 1 {
        return Ok(CMatrix::identity(d, d));
    }
    let schur = m
        .clone()
        .try_schur(f64::EPSILON, MAX_EIG_ITER)
        .ok_or_else(|| GammaError::NumericalFailure {
            context: "complex Schur decomposition".into(),
            residual: f64::NAN,
        })?;
    let (q, _) = schur.unpack();
    Ok(q)
}

/// Orthonormal basis of the numerical kernel of `m` (`nrows ≥ ncols`).
///
/// Kernel vectors are the right singular vectors whose singular value is
/// at most `tol · (σ_max + 1)`.
pub fn numerical_kernel(m: &CMatrix, tol: f64) -> CMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    assert!(
        m.nrows() >= m.ncols(),
        "numerical_kernel expects at least as many rows as columns"
    );
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("SVD with compute_v");
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |a, &s| a.max(s));
    let thresh = tol * (sigma_max + 1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= thresh)
        .collect();
    let mut kernel = CMatrix::zeros(cols, keep.len());
    for (out, &k) in keep.iter().enumerate() {
        // row k of V* is the conjugate of the k-th right singular vector
        for r in 0..cols {
            kernel[(r, out)] = v_t[(k, r)].conj();
        }
    }
    kernel
}

/// Stack two matrices with equal column counts vertically.
pub fn vstack(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.ncols());
    let mut out = CMatrix::zeros(a.nrows() + b.nrows(), a.ncols());
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((a.nrows(), 0), (b.nrows(), b.ncols()))
        .copy_from(b);
    out
}

/// Orthonormal basis of the orthogonal complement of `range(q)`.
///
/// `q` must have orthonormal columns. Computed from the spectral
/// decomposition of the complementary projector, which is deterministic
/// and keeps the two ranges orthogonal to machine precision.
pub fn orthonormal_complement(q: &CMatrix) -> CMatrix {
    let d = q.nrows();
    let k = q.ncols();
    if k == 0 {
        return CMatrix::identity(d, d);
    }
    if k >= d {
        return CMatrix::zeros(d, 0);
    }
    let proj = CMatrix::identity(d, d) - q * q.adjoint();
    let eig = proj
        .try_symmetric_eigen(f64::EPSILON, MAX_EIG_ITER)
        .expect("projector eigendecomposition");
    let keep: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    let mut out = CMatrix::zeros(d, keep.len());
    for (out_col, &i) in keep.iter().enumerate() {
        out.set_column(out_col, &eig.eigenvectors.column(i));
    }
    out
}

/// Re-orthonormalize the columns of a (numerically near-orthonormal) frame.
pub fn orthonormalize(m: &CMatrix) -> CMatrix {
    if m.ncols() == 0 {
        return m.clone();
    }
    let qr = m.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    // fix the phase so the result does not depend on QR sign conventions
    for j in 0..q.ncols() {
        let rjj = r[(j, j)];
        if rjj.norm() > 0.0 {
            let phase = rjj / rjj.norm();
            for i in 0..q.nrows() {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `‖Qa Qa* − Qb Qb*‖`: the sine of the largest principal angle between
/// two subspaces given by orthonormal bases.
pub fn subspace_gap(qa: &CMatrix, qb: &CMatrix) -> f64 {
    let d = qa.nrows();
    let pa = if qa.ncols() == 0 {
        CMatrix::zeros(d, d)
    } else {
        qa * qa.adjoint()
    };
    let pb = if qb.ncols() == 0 {
        CMatrix::zeros(d, d)
    } else {
        qb * qb.adjoint()
    };
    spectral_norm(&(pa - pb))
}

/// One standard normal sample (Box–Muller, deterministic given the RNG).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Standard complex Gaussian entry.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    cplx(standard_normal(rng), standard_normal(rng)) * cplx(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with
/// the phases of the R diagonal absorbed into Q.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    if dim == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            cplx(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spectral_norm_matches_hand_values() {
        let m = CMatrix::from_row_slice(2, 2, &[cplx(3.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)]);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        // rank-1 projector onto e1: kernel is span(e2)
        let m = CMatrix::from_row_slice(2, 2, &[cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)]);
        let k = numerical_kernel(&m, 1e-9);
        assert_eq!(k.ncols(), 1);
        assert!(k[(1, 0)].norm() > 0.999);
    }

    #[test]
    fn random_unitary_is_unitary_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(6, &mut rng);
        let defect = spectral_norm(&(&u * u.adjoint() - CMatrix::identity(6, 6)));
        assert!(defect < 1e-12, "unitarity defect {defect}");

        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let u2 = random_unitary(6, &mut rng2);
        assert_eq!(u, u2);
    }

    #[test]
    fn complement_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(5, &mut rng);
        let q = u.columns(0, 2).into_owned();
        let c = orthonormal_complement(&q);
        assert_eq!(c.ncols(), 3);
        assert!(spectral_norm(&(q.adjoint() * &c)) < 1e-12);
    }

    #[test]
    fn eigenvalues_of_triangular_matrix() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(1.0, 0.0), cplx(5.0, 0.0), cplx(0.0, 0.0), cplx(2.0, 0.0)],
        );
        let mut ev = complex_eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((ev[0] - cplx(1.0, 0.0)).norm() < 1e-12);
        assert!((ev[1] - cplx(2.0, 0.0)).norm() < 1e-12);
    }
}
