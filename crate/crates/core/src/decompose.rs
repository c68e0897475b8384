//! Canonical decomposition of a `Γn`-contraction.
//!
//! `ℋ₁` is the maximal subspace reducing `P` on which `P` acts unitarily;
//! its orthocomplement `ℋ₂` carries the completely non-unitary part. The
//! subspace is computed from `P` alone; that it also reduces every `Sᵢ`
//! is the computable content of the decomposition theorem, so it is
//! asserted after the fact rather than imposed. A failed assertion means
//! either the input was not a `Γn`-contraction or the numerics broke
//! down, and is reported with full diagnostics instead of being truncated
//! away.

use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};
use crate::linalg::{
    numerical_kernel, orthonormal_complement, orthonormalize, spectral_norm, vstack, CMatrix,
};
use crate::operator::OperatorTuple;

/// Default kernel tolerance: singular vectors with singular value at most
/// `tol · (σ_max + 1)` span the numerical kernel.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-9;

/// Orthonormal basis of the maximal subspace reducing `p` on which `p`
/// is unitary.
///
/// Starts from `K₀ = ker(I − P*P) ∩ ker(I − PP*)` and iterates
/// `Kⱼ₊₁ = {h ∈ Kⱼ : Ph ∈ Kⱼ and P*h ∈ Kⱼ}` until the dimension is
/// stable. Dimensions strictly decrease otherwise, so at most `dim`
/// iterations run.
pub fn maximal_unitary_subspace(p: &CMatrix, tol: f64) -> Result<CMatrix> {
    let dim = p.nrows();
    if p.ncols() != dim {
        return Err(GammaError::InvalidDimension("P must be square".into()));
    }
    let p_norm = spectral_norm(p);
    if p_norm > 1.0 + tol.max(1e-12) {
        return Err(GammaError::InvalidArgument(format!(
            "P is not a contraction: ‖P‖ = {p_norm}"
        )));
    }
    if dim == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }

    let eye = CMatrix::identity(dim, dim);
    let defect_left = &eye - p.adjoint() * p;
    let defect_right = &eye - p * p.adjoint();
    let mut q = numerical_kernel(&vstack(&defect_left, &defect_right), tol);

    for _ in 0..=dim {
        if q.ncols() == 0 {
            break;
        }
        let proj = &eye - &q * q.adjoint();
        let outflow = vstack(&(&proj * p * &q), &(&proj * p.adjoint() * &q));
        let keep = numerical_kernel(&outflow, tol);
        if keep.ncols() == q.ncols() {
            break;
        }
        q = orthonormalize(&(q * keep));
    }
    Ok(q)
}

/// Whether `p` is a completely non-unitary contraction: the maximal
/// unitary subspace is trivial.
pub fn is_cnu(p: &CMatrix, tol: f64) -> Result<bool> {
    Ok(maximal_unitary_subspace(p, tol)?.ncols() == 0)
}

/// Off-diagonal block norms of one matrix in the `ℋ₁ ⊕ ℋ₂` splitting,
/// normalized by `1 + ‖M‖`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockResidual {
    pub matrix: String,
    /// `‖Q₂* M Q₁‖ / (1 + ‖M‖)`.
    pub lower: f64,
    /// `‖Q₁* M Q₂‖ / (1 + ‖M‖)`.
    pub upper: f64,
}

/// The two reducing subspaces and the restricted tuples.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// Orthonormal `dim×k` basis of `ℋ₁`.
    pub basis_h1: CMatrix,
    /// Orthonormal `dim×(dim−k)` basis of `ℋ₂`.
    pub basis_h2: CMatrix,
    /// Restriction to `ℋ₁` (a `Γn`-unitary); empty when `k = 0`.
    pub unitary_part: OperatorTuple,
    /// Restriction to `ℋ₂` (completely non-unitary); empty when `k = dim`.
    pub cnu_part: OperatorTuple,
    pub residuals: Vec<BlockResidual>,
}

impl DecompositionResult {
    pub fn unitary_dim(&self) -> usize {
        self.basis_h1.ncols()
    }
}

/// Split a tuple into its `Γn`-unitary and completely non-unitary parts.
///
/// The caller is expected to have certified the tuple (a certificate
/// verdict of `Failed` voids the theorem's hypotheses); only the cheap
/// contraction check on `P` is re-run here. `tol` is the kernel tolerance
/// for the subspace computation; the block identities are asserted at
/// `10·tol` relative to each matrix scale and a violation carries full
/// diagnostics.
pub fn canonical_decompose(tuple: &OperatorTuple, tol: f64) -> Result<DecompositionResult> {
    if tuple.is_empty() {
        return Err(GammaError::InvalidArgument(
            "cannot decompose the empty tuple".into(),
        ));
    }
    let dim = tuple.dim();
    let q1 = maximal_unitary_subspace(tuple.p(), tol)?;
    let q2 = orthonormal_complement(&q1);

    let mut residuals = Vec::with_capacity(tuple.n());
    let block_tol = 10.0 * tol.max(DEFAULT_KERNEL_TOL);
    let mut worst = 0.0f64;
    for (m, name) in tuple.matrices().iter().zip(tuple.matrix_names()) {
        let scale = 1.0 + spectral_norm(m);
        let lower = spectral_norm(&(q2.adjoint() * *m * &q1)) / scale;
        let upper = spectral_norm(&(q1.adjoint() * *m * &q2)) / scale;
        worst = worst.max(lower).max(upper);
        residuals.push(BlockResidual {
            matrix: name,
            lower,
            upper,
        });
    }
    if worst > block_tol {
        return Err(theorem_violation(
            "the computed maximal unitary subspace of P does not reduce the tuple",
            worst,
            &residuals,
        ));
    }

    let compress = |basis: &CMatrix| -> Result<OperatorTuple> {
        if basis.ncols() == 0 {
            return Ok(OperatorTuple::empty(tuple.n()));
        }
        let s: Vec<CMatrix> = tuple
            .s()
            .iter()
            .map(|m| basis.adjoint() * m * basis)
            .collect();
        let p = basis.adjoint() * tuple.p() * basis;
        OperatorTuple::new(s, p).map_err(|e| match e {
            GammaError::InvalidArgument(msg) => theorem_violation(
                &format!("restricted tuple stopped commuting: {msg}"),
                worst,
                &residuals,
            ),
            other => other,
        })
    };
    let unitary_part = compress(&q1)?;
    let cnu_part = compress(&q2)?;

    // the restriction to H1 must be a Γn-unitary …
    if !unitary_part.is_empty() {
        let report = unitary_part.is_gamma_unitary(block_tol)?;
        if !report.verdict {
            return Err(theorem_violation(
                &format!(
                    "restriction to the unitary subspace is not a Γn-unitary ({})",
                    report.failed_check.unwrap_or_default()
                ),
                report.p_unitary_residual,
                &residuals,
            ));
        }
    }
    // … and P restricted to H2 must be completely non-unitary
    if !cnu_part.is_empty() && !is_cnu(cnu_part.p(), tol)? {
        return Err(theorem_violation(
            "restriction of P to the complement still has a unitary part",
            worst,
            &residuals,
        ));
    }

    debug_assert_eq!(q1.ncols() + q2.ncols(), dim);
    Ok(DecompositionResult {
        basis_h1: q1,
        basis_h2: q2,
        unitary_part,
        cnu_part,
        residuals,
    })
}

fn theorem_violation(detail: &str, max_residual: f64, residuals: &[BlockResidual]) -> GammaError {
    GammaError::TheoremViolation {
        detail: detail.into(),
        max_residual,
        residuals: residuals
            .iter()
            .map(|r| (r.matrix.clone(), r.lower, r.upper))
            .collect(),
    }
}

/// Independent re-derivation of the identities a decomposition must
/// satisfy. All findings are reported with margins; nothing errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `(matrix, ‖Q₂*MQ₁‖, ‖Q₁*MQ₂‖)`, normalized by `1 + ‖M‖`.
    pub off_diagonal: Vec<(String, f64, f64)>,
    /// `‖S_{i,11} − S_{n−i,11}* P₁‖ / (1 + scale)` for each `i`.
    pub pairing_h1: Vec<(String, f64)>,
    /// `‖Q₁M₁₁Q₁* + Q₂M₂₂Q₂* − M‖ / (1 + ‖M‖)` per matrix.
    pub reconstruction: Vec<(String, f64)>,
    pub max_off_diagonal: f64,
    pub max_pairing: f64,
    pub max_reconstruction: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Check a decomposition against the tuple it came from: vanishing
/// off-diagonal blocks, the `ℋ₁` pairing identities `S_{i,11} =
/// S_{n−i,11}* P₁`, and block-diagonal reconstruction of the input.
pub fn verify_decomposition(
    tuple: &OperatorTuple,
    result: &DecompositionResult,
    tol: f64,
) -> VerificationReport {
    let q1 = &result.basis_h1;
    let q2 = &result.basis_h2;
    assert_eq!(q1.nrows(), tuple.dim(), "basis does not match the tuple");
    assert_eq!(q1.ncols() + q2.ncols(), tuple.dim());

    let names = tuple.matrix_names();
    let mats = tuple.matrices();

    let mut off_diagonal = Vec::with_capacity(mats.len());
    let mut reconstruction = Vec::with_capacity(mats.len());
    let mut max_off = 0.0f64;
    let mut max_rec = 0.0f64;
    for (m, name) in mats.iter().zip(&names) {
        let scale = 1.0 + spectral_norm(m);
        let lower = spectral_norm(&(q2.adjoint() * *m * q1)) / scale;
        let upper = spectral_norm(&(q1.adjoint() * *m * q2)) / scale;
        max_off = max_off.max(lower).max(upper);
        off_diagonal.push((name.clone(), lower, upper));

        let m11 = q1.adjoint() * *m * q1;
        let m22 = q2.adjoint() * *m * q2;
        let rebuilt = q1 * m11 * q1.adjoint() + q2 * m22 * q2.adjoint();
        let err = spectral_norm(&(rebuilt - *m)) / scale;
        max_rec = max_rec.max(err);
        reconstruction.push((name.clone(), err));
    }

    let mut pairing_h1 = Vec::new();
    let mut max_pair = 0.0f64;
    if q1.ncols() > 0 {
        let p1 = q1.adjoint() * tuple.p() * q1;
        let n = tuple.n();
        for i in 1..n {
            let si = q1.adjoint() * tuple.s_mat(i) * q1;
            let sni = q1.adjoint() * tuple.s_mat(n - i) * q1;
            let scale = 1.0 + spectral_norm(&si) + spectral_norm(&sni);
            let resid = spectral_norm(&(&si - sni.adjoint() * &p1)) / scale;
            max_pair = max_pair.max(resid);
            pairing_h1.push((format!("S{i}"), resid));
        }
    }

    let passed = max_off <= tol && max_pair <= tol && max_rec <= tol;
    VerificationReport {
        off_diagonal,
        pairing_h1,
        reconstruction,
        max_off_diagonal: max_off,
        max_pairing: max_pair,
        max_reconstruction: max_rec,
        tol,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cplx;
    use crate::linalg::Complex64;
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> Complex64 {
        cplx(re, im)
    }

    fn diag(entries: &[Complex64]) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_vec(entries.to_vec()))
    }

    #[test]
    fn identity_has_full_unitary_subspace() {
        let p = CMatrix::identity(4, 4);
        let q = maximal_unitary_subspace(&p, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(q.ncols(), 4);
    }

    #[test]
    fn nilpotent_jordan_block_has_trivial_subspace() {
        let p = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let q = maximal_unitary_subspace(&p, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(q.ncols(), 0);
        assert!(is_cnu(&p, DEFAULT_KERNEL_TOL).unwrap());
    }

    #[test]
    fn shift_needs_the_iteration() {
        // 3×3 upper shift: K₀ = span(e₂) but Pe₂ = e₁ leaves K₀,
        // so the fixed point is {0}
        let mut p = CMatrix::zeros(3, 3);
        p[(0, 1)] = c(1.0, 0.0);
        p[(1, 2)] = c(1.0, 0.0);
        let defect = CMatrix::identity(3, 3) - p.adjoint() * &p;
        // hand computation: I − P*P = diag(1, 0, 0)
        assert!((defect[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(defect[(1, 1)].norm() < 1e-15);
        let k0 = numerical_kernel(
            &vstack(
                &(CMatrix::identity(3, 3) - p.adjoint() * &p),
                &(CMatrix::identity(3, 3) - &p * p.adjoint()),
            ),
            DEFAULT_KERNEL_TOL,
        );
        assert_eq!(k0.ncols(), 1, "K₀ should be one-dimensional");
        let q = maximal_unitary_subspace(&p, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(q.ncols(), 0);
    }

    #[test]
    fn contractive_jordan_with_interior_eigenvalue_is_cnu() {
        // J = λI + μN with |λ| + μ ≤ 1: I − J*J is nonsingular
        let j = CMatrix::from_row_slice(2, 2, &[c(0.3, 0.0), c(0.7, 0.0), c(0.0, 0.0), c(0.3, 0.0)]);
        assert!(is_cnu(&j, DEFAULT_KERNEL_TOL).unwrap());
    }

    #[test]
    fn unitary_is_not_cnu() {
        assert!(!is_cnu(&CMatrix::identity(3, 3), DEFAULT_KERNEL_TOL).unwrap());
        let d = diag(&[c(1.0, 0.0), c(0.5, 0.0)]);
        assert!(!is_cnu(&d, DEFAULT_KERNEL_TOL).unwrap());
    }

    #[test]
    fn is_cnu_rejects_expansive_input() {
        let p = diag(&[c(2.0, 0.0)]);
        assert!(matches!(
            is_cnu(&p, DEFAULT_KERNEL_TOL),
            Err(GammaError::InvalidArgument(_))
        ));
    }

    #[test]
    fn decompose_diagonal_example() {
        // S₁ = diag(2, 1/2), P = diag(1, 1/4): ℋ₁ = span(e₁), the unitary
        // part is the scalar (2, 1), the cnu part the scalar (1/2, 1/4)
        let tuple = OperatorTuple::new(
            vec![diag(&[c(2.0, 0.0), c(0.5, 0.0)])],
            diag(&[c(1.0, 0.0), c(0.25, 0.0)]),
        )
        .unwrap();
        let result = canonical_decompose(&tuple, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(result.unitary_dim(), 1);
        assert!((result.unitary_part.s_mat(1)[(0, 0)] - c(2.0, 0.0)).norm() < 1e-10);
        assert!((result.unitary_part.p()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-10);
        assert!((result.cnu_part.s_mat(1)[(0, 0)] - c(0.5, 0.0)).norm() < 1e-10);
        assert!((result.cnu_part.p()[(0, 0)] - c(0.25, 0.0)).norm() < 1e-10);

        let report = verify_decomposition(&tuple, &result, 1e-8);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn decompose_trivial_cases() {
        // P = I: k = dim
        let tuple = OperatorTuple::new(
            vec![diag(&[c(2.0, 0.0), c(0.0, 0.0)])],
            CMatrix::identity(2, 2),
        )
        .unwrap();
        let result = canonical_decompose(&tuple, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(result.unitary_dim(), 2);
        assert!(result.cnu_part.is_empty());

        // nilpotent P: k = 0
        let mut p = CMatrix::zeros(2, 2);
        p[(0, 1)] = c(0.5, 0.0);
        let tuple = OperatorTuple::new(vec![p.clone().scale(2.0)], p).unwrap();
        let result = canonical_decompose(&tuple, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(result.unitary_dim(), 0);
        assert_eq!(result.cnu_part.dim(), 2);
        let report = verify_decomposition(&tuple, &result, 1e-8);
        assert!(report.passed);
    }

    #[test]
    fn corrupted_basis_fails_verification() {
        let tuple = OperatorTuple::new(
            vec![diag(&[c(2.0, 0.0), c(0.5, 0.0)])],
            diag(&[c(1.0, 0.0), c(0.25, 0.0)]),
        )
        .unwrap();
        let result = canonical_decompose(&tuple, DEFAULT_KERNEL_TOL).unwrap();

        // swapping the subspaces keeps both reducing, so the off-diagonal
        // blocks stay clean but the H1 pairing identity breaks
        let swapped = DecompositionResult {
            basis_h1: result.basis_h2.clone(),
            basis_h2: result.basis_h1.clone(),
            unitary_part: result.cnu_part.clone(),
            cnu_part: result.unitary_part.clone(),
            residuals: result.residuals.clone(),
        };
        let report = verify_decomposition(&tuple, &swapped, 1e-8);
        assert!(!report.passed);
        assert!(report.max_pairing > 1e-3, "{report:?}");

        // mixing a vector across the two subspaces breaks the
        // off-diagonal blocks themselves
        let inv_sqrt2 = c(0.5f64.sqrt(), 0.0);
        let mut mixed_h1 = CMatrix::zeros(2, 1);
        mixed_h1[(0, 0)] = inv_sqrt2;
        mixed_h1[(1, 0)] = inv_sqrt2;
        let mut mixed_h2 = CMatrix::zeros(2, 1);
        mixed_h2[(0, 0)] = inv_sqrt2;
        mixed_h2[(1, 0)] = -inv_sqrt2;
        let mixed = DecompositionResult {
            basis_h1: mixed_h1,
            basis_h2: mixed_h2,
            unitary_part: result.unitary_part.clone(),
            cnu_part: result.cnu_part.clone(),
            residuals: result.residuals.clone(),
        };
        let report = verify_decomposition(&tuple, &mixed, 1e-8);
        assert!(!report.passed);
        assert!(report.max_off_diagonal > 1e-2, "{report:?}");
    }
}
