//! Deterministic, seeded instance generators with known ground truth.
//!
//! Every model is constructed so that its label is provable:
//!
//! * `normal_*` tuples are unitary conjugates of diagonal tuples, so
//!   their joint spectrum is the prescribed point set and membership is
//!   exact by the spectral theorem;
//! * `single_contraction_blaschke` tuples are elementary symmetric
//!   functions of disc maps of one contraction, hence genuine
//!   contractions for the symmetrized polydisc by the classical von
//!   Neumann inequality, and genuinely non-normal when the base matrix
//!   is;
//! * `mixed_direct_sum` carries the exact dimension of its unitary block
//!   as the decomposition oracle;
//! * `outside_perturbed` instances have a fiber root pushed out of the
//!   disc by a controlled margin.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};
use crate::linalg::{complex_gaussian, cplx, random_unitary, spectral_norm, CMatrix, Complex64};
use crate::point::{symmetrize, GammaPoint};
use crate::operator::OperatorTuple;

/// Interior radius cap: interior samples keep every root modulus at most
/// `1 − 1e−3`, so their membership margins clear every tolerance band.
const INTERIOR_GAP: f64 = 1e-3;

/// Instance families the generator can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    NormalInterior,
    NormalBoundary,
    MixedDirectSum,
    SingleContractionBlaschke,
    CnuJordan,
    OutsidePerturbed,
}

impl Model {
    pub fn parse(name: &str) -> Result<Model> {
        match name {
            "normal_interior" => Ok(Model::NormalInterior),
            "normal_boundary" => Ok(Model::NormalBoundary),
            "mixed_direct_sum" => Ok(Model::MixedDirectSum),
            "single_contraction_blaschke" => Ok(Model::SingleContractionBlaschke),
            "cnu_jordan" => Ok(Model::CnuJordan),
            "outside_perturbed" => Ok(Model::OutsidePerturbed),
            other => Err(GammaError::InvalidArgument(format!(
                "unknown generator model '{other}'"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::NormalInterior => "normal_interior",
            Model::NormalBoundary => "normal_boundary",
            Model::MixedDirectSum => "mixed_direct_sum",
            Model::SingleContractionBlaschke => "single_contraction_blaschke",
            Model::CnuJordan => "cnu_jordan",
            Model::OutsidePerturbed => "outside_perturbed",
        }
    }

    /// Whether instances of this model are `Γn`-contractions.
    pub fn is_gamma_contraction(&self) -> bool {
        !matches!(self, Model::OutsidePerturbed)
    }
}

/// Everything needed to reproduce an instance bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n: usize,
    pub dim: usize,
    pub model: Model,
}

/// Ground truth carried next to a generated instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundTruth {
    pub model: Model,
    pub is_gamma_contraction: bool,
    /// Expected dimension of the maximal unitary subspace, when the
    /// construction pins it down.
    pub expected_unitary_dim: Option<usize>,
    /// Joint spectrum as coordinate tuples, for normal models.
    pub spectrum: Option<Vec<Vec<(f64, f64)>>>,
}

/// Sampling regime for scalar points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointMode {
    Interior,
    Boundary,
    Outside,
}

/// Sample a point of the requested regime.
///
/// Interior points symmetrize roots of modulus at most `1 − 1e−3`;
/// boundary points use exactly unimodular roots (angle parametrization,
/// so no round-off leaks across `|p| = 1`); outside points inflate one
/// root of an interior sample to modulus `1 + δ`, `δ ∈ [1e−2, 1]`.
pub fn sample_gamma_point<R: Rng + ?Sized>(n: usize, rng: &mut R, mode: PointMode) -> GammaPoint {
    let mut roots = Vec::with_capacity(n);
    match mode {
        PointMode::Interior => {
            for _ in 0..n {
                roots.push(random_disc_point(rng, 1.0 - INTERIOR_GAP));
            }
        }
        PointMode::Boundary => {
            for _ in 0..n {
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                roots.push(cplx(theta.cos(), theta.sin()));
            }
        }
        PointMode::Outside => {
            for _ in 0..n {
                roots.push(random_disc_point(rng, 1.0 - INTERIOR_GAP));
            }
            let j = rng.random_range(0..n);
            let delta = rng.random_range(1e-2..=1.0);
            let direction = if roots[j].norm() > 1e-12 {
                roots[j] / cplx(roots[j].norm(), 0.0)
            } else {
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                cplx(theta.cos(), theta.sin())
            };
            roots[j] = direction * cplx(1.0 + delta, 0.0);
        }
    }
    symmetrize(&roots).expect("n ≥ 2 enforced by callers")
}

fn random_disc_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    cplx(r * theta.cos(), r * theta.sin())
}

/// Normal tuple with prescribed joint spectrum: diagonal matrices built
/// from the aligned point coordinates, conjugated by `u`.
pub fn normal_tuple(points: &[GammaPoint], u: &CMatrix) -> Result<OperatorTuple> {
    let dim = points.len();
    if dim == 0 {
        return Err(GammaError::InvalidDimension(
            "a normal tuple needs at least one spectrum point".into(),
        ));
    }
    let n = points[0].n();
    if points.iter().any(|pt| pt.n() != n) {
        return Err(GammaError::InvalidArgument(
            "all spectrum points must share the same n".into(),
        ));
    }
    if u.nrows() != dim || u.ncols() != dim {
        return Err(GammaError::InvalidDimension(format!(
            "conjugating unitary must be {dim}×{dim}"
        )));
    }
    let mut mats = Vec::with_capacity(n);
    for coord in 0..n {
        let mut d = CMatrix::zeros(dim, dim);
        for (j, pt) in points.iter().enumerate() {
            d[(j, j)] = pt.coords()[coord];
        }
        mats.push(u * d * u.adjoint());
    }
    let p = mats.pop().expect("n ≥ 2");
    OperatorTuple::new(mats, p)
}

/// A holomorphic self-map of the disc used by the one-contraction model:
/// either a Möbius automorphism `phase·(z − a)/(1 − āz)` or a constant.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum DiscMap {
    Mobius { a: (f64, f64), phase: (f64, f64) },
    Constant((f64, f64)),
}

impl DiscMap {
    pub fn identity() -> Self {
        DiscMap::Mobius {
            a: (0.0, 0.0),
            phase: (1.0, 0.0),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            DiscMap::Mobius { a, phase } => {
                let a = cplx(a.0, a.1);
                let phase = cplx(phase.0, phase.1);
                if a.norm() >= 1.0 {
                    return Err(GammaError::InvalidArgument(
                        "Möbius parameter must satisfy |a| < 1".into(),
                    ));
                }
                if (phase.norm() - 1.0).abs() > 1e-12 {
                    return Err(GammaError::InvalidArgument(
                        "Möbius phase must be unimodular".into(),
                    ));
                }
            }
            DiscMap::Constant(c) => {
                if cplx(c.0, c.1).norm() > 1.0 {
                    return Err(GammaError::InvalidArgument(
                        "constant map must land in the closed disc".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn eval_scalar(&self, z: Complex64) -> Complex64 {
        match *self {
            DiscMap::Mobius { a, phase } => {
                let a = cplx(a.0, a.1);
                let phase = cplx(phase.0, phase.1);
                phase * (z - a) / (cplx(1.0, 0.0) - a.conj() * z)
            }
            DiscMap::Constant(c) => cplx(c.0, c.1),
        }
    }

    pub fn eval_matrix(&self, t: &CMatrix) -> Result<CMatrix> {
        let dim = t.nrows();
        match *self {
            DiscMap::Mobius { a, phase } => {
                let a = cplx(a.0, a.1);
                let phase = cplx(phase.0, phase.1);
                let eye = CMatrix::identity(dim, dim);
                let denom = &eye - t * a.conj();
                let inv = denom.try_inverse().ok_or(GammaError::NumericalFailure {
                    context: "Möbius denominator inversion".into(),
                    residual: f64::NAN,
                })?;
                Ok((t - eye * a) * inv * phase)
            }
            DiscMap::Constant(c) => Ok(CMatrix::identity(dim, dim) * cplx(c.0, c.1)),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, max_a: f64, constant_prob: f64) -> Self {
        if rng.random::<f64>() < constant_prob {
            DiscMap::Constant({
                let z = random_disc_point(rng, 0.9);
                (z.re, z.im)
            })
        } else {
            let a = random_disc_point(rng, max_a);
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            DiscMap::Mobius {
                a: (a.re, a.im),
                phase: (theta.cos(), theta.sin()),
            }
        }
    }
}

/// Symmetrized tuple of `(f₁(T), …, fₙ(T))` for one contraction `T`.
///
/// The entries are elementary symmetric functions of commuting disc maps
/// of `T`, so the tuple is a `Γn`-contraction whenever `‖T‖ ≤ 1`, and it
/// is non-normal whenever `T` is.
pub fn single_contraction_model(t: &CMatrix, maps: &[DiscMap]) -> Result<OperatorTuple> {
    let n = maps.len();
    if n < 2 {
        return Err(GammaError::InvalidDimension(
            "the one-contraction model needs n ≥ 2 disc maps".into(),
        ));
    }
    let norm_t = spectral_norm(t);
    if norm_t > 1.0 + 1e-12 {
        return Err(GammaError::InvalidArgument(format!(
            "base matrix must be a contraction, ‖T‖ = {norm_t}"
        )));
    }
    for m in maps {
        m.validate()?;
    }
    let dim = t.nrows();
    let images: Vec<CMatrix> = maps
        .iter()
        .map(|m| m.eval_matrix(t))
        .collect::<Result<_>>()?;

    // incremental product of (X − f_j(T)): a[j] is the coefficient of
    // X^{n−j}, from which e_i = (−1)^i a[i]
    let mut a: Vec<CMatrix> = vec![CMatrix::zeros(dim, dim); n + 1];
    a[0] = CMatrix::identity(dim, dim);
    for (k, f) in images.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = a[j - 1].clone();
            a[j] -= f * prev;
        }
    }
    let mut sign = -1.0;
    let mut s = Vec::with_capacity(n - 1);
    for item in a.iter().take(n).skip(1) {
        s.push(item * cplx(sign, 0.0));
        sign = -sign;
    }
    let p = &a[n] * cplx(sign, 0.0);
    OperatorTuple::new(s, p)
}

/// Direct sum of a normal boundary tuple and a completely non-unitary
/// model, conjugated by `u`. Returns the tuple and the ground-truth
/// dimension of the unitary block.
pub fn mixed_direct_sum(
    unitary_points: &[GammaPoint],
    cnu: &OperatorTuple,
    u: &CMatrix,
) -> Result<(OperatorTuple, usize)> {
    let k = unitary_points.len();
    let m = cnu.dim();
    let dim = k + m;
    if dim == 0 {
        return Err(GammaError::InvalidDimension(
            "direct sum needs at least one block".into(),
        ));
    }
    let n = if k > 0 { unitary_points[0].n() } else { cnu.n() };
    if unitary_points.iter().any(|pt| pt.n() != n) || (m > 0 && cnu.n() != n) {
        return Err(GammaError::InvalidArgument(
            "blocks must share the same n".into(),
        ));
    }
    if u.nrows() != dim || u.ncols() != dim {
        return Err(GammaError::InvalidDimension(format!(
            "conjugating unitary must be {dim}×{dim}"
        )));
    }

    let mut mats = Vec::with_capacity(n);
    for coord in 0..n {
        let mut block = CMatrix::zeros(dim, dim);
        for (j, pt) in unitary_points.iter().enumerate() {
            block[(j, j)] = pt.coords()[coord];
        }
        if m > 0 {
            let sub = if coord < n - 1 {
                cnu.s_mat(coord + 1)
            } else {
                cnu.p()
            };
            block.view_mut((k, k), (m, m)).copy_from(sub);
        }
        mats.push(u * block * u.adjoint());
    }
    let p = mats.pop().expect("n ≥ 2");
    Ok((OperatorTuple::new(mats, p)?, k))
}

/// Random contraction: a Gaussian matrix scaled to unit spectral norm,
/// then shrunk by `shrink`.
pub fn random_contraction<R: Rng + ?Sized>(dim: usize, shrink: f64, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let norm = spectral_norm(&g).max(f64::MIN_POSITIVE);
    g * cplx(shrink / norm, 0.0)
}

/// Jordan-style strict contraction: direct sum of blocks `λI + μN` with
/// `|λ| + μ < 1`, genuinely non-normal and completely non-unitary.
fn jordan_contraction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut t = CMatrix::zeros(dim, dim);
    let mut at = 0;
    while at < dim {
        let size = rng.random_range(1..=(dim - at).min(8));
        let lambda = random_disc_point(rng, 0.5);
        let mu = 0.95 * (1.0 - lambda.norm());
        for j in 0..size {
            t[(at + j, at + j)] = lambda;
            if j + 1 < size {
                t[(at + j, at + j + 1)] = cplx(mu, 0.0);
            }
        }
        at += size;
    }
    t
}

/// Strictly contractive non-normal `Γn`-contraction used as the cnu block
/// of mixed sums. `‖P‖ < 1` is guaranteed by the Schwarz–Pick bound and
/// asserted, so instances are completely non-unitary by construction.
fn cnu_model<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Result<OperatorTuple> {
    let t = random_contraction(dim, 0.95, rng);
    let maps: Vec<DiscMap> = (0..n).map(|_| DiscMap::random(rng, 0.7, 0.0)).collect();
    let tuple = single_contraction_model(&t, &maps)?;
    debug_assert!(tuple.p_norm() < 1.0 - 1e-4, "cnu block drifted to the circle");
    Ok(tuple)
}

/// Normal tuple violating the necessary norm bounds: every diagonal point
/// comes from an n-fold root of modulus `1 + δ`, `δ ≥ 0.2`, so
/// `‖S₁‖ = n(1 + δ) > n` and `‖P‖ > 1`.
pub fn norm_violating_tuple<R: Rng + ?Sized>(
    n: usize,
    dim: usize,
    rng: &mut R,
) -> Result<OperatorTuple> {
    let mut points = Vec::with_capacity(dim);
    for _ in 0..dim {
        let delta = rng.random_range(0.2..=1.0);
        let theta = std::f64::consts::TAU * rng.random::<f64>();
        let root = cplx(theta.cos(), theta.sin()) * cplx(1.0 + delta, 0.0);
        points.push(symmetrize(&vec![root; n])?);
    }
    let u = random_unitary(dim, rng);
    normal_tuple(&points, &u)
}

/// Generate the instance described by `spec`, together with its ground
/// truth. Identical specs produce bit-identical instances.
pub fn generate(spec: &GeneratorSpec) -> Result<(OperatorTuple, GroundTruth)> {
    if spec.n < 2 {
        return Err(GammaError::InvalidDimension("generator needs n ≥ 2".into()));
    }
    if spec.dim < 1 {
        return Err(GammaError::InvalidDimension(
            "generator needs dim ≥ 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let dim = spec.dim;

    let spectrum_of = |points: &[GammaPoint]| {
        points
            .iter()
            .map(|pt| pt.coords().iter().map(|z| (z.re, z.im)).collect())
            .collect::<Vec<Vec<(f64, f64)>>>()
    };

    match spec.model {
        Model::NormalInterior | Model::NormalBoundary | Model::OutsidePerturbed => {
            let points: Vec<GammaPoint> = (0..dim)
                .map(|j| {
                    let mode = match spec.model {
                        Model::NormalInterior => PointMode::Interior,
                        Model::NormalBoundary => PointMode::Boundary,
                        // at least half the spectrum is pushed outside
                        _ => {
                            if j % 2 == 0 {
                                PointMode::Outside
                            } else {
                                PointMode::Interior
                            }
                        }
                    };
                    sample_gamma_point(n, &mut rng, mode)
                })
                .collect();
            let u = random_unitary(dim, &mut rng);
            let tuple = normal_tuple(&points, &u)?;
            let expected_unitary_dim = match spec.model {
                Model::NormalInterior => Some(0),
                Model::NormalBoundary => Some(dim),
                _ => None,
            };
            Ok((
                tuple,
                GroundTruth {
                    model: spec.model,
                    is_gamma_contraction: spec.model.is_gamma_contraction(),
                    expected_unitary_dim,
                    spectrum: Some(spectrum_of(&points)),
                },
            ))
        }
        Model::MixedDirectSum => {
            let k = rng.random_range(0..=dim);
            let points: Vec<GammaPoint> = (0..k)
                .map(|_| sample_gamma_point(n, &mut rng, PointMode::Boundary))
                .collect();
            let cnu = if dim - k > 0 {
                cnu_model(n, dim - k, &mut rng)?
            } else {
                OperatorTuple::empty(n)
            };
            let u = random_unitary(dim, &mut rng);
            let (tuple, truth_k) = mixed_direct_sum(&points, &cnu, &u)?;
            Ok((
                tuple,
                GroundTruth {
                    model: spec.model,
                    is_gamma_contraction: true,
                    expected_unitary_dim: Some(truth_k),
                    spectrum: if k == dim { Some(spectrum_of(&points)) } else { None },
                },
            ))
        }
        Model::SingleContractionBlaschke => {
            let t = random_contraction(dim, 0.95, &mut rng);
            let maps: Vec<DiscMap> = (0..n).map(|_| DiscMap::random(&mut rng, 0.7, 0.2)).collect();
            let tuple = single_contraction_model(&t, &maps)?;
            let strict = tuple.p_norm() < 1.0 - 1e-6;
            Ok((
                tuple,
                GroundTruth {
                    model: spec.model,
                    is_gamma_contraction: true,
                    expected_unitary_dim: if strict { Some(0) } else { None },
                    spectrum: None,
                },
            ))
        }
        Model::CnuJordan => {
            let t = jordan_contraction(dim, &mut rng);
            let mut maps = vec![DiscMap::identity(); n];
            for m in maps.iter_mut().skip(1) {
                *m = DiscMap::random(&mut rng, 0.5, 0.0);
            }
            let tuple = single_contraction_model(&t, &maps)?;
            debug_assert!(tuple.p_norm() < 1.0 - 1e-6);
            Ok((
                tuple,
                GroundTruth {
                    model: spec.model,
                    is_gamma_contraction: true,
                    expected_unitary_dim: Some(0),
                    spectrum: None,
                },
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{Region, DEFAULT_MEMBERSHIP_TOL};

    #[test]
    fn point_modes_respect_their_regions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=5 {
            for _ in 0..50 {
                let interior = sample_gamma_point(n, &mut rng, PointMode::Interior);
                assert!(interior
                    .membership(Region::Closed, DEFAULT_MEMBERSHIP_TOL)
                    .unwrap()
                    .inside);

                let boundary = sample_gamma_point(n, &mut rng, PointMode::Boundary);
                assert!((boundary.p().norm() - 1.0).abs() < 1e-12);
                assert!(boundary
                    .membership(Region::DistinguishedBoundary, DEFAULT_MEMBERSHIP_TOL)
                    .unwrap()
                    .inside);

                let outside = sample_gamma_point(n, &mut rng, PointMode::Outside);
                let verdict = outside
                    .membership(Region::Closed, DEFAULT_MEMBERSHIP_TOL)
                    .unwrap();
                assert!(!verdict.inside);
                assert!(
                    verdict.max_root_modulus >= 1.0 + 5e-3,
                    "outside margin too small: {}",
                    verdict.max_root_modulus
                );
            }
        }
    }

    #[test]
    fn deterministic_given_spec() {
        let spec = GeneratorSpec {
            seed: 424242,
            n: 3,
            dim: 5,
            model: Model::MixedDirectSum,
        };
        let (a, ta) = generate(&spec).unwrap();
        let (b, tb) = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(ta.expected_unitary_dim, tb.expected_unitary_dim);
    }

    #[test]
    fn blaschke_from_jordan_gives_binomial_powers() {
        // T = 2×2 nilpotent Jordan block, identity maps:
        // S_i = C(n,i) T^i, P = T^n
        let mut t = CMatrix::zeros(2, 2);
        t[(0, 1)] = cplx(1.0, 0.0);
        let maps = vec![DiscMap::identity(); 3];
        let tuple = single_contraction_model(&t, &maps).unwrap();
        // S₁ = 3T
        assert!((tuple.s_mat(1)[(0, 1)] - cplx(3.0, 0.0)).norm() < 1e-14);
        // S₂ = 3T², which vanishes for a 2×2 block
        assert!(spectral_norm(tuple.s_mat(2)) < 1e-14);
        // P = T³ = 0
        assert!(spectral_norm(tuple.p()) < 1e-14);
    }

    #[test]
    fn constant_base_gives_constant_tuple() {
        let t = CMatrix::zeros(3, 3);
        let maps = vec![
            DiscMap::Constant((0.5, 0.0)),
            DiscMap::Constant((0.0, 0.5)),
        ];
        let tuple = single_contraction_model(&t, &maps).unwrap();
        let expect = symmetrize(&[cplx(0.5, 0.0), cplx(0.0, 0.5)]).unwrap();
        assert!((tuple.s_mat(1)[(0, 0)] - expect.s_coord(1)).norm() < 1e-14);
        assert!((tuple.p()[(0, 0)] - expect.p()).norm() < 1e-14);
    }

    #[test]
    fn single_contraction_model_rejects_expansive_base() {
        let t = CMatrix::identity(2, 2) * cplx(1.5, 0.0);
        assert!(single_contraction_model(&t, &vec![DiscMap::identity(); 2]).is_err());
    }

    #[test]
    fn norm_violating_tuples_break_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let tuple = norm_violating_tuple(3, 4, &mut rng).unwrap();
            let worst = tuple.s_norms()[0];
            assert!(worst > 3.0 + 0.1, "‖S₁‖ = {worst}");
            assert!(tuple.p_norm() > 1.0 + 0.1);
        }
    }

    #[test]
    fn mixed_sum_coverage_hits_both_degenerate_cases() {
        let mut saw_zero = false;
        let mut saw_full = false;
        for seed in 0..40 {
            let spec = GeneratorSpec {
                seed,
                n: 2,
                dim: 3,
                model: Model::MixedDirectSum,
            };
            let (_, truth) = generate(&spec).unwrap();
            match truth.expected_unitary_dim {
                Some(0) => saw_zero = true,
                Some(3) => saw_full = true,
                _ => {}
            }
        }
        assert!(saw_zero && saw_full);
    }
}
