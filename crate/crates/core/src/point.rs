//! Scalar geometry of the symmetrized polydisc.
//!
//! A point of `ℂⁿ` is written `(s₁, …, sₙ₋₁, p)`. It lies in the closed
//! symmetrized polydisc `Γn` exactly when its fiber polynomial
//! `zⁿ − s₁zⁿ⁻¹ + s₂zⁿ⁻² − ⋯ + (−1)ⁿp` has all roots in the closed unit
//! disc; the open domain `Gn` and the distinguished boundary `bΓn` are the
//! strict and the all-unimodular variants.
//!
//! Membership is decided by root location (companion-matrix eigenvalues).
//! Near the decision threshold the root moduli of a k-fold boundary root
//! only carry `eps^{1/k}` digits, so verdicts inside that uncertainty band
//! are delegated to algebraically stable characterizations: the
//! coefficient recursion for `|p| < 1` and the pairing identities
//! `sᵢ = s̄ₙ₋ᵢ p` on `|p| = 1`. Both routes agree with the root test
//! wherever the root test is trustworthy.

use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};
use crate::linalg::{complex_eigenvalues, cplx, CMatrix, Complex64};

/// Default absolute tolerance on root moduli for membership decisions.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Tolerance for accepting a rotation parameter as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Width of the `|p| ≈ 1` zone in which the coefficient recursion is
/// refused and the boundary characterization is used instead.
const P_BOUNDARY_GUARD: f64 = 1e-8;

/// Region of the symmetrized polydisc a membership query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// Closed symmetrized polydisc `Γn`.
    Closed,
    /// Open symmetrized polydisc `Gn`.
    Open,
    /// Distinguished boundary `bΓn` (all fiber roots unimodular).
    DistinguishedBoundary,
}

/// Outcome of a membership query.
///
/// `max_root_modulus` is always the raw value computed from the fiber
/// roots. For `Closed`/`Open`, `margin` is the signed distance
/// `1 − max_root_modulus`; for the distinguished boundary it is the
/// largest deviation `||z| − 1|` over all fiber roots. Verdicts near the
/// threshold may be settled algebraically, so re-thresholding on `margin`
/// can be coarser than the verdict itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub region: Region,
    pub inside: bool,
    pub max_root_modulus: f64,
    pub margin: f64,
}

/// A candidate point `(s₁, …, sₙ₋₁, p)` of `ℂⁿ`, `n ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPoint {
    n: usize,
    s: Vec<Complex64>,
    p: Complex64,
}

impl GammaPoint {
    pub fn new(s: Vec<Complex64>, p: Complex64) -> Result<Self> {
        let n = s.len() + 1;
        if n < 2 {
            return Err(GammaError::InvalidDimension(format!(
                "a point of the symmetrized n-disc needs n ≥ 2, got n = {n}"
            )));
        }
        Ok(GammaPoint { n, s, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &[Complex64] {
        &self.s
    }

    /// `sᵢ` with the 1-based index used throughout.
    pub fn s_coord(&self, i: usize) -> Complex64 {
        self.s[i - 1]
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    /// All coordinates `(s₁, …, sₙ₋₁, p)` as one vector.
    pub fn coords(&self) -> Vec<Complex64> {
        let mut c = self.s.clone();
        c.push(self.p);
        c
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Monic fiber polynomial coefficients `[a₁, …, aₙ]` with
    /// `zⁿ + a₁zⁿ⁻¹ + ⋯ + aₙ`, i.e. `aᵢ = (−1)ⁱsᵢ`, `aₙ = (−1)ⁿp`.
    pub fn fiber_coefficients(&self) -> Vec<Complex64> {
        let mut a = Vec::with_capacity(self.n);
        let mut sign = -1.0;
        for i in 1..self.n {
            a.push(self.s[i - 1] * cplx(sign, 0.0));
            sign = -sign;
        }
        a.push(self.p * cplx(sign, 0.0));
        a
    }

    /// Roots (with multiplicity) of the fiber polynomial.
    ///
    /// Exact zero trailing coefficients are deflated first, degrees 1 and 2
    /// are solved in closed form, the rest goes through the companion
    /// matrix. The Vieta round trip `symmetrize(roots) ≈ self` is verified
    /// to relative tolerance `1e−9·(1 + ‖self‖)` and a violation is
    /// reported as a numerical failure.
    pub fn fiber_roots(&self) -> Result<Vec<Complex64>> {
        let roots = poly_roots(&self.fiber_coefficients())?;
        let back = symmetrize(&roots)?;
        let residual: f64 = self
            .coords()
            .iter()
            .zip(back.coords())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let allowed = 1e-9 * (1.0 + self.norm());
        if residual > allowed {
            return Err(GammaError::NumericalFailure {
                context: "fiber root extraction (Vieta round trip)".into(),
                residual,
            });
        }
        Ok(roots)
    }

    /// Rotate by a unimodular `ω`: `(ωs₁, ω²s₂, …, ωⁿp)`.
    ///
    /// The fiber roots of the result are exactly `ω` times the fiber roots
    /// of the input.
    pub fn rotate(&self, omega: Complex64) -> Result<GammaPoint> {
        if (omega.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(GammaError::InvalidArgument(format!(
                "rotation parameter must be unimodular, |ω| = {}",
                omega.norm()
            )));
        }
        let mut w = cplx(1.0, 0.0);
        let mut s = Vec::with_capacity(self.n - 1);
        for i in 0..self.n - 1 {
            w *= omega;
            s.push(self.s[i] * w);
        }
        w *= omega;
        GammaPoint::new(s, self.p * w)
    }

    /// The disc-scaled point `(αs₁, α²s₂, …, αⁿp)`.
    ///
    /// For `|α| ≤ 1` this is the family the pencil positivity scans
    /// quantify over; membership in `Γn` is preserved along it.
    pub fn disc_scale(&self, alpha: Complex64) -> GammaPoint {
        let mut w = cplx(1.0, 0.0);
        let mut s = Vec::with_capacity(self.n - 1);
        for i in 0..self.n - 1 {
            w *= alpha;
            s.push(self.s[i] * w);
        }
        w *= alpha;
        GammaPoint {
            n: self.n,
            s,
            p: self.p * w,
        }
    }

    /// Coefficients `(c₁, …, cₙ₋₁)` with `sᵢ = cᵢ + c̄ₙ₋ᵢ p`.
    ///
    /// For `|p| < 1` the paired linear system has the unique solution
    /// `cᵢ = (sᵢ − s̄ₙ₋ᵢ p) / (1 − |p|²)`; the point lies in `Γn` exactly
    /// when `(c₁, …, cₙ₋₁) ∈ Γn₋₁`. Returns `None` for `|p| ≥ 1`, where
    /// the system degenerates.
    pub fn costara_coefficients(&self) -> Option<Vec<Complex64>> {
        let pn = self.p.norm();
        if pn >= 1.0 {
            return None;
        }
        let denom = 1.0 - pn * pn;
        let mut c = Vec::with_capacity(self.n - 1);
        for i in 1..self.n {
            let num = self.s[i - 1] - self.s[self.n - 1 - i].conj() * self.p;
            c.push(num / cplx(denom, 0.0));
        }
        Some(c)
    }

    /// Recursive membership test through the coefficient recursion.
    ///
    /// `None` when some recursion level lands inside the `|p| ≈ 1` guard
    /// zone, where the linear system is too ill-conditioned to trust.
    pub fn costara_membership(&self, tol: f64) -> Option<bool> {
        let pn = self.p.norm();
        if pn > 1.0 + tol {
            return Some(false);
        }
        if pn >= 1.0 - P_BOUNDARY_GUARD {
            return None;
        }
        let c = self.costara_coefficients().expect("|p| < 1 checked above");
        if self.n == 2 {
            return Some(c[0].norm() <= 1.0 + tol);
        }
        let (head, last) = c.split_at(self.n - 2);
        let inner = GammaPoint::new(head.to_vec(), last[0]).expect("n ≥ 3 here");
        inner.costara_membership(tol)
    }

    /// Stable test for membership in the distinguished boundary:
    /// `|p| = 1`, the pairing identities `sᵢ = s̄ₙ₋ᵢ p`, and the scaled
    /// lower-order point `((n−1)/n·s₁, …, 1/n·sₙ₋₁)` in `Γn₋₁`.
    pub fn boundary_algebraic(&self, tol: f64) -> Result<bool> {
        if (self.p.norm() - 1.0).abs() > tol {
            return Ok(false);
        }
        for i in 1..self.n {
            let lhs = self.s[i - 1];
            let rhs = self.s[self.n - 1 - i].conj() * self.p;
            let scale = 1.0 + lhs.norm() + self.s[self.n - 1 - i].norm();
            if (lhs - rhs).norm() > tol * scale {
                return Ok(false);
            }
        }
        let nf = self.n as f64;
        if self.n == 2 {
            return Ok(self.s[0].norm() / 2.0 <= 1.0 + tol);
        }
        let scaled: Vec<Complex64> = (1..self.n)
            .map(|i| self.s[i - 1] * cplx((self.n - i) as f64 / nf, 0.0))
            .collect();
        let (head, last) = scaled.split_at(self.n - 2);
        let inner = GammaPoint::new(head.to_vec(), last[0])?;
        Ok(inner.membership(Region::Closed, tol)?.inside)
    }

    /// Membership in the requested region at absolute tolerance `tol` on
    /// root moduli.
    pub fn membership(&self, region: Region, tol: f64) -> Result<MembershipVerdict> {
        if tol < 0.0 {
            return Err(GammaError::InvalidArgument(
                "membership tolerance must be nonnegative".into(),
            ));
        }
        let roots = self.fiber_roots()?;
        let m_raw = roots.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        let coeff_scale = 1.0
            + self
                .fiber_coefficients()
                .iter()
                .fold(0.0f64, |a, z| a.max(z.norm()));
        let clusters = RootClusters::build(&roots, coeff_scale);

        let verdict = match region {
            Region::Closed => {
                let band = clusters.band_at_max();
                let thresh = 1.0 + tol;
                let inside = if m_raw > thresh + band {
                    false
                } else if m_raw < thresh - band {
                    true
                } else {
                    match self.closed_algebraic(tol)? {
                        Some(v) => v,
                        None => m_raw <= thresh,
                    }
                };
                MembershipVerdict {
                    region,
                    inside,
                    max_root_modulus: m_raw,
                    margin: 1.0 - m_raw,
                }
            }
            Region::Open => {
                let band = clusters.band_at_max();
                let thresh = 1.0 - tol;
                let inside = if m_raw < thresh - band {
                    true
                } else if m_raw > thresh + band {
                    false
                } else {
                    clusters.corrected_max_modulus() < thresh
                };
                MembershipVerdict {
                    region,
                    inside,
                    max_root_modulus: m_raw,
                    margin: 1.0 - m_raw,
                }
            }
            Region::DistinguishedBoundary => {
                let mb_raw = roots
                    .iter()
                    .fold(0.0f64, |a, z| a.max((z.norm() - 1.0).abs()));
                let band = clusters.max_band();
                let inside = if mb_raw <= tol {
                    true
                } else if mb_raw > tol + band {
                    false
                } else {
                    self.boundary_algebraic(tol)?
                };
                MembershipVerdict {
                    region,
                    inside,
                    max_root_modulus: m_raw,
                    margin: mb_raw,
                }
            }
        };
        Ok(verdict)
    }

    /// Tie-breaker for closed membership when the root moduli sit inside
    /// their uncertainty band.
    fn closed_algebraic(&self, tol: f64) -> Result<Option<bool>> {
        let pn = self.p.norm();
        if pn > 1.0 + tol {
            // |p| is the product of the root moduli, so |p| ≤ 1 on Γn
            return Ok(Some(false));
        }
        if pn >= 1.0 - P_BOUNDARY_GUARD {
            // with |p| = 1, membership in Γn forces every root onto the
            // circle, so Γn and bΓn coincide there
            return Ok(Some(self.boundary_algebraic(tol)?));
        }
        Ok(self.costara_membership(tol))
    }
}

/// Clusters of numerically coincident roots with per-cluster error bands.
///
/// A k-fold root computed through a backward-stable eigensolver scatters
/// by roughly `(eps·scale)^{1/k}`, while the cluster centroid is accurate
/// to higher order. Bands derived from cluster sizes tell the membership
/// code when the raw moduli cannot be trusted.
struct RootClusters {
    /// (centroid, size) per cluster.
    clusters: Vec<(Complex64, usize)>,
    /// Index of the cluster containing the largest-modulus root.
    argmax: usize,
    backward: f64,
}

impl RootClusters {
    fn build(roots: &[Complex64], coeff_scale: f64) -> Self {
        let n = roots.len().max(1);
        let backward = f64::EPSILON * coeff_scale * n as f64;
        let radius = 20.0 * backward.powf(1.0 / n as f64);

        // single linkage over ≤ 8 roots
        let mut assignment: Vec<Option<usize>> = vec![None; roots.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..roots.len() {
            if assignment[i].is_some() {
                continue;
            }
            let id = members.len();
            members.push(vec![i]);
            assignment[i] = Some(id);
            let mut frontier = vec![i];
            while let Some(j) = frontier.pop() {
                for k in 0..roots.len() {
                    if assignment[k].is_none() && (roots[j] - roots[k]).norm() <= radius {
                        assignment[k] = Some(id);
                        members[id].push(k);
                        frontier.push(k);
                    }
                }
            }
        }

        let clusters: Vec<(Complex64, usize)> = members
            .iter()
            .map(|idx| {
                let sum: Complex64 = idx.iter().map(|&k| roots[k]).sum();
                (sum / cplx(idx.len() as f64, 0.0), idx.len())
            })
            .collect();

        let mut argmax = 0;
        let mut best = -1.0;
        for (cid, idx) in members.iter().enumerate() {
            for &k in idx {
                if roots[k].norm() > best {
                    best = roots[k].norm();
                    argmax = cid;
                }
            }
        }
        RootClusters {
            clusters,
            argmax,
            backward,
        }
    }

    fn band(&self, size: usize) -> f64 {
        10.0 * self.backward.powf(1.0 / size.max(1) as f64)
    }

    /// Uncertainty of the modulus of the dominant root.
    fn band_at_max(&self) -> f64 {
        self.band(self.clusters[self.argmax].1)
    }

    /// Worst uncertainty over all roots.
    fn max_band(&self) -> f64 {
        self.clusters
            .iter()
            .map(|&(_, k)| self.band(k))
            .fold(0.0, f64::max)
    }

    /// Max root modulus with each cluster replaced by its centroid.
    fn corrected_max_modulus(&self) -> f64 {
        self.clusters
            .iter()
            .map(|(c, _)| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Elementary symmetric coordinates of a root multiset: the image of `z`
/// under the symmetrization map, packaged as a [`GammaPoint`].
///
/// Computed by incremental multiplication of `∏(X − zⱼ)`, then
/// sign-adjusted, which keeps the coefficients backward stable.
pub fn symmetrize(z: &[Complex64]) -> Result<GammaPoint> {
    let n = z.len();
    if n < 2 {
        return Err(GammaError::InvalidDimension(format!(
            "symmetrization needs at least 2 variables, got {n}"
        )));
    }
    // a[j] is the coefficient of X^{n-j} in ∏(X − z_k), a[0] = 1
    let mut a = vec![cplx(0.0, 0.0); n + 1];
    a[0] = cplx(1.0, 0.0);
    for (k, root) in z.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = a[j - 1];
            a[j] -= *root * prev;
        }
    }
    let mut s = Vec::with_capacity(n - 1);
    let mut sign = -1.0;
    for item in a.iter().take(n).skip(1) {
        s.push(*item * cplx(sign, 0.0));
        sign = -sign;
    }
    let p = a[n] * cplx(sign, 0.0);
    GammaPoint::new(s, p)
}

/// Roots of the monic polynomial `zᵈ + a[0]zᵈ⁻¹ + ⋯ + a[d−1]`.
fn poly_roots(a: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut coeffs = a.to_vec();
    let mut roots = Vec::with_capacity(a.len());
    // deflate exact zero roots so that e.g. the origin stays exact
    while coeffs.last().map(|c| *c == cplx(0.0, 0.0)) == Some(true) {
        roots.push(cplx(0.0, 0.0));
        coeffs.pop();
    }
    match coeffs.len() {
        0 => {}
        1 => roots.push(-coeffs[0]),
        2 => {
            let (r1, r2) = quadratic_roots(coeffs[0], coeffs[1]);
            roots.push(r1);
            roots.push(r2);
        }
        d => {
            let mut companion = CMatrix::zeros(d, d);
            for i in 0..d - 1 {
                companion[(i + 1, i)] = cplx(1.0, 0.0);
            }
            for i in 0..d {
                // coefficient of z^i is coeffs[d − 1 − i]
                companion[(i, d - 1)] = -coeffs[d - 1 - i];
            }
            roots.extend(complex_eigenvalues(&companion)?);
        }
    }
    Ok(roots)
}

/// Stable closed form for `z² + bz + c = 0`.
fn quadratic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = b * b - cplx(4.0, 0.0) * c;
    let sq = disc.sqrt();
    // pick the sign that avoids cancellation in b ± sq
    let sq = if (b.conj() * sq).re >= 0.0 { sq } else { -sq };
    let r1 = -(b + sq) / cplx(2.0, 0.0);
    let r2 = if r1.norm() > 0.0 { c / r1 } else { -b - r1 };
    (r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        cplx(re, im)
    }

    #[test]
    fn symmetrize_zero_vector() {
        for n in 2..=6 {
            let z = vec![c(0.0, 0.0); n];
            let pt = symmetrize(&z).unwrap();
            assert!(pt.s().iter().all(|v| v.norm() == 0.0));
            assert_eq!(pt.p(), c(0.0, 0.0));
        }
    }

    #[test]
    fn symmetrize_all_ones_gives_binomials() {
        let pt = symmetrize(&[c(1.0, 0.0); 3]).unwrap();
        assert!((pt.s_coord(1) - c(3.0, 0.0)).norm() < 1e-14);
        assert!((pt.s_coord(2) - c(3.0, 0.0)).norm() < 1e-14);
        assert!((pt.p() - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn symmetrize_conjugate_pair() {
        // z = (i, −i): s₁ = 0, p = 1
        let pt = symmetrize(&[c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert!(pt.s_coord(1).norm() < 1e-15);
        assert!((pt.p() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symmetrize_rejects_single_variable() {
        assert!(matches!(
            symmetrize(&[c(1.0, 0.0)]),
            Err(GammaError::InvalidDimension(_))
        ));
    }

    #[test]
    fn fiber_roots_of_origin_are_exact_zeros() {
        for n in 2..=6 {
            let pt = GammaPoint::new(vec![c(0.0, 0.0); n - 1], c(0.0, 0.0)).unwrap();
            let roots = pt.fiber_roots().unwrap();
            assert_eq!(roots.len(), n);
            assert!(roots.iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn fiber_roots_double_root_at_one() {
        // z² − 2z + 1 = (z − 1)²
        let pt = GammaPoint::new(vec![c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        let roots = pt.fiber_roots().unwrap();
        assert!(roots.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn fiber_roots_modulus_sqrt_half() {
        // z² − z + 1/2, roots (1 ± i)/2
        let pt = GammaPoint::new(vec![c(1.0, 0.0)], c(0.5, 0.0)).unwrap();
        let roots = pt.fiber_roots().unwrap();
        for z in roots {
            assert!((z.norm() - 0.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn membership_examples() {
        let tol = DEFAULT_MEMBERSHIP_TOL;
        // (2,1): double root at 1
        let pt = GammaPoint::new(vec![c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(pt.membership(Region::Closed, tol).unwrap().inside);
        assert!(!pt.membership(Region::Open, tol).unwrap().inside);
        assert!(pt
            .membership(Region::DistinguishedBoundary, tol)
            .unwrap()
            .inside);

        // (3,3,1): triple root at 1
        let pt = GammaPoint::new(vec![c(3.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(pt
            .membership(Region::DistinguishedBoundary, tol)
            .unwrap()
            .inside);
        assert!(pt.membership(Region::Closed, tol).unwrap().inside);

        // (3,1): roots (3 ± √5)/2, one outside
        let pt = GammaPoint::new(vec![c(3.0, 0.0)], c(1.0, 0.0)).unwrap();
        let v = pt.membership(Region::Closed, tol).unwrap();
        assert!(!v.inside);
        let expected = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((v.max_root_modulus - expected).abs() < 1e-12);
    }

    #[test]
    fn membership_binomial_tower() {
        // (1,…,1) symmetrized: n-fold root at 1, for every n
        let tol = DEFAULT_MEMBERSHIP_TOL;
        for n in 2..=6 {
            let pt = symmetrize(&vec![c(1.0, 0.0); n]).unwrap();
            assert!(
                pt.membership(Region::DistinguishedBoundary, tol).unwrap().inside,
                "binomial point at n = {n} must lie on the distinguished boundary"
            );
            assert!(!pt.membership(Region::Open, tol).unwrap().inside);
        }
    }

    #[test]
    fn rotation_examples() {
        let pt = GammaPoint::new(vec![c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        let same = pt.rotate(c(1.0, 0.0)).unwrap();
        assert_eq!(same.coords(), pt.coords());

        let flipped = pt.rotate(c(-1.0, 0.0)).unwrap();
        assert!((flipped.s_coord(1) - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((flipped.p() - c(1.0, 0.0)).norm() < 1e-15);

        // (3,3,1) by ω = i: (3i, −3, −i), still on bΓ₃
        let pt = GammaPoint::new(vec![c(3.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0)).unwrap();
        let rot = pt.rotate(c(0.0, 1.0)).unwrap();
        assert!((rot.s_coord(1) - c(0.0, 3.0)).norm() < 1e-14);
        assert!((rot.s_coord(2) - c(-3.0, 0.0)).norm() < 1e-14);
        assert!((rot.p() - c(0.0, -1.0)).norm() < 1e-14);
        assert!(rot
            .membership(Region::DistinguishedBoundary, DEFAULT_MEMBERSHIP_TOL)
            .unwrap()
            .inside);
    }

    #[test]
    fn rotation_rejects_non_unimodular() {
        let pt = GammaPoint::new(vec![c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(matches!(
            pt.rotate(c(1.1, 0.0)),
            Err(GammaError::InvalidArgument(_))
        ));
    }

    #[test]
    fn costara_examples() {
        // (1, 1/2): c₁ = (1 − 1·(1/2)) / (1 − 1/4) = 2/3
        let pt = GammaPoint::new(vec![c(1.0, 0.0)], c(0.5, 0.0)).unwrap();
        let cs = pt.costara_coefficients().unwrap();
        assert!((cs[0] - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(pt.costara_membership(1e-9), Some(true));

        // (0, 0): c₁ = 0
        let pt = GammaPoint::new(vec![c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        assert_eq!(pt.costara_coefficients().unwrap()[0], c(0.0, 0.0));

        // n = 3, s = (0,0), p = 1/2: c = (0,0)
        let pt = GammaPoint::new(vec![c(0.0, 0.0), c(0.0, 0.0)], c(0.5, 0.0)).unwrap();
        let cs = pt.costara_coefficients().unwrap();
        assert!(cs.iter().all(|v| v.norm() == 0.0));

        // refused at |p| = 1
        let pt = GammaPoint::new(vec![c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(pt.costara_coefficients().is_none());
    }
}
