//! Rotation grids and pencil positivity scans for scalar points.
//!
//! For a point `(s₁, …, sₙ₋₁, p)` and index `i` the pencil value is
//!
//! ```text
//! Φᵢ(s, p) = w²(1 − |p|²) + (|sᵢ|² − |sₙ₋ᵢ|²) − w(sᵢ − s̄ₙ₋ᵢ p) − w(s̄ᵢ − p̄ sₙ₋ᵢ)
//! ```
//!
//! with the weight `w = C(n,i)`, which equals the factored form
//! `|w − sᵢ|² − |wp − sₙ₋ᵢ|²`. Membership in `Γn` implies `Φᵢ ≥ 0` at
//! every disc-rotated point `(αs₁, …, αⁿ⁻¹sₙ₋₁, αⁿp)`, `|α| ≤ 1`; a scan
//! samples that family over a grid of rings and records both the pencil
//! sign and the equivalent modulus inequality
//! `|wαⁿp − αⁿ⁻ⁱsₙ₋ᵢ| ≤ |w − αⁱsᵢ|`.
//!
//! The weight is forced: `C(n,i)` is the sup of `|sᵢ|` over `Γn` and the
//! sharp bound on `|cᵢ| + |cₙ₋ᵢ|` over `Γn₋₁`, and any smaller constant
//! makes the rotated pencil go negative at interior points once `n ≥ 4`
//! and `1 < i < n−1` (four equal roots `r` give `Φ₂ ∝ 1 + r⁴ − 3r² < 0`
//! near `r² = 1/2` for the weight 4). For `i ∈ {1, n−1}` the weight is
//! just `n`.

use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};
use crate::linalg::{cplx, Complex64};
use crate::point::GammaPoint;

/// Pointwise numerical agreement demanded between the expanded pencil and
/// the factored modulus form, relative to the magnitude of the terms.
const EQUIVALENCE_TOL: f64 = 1e-12;

/// Sampling grid for the rotation parameter `α` in the closed unit disc.
///
/// Interior rings at the given radii with `angles_per_ring` equispaced
/// angles each; the unit circle is always scanned, with `boundary_angles`
/// samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaGrid {
    pub radii: Vec<f64>,
    pub angles_per_ring: usize,
    pub boundary_angles: usize,
}

impl Default for AlphaGrid {
    /// Radii `1/8, 2/8, …, 1` at 256 angles each, plus 1024 angles on the
    /// unit circle. Along each ring the pencil is a trigonometric
    /// polynomial of degree ≤ n in the angle, so this heavily oversamples
    /// for small n.
    fn default() -> Self {
        AlphaGrid {
            radii: (1..=8).map(|k| k as f64 / 8.0).collect(),
            angles_per_ring: 256,
            boundary_angles: 1024,
        }
    }
}

impl AlphaGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize, boundary_angles: usize) -> Result<Self> {
        let grid = AlphaGrid {
            radii,
            angles_per_ring,
            boundary_angles,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(GammaError::InvalidArgument(
                "grid radii must lie in [0, 1]".into(),
            ));
        }
        if self.angles_per_ring == 0 || self.boundary_angles == 0 {
            return Err(GammaError::InvalidArgument(
                "grid needs at least one angle per ring".into(),
            ));
        }
        Ok(())
    }

    /// A lighter grid for bulk sweeps where the full default is overkill.
    pub fn coarse() -> Self {
        AlphaGrid {
            radii: (1..=4).map(|k| k as f64 / 4.0).collect(),
            angles_per_ring: 64,
            boundary_angles: 256,
        }
    }

    /// The same grid at `factor` times the density in radii and angles.
    pub fn densified(&self, factor: usize) -> Self {
        let factor = factor.max(1);
        let n_r = self.radii.len() * factor;
        AlphaGrid {
            radii: (1..=n_r).map(|k| k as f64 / n_r as f64).collect(),
            angles_per_ring: self.angles_per_ring * factor,
            boundary_angles: self.boundary_angles * factor,
        }
    }

    /// All sampled `α`, interior rings first, then the unit circle.
    pub fn samples(&self) -> Vec<Complex64> {
        let mut out =
            Vec::with_capacity(self.radii.len() * self.angles_per_ring + self.boundary_angles);
        for &r in &self.radii {
            for k in 0..self.angles_per_ring {
                let theta = std::f64::consts::TAU * k as f64 / self.angles_per_ring as f64;
                out.push(cplx(r * theta.cos(), r * theta.sin()));
            }
        }
        for k in 0..self.boundary_angles {
            let theta = std::f64::consts::TAU * k as f64 / self.boundary_angles as f64;
            out.push(cplx(theta.cos(), theta.sin()));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_ring + self.boundary_angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One sampled grid entry of a scan.
///
/// For scalar scans `value` is the pencil value and the two modulus fields
/// hold `|nαⁿp − αⁿ⁻ⁱsₙ₋ᵢ|` and `|n − αⁱsᵢ|`; for operator scans `value`
/// is the minimum eigenvalue and the modulus fields are absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PencilSample {
    pub i: usize,
    pub alpha: (f64, f64),
    pub value: f64,
    pub modulus_lhs: Option<f64>,
    pub modulus_rhs: Option<f64>,
}

/// Result of scanning all pencils over a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PencilScanReport {
    pub samples: Vec<PencilSample>,
    pub min_value: f64,
    pub argmin_i: usize,
    pub argmin_alpha: (f64, f64),
    /// Largest pointwise gap between the expanded pencil and the factored
    /// modulus form (scalar scans only).
    pub equivalence_gap: Option<f64>,
}

impl PencilScanReport {
    pub(crate) fn from_samples(samples: Vec<PencilSample>, gap: Option<f64>) -> Self {
        let mut min_value = f64::INFINITY;
        let mut argmin_i = 1;
        let mut argmin_alpha = (0.0, 0.0);
        for s in &samples {
            if s.value < min_value {
                min_value = s.value;
                argmin_i = s.i;
                argmin_alpha = s.alpha;
            }
        }
        PencilScanReport {
            samples,
            min_value,
            argmin_i,
            argmin_alpha,
            equivalence_gap: gap,
        }
    }
}

/// The pencil weight `C(n, i)`: the sup of `|sᵢ|` over `Γn`. Exact in
/// f64 for desk-scale `n`.
pub fn pencil_weight(n: usize, i: usize) -> f64 {
    let i = i.min(n - i);
    let mut w = 1.0f64;
    for k in 0..i {
        w = w * (n - k) as f64 / (k + 1) as f64;
    }
    w
}

/// The pencil value `Φᵢ(s₁, …, sₙ₋₁, p)`, `1 ≤ i ≤ n−1`.
pub fn scalar_pencil_value(point: &GammaPoint, i: usize) -> Result<f64> {
    let n = point.n();
    if i < 1 || i > n - 1 {
        return Err(GammaError::InvalidArgument(format!(
            "pencil index must satisfy 1 ≤ i ≤ {}, got {i}",
            n - 1
        )));
    }
    Ok(scalar_pencil_raw(
        pencil_weight(n, i),
        point.s_coord(i),
        point.s_coord(n - i),
        point.p(),
    ))
}

fn scalar_pencil_raw(w: f64, s_i: Complex64, s_ni: Complex64, p: Complex64) -> f64 {
    w * w * (1.0 - p.norm_sqr()) + (s_i.norm_sqr() - s_ni.norm_sqr())
        - 2.0 * w * (s_i - s_ni.conj() * p).re
}

/// Scan every pencil over the disc-rotated family of the point.
///
/// At each sample the expanded pencil value and the factored modulus form
/// are both evaluated and must agree to `1e−12` relative to the size of
/// the quantities involved — they are the same polynomial identity, so a
/// gap beyond round-off is a numerical failure, not a property of the
/// point.
pub fn scalar_pencil_scan(point: &GammaPoint, grid: &AlphaGrid) -> Result<PencilScanReport> {
    grid.validate()?;
    let n = point.n();
    let alphas = grid.samples();
    let mut samples = Vec::with_capacity(alphas.len() * (n - 1));
    let mut worst_gap = 0.0f64;

    for &alpha in &alphas {
        // powers α, α², …, αⁿ
        let mut pow = Vec::with_capacity(n + 1);
        let mut w = cplx(1.0, 0.0);
        for _ in 0..n {
            w *= alpha;
            pow.push(w);
        }
        let p_rot = point.p() * pow[n - 1];
        for i in 1..n {
            let weight = pencil_weight(n, i);
            let si_rot = point.s_coord(i) * pow[i - 1];
            let sni_rot = point.s_coord(n - i) * pow[n - i - 1];
            let value = scalar_pencil_raw(weight, si_rot, sni_rot, p_rot);
            let lhs = (cplx(weight, 0.0) * p_rot - sni_rot).norm();
            let rhs = (cplx(weight, 0.0) - si_rot).norm();
            let factored = rhs * rhs - lhs * lhs;
            let gap = (value - factored).abs();
            let scale = 1.0 + value.abs() + rhs * rhs + lhs * lhs;
            if gap > EQUIVALENCE_TOL * scale {
                return Err(GammaError::NumericalFailure {
                    context: "scalar pencil: expanded and factored forms disagree".into(),
                    residual: gap,
                });
            }
            worst_gap = worst_gap.max(gap);
            samples.push(PencilSample {
                i,
                alpha: (alpha.re, alpha.im),
                value,
                modulus_lhs: Some(lhs),
                modulus_rhs: Some(rhs),
            });
        }
    }
    Ok(PencilScanReport::from_samples(samples, Some(worst_gap)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::symmetrize;

    fn c(re: f64, im: f64) -> Complex64 {
        cplx(re, im)
    }

    #[test]
    fn pencil_value_examples() {
        // origin → weight², which is n² for i = 1 and i = n−1
        for n in 2..=5 {
            let pt = GammaPoint::new(vec![c(0.0, 0.0); n - 1], c(0.0, 0.0)).unwrap();
            assert!((scalar_pencil_value(&pt, 1).unwrap() - (n * n) as f64).abs() < 1e-12);
            assert!((scalar_pencil_value(&pt, n - 1).unwrap() - (n * n) as f64).abs() < 1e-12);
            for i in 1..n {
                let v = scalar_pencil_value(&pt, i).unwrap();
                let w = pencil_weight(n, i);
                assert!((v - w * w).abs() < 1e-12);
            }
        }
        // (3,3,1), i = 1 → 0
        let pt = GammaPoint::new(vec![c(3.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(scalar_pencil_value(&pt, 1).unwrap().abs() < 1e-12);
        // (0, 1/2), i = 1 → 4·(1 − 1/4) = 3
        let pt = GammaPoint::new(vec![c(0.0, 0.0)], c(0.5, 0.0)).unwrap();
        assert!((scalar_pencil_value(&pt, 1).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn pencil_index_out_of_range() {
        let pt = GammaPoint::new(vec![c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        assert!(scalar_pencil_value(&pt, 0).is_err());
        assert!(scalar_pencil_value(&pt, 2).is_err());
    }

    #[test]
    fn scan_of_origin_is_n_squared() {
        let pt = GammaPoint::new(vec![c(0.0, 0.0), c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        let report = scalar_pencil_scan(&pt, &AlphaGrid::coarse()).unwrap();
        assert!((report.min_value - 9.0).abs() < 1e-12);
    }

    #[test]
    fn scan_finds_violation_outside() {
        // (3,1) is outside Γ₂; at real α = 1/2 the pencil value is
        // 4(1 − r⁴) − 12r(1 − r²) = −3/4
        let pt = GammaPoint::new(vec![c(3.0, 0.0)], c(1.0, 0.0)).unwrap();
        let report = scalar_pencil_scan(&pt, &AlphaGrid::default()).unwrap();
        assert!(
            report.min_value < -0.5,
            "expected a clear violation, min = {}",
            report.min_value
        );
    }

    #[test]
    fn middle_index_pencil_stays_nonnegative_inside() {
        // four equal roots r = √(1/2): with weight 4 instead of C(4,2) = 6
        // the middle pencil would be 16(1−p²) − 8s₂(1−p) = −3 at α = 1
        let r = 0.5f64.sqrt();
        let pt = symmetrize(&vec![c(r, 0.0); 4]).unwrap();
        let naive = 16.0 * (1.0 - pt.p().norm_sqr())
            - 8.0 * (pt.s_coord(2) - pt.s_coord(2).conj() * pt.p()).re;
        assert!(naive < -1.0, "weight n would reject this member: {naive}");
        assert_eq!(pencil_weight(4, 2), 6.0);
        let report = scalar_pencil_scan(&pt, &AlphaGrid::coarse()).unwrap();
        assert!(report.min_value >= -1e-10, "min {}", report.min_value);
    }

    #[test]
    fn scan_nonnegative_on_members() {
        // symmetrized points of the closed polydisc satisfy the scan
        let pt = symmetrize(&[c(0.9, 0.0), c(0.0, 0.8), c(-0.5, 0.5)]).unwrap();
        let report = scalar_pencil_scan(&pt, &AlphaGrid::coarse()).unwrap();
        assert!(report.min_value >= -1e-10);
    }

    #[test]
    fn grid_validation() {
        assert!(AlphaGrid::new(vec![1.5], 8, 8).is_err());
        assert!(AlphaGrid::new(vec![0.5], 0, 8).is_err());
        let g = AlphaGrid::default();
        assert_eq!(g.samples().len(), 8 * 256 + 1024);
        assert!(g.samples().iter().all(|a| a.norm() <= 1.0 + 1e-15));
    }
}
