//! Computable operator theory on the symmetrized polydisc.
//!
//! The closed symmetrized polydisc `Γn` is the image of the closed unit
//! polydisc under the symmetrization map (elementary symmetric functions).
//! This crate makes the associated operator theory computable at matrix
//! scale:
//!
//! * scalar geometry of points of `Γn`, the open domain `Gn` and the
//!   distinguished boundary `bΓn` ([`point`]),
//! * Hermitian pencil positivity scans over the closed disc of rotation
//!   parameters ([`pencil`]),
//! * layered certificates that a commuting matrix tuple is a
//!   `Γn`-contraction, together with `Γn`-unitary classification
//!   ([`operator`]),
//! * the canonical decomposition of a `Γn`-contraction into a
//!   `Γn`-unitary part and a completely non-unitary part ([`decompose`]),
//! * seeded generators with known ground truth for all of the above
//!   ([`generate`]),
//! * JSON/CSV wire formats shared with the CLI ([`wire`]).

pub mod decompose;
pub mod error;
pub mod generate;
pub mod linalg;
pub mod operator;
pub mod pencil;
pub mod point;
pub mod polynomial;
pub mod wire;

pub use decompose::{
    canonical_decompose, is_cnu, maximal_unitary_subspace, verify_decomposition,
    DecompositionResult, VerificationReport,
};
pub use error::{GammaError, Result};
pub use generate::{generate, sample_gamma_point, GeneratorSpec, GroundTruth, Model, PointMode};
pub use linalg::{CMatrix, Complex64};
pub use operator::{
    certify_gamma_contraction, CertificateReport, CertificateVerdict, GammaUnitaryReport,
    OperatorTuple, VnReport,
};
pub use pencil::{pencil_weight, AlphaGrid, PencilSample, PencilScanReport};
pub use point::{GammaPoint, MembershipVerdict, Region};
pub use polynomial::Polynomial;
