//! Exact invariants of 3-manifolds through the homological TQFT on
//! `∧*H₁(Σ_g, ℤ)`.
//!
//! The crate computes, in exact arithmetic only (arbitrary-precision
//! integers, rationals, prime fields and truncated polynomial rings):
//!
//! * the action of cobordism words (mapping classes, handle attachments)
//!   on the exterior algebra of surface homology,
//! * the Lefschetz decomposition of that algebra into saturated integer
//!   lattices and the fundamental torsion weights carried by them,
//! * Alexander polynomials as Lefschetz traces, the Lescop invariant,
//!   Casson matrix elements for bounding-curve Dehn twists and the
//!   Casson-Morita cocycle,
//! * Johnson-Morita extended representations and the block calculus of
//!   1/1-solvable theories over dual numbers,
//! * mod-p quotient theories with their `E^k` resolutions, Specht-module
//!   checks, and the resulting cut-number certificates.
//!
//! The `homtqft` binary exposes all of this on JSON inputs; see the
//! repository README for the schemas.

pub mod casson;
pub mod cut;
pub mod exterior;
pub mod johnson_morita;
pub mod json;
pub mod lefschetz;
pub mod lescop;
pub mod linalg;
pub mod modular;
pub mod rings;
pub mod suites;
pub mod tables;
pub mod tqft;

/// Crate-wide error type.
///
/// The variants mirror the failure modes of the individual modules; the
/// "signals a bug" ones (`NonIntegralTrace`, `ContainmentViolation`) are
/// never expected on valid inputs and indicate a lattice-saturation or
/// basis defect if they ever fire.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("polynomial is not symmetrizable by a monomial shift")]
    NotSymmetrizable,
    #[error("trace over a Lefschetz component is not integral (basis defect)")]
    NonIntegralTrace,
    #[error("residual not in the quantum-integer span: {0}")]
    NonIntegralWeight(String),
    #[error("invalid cobordism word: {0}")]
    InvalidWord(String),
    #[error("invalid bounding-curve data: {0}")]
    InvalidCurveSpec(String),
    #[error("requested Lefschetz component is zero")]
    EmptyComponent,
    #[error("integral containment violated for E^k image (saturation bug)")]
    ContainmentViolation,
    #[error("exactness failure at {0}")]
    ExactnessFailure(String),
    #[error("dual-route mismatch: {0}")]
    Mismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no witness found at genus {0}")]
    NoWitnessFound(usize),
    #[error("negative connecting-map rank from inconsistent component counts")]
    NegativeRank,
    #[error("block shape inconsistent with the solvable form: {0}")]
    ShapeError(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid JSON at {pointer}: {message}")]
    Json { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
