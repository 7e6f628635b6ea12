//! Toolkit for planar Schrödinger–Pauli systems of neutral spin-1/2 particles.
//!
//! The library covers three layers:
//!
//! * a catalog of closed-form external fields `B(x)` on the plane together
//!   with their first-order integrals of motion ([`catalog`]), and residual
//!   machinery that certifies `[H, Q] = 0` at the coefficient level
//!   ([`determining`]);
//! * operator-algebra checks for the quadratic and superalgebra relations
//!   satisfied by those integrals ([`algebra`]), plus grid discretizations
//!   and eigensolvers ([`hamiltonian`]);
//! * three exactly solved models (periodic, rotationally invariant,
//!   shape-invariant) with closed-form solutions and independent numerical
//!   cross-checks ([`solvers`]).
//!
//! Special functions needed by the closed-form solutions (Bessel J/K,
//! Kummer M/U, Whittaker M/W, Gamma) live in [`specfun`].
//!
//! All floating point work is `f64`; evaluators are pure and all public
//! types are immutable after construction, so everything is `Send + Sync`.

pub mod algebra;
pub mod catalog;
pub mod determining;
pub mod hamiltonian;
pub mod report;
pub mod solvers;
pub mod specfun;
pub mod spinor;

pub use num_complex::Complex64 as C64;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Evaluation outside an object's domain (singular point, missing stencil room, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A constructor argument violates its contract.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    /// A physical admissibility condition fails; the message names the condition.
    #[error("admissibility violated: {0}")]
    Admissibility(String),
    /// Quadratic/radical solve with no real root.
    #[error("no real root: {0}")]
    NoRealRoot(String),
    /// An iterative or truncated computation did not converge to tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// Parameter region not covered by the implemented evaluation paths.
    #[error("unsupported parameter region: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
