//! Exact-arithmetic calculus for nonabelian embedding tensors between Lie
//! triple systems.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! integers; there is no floating point anywhere in the crate. The main
//! entry points are:
//!
//! * [`algebra`] — structure-constant tensors for Lie algebras, Lie triple
//!   systems and 3-Leibniz algebras, with full axiom verification;
//! * [`action`] — representations and coherent actions of one Lie triple
//!   system on another, and the hemisemidirect product;
//! * [`net`] — nonabelian embedding tensors: the defining equation, the
//!   descendent algebra, graph characterization and conjugation;
//! * [`graded`] — the graded Lie algebra of cochains, the shuffle
//!   composition, derived brackets and Maurer–Cartan residuals;
//! * [`cohomology`] — the induced 3-Leibniz representation, coboundary
//!   matrices and cohomology dimensions;
//! * [`deform`] — infinitesimal deformations, equivalences and Nijenhuis
//!   elements;
//! * [`lie`] — the transport from Lie-algebra embedding tensors to Lie
//!   triple system ones.

pub mod action;
pub mod algebra;
pub mod cohomology;
pub mod comb;
pub mod deform;
pub mod fixtures;
pub mod graded;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod net;
pub mod rational;
pub mod report;

pub use matrix::Matrix;
pub use rational::Rat;

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("axiom verification failed: {0}")]
    AxiomsFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
