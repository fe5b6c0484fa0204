//! Engine errors.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A requested bigraded piece could not be certified finite.
    #[error("infinite bigraded piece: {0}")]
    InfinitePiece(String),

    /// Degree caps define a finite quotient complex only when no
    /// differential carries a constant term.
    #[error("degree cap unsupported: {0}")]
    CapUnsupported(String),

    /// A polynomial references generators outside the presentation it is
    /// being used with (mixed-presentation operands).
    #[error("polynomial references generator #{0}, outside this presentation")]
    ForeignGenerator(u32),

    /// Construction-time violations (duplicate names, positive degree, ...).
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    /// An operation requiring a validated presentation received one whose
    /// validation report carries failures.
    #[error("presentation fails validation:\n{0}")]
    InvalidPresentation(String),

    /// Classical complete-intersection input required.
    #[error("not classical complete-intersection input: {0}")]
    NotClassicalInput(String),

    /// Homogeneous input required.
    #[error("inhomogeneous operand: {0}")]
    Inhomogeneous(String),

    /// Arc level or base mismatch between presentations.
    #[error("mismatched arc presentations: {0}")]
    LevelMismatch(String),

    /// Series division by a non-unit constant term.
    #[error("series constant term is not a unit")]
    NotAUnit,

    /// Internal consistency failure; indicates a bug or corrupted input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
