use thiserror::Error;

use crate::lattice::Vec2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("broken involution: {0}")]
    BrokenInvolution(String),

    #[error("label antisymmetry violated at dart {dart}")]
    LabelAntisymmetry { dart: usize },

    #[error("non-contractible face: face through dart {dart} has label sum {sum}")]
    NonContractibleFace { dart: usize, sum: Vec2 },

    #[error("Euler characteristic {chi} does not match the expected {expected}")]
    EulerCharacteristic { chi: i64, expected: i64 },

    #[error("degenerate period lattice (rank < 2)")]
    DegenerateLattice,

    #[error("map is not connected")]
    Disconnected,

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("walk is not closed or uses darts that do not exist: {0}")]
    InvalidWalk(String),

    #[error("cycle is not simple")]
    NotSimple,

    #[error("cycle is contractible")]
    Contractible,

    #[error("homotopy class must be non-zero")]
    ZeroClass,

    #[error("class {0} is not primitive")]
    NotPrimitive(Vec2),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("boundary color mismatch at vertex {vertex} of the cut cycle")]
    BoundaryColorMismatch { vertex: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inapplicable homotopy move: {0}")]
    InapplicableMove(String),

    #[error("propagation conflict on edge {u}-{v}")]
    PropagationConflict { u: usize, v: usize },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("search budget of {budget} exhausted: {what}")]
    BudgetExhausted { what: String, budget: u64 },

    #[error("representativity {r} < 10")]
    LowRepresentativity { r: u64 },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
