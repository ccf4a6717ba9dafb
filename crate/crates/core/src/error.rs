use thiserror::Error;

use crate::polyomino::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("grid contains no '#' cells")]
    EmptyInput,
    #[error("cells are not edge-connected")]
    NotConnected,
    #[error("grid rows have different lengths (row {row} has {found}, expected {expected})")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unexpected character {ch:?} at line {line}, column {column}")]
    InvalidChar { ch: char, line: usize, column: usize },
    #[error("vertex set is not a sublattice of N^2: {0:?} and {1:?} have a missing meet or join")]
    NotSublattice(Point, Point),
    #[error("polyomino is not row- and column-convex")]
    NotConvex,
    #[error("cover relation {0:?} < {1:?} is not a unit step")]
    NonUnitCover(Point, Point),
    #[error("negative h-coefficient {value} at degree {degree}")]
    NegativeCoefficient { degree: usize, value: String },
    #[error("board has {0} cells; at most 64 are supported")]
    TooLarge(usize),
    #[error("polyomino is thin (contains no 2x2 block)")]
    IsThin,
    #[error("polyomino is not L-convex")]
    NotLConvex,
    #[error("ferrers projection invariant failed: {0}")]
    ProjectionInvariantFailed(String),
    #[error("cell count {0} outside the supported range 1..=10")]
    OutOfRange(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
