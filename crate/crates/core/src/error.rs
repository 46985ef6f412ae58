use thiserror::Error;

use crate::content::Rejection;
use crate::diagram::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window is empty")]
    EmptyWindow,
    #[error("window has length {len} but period is {period}")]
    WindowLength { len: usize, period: usize },
    #[error("window sums to {actual}, expected {expected}")]
    SumMismatch { expected: i64, actual: i64 },
    #[error("window entries {first} and {second} agree modulo {period}")]
    ResidueCollision { first: i64, second: i64, period: usize },
    #[error("letter {letter} is not a residue modulo {period}")]
    InvalidLetter { letter: usize, period: usize },
    #[error("period {0} has no simple reflections")]
    NoGenerators(usize),
    #[error("word is not reduced at position {position}")]
    NotReduced { position: usize },
    #[error("letter set covers every residue modulo {0}")]
    FullCycle(usize),
    #[error("flagged factorizations require a finite permutation")]
    FlagOnAffine,
    #[error("{0} is not a finite permutation")]
    NotFinite(String),
    #[error("cell ({}, {}) is not in the diagram", .0.row, .0.col)]
    CellNotInDiagram(Cell),
    #[error("cell ({}, {}) lies outside the fundamental window of period {period}", .cell.row, .cell.col)]
    OutsideWindow { cell: Cell, period: usize },
    #[error("cell ({}, {}) is not a border cell", .0.row, .0.col)]
    NotBorderCell(Cell),
    #[error("cell ({}, {}) is not a border cell holding the largest label", .0.row, .0.col)]
    NotMaximalBorderCell(Cell),
    #[error("labelled cells do not match the diagram of the permutation")]
    CellMismatch,
    #[error("labels must be positive")]
    ZeroLabel,
    #[error("cell ({}, {}) has an empty label set", .0.row, .0.col)]
    EmptyLabelSet(Cell),
    #[error("labelling is not injective")]
    NotInjective,
    #[error("labelling is not balanced")]
    NotBalanced,
    #[error("diagram rejected: {0}")]
    Rejected(Rejection),
    #[error("malformed wiring diagram: {0}")]
    MalformedWiring(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyWindow => "EmptyWindow",
            Error::WindowLength { .. } => "WindowLength",
            Error::SumMismatch { .. } => "SumMismatch",
            Error::ResidueCollision { .. } => "ResidueCollision",
            Error::InvalidLetter { .. } => "InvalidLetter",
            Error::NoGenerators(_) => "NoGenerators",
            Error::NotReduced { .. } => "NotReduced",
            Error::FullCycle(_) => "FullCycle",
            Error::FlagOnAffine => "FlagOnAffine",
            Error::NotFinite(_) => "NotFinite",
            Error::CellNotInDiagram(_) => "CellNotInDiagram",
            Error::OutsideWindow { .. } => "OutsideWindow",
            Error::NotBorderCell(_) => "NotBorderCell",
            Error::NotMaximalBorderCell(_) => "NotMaximalBorderCell",
            Error::CellMismatch => "CellMismatch",
            Error::ZeroLabel => "ZeroLabel",
            Error::EmptyLabelSet(_) => "EmptyLabelSet",
            Error::NotInjective => "NotInjective",
            Error::NotBalanced => "NotBalanced",
            Error::Rejected(_) => "Rejected",
            Error::MalformedWiring(_) => "MalformedWiring",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }

    /// True for errors that signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::MalformedWiring(_) | Error::Internal(_))
    }
}
