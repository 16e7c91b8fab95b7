use thiserror::Error;

use crate::board::{Cell, FerrersBoard};

/// Why a set of cells fails to be an m-level rook placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlacementIssue {
    OffBoard(Cell),
    ColumnClash(usize),
    LevelClash(usize),
}

impl std::fmt::Display for PlacementIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlacementIssue::OffBoard(c) => write!(f, "cell ({},{}) is off the board", c.column, c.row),
            PlacementIssue::ColumnClash(i) => write!(f, "two rooks in column {i}"),
            PlacementIssue::LevelClash(p) => write!(f, "two rooks in level {p}"),
        }
    }
}

/// Which half of the permissibility test failed for a local l-operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedInequality {
    /// `arm(i,p) <= floor_m(leg(i,p-1))`
    ArmBelowLeg,
    /// `leg(i,p) <= floor_m(arm(i+1,p))`
    LegBelowArm,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RookError {
    #[error("heights must be weakly increasing (index {index} drops)")]
    NonMonotone { index: usize },
    #[error("negative height at index {index}")]
    Negative { index: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("board is not a singleton board")]
    NotSingleton,
    #[error("column {column} does not meet level {level}")]
    EmptyIntersection { column: usize, level: usize },
    #[error("l_{{{column},{level}}} is not permissible ({failed:?})")]
    NotPermissible {
        column: usize,
        level: usize,
        failed: FailedInequality,
    },
    #[error("board does not fit inside the ambient board")]
    DoesNotFit,
    #[error("normal-form search did not terminate (defect)")]
    InternalNonTermination,
    #[error("invalid placement: {0}")]
    InvalidPlacement(PlacementIssue),
    #[error("boards are not rook equivalent (representatives {left} and {right})")]
    NotEquivalent { left: FerrersBoard, right: FerrersBoard },
    #[error("element is not a fixed point of the source involution")]
    NotFixedPoint,
    #[error("involution-principle iteration exceeded cap {cap}")]
    IterationCapExceeded { cap: usize },
    #[error("involution axiom violated at {0}")]
    InvolutionViolation(String),
    #[error("sign axiom violated at {0}")]
    SignViolation(String),
    #[error("rook budget k={k} must be below N={n}")]
    BudgetTooLarge { k: usize, n: usize },
    #[error("N={given} is too small, need at least {needed}")]
    BudgetTooSmall { needed: usize, given: usize },
    #[error("degree {degree} exceeds the number of values {len}")]
    DegreeTooLarge { degree: usize, len: usize },
    #[error("expected {expected} rooks, found {found}")]
    WrongRookCount { expected: usize, found: usize },
    #[error("placement is not in the hit set for k={k}")]
    NotInHitSet { k: usize },
    #[error("invalid wreath element: {0}")]
    InvalidWreath(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = RookError> = std::result::Result<T, E>;
