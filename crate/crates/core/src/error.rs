use thiserror::Error;

use crate::algebra::IntervalModule;
use crate::ar::Component;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation [{u},{v}] is too short: zero relations must be paths of length at least 2")]
    RelationTooShort { u: usize, v: usize },
    #[error("relation [{u},{v}] is out of range for n = {n}")]
    RelationOutOfRange { u: usize, v: usize, n: usize },
    #[error("relation {outer} contains relation {inner}")]
    RedundantRelation { outer: IntervalModule, inner: IntervalModule },
    #[error("{0}")]
    IndexOutOfRange(String),
    #[error("quotient P{i}/rad^{t} is too long: P{i} has Loewy length {max}")]
    QuotientTooLong { i: usize, t: usize, max: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("maps are not composable: {0}")]
    NonComposable(String),
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("inconsistent representation: {0}")]
    InconsistentRep(String),
    #[error("entry outside hom support: {0}")]
    HomViolation(String),
    #[error("differentials do not square to zero at degree {0}")]
    NotSquareZero(i32),
    #[error("complexes of different kinds: {0}")]
    KindMismatch(String),
    #[error("wrong kind: {0}")]
    WrongKind(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("complex is not indecomposable")]
    NotIndecomposable,
    #[error("connecting map space has dimension {0}, expected 1")]
    SocleDimensionError(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("map is zero")]
    ZeroMap,
    #[error("step budget exhausted after {} triangles", .0.triangles)]
    BudgetExceeded(Box<Component>),
    #[error("component is not closed")]
    ComponentOpen,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
