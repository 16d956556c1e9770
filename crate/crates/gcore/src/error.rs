use thiserror::Error;

use crate::elem::ShapeError;
use crate::globset::Violation;

#[derive(Debug, Error)]
pub enum GcoreError {
    #[error("requested dimension {requested} exceeds available dimension {available}")]
    Dimension { requested: usize, available: usize },
    #[error("invalid globular set: {0}")]
    Invalid(Violation),
    #[error("malformed globular set: {detail}")]
    Format { detail: String },
    #[error("cell identifier `{id}` occurs twice in dimension {dim}")]
    Collision { dim: usize, id: String },
    #[error("expected an object of level {expected}, found level {found}")]
    Level { expected: usize, found: usize },
    #[error("hom from `{a}` to `{b}` refers to an unknown object")]
    UnknownObject { a: String, b: String },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("tower level {level} does not truncate to level {}", level - 1)]
    Incompatible { level: usize },
    #[error("object set changes at tower level {level}")]
    ObjectsChanged { level: usize },
    #[error("cell `{id}` appears in two hom towers at level {level}")]
    Collision { level: usize, id: String },
    #[error("tower level {level} has dimension {found}")]
    WrongDimension { level: usize, found: usize },
}
