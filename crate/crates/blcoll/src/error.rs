use gcore::GcoreError;
use thiserror::Error;

use crate::collection::CollectionViolation;

#[derive(Debug, Error)]
pub enum BlcollError {
    #[error("collection declares n = {declared} but A has dimension {found}")]
    DimensionMismatch { declared: usize, found: usize },
    #[error("cannot truncate a {n}-collection to dimension {m}")]
    Truncation { n: usize, m: usize },
    #[error("malformed lift key `{0}`")]
    LiftKey(String),
    #[error("invalid collection: {0}")]
    Invalid(CollectionViolation),
    #[error(transparent)]
    Gcore(#[from] GcoreError),
}
