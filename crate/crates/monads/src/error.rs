use gcore::{GcoreError, IsoFailure, ShapeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonadError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Gcore(#[from] GcoreError),
    #[error("tower depth {requested} is not supported (at most {max})")]
    UnsupportedDepth { requested: usize, max: usize },
    #[error("expected an object of level {expected}, found level {found}")]
    Level { expected: usize, found: usize },
    #[error("{monad} does not preserve coproducts: {detail}")]
    CoproductPreservation { monad: String, detail: String },
    #[error("{monad} has no distributive law over lifted monads")]
    NotDistributive { monad: String },
    #[error("paths of length {needed} exceed the arity cap {cap}")]
    ArityCap { needed: usize, cap: usize },
    #[error("canonical comparison failed: {0}")]
    NotBijective(String),
}

impl From<IsoFailure> for MonadError {
    fn from(e: IsoFailure) -> Self {
        MonadError::NotBijective(e.to_string())
    }
}
