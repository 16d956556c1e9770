use gcore::{GcoreError, ShapeError};
use monads::MonadError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OpweakError {
    #[error("operad description: {0}")]
    OperadFormat(String),
    #[error("no composite for {0}")]
    MissingComposite(String),
    #[error("path {path} does not run from {from} to {to}")]
    Endpoint { path: String, from: String, to: String },
    #[error("{0} is not a point of the space")]
    NotAPoint(String),
    #[error("level map does not preserve products: {0}")]
    ProductPreservation(String),
    #[error("expected a one-object category, found {0} objects")]
    NotOneObject(usize),
    #[error("tower depth {requested} is not supported (at most {max})")]
    UnsupportedDepth { requested: usize, max: usize },
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Gcore(#[from] GcoreError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}
