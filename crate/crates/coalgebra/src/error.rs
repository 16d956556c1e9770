use gcore::{Elem, ShapeError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoalgebraError {
    #[error("structure map undefined at `{0}`")]
    NotTotal(Elem),
    #[error("structure map sends `{elem}` outside F(carrier): `{image}`")]
    OutsideFunctorImage { elem: Elem, image: Elem },
    #[error("`{0}` is not in the carrier")]
    NotInCarrier(Elem),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}
