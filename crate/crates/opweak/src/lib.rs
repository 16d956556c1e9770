//! Operad-weighted enrichment and the incoherent Trimble tower.
//!
//! A [`FinOperad`] has finitely many operations per arity. [`VpFree`] is the
//! free category monad with k-ary composites labelled by operations of
//! arity k; with the terminal operad it is the free category monad after
//! dropping labels. Spaces are finite stand-ins ([`Space`]) read through a
//! [`SpaceModel`], and [`trimble_tower`] iterates [`dm_step`] from the
//! identity monad on sets.
//!
//! [`composite_check`] compares the tower with the composite of the lifted
//! monads from [`pk_monads`].

pub mod error;
pub mod model;
pub mod operad;
pub mod trimble;
pub mod vp;
pub mod wec;

pub use error::OpweakError;
pub use operad::{all_choices, arity_vectors, discrete, FinOperad, OperadSpec, OperadViolation};
pub use vp::{vp_free_hom, vp_summands, Summands, VpFree};
pub use wec::{one_object_algebra_check, palgebra_to_wec, Gamma, PAlgebra, WeakEnrichedCat, WecViolation};
pub use model::{
    check_pi_products, concat, constant, dc_step, endpoints, gamma_path_graph, path_object, points, skeleton,
    DiscreteModel, FiniteGraphModel, LevelMap, PathGraph, Pi, Space, SpaceModel,
};
pub use trimble::{
    check_fundamental_algebra, composite_check, dm_step, fundamental, fundamental_action, pk_monads,
    terminal_triple_check, trimble_strict_check, trimble_tower, truncation, CompositeReport, Mode, StrictReport,
    TripleReport, TrimbleLevel, MAX_TRIMBLE,
};
