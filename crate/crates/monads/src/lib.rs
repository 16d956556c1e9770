//! Monads on iterated enriched graphs.
//!
//! [`FreeCategory`] is the free category monad at any level, [`Lift`] applies
//! a monad homwise, and [`Composite`] assembles `fc ∘ T_*` through the
//! distributive law. Iterating from the identity monad on sets gives the
//! strict n-category monads `T_n` of [`strict_tower`]. Everything is graded
//! by the number of generating cells, so free objects are enumerated up to a
//! bound.
//!
//! [`pasting_oracle`] counts the same cells from planar trees and shares no
//! code with the tower.

pub mod cells;
pub mod composite;
pub mod dist;
pub mod error;
pub mod fc;
pub mod laws;
pub mod monad;
pub mod oracle;
pub mod tower;

pub use cells::enumerate_tn_cells;
pub use composite::{chain, fm_step, Composite};
pub use dist::{
    check_coproduct_preservation, check_dist_axioms, check_dist_axioms_with, check_dist_naturality,
    dist_component, dist_law, DistComponent,
};
pub use error::MonadError;
pub use fc::{paths, FreeCategory};
pub use laws::{
    check_algebra, check_laws, monad_law_report, random_object, AlgebraViolation, Law, LawCheck,
    LawFailure, MonadLawReport, SampleFailure,
};
pub use monad::{restrict_homs, IdentityMonad, Lift, Monad, MonadRef, WriterMonad};
pub use oracle::{pasting_oracle, trees, Tree};
pub use tower::{strict_monad, strict_tower, MonadMorphism, MorphismReport, MAX_TOWER};
