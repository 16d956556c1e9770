//! Terminal coalgebras of finitary set functors, computed through their
//! approximant chains `… → F³1 → F²1 → F1 → 1`.
//!
//! The terminal coalgebra is never materialized. Its elements are read
//! through their depth-d prefixes in the chain, and [`unfold`] gives the
//! prefixes of the image of a coalgebra element.

pub mod chain;
pub mod error;
pub mod functor;

pub use chain::{
    adamek_chain, lambek_probe, unfold, word_coalgebra, word_letters, ApproximantChain,
    CoalgebraInstance, LambekReport,
};
pub use error::CoalgebraError;
pub use functor::{
    free_monoid_functor, identity_functor, word_functor, BaseKind, ElemFn, Endofunctor,
    EndofunctorSpec, FunctorDescriptor,
};
