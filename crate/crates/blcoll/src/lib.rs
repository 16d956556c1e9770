//! Collections `p: A → T(1)` over unlabelled pasting diagrams, checks for
//! contractions and incoherent contractions, and truncation.
//!
//! Everything is cut to a pasting-size bound carried by the collection.

pub mod collection;
pub mod contraction;
pub mod error;
pub mod pasting;
pub mod random;

pub use collection::{
    check_collection, identity_collection, truncate_collection, Collection, CollectionFault,
    CollectionViolation,
};
pub use contraction::{
    check_contraction, check_incoherent_contraction, tautological_lift, ContractionReport, Lift,
    LiftFault, LiftKey, MissingLift,
};
pub use error::BlcollError;
pub use pasting::{parse_pasting_id, pasting_diagrams, pasting_id, truncate_tree};
pub use random::{random_collection, saturated_collection};
