//! Finite globular sets, graphs enriched over finitary bases, and the
//! conversions between them.
//!
//! Objects of a base at level 0 are finite sets; at level `k + 1` they are
//! graphs whose homs are level-`k` objects. Products are tuples and
//! coproducts are tagged injections at every depth, which fixes one choice of
//! coproducts once and for all.

pub mod base;
pub mod convert;
pub mod elem;
pub mod error;
pub mod globset;
pub mod local;
pub mod random;
pub mod tower;

pub use base::{
    check_cell_bijection, finset_base, vgraph_base, Cell, EnrichmentBase, IsoFailure, ObjectKind,
    Obj, VGraph,
};
pub use convert::{globset_to_ngraph, ngraph_to_globset, round_trip};
pub use elem::{compose_at, id_map, map_ctx, project_ctx, unwrap_ctx, CellMap, Ctx, Elem, ShapeError};
pub use error::{GcoreError, TowerError};
pub use globset::{Axiom, CellId, GlobMap, GlobSet, Violation};
pub use local::{apply_locally, BaseFunctor};
pub use tower::{tower_unwrap, tower_wrap, GraphOfTowers, OmegaTower};
