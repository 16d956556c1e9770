//! Functors between bases and their homwise action on enriched graphs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::{EnrichmentBase, Obj, VGraph};
use crate::elem::{project_ctx, CellMap, Ctx, Elem, ShapeError};

/// A functor between enrichment bases, on objects and on cell maps.
pub trait BaseFunctor: Send + Sync {
    fn name(&self) -> String;
    fn on_object(&self, x: &Obj) -> Obj;
    /// Cell of `H(f)` at `cell ∈ H(X)`.
    fn on_morphism(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
}

pub struct IdentityFunctor;

impl BaseFunctor for IdentityFunctor {
    fn name(&self) -> String {
        "id".into()
    }
    fn on_object(&self, x: &Obj) -> Obj {
        x.clone()
    }
    fn on_morphism(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        f.map(ctx, cell)
    }
}

/// Sends everything to the terminal object of the same base.
pub struct ConstTerminal;

impl BaseFunctor for ConstTerminal {
    fn name(&self) -> String {
        "const-1".into()
    }
    fn on_object(&self, x: &Obj) -> Obj {
        EnrichmentBase { level: x.level() }.terminal()
    }
    fn on_morphism(&self, _: &dyn CellMap, _: &Ctx, _: &Elem) -> Result<Elem, ShapeError> {
        Ok(Elem::unit())
    }
}

/// `X ↦ X × X`.
pub struct Square;

impl BaseFunctor for Square {
    fn name(&self) -> String {
        "square".into()
    }
    fn on_object(&self, x: &Obj) -> Obj {
        EnrichmentBase { level: x.level() }.product2(x, x)
    }
    fn on_morphism(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let v = cell.as_tuple()?;
        if v.len() != 2 {
            return Err(ShapeError::new("pair", cell));
        }
        Ok(Elem::Tuple(vec![
            f.map(&project_ctx(ctx, 0)?, &v[0])?,
            f.map(&project_ctx(ctx, 1)?, &v[1])?,
        ]))
    }
}

/// `H ∘ G`.
pub struct Composite(pub Arc<dyn BaseFunctor>, pub Arc<dyn BaseFunctor>);

impl BaseFunctor for Composite {
    fn name(&self) -> String {
        format!("{}∘{}", self.0.name(), self.1.name())
    }
    fn on_object(&self, x: &Obj) -> Obj {
        self.0.on_object(&self.1.on_object(x))
    }
    fn on_morphism(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let inner = |c: &Ctx, e: &Elem| self.1.on_morphism(f, c, e);
        self.0.on_morphism(&inner, ctx, cell)
    }
}

/// `H_*`: the same objects, with `H` applied to every hom.
pub fn apply_locally(h: &dyn BaseFunctor, a: &VGraph) -> VGraph {
    let homs: BTreeMap<(Elem, Elem), Obj> = a
        .objects()
        .iter()
        .flat_map(|x| a.objects().iter().map(move |y| (x, y)))
        .map(|(x, y)| ((x.clone(), y.clone()), h.on_object(&a.hom_or_initial(x, y))))
        .collect();
    let level = homs.values().next().map(Obj::level).unwrap_or(a.hom_level());
    VGraph::new_unchecked(level, a.objects().to_vec(), homs)
}

/// `H_*(f)` on a cell of `H_*(A)`: objects map by `f`, hom cells by `H(f_ab)`.
pub fn apply_locally_map(
    h: &dyn BaseFunctor,
    f: &dyn CellMap,
    ctx: &Ctx,
    cell: &Elem,
) -> Result<Elem, ShapeError> {
    match ctx.split_first() {
        None => f.map(ctx, cell),
        Some(((a, b), rest)) => {
            let local = |c: &Ctx, e: &Elem| {
                let mut full = Vec::with_capacity(c.len() + 1);
                full.push((a.clone(), b.clone()));
                full.extend_from_slice(c);
                f.map(&full, e)
            };
            h.on_morphism(&local, rest, cell)
        }
    }
}
