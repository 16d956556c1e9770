use std::sync::Arc;

use gcore::{map_ctx, CellMap, Ctx, Elem, Obj, ShapeError};

use crate::error::MonadError;
use crate::fc::FreeCategory;
use crate::monad::{restrict_homs, Lift, Monad, MonadRef};

/// Applies cell maps left to right, threading the context.
pub fn chain(fs: &[&dyn CellMap], ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
    let mut ctx = ctx.to_vec();
    let mut cell = cell.clone();
    for f in fs {
        let next = f.map(&ctx, &cell)?;
        ctx = map_ctx(*f, &ctx)?;
        cell = next;
    }
    Ok(cell)
}

/// `S ∘ T_*` for an outer monad `S` at level `k` distributing over the lift of
/// an inner monad `T` at level `k - 1`.
pub struct Composite {
    name: String,
    outer: MonadRef,
    inner: MonadRef,
    lifted: Lift,
}

impl Composite {
    pub fn new(outer: MonadRef, inner: MonadRef) -> Result<Self, MonadError> {
        if outer.level() != inner.level() + 1 {
            return Err(MonadError::Level {
                expected: outer.level() - 1,
                found: inner.level(),
            });
        }
        let name = format!("{}∘{}_*", outer.name(), inner.name());
        Ok(Composite {
            name,
            lifted: Lift::new(inner.clone()),
            outer,
            inner,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn outer(&self) -> &MonadRef {
        &self.outer
    }

    pub fn inner(&self) -> &MonadRef {
        &self.inner
    }

    pub fn lifted(&self) -> &Lift {
        &self.lifted
    }

    /// `λ : T_* S → S T_*`.
    pub fn dist(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self.outer.distribute(self.inner.as_ref(), ctx, cell)
    }
}

impl Monad for Composite {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn level(&self) -> usize {
        self.outer.level()
    }
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError> {
        let tx = self.lifted.apply(x, bound)?;
        Ok(restrict_homs(&self.outer.apply(&tx, bound)?, bound))
    }
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let t = |c: &Ctx, e: &Elem| self.lifted.unit(c, e);
        let s = |c: &Ctx, e: &Elem| self.outer.unit(c, e);
        chain(&[&t, &s], ctx, cell)
    }
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let lam = |c: &Ctx, e: &Elem| self.dist(c, e);
        let s_lam = |c: &Ctx, e: &Elem| self.outer.fmap(&lam, c, e);
        let s_mult = |c: &Ctx, e: &Elem| self.outer.mult(c, e);
        let t_mult = |c: &Ctx, e: &Elem| self.lifted.mult(c, e);
        let s_t_mult = |c: &Ctx, e: &Elem| self.outer.fmap(&t_mult, c, e);
        chain(&[&s_lam, &s_mult, &s_t_mult], ctx, cell)
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let tf = |c: &Ctx, e: &Elem| self.lifted.fmap(f, c, e);
        self.outer.fmap(&tf, ctx, cell)
    }
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let t_iso = |c: &Ctx, e: &Elem| self.lifted.coprod_iso(c, e);
        let s_t_iso = |c: &Ctx, e: &Elem| self.outer.fmap(&t_iso, c, e);
        let s_iso = |c: &Ctx, e: &Elem| self.outer.coprod_iso(c, e);
        chain(&[&s_t_iso, &s_iso], ctx, cell)
    }
}

/// One step of the tower: `T ↦ fc ∘ T_*` on graphs enriched in `T`'s base.
pub fn fm_step(t: MonadRef) -> Result<Composite, MonadError> {
    let fc: MonadRef = Arc::new(FreeCategory::new(t.level() + 1));
    Composite::new(fc, t)
}
