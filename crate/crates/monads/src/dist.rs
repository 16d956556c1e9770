use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::{check_cell_bijection, Ctx, Elem, EnrichmentBase, Obj, ShapeError};

use crate::composite::chain;
use crate::error::MonadError;
use crate::fc::{fc_summands, FreeCategory};
use crate::laws::{Law, LawCheck, Ledger};
use crate::monad::{Lift, Monad, MonadRef};

/// Checks that `T(∐ Y_p) → ∐ T(Y_p)` is a bijection on the grade-`bound`
/// fragments.
pub fn check_coproduct_preservation(
    t: &dyn Monad,
    summands: &[(Elem, Obj)],
    bound: usize,
) -> Result<(), MonadError> {
    let base = EnrichmentBase { level: t.level() };
    let lhs = t.apply(&base.coproduct_tagged(summands), bound)?;
    let parts = summands
        .iter()
        .map(|(p, y)| Ok((p.clone(), t.apply(y, bound)?)))
        .collect::<Result<Vec<_>, MonadError>>()?;
    let rhs = base.coproduct_tagged(&parts);
    let iso = |c: &Ctx, e: &Elem| t.coprod_iso(c, e);
    check_cell_bijection(&iso, &lhs, &rhs).map_err(|e| MonadError::CoproductPreservation {
        monad: t.name(),
        detail: e.to_string(),
    })
}

/// The component `T_* S A → S T_* A` at one graph, with both sides built.
pub struct DistComponent {
    inner: MonadRef,
    outer: MonadRef,
    pub from: Obj,
    pub to: Obj,
}

impl DistComponent {
    pub fn map(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self.outer.distribute(self.inner.as_ref(), ctx, cell)
    }
}

/// The distributive law of `T_*` over `fc` at `a`. Fails when `T` does not
/// preserve the coproducts making up the homs of `fc a`.
pub fn dist_law(t: MonadRef, a: &Obj, bound: usize) -> Result<DistComponent, MonadError> {
    let outer = FreeCategory::new(t.level() + 1);
    let g = a.as_graph().ok_or(MonadError::Level {
        expected: t.level() + 1,
        found: 0,
    })?;
    for summands in fc_summands(g, bound).values() {
        check_coproduct_preservation(t.as_ref(), summands, bound)?;
    }
    dist_component(Arc::new(outer), t, a, bound)
}

/// The component of `S`'s distributive law over `T_*` at `a`, without the
/// coproduct check.
pub fn dist_component(
    s: MonadRef,
    t: MonadRef,
    a: &Obj,
    bound: usize,
) -> Result<DistComponent, MonadError> {
    let lifted = Lift::new(t.clone());
    let from = lifted.apply(&s.apply(a, bound)?, bound)?;
    let to = s.apply(&lifted.apply(a, bound)?, bound)?;
    Ok(DistComponent {
        inner: t,
        outer: s,
        from,
        to,
    })
}

/// The four distributive-law axioms, and that every component lands in
/// `fc(T_* z)`, elementwise at grade `bound`.
pub fn check_dist_axioms(t: MonadRef, z: &Obj, bound: usize) -> Result<LawCheck, MonadError> {
    axioms(dist_law(t.clone(), z, bound)?, t, z, bound)
}

/// The same axioms for an arbitrary outer monad `s`.
pub fn check_dist_axioms_with(
    s: MonadRef,
    t: MonadRef,
    z: &Obj,
    bound: usize,
) -> Result<LawCheck, MonadError> {
    axioms(dist_component(s, t.clone(), z, bound)?, t, z, bound)
}

fn axioms(comp: DistComponent, t: MonadRef, z: &Obj, bound: usize) -> Result<LawCheck, MonadError> {
    let s = &comp.outer;
    let ts = Lift::new(t);
    let s_z = s.apply(z, bound)?;
    let ss_z = s.apply(&s_z, bound)?;
    let ts_s_z = &comp.from;
    let tt_s_z = ts.apply(ts_s_z, bound)?;
    let t_ss_z = ts.apply(&ss_z, bound)?;
    let target = comp.to.cell_set();

    let lam = |c: &Ctx, e: &Elem| comp.map(c, e);
    let s_lam = |c: &Ctx, e: &Elem| s.fmap(&lam, c, e);
    let t_lam = |c: &Ctx, e: &Elem| ts.fmap(&lam, c, e);
    let t_unit = |c: &Ctx, e: &Elem| ts.unit(c, e);
    let t_mult = |c: &Ctx, e: &Elem| ts.mult(c, e);
    let s_unit = |c: &Ctx, e: &Elem| s.unit(c, e);
    let s_mult = |c: &Ctx, e: &Elem| s.mult(c, e);
    let s_t_unit = |c: &Ctx, e: &Elem| s.fmap(&t_unit, c, e);
    let s_t_mult = |c: &Ctx, e: &Elem| s.fmap(&t_mult, c, e);
    let t_s_unit = |c: &Ctx, e: &Elem| ts.fmap(&s_unit, c, e);
    let t_s_mult = |c: &Ctx, e: &Elem| ts.fmap(&s_mult, c, e);

    let mut ledger = Ledger::default();
    for cell in ts_s_z.cells() {
        ledger.lands_in(Law::DistTarget, &lam, &cell, &target);
    }
    for cell in s_z.cells() {
        let (c, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::DistInnerUnit,
            &cell,
            chain(&[&t_unit, &lam], c, e),
            s_t_unit(c, e),
        );
    }
    for cell in ts.apply(z, bound)?.cells() {
        let (c, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::DistOuterUnit,
            &cell,
            chain(&[&t_s_unit, &lam], c, e),
            s_unit(c, e),
        );
    }
    for cell in tt_s_z.cells() {
        let (c, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::DistInnerMult,
            &cell,
            chain(&[&t_mult, &lam], c, e),
            chain(&[&t_lam, &lam, &s_t_mult], c, e),
        );
    }
    for cell in t_ss_z.cells() {
        let (c, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::DistOuterMult,
            &cell,
            chain(&[&t_s_mult, &lam], c, e),
            chain(&[&lam, &s_lam, &s_mult], c, e),
        );
    }
    Ok(LawCheck {
        checked: ledger.checked,
        failures: ledger.failures,
    })
}

/// Naturality of the distributive law along a graph morphism `h : z → w`,
/// given as a table on cells at every depth.
pub fn check_dist_naturality(
    t: MonadRef,
    z: &Obj,
    h: &BTreeMap<Elem, Elem>,
    bound: usize,
) -> Result<LawCheck, MonadError> {
    let comp = dist_law(t.clone(), z, bound)?;
    let s = &comp.outer;
    let ts = Lift::new(t);
    let hm = |_: &Ctx, e: &Elem| {
        h.get(e)
            .cloned()
            .ok_or_else(|| ShapeError::new("cell in the morphism table", e))
    };
    let lam = |c: &Ctx, e: &Elem| comp.map(c, e);
    let s_h = |c: &Ctx, e: &Elem| s.fmap(&hm, c, e);
    let ts_h = |c: &Ctx, e: &Elem| ts.fmap(&s_h, c, e);
    let t_h = |c: &Ctx, e: &Elem| ts.fmap(&hm, c, e);
    let st_h = |c: &Ctx, e: &Elem| s.fmap(&t_h, c, e);
    let mut ledger = Ledger::default();
    for cell in comp.from.cells() {
        let (c, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::Naturality,
            &cell,
            chain(&[&ts_h, &lam], c, e),
            chain(&[&lam, &st_h], c, e),
        );
    }
    Ok(LawCheck {
        checked: ledger.checked,
        failures: ledger.failures,
    })
}
