use std::collections::BTreeMap;

use gcore::{map_ctx, project_ctx, unwrap_ctx, CellMap, Ctx, Elem, EnrichmentBase, Obj, ShapeError, VGraph};
use monads::{paths, Monad, MonadError};

use crate::error::OpweakError;
use crate::operad::FinOperad;

/// The free `(V, P)`-category monad on graphs enriched in the operad's base.
///
/// A hom cell at `(a, b)` is `path·(p, e₁, …, e_k)`: a path of objects
/// `a = a₀, …, a_k = b`, an operation cell `p` of `P(k)` and a cell `eᵢ` of
/// each `X(aᵢ₋₁, aᵢ)`. Operation cells have grade 0, so grades match the free
/// category monad.
///
/// The distributive law over `T_*` needs `T` to fix objects, which holds for
/// the identity and for every monad built by the tower.
pub struct VpFree {
    operad: FinOperad,
}

impl VpFree {
    pub fn new(operad: FinOperad) -> Self {
        VpFree { operad }
    }

    pub fn operad(&self) -> &FinOperad {
        &self.operad
    }
}

pub(crate) fn split_cell(cell: &Elem) -> Result<(&[Elem], &Elem, &[Elem]), ShapeError> {
    let (path, body) = cell.as_inj()?;
    let path = path.as_tuple()?;
    match body.as_tuple()? {
        [op, entries @ ..] if path.len() == entries.len() + 1 => Ok((path, op, entries)),
        _ => Err(ShapeError::new("operation and one entry per step", cell)),
    }
}

pub(crate) fn make_cell(path: Vec<Elem>, op: Elem, entries: Vec<Elem>) -> Elem {
    let mut body = Vec::with_capacity(entries.len() + 1);
    body.push(op);
    body.extend(entries);
    Elem::inj(Elem::Tuple(path), Elem::Tuple(body))
}

fn entry_ctx(ctx: &Ctx, path: &[Elem], i: usize) -> Result<Vec<(Elem, Elem)>, ShapeError> {
    let mut out = vec![(path[i].clone(), path[i + 1].clone())];
    out.extend(project_ctx(&unwrap_ctx(&ctx[1..])?, i + 1)?);
    Ok(out)
}

fn component(i: usize) -> impl CellMap {
    move |_: &Ctx, c: &Elem| {
        c.as_tuple()?
            .get(i)
            .cloned()
            .ok_or_else(|| ShapeError::new(format!("tuple with component {i}"), c))
    }
}

/// Tagged summands per ordered pair of objects.
pub type Summands = BTreeMap<(Elem, Elem), Vec<(Elem, Obj)>>;

/// Summands of every hom of the free `(V, P)`-category on `g`, tagged by path.
pub fn vp_summands(g: &VGraph, operad: &FinOperad, bound: usize) -> Result<Summands, MonadError> {
    let below = g.base();
    let mut out: Summands = BTreeMap::new();
    for (key, ps) in paths(g, bound) {
        let entry = out.entry(key).or_default();
        for p in ps {
            let k = p.len() - 1;
            let homs: Vec<&Obj> = p
                .windows(2)
                .map(|w| g.hom(&w[0], &w[1]).expect("path uses stored homs"))
                .collect();
            if k > operad.cap() {
                if !below.product_within(&homs, bound).is_empty() {
                    return Err(MonadError::ArityCap {
                        needed: k,
                        cap: operad.cap(),
                    });
                }
                continue;
            }
            let ops = operad.ops(k);
            let mut factors = vec![&ops];
            factors.extend(homs);
            let h = below.product_within(&factors, bound);
            if !h.is_empty() {
                entry.push((Elem::Tuple(p), h));
            }
        }
    }
    Ok(out)
}

/// The hom `(a, b)` of the free `(V, P)`-category on `g`, to grade `bound`.
pub fn vp_free_hom(
    g: &VGraph,
    operad: &FinOperad,
    a: &Elem,
    b: &Elem,
    bound: usize,
) -> Result<Obj, OpweakError> {
    let below = g.base();
    let summands = vp_summands(g, operad, bound)?
        .remove(&(a.clone(), b.clone()))
        .unwrap_or_default();
    Ok(below.coproduct_tagged(&summands))
}

impl Monad for VpFree {
    fn name(&self) -> String {
        format!("vp{}", self.level())
    }
    fn level(&self) -> usize {
        self.operad.level() + 1
    }
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError> {
        if x.level() != self.level() {
            return Err(MonadError::Level {
                expected: self.level(),
                found: x.level(),
            });
        }
        let g = x.as_graph().expect("positive level");
        let below = EnrichmentBase {
            level: self.operad.level(),
        };
        let mut homs = BTreeMap::new();
        for (key, s) in vp_summands(g, &self.operad, bound)? {
            let h = below.coproduct_tagged(&s);
            if !h.is_empty() {
                homs.insert(key, h);
            }
        }
        Ok(Obj::Graph(Box::new(VGraph::new(
            self.operad.level(),
            g.objects().to_vec(),
            homs,
        )?)))
    }
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.first() {
            None => Ok(cell.clone()),
            Some((a, b)) => Ok(make_cell(
                vec![a.clone(), b.clone()],
                self.operad.unit_cell(ctx.len()),
                vec![cell.clone()],
            )),
        }
    }
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return Ok(cell.clone());
        }
        let (outer, p, inner) = split_cell(cell)?;
        let mut path = vec![outer[0].clone()];
        let mut qs = Vec::new();
        let mut entries = Vec::new();
        for c in inner {
            let (pi, q, e) = split_cell(c)?;
            path.extend_from_slice(&pi[1..]);
            qs.push(q.clone());
            entries.extend_from_slice(e);
        }
        let op = self
            .operad
            .compose_cell(ctx.len(), p, &qs)
            .map_err(|e| ShapeError::new(e.to_string(), cell))?;
        Ok(make_cell(path, op, entries))
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return f.map(ctx, cell);
        }
        let (path, op, entries) = split_cell(cell)?;
        let new_path = path
            .iter()
            .map(|a| f.map(&[], a))
            .collect::<Result<Vec<_>, _>>()?;
        let new_entries = entries
            .iter()
            .enumerate()
            .map(|(i, e)| f.map(&entry_ctx(ctx, path, i)?, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(make_cell(new_path, op.clone(), new_entries))
    }
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return Ok(cell.clone());
        }
        let (path, op, entries) = split_cell(cell)?;
        let (t, _) = path[0].as_inj()?;
        let strip = |e: &Elem| -> Result<Elem, ShapeError> {
            let (q, x) = e.as_inj()?;
            if q != t {
                return Err(ShapeError::new(format!("cell of summand {t}"), e));
            }
            Ok(x.clone())
        };
        let path = path.iter().map(strip).collect::<Result<Vec<_>, _>>()?;
        let entries = entries.iter().map(strip).collect::<Result<Vec<_>, _>>()?;
        Ok(Elem::inj(t.clone(), make_cell(path, op.clone(), entries)))
    }
    fn distribute(&self, inner: &dyn Monad, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let Some((_, rest)) = ctx.split_first() else {
            return Ok(cell.clone());
        };
        let iso = |c: &Ctx, e: &Elem| inner.coprod_iso(c, e);
        let split = iso(rest, cell)?;
        let (path, u) = split.as_inj()?;
        let u_ctx = unwrap_ctx(&map_ctx(&iso, rest)?)?;
        let k = path.as_tuple()?.len().saturating_sub(1);
        // the inner monad keeps objects, so a discrete ops(k) is an algebra
        // by collapsing every higher cell onto the unique one
        let op = if u_ctx.is_empty() {
            inner.fmap(&component(0), &u_ctx, u)?
        } else {
            Elem::op(Elem::unit())
        };
        let entries = (0..k)
            .map(|i| inner.fmap(&component(i + 1), &u_ctx, u))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(make_cell(path.as_tuple()?.to_vec(), op, entries))
    }
}
