use std::collections::BTreeMap;

use gcore::{
    map_ctx, project_ctx, unwrap_ctx, CellMap, Ctx, Elem, EnrichmentBase, Obj, ShapeError, VGraph,
};

use crate::error::MonadError;
use crate::monad::{check_level, Monad};

/// The free category monad on graphs enriched in level `level - 1`.
///
/// A hom cell of `fc X` at `(a, b)` is `path·(e₁, …, e_k)`, where `path` is
/// the tuple of objects `a = a₀, …, a_k = b` and `eᵢ` is a cell of
/// `X(aᵢ₋₁, aᵢ)`. Deeper cells carry the same path tag.
pub struct FreeCategory {
    level: usize,
}

impl FreeCategory {
    pub fn new(level: usize) -> Self {
        assert!(level >= 1, "free categories need graphs");
        FreeCategory { level }
    }
}

pub(crate) fn split_path(cell: &Elem) -> Result<(&[Elem], &[Elem]), ShapeError> {
    let (path, entries) = cell.as_inj()?;
    let path = path.as_tuple()?;
    let entries = entries.as_tuple()?;
    if path.len() != entries.len() + 1 {
        return Err(ShapeError::new("path with one entry per step", cell));
    }
    Ok((path, entries))
}

pub(crate) fn make_path(path: Vec<Elem>, entries: Vec<Elem>) -> Elem {
    Elem::inj(Elem::Tuple(path), Elem::Tuple(entries))
}

/// Context of entry `i` of a path cell, seen as a cell of the original graph.
pub(crate) fn entry_ctx(
    ctx: &Ctx,
    path: &[Elem],
    i: usize,
) -> Result<Vec<(Elem, Elem)>, ShapeError> {
    let mut out = vec![(path[i].clone(), path[i + 1].clone())];
    out.extend(project_ctx(&unwrap_ctx(&ctx[1..])?, i)?);
    Ok(out)
}

/// Paths of at most `max_len` steps through non-empty homs, grouped by
/// endpoints.
pub fn paths(g: &VGraph, max_len: usize) -> BTreeMap<(Elem, Elem), Vec<Vec<Elem>>> {
    let mut adj: BTreeMap<&Elem, Vec<&Elem>> = BTreeMap::new();
    for ((a, b), h) in g.homs() {
        if !h.is_empty() {
            adj.entry(a).or_default().push(b);
        }
    }
    let mut out: BTreeMap<(Elem, Elem), Vec<Vec<Elem>>> = BTreeMap::new();
    let mut layer: Vec<Vec<Elem>> = g.objects().iter().map(|a| vec![a.clone()]).collect();
    for step in 0..=max_len {
        for p in &layer {
            out.entry((p[0].clone(), p[p.len() - 1].clone()))
                .or_default()
                .push(p.clone());
        }
        if step == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|p| {
                let last = &p[p.len() - 1];
                adj.get(last).into_iter().flatten().map(move |b| {
                    let mut q = p.clone();
                    q.push((*b).clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// The summands of each hom of `fc g`: one product per path, tagged by the
/// path, cut down to grade `bound`.
pub fn fc_summands(g: &VGraph, bound: usize) -> BTreeMap<(Elem, Elem), Vec<(Elem, Obj)>> {
    let below = g.base();
    paths(g, bound)
        .into_iter()
        .map(|(key, ps)| {
            let summands = ps
                .into_iter()
                .map(|p| {
                    let factors: Vec<&Obj> = p
                        .windows(2)
                        .map(|w| g.hom(&w[0], &w[1]).expect("path uses stored homs"))
                        .collect();
                    let h = below.product_within(&factors, bound);
                    (Elem::Tuple(p), h)
                })
                .filter(|(_, h)| !h.is_empty())
                .collect();
            (key, summands)
        })
        .collect()
}

impl Monad for FreeCategory {
    fn name(&self) -> String {
        format!("fc{}", self.level)
    }
    fn level(&self) -> usize {
        self.level
    }
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError> {
        check_level(x, self.level)?;
        let g = x.as_graph().expect("positive level");
        let below = EnrichmentBase {
            level: self.level - 1,
        };
        let mut homs = BTreeMap::new();
        for (key, summands) in fc_summands(g, bound) {
            let h = below.coproduct_tagged(&summands);
            if !h.is_empty() {
                homs.insert(key, h);
            }
        }
        Ok(Obj::Graph(Box::new(VGraph::new(
            self.level - 1,
            g.objects().to_vec(),
            homs,
        )?)))
    }
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.first() {
            None => Ok(cell.clone()),
            Some((a, b)) => Ok(make_path(vec![a.clone(), b.clone()], vec![cell.clone()])),
        }
    }
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return Ok(cell.clone());
        }
        let (outer, inner) = split_path(cell)?;
        let mut path = vec![outer[0].clone()];
        let mut entries = Vec::new();
        for c in inner {
            let (p, e) = split_path(c)?;
            path.extend_from_slice(&p[1..]);
            entries.extend_from_slice(e);
        }
        Ok(make_path(path, entries))
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return f.map(ctx, cell);
        }
        let (path, entries) = split_path(cell)?;
        let new_path = path
            .iter()
            .map(|a| f.map(&[], a))
            .collect::<Result<Vec<_>, _>>()?;
        let new_entries = entries
            .iter()
            .enumerate()
            .map(|(i, e)| f.map(&entry_ctx(ctx, path, i)?, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(make_path(new_path, new_entries))
    }
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return Ok(cell.clone());
        }
        let (path, entries) = split_path(cell)?;
        let (p, _) = path[0].as_inj()?;
        let strip = |e: &Elem| -> Result<Elem, ShapeError> {
            let (q, x) = e.as_inj()?;
            if q != p {
                return Err(ShapeError::new(format!("cell of summand {p}"), e));
            }
            Ok(x.clone())
        };
        let path = path.iter().map(strip).collect::<Result<Vec<_>, _>>()?;
        let entries = entries.iter().map(strip).collect::<Result<Vec<_>, _>>()?;
        Ok(Elem::inj(p.clone(), make_path(path, entries)))
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
        let entries = (0..k)
            .map(|i| {
                let proj = move |_: &Ctx, c: &Elem| -> Result<Elem, ShapeError> {
                    c.as_tuple()?
                        .get(i)
                        .cloned()
                        .ok_or_else(|| ShapeError::new(format!("tuple with component {i}"), c))
                };
                inner.fmap(&proj, &u_ctx, u)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Elem::inj(path.clone(), Elem::Tuple(entries)))
    }
}
