use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::elem::{map_ctx, unwrap_ctx, CellMap, Ctx, Elem, ShapeError};
use crate::error::GcoreError;

/// An object of an iterated enrichment base: a finite set at level 0, or a
/// graph enriched in the level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obj {
    Set(Vec<Elem>),
    Graph(Box<VGraph>),
}

/// A graph enriched in `EnrichmentBase { level: hom_level }`. Homs that are
/// initial are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VGraph {
    hom_level: usize,
    objects: Vec<Elem>,
    homs: BTreeMap<(Elem, Elem), Obj>,
}

/// A cell of an object together with the endpoints enclosing it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub ctx: Vec<(Elem, Elem)>,
    pub elem: Elem,
}

impl Cell {
    pub fn depth(&self) -> usize {
        self.ctx.len()
    }
}

impl VGraph {
    /// Builds a graph; hom keys must be objects and hom levels must match.
    pub fn new(
        hom_level: usize,
        objects: Vec<Elem>,
        homs: BTreeMap<(Elem, Elem), Obj>,
    ) -> Result<Self, GcoreError> {
        let known: BTreeSet<&Elem> = objects.iter().collect();
        if known.len() != objects.len() {
            return Err(GcoreError::Collision {
                dim: 0,
                id: "duplicate object".into(),
            });
        }
        for ((a, b), h) in &homs {
            if !known.contains(a) || !known.contains(b) {
                return Err(GcoreError::UnknownObject {
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
            if h.level() != hom_level {
                return Err(GcoreError::Level {
                    expected: hom_level,
                    found: h.level(),
                });
            }
        }
        Ok(Self::new_unchecked(hom_level, objects, homs))
    }

    pub(crate) fn new_unchecked(
        hom_level: usize,
        objects: Vec<Elem>,
        mut homs: BTreeMap<(Elem, Elem), Obj>,
    ) -> Self {
        homs.retain(|_, h| !h.is_empty());
        VGraph {
            hom_level,
            objects,
            homs,
        }
    }

    pub fn hom_level(&self) -> usize {
        self.hom_level
    }

    pub fn base(&self) -> EnrichmentBase {
        EnrichmentBase {
            level: self.hom_level,
        }
    }

    pub fn objects(&self) -> &[Elem] {
        &self.objects
    }

    pub fn hom(&self, a: &Elem, b: &Elem) -> Option<&Obj> {
        self.homs.get(&(a.clone(), b.clone()))
    }

    /// The hom object, materializing the initial object when absent.
    pub fn hom_or_initial(&self, a: &Elem, b: &Elem) -> Cow<'_, Obj> {
        match self.hom(a, b) {
            Some(h) => Cow::Borrowed(h),
            None => Cow::Owned(self.base().initial()),
        }
    }

    /// Stored (non-initial) homs in key order.
    pub fn homs(&self) -> impl Iterator<Item = (&(Elem, Elem), &Obj)> {
        self.homs.iter()
    }
}

impl Obj {
    pub fn level(&self) -> usize {
        match self {
            Obj::Set(_) => 0,
            Obj::Graph(g) => g.hom_level + 1,
        }
    }

    pub fn graph(self) -> Option<VGraph> {
        match self {
            Obj::Graph(g) => Some(*g),
            Obj::Set(_) => None,
        }
    }

    pub fn as_graph(&self) -> Option<&VGraph> {
        match self {
            Obj::Graph(g) => Some(g),
            Obj::Set(_) => None,
        }
    }

    /// Elements of a set, or objects of a graph.
    pub fn top(&self) -> &[Elem] {
        match self {
            Obj::Set(v) => v,
            Obj::Graph(g) => &g.objects,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.top().is_empty()
    }

    /// Every cell at every depth, objects first.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        self.collect_cells(&mut Vec::new(), &mut out);
        out
    }

    fn collect_cells(&self, prefix: &mut Vec<(Elem, Elem)>, out: &mut Vec<Cell>) {
        for e in self.top() {
            out.push(Cell {
                ctx: prefix.clone(),
                elem: e.clone(),
            });
        }
        if let Obj::Graph(g) = self {
            for ((a, b), h) in &g.homs {
                prefix.push((a.clone(), b.clone()));
                h.collect_cells(prefix, out);
                prefix.pop();
            }
        }
    }

    /// Number of cells at each depth `0..=level`.
    pub fn counts_by_depth(&self) -> Vec<usize> {
        let mut out = vec![0; self.level() + 1];
        for c in self.cells() {
            out[c.depth()] += 1;
        }
        out
    }

    /// Applies `f` to every cell at every depth, keeping the shape.
    pub fn relabel(&self, f: &dyn Fn(&Elem) -> Elem) -> Obj {
        match self {
            Obj::Set(v) => Obj::Set(v.iter().map(f).collect()),
            Obj::Graph(g) => Obj::Graph(Box::new(VGraph {
                hom_level: g.hom_level,
                objects: g.objects.iter().map(f).collect(),
                homs: g
                    .homs
                    .iter()
                    .map(|((a, b), h)| ((f(a), f(b)), h.relabel(f)))
                    .collect(),
            })),
        }
    }

    /// Keeps only cells of grade at most `bound`, at every depth.
    pub fn restrict(&self, bound: usize) -> Obj {
        match self {
            Obj::Set(v) => Obj::Set(v.iter().filter(|e| e.grade() <= bound).cloned().collect()),
            Obj::Graph(g) => {
                let objects: Vec<Elem> = g
                    .objects
                    .iter()
                    .filter(|e| e.grade() <= bound)
                    .cloned()
                    .collect();
                let keep: BTreeSet<&Elem> = objects.iter().collect();
                let homs = g
                    .homs
                    .iter()
                    .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
                    .map(|(k, h)| (k.clone(), h.restrict(bound)))
                    .collect();
                Obj::Graph(Box::new(VGraph::new_unchecked(g.hom_level, objects, homs)))
            }
        }
    }

    /// Drops the deepest level of cells.
    pub fn truncate_top(&self) -> Result<Obj, GcoreError> {
        match self {
            Obj::Set(_) => Err(GcoreError::Dimension {
                requested: 1,
                available: 0,
            }),
            Obj::Graph(g) if g.hom_level == 0 => Ok(Obj::Set(g.objects.clone())),
            Obj::Graph(g) => {
                let homs = g
                    .homs
                    .iter()
                    .map(|(k, h)| Ok((k.clone(), h.truncate_top()?)))
                    .collect::<Result<_, GcoreError>>()?;
                Ok(Obj::Graph(Box::new(VGraph::new_unchecked(
                    g.hom_level - 1,
                    g.objects.clone(),
                    homs,
                ))))
            }
        }
    }

    /// Cells as a set, for order-insensitive comparison.
    pub fn cell_set(&self) -> BTreeSet<Cell> {
        self.cells().into_iter().collect()
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level-{} object with cells {:?}", self.level(), self.counts_by_depth())
    }
}

/// Kind of objects a base holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    FiniteSets,
    GraphsOver(Box<ObjectKind>),
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectKind::FiniteSets => write!(f, "Set"),
            ObjectKind::GraphsOver(k) => write!(f, "({k})-Gph"),
        }
    }
}

/// A finitary base: finite sets, or graphs iterated `level` times over them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnrichmentBase {
    pub level: usize,
}

pub fn finset_base() -> EnrichmentBase {
    EnrichmentBase { level: 0 }
}

pub fn vgraph_base(v: EnrichmentBase) -> EnrichmentBase {
    EnrichmentBase { level: v.level + 1 }
}

/// Failure of a cellwise bijection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    Shape(ShapeError),
    /// Two cells land on the same image.
    NotInjective { first: Cell, second: Cell },
    /// An image cell is not a cell of the target.
    OutsideTarget { cell: Cell, image: Cell },
    /// A target cell is not hit.
    NotSurjective { missed: Cell },
}

impl fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoFailure::Shape(e) => write!(f, "{e}"),
            IsoFailure::NotInjective { first, second } => {
                write!(f, "cells {} and {} share an image", first.elem, second.elem)
            }
            IsoFailure::OutsideTarget { cell, image } => {
                write!(f, "image {} of {} is not a target cell", image.elem, cell.elem)
            }
            IsoFailure::NotSurjective { missed } => write!(f, "target cell {} not hit", missed.elem),
        }
    }
}

/// Checks that `f` maps the cells of `from` bijectively onto those of `to`.
pub fn check_cell_bijection(f: &dyn CellMap, from: &Obj, to: &Obj) -> Result<(), IsoFailure> {
    let target = to.cell_set();
    let mut hit: BTreeMap<Cell, Cell> = BTreeMap::new();
    for cell in from.cells() {
        let image = Cell {
            ctx: map_ctx(f, &cell.ctx).map_err(IsoFailure::Shape)?,
            elem: f.map(&cell.ctx, &cell.elem).map_err(IsoFailure::Shape)?,
        };
        if !target.contains(&image) {
            return Err(IsoFailure::OutsideTarget { cell, image });
        }
        if let Some(prev) = hit.insert(image, cell.clone()) {
            return Err(IsoFailure::NotInjective {
                first: prev,
                second: cell,
            });
        }
    }
    if let Some(missed) = target.into_iter().find(|c| !hit.contains_key(c)) {
        return Err(IsoFailure::NotSurjective { missed });
    }
    Ok(())
}

impl EnrichmentBase {
    pub fn object_kind(&self) -> ObjectKind {
        (0..self.level).fold(ObjectKind::FiniteSets, |k, _| ObjectKind::GraphsOver(Box::new(k)))
    }

    pub fn terminal(&self) -> Obj {
        if self.level == 0 {
            Obj::Set(vec![Elem::unit()])
        } else {
            let below = EnrichmentBase {
                level: self.level - 1,
            };
            let u = Elem::unit();
            Obj::Graph(Box::new(VGraph::new_unchecked(
                self.level - 1,
                vec![u.clone()],
                BTreeMap::from([((u.clone(), u), below.terminal())]),
            )))
        }
    }

    pub fn initial(&self) -> Obj {
        if self.level == 0 {
            Obj::Set(Vec::new())
        } else {
            Obj::Graph(Box::new(VGraph::new_unchecked(
                self.level - 1,
                Vec::new(),
                BTreeMap::new(),
            )))
        }
    }

    /// Global elements: maps from the terminal object.
    pub fn elements(&self, x: &Obj) -> Vec<Elem> {
        match x {
            Obj::Set(v) => v.clone(),
            Obj::Graph(g) => {
                let below = g.base();
                let mut out = Vec::new();
                for a in &g.objects {
                    if let Some(h) = g.hom(a, a) {
                        for e in below.elements(h) {
                            out.push(Elem::Tuple(vec![a.clone(), e]));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn equal_obj(&self, x: &Obj, y: &Obj) -> bool {
        x == y
    }

    pub fn equal_elem(&self, x: &Elem, y: &Elem) -> bool {
        x == y
    }

    /// Finite product of `factors`.
    pub fn product(&self, factors: &[&Obj]) -> Obj {
        self.product_within(factors, usize::MAX)
    }

    pub fn product2(&self, x: &Obj, y: &Obj) -> Obj {
        self.product(&[x, y])
    }

    /// The fragment of the product whose cells have grade at most `budget`.
    pub fn product_within(&self, factors: &[&Obj], budget: usize) -> Obj {
        let tops: Vec<&[Elem]> = factors.iter().map(|f| f.top()).collect();
        let tuples = bounded_tuples(&tops, budget);
        if self.level == 0 {
            return Obj::Set(tuples);
        }
        let below = EnrichmentBase {
            level: self.level - 1,
        };
        let graphs: Vec<&VGraph> = factors
            .iter()
            .map(|f| f.as_graph().expect("factor level matches base"))
            .collect();
        let mut homs = BTreeMap::new();
        for s in &tuples {
            let sv = s.as_tuple().expect("product objects are tuples");
            for t in &tuples {
                let tv = t.as_tuple().expect("product objects are tuples");
                let parts: Option<Vec<&Obj>> = graphs
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.hom(&sv[i], &tv[i]))
                    .collect();
                if let Some(parts) = parts {
                    let h = below.product_within(&parts, budget);
                    if !h.is_empty() {
                        homs.insert((s.clone(), t.clone()), h);
                    }
                }
            }
        }
        Obj::Graph(Box::new(VGraph::new_unchecked(self.level - 1, tuples, homs)))
    }

    /// Projection onto factor `i`, valid at every depth.
    pub fn projection(&self, i: usize) -> impl CellMap {
        move |_: &Ctx, cell: &Elem| {
            cell.as_tuple()?
                .get(i)
                .cloned()
                .ok_or_else(|| ShapeError::new(format!("tuple with component {i}"), cell))
        }
    }

    /// Pairing of maps into each factor.
    pub fn pairing<'a>(&self, fs: Vec<&'a dyn CellMap>) -> impl CellMap + 'a {
        move |ctx: &Ctx, cell: &Elem| {
            fs.iter()
                .map(|f| f.map(ctx, cell))
                .collect::<Result<Vec<_>, _>>()
                .map(Elem::Tuple)
        }
    }

    /// Coproduct of tagged summands; every cell of summand `t` is tagged `t`.
    pub fn coproduct_tagged(&self, summands: &[(Elem, Obj)]) -> Obj {
        match self.level {
            0 => Obj::Set(
                summands
                    .iter()
                    .flat_map(|(t, x)| x.top().iter().map(move |e| Elem::inj(t.clone(), e.clone())))
                    .collect(),
            ),
            _ => {
                let mut objects = Vec::new();
                let mut homs = BTreeMap::new();
                for (t, x) in summands {
                    let tag = |e: &Elem| Elem::inj(t.clone(), e.clone());
                    let retagged = x.relabel(&tag);
                    let g = retagged.graph().expect("summand level matches base");
                    objects.extend(g.objects);
                    homs.extend(g.homs);
                }
                Obj::Graph(Box::new(VGraph::new_unchecked(self.level - 1, objects, homs)))
            }
        }
    }

    /// Coproduct with component indices as tags (`k·name`).
    pub fn coproduct(&self, summands: &[Obj]) -> Obj {
        let tagged: Vec<(Elem, Obj)> = summands
            .iter()
            .enumerate()
            .map(|(k, x)| (Elem::atom(k.to_string()), x.clone()))
            .collect();
        self.coproduct_tagged(&tagged)
    }

    pub fn injection(&self, tag: Elem) -> impl CellMap {
        move |_: &Ctx, cell: &Elem| Ok(Elem::inj(tag.clone(), cell.clone()))
    }

    /// Case analysis: dispatch on the tag, with the context unwrapped.
    pub fn case<'a>(&self, branches: BTreeMap<Elem, &'a dyn CellMap>) -> impl CellMap + 'a {
        move |ctx: &Ctx, cell: &Elem| {
            let (t, x) = cell.as_inj()?;
            let f = branches
                .get(t)
                .ok_or_else(|| ShapeError::new("injection with a known tag", cell))?;
            f.map(&unwrap_ctx(ctx)?, x)
        }
    }

    /// `x × ∐ ys` and `∐ (x × y_i)` with the canonical map between them,
    /// verified to be a bijection on cells.
    pub fn distribute(&self, x: &Obj, ys: &[Obj]) -> Result<Distribution, IsoFailure> {
        let lhs = self.product2(x, &self.coproduct(ys));
        let parts: Vec<Obj> = ys.iter().map(|y| self.product2(x, y)).collect();
        let rhs = self.coproduct(&parts);
        check_cell_bijection(&distribute_forward, &lhs, &rhs)?;
        check_cell_bijection(&distribute_backward, &rhs, &lhs)?;
        Ok(Distribution { lhs, rhs })
    }
}

/// Both sides of a verified distributivity bijection.
#[derive(Clone, Debug)]
pub struct Distribution {
    pub lhs: Obj,
    pub rhs: Obj,
}

/// `(a, k·b) ↦ k·(a, b)`.
pub fn distribute_forward(_: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
    let v = cell.as_tuple()?;
    match v {
        [a, b] => {
            let (t, y) = b.as_inj()?;
            Ok(Elem::inj(t.clone(), Elem::Tuple(vec![a.clone(), y.clone()])))
        }
        _ => Err(ShapeError::new("pair", cell)),
    }
}

/// `k·(a, b) ↦ (a, k·b)`.
pub fn distribute_backward(_: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
    let (t, p) = cell.as_inj()?;
    match p.as_tuple()? {
        [a, b] => Ok(Elem::Tuple(vec![a.clone(), Elem::inj(t.clone(), b.clone())])),
        _ => Err(ShapeError::new("tagged pair", cell)),
    }
}

/// All tuples choosing one element per list with total weight ≤ budget,
/// in lexicographic order.
pub fn bounded_tuples(lists: &[&[Elem]], budget: usize) -> Vec<Elem> {
    fn go(lists: &[&[Elem]], budget: usize, acc: &mut Vec<Elem>, out: &mut Vec<Elem>) {
        let Some((first, rest)) = lists.split_first() else {
            out.push(Elem::Tuple(acc.clone()));
            return;
        };
        for e in first.iter() {
            let w = e.weight();
            if w > budget {
                continue;
            }
            acc.push(e.clone());
            go(rest, budget - w, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(lists, budget, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> Obj {
        Obj::Set(names.iter().map(|s| Elem::atom(*s)).collect())
    }

    fn one_object(hom: Obj) -> Obj {
        let v = Elem::atom("v");
        Obj::Graph(Box::new(
            VGraph::new(0, vec![v.clone()], BTreeMap::from([((v.clone(), v), hom)])).unwrap(),
        ))
    }

    #[test]
    fn terminal_and_initial_cardinalities() {
        for level in 0..3 {
            let b = EnrichmentBase { level };
            assert_eq!(b.elements(&b.terminal()).len(), 1);
            assert_eq!(b.elements(&b.initial()).len(), 0);
        }
    }

    #[test]
    fn vgraph_terminal_has_singleton_hom() {
        let b = vgraph_base(finset_base());
        let t = b.terminal();
        let g = t.as_graph().unwrap();
        assert_eq!(g.objects().len(), 1);
        assert_eq!(g.hom(&Elem::unit(), &Elem::unit()).unwrap().top().len(), 1);
    }

    #[test]
    fn product_of_one_object_graphs() {
        let b = vgraph_base(finset_base());
        let x = one_object(set(&["a", "b"]));
        let y = one_object(set(&["p", "q", "r"]));
        let p = b.product2(&x, &y);
        let g = p.as_graph().unwrap();
        assert_eq!(g.objects().len(), 1);
        let o = &g.objects()[0];
        assert_eq!(g.hom(o, o).unwrap().top().len(), 6);
    }

    #[test]
    fn coproduct_has_empty_cross_homs() {
        let b = vgraph_base(finset_base());
        let x = one_object(set(&["a"]));
        let u = Elem::atom("u");
        let w = Elem::atom("w");
        let y = Obj::Graph(Box::new(
            VGraph::new(0, vec![u.clone(), w.clone()], BTreeMap::from([((u, w), set(&["e"]))]))
                .unwrap(),
        ));
        let c = b.coproduct(&[x, y]);
        let g = c.as_graph().unwrap();
        assert_eq!(g.objects().len(), 3);
        let v0 = Elem::inj(Elem::atom("0"), Elem::atom("v"));
        let u1 = Elem::inj(Elem::atom("1"), Elem::atom("u"));
        assert!(g.hom(&v0, &u1).is_none());
        assert_eq!(g.objects()[0].to_string(), "0·v");
    }

    #[test]
    fn distribution_is_bijective() {
        let b = vgraph_base(finset_base());
        let x = one_object(set(&["a", "b"]));
        let ys = vec![one_object(set(&["p"])), b.terminal(), b.initial()];
        let d = b.distribute(&x, &ys).unwrap();
        assert_eq!(d.lhs.cells().len(), d.rhs.cells().len());
    }

    #[test]
    fn case_dispatches_on_tag() {
        let b = finset_base();
        let double = |_: &Ctx, e: &Elem| Ok(Elem::Tuple(vec![e.clone(), e.clone()]));
        let keep = |_: &Ctx, e: &Elem| Ok(e.clone());
        let mut branches: BTreeMap<Elem, &dyn CellMap> = BTreeMap::new();
        branches.insert(Elem::atom("0"), &double);
        branches.insert(Elem::atom("1"), &keep);
        let c = b.case(branches);
        let x = Elem::inj(Elem::atom("0"), Elem::atom("a"));
        assert_eq!(
            c.map(&[], &x).unwrap(),
            Elem::Tuple(vec![Elem::atom("a"), Elem::atom("a")])
        );
    }
}
