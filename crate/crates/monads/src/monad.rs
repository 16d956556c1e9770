use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::{CellMap, Ctx, Elem, EnrichmentBase, Obj, ShapeError, VGraph};

use crate::error::MonadError;

/// A monad on the level-`k` iterated graphs, presented on cells.
///
/// `apply` builds the fragment of `T(x)` whose cells have grade at most
/// `bound`. The structure maps act on single cells, positioned by their
/// context, so they can be checked without building whole morphisms.
pub trait Monad: Send + Sync {
    fn name(&self) -> String;
    fn level(&self) -> usize;
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError>;
    /// `η : X → TX`.
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
    /// `μ : TTX → TX`.
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
    /// `T(f) : TX → TY`.
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
    /// `T(∐ Y_p) → ∐ T(Y_p)`, with summands tagged as by
    /// [`EnrichmentBase::coproduct_tagged`].
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
    /// A distributive law `T_* S → S T_*` of this monad `S` over the lift of
    /// `inner`, one level down.
    fn distribute(&self, inner: &dyn Monad, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let _ = (inner, ctx);
        Err(ShapeError::new(
            format!("a monad distributing over {}", self.name()),
            cell,
        ))
    }
}

pub type MonadRef = Arc<dyn Monad>;

pub(crate) fn check_level(x: &Obj, level: usize) -> Result<(), MonadError> {
    if x.level() == level {
        Ok(())
    } else {
        Err(MonadError::Level {
            expected: level,
            found: x.level(),
        })
    }
}

/// Keeps all objects and drops hom cells of grade above `bound`.
pub fn restrict_homs(x: &Obj, bound: usize) -> Obj {
    match x {
        Obj::Set(_) => x.clone(),
        Obj::Graph(g) => {
            let homs: BTreeMap<(Elem, Elem), Obj> = g
                .homs()
                .map(|(k, h)| (k.clone(), h.restrict(bound)))
                .filter(|(_, h)| !h.is_empty())
                .collect();
            Obj::Graph(Box::new(
                VGraph::new(g.hom_level(), g.objects().to_vec(), homs).expect("same keys"),
            ))
        }
    }
}

/// The identity monad at any level.
pub struct IdentityMonad {
    pub level: usize,
}

impl Monad for IdentityMonad {
    fn name(&self) -> String {
        format!("id{}", self.level)
    }
    fn level(&self) -> usize {
        self.level
    }
    fn apply(&self, x: &Obj, _: usize) -> Result<Obj, MonadError> {
        check_level(x, self.level)?;
        Ok(x.clone())
    }
    fn unit(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(cell.clone())
    }
    fn mult(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(cell.clone())
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        f.map(ctx, cell)
    }
    fn coprod_iso(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(cell.clone())
    }
}

/// `X ↦ M × X` on finite sets for a finite monoid `M`, given by its
/// multiplication table. Monoid elements are operation labels, so they do
/// not add to the grade.
pub struct WriterMonad {
    elements: Vec<String>,
    unit: String,
    table: BTreeMap<(String, String), String>,
}

impl WriterMonad {
    pub fn new(
        elements: Vec<String>,
        unit: String,
        table: BTreeMap<(String, String), String>,
    ) -> Self {
        WriterMonad {
            elements,
            unit,
            table,
        }
    }

    /// `Z/m` under addition.
    pub fn cyclic(m: usize) -> Self {
        let elements: Vec<String> = (0..m).map(|i| i.to_string()).collect();
        let table = (0..m)
            .flat_map(|i| {
                (0..m).map(move |j| ((i.to_string(), j.to_string()), ((i + j) % m).to_string()))
            })
            .collect();
        WriterMonad::new(elements, "0".into(), table)
    }

    fn label(&self, e: &Elem) -> Result<String, ShapeError> {
        match e {
            Elem::Op(x) => Ok(x.as_atom()?.to_string()),
            _ => Err(ShapeError::new("monoid label", e)),
        }
    }

    fn split<'a>(&self, cell: &'a Elem) -> Result<(String, &'a Elem), ShapeError> {
        match cell.as_tuple()? {
            [m, x] => Ok((self.label(m)?, x)),
            _ => Err(ShapeError::new("labelled element", cell)),
        }
    }

    fn tag(m: &str, x: Elem) -> Elem {
        Elem::Tuple(vec![Elem::op(Elem::atom(m)), x])
    }
}

impl Monad for WriterMonad {
    fn name(&self) -> String {
        format!("writer[{}]", self.elements.join(","))
    }
    fn level(&self) -> usize {
        0
    }
    fn apply(&self, x: &Obj, _: usize) -> Result<Obj, MonadError> {
        check_level(x, 0)?;
        Ok(Obj::Set(
            self.elements
                .iter()
                .flat_map(|m| x.top().iter().map(move |e| Self::tag(m, e.clone())))
                .collect(),
        ))
    }
    fn unit(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(Self::tag(&self.unit, cell.clone()))
    }
    fn mult(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let (m, inner) = self.split(cell)?;
        let (n, x) = self.split(inner)?;
        let mn = self
            .table
            .get(&(m, n))
            .ok_or_else(|| ShapeError::new("pair in the monoid table", cell))?;
        Ok(Self::tag(mn, x.clone()))
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let (m, x) = self.split(cell)?;
        Ok(Self::tag(&m, f.map(ctx, x)?))
    }
    fn coprod_iso(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let (m, x) = self.split(cell)?;
        let (p, y) = x.as_inj()?;
        Ok(Elem::inj(p.clone(), Self::tag(&m, y.clone())))
    }
}

/// `T_*`: identity on objects, `T` on every hom.
pub struct Lift {
    inner: MonadRef,
}

impl Lift {
    pub fn new(inner: MonadRef) -> Self {
        Lift { inner }
    }

    pub fn inner(&self) -> &MonadRef {
        &self.inner
    }
}

/// `f` seen from inside the hom `(a, b)`.
pub(crate) fn in_hom<'a>(f: &'a dyn CellMap, a: &'a Elem, b: &'a Elem) -> impl CellMap + 'a {
    move |rest: &Ctx, cell: &Elem| {
        let mut ctx = Vec::with_capacity(rest.len() + 1);
        ctx.push((a.clone(), b.clone()));
        ctx.extend_from_slice(rest);
        f.map(&ctx, cell)
    }
}

impl Monad for Lift {
    fn name(&self) -> String {
        format!("{}_*", self.inner.name())
    }
    fn level(&self) -> usize {
        self.inner.level() + 1
    }
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError> {
        check_level(x, self.level())?;
        let g = x.as_graph().expect("positive level");
        let mut homs = BTreeMap::new();
        for a in g.objects() {
            for b in g.objects() {
                let h = self.inner.apply(&g.hom_or_initial(a, b), bound)?;
                if !h.is_empty() {
                    homs.insert((a.clone(), b.clone()), h);
                }
            }
        }
        Ok(Obj::Graph(Box::new(VGraph::new(
            self.inner.level(),
            g.objects().to_vec(),
            homs,
        )?)))
    }
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.split_first() {
            None => Ok(cell.clone()),
            Some((_, rest)) => self.inner.unit(rest, cell),
        }
    }
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.split_first() {
            None => Ok(cell.clone()),
            Some((_, rest)) => self.inner.mult(rest, cell),
        }
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.split_first() {
            None => f.map(ctx, cell),
            Some(((a, b), rest)) => self.inner.fmap(&in_hom(f, a, b), rest, cell),
        }
    }
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        match ctx.split_first() {
            None => Ok(cell.clone()),
            Some((_, rest)) => self.inner.coprod_iso(rest, cell),
        }
    }
}

/// The base a monad of the given level acts on.
pub fn base_of(level: usize) -> EnrichmentBase {
    EnrichmentBase { level }
}
