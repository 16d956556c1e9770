use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A cell value inside an object of some enrichment base.
///
/// Products are represented by [`Elem::Tuple`] at every depth and coproducts
/// by [`Elem::Inj`], so structural maps can act uniformly on cells of any
/// dimension. [`Elem::Op`] marks operation labels of a weighting operad; these
/// carry no grade.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Elem {
    Atom(String),
    Tuple(Vec<Elem>),
    Inj(Box<Elem>, Box<Elem>),
    Op(Box<Elem>),
}

/// Enclosing endpoint pairs of a cell, outermost first.
pub type Ctx = [(Elem, Elem)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cell `{found}` does not have the expected shape: {expected}")]
pub struct ShapeError {
    pub expected: String,
    pub found: String,
}

impl ShapeError {
    pub fn new(expected: impl Into<String>, found: &Elem) -> Self {
        ShapeError {
            expected: expected.into(),
            found: found.to_string(),
        }
    }
}

impl Elem {
    pub fn atom(s: impl Into<String>) -> Self {
        Elem::Atom(s.into())
    }

    /// The unique element of a terminal object.
    pub fn unit() -> Self {
        Elem::Tuple(Vec::new())
    }

    pub fn inj(tag: Elem, x: Elem) -> Self {
        Elem::Inj(Box::new(tag), Box::new(x))
    }

    pub fn op(x: Elem) -> Self {
        Elem::Op(Box::new(x))
    }

    pub fn as_tuple(&self) -> Result<&[Elem], ShapeError> {
        match self {
            Elem::Tuple(v) => Ok(v),
            other => Err(ShapeError::new("tuple", other)),
        }
    }

    pub fn as_inj(&self) -> Result<(&Elem, &Elem), ShapeError> {
        match self {
            Elem::Inj(t, x) => Ok((t, x)),
            other => Err(ShapeError::new("injection", other)),
        }
    }

    pub fn as_atom(&self) -> Result<&str, ShapeError> {
        match self {
            Elem::Atom(s) => Ok(s),
            other => Err(ShapeError::new("atom", other)),
        }
    }

    /// Number of generating cells used by this value.
    pub fn grade(&self) -> usize {
        match self {
            Elem::Atom(_) => 1,
            Elem::Tuple(v) => v.iter().map(Elem::weight).sum(),
            Elem::Inj(_, x) => x.grade(),
            Elem::Op(_) => 0,
        }
    }

    /// Contribution of this value as a tuple component. Every non-label
    /// component counts at least once, so identities still cost one.
    pub fn weight(&self) -> usize {
        match self {
            Elem::Op(_) => 0,
            other => other.grade().max(1),
        }
    }

    /// Removes every operation label from tuples, recursively.
    pub fn strip_ops(&self) -> Elem {
        match self {
            Elem::Atom(_) => self.clone(),
            Elem::Tuple(v) => Elem::Tuple(
                v.iter()
                    .filter(|x| !matches!(x, Elem::Op(_)))
                    .map(Elem::strip_ops)
                    .collect(),
            ),
            Elem::Inj(t, x) => Elem::inj(t.strip_ops(), x.strip_ops()),
            Elem::Op(x) => Elem::op(x.strip_ops()),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => write!(f, "{s}"),
            Elem::Tuple(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Elem::Inj(t, x) => write!(f, "{t}·{x}"),
            Elem::Op(x) => write!(f, "@{x}"),
        }
    }
}

/// A map on cells, given the position of each cell by its context.
pub trait CellMap: Sync {
    fn map(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError>;
}

impl<F> CellMap for F
where
    F: Fn(&Ctx, &Elem) -> Result<Elem, ShapeError> + Sync,
{
    fn map(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self(ctx, cell)
    }
}

/// Identity cell map.
pub fn id_map(_: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
    Ok(cell.clone())
}

/// Image of a context under a cell map: every endpoint is itself a cell
/// positioned by the preceding part of the context.
pub fn map_ctx(f: &dyn CellMap, ctx: &Ctx) -> Result<Vec<(Elem, Elem)>, ShapeError> {
    let mut out = Vec::with_capacity(ctx.len());
    for (i, (a, b)) in ctx.iter().enumerate() {
        out.push((f.map(&ctx[..i], a)?, f.map(&ctx[..i], b)?));
    }
    Ok(out)
}

/// Composite `g ∘ f` of cell maps, threading contexts through `f`.
pub fn compose_at(
    g: &dyn CellMap,
    f: &dyn CellMap,
    ctx: &Ctx,
    cell: &Elem,
) -> Result<Elem, ShapeError> {
    let mid = f.map(ctx, cell)?;
    let mid_ctx = map_ctx(f, ctx)?;
    g.map(&mid_ctx, &mid)
}

/// Context of the `i`-th component of a product cell.
pub fn project_ctx(ctx: &Ctx, i: usize) -> Result<Vec<(Elem, Elem)>, ShapeError> {
    ctx.iter()
        .map(|(a, b)| {
            let pa = a.as_tuple()?;
            let pb = b.as_tuple()?;
            match (pa.get(i), pb.get(i)) {
                (Some(x), Some(y)) => Ok((x.clone(), y.clone())),
                _ => Err(ShapeError::new(format!("tuple with component {i}"), a)),
            }
        })
        .collect()
}

/// Context inside one summand of a coproduct cell.
pub fn unwrap_ctx(ctx: &Ctx) -> Result<Vec<(Elem, Elem)>, ShapeError> {
    ctx.iter()
        .map(|(a, b)| Ok((a.as_inj()?.1.clone(), b.as_inj()?.1.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grade_counts_identities_once() {
        let e = Elem::atom("e");
        let id = Elem::inj(Elem::atom("p"), Elem::unit());
        assert_eq!(Elem::Tuple(vec![e.clone(), e.clone()]).grade(), 2);
        assert_eq!(id.grade(), 0);
        assert_eq!(Elem::Tuple(vec![id.clone(), id]).grade(), 2);
        assert_eq!(Elem::Tuple(vec![Elem::op(Elem::unit()), e]).grade(), 1);
    }

    #[test]
    fn render_is_compact() {
        let x = Elem::inj(
            Elem::atom("3"),
            Elem::Tuple(vec![Elem::atom("f"), Elem::op(Elem::atom("p"))]),
        );
        assert_eq!(x.to_string(), "3·[f,@p]");
    }

    #[test]
    fn strip_ops_drops_labels() {
        let x = Elem::Tuple(vec![Elem::op(Elem::unit()), Elem::atom("a")]);
        assert_eq!(x.strip_ops(), Elem::Tuple(vec![Elem::atom("a")]));
    }
}
