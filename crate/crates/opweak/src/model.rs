use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use gcore::{Elem, GlobSet};
use serde::{Deserialize, Serialize};

use crate::error::OpweakError;
use crate::operad::{all_choices, FinOperad};
use crate::wec::{Gamma, WeakEnrichedCat};

/// A finite stand-in for a space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Space {
    Discrete { points: Vec<Elem> },
    /// Vertices with named edges `(name, source, target)`.
    Graph { vertices: Vec<Elem>, edges: Vec<(Elem, Elem, Elem)> },
    Product { factors: Vec<Space> },
}

impl Space {
    pub fn discrete(points: Vec<Elem>) -> Self {
        Space::Discrete { points }
    }

    pub fn product(factors: Vec<Space>) -> Self {
        Space::Product { factors }
    }

    /// The underlying graph of a 1-dimensional globular set.
    pub fn from_globset(g: &GlobSet) -> Result<Self, OpweakError> {
        if g.n() != 1 {
            return Err(OpweakError::OperadFormat(format!(
                "a space needs a 1-dimensional globular set, got dimension {}",
                g.n()
            )));
        }
        let vertices = g.cells(0).iter().map(|c| Elem::atom(c.0.clone())).collect();
        let edges = g
            .cells(1)
            .iter()
            .map(|e| {
                (
                    Elem::atom(e.0.clone()),
                    Elem::atom(g.src_map(1)[e].0.clone()),
                    Elem::atom(g.tgt_map(1)[e].0.clone()),
                )
            })
            .collect();
        Ok(Space::Graph { vertices, edges })
    }
}

/// How a family of finite spaces has points and paths.
///
/// A path is `start·(e₁, …, e_k)`, a walk along edges the model can see, so
/// its grade is its length. The path object between two points has the paths
/// of length at most a bound as points, and an edge for every change of a
/// single step to a parallel one. Paths in a product are tuples of paths.
/// Concatenation is strictly associative, so every operad acts on paths by
/// ignoring the operation.
pub trait SpaceModel: Send + Sync {
    fn name(&self) -> String;
    /// Edges of a graph space that count as paths.
    fn edges<'a>(&self, vertices: &'a [Elem], edges: &'a [(Elem, Elem, Elem)]) -> &'a [(Elem, Elem, Elem)];
}

/// Sees only points: every path is constant.
pub struct DiscreteModel;

/// Sees graph edges as paths.
pub struct FiniteGraphModel;

impl SpaceModel for DiscreteModel {
    fn name(&self) -> String {
        "discrete".into()
    }
    fn edges<'a>(&self, _: &'a [Elem], _: &'a [(Elem, Elem, Elem)]) -> &'a [(Elem, Elem, Elem)] {
        &[]
    }
}

impl SpaceModel for FiniteGraphModel {
    fn name(&self) -> String {
        "graph".into()
    }
    fn edges<'a>(&self, _: &'a [Elem], edges: &'a [(Elem, Elem, Elem)]) -> &'a [(Elem, Elem, Elem)] {
        edges
    }
}

pub fn constant(x: &Elem) -> Elem {
    Elem::inj(x.clone(), Elem::Tuple(Vec::new()))
}

pub fn points(x: &Space) -> Vec<Elem> {
    match x {
        Space::Discrete { points } => points.clone(),
        Space::Graph { vertices, .. } => vertices.clone(),
        Space::Product { factors } => {
            let each: Vec<Vec<Elem>> = factors.iter().map(points).collect();
            let lists: Vec<&[Elem]> = each.iter().map(Vec::as_slice).collect();
            all_choices(&lists).into_iter().map(Elem::Tuple).collect()
        }
    }
}

fn factor(p: &Elem, i: usize) -> Result<&Elem, OpweakError> {
    p.as_tuple()?
        .get(i)
        .ok_or_else(|| OpweakError::NotAPoint(p.to_string()))
}

fn walks(edges: &[(Elem, Elem, Elem)], x: &Elem, y: &Elem, bound: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut stack = vec![(x.clone(), Vec::new())];
    while let Some((at, w)) = stack.pop() {
        if &at == y {
            out.push(w.clone());
        }
        if w.len() < bound {
            for (e, s, t) in edges.iter().rev() {
                if s == &at {
                    let mut next = w.clone();
                    next.push(e.clone());
                    stack.push((t.clone(), next));
                }
            }
        }
    }
    out.sort();
    out
}

/// The space of paths from `x` to `y` of length at most `bound`.
pub fn path_object(m: &dyn SpaceModel, space: &Space, x: &Elem, y: &Elem, bound: usize) -> Result<Space, OpweakError> {
    match space {
        Space::Discrete { points } => {
            if !points.contains(x) {
                return Err(OpweakError::NotAPoint(x.to_string()));
            }
            let pts = if x == y { vec![constant(x)] } else { Vec::new() };
            Ok(Space::discrete(pts))
        }
        Space::Graph { vertices, edges } => {
            for p in [x, y] {
                if !vertices.contains(p) {
                    return Err(OpweakError::NotAPoint(p.to_string()));
                }
            }
            let ws = walks(m.edges(vertices, edges), x, y, bound);
            let mut homotopies = Vec::new();
            for (i, w) in ws.iter().enumerate() {
                for (j, v) in ws.iter().enumerate() {
                    let differ = w.len() == v.len() && w.iter().zip(v).filter(|(a, b)| a != b).count() == 1;
                    if i != j && differ {
                        let (a, b) = (walk(x, w), walk(x, v));
                        homotopies.push((Elem::atom(format!("{a}⇒{b}")), a, b));
                    }
                }
            }
            Ok(Space::Graph {
                vertices: ws.iter().map(|w| walk(x, w)).collect(),
                edges: homotopies,
            })
        }
        Space::Product { factors } => {
            let parts = factors
                .iter()
                .enumerate()
                .map(|(i, f)| path_object(m, f, factor(x, i)?, factor(y, i)?, bound))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Space::product(parts))
        }
    }
}

fn walk(x: &Elem, edges: &[Elem]) -> Elem {
    Elem::inj(x.clone(), Elem::Tuple(edges.to_vec()))
}

/// Start and end of a path.
pub fn endpoints(m: &dyn SpaceModel, space: &Space, path: &Elem) -> Result<(Elem, Elem), OpweakError> {
    match space {
        Space::Product { factors } => {
            let parts = path.as_tuple()?;
            if parts.len() != factors.len() {
                return Err(OpweakError::NotAPoint(path.to_string()));
            }
            let ends = factors
                .iter()
                .zip(parts)
                .map(|(f, p)| endpoints(m, f, p))
                .collect::<Result<Vec<_>, _>>()?;
            let (s, t): (Vec<Elem>, Vec<Elem>) = ends.into_iter().unzip();
            Ok((Elem::Tuple(s), Elem::Tuple(t)))
        }
        Space::Discrete { .. } => {
            let (x, steps) = path.as_inj()?;
            if !steps.as_tuple()?.is_empty() {
                return Err(OpweakError::NotAPoint(path.to_string()));
            }
            Ok((x.clone(), x.clone()))
        }
        Space::Graph { vertices, edges } => {
            let (x, steps) = path.as_inj()?;
            let seen: BTreeMap<&Elem, (&Elem, &Elem)> =
                m.edges(vertices, edges).iter().map(|(e, s, t)| (e, (s, t))).collect();
            let mut at = x.clone();
            for e in steps.as_tuple()? {
                match seen.get(e) {
                    Some((s, t)) if **s == at => at = (*t).clone(),
                    _ => {
                        return Err(OpweakError::Endpoint {
                            path: path.to_string(),
                            from: at.to_string(),
                            to: e.to_string(),
                        })
                    }
                }
            }
            Ok((x.clone(), at))
        }
    }
}

/// Concatenation of composable paths, starting at `x0` (the constant path
/// when there are none).
pub fn concat(m: &dyn SpaceModel, space: &Space, x0: &Elem, paths: &[Elem]) -> Result<Elem, OpweakError> {
    if let Space::Product { factors } = space {
        let parts = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let ps = paths.iter().map(|p| factor(p, i).cloned()).collect::<Result<Vec<_>, _>>()?;
                concat(m, f, factor(x0, i)?, &ps)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Elem::Tuple(parts));
    }
    let mut at = x0.clone();
    let mut steps = Vec::new();
    for p in paths {
        let (s, t) = endpoints(m, space, p)?;
        if s != at {
            return Err(OpweakError::Endpoint {
                path: p.to_string(),
                from: at.to_string(),
                to: s.to_string(),
            });
        }
        steps.extend_from_slice(p.as_inj()?.1.as_tuple()?);
        at = t;
    }
    Ok(walk(x0, &steps))
}

/// Edges between points that the model sees. Products get the box product:
/// one coordinate moves along an edge, the others stay put.
pub fn skeleton(m: &dyn SpaceModel, space: &Space) -> Vec<(Elem, Elem)> {
    match space {
        Space::Discrete { .. } => Vec::new(),
        Space::Graph { vertices, edges } => m
            .edges(vertices, edges)
            .iter()
            .map(|(_, s, t)| (s.clone(), t.clone()))
            .collect(),
        Space::Product { factors } => {
            let mut out = Vec::new();
            let each: Vec<Vec<(Elem, Elem)>> = factors.iter().map(|f| skeleton(m, f)).collect();
            for p in points(space) {
                let coords = p.as_tuple().expect("product points are tuples");
                for (i, edges) in each.iter().enumerate() {
                    for (s, t) in edges {
                        if &coords[i] == s {
                            let mut q = coords.to_vec();
                            q[i] = t.clone();
                            out.push((p.clone(), Elem::Tuple(q)));
                        }
                    }
                }
            }
            out
        }
    }
}

/// The level map turning a space into a set. Classes are named by a chosen
/// point, so every element of `Π X` is also a point of `X`.
pub trait LevelMap: Send + Sync {
    fn name(&self) -> String;
    /// The class of every point.
    fn classes(&self, m: &dyn SpaceModel, space: &Space) -> BTreeMap<Elem, Elem>;
    /// `Π X`.
    fn elements(&self, m: &dyn SpaceModel, space: &Space) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self.classes(m, space).into_values().collect();
        set.into_iter().collect()
    }
}

/// The built-in level maps: points, or path components named by their least
/// point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pi {
    Points,
    Components,
}

impl LevelMap for Pi {
    fn name(&self) -> String {
        match self {
            Pi::Points => "points".into(),
            Pi::Components => "components".into(),
        }
    }
    fn classes(&self, m: &dyn SpaceModel, space: &Space) -> BTreeMap<Elem, Elem> {
        let pts = points(space);
        match self {
            Pi::Points => pts.into_iter().map(|p| (p.clone(), p)).collect(),
            Pi::Components => components(&pts, &skeleton(m, space)),
        }
    }
}

fn components(pts: &[Elem], edges: &[(Elem, Elem)]) -> BTreeMap<Elem, Elem> {
    let index: BTreeMap<&Elem, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pts.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (s, t) in edges {
        let (a, b) = (root(&mut parent, index[s]), root(&mut parent, index[t]));
        // keep the least point as the root
        if pts[a] < pts[b] {
            parent[b] = a;
        } else {
            parent[a] = b;
        }
    }
    (0..pts.len())
        .map(|i| {
            let r = root(&mut parent, i);
            (pts[i].clone(), pts[r].clone())
        })
        .collect()
}

/// Checks that `Π(X × Y) → Π X × Π Y`, induced by the projections, is a
/// bijection.
pub fn check_pi_products(m: &dyn SpaceModel, pi: &dyn LevelMap, x: &Space, y: &Space) -> Result<(), OpweakError> {
    let xy = Space::product(vec![x.clone(), y.clone()]);
    let (cx, cy, cxy) = (pi.classes(m, x), pi.classes(m, y), pi.classes(m, &xy));
    let fail = |d: String| Err(OpweakError::ProductPreservation(format!("{}: {d}", pi.name())));
    let mut image: BTreeMap<&Elem, Elem> = BTreeMap::new();
    for (p, c) in &cxy {
        let parts = p.as_tuple()?;
        let v = Elem::Tuple(vec![cx[&parts[0]].clone(), cy[&parts[1]].clone()]);
        match image.get(c) {
            Some(w) if *w != v => return fail(format!("class {c} goes to both {w} and {v}")),
            _ => {
                image.insert(c, v);
            }
        }
    }
    let domain = pi.elements(m, &xy);
    if let Some(c) = domain.iter().find(|c| !image.contains_key(c)) {
        return fail(format!("{c} is not the class of any point"));
    }
    let hit: BTreeSet<&Elem> = image.values().collect();
    if hit.len() != image.len() {
        return fail("two classes of the product have the same image".into());
    }
    let (ex, ey) = (pi.elements(m, x), pi.elements(m, y));
    if hit.len() != ex.len() * ey.len() {
        return fail(format!("{} classes against {} × {}", hit.len(), ex.len(), ey.len()));
    }
    Ok(())
}

/// The points of a space as objects, with the path objects as homs and
/// concatenation as composition.
pub struct PathGraph {
    pub model: Arc<dyn SpaceModel>,
    pub space: Space,
    pub bound: usize,
    pub objects: Vec<Elem>,
    pub homs: BTreeMap<(Elem, Elem), Space>,
}

impl PathGraph {
    /// Concatenation, with homs listed last first; checks that every path
    /// lies in its hom.
    pub fn gamma(&self, path: &[Elem], ys: &[Elem]) -> Result<Elem, OpweakError> {
        let forward: Vec<Elem> = ys.iter().rev().cloned().collect();
        for (w, p) in path.windows(2).zip(&forward) {
            let ends = endpoints(self.model.as_ref(), &self.space, p)?;
            if ends != (w[0].clone(), w[1].clone()) {
                return Err(OpweakError::Endpoint {
                    path: p.to_string(),
                    from: w[0].to_string(),
                    to: w[1].to_string(),
                });
            }
        }
        concat(self.model.as_ref(), &self.space, &path[0], &forward)
    }
}

/// The path graph of `space` with paths of length at most `bound`.
pub fn gamma_path_graph(model: Arc<dyn SpaceModel>, space: &Space, bound: usize) -> Result<PathGraph, OpweakError> {
    let objects = points(space);
    let mut homs = BTreeMap::new();
    for x in &objects {
        for y in &objects {
            homs.insert((x.clone(), y.clone()), path_object(model.as_ref(), space, x, y, bound)?);
        }
    }
    Ok(PathGraph {
        model,
        space: space.clone(),
        bound,
        objects,
        homs,
    })
}

/// `Π⁺ X`: points as objects, `Π` of the path objects as homs and `Π` of
/// concatenation as composition, weighted by `operad`. Fails when `Π` does
/// not preserve the products of path objects that composition passes
/// through.
pub fn dc_step(
    model: Arc<dyn SpaceModel>,
    pi: Arc<dyn LevelMap>,
    operad: &FinOperad,
    space: &Space,
    bound: usize,
) -> Result<WeakEnrichedCat, OpweakError> {
    let pg = gamma_path_graph(model.clone(), space, bound)?;
    for ((_, y), h1) in &pg.homs {
        for z in &pg.objects {
            check_pi_products(model.as_ref(), pi.as_ref(), h1, &pg.homs[&(y.clone(), z.clone())])?;
        }
    }
    let homs = pg
        .homs
        .iter()
        .map(|(k, h)| (k.clone(), pi.elements(model.as_ref(), h)))
        .collect();
    let objects = pg.objects.clone();
    let level = pi.clone();
    let gamma: Gamma = Arc::new(move |_, path, ys| {
        let r = pg.gamma(path, ys).ok()?;
        let (a, b) = (&path[0], &path[path.len() - 1]);
        let h = path_object(pg.model.as_ref(), &pg.space, a, b, r.grade().max(pg.bound)).ok()?;
        level.classes(pg.model.as_ref(), &h).get(&r).cloned()
    });
    Ok(WeakEnrichedCat {
        objects,
        homs,
        operad: operad.clone(),
        gamma,
        bound: Some(bound),
    })
}
