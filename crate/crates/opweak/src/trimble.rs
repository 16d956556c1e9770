use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use gcore::{globset_to_ngraph, id_map, CellMap, Ctx, Elem, GlobSet, Obj, ShapeError, VGraph};
use monads::{
    check_algebra, strict_monad, AlgebraViolation, Composite, IdentityMonad, Lift, Monad, MonadMorphism, MonadRef,
};
use serde::{Deserialize, Serialize};

use crate::error::OpweakError;
use crate::model::{concat, path_object, points, LevelMap, Pi, Space, SpaceModel};
use crate::operad::FinOperad;
use crate::vp::{split_cell, VpFree};

/// Deepest supported Trimble level.
pub const MAX_TRIMBLE: usize = 2;

/// What level 0 takes from a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Points.
    Incoherent,
    /// Path components. Higher levels still use points as objects, so
    /// truncation no longer matches the level below.
    Coherent,
}

/// One level of the tower: the monad `iT_k` on k-graphs and the operad
/// weighting its top composition.
#[derive(Clone)]
pub struct TrimbleLevel {
    pub level: usize,
    pub monad: MonadRef,
    pub operad: Option<FinOperad>,
    pub mode: Mode,
    pub model: Arc<dyn SpaceModel>,
}

impl TrimbleLevel {
    /// The fundamental k-graph of a space.
    pub fn fundamental(&self, space: &Space, bound: usize) -> Result<Obj, OpweakError> {
        fundamental(self.model.as_ref(), self.mode, space, self.level, bound)
    }
}

/// `T ↦ vp(P) ∘ T_*` with `P` the seed operad one level below the result.
pub fn dm_step(t: MonadRef, seed: &FinOperad) -> Result<Composite, OpweakError> {
    let vp: MonadRef = Arc::new(VpFree::new(seed.at_level(t.level())));
    Ok(Composite::new(vp, t)?)
}

/// Levels `0..=n`. Every level's operad is the seed seen in the base one
/// level down.
pub fn trimble_tower(
    model: Arc<dyn SpaceModel>,
    seed: &FinOperad,
    n: usize,
    mode: Mode,
) -> Result<Vec<TrimbleLevel>, OpweakError> {
    if n > MAX_TRIMBLE {
        return Err(OpweakError::UnsupportedDepth {
            requested: n,
            max: MAX_TRIMBLE,
        });
    }
    let mut out = vec![TrimbleLevel {
        level: 0,
        monad: Arc::new(IdentityMonad { level: 0 }),
        operad: None,
        mode,
        model: model.clone(),
    }];
    for k in 1..=n {
        let prev = out[k - 1].monad.clone();
        out.push(TrimbleLevel {
            level: k,
            monad: Arc::new(dm_step(prev, seed)?.named(format!("iT{k}"))),
            operad: Some(seed.at_level(k - 1)),
            mode,
            model: model.clone(),
        });
    }
    Ok(out)
}

/// Points (or components) at level 0, then points as objects and the
/// fundamental (n − 1)-graphs of path objects as homs.
pub fn fundamental(m: &dyn SpaceModel, mode: Mode, space: &Space, n: usize, bound: usize) -> Result<Obj, OpweakError> {
    if n == 0 {
        return Ok(Obj::Set(match mode {
            Mode::Incoherent => points(space),
            Mode::Coherent => Pi::Components.elements(m, space),
        }));
    }
    let objects = points(space);
    let mut homs = BTreeMap::new();
    for x in &objects {
        for y in &objects {
            let h = fundamental(m, mode, &path_object(m, space, x, y, bound)?, n - 1, bound)?;
            if !h.is_empty() {
                homs.insert((x.clone(), y.clone()), h);
            }
        }
    }
    Ok(Obj::Graph(Box::new(VGraph::new(n - 1, objects, homs)?)))
}

/// The action of `iT_1` on a fundamental 1-graph: concatenate, then take
/// the class in coherent mode.
pub fn fundamental_action<'a>(m: &'a dyn SpaceModel, mode: Mode, space: &'a Space) -> impl CellMap + 'a {
    move |ctx: &Ctx, cell: &Elem| -> Result<Elem, ShapeError> {
        if ctx.is_empty() {
            return Ok(cell.clone());
        }
        let fail = |e: OpweakError| ShapeError::new(e.to_string(), cell);
        let (path, _, entries) = split_cell(cell)?;
        let r = concat(m, space, &path[0], entries).map_err(fail)?;
        match mode {
            Mode::Incoherent => Ok(r),
            Mode::Coherent => {
                let (a, b) = (&path[0], &path[path.len() - 1]);
                let h = path_object(m, space, a, b, r.grade()).map_err(fail)?;
                Pi::Components
                    .classes(m, &h)
                    .get(&r)
                    .cloned()
                    .ok_or_else(|| ShapeError::new("a point of the path object", &r))
            }
        }
    }
}

/// Checks the level-1 fundamental graph is an `iT_1`-algebra.
pub fn check_fundamental_algebra(
    level: &TrimbleLevel,
    space: &Space,
    bound: usize,
) -> Result<Result<(), AlgebraViolation>, OpweakError> {
    if level.level != 1 {
        return Err(OpweakError::UnsupportedDepth {
            requested: level.level,
            max: 1,
        });
    }
    let carrier = level.fundamental(space, bound)?;
    let action = fundamental_action(level.model.as_ref(), level.mode, space);
    Ok(check_algebra(level.monad.as_ref(), &carrier, &action, bound)?)
}

/// `(U_k, γ_k) : iT_k → iT_{k−1}` with identity components.
pub fn truncation(levels: &[TrimbleLevel], k: usize) -> Result<MonadMorphism, OpweakError> {
    if k == 0 || k >= levels.len() {
        return Err(OpweakError::UnsupportedDepth {
            requested: k,
            max: levels.len().saturating_sub(1),
        });
    }
    Ok(MonadMorphism::new(
        levels[k].monad.clone(),
        levels[k - 1].monad.clone(),
        Box::new(id_map),
    ))
}

/// Comparison of `iT_n` with the strict `T_n` after dropping operation
/// labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictReport {
    pub n: usize,
    pub bound: usize,
    pub cells: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn strip(_: &Ctx, e: &Elem) -> Result<Elem, ShapeError> {
    Ok(e.strip_ops())
}

fn strip_ctx(ctx: &Ctx) -> Vec<(Elem, Elem)> {
    ctx.iter().map(|(a, b)| (a.strip_ops(), b.strip_ops())).collect()
}

/// Cells, units and multiplications of `iT_n` and `T_n` at `x` agree once
/// operation labels are dropped.
pub fn trimble_strict_check(levels: &[TrimbleLevel], n: usize, x: &Obj, bound: usize) -> Result<StrictReport, OpweakError> {
    let it = levels
        .get(n)
        .ok_or(OpweakError::UnsupportedDepth {
            requested: n,
            max: levels.len().saturating_sub(1),
        })?
        .monad
        .clone();
    let t = strict_monad(n)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    let itx = it.apply(x, bound)?;
    let tx = t.apply(x, bound)?;
    if let Err(e) = gcore::check_cell_bijection(&strip, &itx, &tx) {
        failures.push(format!("cells: {e}"));
    }
    let ititx = it.apply(&itx, bound)?;
    if let Err(e) = gcore::check_cell_bijection(&strip, &ititx, &t.apply(&tx, bound)?) {
        failures.push(format!("cells of the square: {e}"));
    }
    for cell in x.cells() {
        checked += 1;
        let lhs = it.unit(&cell.ctx, &cell.elem).map(|e| e.strip_ops());
        let rhs = t.unit(&cell.ctx, &cell.elem);
        if lhs != rhs {
            failures.push(format!("unit at {}: {lhs:?} against {rhs:?}", cell.elem));
        }
    }
    for cell in ititx.cells() {
        checked += 1;
        let lhs = it.mult(&cell.ctx, &cell.elem).map(|e| e.strip_ops());
        let rhs = t.mult(&strip_ctx(&cell.ctx), &cell.elem.strip_ops());
        if lhs != rhs {
            failures.push(format!("multiplication at {}: {lhs:?} against {rhs:?}", cell.elem));
        }
    }
    Ok(StrictReport {
        n,
        bound,
        cells: itx.cells().len(),
        checked,
        failures,
    })
}

/// `P_0, …, P_{n−1}` on n-graphs: `P_k` composes along bounding k-cells and
/// is the k-fold lift of the free weighted-category monad.
pub fn pk_monads(seed: &FinOperad, n: usize) -> Result<Vec<MonadRef>, OpweakError> {
    if n > MAX_TRIMBLE {
        return Err(OpweakError::UnsupportedDepth {
            requested: n,
            max: MAX_TRIMBLE,
        });
    }
    Ok((0..n)
        .map(|k| {
            let mut m: MonadRef = Arc::new(VpFree::new(seed.at_level(n - 1 - k)));
            for _ in 0..k {
                m = Arc::new(Lift::new(m));
            }
            m
        })
        .collect())
}

/// Top-dimensional cells of `iT_n X` against those of `P_0 ⋯ P_{n−1} X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositeReport {
    pub n: usize,
    pub bound: usize,
    pub tower_cells: usize,
    pub composite_cells: usize,
    pub agree: bool,
    /// A cell on one side only.
    pub witness: Option<String>,
}

fn top_cells(x: &Obj, n: usize) -> BTreeSet<Elem> {
    x.cells()
        .into_iter()
        .filter(|c| c.depth() == n)
        .map(|c| {
            let ctx: Vec<String> = c.ctx.iter().map(|(a, b)| format!("{a}→{b}")).collect();
            Elem::Tuple(vec![Elem::atom(ctx.join(" / ")), c.elem])
        })
        .collect()
}

/// Builds both sides on scoped threads and compares their n-cells.
pub fn composite_check(seed: &FinOperad, x: &GlobSet, n: usize, bound: usize) -> Result<CompositeReport, OpweakError> {
    if n > MAX_TRIMBLE {
        return Err(OpweakError::UnsupportedDepth {
            requested: n,
            max: MAX_TRIMBLE,
        });
    }
    let input = globset_to_ngraph(&x.truncate(n)?)?;
    let tower = trimble_tower(Arc::new(crate::model::DiscreteModel), seed, n, Mode::Incoherent)?;
    let it = tower[n].monad.clone();
    let ps = pk_monads(seed, n)?;
    let (lhs, rhs) = std::thread::scope(|s| {
        let left = s.spawn(|| it.apply(&input, bound));
        let right = s.spawn(|| {
            let mut cur = input.clone();
            for p in ps.iter().rev() {
                cur = monads::restrict_homs(&p.apply(&cur, bound)?, bound);
            }
            Ok::<_, monads::MonadError>(cur)
        });
        (left.join().expect("tower side"), right.join().expect("composite side"))
    });
    let (lhs, rhs) = (top_cells(&lhs?, n), top_cells(&rhs?, n));
    let witness = lhs.symmetric_difference(&rhs).next().map(Elem::to_string);
    Ok(CompositeReport {
        n,
        bound,
        tower_cells: lhs.len(),
        composite_cells: rhs.len(),
        agree: witness.is_none(),
        witness,
    })
}

/// Outcome of comparing one step from the terminal triple with level 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub sets: usize,
    pub spaces: usize,
    pub round_trips: bool,
    pub monad_matches: bool,
    pub level_map_matches: bool,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.round_trips && self.monad_matches && self.level_map_matches
    }
}

/// A graph enriched in the one-object category: every hom is that object,
/// written as the one-element set.
fn terminal_graph(objects: &[Elem]) -> Obj {
    let point = Obj::Set(vec![Elem::unit()]);
    let homs = objects
        .iter()
        .flat_map(|a| objects.iter().map(move |b| (a.clone(), b.clone())))
        .map(|k| (k, point.clone()))
        .collect();
    Obj::Graph(Box::new(VGraph::new(0, objects.to_vec(), homs).expect("homs on listed objects")))
}

fn objects_of(g: &Obj) -> Vec<Elem> {
    g.top().to_vec()
}

/// Checks that one step from the terminal triple `(1, 1, !)` is isomorphic
/// to level 0 of the tower: graphs enriched in the terminal category are
/// their object sets, the new monad is the identity there and the new level
/// map is points.
pub fn terminal_triple_check(
    model: Arc<dyn SpaceModel>,
    seed: &FinOperad,
    sets: &[Vec<Elem>],
    spaces: &[Space],
    bound: usize,
) -> Result<TripleReport, OpweakError> {
    let level0 = trimble_tower(model.clone(), seed, 0, Mode::Incoherent)?.remove(0);
    let t_plus = dm_step(Arc::new(IdentityMonad { level: 0 }), seed)?;
    let mut round_trips = true;
    let mut monad_matches = true;
    for s in sets {
        let g = terminal_graph(s);
        round_trips &= objects_of(&g) == *s && terminal_graph(&objects_of(&g)) == g;
        // in the terminal category every hom collapses to its one object
        let tg = terminal_graph(&objects_of(&t_plus.apply(&g, bound)?));
        let direct = level0.monad.apply(&Obj::Set(s.clone()), bound)?;
        monad_matches &= objects_of(&tg) == direct.top() && tg == g;
        monad_matches &= s.iter().all(|x| t_plus.unit(&[], x).as_ref() == Ok(x));
    }
    let mut level_map_matches = true;
    for x in spaces {
        let plus = terminal_graph(&points(x));
        level_map_matches &= Obj::Set(objects_of(&plus)) == level0.fundamental(x, bound)?;
    }
    Ok(TripleReport {
        sets: sets.len(),
        spaces: spaces.len(),
        round_trips,
        monad_matches,
        level_map_matches,
    })
}
