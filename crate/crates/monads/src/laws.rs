use std::collections::BTreeSet;
use std::fmt;

use gcore::random::{random_globset, random_graph};
use gcore::{globset_to_ngraph, map_ctx, Cell, CellMap, Ctx, Elem, Obj, ShapeError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::composite::chain;
use crate::error::MonadError;
use crate::monad::Monad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    UnitTarget,
    MultTarget,
    LeftUnit,
    RightUnit,
    Associativity,
    DistTarget,
    DistInnerUnit,
    DistOuterUnit,
    DistInnerMult,
    DistOuterMult,
    Naturality,
    AlgebraTarget,
    AlgebraUnit,
    AlgebraMult,
}

/// A law that failed at one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: Law,
    pub cell: String,
    pub detail: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {}: {}", self.law, self.cell, self.detail)
    }
}

pub(crate) fn show(cell: &Cell) -> String {
    let ctx: Vec<String> = cell.ctx.iter().map(|(a, b)| format!("{a}→{b}")).collect();
    if ctx.is_empty() {
        cell.elem.to_string()
    } else {
        format!("{} in {}", cell.elem, ctx.join(" / "))
    }
}

/// Collects law failures and counts the checks made.
#[derive(Default)]
pub(crate) struct Ledger {
    pub checked: usize,
    pub failures: Vec<LawFailure>,
}

impl Ledger {
    pub fn equal(
        &mut self,
        law: Law,
        cell: &Cell,
        lhs: Result<Elem, ShapeError>,
        rhs: Result<Elem, ShapeError>,
    ) {
        self.checked += 1;
        let detail = match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => return,
            (Ok(l), Ok(r)) => format!("{l} ≠ {r}"),
            (Err(e), _) | (_, Err(e)) => e.to_string(),
        };
        self.failures.push(LawFailure {
            law,
            cell: show(cell),
            detail,
        });
    }

    /// `f` sends `cell` to a cell of `target`.
    pub fn lands_in(&mut self, law: Law, f: &dyn CellMap, cell: &Cell, target: &BTreeSet<Cell>) {
        self.checked += 1;
        let image = f.map(&cell.ctx, &cell.elem).and_then(|elem| {
            Ok(Cell {
                ctx: map_ctx(f, &cell.ctx)?,
                elem,
            })
        });
        let detail = match image {
            Ok(c) if target.contains(&c) => return,
            Ok(c) => format!("image {} is not a cell of the target", show(&c)),
            Err(e) => e.to_string(),
        };
        self.failures.push(LawFailure {
            law,
            cell: show(cell),
            detail,
        });
    }
}

/// Outcome of the law checks on one object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub checked: usize,
    pub failures: Vec<LawFailure>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Unit, multiplication targets and the three monad laws, elementwise on the
/// grade-`bound` fragments of `TX`, `TTX` and `TTTX`.
pub fn check_laws(t: &dyn Monad, x: &Obj, bound: usize) -> Result<LawCheck, MonadError> {
    let tx = t.apply(x, bound)?;
    let ttx = t.apply(&tx, bound)?;
    let tttx = t.apply(&ttx, bound)?;
    let tx_cells = tx.cell_set();
    let unit = |c: &Ctx, e: &Elem| t.unit(c, e);
    let mult = |c: &Ctx, e: &Elem| t.mult(c, e);
    let t_unit = |c: &Ctx, e: &Elem| t.fmap(&unit, c, e);
    let t_mult = |c: &Ctx, e: &Elem| t.fmap(&mult, c, e);
    let mut ledger = Ledger::default();
    for cell in x.cells() {
        ledger.lands_in(Law::UnitTarget, &unit, &cell, &tx_cells);
    }
    for cell in tx.cells() {
        let (ctx, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::LeftUnit,
            &cell,
            chain(&[&unit, &mult], ctx, e),
            Ok(e.clone()),
        );
        ledger.equal(
            Law::RightUnit,
            &cell,
            chain(&[&t_unit, &mult], ctx, e),
            Ok(e.clone()),
        );
    }
    for cell in ttx.cells() {
        ledger.lands_in(Law::MultTarget, &mult, &cell, &tx_cells);
    }
    for cell in tttx.cells() {
        let (ctx, e) = (&cell.ctx, &cell.elem);
        ledger.equal(
            Law::Associativity,
            &cell,
            chain(&[&t_mult, &mult], ctx, e),
            chain(&[&mult, &mult], ctx, e),
        );
    }
    Ok(LawCheck {
        checked: ledger.checked,
        failures: ledger.failures,
    })
}

/// A failed algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraViolation(pub Vec<LawFailure>);

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.first() {
            Some(first) => write!(f, "{first} (and {} more)", self.0.len() - 1),
            None => write!(f, "no violation"),
        }
    }
}

/// Checks that `action : T(carrier) → carrier` is an algebra structure on
/// the grade-`bound` fragments.
pub fn check_algebra(
    t: &dyn Monad,
    carrier: &Obj,
    action: &dyn CellMap,
    bound: usize,
) -> Result<Result<(), AlgebraViolation>, MonadError> {
    let tx = t.apply(carrier, bound)?;
    let ttx = t.apply(&tx, bound)?;
    let own = carrier.cell_set();
    let unit = |c: &Ctx, e: &Elem| t.unit(c, e);
    let mult = |c: &Ctx, e: &Elem| t.mult(c, e);
    let t_action = |c: &Ctx, e: &Elem| t.fmap(action, c, e);
    let mut ledger = Ledger::default();
    for cell in tx.cells() {
        ledger.lands_in(Law::AlgebraTarget, action, &cell, &own);
    }
    for cell in carrier.cells() {
        ledger.equal(
            Law::AlgebraUnit,
            &cell,
            chain(&[&unit, action], &cell.ctx, &cell.elem),
            Ok(cell.elem.clone()),
        );
    }
    for cell in ttx.cells() {
        ledger.equal(
            Law::AlgebraMult,
            &cell,
            chain(&[&mult, action], &cell.ctx, &cell.elem),
            chain(&[&t_action, action], &cell.ctx, &cell.elem),
        );
    }
    Ok(if ledger.failures.is_empty() {
        Ok(())
    } else {
        Err(AlgebraViolation(ledger.failures))
    })
}

/// Law checks over seeded random objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadLawReport {
    pub monad: String,
    pub level: usize,
    pub seed: u64,
    pub samples: usize,
    pub bound: usize,
    pub checked: usize,
    pub failures: Vec<SampleFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleFailure {
    pub sample: usize,
    #[serde(flatten)]
    pub failure: LawFailure,
}

impl MonadLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random object of the given level: a set of at most 4 elements, a graph
/// with at most 4 objects and 5 edges, or a random globular set.
pub fn random_object<R: Rng>(rng: &mut R, level: usize) -> Obj {
    let g = match level {
        0 => random_globset(rng, 0, 4),
        1 => random_graph(rng, 4, 5),
        k => random_globset(rng, k, 2),
    };
    globset_to_ngraph(&g).expect("generated sets are valid")
}

/// Runs [`check_laws`] on `samples` seeded random objects. Samples run
/// concurrently; results are merged by sample index.
pub fn monad_law_report(
    t: &dyn Monad,
    samples: usize,
    bound: usize,
    seed: u64,
) -> Result<MonadLawReport, MonadError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects: Vec<Obj> = (0..samples)
        .map(|_| random_object(&mut rng, t.level()))
        .collect();
    let results: Vec<Result<LawCheck, MonadError>> = std::thread::scope(|s| {
        let handles: Vec<_> = objects
            .iter()
            .map(|x| s.spawn(move || check_laws(t, x, bound)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("law check panicked"))
            .collect()
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for (sample, r) in results.into_iter().enumerate() {
        let r = r?;
        checked += r.checked;
        failures.extend(
            r.failures
                .into_iter()
                .map(|failure| SampleFailure { sample, failure }),
        );
    }
    Ok(MonadLawReport {
        monad: t.name(),
        level: t.level(),
        seed,
        samples,
        bound,
        checked,
        failures,
    })
}
