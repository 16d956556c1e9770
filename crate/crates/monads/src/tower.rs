use std::sync::Arc;

use gcore::{check_cell_bijection, id_map, CellMap, Ctx, Elem, Obj};
use serde::Serialize;

use crate::composite::{chain, fm_step};
use crate::error::MonadError;
use crate::laws::{Law, LawFailure, Ledger};
use crate::monad::{IdentityMonad, MonadRef};

/// Deepest supported tower level.
pub const MAX_TOWER: usize = 3;

/// `T_0, …, T_n` with `T_0` the identity on sets and `T_{k+1} = fc ∘ (T_k)_*`.
pub fn strict_tower(n: usize) -> Result<Vec<MonadRef>, MonadError> {
    if n > MAX_TOWER {
        return Err(MonadError::UnsupportedDepth {
            requested: n,
            max: MAX_TOWER,
        });
    }
    let mut out: Vec<MonadRef> = vec![Arc::new(IdentityMonad { level: 0 })];
    for k in 1..=n {
        let prev = out[k - 1].clone();
        out.push(Arc::new(fm_step(prev)?.named(format!("T{k}"))));
    }
    Ok(out)
}

/// `T_n` alone.
pub fn strict_monad(n: usize) -> Result<MonadRef, MonadError> {
    Ok(strict_tower(n)?.pop().expect("tower is non-empty"))
}

/// A morphism of monads `(U, θ) : (level k, T) → (level k - 1, T')` whose
/// underlying functor `U` drops the top level of cells.
pub struct MonadMorphism {
    pub source: MonadRef,
    pub target: MonadRef,
    pub theta: Box<dyn CellMap + Send>,
    evaluated: usize,
    non_bijective: usize,
}

/// Result of evaluating a truncation morphism at one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub source: String,
    pub target: String,
    pub bijective: bool,
    pub bijection_failure: Option<String>,
    pub failures: Vec<LawFailure>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.failures.is_empty()
    }
}

impl MonadMorphism {
    /// A morphism from `source` at level k to `target` at level k - 1 with
    /// components `theta`.
    pub fn new(source: MonadRef, target: MonadRef, theta: Box<dyn CellMap + Send>) -> Self {
        MonadMorphism {
            source,
            target,
            theta,
            evaluated: 0,
            non_bijective: 0,
        }
    }

    /// `γ_n : U T_n → T_{n-1} U`, with identity components.
    pub fn truncation(n: usize) -> Result<Self, MonadError> {
        if n == 0 {
            return Err(MonadError::Level {
                expected: 1,
                found: 0,
            });
        }
        let tower = strict_tower(n)?;
        Ok(MonadMorphism::new(tower[n].clone(), tower[n - 1].clone(), Box::new(id_map)))
    }

    /// Every component evaluated so far was a bijection, and there was one.
    pub fn is_weak(&self) -> bool {
        self.evaluated > 0 && self.non_bijective == 0
    }

    /// Checks at `x` that `θ : U(TX) → T'(UX)` is a bijection and that
    /// `θ ∘ Uη = η'` and `θ ∘ Uμ = μ' ∘ T'θ ∘ θ` elementwise.
    pub fn check(&mut self, x: &Obj, bound: usize) -> Result<MorphismReport, MonadError> {
        let (t, t2) = (self.source.clone(), self.target.clone());
        let theta: &dyn CellMap = self.theta.as_ref();
        let tx = t.apply(x, bound)?;
        let ux = x.truncate_top()?;
        let t2_ux = t2.apply(&ux, bound)?;
        let bijection = check_cell_bijection(theta, &tx.truncate_top()?, &t2_ux);
        let bijective = bijection.is_ok();

        let unit = |c: &Ctx, e: &Elem| t.unit(c, e);
        let unit2 = |c: &Ctx, e: &Elem| t2.unit(c, e);
        let mult = |c: &Ctx, e: &Elem| t.mult(c, e);
        let mult2 = |c: &Ctx, e: &Elem| t2.mult(c, e);
        let t2_theta = |c: &Ctx, e: &Elem| t2.fmap(theta, c, e);
        let mut ledger = Ledger::default();
        for cell in ux.cells() {
            let (c, e) = (&cell.ctx, &cell.elem);
            ledger.equal(
                Law::UnitTarget,
                &cell,
                chain(&[&unit, theta], c, e),
                unit2(c, e),
            );
        }
        let ttx = t.apply(&tx, bound)?;
        for cell in ttx.truncate_top()?.cells() {
            let (c, e) = (&cell.ctx, &cell.elem);
            ledger.equal(
                Law::MultTarget,
                &cell,
                chain(&[&mult, theta], c, e),
                chain(&[theta, &t2_theta, &mult2], c, e),
            );
        }
        self.evaluated += 1;
        if !bijective {
            self.non_bijective += 1;
        }
        Ok(MorphismReport {
            source: t.name(),
            target: t2.name(),
            bijective,
            bijection_failure: bijection.err().map(|e| e.to_string()),
            failures: ledger.failures,
        })
    }
}
