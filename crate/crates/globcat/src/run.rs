use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use blcoll::{
    check_collection, check_contraction, check_incoherent_contraction, random_collection,
    saturated_collection, tautological_lift, truncate_collection, Collection, Lift,
};
use coalgebra::{
    adamek_chain, free_monoid_functor, identity_functor, lambek_probe, unfold, word_coalgebra,
    word_functor, word_letters, EndofunctorSpec, FunctorDescriptor,
};
use gcore::random::{random_globset, random_graph};
use gcore::{globset_to_ngraph, Elem, GlobSet, Obj};
use monads::{
    enumerate_tn_cells, monad_law_report, pasting_oracle, strict_monad, FreeCategory, Monad, MonadRef,
    MAX_TOWER,
};
use opweak::{
    composite_check, fundamental, trimble_strict_check, trimble_tower, DiscreteModel, FiniteGraphModel,
    FinOperad, Mode, OperadSpec, Space, SpaceModel, VpFree, MAX_TRIMBLE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::cli::{
    Command, FunctorArgs, FunctorChoice, GenKind, Kind, ModeChoice, ModelChoice, MonadChoice,
    OperadArgs, RunConfig, TnArgs,
};
use crate::error::CliError;

/// Relative inputs that are missing are looked up here as well.
pub const FIXTURE_DIR_VAR: &str = "GLOBCAT_FIXTURES";

fn resolve(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
            let alt = Path::new(&dir).join(path);
            if alt.exists() {
                return alt;
            }
        }
    }
    path.to_path_buf()
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let path = resolve(path);
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_globset(path: &Path) -> Result<GlobSet, CliError> {
    let g: GlobSet = read_json(path)?;
    g.validate()
        .map_err(|v| CliError::Domain(json!({"ok": false, "violation": v})))?;
    Ok(g)
}

fn read_operad(path: &Path) -> Result<FinOperad, CliError> {
    let spec: OperadSpec = read_json(path)?;
    FinOperad::from_spec(&spec).map_err(|e| CliError::Parse(e.to_string()))
}

fn operad(args: &OperadArgs, bound: usize) -> Result<FinOperad, CliError> {
    let cap = args.cap.unwrap_or(bound.max(1));
    let sel = args.seed_operad.as_str();
    let op = match sel {
        "terminal" => FinOperad::terminal(cap),
        "associative" => FinOperad::associative(cap),
        _ => match sel.strip_prefix("cyclic:") {
            Some(m) => {
                let m: usize = m
                    .parse()
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| CliError::Parse(format!("bad cyclic order in `{sel}`")))?;
                FinOperad::cyclic(m, cap, false)
            }
            None => read_operad(Path::new(sel))?,
        },
    };
    op.check_laws()
        .map_err(|v| CliError::Domain(json!({"ok": false, "operad_violation": v})))?;
    Ok(op)
}

fn functor(args: &FunctorArgs) -> Result<EndofunctorSpec, CliError> {
    if let Some(p) = &args.descriptor {
        let d: FunctorDescriptor = read_json(p)?;
        return Ok(d.build());
    }
    Ok(match args.functor {
        FunctorChoice::Identity => identity_functor(),
        FunctorChoice::Word => word_functor(&args.alphabet),
        FunctorChoice::FreeMonoid => free_monoid_functor(args.grade),
    })
}

fn depth_check(requested: usize, max: usize) -> Result<(), CliError> {
    if requested > max {
        return Err(CliError::UnsupportedDepth { requested, max });
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ngraph(g: &GlobSet) -> Result<Obj, CliError> {
    Ok(globset_to_ngraph(g)?)
}

/// Cells of an n-graph as `{"ctx": [[a, b], …], "cell": …}`, in order.
fn cell_list(x: &Obj) -> Vec<Value> {
    x.cells()
        .into_iter()
        .map(|c| {
            let ctx: Vec<[String; 2]> = c.ctx.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
            json!({"ctx": ctx, "cell": c.elem.to_string()})
        })
        .collect()
}

/// Runs one command and returns the JSON it prints.
pub fn run(cfg: &RunConfig) -> Result<Value, CliError> {
    match &cfg.command {
        Command::Validate { input, kind } => validate(input, *kind),
        Command::Truncate { input, dim, kind } => truncate(input, *dim, *kind),
        Command::FreeCat { input, bound } => {
            let g = read_globset(input)?;
            if g.n() == 0 {
                return Err(CliError::domain("free categories need a globular set of dimension at least 1"));
            }
            let fx = FreeCategory::new(g.n()).apply(&ngraph(&g)?, *bound)?;
            Ok(json!({
                "level": g.n(),
                "bound": bound,
                "counts_by_depth": fx.counts_by_depth(),
                "cells": cell_list(&fx),
            }))
        }
        Command::TnCells(a) => tn_cells(a, false),
        Command::Oracle(a) => tn_cells(a, true),
        Command::Laws {
            monad,
            n,
            samples,
            seed,
            bound,
            operad: op,
        } => {
            let t: MonadRef = match monad {
                MonadChoice::Fc => {
                    if *n == 0 {
                        return Err(CliError::domain("free categories need n ≥ 1"));
                    }
                    Arc::new(FreeCategory::new(*n))
                }
                MonadChoice::Strict => strict_monad(*n)?,
                MonadChoice::Vp => {
                    if *n == 0 {
                        return Err(CliError::domain("weighted free categories need n ≥ 1"));
                    }
                    Arc::new(VpFree::new(operad(op, *bound)?.at_level(n - 1)))
                }
                MonadChoice::Trimble => {
                    depth_check(*n, MAX_TRIMBLE)?;
                    let seed_op = operad(op, *bound)?;
                    trimble_tower(Arc::new(DiscreteModel), &seed_op, *n, Mode::Incoherent)?
                        .pop()
                        .expect("tower is non-empty")
                        .monad
                }
            };
            let r = monad_law_report(t.as_ref(), *samples, *bound, *seed)?;
            let v = to_value(&r);
            if r.failures.is_empty() {
                Ok(v)
            } else {
                Err(CliError::Domain(v))
            }
        }
        Command::Adamek { functor: f, depth, probe } => {
            let f = functor(f)?;
            let chain = adamek_chain(&f, *depth)?;
            let mut out = json!({
                "functor": f.name(),
                "depth": depth,
                "stage_sizes": chain.stage_sizes(),
            });
            if *probe {
                let r = lambek_probe(&f, *depth)?;
                let ok = r.bijective;
                out["lambek"] = to_value(&r);
                if !ok {
                    return Err(CliError::Domain(out));
                }
            }
            Ok(out)
        }
        Command::Unfold {
            functor: f,
            map,
            start,
            depth,
        } => unfold_cmd(f, map, *start, *depth),
        Command::Trimble {
            model,
            mode,
            n,
            bound,
            input,
            operad: op,
        } => trimble(*model, *mode, *n, *bound, input, op),
        Command::CompositeCheck {
            n,
            bound,
            input,
            operad: op,
        } => {
            depth_check(*n, MAX_TRIMBLE)?;
            let x = match input {
                Some(p) => read_globset(p)?,
                None => GlobSet::terminal(*n),
            };
            if x.n() < *n {
                return Err(CliError::domain(format!("input has dimension {} < n = {n}", x.n())));
            }
            let r = composite_check(&operad(op, *bound)?, &x, *n, *bound)?;
            if r.agree {
                Ok(to_value(&r))
            } else {
                Err(CliError::Domain(to_value(&r)))
            }
        }
        Command::CollectionCheck {
            input,
            lift,
            m_max,
            incoherent,
        } => collection_check(input, lift.as_deref(), *m_max, *incoherent),
        Command::Gen {
            kind,
            seed,
            size,
            n,
            bound,
            input,
        } => gen(*kind, *seed, *size, *n, *bound, input.as_deref()),
    }
}

fn validate(input: &Path, kind: Kind) -> Result<Value, CliError> {
    match kind {
        Kind::Globset => {
            read_globset(input)?;
        }
        Kind::Collection => {
            let c: Collection = read_json(input)?;
            check_collection(&c).map_err(|v| CliError::Domain(json!({"ok": false, "violation": v})))?;
        }
        Kind::Operad => {
            let op = read_operad(input)?;
            op.check_laws()
                .map_err(|v| CliError::Domain(json!({"ok": false, "operad_violation": v})))?;
        }
        Kind::Lift => {
            let _: Lift = read_json(input)?;
        }
    }
    Ok(json!({"ok": true}))
}

fn truncate(input: &Path, dim: usize, kind: Kind) -> Result<Value, CliError> {
    match kind {
        Kind::Globset => {
            let g = read_globset(input)?;
            Ok(to_value(&g.truncate(dim)?))
        }
        Kind::Collection => {
            let c: Collection = read_json(input)?;
            check_collection(&c).map_err(|v| CliError::Domain(json!({"ok": false, "violation": v})))?;
            Ok(to_value(&truncate_collection(&c, dim)?))
        }
        Kind::Operad | Kind::Lift => Err(CliError::Parse("only globular sets and collections truncate".into())),
    }
}

fn tn_cells(a: &TnArgs, oracle: bool) -> Result<Value, CliError> {
    depth_check(a.n, MAX_TOWER)?;
    let x = match &a.input {
        Some(p) => read_globset(p)?,
        None => GlobSet::terminal(a.n),
    };
    if oracle {
        let count = pasting_oracle(a.n, &x, a.dim, a.bound)?;
        return Ok(json!({"count": count}));
    }
    let cells = enumerate_tn_cells(a.n, &x, a.dim, a.bound)?;
    let mut out = json!({"count": cells.len()});
    if a.cells {
        out["cells"] = to_value(&cells);
    }
    Ok(out)
}

fn unfold_cmd(f: &FunctorArgs, map: &str, start: usize, depth: usize) -> Result<Value, CliError> {
    if f.descriptor.is_some() || f.functor != FunctorChoice::Word {
        return Err(CliError::Parse("unfold reads word coalgebras only".into()));
    }
    let spec = word_functor(&f.alphabet);
    // the functor drops repeated letters; the coalgebra has one state per letter
    let mut alphabet: Vec<String> = Vec::new();
    for a in &f.alphabet {
        if !alphabet.contains(a) {
            alphabet.push(a.clone());
        }
    }
    let k = alphabet.len();
    if k == 0 {
        return Err(CliError::Parse("empty alphabet".into()));
    }
    let next: Vec<usize> = match map {
        "swap" => {
            if k != 2 {
                return Err(CliError::domain("swap needs exactly two letters"));
            }
            vec![1, 0]
        }
        "shift" => (0..k).map(|i| (i + 1) % k).collect(),
        "stay" => (0..k).collect(),
        list => list
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Parse(format!("map `{list}`: {e}")))?,
    };
    if next.len() != k || next.iter().any(|&j| j >= k) {
        return Err(CliError::domain(format!("map must send each of {k} states to a state")));
    }
    if start >= k {
        return Err(CliError::domain(format!("start state {start} out of range")));
    }
    let c = word_coalgebra(&alphabet, &|i| next[i]);
    let w = unfold(&spec, &c, &Elem::atom(start.to_string()), depth)?;
    Ok(to_value(&word_letters(&w)?))
}

fn trimble(
    model: ModelChoice,
    mode: ModeChoice,
    n: usize,
    bound: usize,
    input: &Path,
    op: &OperadArgs,
) -> Result<Value, CliError> {
    depth_check(n, MAX_TRIMBLE)?;
    let seed = operad(op, bound)?;
    let x = read_globset(input)?;
    if x.n() > n {
        return Err(CliError::domain(format!("input has dimension {} > n = {n}", x.n())));
    }
    let m: Arc<dyn SpaceModel> = match model {
        ModelChoice::Discrete => Arc::new(DiscreteModel),
        ModelChoice::Graph => Arc::new(FiniteGraphModel),
    };
    let mode = match mode {
        ModeChoice::Incoherent => Mode::Incoherent,
        ModeChoice::Coherent => Mode::Coherent,
    };
    let levels = trimble_tower(m.clone(), &seed, n, mode)?;
    let obj = ngraph(&x.pad(n))?;
    let it = levels[n].monad.apply(&obj, bound)?;
    let strict = trimble_strict_check(&levels, n, &obj, bound)?;
    let mut out = json!({
        "n": n,
        "bound": bound,
        "model": m.name(),
        "mode": format!("{mode:?}").to_lowercase(),
        "levels": levels.iter().map(|l| l.monad.name()).collect::<Vec<_>>(),
        "counts_by_depth": it.counts_by_depth(),
        "strict": {"cells": strict.cells, "checked": strict.checked, "failures": strict.failures},
    });
    if x.n() == 1 {
        let space = Space::from_globset(&x).map_err(CliError::domain)?;
        let fx = fundamental(m.as_ref(), mode, &space, n, bound)?;
        out["fundamental_counts_by_depth"] = to_value(&fx.counts_by_depth());
    }
    Ok(out)
}

fn collection_check(
    input: &Path,
    lift: Option<&Path>,
    m_max: Option<usize>,
    incoherent: bool,
) -> Result<Value, CliError> {
    let c: Collection = read_json(input)?;
    check_collection(&c).map_err(|v| CliError::Domain(json!({"ok": false, "violation": v})))?;
    let Some(lp) = lift else {
        return Ok(json!({"ok": true, "n": c.n(), "bound": c.bound()}));
    };
    let l: Lift = read_json(lp)?;
    let r = if incoherent {
        check_incoherent_contraction(&c, &l)?
    } else {
        check_contraction(&c, &l, m_max.unwrap_or(c.n()))?
    };
    let out = json!({
        "ok": r.is_ok(),
        "n": c.n(),
        "bound": c.bound(),
        "m_range": [r.range.start, r.range.end],
        "obligations": r.obligations,
        "missing": r.missing,
    });
    if r.is_ok() {
        Ok(out)
    } else {
        Err(CliError::Domain(out))
    }
}

fn gen(
    kind: GenKind,
    seed: u64,
    size: usize,
    n: usize,
    bound: usize,
    input: Option<&Path>,
) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        GenKind::Globset => to_value(&random_globset(&mut rng, n, size)),
        GenKind::Graph => {
            if size == 0 {
                to_value(&GlobSet::empty(1))
            } else {
                to_value(&random_graph(&mut rng, size, size))
            }
        }
        GenKind::Operad => {
            let op = if size == 0 {
                // only the unit
                let u = Elem::atom("u");
                FinOperad::new(
                    1,
                    BTreeMap::from([(1, vec![u.clone()])]),
                    BTreeMap::from([((u.clone(), vec![u.clone()]), u.clone())]),
                    u,
                )?
            } else {
                let m = rng.gen_range(1..=3);
                FinOperad::cyclic(m, size, rng.gen_bool(0.5))
            };
            to_value(&op.to_spec())
        }
        GenKind::Collection => to_value(&random_collection(&mut rng, n, bound, size)),
        GenKind::Saturated => to_value(&saturated_collection(&mut rng, n, bound, size)),
        GenKind::Lift => {
            let p = input.ok_or_else(|| CliError::Parse("gen --kind lift needs --input".into()))?;
            let c: Collection = read_json(p)?;
            check_collection(&c).map_err(|v| CliError::Domain(json!({"ok": false, "violation": v})))?;
            to_value(&tautological_lift(&c))
        }
    })
}
