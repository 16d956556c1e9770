use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::random::random_graph;
use gcore::{
    globset_to_ngraph, CellMap, Ctx, Elem, EnrichmentBase, GlobSet, Obj, ShapeError, VGraph,
};
use monads::{
    check_algebra, check_coproduct_preservation, check_dist_axioms, check_dist_naturality,
    dist_law, fm_step, monad_law_report, strict_tower, FreeCategory, IdentityMonad, Law, Lift,
    Monad, MonadError, MonadMorphism, MonadRef, WriterMonad,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atoms(names: &[&str]) -> Vec<Elem> {
    names.iter().map(|s| Elem::atom(*s)).collect()
}

fn graph(objects: &[&str], edges: &[(&str, &str, &str)]) -> Obj {
    let mut homs: BTreeMap<(Elem, Elem), Vec<Elem>> = BTreeMap::new();
    for (e, a, b) in edges {
        homs.entry((Elem::atom(*a), Elem::atom(*b)))
            .or_default()
            .push(Elem::atom(*e));
    }
    let homs = homs.into_iter().map(|(k, v)| (k, Obj::Set(v))).collect();
    Obj::Graph(Box::new(VGraph::new(0, atoms(objects), homs).unwrap()))
}

fn hom_cells(x: &Obj, a: &str, b: &str) -> Vec<Elem> {
    x.as_graph()
        .unwrap()
        .hom(&Elem::atom(a), &Elem::atom(b))
        .map(|h| h.top().to_vec())
        .unwrap_or_default()
}

fn path(objs: &[&str], entries: &[&str]) -> Elem {
    Elem::inj(Elem::Tuple(atoms(objs)), Elem::Tuple(atoms(entries)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn fc_on_small_graphs() {
    let fc = FreeCategory::new(1);
    let bare = fc.apply(&graph(&["v"], &[]), 5).unwrap();
    assert_eq!(hom_cells(&bare, "v", "v"), vec![path(&["v"], &[])]);

    let lp = fc.apply(&graph(&["v"], &[("e", "v", "v")]), 3).unwrap();
    let mut got = hom_cells(&lp, "v", "v");
    got.sort();
    let mut expected = vec![
        path(&["v"], &[]),
        path(&["v", "v"], &["e"]),
        path(&["v", "v", "v"], &["e", "e"]),
        path(&["v", "v", "v", "v"], &["e", "e", "e"]),
    ];
    expected.sort();
    assert_eq!(got, expected);

    let arrow = fc
        .apply(&graph(&["u", "v"], &[("e", "u", "v")]), 5)
        .unwrap();
    assert_eq!(hom_cells(&arrow, "u", "v"), vec![path(&["u", "v"], &["e"])]);
    assert!(hom_cells(&arrow, "v", "u").is_empty());
}

#[test]
fn fc_unit_and_mult_on_the_loop() {
    let fc = FreeCategory::new(1);
    let vv = [(Elem::atom("v"), Elem::atom("v"))];
    assert_eq!(
        fc.unit(&vv, &Elem::atom("e")).unwrap(),
        path(&["v", "v"], &["e"])
    );
    let nested = Elem::inj(
        Elem::Tuple(atoms(&["v", "v", "v"])),
        Elem::Tuple(vec![
            path(&["v", "v"], &["e"]),
            path(&["v", "v", "v"], &["e", "e"]),
        ]),
    );
    assert_eq!(
        fc.mult(&vv, &nested).unwrap(),
        path(&["v", "v", "v", "v"], &["e", "e", "e"])
    );
}

/// Σ_{k ≤ bound} (M^k)_{ab} with `M` the matrix of hom sizes.
fn dp_path_count(g: &GlobSet, bound: usize) -> BTreeMap<(String, String), usize> {
    let objs: Vec<String> = g.cells(0).iter().map(|c| c.as_str().to_string()).collect();
    let idx: BTreeMap<&str, usize> = objs
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let n = objs.len();
    let mut m = vec![vec![0usize; n]; n];
    for e in g.cells(1) {
        let a = idx[g.src_map(1)[e].as_str()];
        let b = idx[g.tgt_map(1)[e].as_str()];
        m[a][b] += 1;
    }
    let mut power: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| usize::from(i == j)).collect())
        .collect();
    let mut total = power.clone();
    for _ in 0..bound {
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| power[i][k] * m[k][j]).sum())
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                total[i][j] += power[i][j];
            }
        }
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            out.insert((objs[i].clone(), objs[j].clone()), total[i][j]);
        }
    }
    out
}

#[test]
fn fc_cardinalities_match_path_counting() {
    let fc = FreeCategory::new(1);
    for seed in 0..15 {
        let g = random_graph(&mut rng(seed), 4, 6);
        let x = globset_to_ngraph(&g).unwrap();
        for bound in 0..=4 {
            let fx = fc.apply(&x, bound).unwrap();
            for ((a, b), count) in dp_path_count(&g, bound) {
                assert_eq!(
                    hom_cells(&fx, &a, &b).len(),
                    count,
                    "seed {seed} bound {bound}"
                );
            }
        }
    }
}

#[test]
fn fc_of_terminal_graph_has_one_path_per_length() {
    let t = EnrichmentBase { level: 1 }.terminal();
    let fx = FreeCategory::new(1).apply(&t, 5).unwrap();
    let h = fx
        .as_graph()
        .unwrap()
        .hom(&Elem::unit(), &Elem::unit())
        .unwrap();
    let mut lengths: Vec<usize> = h.top().iter().map(|e| e.grade()).collect();
    lengths.sort();
    assert_eq!(lengths, vec![0, 1, 2, 3, 4, 5]);
}

#[test]
fn fc_laws_on_random_graphs() {
    let report = monad_law_report(&FreeCategory::new(1), 20, 4, 7).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
    assert!(report.checked > 0);
}

#[test]
fn fc_laws_at_level_two() {
    let report = monad_law_report(&FreeCategory::new(2), 4, 2, 3).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
}

#[test]
fn identity_monad_passes() {
    let report = monad_law_report(&IdentityMonad { level: 1 }, 5, 3, 1).unwrap();
    assert!(report.passed());
}

/// `fc` whose multiplication drops the last edge of a non-empty result.
struct DropLast(FreeCategory);

impl Monad for DropLast {
    fn name(&self) -> String {
        "drop-last".into()
    }
    fn level(&self) -> usize {
        1
    }
    fn apply(&self, x: &Obj, bound: usize) -> Result<Obj, MonadError> {
        self.0.apply(x, bound)
    }
    fn unit(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self.0.unit(ctx, cell)
    }
    fn mult(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        let r = self.0.mult(ctx, cell)?;
        let Ok((p, e)) = r.as_inj() else { return Ok(r) };
        let (mut p, mut e) = (p.as_tuple()?.to_vec(), e.as_tuple()?.to_vec());
        if e.pop().is_some() {
            p.pop();
        }
        Ok(Elem::inj(Elem::Tuple(p), Elem::Tuple(e)))
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self.0.fmap(f, ctx, cell)
    }
    fn coprod_iso(&self, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        self.0.coprod_iso(ctx, cell)
    }
}

#[test]
fn wrong_mult_is_reported() {
    let report = monad_law_report(&DropLast(FreeCategory::new(1)), 5, 3, 7).unwrap();
    assert!(report
        .failures
        .iter()
        .any(|f| f.failure.law == Law::Associativity));
}

#[test]
fn reports_are_deterministic() {
    let a = monad_law_report(&DropLast(FreeCategory::new(1)), 6, 3, 11).unwrap();
    let b = monad_law_report(&DropLast(FreeCategory::new(1)), 6, 3, 11).unwrap();
    assert_eq!(a, b);
}

fn writer() -> MonadRef {
    Arc::new(WriterMonad::cyclic(2))
}

#[test]
fn lifted_identity_is_identity() {
    let lift = Lift::new(Arc::new(IdentityMonad { level: 0 }));
    for seed in 0..5 {
        let x = globset_to_ngraph(&random_graph(&mut rng(seed), 3, 4)).unwrap();
        assert_eq!(lift.apply(&x, 3).unwrap(), x);
    }
}

#[test]
fn lifted_writer_doubles_homs() {
    let x = graph(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")]);
    let tx = Lift::new(writer()).apply(&x, 3).unwrap();
    assert_eq!(hom_cells(&tx, "v", "v").len(), 6);
}

#[test]
fn lifted_writer_laws() {
    let report = monad_law_report(&Lift::new(writer()), 10, 3, 5).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
    let report = monad_law_report(writer().as_ref(), 10, 3, 5).unwrap();
    assert!(report.passed());
}

#[test]
fn dist_law_for_identity_is_identity() {
    for seed in 0..5 {
        let x = globset_to_ngraph(&random_graph(&mut rng(seed), 3, 4)).unwrap();
        let comp = dist_law(Arc::new(IdentityMonad { level: 0 }), &x, 3).unwrap();
        assert_eq!(comp.from, comp.to);
        for cell in comp.from.cells() {
            assert_eq!(comp.map(&cell.ctx, &cell.elem).unwrap(), cell.elem);
        }
    }
}

fn tagged(m: &str, x: Elem) -> Elem {
    Elem::Tuple(vec![Elem::op(Elem::atom(m)), x])
}

#[test]
fn writer_dist_law_matches_hand_formula() {
    let x = graph(&["v"], &[("e", "v", "v")]);
    let comp = dist_law(writer(), &x, 2).unwrap();
    let mut seen = 0;
    for cell in comp.from.cells() {
        if cell.ctx.is_empty() {
            continue;
        }
        // (m, path·(e₁, …, e_k)) ↦ path·((m, e₁), …, (m, e_k))
        let v = cell.elem.as_tuple().unwrap();
        let Elem::Op(m) = &v[0] else { panic!() };
        let m = m.as_atom().unwrap();
        let (p, es) = v[1].as_inj().unwrap();
        let entries = es
            .as_tuple()
            .unwrap()
            .iter()
            .map(|e| tagged(m, e.clone()))
            .collect();
        let expected = Elem::inj(p.clone(), Elem::Tuple(entries));
        assert_eq!(comp.map(&cell.ctx, &cell.elem).unwrap(), expected);
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn dist_axioms_on_random_graphs() {
    for seed in 0..5 {
        let x = globset_to_ngraph(&random_graph(&mut rng(seed), 3, 4)).unwrap();
        for t in [writer(), Arc::new(IdentityMonad { level: 0 }) as MonadRef] {
            let check = check_dist_axioms(t, &x, 2).unwrap();
            assert!(check.passed(), "{:?}", check.failures.first());
        }
    }
}

#[test]
fn dist_axioms_one_level_up() {
    let t1 = strict_tower(1).unwrap().pop().unwrap();
    for seed in 0..3 {
        let x = monads::random_object(&mut rng(seed), 2);
        let check = check_dist_axioms(t1.clone(), &x, 2).unwrap();
        assert!(check.passed(), "{:?}", check.failures.first());
    }
}

#[test]
fn dist_law_is_natural() {
    for seed in 0..5 {
        let g = random_graph(&mut rng(seed), 3, 4);
        let x = globset_to_ngraph(&g).unwrap();
        // collapse onto the one-object, one-edge graph
        let mut h = BTreeMap::new();
        for c in x.cells() {
            let image = if c.ctx.is_empty() {
                Elem::atom("*")
            } else {
                Elem::atom("e")
            };
            h.insert(c.elem.clone(), image);
        }
        let check = check_dist_naturality(writer(), &x, &h, 2).unwrap();
        assert!(check.passed(), "{:?}", check.failures.first());
    }
}

/// `X ↦ X + 1`: adds a point, so it cannot preserve coproducts.
struct Maybe;

impl Monad for Maybe {
    fn name(&self) -> String {
        "maybe".into()
    }
    fn level(&self) -> usize {
        0
    }
    fn apply(&self, x: &Obj, _: usize) -> Result<Obj, MonadError> {
        let mut v = x.top().to_vec();
        v.push(Elem::atom("⊥"));
        Ok(Obj::Set(v))
    }
    fn unit(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(cell.clone())
    }
    fn mult(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        Ok(cell.clone())
    }
    fn fmap(&self, f: &dyn CellMap, ctx: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if cell == &Elem::atom("⊥") {
            Ok(cell.clone())
        } else {
            f.map(ctx, cell)
        }
    }
    fn coprod_iso(&self, _: &Ctx, cell: &Elem) -> Result<Elem, ShapeError> {
        if cell == &Elem::atom("⊥") {
            Err(ShapeError::new("cell of a summand", cell))
        } else {
            Ok(cell.clone())
        }
    }
}

#[test]
fn coproduct_failure_is_reported() {
    let x = graph(&["v"], &[("e", "v", "v")]);
    assert!(matches!(
        dist_law(Arc::new(Maybe), &x, 2),
        Err(MonadError::CoproductPreservation { .. })
    ));
    let ys = [(Elem::atom("p"), Obj::Set(atoms(&["a"])))];
    assert!(check_coproduct_preservation(&Maybe, &ys, 2).is_err());
    assert!(check_coproduct_preservation(writer().as_ref(), &ys, 2).is_ok());
}

#[test]
fn first_step_is_fc() {
    let step = fm_step(Arc::new(IdentityMonad { level: 0 })).unwrap();
    let fc = FreeCategory::new(1);
    for seed in 0..5 {
        let x = globset_to_ngraph(&random_graph(&mut rng(seed), 3, 4)).unwrap();
        let a = step.apply(&x, 3).unwrap();
        assert_eq!(a, fc.apply(&x, 3).unwrap());
        let ffx = fc.apply(&a, 3).unwrap();
        for cell in ffx.cells() {
            assert_eq!(
                step.mult(&cell.ctx, &cell.elem),
                fc.mult(&cell.ctx, &cell.elem)
            );
        }
        for cell in x.cells() {
            assert_eq!(
                step.unit(&cell.ctx, &cell.elem),
                fc.unit(&cell.ctx, &cell.elem)
            );
        }
    }
}

#[test]
fn step_on_terminal_base_stays_terminal_like() {
    let t = EnrichmentBase { level: 1 }.terminal();
    let step = fm_step(Arc::new(IdentityMonad { level: 0 })).unwrap();
    let tx = step.apply(&t, 0).unwrap();
    assert_eq!(tx.counts_by_depth(), vec![1, 1]);
}

#[test]
fn composite_laws() {
    let step = fm_step(writer()).unwrap();
    let report = monad_law_report(&step, 5, 2, 9).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
    let t2 = strict_tower(2).unwrap().pop().unwrap();
    let report = monad_law_report(t2.as_ref(), 3, 2, 9).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
}

#[test]
fn tower_levels_and_cap() {
    let tower = strict_tower(3).unwrap();
    assert_eq!(
        tower.iter().map(|t| t.level()).collect::<Vec<_>>(),
        vec![0, 1, 2, 3]
    );
    assert!(matches!(
        strict_tower(4),
        Err(MonadError::UnsupportedDepth {
            requested: 4,
            max: 3
        })
    ));
}

#[test]
fn free_monoid_on_one_generator() {
    let t1 = strict_tower(1).unwrap().pop().unwrap();
    let tx = t1.apply(&graph(&["v"], &[("e", "v", "v")]), 3).unwrap();
    assert_eq!(hom_cells(&tx, "v", "v").len(), 4);
}

#[test]
fn truncations_are_weak() {
    for n in 1..=3 {
        let mut gamma = MonadMorphism::truncation(n).unwrap();
        for seed in 0..3 {
            let x = monads::random_object(&mut rng(seed), n);
            let r = gamma.check(&x, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(gamma.is_weak());
    }
}

#[test]
fn free_and_terminal_algebras() {
    let fc = FreeCategory::new(1);
    let x = globset_to_ngraph(&random_graph(&mut rng(2), 3, 3)).unwrap();
    let fx = fc.apply(&x, 3).unwrap();
    let mult = |c: &Ctx, e: &Elem| fc.mult(c, e);
    check_algebra(&fc, &fx, &mult, 3).unwrap().unwrap();

    let t = EnrichmentBase { level: 1 }.terminal();
    let collapse = |_: &Ctx, _: &Elem| Ok(Elem::unit());
    assert!(check_algebra(&fc, &t, &collapse, 3).unwrap().is_ok());
}

#[test]
fn monoid_action_and_its_mutation() {
    // Z/3 as a one-object category: paths of "1"-loops act by summing
    let fc = FreeCategory::new(1);
    let carrier = graph(&["v"], &[("0", "v", "v"), ("1", "v", "v"), ("2", "v", "v")]);
    let sum = |c: &Ctx, e: &Elem| -> Result<Elem, ShapeError> {
        if c.is_empty() {
            return Ok(e.clone());
        }
        let (_, es) = e.as_inj()?;
        let mut s = 0;
        for x in es.as_tuple()? {
            s += x
                .as_atom()?
                .parse::<usize>()
                .map_err(|_| ShapeError::new("digit", x))?;
        }
        Ok(Elem::atom((s % 3).to_string()))
    };
    assert!(check_algebra(&fc, &carrier, &sum, 3).unwrap().is_ok());
    let target = path(&["v", "v", "v"], &["1", "1"]);
    let mutated = |c: &Ctx, e: &Elem| {
        if e == &target {
            Ok(Elem::atom("0"))
        } else {
            sum(c, e)
        }
    };
    let v = check_algebra(&fc, &carrier, &mutated, 3)
        .unwrap()
        .unwrap_err();
    assert!(v
        .0
        .iter()
        .any(|f| f.cell.contains(&target.to_string()) && f.law == Law::AlgebraMult));
}
