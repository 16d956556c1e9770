use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::random::random_graph;
use gcore::{check_cell_bijection, globset_to_ngraph, Ctx, Elem, Obj, ShapeError, VGraph};
use monads::{
    check_dist_axioms_with, check_laws, random_object, strict_monad, FreeCategory, IdentityMonad, Monad,
    MonadError, MonadRef,
};
use opweak::{vp_free_hom, FinOperad, OperadSpec, VpFree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random(seed: u64) -> Obj {
    globset_to_ngraph(&random_graph(&mut rng(seed), 4, 5)).unwrap()
}

fn one_object(loops: usize) -> Obj {
    let v = Elem::atom("v");
    let hom = Obj::Set((0..loops).map(|i| Elem::atom(format!("e{i}"))).collect());
    Obj::Graph(Box::new(VGraph::new(0, vec![v.clone()], BTreeMap::from([((v.clone(), v), hom)])).unwrap()))
}

fn strip(_: &Ctx, e: &Elem) -> Result<Elem, ShapeError> {
    Ok(e.strip_ops())
}

#[test]
fn terminal_operad_homs_biject_with_paths() {
    let vp = VpFree::new(FinOperad::terminal(3));
    let fc = FreeCategory::new(1);
    for seed in 0..5 {
        let a = random(seed);
        let lhs = vp.apply(&a, 3).unwrap();
        let rhs = fc.apply(&a, 3).unwrap();
        check_cell_bijection(&strip, &lhs, &rhs).unwrap();
        let g = a.as_graph().unwrap();
        for x in g.objects() {
            for y in g.objects() {
                let h = vp_free_hom(g, &FinOperad::terminal(3), x, y, 3).unwrap();
                let f = rhs.as_graph().unwrap().hom_or_initial(x, y).into_owned();
                check_cell_bijection(&strip, &h, &f).unwrap();
            }
        }
    }
}

#[test]
fn terminal_operad_structure_matches_fc() {
    let vp = VpFree::new(FinOperad::terminal(3));
    let fc = FreeCategory::new(1);
    for seed in 0..5 {
        let a = random(seed);
        for cell in a.cells() {
            let u = vp.unit(&cell.ctx, &cell.elem).unwrap();
            assert_eq!(u.strip_ops(), fc.unit(&cell.ctx, &cell.elem).unwrap());
        }
        let vv = vp.apply(&vp.apply(&a, 3).unwrap(), 3).unwrap();
        for cell in vv.cells() {
            let m = vp.mult(&cell.ctx, &cell.elem).unwrap();
            let ctx: Vec<_> = cell.ctx.iter().map(|(x, y)| (x.strip_ops(), y.strip_ops())).collect();
            assert_eq!(m.strip_ops(), fc.mult(&ctx, &cell.elem.strip_ops()).unwrap());
        }
    }
}

#[test]
fn no_constants_means_no_identities() {
    let p = FinOperad::cyclic(2, 3, false);
    let a = random(1);
    let g = a.as_graph().unwrap();
    let x = &g.objects()[0];
    let h = vp_free_hom(g, &p, x, x, 3).unwrap();
    let empty = Elem::Tuple(vec![x.clone()]);
    assert!(h.top().iter().all(|c| c.as_inj().unwrap().0 != &empty));
    let with = vp_free_hom(g, &FinOperad::cyclic(2, 3, true), x, x, 3).unwrap();
    assert_eq!(with.top().iter().filter(|c| c.as_inj().unwrap().0 == &empty).count(), 2);
}

#[test]
fn one_object_count() {
    let p = FinOperad::cyclic(3, 2, true);
    for loops in 0..4 {
        let a = one_object(loops);
        let g = a.as_graph().unwrap();
        let v = Elem::atom("v");
        let got = vp_free_hom(g, &p, &v, &v, 2).unwrap().top().len();
        // brute force over arity k: |P(k)| choices times loops^k entries
        let expected: usize = (0..=2).map(|k| p.labels(k).len() * loops.pow(k as u32)).sum();
        assert_eq!(got, expected, "loops = {loops}");
    }
}

#[test]
fn arity_cap_is_reported() {
    let p = FinOperad::terminal(2);
    let err = VpFree::new(p.clone()).apply(&one_object(1), 3).unwrap_err();
    assert!(matches!(err, MonadError::ArityCap { needed: 3, cap: 2 }));
    // with no loops no long path is needed
    assert!(VpFree::new(p).apply(&one_object(0), 5).is_ok());
}

#[test]
fn vp_monad_laws() {
    for (p, bound) in [
        (FinOperad::terminal(3), 3),
        (FinOperad::cyclic(2, 3, true), 2),
        (FinOperad::cyclic(3, 3, false), 2),
    ] {
        let vp = VpFree::new(p);
        for seed in 0..5 {
            let r = check_laws(&vp, &random(seed), bound).unwrap();
            assert!(r.passed(), "{:?}", r.failures.first());
        }
    }
}

#[test]
fn vp_distributes_over_lifts() {
    let p = FinOperad::cyclic(2, 3, true);
    let s: MonadRef = Arc::new(VpFree::new(p.clone()));
    let id: MonadRef = Arc::new(IdentityMonad { level: 0 });
    for seed in 0..3 {
        let r = check_dist_axioms_with(s.clone(), id.clone(), &random(seed), 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }
    let upper: MonadRef = Arc::new(VpFree::new(p.at_level(1)));
    let inners: Vec<MonadRef> = vec![strict_monad(1).unwrap(), s];
    for t in inners {
        for seed in 0..3 {
            let z = random_object(&mut rng(40 + seed), 2);
            let r = check_dist_axioms_with(upper.clone(), t.clone(), &z, 2).unwrap();
            assert!(r.passed(), "{}: {:?}", t.name(), r.failures.first());
        }
    }
}

#[test]
fn operad_laws() {
    for p in [
        FinOperad::terminal(3),
        FinOperad::associative(3),
        FinOperad::cyclic(3, 3, true),
        FinOperad::cyclic(2, 3, false),
    ] {
        p.check_laws().unwrap();
    }
}

#[test]
fn mutated_composite_is_a_violation() {
    let p = FinOperad::cyclic(3, 3, true);
    let (key, r) = p.composites().nth(17).map(|(k, r)| (k.clone(), r.clone())).unwrap();
    let k = p.arity_of(&r).unwrap();
    let other = p.labels(k).iter().find(|l| **l != r).unwrap().clone();
    let bad = p.with_composite(key.0, key.1, other);
    let v = bad.check_laws().unwrap_err();
    assert!(!v.arities.is_empty());
    assert!(!v.elements.is_empty());
}

#[test]
fn operad_json() {
    let p = FinOperad::associative(2);
    let spec = p.to_spec();
    let text = serde_json::to_string(&spec).unwrap();
    let back = FinOperad::from_spec(&serde_json::from_str::<OperadSpec>(&text).unwrap()).unwrap();
    assert_eq!(back, p);
    assert!(serde_json::from_str::<OperadSpec>(r#"{"cap":1,"ops":{},"comp":{},"unit":"u","x":1}"#).is_err());
    let missing: OperadSpec = serde_json::from_str(r#"{"cap":1,"ops":{"1":["u"]},"comp":{},"unit":"u"}"#).unwrap();
    let v = FinOperad::from_spec(&missing).unwrap().check_laws().unwrap_err();
    assert!(v.detail.contains("no composite"));
}

#[test]
fn terminal_operad_objects_are_terminal() {
    for level in 0..3 {
        let p = FinOperad::terminal(3).at_level(level);
        let t = gcore::EnrichmentBase { level }.terminal();
        for k in 0..=3 {
            assert_eq!(p.ops(k).counts_by_depth(), t.counts_by_depth());
        }
    }
}
