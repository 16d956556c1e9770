use std::collections::BTreeMap;

use blcoll::{
    check_contraction, check_incoherent_contraction, identity_collection, random_collection,
    saturated_collection, tautological_lift, truncate_collection, Collection, Lift, LiftFault,
    LiftKey,
};
use gcore::{CellId, GlobSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn key(m: usize, a: &str, b: &str, y: &str) -> LiftKey {
    LiftKey {
        m,
        a: a.into(),
        b: b.into(),
        y: y.into(),
    }
}

#[test]
fn identity_collection_is_contractible() {
    for n in 1..=3 {
        for bound in 0..=3 {
            let c = identity_collection(n, bound);
            let r = check_contraction(&c, &tautological_lift(&c), n).unwrap();
            assert!(r.is_ok(), "{:?}", r.missing);
            // only identical pairs have equal images, so there is one
            // obligation per cell of positive dimension
            let above: usize = (1..=n).map(|d| c.a().cells(d).len()).sum();
            assert_eq!(r.obligations, above);
        }
    }
}

#[test]
fn single_deletions_leave_one_hole() {
    for seed in 0..10u64 {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let bound = r.gen_range(2..=3);
        let c = identity_collection(n, bound);
        let lift = tautological_lift(&c);
        let top = c.a().cells(n);
        let x = top[r.gen_range(0..top.len())].clone();
        let cut = c.delete_top_cell(&x).unwrap();
        let boundary = c.a().src(n, &x).unwrap().to_string();

        let report = check_contraction(&cut, &lift, n).unwrap();
        assert_eq!(report.missing.len(), 1, "seed {seed}");
        let miss = &report.missing[0];
        assert_eq!(
            (miss.m, miss.a.as_str(), miss.b.as_str(), &miss.y),
            (n - 1, boundary.as_str(), boundary.as_str(), &x)
        );
        assert_eq!(miss.fault, LiftFault::NotACell { cell: x.clone() });

        let fresh = check_contraction(&cut, &tautological_lift(&cut), n).unwrap();
        assert_eq!(fresh.missing.len(), 1);
        assert_eq!(fresh.missing[0].fault, LiftFault::Undefined);
    }
}

fn with_duplicate(c: &Collection, x: &str, copy: &str) -> Collection {
    let a = c.a();
    let n = a.n();
    let mut cells = a.all_cells().to_vec();
    cells[n].push(copy.into());
    let mut src: Vec<BTreeMap<CellId, CellId>> = (1..=n).map(|d| a.src_map(d).clone()).collect();
    let mut tgt: Vec<BTreeMap<CellId, CellId>> = (1..=n).map(|d| a.tgt_map(d).clone()).collect();
    let x = CellId::from(x);
    src[n - 1].insert(copy.into(), a.src(n, &x).unwrap().clone());
    tgt[n - 1].insert(copy.into(), a.tgt(n, &x).unwrap().clone());
    let mut p = c.p().clone();
    p.insert(copy.into(), c.p()[&x].clone());
    Collection::new(GlobSet::from_parts(cells, src, tgt).unwrap(), p, c.bound())
}

#[test]
fn either_of_two_parallel_lifts_will_do() {
    let c = with_duplicate(&identity_collection(1, 2), "1:(())", "twin");
    let first = tautological_lift(&c);
    let k = key(0, "0:()", "0:()", "1:(())");
    assert_eq!(first.get(&k), Some(&CellId::from("1:(())")));
    let mut second = first.clone();
    second.0.insert(k, "twin".into());
    assert!(check_contraction(&c, &first, 1).unwrap().is_ok());
    assert!(check_contraction(&c, &second, 1).unwrap().is_ok());
}

#[test]
fn wrong_fillers_are_named() {
    let c = identity_collection(2, 2);
    let mut lift = tautological_lift(&c);
    let k = key(1, "1:(())", "1:(())", "2:((()))");
    lift.0.insert(k.clone(), "2:(())".into());
    let r = check_contraction(&c, &lift, 1).unwrap();
    assert_eq!(r.missing.len(), 1);
    assert_eq!(r.missing[0].fault, LiftFault::Image { found: "2:(())".into() });

    lift.0.insert(k.clone(), "2:(()())".into());
    let r = check_contraction(&c, &lift, 1).unwrap();
    assert_eq!(r.missing[0].fault, LiftFault::Source { found: "1:(()())".into() });
}

/// Identity below the top and `1..=4` parallel copies of every top diagram.
fn top_heavy(n: usize, bound: usize, seed: u64) -> Collection {
    let mut r = rng(seed);
    let mut c = identity_collection(n, bound);
    let top: Vec<CellId> = c.a().cells(n).to_vec();
    for x in &top {
        for i in 0..r.gen_range(0..4) {
            c = with_duplicate(&c, x.as_str(), &format!("{x}#{i}"));
        }
    }
    c
}

#[test]
fn top_dimension_multiplicity_is_unconstrained() {
    for seed in 0..5 {
        for n in 1..=2 {
            let c = top_heavy(n, 2, seed);
            let lift = tautological_lift(&c);
            assert!(check_incoherent_contraction(&c, &lift).unwrap().is_ok());
            // drop every cell over one top diagram
            let y = CellId::from(if n == 1 { "1:(()())" } else { "2:((()))" });
            let over: Vec<CellId> =
                c.a().cells(n).iter().filter(|x| c.p()[*x] == y).cloned().collect();
            let mut cut = c.clone();
            for x in &over {
                cut = cut.delete_top_cell(x).unwrap();
            }
            let r = check_incoherent_contraction(&cut, &tautological_lift(&cut)).unwrap();
            assert_eq!(r.missing.len(), 1);
            assert_eq!((r.missing[0].m, &r.missing[0].y), (n - 1, &y));
        }
    }
}

#[test]
fn dimension_zero_always_passes() {
    for seed in 0..5 {
        let c = random_collection(&mut rng(seed), 0, 3, 3);
        let r = check_incoherent_contraction(&c, &Lift::default()).unwrap();
        assert!(r.is_ok());
        assert_eq!(r.obligations, 0);
    }
}

fn thinned(lift: &Lift, seed: u64) -> Lift {
    let mut r = rng(seed);
    Lift(lift.0.iter().filter(|_| r.gen_bool(0.8)).map(|(k, v)| (k.clone(), v.clone())).collect())
}

#[test]
fn ranges_agree_on_bounded_data() {
    for seed in 0..8 {
        for n in 0..=2 {
            for c in [
                random_collection(&mut rng(seed), n, 2, 2),
                saturated_collection(&mut rng(seed), n, 2, 2),
            ] {
                let lift = thinned(&tautological_lift(&c), seed);
                let inc = check_incoherent_contraction(&c, &lift).unwrap();
                let full = check_contraction(&c, &lift, n).unwrap();
                let far = check_contraction(&c, &lift, n + 3).unwrap();
                assert_eq!(inc.missing, full.missing);
                assert_eq!(inc.missing, far.missing);
                assert_eq!(inc.obligations, far.obligations);
            }
        }
    }
}

#[test]
fn contraction_survives_truncation() {
    for seed in 0..6 {
        for n in 1..=2 {
            let c = saturated_collection(&mut rng(seed), n, 2, 2);
            let lift = tautological_lift(&c);
            assert!(check_contraction(&c, &lift, n).unwrap().is_ok());
            for m in 0..=n {
                let t = truncate_collection(&c, m).unwrap();
                assert!(check_incoherent_contraction(&t, &lift.restrict(m)).unwrap().is_ok());
            }
        }
    }
    for seed in 0..20 {
        let c = random_collection(&mut rng(100 + seed), 2, 2, 3);
        let lift = tautological_lift(&c);
        if check_contraction(&c, &lift, 2).unwrap().is_ok() {
            let t = truncate_collection(&c, 1).unwrap();
            assert!(check_incoherent_contraction(&t, &lift.restrict(1)).unwrap().is_ok());
        }
    }
}

#[test]
fn reports_are_repeatable() {
    let c = random_collection(&mut rng(9), 2, 3, 3);
    let lift = thinned(&tautological_lift(&c), 9);
    let one = check_contraction(&c, &lift, 2).unwrap();
    for _ in 0..3 {
        assert_eq!(check_contraction(&c, &lift, 2).unwrap(), one);
    }
}

#[test]
fn invalid_collections_are_refused() {
    let c = identity_collection(1, 2).with_p(&"1:(())".into(), "0:()".into());
    assert!(check_contraction(&c, &Lift::default(), 1).is_err());
}

#[test]
fn lift_keys_and_json() {
    let k = key(1, "f", "g", "2:(())");
    assert_eq!(k.to_string(), "(1|f|g|2:(()))");
    assert_eq!("(1|f|g|2:(()))".parse::<LiftKey>().unwrap(), k);
    for bad in ["1|f|g|y", "(x|f|g|y)", "(1|f|g)", "(1|f|g|y|z)"] {
        assert!(bad.parse::<LiftKey>().is_err(), "{bad}");
    }
    let c = identity_collection(1, 2);
    let lift = tautological_lift(&c);
    let text = serde_json::to_string(&lift).unwrap();
    assert!(text.contains(r#""(0|0:()|0:()|1:(()()))":"1:(()())""#));
    let back: Lift = serde_json::from_str(&text).unwrap();
    assert_eq!(back, lift);
    assert!(serde_json::from_str::<Lift>(r#"{"(0|a)":"x"}"#).is_err());
}
