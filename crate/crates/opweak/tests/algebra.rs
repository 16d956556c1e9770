use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::Elem;
use opweak::{all_choices, one_object_algebra_check, palgebra_to_wec, FinOperad, Gamma, OpweakError, PAlgebra, WeakEnrichedCat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn carrier(n: usize) -> Vec<Elem> {
    (0..n).map(|i| Elem::atom(i.to_string())).collect()
}

fn num(e: &Elem) -> usize {
    e.as_atom().unwrap().split('@').next().unwrap().parse().unwrap()
}

/// Every `(p, xs)` the action must cover.
fn slots(op: &FinOperad, c: &[Elem]) -> Vec<(Elem, Vec<Elem>)> {
    let mut out = Vec::new();
    for k in 0..=op.cap() {
        let lists: Vec<&[Elem]> = vec![c; k];
        for xs in all_choices(&lists) {
            for p in op.labels(k) {
                out.push((p.clone(), xs.clone()));
            }
        }
    }
    out
}

fn agree(alg: &PAlgebra) -> bool {
    let direct = alg.check().is_ok();
    let w = palgebra_to_wec(alg, Elem::atom("v"));
    assert_eq!(w.check().is_ok(), direct, "{:?}", alg.action);
    assert_eq!(one_object_algebra_check(&w).unwrap().is_ok(), direct);
    direct
}

#[test]
fn exhaustive_on_two_elements() {
    let op = FinOperad::associative(2);
    let c = carrier(2);
    let s = slots(&op, &c);
    let mut lawful = 0;
    for code in 0..(1usize << s.len()) {
        let action = s
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), c[(code >> i) & 1].clone()))
            .collect();
        let alg = PAlgebra {
            carrier: c.clone(),
            operad: op.clone(),
            action,
        };
        if agree(&alg) {
            lawful += 1;
        }
    }
    // a unit e and a product with e as two-sided unit: 2 choices of e,
    // then the one product of the other element with itself is free
    assert_eq!(lawful, 4);
}

#[test]
fn cyclic_action_is_an_algebra() {
    for m in 1..=3 {
        let op = FinOperad::cyclic(m, 3, true);
        let c = carrier(m);
        let alg = PAlgebra::from_fn(c.clone(), op, |p, xs| {
            Elem::atom(((num(p) + xs.iter().map(num).sum::<usize>()) % m).to_string())
        });
        assert!(agree(&alg));
    }
}

#[test]
fn sampled_on_three_elements() {
    let op = FinOperad::cyclic(3, 2, true);
    let c = carrier(3);
    let good = PAlgebra::from_fn(c.clone(), op.clone(), |p, xs| {
        Elem::atom(((num(p) + xs.iter().map(num).sum::<usize>()) % 3).to_string())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut passed, mut failed) = (0, 0);
    for _ in 0..200 {
        let mut alg = good.clone();
        // zero, one or two random changes
        for _ in 0..rng.gen_range(0..3) {
            let i = rng.gen_range(0..alg.action.len());
            let key = alg.action.keys().nth(i).unwrap().clone();
            alg.action.insert(key, c[rng.gen_range(0..3)].clone());
        }
        if agree(&alg) {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    assert!(passed > 0 && failed > 0);
}

#[test]
fn mutated_action_is_rejected() {
    let op = FinOperad::cyclic(2, 2, true);
    let c = carrier(2);
    let mut alg = PAlgebra::from_fn(c.clone(), op, |p, xs| {
        Elem::atom(((num(p) + xs.iter().map(num).sum::<usize>()) % 2).to_string())
    });
    let key = (Elem::atom("1@2"), vec![c[0].clone(), c[1].clone()]);
    alg.action.insert(key, c[1].clone());
    assert!(alg.check().is_err());
    let w = palgebra_to_wec(&alg, Elem::atom("v"));
    let v = w.check().unwrap_err();
    assert_eq!(v.law, "compatibility");
    assert!(one_object_algebra_check(&w).unwrap().is_err());
}

#[test]
fn random_one_object_categories() {
    let op = FinOperad::associative(2);
    let c = carrier(3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let table: BTreeMap<(Elem, Vec<Elem>), Elem> = slots(&op, &c)
            .into_iter()
            .map(|k| (k, c[rng.gen_range(0..3)].clone()))
            .collect();
        let t = table.clone();
        let gamma: Gamma = Arc::new(move |p, _, ys| {
            let xs: Vec<Elem> = ys.iter().rev().cloned().collect();
            t.get(&(p.clone(), xs)).cloned()
        });
        let v = Elem::atom("v");
        let w = WeakEnrichedCat {
            objects: vec![v.clone()],
            homs: BTreeMap::from([((v.clone(), v), c.clone())]),
            operad: op.clone(),
            gamma,
            bound: None,
        };
        assert_eq!(w.check().is_ok(), one_object_algebra_check(&w).unwrap().is_ok());
    }
}

#[test]
fn two_objects_are_not_an_algebra() {
    let mut w = palgebra_to_wec(&PAlgebra::from_fn(carrier(1), FinOperad::terminal(1), |_, _| Elem::atom("0")), Elem::atom("v"));
    w.objects.push(Elem::atom("w"));
    assert!(matches!(one_object_algebra_check(&w), Err(OpweakError::NotOneObject(2))));
}
