use std::collections::BTreeMap;
use std::sync::Arc;

use gcore::base::{bounded_tuples, EnrichmentBase};
use gcore::local::{apply_locally_map, Composite, IdentityFunctor, Square};
use gcore::random::{random_globset, random_graph};
use gcore::{
    apply_locally, check_cell_bijection, globset_to_ngraph, ngraph_to_globset, round_trip,
    tower_unwrap, tower_wrap, BaseFunctor, CellId, Elem, GlobMap, GlobSet, GraphOfTowers, Obj,
    OmegaTower, TowerError, VGraph,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn double_truncation_matches_single() {
    for seed in 0..10 {
        let g = random_globset(&mut rng(seed), 3, 3);
        assert_eq!(
            g.truncate(2).unwrap().truncate(1).unwrap(),
            g.truncate(1).unwrap()
        );
    }
}

#[test]
fn round_trip_is_an_isomorphism_on_random_sets() {
    for seed in 0..10 {
        let g = random_globset(&mut rng(100 + seed), 2, 3);
        let (back, witness) = round_trip(&g).unwrap();
        assert!(back.validate().is_ok());
        assert!(witness.is_morphism(&g, &back));
        assert!(witness.is_bijective(&g, &back));
    }
}

#[test]
fn mutated_set_is_rejected_by_conversion() {
    let g: GlobSet = serde_json::from_str(
        r#"{"n":2,"cells":[["x","y"],["f","g"],["a"]],
            "src":{"1":{"f":"x","g":"y"},"2":{"a":"f"}},
            "tgt":{"1":{"f":"y","g":"y"},"2":{"a":"g"}}}"#,
    )
    .unwrap();
    let v = g.validate().unwrap_err();
    assert_eq!(v.cell, CellId::from("a"));
    assert!(globset_to_ngraph(&g).is_err());
}

fn small_base_object(level: usize, seed: u64) -> Obj {
    let g = random_globset(&mut rng(seed), level, 2);
    globset_to_ngraph(&g).unwrap()
}

#[test]
fn graph_base_cardinalities() {
    for level in 0..3 {
        let b = EnrichmentBase { level };
        for seed in 0..8 {
            let x = small_base_object(level, seed);
            let y = small_base_object(level, seed + 50);
            let nx = b.elements(&x).len();
            let ny = b.elements(&y).len();
            assert_eq!(b.elements(&b.product2(&x, &y)).len(), nx * ny);
            assert_eq!(b.elements(&b.coproduct(&[x.clone(), y.clone()])).len(), nx + ny);
            let d = b.distribute(&x, &[y.clone(), x.clone()]).unwrap();
            assert_eq!(d.lhs.cells().len(), d.rhs.cells().len());
        }
    }
}

#[test]
fn local_action_respects_composition() {
    let h: Arc<dyn BaseFunctor> = Arc::new(Square);
    let g: Arc<dyn BaseFunctor> = Arc::new(Square);
    let hg = Composite(h.clone(), g.clone());
    for seed in 0..5 {
        let a = globset_to_ngraph(&random_graph(&mut rng(seed), 3, 4))
            .unwrap()
            .graph()
            .unwrap();
        let one = apply_locally(&hg, &a);
        let two = apply_locally(h.as_ref(), &apply_locally(g.as_ref(), &a));
        assert_eq!(one, two);
    }
}

#[test]
fn local_action_on_maps_is_functorial() {
    // H_*(id) = id on cells of H_*(A)
    let a = globset_to_ngraph(&random_graph(&mut rng(9), 3, 5)).unwrap();
    let ha = Obj::Graph(Box::new(apply_locally(&Square, a.as_graph().unwrap())));
    let f = |c: &gcore::Ctx, e: &Elem| apply_locally_map(&Square, &gcore::id_map, c, e);
    check_cell_bijection(&f, &ha, &ha).unwrap();
    for cell in ha.cells() {
        assert_eq!(f(&cell.ctx, &cell.elem).unwrap(), cell.elem);
    }
    let id = IdentityFunctor;
    assert_eq!(apply_locally(&id, a.as_graph().unwrap()), *a.as_graph().unwrap());
}

#[test]
fn truncation_commutes_with_morphisms() {
    for seed in 0..6 {
        let g = random_globset(&mut rng(200 + seed), 2, 3);
        let t = GlobSet::terminal(2);
        let to_terminal = GlobMap {
            maps: (0..=2)
                .map(|d| {
                    g.cells(d)
                        .iter()
                        .map(|c| (c.clone(), t.cells(d)[0].clone()))
                        .collect::<BTreeMap<_, _>>()
                })
                .collect(),
        };
        assert!(to_terminal.is_morphism(&g, &t));
        for m in 0..=2 {
            let lhs = to_terminal.image(&g, &t).truncate(m).unwrap();
            let rhs = to_terminal
                .truncate(m)
                .image(&g.truncate(m).unwrap(), &t.truncate(m).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tower_of_truncations_round_trips() {
    let g = random_globset(&mut rng(3), 3, 3);
    let t = OmegaTower::truncations(g);
    let u = tower_unwrap(&t, 3).unwrap();
    assert!(tower_wrap(&u).agrees_with(&t, 3).unwrap());
}

#[test]
fn tower_with_broken_level_two() {
    let g = random_globset(&mut rng(4), 3, 3);
    let broken = OmegaTower::from_fn(move |n| {
        let mut lvl = if n <= 3 { g.truncate(n).unwrap() } else { g.pad(n) };
        if n == 2 {
            let extra: GlobSet = GlobSet::empty(2);
            lvl = GlobSet::from_parts(
                vec![lvl.cells(0).to_vec(), Vec::new(), Vec::new()],
                extra_maps(&extra),
                extra_maps(&extra),
            )
            .unwrap();
        }
        Ok(lvl)
    });
    assert_eq!(
        tower_unwrap(&broken, 3).unwrap_err(),
        TowerError::Incompatible { level: 2 }
    );
}

fn extra_maps(g: &GlobSet) -> Vec<BTreeMap<CellId, CellId>> {
    (1..=g.n()).map(|d| g.src_map(d).clone()).collect()
}

#[test]
fn graph_of_towers_round_trips() {
    let objects: Vec<CellId> = vec!["p".into(), "q".into()];
    let mut homs = BTreeMap::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            let h = random_globset(&mut rng(10 + (i * 2 + j) as u64), 2, 2);
            homs.insert((a.clone(), b.clone()), OmegaTower::truncations(prefixed(&h, &format!("{a}{b}"))));
        }
    }
    let g = GraphOfTowers { objects, homs };
    let back = tower_unwrap(&tower_wrap(&g), 4).unwrap();
    assert!(back.agrees_with(&g, 4).unwrap());
}

fn prefixed(g: &GlobSet, p: &str) -> GlobSet {
    let re = |c: &CellId| CellId(format!("{p}.{c}"));
    let cells = g.all_cells().iter().map(|l| l.iter().map(re).collect()).collect();
    let remap = |m: &BTreeMap<CellId, CellId>| m.iter().map(|(k, v)| (re(k), re(v))).collect();
    let src = (1..=g.n()).map(|d| remap(g.src_map(d))).collect();
    let tgt = (1..=g.n()).map(|d| remap(g.tgt_map(d))).collect();
    GlobSet::from_parts(cells, src, tgt).unwrap()
}

#[test]
fn bounded_tuples_respect_budget() {
    let a = [Elem::atom("a"), Elem::Tuple(vec![Elem::atom("b"), Elem::atom("c")])];
    let lists: Vec<&[Elem]> = vec![&a, &a];
    let t = bounded_tuples(&lists, 3);
    assert_eq!(t.len(), 3);
    assert!(t.iter().all(|x| x.grade() <= 3));
}

proptest! {
    #[test]
    fn conversions_preserve_globularity(seed in 0u64..500, n in 0usize..4, k in 0usize..4) {
        let g = random_globset(&mut rng(seed), n, k);
        prop_assert!(g.validate().is_ok());
        let h = globset_to_ngraph(&g).unwrap();
        let back = ngraph_to_globset(&h).unwrap();
        prop_assert!(back.validate().is_ok());
        prop_assert_eq!(back.total_cells(), g.total_cells());
        for m in 0..=n {
            prop_assert!(g.truncate(m).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn products_and_coproducts_count(seed in 0u64..200, level in 0usize..3) {
        let b = EnrichmentBase { level };
        let x = small_base_object(level, seed);
        let y = small_base_object(level, seed + 1000);
        let p = b.product2(&x, &y);
        prop_assert_eq!(b.elements(&p).len(), b.elements(&x).len() * b.elements(&y).len());
        let c = b.coproduct(&[x.clone(), y.clone()]);
        prop_assert_eq!(c.cells().len(), x.cells().len() + y.cells().len());
    }
}

#[test]
fn vgraph_rejects_foreign_hom_keys() {
    let r = VGraph::new(
        0,
        vec![Elem::atom("a")],
        BTreeMap::from([((Elem::atom("a"), Elem::atom("z")), Obj::Set(vec![Elem::atom("e")]))]),
    );
    assert!(r.is_err());
}
