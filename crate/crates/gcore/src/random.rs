//! Seeded random instances.

use std::collections::BTreeMap;

use rand::Rng;

use crate::globset::{CellId, GlobSet};

/// Random valid n-globular set with between 1 and `max_per_dim` cells in each
/// dimension (none when `max_per_dim` is 0). Identifiers are `x`, `f`, `a`,
/// `m`, then `c<d>_` prefixed, by dimension.
pub fn random_globset<R: Rng>(rng: &mut R, n: usize, max_per_dim: usize) -> GlobSet {
    if max_per_dim == 0 {
        return GlobSet::empty(n);
    }
    let prefix = |d: usize| match d {
        0 => "x".to_string(),
        1 => "f".to_string(),
        2 => "a".to_string(),
        3 => "m".to_string(),
        d => format!("c{d}_"),
    };
    let mut cells: Vec<Vec<CellId>> = Vec::with_capacity(n + 1);
    let mut src: Vec<BTreeMap<CellId, CellId>> = Vec::with_capacity(n);
    let mut tgt: Vec<BTreeMap<CellId, CellId>> = Vec::with_capacity(n);
    let k0 = rng.gen_range(1..=max_per_dim);
    cells.push((0..k0).map(|i| CellId(format!("{}{i}", prefix(0)))).collect());
    for d in 1..=n {
        let below = &cells[d - 1];
        let k = rng.gen_range(1..=max_per_dim);
        let mut list = Vec::with_capacity(k);
        let mut s_map = BTreeMap::new();
        let mut t_map = BTreeMap::new();
        for i in 0..k {
            let id = CellId(format!("{}{i}", prefix(d)));
            let s = below[rng.gen_range(0..below.len())].clone();
            let t = if d == 1 {
                below[rng.gen_range(0..below.len())].clone()
            } else {
                let parallel: Vec<&CellId> = below
                    .iter()
                    .filter(|c| src[d - 2][*c] == src[d - 2][&s] && tgt[d - 2][*c] == tgt[d - 2][&s])
                    .collect();
                parallel[rng.gen_range(0..parallel.len())].clone()
            };
            s_map.insert(id.clone(), s);
            t_map.insert(id.clone(), t);
            list.push(id);
        }
        cells.push(list);
        src.push(s_map);
        tgt.push(t_map);
    }
    GlobSet::from_parts(cells, src, tgt).expect("lengths agree")
}

/// Random 1-globular set with `1..=max_objects` objects and `0..=max_edges`
/// edges.
pub fn random_graph<R: Rng>(rng: &mut R, max_objects: usize, max_edges: usize) -> GlobSet {
    let k = rng.gen_range(1..=max_objects.max(1));
    let e = rng.gen_range(0..=max_edges);
    let objs: Vec<CellId> = (0..k).map(|i| CellId(format!("v{i}"))).collect();
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    let mut edges = Vec::with_capacity(e);
    for i in 0..e {
        let id = CellId(format!("e{i}"));
        src.insert(id.clone(), objs[rng.gen_range(0..k)].clone());
        tgt.insert(id.clone(), objs[rng.gen_range(0..k)].clone());
        edges.push(id);
    }
    GlobSet::from_parts(vec![objs, edges], vec![src], vec![tgt]).expect("lengths agree")
}
