//! Seeded collections for tests and fixtures.

use std::collections::BTreeMap;

use gcore::{CellId, GlobSet};
use rand::Rng;

use crate::collection::Collection;
use crate::pasting::pasting_diagrams;

struct Builder {
    cells: Vec<Vec<CellId>>,
    src: Vec<BTreeMap<CellId, CellId>>,
    tgt: Vec<BTreeMap<CellId, CellId>>,
    p: BTreeMap<CellId, CellId>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            cells: vec![Vec::new(); n + 1],
            src: vec![BTreeMap::new(); n],
            tgt: vec![BTreeMap::new(); n],
            p: BTreeMap::new(),
        }
    }

    fn add(&mut self, d: usize, y: &CellId, ends: Option<(&CellId, &CellId)>) {
        let id = CellId(format!("x{d}_{}", self.cells[d].len()));
        if let Some((s, t)) = ends {
            self.src[d - 1].insert(id.clone(), s.clone());
            self.tgt[d - 1].insert(id.clone(), t.clone());
        }
        self.p.insert(id.clone(), y.clone());
        self.cells[d].push(id);
    }

    fn parallel(&self, m: usize, x: &CellId, z: &CellId) -> bool {
        m == 0 || (self.src[m - 1][x] == self.src[m - 1][z] && self.tgt[m - 1][x] == self.tgt[m - 1][z])
    }

    fn finish(self, bound: usize) -> Collection {
        let a = GlobSet::from_parts(self.cells, self.src, self.tgt).expect("lengths agree");
        Collection::new(a, self.p, bound)
    }
}

/// A collection with a filler for every obligation: each diagram over each
/// parallel pair gets between 1 and `max_mult` cells, so the tautological
/// lift is a contraction. `max_mult = 0` gives the empty collection.
pub fn saturated_collection<R: Rng>(rng: &mut R, n: usize, bound: usize, max_mult: usize) -> Collection {
    let t = pasting_diagrams(n, bound);
    let mut b = Builder::new(n);
    if max_mult == 0 {
        return b.finish(bound);
    }
    for y in t.cells(0) {
        for _ in 0..rng.gen_range(1..=max_mult) {
            b.add(0, y, None);
        }
    }
    for m in 0..n {
        let below = b.cells[m].clone();
        for x in &below {
            for z in &below {
                if !b.parallel(m, x, z) || b.p[x] != b.p[z] {
                    continue;
                }
                let py = b.p[x].clone();
                for y in t.cells(m + 1) {
                    if t.src(m + 1, y) == Some(&py) {
                        for _ in 0..rng.gen_range(1..=max_mult) {
                            b.add(m + 1, y, Some((x, z)));
                        }
                    }
                }
            }
        }
    }
    b.finish(bound)
}

/// Some valid collection, with no promise of any lifts: each diagram gets up
/// to `max_mult` cells between randomly chosen parallel ends, and at least
/// one 0-cell is made.
pub fn random_collection<R: Rng>(rng: &mut R, n: usize, bound: usize, max_mult: usize) -> Collection {
    let t = pasting_diagrams(n, bound);
    let mut b = Builder::new(n);
    for d in 0..=n {
        for y in t.cells(d) {
            let k = match (max_mult, d) {
                (0, _) => 0,
                (_, 0) => rng.gen_range(1..=max_mult),
                _ => rng.gen_range(0..=max_mult),
            };
            for _ in 0..k {
                if d == 0 {
                    b.add(0, y, None);
                    continue;
                }
                let dy = t.src(d, y).expect("diagram");
                let ends: Vec<CellId> =
                    b.cells[d - 1].iter().filter(|x| &b.p[*x] == dy).cloned().collect();
                if ends.is_empty() {
                    break;
                }
                let s = ends[rng.gen_range(0..ends.len())].clone();
                let par: Vec<&CellId> = ends.iter().filter(|z| b.parallel(d - 1, &s, z)).collect();
                let tg = par[rng.gen_range(0..par.len())].clone();
                b.add(d, y, Some((&s, &tg)));
            }
        }
    }
    b.finish(bound)
}
