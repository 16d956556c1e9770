use std::collections::{BTreeMap, BTreeSet, VecDeque};

use gcore::Elem;

/// Components by breadth-first search.
pub fn bfs_components(pts: &[Elem], edges: &[(Elem, Elem)]) -> BTreeSet<BTreeSet<Elem>> {
    let mut adj: BTreeMap<&Elem, Vec<&Elem>> = BTreeMap::new();
    for (s, t) in edges {
        adj.entry(s).or_default().push(t);
        adj.entry(t).or_default().push(s);
    }
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for p in pts {
        if !seen.insert(p.clone()) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([p]);
        while let Some(q) = queue.pop_front() {
            comp.insert(q.clone());
            for r in adj.get(q).into_iter().flatten() {
                if seen.insert((*r).clone()) {
                    queue.push_back(r);
                }
            }
        }
        out.insert(comp);
    }
    out
}

