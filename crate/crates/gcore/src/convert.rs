//! Conversions between n-globular sets and iterated enriched graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::base::{Obj, VGraph};
use crate::elem::Elem;
use crate::error::GcoreError;
use crate::globset::{CellId, GlobMap, GlobSet};

/// Level-n iterated graph of an n-globular set. Cell identifiers become atoms.
pub fn globset_to_ngraph(g: &GlobSet) -> Result<Obj, GcoreError> {
    g.validate().map_err(GcoreError::Invalid)?;
    Ok(to_ngraph_unchecked(g))
}

fn to_ngraph_unchecked(g: &GlobSet) -> Obj {
    let objects: Vec<Elem> = g.cells(0).iter().map(|c| Elem::atom(c.as_str())).collect();
    if g.n() == 0 {
        return Obj::Set(objects);
    }
    let mut homs = BTreeMap::new();
    for a in g.cells(0) {
        for b in g.cells(0) {
            let h = g.hom(a, b).expect("validated set has positive dimension");
            if !h.cells(0).is_empty() {
                homs.insert(
                    (Elem::atom(a.as_str()), Elem::atom(b.as_str())),
                    to_ngraph_unchecked(&h),
                );
            }
        }
    }
    Obj::Graph(Box::new(VGraph::new_unchecked(g.n() - 1, objects, homs)))
}

/// Flattened form: the `d`-cells of a level-`d` graph's homs are tagged with
/// the row-major index of their endpoint pair (`k·name`).
pub fn ngraph_to_globset(h: &Obj) -> Result<GlobSet, GcoreError> {
    Ok(flatten(h)?.0)
}

/// Per dimension, the cell each output identifier came from.
pub type Provenance = Vec<Vec<(CellId, Elem)>>;

fn flatten(h: &Obj) -> Result<(GlobSet, Provenance), GcoreError> {
    let objects = h.top();
    let ids: Vec<CellId> = objects.iter().map(|e| CellId(e.to_string())).collect();
    check_unique(0, &ids)?;
    let mut cells = vec![ids.clone()];
    let mut prov: Provenance = vec![ids.iter().cloned().zip(objects.iter().cloned()).collect()];
    let Obj::Graph(g) = h else {
        return GlobSet::from_parts(cells, Vec::new(), Vec::new()).map(|s| (s, prov));
    };
    let n = g.hom_level() + 1;
    let mut src = vec![BTreeMap::new(); n];
    let mut tgt = vec![BTreeMap::new(); n];
    cells.resize(n + 1, Vec::new());
    prov.resize(n + 1, Vec::new());
    let m = objects.len();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            let Some(hom) = g.hom(a, b) else { continue };
            let k = i * m + j;
            let tag = |c: &CellId| CellId(format!("{k}·{c}"));
            let (sub, sub_prov) = flatten(hom)?;
            for d in 0..=sub.n() {
                for (c, (_, e)) in sub.cells(d).iter().zip(&sub_prov[d]) {
                    let id = tag(c);
                    if d == 0 {
                        src[0].insert(id.clone(), ids[i].clone());
                        tgt[0].insert(id.clone(), ids[j].clone());
                    } else {
                        src[d].insert(id.clone(), tag(&sub.src_map(d)[c]));
                        tgt[d].insert(id.clone(), tag(&sub.tgt_map(d)[c]));
                    }
                    cells[d + 1].push(id.clone());
                    prov[d + 1].push((id, e.clone()));
                }
            }
        }
    }
    for (d, list) in cells.iter().enumerate() {
        check_unique(d, list)?;
    }
    GlobSet::from_parts(cells, src, tgt).map(|s| (s, prov))
}

fn check_unique(dim: usize, ids: &[CellId]) -> Result<(), GcoreError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(GcoreError::Collision {
                dim,
                id: id.to_string(),
            });
        }
    }
    Ok(())
}

/// Converts to an iterated graph and back, returning the result together
/// with the relabeling from original to new identifiers, verified to be an
/// isomorphism.
pub fn round_trip(g: &GlobSet) -> Result<(GlobSet, GlobMap), GcoreError> {
    let h = globset_to_ngraph(g)?;
    let (back, prov) = flatten(&h)?;
    let maps = prov
        .into_iter()
        .map(|dim| {
            dim.into_iter()
                .map(|(new, old)| Ok((CellId(old.as_atom()?.to_string()), new)))
                .collect::<Result<BTreeMap<_, _>, GcoreError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let witness = GlobMap { maps };
    if !(witness.is_morphism(g, &back) && witness.is_bijective(g, &back)) {
        return Err(GcoreError::Format {
            detail: "round trip did not produce an isomorphism".into(),
        });
    }
    Ok((back, witness))
}
