use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use gcore::{Axiom, CellId, GlobSet};
use serde::{Deserialize, Serialize};

use crate::error::BlcollError;
use crate::pasting::pasting_diagrams;

/// A globular set `A` with a dimension-preserving map `p` into the pasting
/// diagrams of size at most `bound`.
///
/// `p` is keyed by cell identifier, so identifiers of `A` must be distinct
/// across dimensions (checked by [`check_collection`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCollection", into = "RawCollection")]
pub struct Collection {
    a: GlobSet,
    p: BTreeMap<CellId, CellId>,
    bound: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollection {
    n: usize,
    #[serde(rename = "A")]
    a: GlobSet,
    p: BTreeMap<CellId, CellId>,
    bound: usize,
}

impl TryFrom<RawCollection> for Collection {
    type Error = BlcollError;

    fn try_from(r: RawCollection) -> Result<Self, BlcollError> {
        if r.n != r.a.n() {
            return Err(BlcollError::DimensionMismatch {
                declared: r.n,
                found: r.a.n(),
            });
        }
        Ok(Collection {
            a: r.a,
            p: r.p,
            bound: r.bound,
        })
    }
}

impl From<Collection> for RawCollection {
    fn from(c: Collection) -> Self {
        RawCollection {
            n: c.a.n(),
            a: c.a,
            p: c.p,
            bound: c.bound,
        }
    }
}

impl Collection {
    pub fn new(a: GlobSet, p: BTreeMap<CellId, CellId>, bound: usize) -> Self {
        Collection { a, p, bound }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &GlobSet {
        &self.a
    }

    pub fn p(&self) -> &BTreeMap<CellId, CellId> {
        &self.p
    }

    pub fn p_of(&self, c: &CellId) -> Option<&CellId> {
        self.p.get(c)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The codomain `T_n(1)` cut to the bound.
    pub fn diagrams(&self) -> GlobSet {
        pasting_diagrams(self.n(), self.bound)
    }

    /// Drops a top-dimensional cell together with its `p` entry.
    pub fn delete_top_cell(&self, c: &CellId) -> Option<Collection> {
        let a = self.a.remove_top_cell(c)?;
        let mut p = self.p.clone();
        p.remove(c);
        Some(Collection {
            a,
            p,
            bound: self.bound,
        })
    }

    pub fn with_p(&self, cell: &CellId, value: CellId) -> Collection {
        let mut c = self.clone();
        c.p.insert(cell.clone(), value);
        c
    }
}

/// `A` is the bounded `T_n(1)` itself and `p` is the identity.
pub fn identity_collection(n: usize, bound: usize) -> Collection {
    let a = pasting_diagrams(n, bound);
    let p = a.all_cells().iter().flatten().map(|c| (c.clone(), c.clone())).collect();
    Collection { a, p, bound }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CollectionFault {
    Globular { axiom: Axiom },
    /// The identifier is used in another dimension too.
    RepeatedAcrossDimensions,
    /// Identifiers may not contain `|`, which separates lift keys.
    ReservedCharacter,
    Unmapped,
    /// `p` has an entry for something that is not a cell of `A`.
    UnknownCell,
    NotADiagram { value: CellId },
    Source { expected: CellId, found: CellId },
    Target { expected: CellId, found: CellId },
}

/// First cell at which a collection fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionViolation {
    pub dim: usize,
    pub cell: CellId,
    pub fault: CollectionFault,
}

impl fmt::Display for CollectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-cell `{}`: {:?}", self.dim, self.cell, self.fault)
    }
}

pub fn check_collection(c: &Collection) -> Result<(), CollectionViolation> {
    let a = &c.a;
    a.validate().map_err(|v| CollectionViolation {
        dim: v.dim,
        cell: v.cell,
        fault: CollectionFault::Globular { axiom: v.axiom },
    })?;
    let mut seen: BTreeSet<&CellId> = BTreeSet::new();
    for d in 0..=a.n() {
        for x in a.cells(d) {
            let fault = if !seen.insert(x) {
                Some(CollectionFault::RepeatedAcrossDimensions)
            } else if x.as_str().contains('|') {
                Some(CollectionFault::ReservedCharacter)
            } else {
                None
            };
            if let Some(fault) = fault {
                return Err(CollectionViolation {
                    dim: d,
                    cell: x.clone(),
                    fault,
                });
            }
        }
    }
    if let Some(k) = c.p.keys().find(|k| !seen.contains(k)) {
        return Err(CollectionViolation {
            dim: 0,
            cell: k.clone(),
            fault: CollectionFault::UnknownCell,
        });
    }
    let t = c.diagrams();
    for d in 0..=a.n() {
        let here: BTreeSet<&CellId> = t.cells(d).iter().collect();
        for x in a.cells(d) {
            let bad = |fault| CollectionViolation {
                dim: d,
                cell: x.clone(),
                fault,
            };
            let px = c.p.get(x).ok_or_else(|| bad(CollectionFault::Unmapped))?;
            if !here.contains(px) {
                return Err(bad(CollectionFault::NotADiagram { value: px.clone() }));
            }
            if d == 0 {
                continue;
            }
            // sources and targets of A-cells are mapped, since lower
            // dimensions were checked first
            let expected = &c.p[a.src(d, x).expect("validated")];
            let found = t.src(d, px).expect("diagram");
            if expected != found {
                return Err(bad(CollectionFault::Source {
                    expected: expected.clone(),
                    found: found.clone(),
                }));
            }
            let expected = &c.p[a.tgt(d, x).expect("validated")];
            let found = t.tgt(d, px).expect("diagram");
            if expected != found {
                return Err(bad(CollectionFault::Target {
                    expected: expected.clone(),
                    found: found.clone(),
                }));
            }
        }
    }
    Ok(())
}

/// Keeps dimensions up to `m`. Diagrams of dimension at most `m` keep their
/// identifiers in `T_m(1)`, so `p` is only restricted.
pub fn truncate_collection(c: &Collection, m: usize) -> Result<Collection, BlcollError> {
    if m > c.n() {
        return Err(BlcollError::Truncation { n: c.n(), m });
    }
    let a = c.a.truncate(m)?;
    let keep: BTreeSet<&CellId> = a.all_cells().iter().flatten().collect();
    let p = c
        .p
        .iter()
        .filter(|(k, _)| keep.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(Collection {
        a,
        p,
        bound: c.bound,
    })
}
