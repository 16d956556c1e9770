use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::thread;

use gcore::{CellId, GlobSet};
use serde::{Deserialize, Serialize};

use crate::collection::{check_collection, Collection};
use crate::error::BlcollError;

/// `(m, a, b, y)`: a parallel pair of `m`-cells of `A` and an `(m+1)`-diagram
/// between their images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftKey {
    pub m: usize,
    pub a: CellId,
    pub b: CellId,
    pub y: CellId,
}

impl fmt::Display for LiftKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{}|{})", self.m, self.a, self.b, self.y)
    }
}

impl FromStr for LiftKey {
    type Err = BlcollError;

    fn from_str(s: &str) -> Result<Self, BlcollError> {
        let bad = || BlcollError::LiftKey(s.to_string());
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split('|').collect();
        let [m, a, b, y] = parts[..] else {
            return Err(bad());
        };
        Ok(LiftKey {
            m: m.parse().map_err(|_| bad())?,
            a: CellId::from(a),
            b: CellId::from(b),
            y: CellId::from(y),
        })
    }
}

impl Serialize for LiftKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LiftKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A partial choice of fillers, as an `(m+1)`-cell of `A` per key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lift(pub BTreeMap<LiftKey, CellId>);

impl Lift {
    pub fn get(&self, k: &LiftKey) -> Option<&CellId> {
        self.0.get(k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries whose filler has dimension at most `m`.
    pub fn restrict(&self, m: usize) -> Lift {
        Lift(self.0.iter().filter(|(k, _)| k.m < m).map(|(k, v)| (k.clone(), v.clone())).collect())
    }
}

/// For every `(m+1)`-cell `x` of `A`, offers `x` for `(m, src x, tgt x, p x)`.
/// When several cells fit a key the first in `A`'s order wins.
pub fn tautological_lift(c: &Collection) -> Lift {
    let a = c.a();
    let mut out = BTreeMap::new();
    for d in 1..=a.n() {
        for x in a.cells(d) {
            let (Some(s), Some(t), Some(y)) = (a.src(d, x), a.tgt(d, x), c.p_of(x)) else {
                continue;
            };
            let k = LiftKey {
                m: d - 1,
                a: s.clone(),
                b: t.clone(),
                y: y.clone(),
            };
            out.entry(k).or_insert_with(|| x.clone());
        }
    }
    Lift(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiftFault {
    Undefined,
    NotACell { cell: CellId },
    Source { found: CellId },
    Target { found: CellId },
    Image { found: CellId },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MissingLift {
    pub m: usize,
    pub a: CellId,
    pub b: CellId,
    pub y: CellId,
    pub fault: LiftFault,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    /// Dimensions `m` that were searched.
    pub range: Range<usize>,
    /// Number of `(m, a, b, y)` obligations found.
    pub obligations: usize,
    pub missing: Vec<MissingLift>,
}

impl ContractionReport {
    pub fn is_ok(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Lifts for every `m ≤ m_max`. Diagrams above `n` do not exist, so `m ≥ n`
/// adds no obligations.
pub fn check_contraction(
    c: &Collection,
    lift: &Lift,
    m_max: usize,
) -> Result<ContractionReport, BlcollError> {
    check_range(c, lift, 0..m_max + 1)
}

/// Lifts for `m < n` only; the top dimension is unconstrained.
pub fn check_incoherent_contraction(
    c: &Collection,
    lift: &Lift,
) -> Result<ContractionReport, BlcollError> {
    check_range(c, lift, 0..c.n())
}

fn check_range(
    c: &Collection,
    lift: &Lift,
    range: Range<usize>,
) -> Result<ContractionReport, BlcollError> {
    check_collection(c).map_err(BlcollError::Invalid)?;
    let t = c.diagrams();
    let searched: Vec<usize> = range.clone().filter(|&m| m < c.n()).collect();
    let parts: Vec<(usize, BTreeSet<MissingLift>)> = thread::scope(|s| {
        let handles: Vec<_> = searched
            .iter()
            .map(|&m| {
                let t = &t;
                s.spawn(move || check_level(c, t, lift, m))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("level check panicked")).collect()
    });
    let mut obligations = 0;
    let mut missing = BTreeSet::new();
    for (k, set) in parts {
        obligations += k;
        missing.extend(set);
    }
    Ok(ContractionReport {
        range,
        obligations,
        missing: missing.into_iter().collect(),
    })
}

fn check_level(c: &Collection, t: &GlobSet, lift: &Lift, m: usize) -> (usize, BTreeSet<MissingLift>) {
    let a = c.a();
    // diagrams y in dimension m + 1 keyed by their boundary, which is both
    // their source and target
    let mut over: BTreeMap<&CellId, Vec<&CellId>> = BTreeMap::new();
    for y in t.cells(m + 1) {
        over.entry(t.src(m + 1, y).expect("diagram")).or_default().push(y);
    }
    let parallel = |x: &CellId, z: &CellId| {
        m == 0 || (a.src(m, x) == a.src(m, z) && a.tgt(m, x) == a.tgt(m, z))
    };
    let mut count = 0;
    let mut missing = BTreeSet::new();
    for x in a.cells(m) {
        for z in a.cells(m) {
            if !parallel(x, z) || c.p_of(x) != c.p_of(z) {
                continue;
            }
            let Some(ys) = over.get(&c.p()[x]) else {
                continue;
            };
            for y in ys {
                count += 1;
                let key = LiftKey {
                    m,
                    a: x.clone(),
                    b: z.clone(),
                    y: (*y).clone(),
                };
                if let Some(fault) = lift_fault(c, lift, &key) {
                    missing.insert(MissingLift {
                        m,
                        a: key.a,
                        b: key.b,
                        y: key.y,
                        fault,
                    });
                }
            }
        }
    }
    (count, missing)
}

fn lift_fault(c: &Collection, lift: &Lift, k: &LiftKey) -> Option<LiftFault> {
    let a = c.a();
    let d = k.m + 1;
    let Some(x) = lift.get(k) else {
        return Some(LiftFault::Undefined);
    };
    if !a.cells(d).contains(x) {
        return Some(LiftFault::NotACell { cell: x.clone() });
    }
    let s = a.src(d, x).expect("validated");
    if *s != k.a {
        return Some(LiftFault::Source { found: s.clone() });
    }
    let t = a.tgt(d, x).expect("validated");
    if *t != k.b {
        return Some(LiftFault::Target { found: t.clone() });
    }
    let y = &c.p()[x];
    (*y != k.y).then(|| LiftFault::Image { found: y.clone() })
}
