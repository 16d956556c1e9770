use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GcoreError;

/// Identifier of a cell within one dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub String);

impl CellId {
    pub fn new(s: impl Into<String>) -> Self {
        CellId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CellId {
    fn from(s: &str) -> Self {
        CellId(s.to_string())
    }
}

/// Finite n-globular set with ordered cell lists.
///
/// `src[d - 1]` and `tgt[d - 1]` hold the maps from dimension `d` to `d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGlobSet", into = "RawGlobSet")]
pub struct GlobSet {
    n: usize,
    cells: Vec<Vec<CellId>>,
    src: Vec<BTreeMap<CellId, CellId>>,
    tgt: Vec<BTreeMap<CellId, CellId>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGlobSet {
    n: usize,
    cells: Vec<Vec<CellId>>,
    #[serde(default)]
    src: BTreeMap<String, BTreeMap<CellId, CellId>>,
    #[serde(default)]
    tgt: BTreeMap<String, BTreeMap<CellId, CellId>>,
}

impl TryFrom<RawGlobSet> for GlobSet {
    type Error = GcoreError;

    fn try_from(raw: RawGlobSet) -> Result<Self, Self::Error> {
        fn unpack(
            n: usize,
            maps: BTreeMap<String, BTreeMap<CellId, CellId>>,
            which: &str,
        ) -> Result<Vec<BTreeMap<CellId, CellId>>, GcoreError> {
            let mut out = vec![BTreeMap::new(); n];
            for (key, map) in maps {
                let d: usize = key.parse().map_err(|_| GcoreError::Format {
                    detail: format!("{which} key `{key}` is not a decimal dimension"),
                })?;
                if d == 0 || d > n {
                    return Err(GcoreError::Format {
                        detail: format!("{which} key `{key}` outside 1..={n}"),
                    });
                }
                out[d - 1] = map;
            }
            Ok(out)
        }
        if raw.cells.len() != raw.n + 1 {
            return Err(GcoreError::Format {
                detail: format!(
                    "expected {} cell lists for n = {}, found {}",
                    raw.n + 1,
                    raw.n,
                    raw.cells.len()
                ),
            });
        }
        Ok(GlobSet {
            n: raw.n,
            src: unpack(raw.n, raw.src, "src")?,
            tgt: unpack(raw.n, raw.tgt, "tgt")?,
            cells: raw.cells,
        })
    }
}

impl From<GlobSet> for RawGlobSet {
    fn from(g: GlobSet) -> Self {
        let pack = |maps: Vec<BTreeMap<CellId, CellId>>| {
            maps.into_iter()
                .enumerate()
                .map(|(i, m)| ((i + 1).to_string(), m))
                .collect()
        };
        RawGlobSet {
            n: g.n,
            cells: g.cells,
            src: pack(g.src),
            tgt: pack(g.tgt),
        }
    }
}

/// Which globular axiom a cell breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DuplicateCell,
    MissingSource,
    MissingTarget,
    DanglingSource,
    DanglingTarget,
    UnknownCellInMap,
    /// `s∘s = s∘t` fails.
    SourceGlobularity,
    /// `t∘s = t∘t` fails.
    TargetGlobularity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::DuplicateCell => "duplicate cell",
            Axiom::MissingSource => "missing source",
            Axiom::MissingTarget => "missing target",
            Axiom::DanglingSource => "source not a cell",
            Axiom::DanglingTarget => "target not a cell",
            Axiom::UnknownCellInMap => "map entry for unknown cell",
            Axiom::SourceGlobularity => "ss = st",
            Axiom::TargetGlobularity => "ts = tt",
        };
        f.write_str(s)
    }
}

/// First offending cell found by [`GlobSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub dim: usize,
    pub cell: CellId,
    pub axiom: Axiom,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}-cell `{}`", self.axiom, self.dim, self.cell)
    }
}

impl GlobSet {
    /// Builds without validating; call [`GlobSet::validate`] before use.
    pub fn from_parts(
        cells: Vec<Vec<CellId>>,
        src: Vec<BTreeMap<CellId, CellId>>,
        tgt: Vec<BTreeMap<CellId, CellId>>,
    ) -> Result<Self, GcoreError> {
        if cells.is_empty() || src.len() + 1 != cells.len() || tgt.len() + 1 != cells.len() {
            return Err(GcoreError::Format {
                detail: "cell lists and maps have inconsistent lengths".into(),
            });
        }
        Ok(GlobSet {
            n: cells.len() - 1,
            cells,
            src,
            tgt,
        })
    }

    /// The n-globular set with no cells.
    pub fn empty(n: usize) -> Self {
        GlobSet {
            n,
            cells: vec![Vec::new(); n + 1],
            src: vec![BTreeMap::new(); n],
            tgt: vec![BTreeMap::new(); n],
        }
    }

    /// One cell per dimension; every map is forced.
    pub fn terminal(n: usize) -> Self {
        let id = |d: usize| CellId(format!("c{d}"));
        let cells = (0..=n).map(|d| vec![id(d)]).collect();
        let maps: Vec<BTreeMap<CellId, CellId>> = (1..=n)
            .map(|d| BTreeMap::from([(id(d), id(d - 1))]))
            .collect();
        GlobSet {
            n,
            cells,
            src: maps.clone(),
            tgt: maps,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self, d: usize) -> &[CellId] {
        self.cells.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_cells(&self) -> &[Vec<CellId>] {
        &self.cells
    }

    pub fn src_map(&self, d: usize) -> &BTreeMap<CellId, CellId> {
        &self.src[d - 1]
    }

    pub fn tgt_map(&self, d: usize) -> &BTreeMap<CellId, CellId> {
        &self.tgt[d - 1]
    }

    /// Source of a `d`-cell, `d ≥ 1`.
    pub fn src(&self, d: usize, c: &CellId) -> Option<&CellId> {
        self.src.get(d.checked_sub(1)?)?.get(c)
    }

    pub fn tgt(&self, d: usize, c: &CellId) -> Option<&CellId> {
        self.tgt.get(d.checked_sub(1)?)?.get(c)
    }

    /// Iterated source down to dimension `m`.
    pub fn src_at(&self, d: usize, c: &CellId, m: usize) -> Option<CellId> {
        let mut cur = c.clone();
        for k in (m + 1..=d).rev() {
            cur = self.src(k, &cur)?.clone();
        }
        Some(cur)
    }

    pub fn tgt_at(&self, d: usize, c: &CellId, m: usize) -> Option<CellId> {
        let mut cur = c.clone();
        for k in (m + 1..=d).rev() {
            cur = self.tgt(k, &cur)?.clone();
        }
        Some(cur)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Checks every invariant; reports the first offending cell.
    pub fn validate(&self) -> Result<(), Violation> {
        let mut seen: Vec<BTreeSet<&CellId>> = Vec::with_capacity(self.n + 1);
        for (d, list) in self.cells.iter().enumerate() {
            let mut set = BTreeSet::new();
            for c in list {
                if !set.insert(c) {
                    return Err(Violation {
                        dim: d,
                        cell: c.clone(),
                        axiom: Axiom::DuplicateCell,
                    });
                }
            }
            seen.push(set);
        }
        for d in 1..=self.n {
            let here = &seen[d];
            let below = &seen[d - 1];
            for (map, missing, dangling) in [
                (&self.src[d - 1], Axiom::MissingSource, Axiom::DanglingSource),
                (&self.tgt[d - 1], Axiom::MissingTarget, Axiom::DanglingTarget),
            ] {
                for c in &self.cells[d] {
                    match map.get(c) {
                        None => {
                            return Err(Violation {
                                dim: d,
                                cell: c.clone(),
                                axiom: missing,
                            })
                        }
                        Some(v) if !below.contains(v) => {
                            return Err(Violation {
                                dim: d,
                                cell: c.clone(),
                                axiom: dangling,
                            })
                        }
                        Some(_) => {}
                    }
                }
                if let Some(extra) = map.keys().find(|k| !here.contains(k)) {
                    return Err(Violation {
                        dim: d,
                        cell: extra.clone(),
                        axiom: Axiom::UnknownCellInMap,
                    });
                }
            }
        }
        for d in 2..=self.n {
            for c in &self.cells[d] {
                let s = &self.src[d - 1][c];
                let t = &self.tgt[d - 1][c];
                if self.src[d - 2][s] != self.src[d - 2][t] {
                    return Err(Violation {
                        dim: d,
                        cell: c.clone(),
                        axiom: Axiom::SourceGlobularity,
                    });
                }
                if self.tgt[d - 2][s] != self.tgt[d - 2][t] {
                    return Err(Violation {
                        dim: d,
                        cell: c.clone(),
                        axiom: Axiom::TargetGlobularity,
                    });
                }
            }
        }
        Ok(())
    }

    /// Keeps dimensions `≤ m` verbatim.
    pub fn truncate(&self, m: usize) -> Result<GlobSet, GcoreError> {
        if m > self.n {
            return Err(GcoreError::Dimension {
                requested: m,
                available: self.n,
            });
        }
        Ok(GlobSet {
            n: m,
            cells: self.cells[..=m].to_vec(),
            src: self.src[..m].to_vec(),
            tgt: self.tgt[..m].to_vec(),
        })
    }

    /// Views this set at a higher dimension, with no cells above `n`.
    pub fn pad(&self, m: usize) -> GlobSet {
        let mut g = self.clone();
        while g.n < m {
            g.n += 1;
            g.cells.push(Vec::new());
            g.src.push(BTreeMap::new());
            g.tgt.push(BTreeMap::new());
        }
        g
    }

    /// Copy with every cell list sorted, for order-insensitive comparison.
    pub fn canonical(&self) -> GlobSet {
        let mut g = self.clone();
        for list in &mut g.cells {
            list.sort();
        }
        g
    }

    /// Removes a top-dimensional cell.
    pub fn remove_top_cell(&self, c: &CellId) -> Option<GlobSet> {
        if self.n == 0 && self.cells[0].contains(c) {
            let mut g = self.clone();
            g.cells[0].retain(|x| x != c);
            return Some(g);
        }
        let pos = self.cells[self.n].iter().position(|x| x == c)?;
        let mut g = self.clone();
        g.cells[self.n].remove(pos);
        g.src[self.n - 1].remove(c);
        g.tgt[self.n - 1].remove(c);
        Some(g)
    }

    /// The globular set of cells of dimension ≥ 1 running from `a` to `b`,
    /// shifted down one dimension.
    pub fn hom(&self, a: &CellId, b: &CellId) -> Result<GlobSet, GcoreError> {
        if self.n == 0 {
            return Err(GcoreError::Dimension {
                requested: 1,
                available: 0,
            });
        }
        let mut cells = Vec::with_capacity(self.n);
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for d in 1..=self.n {
            let keep: Vec<CellId> = self.cells[d]
                .iter()
                .filter(|c| {
                    self.src_at(d, c, 0).as_ref() == Some(a)
                        && self.tgt_at(d, c, 0).as_ref() == Some(b)
                })
                .cloned()
                .collect();
            if d >= 2 {
                let restrict = |m: &BTreeMap<CellId, CellId>| {
                    keep.iter()
                        .filter_map(|c| m.get(c).map(|v| (c.clone(), v.clone())))
                        .collect::<BTreeMap<_, _>>()
                };
                src.push(restrict(&self.src[d - 1]));
                tgt.push(restrict(&self.tgt[d - 1]));
            }
            cells.push(keep);
        }
        GlobSet::from_parts(cells, src, tgt)
    }
}

/// Structure-preserving map between globular sets of equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobMap {
    pub maps: Vec<BTreeMap<CellId, CellId>>,
}

impl GlobMap {
    /// Checks totality and commutation with sources and targets.
    pub fn is_morphism(&self, from: &GlobSet, to: &GlobSet) -> bool {
        if from.n != to.n || self.maps.len() != from.n + 1 {
            return false;
        }
        for d in 0..=from.n {
            for c in from.cells(d) {
                let Some(img) = self.maps[d].get(c) else {
                    return false;
                };
                if !to.cells(d).contains(img) {
                    return false;
                }
                if d >= 1 {
                    let ok_s = from
                        .src(d, c)
                        .and_then(|s| self.maps[d - 1].get(s))
                        .is_some_and(|s| to.src(d, img) == Some(s));
                    let ok_t = from
                        .tgt(d, c)
                        .and_then(|t| self.maps[d - 1].get(t))
                        .is_some_and(|t| to.tgt(d, img) == Some(t));
                    if !(ok_s && ok_t) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_bijective(&self, from: &GlobSet, to: &GlobSet) -> bool {
        (0..=from.n).all(|d| {
            let image: BTreeSet<&CellId> = from
                .cells(d)
                .iter()
                .filter_map(|c| self.maps[d].get(c))
                .collect();
            image.len() == from.cells(d).len()
                && image.len() == to.cells(d).len()
                && to.cells(d).iter().all(|c| image.contains(c))
        })
    }

    pub fn truncate(&self, m: usize) -> GlobMap {
        GlobMap {
            maps: self.maps[..=m.min(self.maps.len() - 1)].to_vec(),
        }
    }

    /// Image of `g` as a subset of the codomain (cells in first-hit order).
    pub fn image(&self, g: &GlobSet, to: &GlobSet) -> GlobSet {
        let mut cells = Vec::new();
        for d in 0..=g.n {
            let mut seen = BTreeSet::new();
            let mut list = Vec::new();
            for c in g.cells(d) {
                if let Some(img) = self.maps[d].get(c) {
                    if seen.insert(img.clone()) {
                        list.push(img.clone());
                    }
                }
            }
            cells.push(list);
        }
        let restrict = |d: usize, maps: &BTreeMap<CellId, CellId>| {
            cells[d]
                .iter()
                .filter_map(|c| maps.get(c).map(|v| (c.clone(), v.clone())))
                .collect::<BTreeMap<_, _>>()
        };
        let src = (1..=g.n).map(|d| restrict(d, to.src_map(d))).collect();
        let tgt = (1..=g.n).map(|d| restrict(d, to.tgt_map(d))).collect();
        GlobSet {
            n: g.n,
            cells,
            src,
            tgt,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cell() -> GlobSet {
        serde_json::from_str(
            r#"{"n":2,"cells":[["x","y"],["f","g"],["a"]],
                "src":{"1":{"f":"x","g":"x"},"2":{"a":"f"}},
                "tgt":{"1":{"f":"y","g":"y"},"2":{"a":"g"}}}"#,
        )
        .unwrap()
    }

    #[test]
    fn empty_and_terminal_are_valid() {
        assert!(GlobSet::empty(3).validate().is_ok());
        assert!(GlobSet::terminal(2).validate().is_ok());
    }

    #[test]
    fn mismatched_endpoints_are_reported() {
        let mut g = two_cell();
        g.tgt[0].insert("g".into(), "x".into());
        let v = g.validate().unwrap_err();
        assert_eq!(v.dim, 2);
        assert_eq!(v.cell, CellId::from("a"));
        assert_eq!(v.axiom, Axiom::TargetGlobularity);
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let g = two_cell();
        let s = serde_json::to_string(&g).unwrap();
        let back: GlobSet = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        let bad = r#"{"n":0,"cells":[["x"]],"extra":1}"#;
        assert!(serde_json::from_str::<GlobSet>(bad).is_err());
    }

    #[test]
    fn truncation_keeps_low_dimensions() {
        let g = two_cell();
        assert_eq!(g.truncate(2).unwrap(), g);
        let t = GlobSet::terminal(2).truncate(0).unwrap();
        assert_eq!(t.cells(0).len(), 1);
        assert!(g.truncate(3).is_err());
    }

    #[test]
    fn hom_extracts_parallel_cells() {
        let g = two_cell();
        let h = g.hom(&"x".into(), &"y".into()).unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.cells(0).len(), 2);
        assert_eq!(h.cells(1), &[CellId::from("a")]);
        assert!(h.validate().is_ok());
    }
}
