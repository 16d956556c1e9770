//! Lazily generated towers `(…, X₂, X₁, X₀)` of globular sets, and the
//! correspondence between a tower and a graph of hom towers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::TowerError;
use crate::globset::{CellId, GlobSet};

type Generator = dyn Fn(usize) -> Result<GlobSet, TowerError> + Send + Sync;

/// A tower whose level `n` is an n-globular set, produced on demand and
/// memoized. Compatibility is checked when probed.
#[derive(Clone)]
pub struct OmegaTower {
    generator: Arc<Generator>,
    memo: Arc<Mutex<BTreeMap<usize, GlobSet>>>,
}

impl fmt::Debug for OmegaTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached: Vec<usize> = self.memo.lock().map(|m| m.keys().copied().collect()).unwrap_or_default();
        f.debug_struct("OmegaTower").field("cached_levels", &cached).finish()
    }
}

impl OmegaTower {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize) -> Result<GlobSet, TowerError> + Send + Sync + 'static,
    {
        OmegaTower {
            generator: Arc::new(f),
            memo: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    /// The terminal globular set at every level.
    pub fn constant_terminal() -> Self {
        Self::from_fn(|n| Ok(GlobSet::terminal(n)))
    }

    /// Truncations of a fixed set, padded with empty dimensions above it.
    pub fn truncations(g: GlobSet) -> Self {
        Self::from_fn(move |n| {
            Ok(if n <= g.n() {
                g.truncate(n).expect("n within dimension")
            } else {
                g.pad(n)
            })
        })
    }

    /// Level `n`; generation runs at most once per level and concurrent
    /// probes observe the same value.
    pub fn level(&self, n: usize) -> Result<GlobSet, TowerError> {
        if let Some(g) = self.memo.lock().expect("tower memo poisoned").get(&n) {
            return Ok(g.clone());
        }
        let g = (self.generator)(n)?;
        if g.n() != n {
            return Err(TowerError::WrongDimension {
                level: n,
                found: g.n(),
            });
        }
        let mut memo = self.memo.lock().expect("tower memo poisoned");
        Ok(memo.entry(n).or_insert(g).clone())
    }

    /// Checks `truncate(level(k), k - 1) = level(k - 1)` for `k ≤ depth`.
    pub fn check(&self, depth: usize) -> Result<(), TowerError> {
        for k in 1..=depth {
            let hi = self.level(k)?;
            let lo = self.level(k - 1)?;
            let t = hi.truncate(k - 1).expect("k - 1 < k");
            if t.canonical() != lo.canonical() {
                return Err(TowerError::Incompatible { level: k });
            }
        }
        Ok(())
    }

    /// Levels `0..=depth` agree, up to the order of cell lists.
    pub fn agrees_with(&self, other: &OmegaTower, depth: usize) -> Result<bool, TowerError> {
        for k in 0..=depth {
            if self.level(k)?.canonical() != other.level(k)?.canonical() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A fixed object set with a hom tower for every ordered pair.
#[derive(Clone, Debug)]
pub struct GraphOfTowers {
    pub objects: Vec<CellId>,
    pub homs: BTreeMap<(CellId, CellId), OmegaTower>,
}

impl GraphOfTowers {
    pub fn agrees_with(&self, other: &GraphOfTowers, depth: usize) -> Result<bool, TowerError> {
        let mine: BTreeSet<&CellId> = self.objects.iter().collect();
        let theirs: BTreeSet<&CellId> = other.objects.iter().collect();
        if mine != theirs || self.homs.len() != other.homs.len() {
            return Ok(false);
        }
        for (k, t) in &self.homs {
            match other.homs.get(k) {
                Some(u) if t.agrees_with(u, depth)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// Exposes the constant object set and the hom towers, after checking
/// compatibility up to `depth`.
pub fn tower_unwrap(t: &OmegaTower, depth: usize) -> Result<GraphOfTowers, TowerError> {
    t.check(depth)?;
    let objects = t.level(0)?.cells(0).to_vec();
    for k in 1..=depth {
        let lk = t.level(k)?;
        if lk.cells(0).iter().collect::<BTreeSet<_>>() != objects.iter().collect::<BTreeSet<_>>() {
            return Err(TowerError::ObjectsChanged { level: k });
        }
    }
    let mut homs = BTreeMap::new();
    for a in &objects {
        for b in &objects {
            let (t, a2, b2) = (t.clone(), a.clone(), b.clone());
            let hom = OmegaTower::from_fn(move |m| {
                let g = t.level(m + 1)?;
                Ok(g.hom(&a2, &b2).expect("level m + 1 has positive dimension"))
            });
            homs.insert((a.clone(), b.clone()), hom);
        }
    }
    Ok(GraphOfTowers { objects, homs })
}

/// Reassembles a tower from a graph of hom towers. Hom towers must use
/// disjoint identifiers.
pub fn tower_wrap(g: &GraphOfTowers) -> OmegaTower {
    let g = g.clone();
    OmegaTower::from_fn(move |n| {
        if n == 0 {
            return GlobSet::from_parts(vec![g.objects.clone()], Vec::new(), Vec::new())
                .map_err(|_| TowerError::WrongDimension { level: 0, found: 0 });
        }
        let mut cells = vec![Vec::new(); n + 1];
        cells[0] = g.objects.clone();
        let mut src = vec![BTreeMap::new(); n];
        let mut tgt = vec![BTreeMap::new(); n];
        for a in &g.objects {
            for b in &g.objects {
                let Some(ht) = g.homs.get(&(a.clone(), b.clone())) else {
                    continue;
                };
                let h = ht.level(n - 1)?;
                for d in 0..n {
                    for c in h.cells(d) {
                        if d == 0 {
                            src[0].insert(c.clone(), a.clone());
                            tgt[0].insert(c.clone(), b.clone());
                        } else {
                            src[d].insert(c.clone(), h.src_map(d)[c].clone());
                            tgt[d].insert(c.clone(), h.tgt_map(d)[c].clone());
                        }
                        cells[d + 1].push(c.clone());
                    }
                }
            }
        }
        for list in &cells {
            let mut seen = BTreeSet::new();
            if let Some(dup) = list.iter().find(|c| !seen.insert(*c)) {
                return Err(TowerError::Collision {
                    level: n,
                    id: dup.to_string(),
                });
            }
        }
        GlobSet::from_parts(cells, src, tgt)
            .map_err(|_| TowerError::WrongDimension { level: n, found: n })
    })
}
