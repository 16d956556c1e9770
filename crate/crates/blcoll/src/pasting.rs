//! Unlabelled pasting diagrams as a globular set.

use std::collections::BTreeMap;

use gcore::{CellId, GlobSet};
use monads::{trees, Tree};

/// Identifier of a `d`-dimensional diagram: `d:` followed by the bracket
/// form of its tree. A tree of height below `d` names a degenerate cell, so
/// the prefix keeps identifiers apart across dimensions.
pub fn pasting_id(d: usize, t: &Tree) -> CellId {
    CellId(format!("{d}:{}", t.render()))
}

/// Cuts a tree off at height `h`.
pub fn truncate_tree(t: &Tree, h: usize) -> Tree {
    if h == 0 {
        return Tree(Vec::new());
    }
    Tree(t.0.iter().map(|c| truncate_tree(c, h - 1)).collect())
}

/// Parses a bracket string back into a tree.
pub fn parse_tree(s: &str) -> Option<Tree> {
    fn go(b: &[u8], i: &mut usize) -> Option<Tree> {
        if b.get(*i) != Some(&b'(') {
            return None;
        }
        *i += 1;
        let mut kids = Vec::new();
        while b.get(*i) == Some(&b'(') {
            kids.push(go(b, i)?);
        }
        if b.get(*i) != Some(&b')') {
            return None;
        }
        *i += 1;
        Some(Tree(kids))
    }
    let b = s.as_bytes();
    let mut i = 0;
    let t = go(b, &mut i)?;
    (i == b.len()).then_some(t)
}

/// Splits an identifier into its dimension and tree.
pub fn parse_pasting_id(id: &CellId) -> Option<(usize, Tree)> {
    let (d, t) = id.as_str().split_once(':')?;
    let d: usize = d.parse().ok()?;
    let t = parse_tree(t)?;
    (t.height() <= d).then_some((d, t))
}

/// The `n`-globular set of pasting diagrams of size at most `bound`.
/// A `d`-cell is a tree of height at most `d`; its source and target are
/// both its truncation to height `d - 1`.
pub fn pasting_diagrams(n: usize, bound: usize) -> GlobSet {
    let mut cells = Vec::with_capacity(n + 1);
    let mut src = Vec::with_capacity(n);
    for d in 0..=n {
        let ts = trees(d, bound);
        if d > 0 {
            let m: BTreeMap<CellId, CellId> = ts
                .iter()
                .map(|t| (pasting_id(d, t), pasting_id(d - 1, &truncate_tree(t, d - 1))))
                .collect();
            src.push(m);
        }
        cells.push(ts.iter().map(|t| pasting_id(d, t)).collect());
    }
    let tgt = src.clone();
    GlobSet::from_parts(cells, src, tgt).expect("lengths agree by construction")
}
