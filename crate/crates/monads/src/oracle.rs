//! Counting labelled pasting diagrams directly from planar trees, without
//! any of the monad machinery.

use std::collections::BTreeMap;

use gcore::{CellId, GlobSet};

use crate::cells::check_request;
use crate::error::MonadError;

/// A planar rooted tree, as the list of its root's subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree(pub Vec<Tree>);

impl Tree {
    /// Non-root leaves, counting a bare root as 0.
    pub fn size(&self) -> usize {
        self.0.iter().map(|c| c.size().max(1)).sum()
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Bracket notation: a bare root is `()`.
    pub fn render(&self) -> String {
        let inner: String = self.0.iter().map(Tree::render).collect();
        format!("({inner})")
    }
}

/// Trees of height at most `h` and size at most `budget`.
pub fn trees(h: usize, budget: usize) -> Vec<Tree> {
    if h == 0 {
        return vec![Tree(Vec::new())];
    }
    let children = trees(h - 1, budget);
    let mut out = Vec::new();
    fn go(children: &[Tree], budget: usize, acc: &mut Vec<Tree>, out: &mut Vec<Tree>) {
        out.push(Tree(acc.clone()));
        for c in children {
            let w = c.size().max(1);
            if w <= budget {
                acc.push(c.clone());
                go(children, budget - w, acc, out);
                acc.pop();
            }
        }
    }
    go(&children, budget, &mut Vec::new(), &mut out);
    out
}

/// The globular set a tree presents: cells per dimension with source and
/// target indices into the dimension below.
#[derive(Clone, Debug, Default)]
struct Shape {
    counts: Vec<usize>,
    src: Vec<Vec<usize>>,
    tgt: Vec<Vec<usize>>,
}

fn shape(t: &Tree) -> Shape {
    let k = t.0.len();
    let mut s = Shape {
        counts: vec![k + 1],
        src: vec![Vec::new()],
        tgt: vec![Vec::new()],
    };
    for (i, child) in t.0.iter().enumerate() {
        let sub = shape(child);
        for (j, &count) in sub.counts.iter().enumerate() {
            let dim = j + 1;
            if s.counts.len() <= dim {
                s.counts.push(0);
                s.src.push(Vec::new());
                s.tgt.push(Vec::new());
            }
            let offset_below = if j == 0 {
                0
            } else {
                s.counts[dim - 1] - sub.counts[j - 1]
            };
            for c in 0..count {
                if j == 0 {
                    s.src[dim].push(i);
                    s.tgt[dim].push(i + 1);
                } else {
                    s.src[dim].push(offset_below + sub.src[j][c]);
                    s.tgt[dim].push(offset_below + sub.tgt[j][c]);
                }
            }
            s.counts[dim] += count;
        }
    }
    s
}

/// Globular maps from a shape to `x`, by backtracking in dimension order.
fn count_maps(s: &Shape, x: &GlobSet) -> usize {
    let by_boundary: Vec<BTreeMap<(&CellId, &CellId), Vec<&CellId>>> = (0..s.counts.len())
        .map(|d| {
            let mut m: BTreeMap<(&CellId, &CellId), Vec<&CellId>> = BTreeMap::new();
            if d >= 1 && d <= x.n() {
                for c in x.cells(d) {
                    m.entry((&x.src_map(d)[c], &x.tgt_map(d)[c]))
                        .or_default()
                        .push(c);
                }
            }
            m
        })
        .collect();
    let order: Vec<(usize, usize)> = s
        .counts
        .iter()
        .enumerate()
        .flat_map(|(d, &n)| (0..n).map(move |i| (d, i)))
        .collect();
    let mut image: Vec<Vec<Option<&CellId>>> = s.counts.iter().map(|&n| vec![None; n]).collect();

    fn go<'a>(
        pos: usize,
        order: &[(usize, usize)],
        s: &Shape,
        x: &'a GlobSet,
        by_boundary: &[BTreeMap<(&'a CellId, &'a CellId), Vec<&'a CellId>>],
        image: &mut Vec<Vec<Option<&'a CellId>>>,
    ) -> usize {
        let Some(&(d, i)) = order.get(pos) else {
            return 1;
        };
        let candidates: Vec<&'a CellId> = if d == 0 {
            x.cells(0).iter().collect()
        } else {
            let a = image[d - 1][s.src[d][i]].expect("lower cells assigned first");
            let b = image[d - 1][s.tgt[d][i]].expect("lower cells assigned first");
            by_boundary[d].get(&(a, b)).cloned().unwrap_or_default()
        };
        let mut total = 0;
        for c in candidates {
            image[d][i] = Some(c);
            total += go(pos + 1, order, s, x, by_boundary, image);
        }
        image[d][i] = None;
        total
    }
    if s.counts.len() > x.n() + 1 && s.counts[x.n() + 1..].iter().any(|&n| n > 0) {
        return 0;
    }
    go(0, &order, s, x, &by_boundary, &mut image)
}

/// Number of `d`-dimensional pasting diagrams of size at most `bound`
/// labelled in the `n`-globular set `x`.
pub fn pasting_oracle(n: usize, x: &GlobSet, d: usize, bound: usize) -> Result<usize, MonadError> {
    check_request(n, x, d)?;
    Ok(trees(d, bound)
        .iter()
        .map(|t| count_maps(&shape(t), x))
        .sum())
}
