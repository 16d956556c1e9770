use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use gcore::Elem;
use serde::Serialize;

use crate::error::OpweakError;
use crate::operad::{all_choices, arity_vectors, FinOperad};

/// `γ(p; a₀, …, a_k; y_k, …, y₁)` with `y_i ∈ A(a_{i−1}, a_i)`, listed from
/// the last hom to the first. `None` means undefined.
pub type Gamma = Arc<dyn Fn(&Elem, &[Elem], &[Elem]) -> Option<Elem> + Send + Sync>;

/// A category over `Set` whose k-ary composition is weighted by `P(k)`.
///
/// Homs may be cut off at a grade: with `bound` set, a composite of higher
/// grade is not required to be listed.
#[derive(Clone)]
pub struct WeakEnrichedCat {
    pub objects: Vec<Elem>,
    pub homs: BTreeMap<(Elem, Elem), Vec<Elem>>,
    pub operad: FinOperad,
    pub gamma: Gamma,
    pub bound: Option<usize>,
}

impl fmt::Debug for WeakEnrichedCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeakEnrichedCat")
            .field("objects", &self.objects)
            .field("homs", &self.homs)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

/// A failed law of a weighted category or an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WecViolation {
    pub law: String,
    pub detail: String,
}

impl fmt::Display for WecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

fn violation(law: &str, detail: String) -> WecViolation {
    WecViolation {
        law: law.into(),
        detail,
    }
}

fn show(xs: &[Elem]) -> String {
    xs.iter().map(Elem::to_string).collect::<Vec<_>>().join(", ")
}

/// Object paths `a₀, …, a_k`.
fn object_paths(objects: &[Elem], k: usize) -> Vec<Vec<Elem>> {
    let lists: Vec<&[Elem]> = vec![objects; k + 1];
    all_choices(&lists)
}

impl WeakEnrichedCat {
    pub fn hom(&self, a: &Elem, b: &Elem) -> &[Elem] {
        self.homs
            .get(&(a.clone(), b.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn gamma_at(&self, p: &Elem, path: &[Elem], ys: &[Elem]) -> Result<Elem, WecViolation> {
        (self.gamma)(p, path, ys).ok_or_else(|| {
            violation(
                "composition",
                format!("γ undefined at {p} on [{}] along [{}]", show(ys), show(path)),
            )
        })
    }

    /// Hom choices along a path, last hom first.
    fn choices(&self, path: &[Elem]) -> Vec<Vec<Elem>> {
        let lists: Vec<&[Elem]> = path.windows(2).rev().map(|w| self.hom(&w[0], &w[1])).collect();
        all_choices(&lists)
    }

    fn listed(&self, e: &Elem) -> bool {
        self.bound.is_none_or(|b| e.grade() <= b)
    }

    /// Composites land in the right hom, the unit acts trivially and nested
    /// composites agree with operad composition.
    pub fn check(&self) -> Result<(), WecViolation> {
        let op = &self.operad;
        for k in 0..=op.cap() {
            for path in object_paths(&self.objects, k) {
                let (a, b) = (&path[0], &path[k]);
                let target: BTreeSet<&Elem> = self.hom(a, b).iter().collect();
                for ys in self.choices(&path) {
                    for p in op.labels(k) {
                        let r = self.gamma_at(p, &path, &ys)?;
                        if self.listed(&r) && !target.contains(&r) {
                            return Err(violation(
                                "endpoints",
                                format!("γ({p}; {}) = {r} is not in A({a}, {b})", show(&ys)),
                            ));
                        }
                    }
                }
            }
        }
        for a in &self.objects {
            for b in &self.objects {
                for y in self.hom(a, b) {
                    let path = [a.clone(), b.clone()];
                    let r = self.gamma_at(op.unit_label(), &path, std::slice::from_ref(y))?;
                    if &r != y {
                        return Err(violation("unit", format!("γ(u; {y}) = {r}")));
                    }
                }
            }
        }
        for m in 1..=op.cap() {
            for ks in arity_vectors(m, op.cap()) {
                if ks.iter().any(|&k| op.labels(k).is_empty()) {
                    continue;
                }
                let total: usize = ks.iter().sum();
                for path in object_paths(&self.objects, total) {
                    self.check_nested(m, &ks, &path)?;
                }
            }
        }
        Ok(())
    }

    fn check_nested(&self, m: usize, ks: &[usize], path: &[Elem]) -> Result<(), WecViolation> {
        let op = &self.operad;
        // block i covers path[starts[i]..=starts[i] + ks[i]]
        let mut starts = vec![0];
        for k in ks {
            starts.push(starts[starts.len() - 1] + k);
        }
        let outer_path: Vec<Elem> = starts.iter().map(|&s| path[s].clone()).collect();
        let q_lists: Vec<&[Elem]> = ks.iter().map(|&k| op.labels(k)).collect();
        for ys in self.choices(path) {
            for p in op.labels(m) {
                for qs in all_choices(&q_lists) {
                    let pq = op.compose(p, &qs).ok_or_else(|| {
                        violation("compatibility", format!("operad has no composite of {p} with [{}]", show(&qs)))
                    })?;
                    let lhs = self.gamma_at(pq, path, &ys)?;
                    let mut inner = Vec::with_capacity(m);
                    for i in (0..m).rev() {
                        let (s, k) = (starts[i], ks[i]);
                        // ys lists homs last first, so block i sits at the mirrored range
                        let n = ys.len();
                        let block = &ys[n - s - k..n - s];
                        inner.push(self.gamma_at(&qs[i], &path[s..=s + k], block)?);
                    }
                    let rhs = self.gamma_at(p, &outer_path, &inner)?;
                    if lhs != rhs {
                        return Err(violation(
                            "compatibility",
                            format!(
                                "γ({pq}; {}) = {lhs} but nesting {p} over [{}] gives {rhs}",
                                show(&ys),
                                show(&qs)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An algebra for a finite operad on a finite carrier, given by a table
/// `(p, x₁, …, x_k) ↦ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAlgebra {
    pub carrier: Vec<Elem>,
    pub operad: FinOperad,
    pub action: BTreeMap<(Elem, Vec<Elem>), Elem>,
}

impl PAlgebra {
    /// Tabulates `f` on the carrier.
    pub fn from_fn(carrier: Vec<Elem>, operad: FinOperad, f: impl Fn(&Elem, &[Elem]) -> Elem) -> Self {
        let mut action = BTreeMap::new();
        for k in 0..=operad.cap() {
            let lists: Vec<&[Elem]> = vec![carrier.as_slice(); k];
            for xs in all_choices(&lists) {
                for p in operad.labels(k) {
                    action.insert((p.clone(), xs.clone()), f(p, &xs));
                }
            }
        }
        PAlgebra {
            carrier,
            operad,
            action,
        }
    }

    fn act(&self, p: &Elem, xs: &[Elem]) -> Result<&Elem, WecViolation> {
        self.action
            .get(&(p.clone(), xs.to_vec()))
            .ok_or_else(|| violation("totality", format!("no action of {p} on [{}]", show(xs))))
    }

    /// Totality, closure, unit and associativity of the action.
    pub fn check(&self) -> Result<(), WecViolation> {
        let op = &self.operad;
        let carrier: BTreeSet<&Elem> = self.carrier.iter().collect();
        for k in 0..=op.cap() {
            let lists: Vec<&[Elem]> = vec![self.carrier.as_slice(); k];
            for xs in all_choices(&lists) {
                for p in op.labels(k) {
                    let x = self.act(p, &xs)?;
                    if !carrier.contains(x) {
                        return Err(violation("closure", format!("{p} sends [{}] to {x}", show(&xs))));
                    }
                }
            }
        }
        for x in &self.carrier {
            let y = self.act(op.unit_label(), std::slice::from_ref(x))?;
            if y != x {
                return Err(violation("unit", format!("u·{x} = {y}")));
            }
        }
        for m in 1..=op.cap() {
            for ks in arity_vectors(m, op.cap()) {
                let total: usize = ks.iter().sum();
                let q_lists: Vec<&[Elem]> = ks.iter().map(|&k| op.labels(k)).collect();
                let x_lists: Vec<&[Elem]> = vec![self.carrier.as_slice(); total];
                for p in op.labels(m) {
                    for qs in all_choices(&q_lists) {
                        let Some(pq) = op.compose(p, &qs) else {
                            return Err(violation(
                                "associativity",
                                format!("operad has no composite of {p} with [{}]", show(&qs)),
                            ));
                        };
                        for xs in all_choices(&x_lists) {
                            let lhs = self.act(pq, &xs)?;
                            let mut inner = Vec::with_capacity(m);
                            let mut offset = 0;
                            for (q, &k) in qs.iter().zip(&ks) {
                                inner.push(self.act(q, &xs[offset..offset + k])?.clone());
                                offset += k;
                            }
                            let rhs = self.act(p, &inner)?;
                            if lhs != rhs {
                                return Err(violation(
                                    "associativity",
                                    format!("{pq}·[{}] = {lhs} but {p}·[{}] = {rhs}", show(&xs), show(&inner)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The one-object category whose composition is the algebra action.
pub fn palgebra_to_wec(alg: &PAlgebra, object: Elem) -> WeakEnrichedCat {
    let action = alg.action.clone();
    let gamma: Gamma = Arc::new(move |p, _, ys| {
        let xs: Vec<Elem> = ys.iter().rev().cloned().collect();
        action.get(&(p.clone(), xs)).cloned()
    });
    WeakEnrichedCat {
        objects: vec![object.clone()],
        homs: BTreeMap::from([((object.clone(), object), alg.carrier.clone())]),
        operad: alg.operad.clone(),
        gamma,
        bound: None,
    }
}

/// Reads a one-object category as an action on its single hom and checks the
/// algebra laws.
pub fn one_object_algebra_check(w: &WeakEnrichedCat) -> Result<Result<(), WecViolation>, OpweakError> {
    let [v] = w.objects.as_slice() else {
        return Err(OpweakError::NotOneObject(w.objects.len()));
    };
    let carrier = w.hom(v, v).to_vec();
    let mut action = BTreeMap::new();
    for k in 0..=w.operad.cap() {
        let path = vec![v.clone(); k + 1];
        let lists: Vec<&[Elem]> = vec![carrier.as_slice(); k];
        for xs in all_choices(&lists) {
            let ys: Vec<Elem> = xs.iter().rev().cloned().collect();
            for p in w.operad.labels(k) {
                if let Some(r) = (w.gamma)(p, &path, &ys) {
                    action.insert((p.clone(), xs.clone()), r);
                }
            }
        }
    }
    Ok(PAlgebra {
        carrier,
        operad: w.operad.clone(),
        action,
    }
    .check())
}
