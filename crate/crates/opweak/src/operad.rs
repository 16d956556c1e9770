use std::collections::BTreeMap;
use std::fmt;

use gcore::{Elem, Obj, VGraph};
use serde::{Deserialize, Serialize};

use crate::error::OpweakError;

/// A non-symmetric operad with finitely many operations of each arity up to
/// `cap`, seen in the base of level `level` as discrete objects.
///
/// Operations are labels. In cells they appear as operation labels
/// `Op(label)` at depth 0 and `Op(())` deeper, where each `ops(k)` has a
/// single cell per hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinOperad {
    level: usize,
    cap: usize,
    ops: BTreeMap<usize, Vec<Elem>>,
    arity: BTreeMap<Elem, usize>,
    comp: BTreeMap<(Elem, Vec<Elem>), Elem>,
    unit: Elem,
}

/// JSON form: `{"cap":3,"ops":{"0":["e"],…},"comp":{"p|q1,q2":"r"},"unit":"u"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadSpec {
    pub cap: usize,
    pub ops: BTreeMap<String, Vec<String>>,
    pub comp: BTreeMap<String, String>,
    pub unit: String,
}

/// A failed operad law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperadViolation {
    pub law: String,
    pub arities: Vec<usize>,
    pub elements: Vec<String>,
    pub detail: String,
}

impl fmt::Display for OperadViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at arities {:?} on [{}]: {}",
            self.law,
            self.arities,
            self.elements.join(", "),
            self.detail
        )
    }
}

/// Vectors of `m` arities with sum at most `cap`.
pub fn arity_vectors(m: usize, cap: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=cap {
        for mut rest in arity_vectors(m - 1, cap - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian(lists: &[&[Elem]]) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                l.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// A discrete object of level `level` on the given points: every point has a
/// single endomorphism cell, labelled `Op(())`, at every depth.
pub fn discrete(points: Vec<Elem>, level: usize) -> Obj {
    if level == 0 {
        return Obj::Set(points);
    }
    let homs = points
        .iter()
        .map(|p| ((p.clone(), p.clone()), discrete(vec![Elem::op(Elem::unit())], level - 1)))
        .collect();
    Obj::Graph(Box::new(
        VGraph::new(level - 1, points, homs).expect("loops on listed points"),
    ))
}

impl FinOperad {
    /// Builds an operad from its tables. Labels must be distinct across
    /// arities and composites must land in the right arity.
    pub fn new(
        cap: usize,
        ops: BTreeMap<usize, Vec<Elem>>,
        comp: BTreeMap<(Elem, Vec<Elem>), Elem>,
        unit: Elem,
    ) -> Result<Self, OpweakError> {
        let mut arity = BTreeMap::new();
        for (&k, labels) in &ops {
            if k > cap {
                return Err(OpweakError::OperadFormat(format!("arity {k} above cap {cap}")));
            }
            for l in labels {
                if arity.insert(l.clone(), k).is_some() {
                    return Err(OpweakError::OperadFormat(format!("label {l} listed twice")));
                }
            }
        }
        let ar = |l: &Elem| {
            arity
                .get(l)
                .copied()
                .ok_or_else(|| OpweakError::OperadFormat(format!("unknown label {l}")))
        };
        if ar(&unit)? != 1 {
            return Err(OpweakError::OperadFormat(format!("unit {unit} is not unary")));
        }
        for ((p, qs), r) in &comp {
            if ar(p)? != qs.len() {
                return Err(OpweakError::OperadFormat(format!("{p} takes {} inputs", ar(p)?)));
            }
            let total = qs.iter().map(ar).sum::<Result<usize, _>>()?;
            if ar(r)? != total {
                return Err(OpweakError::OperadFormat(format!(
                    "composite {r} of {p} should have arity {total}"
                )));
            }
        }
        Ok(FinOperad {
            level: 0,
            cap,
            ops,
            arity,
            comp,
            unit,
        })
    }

    pub fn from_spec(spec: &OperadSpec) -> Result<Self, OpweakError> {
        let mut ops = BTreeMap::new();
        for (k, labels) in &spec.ops {
            let k: usize = k
                .parse()
                .map_err(|_| OpweakError::OperadFormat(format!("arity key {k:?}")))?;
            ops.insert(k, labels.iter().map(Elem::atom).collect());
        }
        let mut comp = BTreeMap::new();
        for (key, r) in &spec.comp {
            let (p, qs) = key
                .split_once('|')
                .ok_or_else(|| OpweakError::OperadFormat(format!("composite key {key:?}")))?;
            let qs: Vec<Elem> = if qs.is_empty() {
                Vec::new()
            } else {
                qs.split(',').map(Elem::atom).collect()
            };
            comp.insert((Elem::atom(p), qs), Elem::atom(r));
        }
        FinOperad::new(spec.cap, ops, comp, Elem::atom(&spec.unit))
    }

    pub fn to_spec(&self) -> OperadSpec {
        let show = |e: &Elem| e.to_string();
        OperadSpec {
            cap: self.cap,
            ops: self
                .ops
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(show).collect()))
                .collect(),
            comp: self
                .comp
                .iter()
                .map(|((p, qs), r)| {
                    let qs: Vec<String> = qs.iter().map(show).collect();
                    (format!("{p}|{}", qs.join(",")), show(r))
                })
                .collect(),
            unit: show(&self.unit),
        }
    }

    /// One operation `*k` of each arity `k ≤ cap`.
    pub fn terminal(cap: usize) -> Self {
        Self::singletons(cap, "*")
    }

    /// The operad for monoids: one operation per arity, under the given
    /// label prefix, so its algebras are monoids.
    pub fn associative(cap: usize) -> Self {
        Self::singletons(cap, "w")
    }

    fn singletons(cap: usize, prefix: &str) -> Self {
        let label = |k: usize| Elem::atom(format!("{prefix}{k}"));
        let ops = (0..=cap).map(|k| (k, vec![label(k)])).collect();
        let mut comp = BTreeMap::new();
        for m in 0..=cap {
            for ks in arity_vectors(m, cap) {
                let total = ks.iter().sum();
                comp.insert((label(m), ks.into_iter().map(label).collect()), label(total));
            }
        }
        FinOperad::new(cap, ops, comp, label(1)).expect("well-formed tables")
    }

    /// Operations of arity `k` are `Z/m`, composition adds labels. With
    /// `nullary` false there are no constants.
    pub fn cyclic(m: usize, cap: usize, nullary: bool) -> Self {
        let label = |i: usize, k: usize| Elem::atom(format!("{i}@{k}"));
        let lowest = if nullary { 0 } else { 1 };
        let ops: BTreeMap<usize, Vec<Elem>> =
            (lowest..=cap).map(|k| (k, (0..m).map(|i| label(i, k)).collect())).collect();
        let value = |e: &Elem| -> usize {
            e.as_atom().unwrap().split('@').next().unwrap().parse().unwrap()
        };
        let mut comp = BTreeMap::new();
        for (&k, ps) in &ops {
            for ks in arity_vectors(k, cap) {
                if ks.iter().any(|a| !ops.contains_key(a)) {
                    continue;
                }
                let lists: Vec<&[Elem]> = ks.iter().map(|a| ops[a].as_slice()).collect();
                let total: usize = ks.iter().sum();
                for p in ps {
                    for qs in cartesian(&lists) {
                        let v = (value(p) + qs.iter().map(value).sum::<usize>()) % m;
                        comp.insert((p.clone(), qs), label(v, total));
                    }
                }
            }
        }
        FinOperad::new(cap, ops, comp, label(0, 1)).expect("well-formed tables")
    }

    /// The same operad seen in the base of the given level.
    pub fn at_level(&self, level: usize) -> Self {
        FinOperad {
            level,
            ..self.clone()
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn unit_label(&self) -> &Elem {
        &self.unit
    }

    /// Labels of arity `k`.
    pub fn labels(&self, k: usize) -> &[Elem] {
        self.ops.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn arity_of(&self, label: &Elem) -> Option<usize> {
        self.arity.get(label).copied()
    }

    /// `ops(k)` as an object of the operad's base.
    pub fn ops(&self, k: usize) -> Obj {
        discrete(self.labels(k).iter().cloned().map(Elem::op).collect(), self.level)
    }

    pub fn compose(&self, p: &Elem, qs: &[Elem]) -> Option<&Elem> {
        self.comp.get(&(p.clone(), qs.to_vec()))
    }

    /// Composition on operation cells: the table at depth 0, `Op(())` deeper.
    pub fn compose_cell(&self, depth: usize, p: &Elem, qs: &[Elem]) -> Result<Elem, OpweakError> {
        if depth > 1 {
            return Ok(Elem::op(Elem::unit()));
        }
        let strip = |e: &Elem| match e {
            Elem::Op(x) => Ok((**x).clone()),
            _ => Err(OpweakError::Shape(gcore::ShapeError::new("operation label", e))),
        };
        let p = strip(p)?;
        let qs = qs.iter().map(strip).collect::<Result<Vec<_>, _>>()?;
        self.compose(&p, &qs)
            .map(|r| Elem::op(r.clone()))
            .ok_or_else(|| OpweakError::MissingComposite(describe(&p, &qs)))
    }

    /// The unit as an operation cell at the given depth.
    pub fn unit_cell(&self, depth: usize) -> Elem {
        if depth > 1 {
            Elem::op(Elem::unit())
        } else {
            Elem::op(self.unit.clone())
        }
    }

    /// Unit and associativity laws for every combination of arities within
    /// the cap.
    pub fn check_laws(&self) -> Result<(), OperadViolation> {
        let fail = |law: &str, arities: Vec<usize>, elements: Vec<&Elem>, detail: String| OperadViolation {
            law: law.into(),
            arities,
            elements: elements.iter().map(|e| e.to_string()).collect(),
            detail,
        };
        let missing = |p: &Elem, qs: &[Elem]| format!("no composite for {}", describe(p, qs));
        for (&k, ps) in &self.ops {
            for p in ps {
                match self.compose(&self.unit, std::slice::from_ref(p)) {
                    Some(r) if r == p => {}
                    Some(r) => return Err(fail("left unit", vec![1, k], vec![p], format!("got {r}"))),
                    None => return Err(fail("left unit", vec![1, k], vec![p], missing(&self.unit, std::slice::from_ref(p)))),
                }
                let units = vec![self.unit.clone(); k];
                match self.compose(p, &units) {
                    Some(r) if r == p => {}
                    Some(r) => return Err(fail("right unit", vec![k], vec![p], format!("got {r}"))),
                    None => return Err(fail("right unit", vec![k], vec![p], missing(p, &units))),
                }
            }
        }
        for (&m, ps) in &self.ops {
            for ks in arity_vectors(m, self.cap) {
                let q_lists: Vec<&[Elem]> = ks.iter().map(|&a| self.labels(a)).collect();
                let total: usize = ks.iter().sum();
                for ls in arity_vectors(total, self.cap) {
                    let r_lists: Vec<&[Elem]> = ls.iter().map(|&a| self.labels(a)).collect();
                    for p in ps {
                        for qs in cartesian(&q_lists) {
                            for rs in cartesian(&r_lists) {
                                let mut arities = vec![m];
                                arities.extend(&ks);
                                arities.extend(&ls);
                                let mut elements = vec![p];
                                elements.extend(&qs);
                                elements.extend(&rs);
                                let lhs = self
                                    .compose(p, &qs)
                                    .ok_or_else(|| missing(p, &qs))
                                    .and_then(|pq| self.compose(pq, &rs).ok_or_else(|| missing(pq, &rs)));
                                let mut inner = Vec::new();
                                let mut offset = 0;
                                let mut rhs_err = None;
                                for (q, &k) in qs.iter().zip(&ks) {
                                    let block = &rs[offset..offset + k];
                                    offset += k;
                                    match self.compose(q, block) {
                                        Some(x) => inner.push(x.clone()),
                                        None => rhs_err = Some(missing(q, block)),
                                    }
                                }
                                let rhs = match rhs_err {
                                    Some(e) => Err(e),
                                    None => self.compose(p, &inner).ok_or_else(|| missing(p, &inner)),
                                };
                                match (lhs, rhs) {
                                    (Ok(l), Ok(r)) if l == r => {}
                                    (Ok(l), Ok(r)) => {
                                        return Err(fail("associativity", arities, elements, format!("{l} ≠ {r}")))
                                    }
                                    (Err(e), _) | (_, Err(e)) => {
                                        return Err(fail("associativity", arities, elements, e))
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces one composite, for mutation tests.
    pub fn with_composite(mut self, p: Elem, qs: Vec<Elem>, r: Elem) -> Self {
        self.comp.insert((p, qs), r);
        self
    }

    /// All `(p, qs)` pairs with a composite, in table order.
    pub fn composites(&self) -> impl Iterator<Item = (&(Elem, Vec<Elem>), &Elem)> {
        self.comp.iter()
    }
}

fn describe(p: &Elem, qs: &[Elem]) -> String {
    let qs: Vec<String> = qs.iter().map(Elem::to_string).collect();
    format!("{p}({})", qs.join(", "))
}

/// Every way of choosing one element from each list.
pub fn all_choices(lists: &[&[Elem]]) -> Vec<Vec<Elem>> {
    cartesian(lists)
}
