use std::collections::{BTreeMap, BTreeSet};

use gcore::Elem;
use serde::Serialize;

use crate::error::CoalgebraError;
use crate::functor::EndofunctorSpec;

/// Stages `F^k(1)` for `k ≤ depth` with the connecting maps
/// `connect(k) = F^k(!) : F^{k+1}(1) → F^k(1)`.
pub struct ApproximantChain {
    functor: EndofunctorSpec,
    stages: Vec<Vec<Elem>>,
    connects: Vec<BTreeMap<Elem, Elem>>,
}

impl ApproximantChain {
    pub fn functor(&self) -> &EndofunctorSpec {
        &self.functor
    }

    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stage(&self, k: usize) -> &[Elem] {
        &self.stages[k]
    }

    pub fn stage_sizes(&self) -> Vec<usize> {
        self.stages.iter().map(Vec::len).collect()
    }

    /// `connect(k)` as a table on `stage(k + 1)`.
    pub fn connect(&self, k: usize) -> &BTreeMap<Elem, Elem> {
        &self.connects[k]
    }

    /// Elements of `stage(k)` that are images of `stage(k + 1)`.
    pub fn image_of_connect(&self, k: usize) -> BTreeSet<Elem> {
        self.connects[k].values().cloned().collect()
    }
}

/// Builds stages `0..=k`.
pub fn adamek_chain(f: &EndofunctorSpec, k: usize) -> Result<ApproximantChain, CoalgebraError> {
    let mut stages = vec![vec![Elem::unit()]];
    let mut connects: Vec<BTreeMap<Elem, Elem>> = Vec::new();
    for i in 0..k {
        let next = f.on_object(&stages[i]);
        let table = if i == 0 {
            next.iter().map(|e| (e.clone(), Elem::unit())).collect()
        } else {
            let prev = &connects[i - 1];
            let lower = |x: &Elem| {
                prev.get(x)
                    .cloned()
                    .ok_or_else(|| CoalgebraError::NotInCarrier(x.clone()))
            };
            next.iter()
                .map(|e| Ok((e.clone(), f.on_morphism(&lower, e)?)))
                .collect::<Result<BTreeMap<_, _>, CoalgebraError>>()?
        };
        stages.push(next);
        connects.push(table);
    }
    Ok(ApproximantChain {
        functor: f.clone(),
        stages,
        connects,
    })
}

/// A carrier with a structure map into `F(carrier)`.
#[derive(Clone, Debug)]
pub struct CoalgebraInstance {
    pub carrier: Vec<Elem>,
    pub structure: BTreeMap<Elem, Elem>,
}

impl CoalgebraInstance {
    /// Checks totality and that every value lies in `F(carrier)`.
    pub fn validate(&self, f: &EndofunctorSpec) -> Result<(), CoalgebraError> {
        let image: BTreeSet<Elem> = f.on_object(&self.carrier).into_iter().collect();
        for a in &self.carrier {
            let v = self
                .structure
                .get(a)
                .ok_or_else(|| CoalgebraError::NotTotal(a.clone()))?;
            if !image.contains(v) {
                return Err(CoalgebraError::OutsideFunctorImage {
                    elem: a.clone(),
                    image: v.clone(),
                });
            }
        }
        Ok(())
    }

    fn step(&self, a: &Elem) -> Result<&Elem, CoalgebraError> {
        self.structure
            .get(a)
            .ok_or_else(|| CoalgebraError::NotTotal(a.clone()))
    }
}

/// Image of `a` in `F^depth(1)` under the unique map into the chain.
pub fn unfold(
    f: &EndofunctorSpec,
    c: &CoalgebraInstance,
    a: &Elem,
    depth: usize,
) -> Result<Elem, CoalgebraError> {
    if depth == 0 {
        return Ok(Elem::unit());
    }
    let lower = |x: &Elem| unfold(f, c, x, depth - 1);
    f.on_morphism(&lower, c.step(a)?)
}

/// The word-functor coalgebra on `{0, …, |M| − 1}` with `m(i) = M[i]` and the
/// given successor map.
pub fn word_coalgebra(alphabet: &[String], next: &dyn Fn(usize) -> usize) -> CoalgebraInstance {
    let carrier: Vec<Elem> = (0..alphabet.len()).map(|i| Elem::atom(i.to_string())).collect();
    let structure = (0..alphabet.len())
        .map(|i| {
            (
                carrier[i].clone(),
                Elem::Tuple(vec![Elem::atom(&alphabet[i]), carrier[next(i)].clone()]),
            )
        })
        .collect();
    CoalgebraInstance { carrier, structure }
}

/// Reads a word-functor stage element `(m₁, (m₂, (…, *)))` as letters.
pub fn word_letters(e: &Elem) -> Result<Vec<String>, CoalgebraError> {
    let mut out = Vec::new();
    let mut cur = e;
    loop {
        match cur.as_tuple()? {
            [] => return Ok(out),
            [m, rest] => {
                out.push(m.as_atom()?.to_string());
                cur = rest;
            }
            _ => return Err(CoalgebraError::Shape(gcore::ShapeError::new("word prefix", cur))),
        }
    }
}

/// Outcome of comparing `stage(d + 1)` with `F(stage(d))`, both read as
/// prefixes of the limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambekReport {
    pub functor: String,
    pub depth: usize,
    pub prefixes_next: usize,
    pub functor_of_prefixes: usize,
    pub bijective: bool,
    /// An element of one side not matched on the other.
    pub unmatched: Option<String>,
}

/// Compares the depth-(d + 1) prefixes of the limit with `F` of the depth-d
/// prefixes. Prefixes at depth k are the image of `connect(k)`, so the probe
/// builds the chain to `depth + 2`.
pub fn lambek_probe(f: &EndofunctorSpec, depth: usize) -> Result<LambekReport, CoalgebraError> {
    let chain = adamek_chain(f, depth + 2)?;
    let next = chain.image_of_connect(depth + 1);
    let here: Vec<Elem> = chain.image_of_connect(depth).into_iter().collect();
    let target: BTreeSet<Elem> = f.on_object(&here).into_iter().collect();
    // stages are F-shaped terms, so the structure map is the identity on
    // representations and only the two sets need comparing
    let missing = target.iter().find(|t| !next.contains(t));
    let extra = next.iter().find(|t| !target.contains(t));
    let unmatched = missing.or(extra).map(Elem::to_string);
    Ok(LambekReport {
        functor: f.name(),
        depth,
        prefixes_next: next.len(),
        functor_of_prefixes: target.len(),
        bijective: unmatched.is_none(),
        unmatched,
    })
}
