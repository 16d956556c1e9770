use std::collections::BTreeSet;
use std::sync::Arc;

use gcore::Elem;
use serde::{Deserialize, Serialize};

use crate::error::CoalgebraError;

/// What a functor's carriers are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    FiniteSet,
}

/// A map between finite carriers, applied elementwise.
pub type ElemFn<'a> = dyn Fn(&Elem) -> Result<Elem, CoalgebraError> + 'a;

/// An endofunctor on finite sets. Functors whose value on a finite set is
/// infinite enumerate a graded fragment instead.
pub trait Endofunctor: Send + Sync {
    fn name(&self) -> String;
    fn base_kind(&self) -> BaseKind {
        BaseKind::FiniteSet
    }
    fn on_object(&self, x: &[Elem]) -> Vec<Elem>;
    fn on_morphism(&self, f: &ElemFn<'_>, x: &Elem) -> Result<Elem, CoalgebraError>;
}

pub type EndofunctorSpec = Arc<dyn Endofunctor>;

pub struct Identity;

impl Endofunctor for Identity {
    fn name(&self) -> String {
        "id".into()
    }
    fn on_object(&self, x: &[Elem]) -> Vec<Elem> {
        x.to_vec()
    }
    fn on_morphism(&self, f: &ElemFn<'_>, x: &Elem) -> Result<Elem, CoalgebraError> {
        f(x)
    }
}

/// `X ↦ M × X`.
pub struct Word {
    alphabet: Vec<String>,
}

impl Endofunctor for Word {
    fn name(&self) -> String {
        format!("word[{}]", self.alphabet.join(","))
    }
    fn on_object(&self, x: &[Elem]) -> Vec<Elem> {
        self.alphabet
            .iter()
            .flat_map(|m| x.iter().map(move |e| Elem::Tuple(vec![Elem::atom(m), e.clone()])))
            .collect()
    }
    fn on_morphism(&self, f: &ElemFn<'_>, x: &Elem) -> Result<Elem, CoalgebraError> {
        match x.as_tuple()? {
            [m, rest] => Ok(Elem::Tuple(vec![m.clone(), f(rest)?])),
            _ => Err(CoalgebraError::Shape(gcore::ShapeError::new("letter and tail", x))),
        }
    }
}

/// `X ↦ X*`, finite strings, cut down to the terms of grade at most `grade`.
pub struct FreeMonoid {
    grade: usize,
}

impl FreeMonoid {
    pub fn grade(&self) -> usize {
        self.grade
    }
}

impl Endofunctor for FreeMonoid {
    fn name(&self) -> String {
        format!("list≤{}", self.grade)
    }
    fn on_object(&self, x: &[Elem]) -> Vec<Elem> {
        let lists: Vec<&[Elem]> = vec![x; self.grade];
        let mut out = Vec::new();
        for len in 0..=self.grade {
            out.extend(gcore::base::bounded_tuples(&lists[..len], self.grade));
        }
        out
    }
    fn on_morphism(&self, f: &ElemFn<'_>, x: &Elem) -> Result<Elem, CoalgebraError> {
        x.as_tuple()?
            .iter()
            .map(f)
            .collect::<Result<Vec<_>, _>>()
            .map(Elem::Tuple)
    }
}

pub fn identity_functor() -> EndofunctorSpec {
    Arc::new(Identity)
}

pub fn word_functor<S: AsRef<str>>(alphabet: &[S]) -> EndofunctorSpec {
    let mut seen = BTreeSet::new();
    let alphabet = alphabet
        .iter()
        .map(|s| s.as_ref().to_string())
        .filter(|s| seen.insert(s.clone()))
        .collect();
    Arc::new(Word { alphabet })
}

/// Strings whose grade is at most `grade`.
pub fn free_monoid_functor(grade: usize) -> EndofunctorSpec {
    Arc::new(FreeMonoid { grade })
}

/// JSON form of a built-in functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorDescriptor {
    Identity,
    Word { alphabet: Vec<String> },
    FreeMonoid { grade: usize },
}

impl FunctorDescriptor {
    pub fn build(&self) -> EndofunctorSpec {
        match self {
            FunctorDescriptor::Identity => identity_functor(),
            FunctorDescriptor::Word { alphabet } => word_functor(alphabet),
            FunctorDescriptor::FreeMonoid { grade } => free_monoid_functor(*grade),
        }
    }
}
