//! Applicative structures, environments, term models and three-valued
//! satisfaction.

mod model;
mod sat;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::kernel::{Term, TriBool};
use crate::types::SimpleType;

pub use model::{parse_model_file, term_model, ModelFile, TermModel};
pub use sat::{
    satisfies, semantic_check, AtomVerdict, ModelRecord, SatVerdict, SemanticCheck, SemanticOutcome,
};

/// A domain with application, the three distinguished elements and
/// type-indexed carriers. Equality and membership may be bounded, hence
/// three-valued.
pub trait ApplicativeStructure {
    type Element: Clone + fmt::Display;

    fn apply(&self, d: &Self::Element, e: &Self::Element) -> Self::Element;
    fn s(&self) -> Self::Element;
    fn k(&self) -> Self::Element;
    fn i(&self) -> Self::Element;
    fn equal(&self, d: &Self::Element, e: &Self::Element) -> TriBool;
    fn member(&self, d: &Self::Element, sigma: &SimpleType) -> TriBool;
}

/// A total map from variable names to elements: finitely many explicit
/// bindings over a default.
#[derive(Clone)]
pub struct Environment<E> {
    bindings: BTreeMap<String, E>,
    default: Arc<dyn Fn(&str) -> E + Send + Sync>,
}

impl<E: Clone> Environment<E> {
    pub fn new(default: impl Fn(&str) -> E + Send + Sync + 'static) -> Self {
        Environment {
            bindings: BTreeMap::new(),
            default: Arc::new(default),
        }
    }

    pub fn lookup(&self, x: &str) -> E {
        match self.bindings.get(x) {
            Some(d) => d.clone(),
            None => (self.default)(x),
        }
    }

    /// This environment updated at `x`.
    pub fn with(&self, x: &str, d: E) -> Self {
        let mut out = self.clone();
        out.bindings.insert(x.to_string(), d);
        out
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &E)> {
        self.bindings.iter().map(|(x, d)| (x.as_str(), d))
    }
}

impl Environment<Term> {
    /// The standard environment of a term model, sending each variable to
    /// itself.
    pub fn standard() -> Self {
        Environment::new(Term::var)
    }
}

impl<E: fmt::Display> fmt::Debug for Environment<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.bindings.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

/// The meaning of `m` under `env`.
pub fn interpret<A: ApplicativeStructure>(
    m: &Term,
    env: &Environment<A::Element>,
    a: &A,
) -> A::Element {
    match m {
        Term::Var(x) => env.lookup(x),
        Term::S => a.s(),
        Term::K => a.k(),
        Term::I => a.i(),
        Term::App(f, x) => {
            let f = interpret(f, env, a);
            let x = interpret(x, env, a);
            a.apply(&f, &x)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    S,
    K,
    I,
    /// Application maps the carrier of `σ → τ` and that of `σ` into `τ`.
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checked: usize,
    /// Instances whose verdict stayed Unknown; neither passes nor failures.
    pub unknown: usize,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Types used by [`check_structure`] for the closure law.
pub fn default_sample_types() -> Vec<SimpleType> {
    ["a", "b", "a -> a", "a -> b", "b -> a", "a -> b -> a"]
        .iter()
        .map(|s| s.parse().expect("valid type"))
        .collect()
}

/// Checks the s/k/i equations on every sample triple and closure of the
/// carriers under application for the default sample types.
pub fn check_structure<A: ApplicativeStructure>(a: &A, samples: &[A::Element]) -> StructureReport {
    check_structure_with(a, samples, &default_sample_types())
}

pub fn check_structure_with<A: ApplicativeStructure>(
    a: &A,
    samples: &[A::Element],
    types: &[SimpleType],
) -> StructureReport {
    let mut r = StructureReport::default();
    let record =
        |r: &mut StructureReport, law: Law, els: &[&A::Element], v: TriBool, detail: String| {
            r.checked += 1;
            match v {
                TriBool::True => {}
                TriBool::Unknown(_) => r.unknown += 1,
                TriBool::False => r.violations.push(Violation {
                    law,
                    elements: els.iter().map(|e| e.to_string()).collect(),
                    detail,
                }),
            }
        };
    let (s, k, i) = (a.s(), a.k(), a.i());
    for d in samples {
        let lhs = a.apply(&i, d);
        let v = a.equal(&lhs, d);
        record(&mut r, Law::I, &[d], v, format!("i·d = {lhs}"));
        for e in samples {
            let lhs = a.apply(&a.apply(&k, d), e);
            let v = a.equal(&lhs, d);
            record(&mut r, Law::K, &[d, e], v, format!("k·d·e = {lhs}"));
            for f in samples {
                let lhs = a.apply(&a.apply(&a.apply(&s, d), e), f);
                let rhs = a.apply(&a.apply(d, f), &a.apply(e, f));
                let v = a.equal(&lhs, &rhs);
                record(&mut r, Law::S, &[d, e, f], v, format!("{lhs} vs {rhs}"));
            }
        }
    }
    for d in samples {
        for e in samples {
            let de = a.apply(d, e);
            for sigma in types {
                if !a.member(e, sigma).is_true() {
                    continue;
                }
                for tau in types {
                    let arrow = SimpleType::arrow(sigma.clone(), tau.clone());
                    if !a.member(d, &arrow).is_true() {
                        continue;
                    }
                    let v = a.member(&de, tau);
                    record(&mut r, Law::Closure, &[d, e], v, format!("{de} : {tau}"));
                }
            }
        }
    }
    r
}
