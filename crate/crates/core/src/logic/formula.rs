use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::ParseError;
use crate::kernel::Term;
use crate::types::{atom_in_cl, SimpleType, Statement};

/// Formulas over typed statements. Conjunction, disjunction and
/// equivalence are abbreviations and expand on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Statement),
    Not(Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(subject: Term, predicate: SimpleType) -> Self {
        Formula::Atom(Statement::new(subject, predicate))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Arc::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    /// `¬(a ⇒ ¬b)`
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::implies(a, Formula::not(b)))
    }

    /// `¬a ⇒ b`
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::implies(Formula::not(a), b)
    }

    /// `(a ⇒ b) ∧ (b ⇒ a)`
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// `α ∧ ¬α` for the first atom of `theory`, or for `I : a -> a` when
    /// the theory has no atoms.
    pub fn bottom(theory: &[Formula]) -> Self {
        let alpha = theory
            .iter()
            .flat_map(|f| f.atoms())
            .next()
            .map(|s| Formula::Atom(s.clone()))
            .unwrap_or_else(|| {
                Formula::atom(
                    Term::I,
                    SimpleType::arrow(SimpleType::var("a"), SimpleType::var("a")),
                )
            });
        Formula::and(alpha.clone(), Formula::not(alpha))
    }

    /// `t1 ⇒ (t2 ⇒ ... ⇒ goal)`
    pub fn implication_chain(premises: &[Formula], goal: Formula) -> Self {
        premises
            .iter()
            .rev()
            .fold(goal, |acc, p| Formula::implies(p.clone(), acc))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        crate::syntax::parse_formula(src)
    }

    pub fn as_implies(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Not(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&Statement> {
        match self {
            Formula::Atom(s) => Some(s),
            _ => None,
        }
    }

    /// Distinct atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<&Statement> {
        let mut out: Vec<&Statement> = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(s) => {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
                Formula::Not(a) => stack.push(a),
                Formula::Implies(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Height of the formula tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.depth(),
            Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Truth value under a total assignment to the atoms.
    pub fn eval(&self, v: &dyn Fn(&Statement) -> bool) -> bool {
        match self {
            Formula::Atom(s) => v(s),
            Formula::Not(a) => !a.eval(v),
            Formula::Implies(a, b) => !a.eval(v) || b.eval(v),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // operand position: negations print bare, everything else in parens
        fn operand(g: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match g {
                Formula::Not(_) => write!(f, "{g}"),
                _ => write!(f, "({g})"),
            }
        }
        match self {
            Formula::Atom(s) => write!(f, "{s}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                operand(a, f)
            }
            Formula::Implies(a, b) => {
                operand(a, f)?;
                f.write_str(" => ")?;
                operand(b, f)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Statement> for Formula {
    fn from(s: Statement) -> Self {
        Formula::Atom(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Wf {
    WellFormed,
    IllFormed { atom: Statement, reason: String },
}

impl Wf {
    pub fn is_well_formed(&self) -> bool {
        matches!(self, Wf::WellFormed)
    }
}

/// Every atom must be typable from some basis.
pub fn wf_formula(f: &Formula) -> Wf {
    wf_formula_cached(f, &mut HashMap::new())
}

pub(crate) fn wf_formula_cached(f: &Formula, cache: &mut HashMap<Statement, bool>) -> Wf {
    for s in f.atoms() {
        let ok = *cache
            .entry(s.clone())
            .or_insert_with(|| atom_in_cl(&s.subject, &s.predicate));
        if !ok {
            return Wf::IllFormed {
                atom: s.clone(),
                reason: format!("{s} is not typable from any basis"),
            };
        }
    }
    Wf::WellFormed
}
