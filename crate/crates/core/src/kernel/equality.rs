//! Bounded weak and extensional equality.
//!
//! Weak equality is decided by comparing normal forms (confluence makes
//! distinct normal forms a proof of disequality). Extensional equality uses
//! two routes: the fresh-argument criterion (apply both sides to the same
//! fresh variables and compare weakly), and a canonical extensional normal
//! form obtained by head-reducing applications to fresh variables, recursing
//! into the arguments and abstracting the variables back with the
//! `I`/`K`/`S`/eta bracket algorithm. Two terms are extensionally equal iff
//! their canonical forms are identical, so disagreement of fully computed
//! canonical forms is a definitive `False`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::reduce::{head_normalize, normalize, Budget, Normalization, MAX_NODES};
use super::term::{FreshVars, Term};

/// Three-valued verdict. `Unknown` is only produced when a resource bound ran
/// out; `True` and `False` are definitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TriBool {
    True,
    False,
    Unknown(String),
}

impl TriBool {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        TriBool::Unknown(reason.into())
    }

    pub fn is_true(&self) -> bool {
        matches!(self, TriBool::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TriBool::False)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriBool::Unknown(_))
    }

    /// `Some(b)` for definitive verdicts.
    pub fn definite(&self) -> Option<bool> {
        match self {
            TriBool::True => Some(true),
            TriBool::False => Some(false),
            TriBool::Unknown(_) => None,
        }
    }

    pub fn negate(&self) -> TriBool {
        match self {
            TriBool::True => TriBool::False,
            TriBool::False => TriBool::True,
            u => u.clone(),
        }
    }

    /// Kleene implication: forced whenever the antecedent is false or the
    /// consequent is true.
    pub fn implies(&self, other: &TriBool) -> TriBool {
        match (self, other) {
            (TriBool::False, _) | (_, TriBool::True) => TriBool::True,
            (TriBool::True, TriBool::False) => TriBool::False,
            (TriBool::Unknown(r), _) | (_, TriBool::Unknown(r)) => TriBool::Unknown(r.clone()),
        }
    }

    pub fn and(&self, other: &TriBool) -> TriBool {
        match (self, other) {
            (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
            (TriBool::True, TriBool::True) => TriBool::True,
            (TriBool::Unknown(r), _) | (_, TriBool::Unknown(r)) => TriBool::Unknown(r.clone()),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TriBool::True => "True",
            TriBool::False => "False",
            TriBool::Unknown(_) => "Unknown",
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriBool::Unknown(r) => write!(f, "Unknown ({r})"),
            v => f.write_str(v.label()),
        }
    }
}

impl Serialize for TriBool {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Weak equality within `fuel` steps per side.
pub fn weak_equal(m: &Term, n: &Term, fuel: u64) -> TriBool {
    if m == n {
        return TriBool::True;
    }
    match (normalize(m, fuel), normalize(n, fuel)) {
        (Normalization::NormalForm { term: a, .. }, Normalization::NormalForm { term: b, .. }) => {
            TriBool::from_bool(a == b)
        }
        _ => TriBool::unknown(format!("no normal form within {fuel} steps")),
    }
}

/// Extensional weak equality within `fuel` steps and `arity_bound` fresh
/// arguments.
pub fn ext_equal(m: &Term, n: &Term, fuel: u64, arity_bound: usize) -> TriBool {
    if m == n {
        return TriBool::True;
    }
    let mut fresh = FreshVars::avoiding([m, n]);
    let args = fresh.take(arity_bound);
    for k in 0..=arity_bound {
        let mk = Term::apply_all(m.clone(), args[..k].iter().cloned());
        let nk = Term::apply_all(n.clone(), args[..k].iter().cloned());
        if weak_equal(&mk, &nk, fuel).is_true() {
            return TriBool::True;
        }
    }
    let mut fresh = FreshVars::avoiding([m, n]);
    let left = ext_normal_form_with(m, &mut fresh, fuel, arity_bound);
    let right = ext_normal_form_with(n, &mut fresh, fuel, arity_bound);
    match (left, right) {
        (Ok(a), Ok(b)) => TriBool::from_bool(a == b),
        (Err(e), _) | (_, Err(e)) => TriBool::Unknown(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnfError {
    Fuel(u64),
    Arity(usize),
    Depth,
    Size,
}

impl fmt::Display for EnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnfError::Fuel(n) => write!(f, "fuel of {n} steps exhausted"),
            EnfError::Arity(k) => write!(f, "more than {k} fresh arguments needed"),
            EnfError::Depth => f.write_str("nesting limit reached"),
            EnfError::Size => f.write_str("term size limit reached"),
        }
    }
}

const MAX_ENF_DEPTH: usize = 512;

/// Canonical representative of the extensional equality class of `m`, or the
/// bound that stopped the computation. The representative contains exactly
/// the variables that every member of the class must contain.
pub fn ext_normal_form(m: &Term, fuel: u64, arity_bound: usize) -> Result<Term, EnfError> {
    let mut fresh = FreshVars::avoiding([m]);
    ext_normal_form_with(m, &mut fresh, fuel, arity_bound)
}

fn ext_normal_form_with(
    m: &Term,
    fresh: &mut FreshVars,
    fuel: u64,
    arity_bound: usize,
) -> Result<Term, EnfError> {
    let mut budget = Budget::new(fuel);
    enf(m.clone(), fresh, &mut budget, arity_bound, 0)
}

fn enf(
    m: Term,
    fresh: &mut FreshVars,
    budget: &mut Budget,
    arity_bound: usize,
    depth: usize,
) -> Result<Term, EnfError> {
    if depth > MAX_ENF_DEPTH {
        return Err(EnfError::Depth);
    }
    budget.nodes += 1;
    if budget.nodes >= MAX_NODES {
        return Err(EnfError::Size);
    }
    let mut bound: Vec<Term> = Vec::new();
    let mut t = m;
    let (head, args) = loop {
        t = head_normalize(t, budget).map_err(|_| EnfError::Fuel(budget.fuel))?;
        let (head, args) = t.spine();
        if head.is_var() {
            break (head.clone(), args.into_iter().cloned().collect::<Vec<_>>());
        }
        if bound.len() == arity_bound {
            return Err(EnfError::Arity(arity_bound));
        }
        let x = fresh.next_var();
        bound.push(x.clone());
        t = Term::app(t, x);
    };
    let mut body = head;
    for a in args {
        let a = enf(a, fresh, budget, arity_bound, depth + 1)?;
        body = Term::app(body, a);
    }
    for x in bound.iter().rev() {
        body = abstract_var(x.as_var().expect("fresh variable"), &body);
    }
    Ok(body)
}

/// Bracket abstraction `[x]M` with the K and eta optimisations.
pub fn abstract_var(x: &str, m: &Term) -> Term {
    if !m.occurs(x) {
        return Term::app(Term::K, m.clone());
    }
    match m {
        Term::Var(_) => Term::I,
        Term::App(f, a) => {
            if a.as_var() == Some(x) && !f.occurs(x) {
                (**f).clone()
            } else {
                Term::apply_all(Term::S, [abstract_var(x, f), abstract_var(x, a)])
            }
        }
        _ => unreachable!("constants do not contain variables"),
    }
}
