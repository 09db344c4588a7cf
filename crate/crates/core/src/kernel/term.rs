use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::ParseError;

/// An untyped combinatory logic term.
///
/// Application is binary; `S K K x` is `App(App(App(S, K), K), x)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    S,
    K,
    I,
    App(Arc<Term>, Arc<Term>),
}

/// Which primitive combinator heads a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Combinator {
    S,
    K,
    I,
}

impl Combinator {
    /// Number of arguments needed to form a redex.
    pub fn arity(self) -> usize {
        match self {
            Combinator::S => 3,
            Combinator::K => 2,
            Combinator::I => 1,
        }
    }

    pub fn term(self) -> Term {
        match self {
            Combinator::S => Term::S,
            Combinator::K => Term::K,
            Combinator::I => Term::I,
        }
    }
}

impl Term {
    /// Builds a variable. Panics if `name` is not a valid variable identifier.
    pub fn var(name: &str) -> Term {
        assert!(is_var_name(name), "invalid term variable name {name:?}");
        Term::Var(Arc::from(name))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// Left-associated application `head a1 a2 ... an`.
    pub fn apply_all<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn parse(src: &str) -> Result<Term, ParseError> {
        crate::syntax::parse_term(src)
    }

    pub fn combinator(&self) -> Option<Combinator> {
        match self {
            Term::S => Some(Combinator::S),
            Term::K => Some(Combinator::K),
            Term::I => Some(Combinator::I),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Splits `h a1 ... an` into `h` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Number of nodes (leaves and applications).
    pub fn size(&self) -> usize {
        match self {
            Term::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::App(f, a) => 1 + f.depth().max(a.depth()),
            _ => 0,
        }
    }

    /// The variables occurring in the term. There are no binders, so every
    /// occurrence is free.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !out.contains(&**x) {
                    out.insert(x.to_string());
                }
            }
            Term::App(f, a) => {
                f.collect_vars(out);
                a.collect_vars(out);
            }
            _ => {}
        }
    }

    pub fn occurs(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::App(f, a) => f.occurs(x) || a.occurs(x),
            _ => false,
        }
    }

    /// `self{n/x}`: replaces every occurrence of `x` by `n`.
    pub fn substitute(&self, x: &str, n: &Term) -> Term {
        if !self.occurs(x) {
            return self.clone();
        }
        match self {
            Term::Var(_) => n.clone(),
            Term::App(f, a) => Term::app(f.substitute(x, n), a.substitute(x, n)),
            _ => self.clone(),
        }
    }

    /// All subterms in pre-order, the term itself first.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let Term::App(f, a) = t {
                stack.push(a);
                stack.push(f);
            }
        }
        out
    }
}

pub fn free_vars(m: &Term) -> BTreeSet<String> {
    m.free_vars()
}

pub fn substitute(m: &Term, x: &str, n: &Term) -> Term {
    m.substitute(x, n)
}

/// Variable names are lowercase-initial identifiers.
pub fn is_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Deterministic supply of variables `v0, v1, ...` skipping names in `avoid`.
#[derive(Debug, Clone)]
pub struct FreshVars {
    avoid: BTreeSet<String>,
    next: usize,
}

impl FreshVars {
    pub fn avoiding<'a, I: IntoIterator<Item = &'a Term>>(terms: I) -> Self {
        let mut avoid = BTreeSet::new();
        for t in terms {
            t.collect_vars(&mut avoid);
        }
        FreshVars { avoid, next: 0 }
    }

    pub fn next_var(&mut self) -> Term {
        loop {
            let name = format!("v{}", self.next);
            self.next += 1;
            if !self.avoid.contains(&name) {
                return Term::Var(Arc::from(name.as_str()));
            }
        }
    }

    pub fn take(&mut self, k: usize) -> Vec<Term> {
        (0..k).map(|_| self.next_var()).collect()
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::S => f.write_str("S"),
            Term::K => f.write_str("K"),
            Term::I => f.write_str("I"),
            Term::App(fun, arg) => {
                write!(f, "{fun} ")?;
                if matches!(**arg, Term::App(..)) {
                    write!(f, "({arg})")
                } else {
                    write!(f, "{arg}")
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::parse(s)
    }
}
