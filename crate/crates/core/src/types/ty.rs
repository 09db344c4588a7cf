use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::error::ParseError;
use crate::kernel::Term;

/// A simple type: a type variable or an arrow.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    Var(Arc<str>),
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
}

impl SimpleType {
    pub fn var(name: &str) -> Self {
        SimpleType::Var(Arc::from(name))
    }

    pub fn arrow(dom: SimpleType, cod: SimpleType) -> Self {
        SimpleType::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `t1 -> t2 -> ... -> result`.
    pub fn arrows<I: IntoIterator<Item = SimpleType>>(args: I, result: SimpleType) -> Self
    where
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| SimpleType::arrow(a, acc))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        crate::syntax::parse_type(src)
    }

    pub fn as_arrow(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self {
            SimpleType::Arrow(d, c) => Some((d, c)),
            SimpleType::Var(_) => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            SimpleType::Var(a) => {
                if !out.contains(&**a) {
                    out.insert(a.to_string());
                }
            }
            SimpleType::Arrow(d, c) => {
                d.collect_vars(out);
                c.collect_vars(out);
            }
        }
    }

    /// Variables in order of first occurrence, left to right.
    pub fn vars_in_order(&self) -> Vec<String> {
        fn go(t: &SimpleType, out: &mut Vec<String>) {
            match t {
                SimpleType::Var(a) => {
                    if !out.iter().any(|b| **b == **a) {
                        out.push(a.to_string());
                    }
                }
                SimpleType::Arrow(d, c) => {
                    go(d, out);
                    go(c, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn occurs(&self, a: &str) -> bool {
        match self {
            SimpleType::Var(b) => &**b == a,
            SimpleType::Arrow(d, c) => d.occurs(a) || c.occurs(a),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            SimpleType::Var(_) => 1,
            SimpleType::Arrow(d, c) => 1 + d.size() + c.size(),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(t: &SimpleType, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                SimpleType::Var(_) => write!(f, "{t}"),
                SimpleType::Arrow(..) => write!(f, "({t})"),
            }
        }
        match self {
            SimpleType::Var(a) => f.write_str(a),
            SimpleType::Arrow(d, c) => {
                side(d, f)?;
                f.write_str(" -> ")?;
                side(c, f)
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type({self})")
    }
}

impl FromStr for SimpleType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SimpleType::parse(s)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Names `a, b, ..., z, a1, b1, ...` in order.
pub(crate) fn type_var_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

/// A finite map from term variables to types.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    entries: BTreeMap<String, SimpleType>,
}

impl Basis {
    pub fn new() -> Self {
        Basis::default()
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        crate::syntax::parse_basis(src)
    }

    /// Adds or replaces a declaration, returning the previous type.
    pub fn insert(&mut self, x: &str, ty: SimpleType) -> Option<SimpleType> {
        self.entries.insert(x.to_string(), ty)
    }

    pub fn with(mut self, x: &str, ty: SimpleType) -> Self {
        self.insert(x, ty);
        self
    }

    pub fn get(&self, x: &str) -> Option<&SimpleType> {
        self.entries.get(x)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.entries.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SimpleType)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn dom(&self) -> BTreeSet<String> {
        self.entries.keys().cloned().collect()
    }

    /// The types assigned, `|Γ|`.
    pub fn types(&self) -> Vec<&SimpleType> {
        self.entries.values().collect()
    }

    pub fn type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.entries.values() {
            t.collect_vars(&mut out);
        }
        out
    }

    /// `self ⊆ other` as sets of declarations.
    pub fn is_subset(&self, other: &Basis) -> bool {
        self.iter().all(|(x, t)| other.get(x) == Some(t))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis{{{self}}}")
    }
}

impl FromStr for Basis {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Basis::parse(s)
    }
}

impl FromIterator<(String, SimpleType)> for Basis {
    fn from_iter<T: IntoIterator<Item = (String, SimpleType)>>(iter: T) -> Self {
        Basis {
            entries: iter.into_iter().collect(),
        }
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Γ ↾ xs`.
pub fn restrict_basis<S: AsRef<str>>(gamma: &Basis, xs: &[S]) -> Basis {
    gamma
        .iter()
        .filter(|(x, _)| xs.iter().any(|y| y.as_ref() == *x))
        .map(|(x, t)| (x.to_string(), t.clone()))
        .collect()
}

/// A type assignment statement `M : σ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub subject: Term,
    pub predicate: SimpleType,
}

impl Statement {
    pub fn new(subject: Term, predicate: SimpleType) -> Self {
        Statement { subject, predicate }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        crate::syntax::parse_statement(src)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.subject, self.predicate)
    }
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Statement({self})")
    }
}

impl FromStr for Statement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statement::parse(s)
    }
}

impl Serialize for Statement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite map from type variables to types, kept idempotent.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TypeSubstitution {
    map: BTreeMap<String, SimpleType>,
}

impl TypeSubstitution {
    pub fn new() -> Self {
        TypeSubstitution::default()
    }

    pub fn get(&self, a: &str) -> Option<&SimpleType> {
        self.map.get(a)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SimpleType)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn apply(&self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Var(a) => self.map.get(&**a).cloned().unwrap_or_else(|| t.clone()),
            SimpleType::Arrow(d, c) => SimpleType::arrow(self.apply(d), self.apply(c)),
        }
    }

    pub fn from_map(map: BTreeMap<String, SimpleType>) -> Self {
        TypeSubstitution { map }
    }
}

impl fmt::Display for TypeSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a} := {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for TypeSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeSubstitution{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("cannot unify {0} with {1}")]
    Clash(SimpleType, SimpleType),
    #[error("type variable {0} occurs in {1}")]
    Occurs(String, SimpleType),
}

/// Triangular substitution used during unification; `flexible` decides
/// which variables may be bound.
pub(crate) struct Unifier<F: Fn(&str) -> bool> {
    bound: BTreeMap<String, SimpleType>,
    flexible: F,
}

impl<F: Fn(&str) -> bool> Unifier<F> {
    pub fn new(flexible: F) -> Self {
        Unifier {
            bound: BTreeMap::new(),
            flexible,
        }
    }

    fn walk<'a>(&'a self, mut t: &'a SimpleType) -> &'a SimpleType {
        while let SimpleType::Var(a) = t {
            match self.bound.get(&**a) {
                Some(u) => t = u,
                None => break,
            }
        }
        t
    }

    pub fn resolve(&self, t: &SimpleType) -> SimpleType {
        match self.walk(t) {
            SimpleType::Arrow(d, c) => SimpleType::arrow(self.resolve(d), self.resolve(c)),
            v => v.clone(),
        }
    }

    fn occurs(&self, a: &str, t: &SimpleType) -> bool {
        match self.walk(t) {
            SimpleType::Var(b) => &**b == a,
            SimpleType::Arrow(d, c) => self.occurs(a, d) || self.occurs(a, c),
        }
    }

    pub fn unify(&mut self, a: &SimpleType, b: &SimpleType) -> Result<(), UnifyError> {
        let (a, b) = (self.walk(a).clone(), self.walk(b).clone());
        match (&a, &b) {
            (SimpleType::Var(x), SimpleType::Var(y)) if x == y => Ok(()),
            (SimpleType::Var(x), _) if (self.flexible)(x) => self.bind(x, &b),
            (_, SimpleType::Var(y)) if (self.flexible)(y) => self.bind(y, &a),
            (SimpleType::Arrow(d1, c1), SimpleType::Arrow(d2, c2)) => {
                self.unify(d1, d2)?;
                self.unify(c1, c2)
            }
            _ => Err(UnifyError::Clash(self.resolve(&a), self.resolve(&b))),
        }
    }

    fn bind(&mut self, x: &str, t: &SimpleType) -> Result<(), UnifyError> {
        if self.occurs(x, t) {
            return Err(UnifyError::Occurs(x.to_string(), self.resolve(t)));
        }
        self.bound.insert(x.to_string(), t.clone());
        Ok(())
    }

    pub fn into_substitution(self) -> TypeSubstitution {
        let map = self
            .bound
            .keys()
            .map(|k| (k.clone(), self.resolve(&SimpleType::var(k))))
            .collect();
        TypeSubstitution { map }
    }
}

/// Most general unifier of `a` and `b`, all variables being flexible.
pub fn unify(a: &SimpleType, b: &SimpleType) -> Result<TypeSubstitution, UnifyError> {
    let mut u = Unifier::new(|_: &str| true);
    u.unify(a, b)?;
    Ok(u.into_substitution())
}

/// One-way matching: a substitution `s` over the variables accepted by
/// `flexible` with `s(pattern) = target`.
pub(crate) fn match_type(
    pattern: &SimpleType,
    target: &SimpleType,
    flexible: &dyn Fn(&str) -> bool,
) -> Option<TypeSubstitution> {
    fn go(
        p: &SimpleType,
        t: &SimpleType,
        flexible: &dyn Fn(&str) -> bool,
        map: &mut BTreeMap<String, SimpleType>,
    ) -> bool {
        match (p, t) {
            (SimpleType::Var(a), _) if flexible(a) => match map.get(&**a) {
                Some(prev) => prev == t,
                None => {
                    map.insert(a.to_string(), t.clone());
                    true
                }
            },
            (SimpleType::Var(a), SimpleType::Var(b)) => a == b,
            (SimpleType::Arrow(d1, c1), SimpleType::Arrow(d2, c2)) => {
                go(d1, d2, flexible, map) && go(c1, c2, flexible, map)
            }
            _ => false,
        }
    }
    let mut map = BTreeMap::new();
    go(pattern, target, flexible, &mut map).then_some(TypeSubstitution { map })
}

/// Whether `target` is a substitution instance of `pattern`.
pub fn is_instance(pattern: &SimpleType, target: &SimpleType) -> bool {
    match_type(pattern, target, &|_| true).is_some()
}
