//! The eight axiom schemes, their instantiation records and matching.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::formula::Formula;
use crate::error::{Error, ParseError};
use crate::kernel::{ext_equal, Term, TriBool};
use crate::types::{atom_in_cl, SimpleType, Statement};
use crate::Bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AxiomId {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    Ax5,
    Ax6,
    Ax7,
    Ax8,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::Ax1,
        AxiomId::Ax2,
        AxiomId::Ax3,
        AxiomId::Ax4,
        AxiomId::Ax5,
        AxiomId::Ax6,
        AxiomId::Ax7,
        AxiomId::Ax8,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(n: usize) -> Option<Self> {
        n.checked_sub(1).and_then(|i| Self::ALL.get(i).copied())
    }

    /// Metavariables of the scheme, in the order used by instantiation
    /// records.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            AxiomId::Ax1 => &["sigma", "tau", "rho"],
            AxiomId::Ax2 => &["sigma", "tau"],
            AxiomId::Ax3 => &["sigma"],
            AxiomId::Ax4 => &["M", "N", "sigma", "tau"],
            AxiomId::Ax5 => &["M", "N", "sigma"],
            AxiomId::Ax6 => &["alpha", "beta"],
            AxiomId::Ax7 => &["alpha", "beta", "gamma"],
            AxiomId::Ax8 => &["alpha", "beta"],
        }
    }

    /// Whether the scheme is purely propositional.
    pub fn is_propositional(self) -> bool {
        matches!(self, AxiomId::Ax6 | AxiomId::Ax7 | AxiomId::Ax8)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ax{}", self.number())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Term,
    Type,
    Formula,
}

fn key_kind(key: &str) -> Kind {
    match key {
        "M" | "N" => Kind::Term,
        "sigma" | "tau" | "rho" => Kind::Type,
        _ => Kind::Formula,
    }
}

/// A value bound to a scheme metavariable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    Term(Term),
    Type(SimpleType),
    Formula(Formula),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Term(t) => write!(f, "{t}"),
            Binding::Type(t) => write!(f, "{t}"),
            Binding::Formula(t) => write!(f, "{t}"),
        }
    }
}

/// Metavariable bindings in the fixed key order of the scheme.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Instantiation(pub Vec<(String, Binding)>);

impl Instantiation {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Binding> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, b)| b)
    }

    fn term(&self, key: &str) -> Result<&Term, Error> {
        match self.get(key) {
            Some(Binding::Term(t)) => Ok(t),
            _ => Err(Error::Precondition(format!("missing term binding {key}"))),
        }
    }

    fn ty(&self, key: &str) -> Result<&SimpleType, Error> {
        match self.get(key) {
            Some(Binding::Type(t)) => Ok(t),
            _ => Err(Error::Precondition(format!("missing type binding {key}"))),
        }
    }

    fn formula(&self, key: &str) -> Result<&Formula, Error> {
        match self.get(key) {
            Some(Binding::Formula(t)) => Ok(t),
            _ => Err(Error::Precondition(format!(
                "missing formula binding {key}"
            ))),
        }
    }

    fn of_types(id: AxiomId, tys: &[&SimpleType]) -> Self {
        Instantiation(
            id.keys()
                .iter()
                .zip(tys)
                .map(|(k, t)| (k.to_string(), Binding::Type((*t).clone())))
                .collect(),
        )
    }

    /// Bindings for a propositional scheme.
    pub fn of_formulas(id: AxiomId, fs: &[&Formula]) -> Self {
        Instantiation(
            id.keys()
                .iter()
                .zip(fs)
                .map(|(k, f)| (k.to_string(), Binding::Formula((*f).clone())))
                .collect(),
        )
    }

    /// Parses the text between the brackets of `Ax<i>[...]`.
    pub fn parse(id: AxiomId, src: &str) -> Result<Self, ParseError> {
        let mut out = Vec::new();
        if src.trim().is_empty() {
            return Ok(Instantiation(out));
        }
        let mut offset = 0;
        for part in src.split(',') {
            let (key, value) = part.split_once(":=").ok_or_else(|| {
                ParseError::new(offset, format!("expected `key := value` in {part:?}"))
            })?;
            let key = key.trim();
            if !id.keys().contains(&key) {
                return Err(ParseError::new(
                    offset,
                    format!("{id} has no metavariable {key:?}"),
                ));
            }
            let value_at = offset + part.find(":=").unwrap_or(0) + 2;
            let shift = |e: ParseError| ParseError::new(value_at + e.pos, e.message);
            let b = match key_kind(key) {
                Kind::Term => Binding::Term(crate::syntax::parse_term(value).map_err(shift)?),
                Kind::Type => Binding::Type(crate::syntax::parse_type(value).map_err(shift)?),
                Kind::Formula => {
                    Binding::Formula(crate::syntax::parse_formula(value).map_err(shift)?)
                }
            };
            out.push((key.to_string(), b));
            offset += part.len() + 1;
        }
        Ok(Instantiation(out))
    }
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} := {b}")?;
        }
        Ok(())
    }
}

fn arr(a: &SimpleType, b: &SimpleType) -> SimpleType {
    SimpleType::arrow(a.clone(), b.clone())
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

fn neg(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

/// The instance of scheme `id` described by `inst`.
pub fn instantiate(id: AxiomId, inst: &Instantiation) -> Result<Formula, Error> {
    if inst.0.len() != id.keys().len()
        || inst.0.iter().zip(id.keys()).any(|((k, _), want)| k != want)
    {
        return Err(Error::Precondition(format!(
            "{id} needs bindings for {} in that order",
            id.keys().join(", ")
        )));
    }
    Ok(match id {
        AxiomId::Ax1 => {
            let (s, t, r) = (inst.ty("sigma")?, inst.ty("tau")?, inst.ty("rho")?);
            Formula::atom(
                Term::S,
                arr(&arr(s, &arr(t, r)), &arr(&arr(s, t), &arr(s, r))),
            )
        }
        AxiomId::Ax2 => {
            let (s, t) = (inst.ty("sigma")?, inst.ty("tau")?);
            Formula::atom(Term::K, arr(s, &arr(t, s)))
        }
        AxiomId::Ax3 => {
            let s = inst.ty("sigma")?;
            Formula::atom(Term::I, arr(s, s))
        }
        AxiomId::Ax4 => {
            let (m, n) = (inst.term("M")?, inst.term("N")?);
            let (s, t) = (inst.ty("sigma")?, inst.ty("tau")?);
            ax4(m, n, s, t)
        }
        AxiomId::Ax5 => {
            let (m, n, s) = (inst.term("M")?, inst.term("N")?, inst.ty("sigma")?);
            Formula::implies(
                Formula::atom(m.clone(), s.clone()),
                Formula::atom(n.clone(), s.clone()),
            )
        }
        AxiomId::Ax6 => ax6(inst.formula("alpha")?, inst.formula("beta")?),
        AxiomId::Ax7 => ax7(
            inst.formula("alpha")?,
            inst.formula("beta")?,
            inst.formula("gamma")?,
        ),
        AxiomId::Ax8 => ax8(inst.formula("alpha")?, inst.formula("beta")?),
    })
}

/// `(M : σ→τ) ⇒ ((N : σ) ⇒ (M N : τ))`
pub fn ax4(m: &Term, n: &Term, s: &SimpleType, t: &SimpleType) -> Formula {
    Formula::implies(
        Formula::atom(m.clone(), arr(s, t)),
        Formula::implies(
            Formula::atom(n.clone(), s.clone()),
            Formula::atom(Term::app(m.clone(), n.clone()), t.clone()),
        ),
    )
}

/// `α ⇒ (β ⇒ α)`
pub fn ax6(a: &Formula, b: &Formula) -> Formula {
    imp(a, &imp(b, a))
}

/// `(α ⇒ (β ⇒ γ)) ⇒ ((α ⇒ β) ⇒ (α ⇒ γ))`
pub fn ax7(a: &Formula, b: &Formula, c: &Formula) -> Formula {
    imp(&imp(a, &imp(b, c)), &imp(&imp(a, b), &imp(a, c)))
}

/// `(¬α ⇒ ¬β) ⇒ ((¬α ⇒ β) ⇒ α)`
pub fn ax8(a: &Formula, b: &Formula) -> Formula {
    imp(&imp(&neg(a), &neg(b)), &imp(&imp(&neg(a), b), a))
}

/// Reads off the metavariables if `f` has the shape of scheme `id`. Side
/// conditions are not checked.
pub fn extract(id: AxiomId, f: &Formula) -> Option<Instantiation> {
    let fs = |xs: &[&Formula]| Some(Instantiation::of_formulas(id, xs));
    match id {
        AxiomId::Ax1 | AxiomId::Ax2 | AxiomId::Ax3 => {
            let s = f.as_atom()?;
            let ty = &s.predicate;
            match (id, &s.subject) {
                (AxiomId::Ax1, Term::S) => {
                    let (l, _) = ty.as_arrow()?;
                    let (sg, tr) = l.as_arrow()?;
                    let (t, rho) = tr.as_arrow()?;
                    let inst = Instantiation::of_types(id, &[sg, t, rho]);
                    (*f == instantiate(id, &inst).ok()?).then_some(inst)
                }
                (AxiomId::Ax2, Term::K) => {
                    let (sg, r) = ty.as_arrow()?;
                    let (t, sg2) = r.as_arrow()?;
                    (sg == sg2).then(|| Instantiation::of_types(id, &[sg, t]))
                }
                (AxiomId::Ax3, Term::I) => {
                    let (sg, sg2) = ty.as_arrow()?;
                    (sg == sg2).then(|| Instantiation::of_types(id, &[sg]))
                }
                _ => None,
            }
        }
        AxiomId::Ax4 => {
            let (a, rest) = f.as_implies()?;
            let (b, c) = rest.as_implies()?;
            let (a, b, c) = (a.as_atom()?, b.as_atom()?, c.as_atom()?);
            let (sg, tau) = a.predicate.as_arrow()?;
            let ok = b.predicate == *sg
                && c.predicate == *tau
                && c.subject == Term::app(a.subject.clone(), b.subject.clone());
            ok.then(|| {
                Instantiation(vec![
                    ("M".into(), Binding::Term(a.subject.clone())),
                    ("N".into(), Binding::Term(b.subject.clone())),
                    ("sigma".into(), Binding::Type(sg.clone())),
                    ("tau".into(), Binding::Type(tau.clone())),
                ])
            })
        }
        AxiomId::Ax5 => {
            let (a, b) = f.as_implies()?;
            let (a, b) = (a.as_atom()?, b.as_atom()?);
            (a.predicate == b.predicate).then(|| {
                Instantiation(vec![
                    ("M".into(), Binding::Term(a.subject.clone())),
                    ("N".into(), Binding::Term(b.subject.clone())),
                    ("sigma".into(), Binding::Type(a.predicate.clone())),
                ])
            })
        }
        AxiomId::Ax6 => {
            let (a, rest) = f.as_implies()?;
            let (b, a2) = rest.as_implies()?;
            if a == a2 {
                fs(&[a, b])
            } else {
                None
            }
        }
        AxiomId::Ax7 => {
            let (l, r) = f.as_implies()?;
            let (a, bc) = l.as_implies()?;
            let (b, c) = bc.as_implies()?;
            let (ab, ac) = r.as_implies()?;
            let (a2, b2) = ab.as_implies()?;
            let (a3, c2) = ac.as_implies()?;
            if a == a2 && a == a3 && b == b2 && c == c2 {
                fs(&[a, b, c])
            } else {
                None
            }
        }
        AxiomId::Ax8 => {
            let (l, r) = f.as_implies()?;
            let (na, nb) = l.as_implies()?;
            let (a, b) = (na.as_not()?, nb.as_not()?);
            let (nab, a3) = r.as_implies()?;
            let (na2, b2) = nab.as_implies()?;
            let a2 = na2.as_not()?;
            if a == a2 && a == a3 && b == b2 {
                fs(&[a, b])
            } else {
                None
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypabilityCheck {
    pub statement: Statement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub left: Term,
    pub right: Term,
    pub verdict: TriBool,
    pub fuel: u64,
    pub arity: usize,
}

/// The side conditions evaluated while matching an axiom instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SideConditionReport {
    pub typability: Vec<TypabilityCheck>,
    pub equality: Option<EqualityCheck>,
}

impl SideConditionReport {
    fn typability_ok(&self) -> bool {
        self.typability.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomMatch {
    Match {
        id: AxiomId,
        instantiation: Instantiation,
        report: SideConditionReport,
    },
    NoMatch,
    UnknownSideCondition {
        id: AxiomId,
        instantiation: Instantiation,
        report: SideConditionReport,
    },
}

impl Serialize for Instantiation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AxiomMatch {
    pub fn is_match(&self) -> bool {
        matches!(self, AxiomMatch::Match { .. })
    }
}

/// Checks `f` against scheme `id` including its side conditions.
pub fn match_axiom_as(f: &Formula, id: AxiomId, bounds: &Bounds) -> AxiomMatch {
    match_axiom_cached(f, id, bounds, &mut HashMap::new())
}

pub(crate) fn match_axiom_cached(
    f: &Formula,
    id: AxiomId,
    bounds: &Bounds,
    cache: &mut HashMap<Statement, bool>,
) -> AxiomMatch {
    let Some(instantiation) = extract(id, f) else {
        return AxiomMatch::NoMatch;
    };
    let mut report = SideConditionReport::default();
    let mut typable = |s: &Statement| {
        let holds = *cache
            .entry(s.clone())
            .or_insert_with(|| atom_in_cl(&s.subject, &s.predicate));
        report.typability.push(TypabilityCheck {
            statement: s.clone(),
            holds,
        });
    };
    match id {
        AxiomId::Ax4 | AxiomId::Ax5 => {
            for s in f.atoms() {
                typable(s);
            }
        }
        _ => {}
    }
    if !report.typability_ok() {
        return AxiomMatch::NoMatch;
    }
    if id == AxiomId::Ax5 {
        let (a, b) = f.as_implies().expect("shape checked");
        let (m, n) = (&a.as_atom().unwrap().subject, &b.as_atom().unwrap().subject);
        let verdict = ext_equal(m, n, bounds.fuel, bounds.arity);
        let unknown = verdict.is_unknown();
        let holds = verdict.is_true();
        report.equality = Some(EqualityCheck {
            left: m.clone(),
            right: n.clone(),
            verdict,
            fuel: bounds.fuel,
            arity: bounds.arity,
        });
        if unknown {
            return AxiomMatch::UnknownSideCondition {
                id,
                instantiation,
                report,
            };
        }
        if !holds {
            return AxiomMatch::NoMatch;
        }
    }
    AxiomMatch::Match {
        id,
        instantiation,
        report,
    }
}

/// Finds a scheme that `f` instantiates. When several match, the lowest
/// numbered one is reported.
pub fn match_axiom(f: &Formula, bounds: &Bounds) -> AxiomMatch {
    let mut cache = HashMap::new();
    let mut unknown = None;
    for id in AxiomId::ALL {
        match match_axiom_cached(f, id, bounds, &mut cache) {
            m @ AxiomMatch::Match { .. } => return m,
            u @ AxiomMatch::UnknownSideCondition { .. } => unknown = Some(u),
            AxiomMatch::NoMatch => {}
        }
    }
    unknown.unwrap_or(AxiomMatch::NoMatch)
}
