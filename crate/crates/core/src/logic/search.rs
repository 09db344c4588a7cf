//! Bounded entailment: axiom saturation followed by forward chaining or
//! propositional proof synthesis.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::axioms::{ax4, match_axiom_as, AxiomId, AxiomMatch, Instantiation};
use super::builder::Builder;
use super::formula::{wf_formula, Formula, Wf};
use super::proof::{check_proof, HilbertProof, Justification};
use super::propositional::{find_valuation, synthesize_proof, Countervaluation};
use crate::error::Error;
use crate::kernel::{ext_equal, normalize, Normalization, Term, TriBool};
use crate::types::{
    atom_in_cl, derive_atom, derive_typing, typing_eq_witness, Basis, SimpleType, Statement,
    TypingDerivation,
};
use crate::Bounds;

/// An axiom instance produced by saturation, with the record that the
/// checker will re-verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub formula: Formula,
    pub id: AxiomId,
    pub instantiation: Instantiation,
}

#[derive(Clone, Debug, Default)]
pub struct Saturation {
    pub instances: Vec<Instance>,
    /// Some side condition was left undecided, so the instance set may be
    /// missing members that a larger budget would add.
    pub truncated: bool,
}

/// The variable declarations stated directly in the theory. A variable
/// declared with two different types is left out.
pub fn theory_basis(theory: &[Formula]) -> Basis {
    let mut seen: BTreeMap<String, Option<SimpleType>> = BTreeMap::new();
    for f in theory {
        if let Formula::Atom(s) = f {
            if let Some(x) = s.subject.as_var() {
                let slot = seen
                    .entry(x.to_string())
                    .or_insert(Some(s.predicate.clone()));
                if slot.as_ref() != Some(&s.predicate) {
                    *slot = None;
                }
            }
        }
    }
    seen.into_iter()
        .filter_map(|(x, t)| t.map(|t| (x, t)))
        .collect()
}

struct Saturator<'a> {
    bounds: &'a Bounds,
    gamma: Basis,
    out: Saturation,
    seen: HashSet<Formula>,
    pool: Vec<Statement>,
    in_pool: HashSet<Statement>,
    wf: HashMap<Statement, bool>,
}

impl<'a> Saturator<'a> {
    fn typable(&mut self, s: &Statement) -> bool {
        *self
            .wf
            .entry(s.clone())
            .or_insert_with(|| atom_in_cl(&s.subject, &s.predicate))
    }

    fn offer(&mut self, f: Formula, id: AxiomId) {
        if self.seen.contains(&f) {
            return;
        }
        match match_axiom_as(&f, id, self.bounds) {
            AxiomMatch::Match { instantiation, .. } => {
                self.seen.insert(f.clone());
                for s in f.atoms() {
                    self.add_atom(s.clone());
                }
                self.out.instances.push(Instance {
                    formula: f,
                    id,
                    instantiation,
                });
            }
            AxiomMatch::UnknownSideCondition { .. } => self.out.truncated = true,
            AxiomMatch::NoMatch => {}
        }
    }

    fn add_atom(&mut self, s: Statement) {
        if self.in_pool.insert(s.clone()) {
            self.pool.push(s);
        }
    }

    fn derivation(&mut self, d: &TypingDerivation) {
        for node in d.nodes() {
            let s = &node.statement;
            match &node.premises {
                None => match s.subject {
                    Term::S => self.offer(Formula::Atom(s.clone()), AxiomId::Ax1),
                    Term::K => self.offer(Formula::Atom(s.clone()), AxiomId::Ax2),
                    Term::I => self.offer(Formula::Atom(s.clone()), AxiomId::Ax3),
                    _ => {}
                },
                Some(p) => {
                    let (m, n) = (&p.0.statement, &p.1.statement);
                    let f = ax4(&m.subject, &n.subject, &n.predicate, &s.predicate);
                    self.offer(f, AxiomId::Ax4);
                }
            }
        }
    }

    /// Instances from a typing derivation of `s` under the theory's
    /// declarations, possibly through an equal witness.
    fn explain(&mut self, s: &Statement) {
        if let Some(d) = derive_typing(&self.gamma, &s.subject, &s.predicate) {
            self.derivation(&d);
            return;
        }
        let found = typing_eq_witness(
            &self.gamma,
            &s.subject,
            &s.predicate,
            self.bounds.fuel,
            self.bounds.arity,
        );
        match (found.verdict, found.witness) {
            (TriBool::True, Some(w)) if w != s.subject => {
                if let Some(d) = derive_typing(&self.gamma, &w, &s.predicate) {
                    self.derivation(&d);
                    let from = Formula::atom(w, s.predicate.clone());
                    self.offer(
                        Formula::implies(from, Formula::Atom(s.clone())),
                        AxiomId::Ax5,
                    );
                }
            }
            (TriBool::Unknown(_), _) => self.out.truncated = true,
            _ => {}
        }
    }

    fn equal_pair(&mut self, a: &Statement, b: &Statement) {
        match ext_equal(&a.subject, &b.subject, self.bounds.fuel, self.bounds.arity) {
            TriBool::True => {
                let (fa, fb) = (Formula::Atom(a.clone()), Formula::Atom(b.clone()));
                self.offer(Formula::implies(fa.clone(), fb.clone()), AxiomId::Ax5);
                self.offer(Formula::implies(fb, fa), AxiomId::Ax5);
            }
            TriBool::Unknown(_) => self.out.truncated = true,
            TriBool::False => {}
        }
    }

    fn round(&mut self, from: usize) {
        let snapshot: Vec<Statement> = self.pool.clone();
        for s in &snapshot[from..] {
            // combinator statements that are scheme instances
            let f = Formula::Atom(s.clone());
            match s.subject {
                Term::S => self.offer(f, AxiomId::Ax1),
                Term::K => self.offer(f, AxiomId::Ax2),
                Term::I => self.offer(f, AxiomId::Ax3),
                _ => {}
            }
            // decomposition of applications
            if let Term::App(m, n) = &s.subject {
                if let Some((_, d)) = derive_atom(&s.subject, &s.predicate) {
                    if let Some(p) = &d.premises {
                        let sigma = p.1.statement.predicate.clone();
                        self.offer(ax4(m, n, &sigma, &s.predicate), AxiomId::Ax4);
                    }
                }
                for other in &snapshot {
                    if other.subject == **n {
                        self.offer(ax4(m, n, &other.predicate, &s.predicate), AxiomId::Ax4);
                    }
                }
            }
            // normal forms
            if let Normalization::NormalForm { term, .. } = normalize(&s.subject, self.bounds.fuel)
            {
                if term != s.subject {
                    let t = Statement::new(term, s.predicate.clone());
                    if self.typable(&t) {
                        self.equal_pair(s, &t);
                    }
                }
            } else {
                self.out.truncated = true;
            }
        }
        // equalities between statements of the same type
        let snapshot: Vec<Statement> = self.pool.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i.max(from) + 1) {
                if a.predicate == b.predicate && a.subject != b.subject {
                    self.equal_pair(a, b);
                }
            }
        }
    }
}

/// Axiom instances relevant to `theory` and `goal`: the instances used by
/// typing derivations of their atoms (through an equal witness when
/// needed), then `bounds.depth` rounds of closure adding combinator
/// instances, application decompositions and equalities between known
/// statements.
pub fn saturate(theory: &[Formula], goal: &Formula, bounds: &Bounds) -> Saturation {
    let mut s = Saturator {
        bounds,
        gamma: theory_basis(theory),
        out: Saturation::default(),
        seen: HashSet::new(),
        pool: Vec::new(),
        in_pool: HashSet::new(),
        wf: HashMap::new(),
    };
    let mut initial: Vec<Statement> = Vec::new();
    for f in theory.iter().chain(std::iter::once(goal)) {
        for a in f.atoms() {
            if !initial.contains(a) {
                initial.push(a.clone());
            }
        }
    }
    for a in &initial {
        s.add_atom(a.clone());
    }
    for a in &initial {
        if s.typable(a) {
            s.explain(a);
        }
    }
    let mut from = 0;
    for _ in 0..bounds.depth {
        let len = s.pool.len();
        s.round(from);
        if s.pool.len() == len && from > 0 {
            break;
        }
        from = len;
    }
    s.out
}

/// The instance formulas of [`saturate`].
pub fn saturate_axioms(theory: &[Formula], goal: &Formula, bounds: &Bounds) -> Vec<Formula> {
    saturate(theory, goal, bounds)
        .instances
        .into_iter()
        .map(|i| i.formula)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    Proved(HilbertProof),
    /// A valuation satisfying the theory and every saturated instance while
    /// falsifying the goal.
    Refuted(Countervaluation),
    Unknown(String),
}

impl Entailment {
    pub fn label(&self) -> &'static str {
        match self {
            Entailment::Proved(_) => "Proved",
            Entailment::Refuted(_) => "Refuted",
            Entailment::Unknown(_) => "Unknown",
        }
    }

    pub fn proof(&self) -> Option<&HilbertProof> {
        match self {
            Entailment::Proved(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Entailment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entailment::Proved(p) => write!(f, "Proved ({} lines)", p.len()),
            Entailment::Refuted(c) => write!(f, "Refuted {c}"),
            Entailment::Unknown(r) => write!(f, "Unknown ({r})"),
        }
    }
}

/// Above this many atoms the propositional fallback is skipped.
pub const MAX_FALLBACK_ATOMS: usize = 8;

/// Tries to derive `goal` from `theory` within `bounds`. A returned proof
/// has been accepted by the checker.
pub fn entails(theory: &[Formula], goal: &Formula, bounds: &Bounds) -> Result<Entailment, Error> {
    for f in theory.iter().chain(std::iter::once(goal)) {
        if let Wf::IllFormed { reason, .. } = wf_formula(f) {
            return Err(Error::IllFormed(reason));
        }
    }
    let sat = saturate(theory, goal, bounds);
    if let Some(p) = forward_chain(theory, goal, &sat.instances) {
        return Ok(verified(p, goal, bounds));
    }
    let mut cs: Vec<(Formula, bool)> = theory.iter().map(|t| (t.clone(), true)).collect();
    cs.extend(sat.instances.iter().map(|i| (i.formula.clone(), true)));
    cs.push((goal.clone(), false));
    if let Some(v) = find_valuation(&cs) {
        return Ok(if sat.truncated {
            Entailment::Unknown(format!(
                "no proof found and saturation was truncated at {bounds}"
            ))
        } else {
            Entailment::Refuted(Countervaluation(v))
        });
    }
    // propositionally entailed by the theory plus instances
    let core = unsat_core(&cs);
    let mut premises: Vec<Formula> = Vec::new();
    let mut origin: Vec<Justification> = Vec::new();
    for &k in &core {
        if k < theory.len() {
            premises.push(theory[k].clone());
            origin.push(Justification::Hypothesis(k));
        } else {
            let inst = &sat.instances[k - theory.len()];
            premises.push(inst.formula.clone());
            origin.push(Justification::Axiom(inst.id, inst.instantiation.clone()));
        }
    }
    let atoms = Formula::implication_chain(&premises, goal.clone())
        .atoms()
        .len();
    if atoms > MAX_FALLBACK_ATOMS {
        return Ok(Entailment::Unknown(format!(
            "entailed by truth tables but {atoms} atoms exceed the synthesis limit"
        )));
    }
    let synthesized = synthesize_proof(&premises, goal)?;
    let mut p = HilbertProof::new(theory.to_vec());
    for line in synthesized.lines {
        let just = match line.justification {
            Justification::Hypothesis(k) => origin[k].clone(),
            j => j,
        };
        p.push(line.formula, just);
    }
    Ok(verified(p, goal, bounds))
}

fn verified(p: HilbertProof, goal: &Formula, bounds: &Bounds) -> Entailment {
    let report = check_proof(&p, bounds);
    if report.verdict.is_accepted() && p.conclusion() == Some(goal) {
        Entailment::Proved(p)
    } else {
        Entailment::Unknown(format!(
            "constructed proof was not accepted: {}",
            report.verdict
        ))
    }
}

/// Closes theory lines and instances under modus ponens.
fn forward_chain(
    theory: &[Formula],
    goal: &Formula,
    instances: &[Instance],
) -> Option<HilbertProof> {
    let mut b = Builder::new(theory.to_vec());
    let mut known: Vec<usize> = Vec::new();
    for k in 0..theory.len() {
        known.push(b.theory_line(k));
    }
    for i in instances {
        known.push(b.axiom(i.formula.clone(), i.id, i.instantiation.clone()));
    }
    loop {
        if let Some(n) = b.find_closed(goal) {
            return Some(b.extract(n));
        }
        let mut added = false;
        let current = known.clone();
        for &i in &current {
            let Some((a, c)) = b.formula(i).as_implies() else {
                continue;
            };
            if b.find_closed(c).is_some() {
                continue;
            }
            if let Some(j) = b.find_closed(a) {
                let n = b.mp(i, j);
                known.push(n);
                added = true;
            }
        }
        if !added {
            return None;
        }
    }
}

/// Indices of a subset of the `true` constraints that together with the
/// last constraint is still unsatisfiable, found by greedy deletion.
fn unsat_core(cs: &[(Formula, bool)]) -> Vec<usize> {
    let last = cs.len() - 1;
    let mut keep: Vec<usize> = (0..last).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<(Formula, bool)> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &k)| cs[k].clone())
            .chain(std::iter::once(cs[last].clone()))
            .collect();
        if find_valuation(&trial).is_none() {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}

/// False when a contradiction is derivable; true when a valuation
/// satisfies the theory and all saturated instances and saturation was
/// not truncated; otherwise unknown.
pub fn consistent(theory: &[Formula], bounds: &Bounds) -> Result<TriBool, Error> {
    let bottom = Formula::bottom(theory);
    match entails(theory, &bottom, bounds)? {
        Entailment::Proved(_) => return Ok(TriBool::False),
        Entailment::Refuted(_) => {}
        Entailment::Unknown(r) => return Ok(TriBool::Unknown(r)),
    }
    let sat = saturate(theory, &bottom, bounds);
    let mut cs: Vec<(Formula, bool)> = theory.iter().map(|t| (t.clone(), true)).collect();
    cs.extend(sat.instances.iter().map(|i| (i.formula.clone(), true)));
    Ok(match find_valuation(&cs) {
        Some(_) if !sat.truncated => TriBool::True,
        Some(_) => TriBool::unknown(format!("saturation truncated at {bounds}")),
        None => TriBool::unknown("theory is propositionally unsatisfiable but no proof was built"),
    })
}
