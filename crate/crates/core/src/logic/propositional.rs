//! Truth-table reasoning over atoms and proof synthesis for tautologies.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::builder::Builder;
use super::formula::{wf_formula, Formula, Wf};
use super::proof::HilbertProof;
use crate::error::Error;
use crate::types::Statement;

/// A boolean assignment to atoms, ordered by atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Countervaluation(pub BTreeMap<Statement, bool>);

impl fmt::Display for Countervaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s} := {}", if *b { "T" } else { "F" })?;
        }
        f.write_str("}")
    }
}

impl Serialize for Countervaluation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k.to_string(), v)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruthTable {
    Entailed,
    Countervaluation(Countervaluation),
}

impl TruthTable {
    pub fn is_entailed(&self) -> bool {
        matches!(self, TruthTable::Entailed)
    }
}

/// Value of `f` under a partial assignment, if already determined.
pub(crate) fn partial_eval(f: &Formula, v: &BTreeMap<Statement, bool>) -> Option<bool> {
    match f {
        Formula::Atom(s) => v.get(s).copied(),
        Formula::Not(a) => partial_eval(a, v).map(|b| !b),
        Formula::Implies(a, b) => match partial_eval(a, v) {
            Some(false) => Some(true),
            pa => match (pa, partial_eval(b, v)) {
                (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        },
    }
}

/// A total assignment to the atoms of `constraints` making each formula
/// take its paired value, found by backtracking with early pruning.
pub(crate) fn find_valuation(constraints: &[(Formula, bool)]) -> Option<BTreeMap<Statement, bool>> {
    let mut atoms: Vec<Statement> = Vec::new();
    for (f, _) in constraints {
        for s in f.atoms() {
            if !atoms.contains(s) {
                atoms.push(s.clone());
            }
        }
    }
    let mut v = BTreeMap::new();
    if search(constraints, &atoms, 0, &mut v) {
        Some(v)
    } else {
        None
    }
}

fn search(
    constraints: &[(Formula, bool)],
    atoms: &[Statement],
    k: usize,
    v: &mut BTreeMap<Statement, bool>,
) -> bool {
    let mut open = false;
    for (f, want) in constraints {
        match partial_eval(f, v) {
            Some(b) if b != *want => return false,
            Some(_) => {}
            None => open = true,
        }
    }
    if !open {
        for s in &atoms[k..] {
            v.entry(s.clone()).or_insert(false);
        }
        return true;
    }
    let s = &atoms[k];
    for b in [true, false] {
        v.insert(s.clone(), b);
        if search(constraints, atoms, k + 1, v) {
            return true;
        }
    }
    for s in &atoms[k..] {
        v.remove(s);
    }
    false
}

/// Whether every assignment satisfying `theory` satisfies `goal`, atoms
/// being independent propositional letters.
pub fn truth_table_valid(theory: &[Formula], goal: &Formula) -> TruthTable {
    let mut cs: Vec<(Formula, bool)> = theory.iter().map(|t| (t.clone(), true)).collect();
    cs.push((goal.clone(), false));
    match find_valuation(&cs) {
        None => TruthTable::Entailed,
        Some(v) => TruthTable::Countervaluation(Countervaluation(v)),
    }
}

/// Beyond this many atoms the case split is not attempted.
pub const MAX_SYNTHESIS_ATOMS: usize = 16;

/// A proof of `goal` from `theory` that uses only the propositional
/// schemes, modus ponens and theory lines. Requires the entailment to hold
/// by truth tables.
pub fn synthesize_proof(theory: &[Formula], goal: &Formula) -> Result<HilbertProof, Error> {
    for f in theory.iter().chain(std::iter::once(goal)) {
        if let Wf::IllFormed { reason, .. } = wf_formula(f) {
            return Err(Error::IllFormed(reason));
        }
    }
    if let TruthTable::Countervaluation(c) = truth_table_valid(theory, goal) {
        return Err(Error::Precondition(format!(
            "{goal} is not entailed; countervaluation {c}"
        )));
    }
    let chain = Formula::implication_chain(theory, goal.clone());
    let atoms: Vec<Statement> = chain.atoms().into_iter().cloned().collect();
    if atoms.len() > MAX_SYNTHESIS_ATOMS {
        return Err(Error::Precondition(format!(
            "{} atoms exceed the synthesis limit of {MAX_SYNTHESIS_ATOMS}",
            atoms.len()
        )));
    }
    let mut b = Builder::new(theory.to_vec());
    let mut root = b.eliminate(&chain, &atoms, 0, &mut BTreeMap::new());
    for k in 0..theory.len() {
        let t = b.theory_line(k);
        root = b.mp(root, t);
    }
    Ok(b.extract(root))
}
