use std::fmt;

use serde::Serialize;

use crate::kernel::TriBool;
use crate::logic::Formula;
use crate::types::{Basis, Statement};
use crate::Bounds;

use super::{interpret, term_model, ApplicativeStructure, Environment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomVerdict {
    pub statement: Statement,
    /// The element the subject denotes, as text.
    pub element: String,
    pub verdict: TriBool,
}

/// A three-valued satisfaction verdict with the atom-level verdicts it was
/// computed from, sorted by atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatVerdict {
    pub verdict: TriBool,
    pub atoms: Vec<AtomVerdict>,
    pub bounds: Bounds,
}

impl fmt::Display for SatVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        for a in &self.atoms {
            write!(f, "\n  {} ~> {} : {}", a.statement, a.element, a.verdict)?;
        }
        Ok(())
    }
}

/// Evaluates `f` in `a` under `env`: an atom `M : σ` holds when the meaning
/// of `M` lies in the carrier of `σ`; connectives follow Kleene's strong
/// three-valued tables.
pub fn satisfies<A: ApplicativeStructure>(
    a: &A,
    env: &Environment<A::Element>,
    f: &Formula,
    bounds: &Bounds,
) -> SatVerdict {
    let mut atoms: Vec<AtomVerdict> = Vec::new();
    let verdict = eval(a, env, f, &mut atoms);
    atoms.sort_by(|x, y| x.statement.cmp(&y.statement));
    SatVerdict {
        verdict,
        atoms,
        bounds: *bounds,
    }
}

fn eval<A: ApplicativeStructure>(
    a: &A,
    env: &Environment<A::Element>,
    f: &Formula,
    atoms: &mut Vec<AtomVerdict>,
) -> TriBool {
    match f {
        Formula::Atom(s) => {
            if let Some(v) = atoms.iter().find(|v| v.statement == *s) {
                return v.verdict.clone();
            }
            let d = interpret(&s.subject, env, a);
            let verdict = a.member(&d, &s.predicate);
            atoms.push(AtomVerdict {
                statement: s.clone(),
                element: d.to_string(),
                verdict: verdict.clone(),
            });
            verdict
        }
        Formula::Not(g) => eval(a, env, g, atoms).negate(),
        Formula::Implies(g, h) => {
            let l = eval(a, env, g, atoms);
            let r = eval(a, env, h, atoms);
            l.implies(&r)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelRecord {
    pub basis: Basis,
    pub theory: Vec<SatVerdict>,
    pub goal: SatVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SemanticOutcome {
    NoCounterexampleFound,
    Counterexample { basis: Basis, trace: SatVerdict },
}

/// One record per supplied basis, in input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemanticCheck {
    pub outcome: SemanticOutcome,
    pub records: Vec<ModelRecord>,
}

/// Evaluates theory and goal in the term model of each basis under the
/// standard environment. The first model satisfying every theory formula
/// definitively while definitively falsifying the goal is a counterexample.
pub fn semantic_check(
    theory: &[Formula],
    goal: &Formula,
    gammas: &[Basis],
    bounds: &Bounds,
) -> SemanticCheck {
    let rho = Environment::standard();
    let mut outcome = SemanticOutcome::NoCounterexampleFound;
    let mut records = Vec::new();
    for gamma in gammas {
        let model = term_model(gamma.clone(), *bounds);
        let theory: Vec<SatVerdict> = theory
            .iter()
            .map(|t| satisfies(&model, &rho, t, bounds))
            .collect();
        let goal = satisfies(&model, &rho, goal, bounds);
        if outcome == SemanticOutcome::NoCounterexampleFound
            && theory.iter().all(|v| v.verdict.is_true())
            && goal.verdict.is_false()
        {
            outcome = SemanticOutcome::Counterexample {
                basis: gamma.clone(),
                trace: goal.clone(),
            };
        }
        records.push(ModelRecord {
            basis: gamma.clone(),
            theory,
            goal,
        });
    }
    SemanticCheck { outcome, records }
}
