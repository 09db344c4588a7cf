use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::term::{Combinator, Term};
use crate::error::Error;

/// Upper bound on the number of nodes the normaliser will build before it
/// gives up, independently of the step budget. Shared subterms duplicated by
/// `S` count once per copy.
pub const MAX_NODES: u64 = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RedexKind {
    S,
    K,
    I,
}

impl From<Combinator> for RedexKind {
    fn from(c: Combinator) -> Self {
        match c {
            Combinator::S => RedexKind::S,
            Combinator::K => RedexKind::K,
            Combinator::I => RedexKind::I,
        }
    }
}

/// Position of a redex: a path of application sides from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RedexSite {
    pub path: Vec<Side>,
    pub kind: RedexKind,
}

impl RedexSite {
    pub fn root(kind: RedexKind) -> Self {
        RedexSite {
            path: Vec::new(),
            kind,
        }
    }
}

impl fmt::Display for RedexSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str("root")?;
        }
        for s in &self.path {
            f.write_str(match s {
                Side::Left => "l",
                Side::Right => "r",
            })?;
        }
        write!(f, ":{:?}", self.kind)
    }
}

/// If `t` itself is a redex, its kind and contractum.
pub fn contract(t: &Term) -> Option<(RedexKind, Term)> {
    let (head, args) = t.spine();
    let comb = head.combinator()?;
    if args.len() != comb.arity() {
        return None;
    }
    Some((comb.into(), contract_args(comb, &args)))
}

fn contract_args(comb: Combinator, args: &[&Term]) -> Term {
    match comb {
        Combinator::I => args[0].clone(),
        Combinator::K => args[0].clone(),
        Combinator::S => {
            let (m, n, l) = (args[0], args[1], args[2]);
            Term::app(
                Term::app(m.clone(), l.clone()),
                Term::app(n.clone(), l.clone()),
            )
        }
    }
}

/// All redex sites of `m` in leftmost-outermost (pre-order) order.
pub fn find_redexes(m: &Term) -> Vec<RedexSite> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_redexes(m, &mut path, &mut out);
    out
}

fn collect_redexes(t: &Term, path: &mut Vec<Side>, out: &mut Vec<RedexSite>) {
    if let Some((kind, _)) = contract(t) {
        out.push(RedexSite {
            path: path.clone(),
            kind,
        });
    }
    if let Term::App(f, a) = t {
        path.push(Side::Left);
        collect_redexes(f, path, out);
        path.pop();
        path.push(Side::Right);
        collect_redexes(a, path, out);
        path.pop();
    }
}

/// Contracts the redex at `site`, realising one step of one-step reduction.
pub fn reduce_step(m: &Term, site: &RedexSite) -> Result<Term, Error> {
    fn go(t: &Term, path: &[Side], kind: RedexKind) -> Result<Term, Error> {
        match path.split_first() {
            None => match contract(t) {
                Some((k, r)) if k == kind => Ok(r),
                Some((k, _)) => Err(Error::InvalidSite(format!(
                    "expected a {kind:?}-redex, found a {k:?}-redex"
                ))),
                None => Err(Error::InvalidSite(format!("{t} is not a redex"))),
            },
            Some((side, rest)) => match t {
                Term::App(f, a) => Ok(match side {
                    Side::Left => Term::app(go(f, rest, kind)?, (**a).clone()),
                    Side::Right => Term::app((**f).clone(), go(a, rest, kind)?),
                }),
                _ => Err(Error::InvalidSite(format!("path leaves the term at {t}"))),
            },
        }
    }
    go(m, &site.path, site.kind)
}

/// Outcome of a bounded normalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    NormalForm {
        term: Term,
        steps: u64,
    },
    /// The budget ran out; `term` is the reduct reached so far.
    FuelExhausted {
        term: Term,
        steps: u64,
    },
}

impl Normalization {
    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            Normalization::NormalForm { term, .. } => Some(term),
            Normalization::FuelExhausted { .. } => None,
        }
    }

    pub fn term(&self) -> &Term {
        match self {
            Normalization::NormalForm { term, .. } | Normalization::FuelExhausted { term, .. } => {
                term
            }
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            Normalization::NormalForm { steps, .. }
            | Normalization::FuelExhausted { steps, .. } => *steps,
        }
    }
}

/// Step and size accounting shared by the reduction engines.
#[derive(Debug)]
pub(crate) struct Budget {
    pub fuel: u64,
    pub steps: u64,
    pub nodes: u64,
}

impl Budget {
    pub fn new(fuel: u64) -> Self {
        Budget {
            fuel,
            steps: 0,
            nodes: 0,
        }
    }

    fn exhausted(&self) -> bool {
        self.steps >= self.fuel || self.nodes >= MAX_NODES
    }
}

/// Reduces `t` until its head is not a redex. Returns `Err` with the reduct
/// reached when the budget runs out first.
pub(crate) fn head_normalize(mut t: Term, budget: &mut Budget) -> Result<Term, Term> {
    loop {
        let (head, args) = t.spine();
        let comb = match head.combinator() {
            Some(c) if args.len() >= c.arity() => c,
            _ => return Ok(t),
        };
        if budget.exhausted() {
            return Err(t);
        }
        let n = comb.arity();
        let reduct = contract_args(comb, &args[..n]);
        let rest: Vec<Term> = args[n..].iter().map(|a| (*a).clone()).collect();
        t = Term::apply_all(reduct, rest);
        budget.steps += 1;
    }
}

struct Frame {
    head: Term,
    done: Vec<Term>,
    // pending arguments, last element is the next to visit
    pending: Vec<Term>,
}

impl Frame {
    fn rebuild(self, current: Option<Term>) -> Term {
        let Frame {
            head,
            done,
            mut pending,
        } = self;
        pending.reverse();
        Term::apply_all(head, done.into_iter().chain(current).chain(pending))
    }
}

/// Leftmost-outermost normalisation with an explicit stack: the head is
/// reduced first, then each argument from left to right.
pub fn normalize(m: &Term, fuel: u64) -> Normalization {
    let mut budget = Budget::new(fuel);
    let mut stack: Vec<Frame> = Vec::new();
    let mut current = m.clone();
    loop {
        let hnf = match head_normalize(current, &mut budget) {
            Ok(t) => t,
            Err(partial) => {
                return Normalization::FuelExhausted {
                    term: unwind(stack, partial),
                    steps: budget.steps,
                }
            }
        };
        budget.nodes += 1;
        if budget.nodes >= MAX_NODES {
            return Normalization::FuelExhausted {
                term: unwind(stack, hnf),
                steps: budget.steps,
            };
        }
        let (head, args) = hnf.spine();
        let mut pending: Vec<Term> = args.into_iter().cloned().collect();
        pending.reverse();
        stack.push(Frame {
            head: head.clone(),
            done: Vec::new(),
            pending,
        });
        // find the next argument to work on, closing finished frames
        loop {
            let top = stack.last_mut().expect("stack is non-empty");
            if let Some(next) = top.pending.pop() {
                current = next;
                break;
            }
            let frame = stack.pop().expect("stack is non-empty");
            let built = frame.rebuild(None);
            match stack.last_mut() {
                Some(parent) => parent.done.push(built),
                None => {
                    return Normalization::NormalForm {
                        term: built,
                        steps: budget.steps,
                    }
                }
            }
        }
    }
}

fn unwind(mut stack: Vec<Frame>, mut current: Term) -> Term {
    while let Some(frame) = stack.pop() {
        current = frame.rebuild(Some(current));
    }
    current
}

/// Normal form if one is reached within `fuel` steps.
pub fn normal_form(m: &Term, fuel: u64) -> Option<Term> {
    match normalize(m, fuel) {
        Normalization::NormalForm { term, .. } => Some(term),
        Normalization::FuelExhausted { .. } => None,
    }
}

pub fn is_normal(m: &Term) -> bool {
    match m {
        Term::App(f, a) => contract(m).is_none() && is_normal(f) && is_normal(a),
        _ => true,
    }
}

/// Replaces the subterm at `path`; used by tests and random strategies.
pub fn replace_at(m: &Term, path: &[Side], new: Term) -> Option<Term> {
    match path.split_first() {
        None => Some(new),
        Some((side, rest)) => match m {
            Term::App(f, a) => Some(match side {
                Side::Left => Term::App(Arc::new(replace_at(f, rest, new)?), a.clone()),
                Side::Right => Term::App(f.clone(), Arc::new(replace_at(a, rest, new)?)),
            }),
            _ => None,
        },
    }
}
