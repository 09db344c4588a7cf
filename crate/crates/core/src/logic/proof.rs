//! Hilbert proofs, their text format, and the proof checker.
//!
//! ```text
//! # comment
//! theory 1. m : a -> b
//! theory 2. n : a
//! 1. m : a -> b ; hyp 1
//! 2. n : a ; hyp 2
//! 3. (m : a -> b) => ((n : a) => (m n : b)) ; Ax4[M := m, N := n, sigma := a, tau := b]
//! 4. (n : a) => (m n : b) ; MP 3 1
//! 5. m n : b ; MP 4 2
//! ```
//!
//! Line and hypothesis numbers are 1-based in text and 0-based in memory.
//! In `MP i j`, line `i` is the implication and line `j` its antecedent.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::axioms::{match_axiom_cached, AxiomId, AxiomMatch, Instantiation, SideConditionReport};
use super::formula::{wf_formula_cached, Formula, Wf};
use crate::error::{Error, ParseError};
use crate::types::Statement;
use crate::Bounds;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// Index into the theory.
    Hypothesis(usize),
    Axiom(AxiomId, Instantiation),
    /// Implication line, then antecedent line.
    MP(usize, usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Hypothesis(k) => write!(f, "hyp {}", k + 1),
            Justification::Axiom(id, inst) => write!(f, "{id}[{inst}]"),
            Justification::MP(i, j) => write!(f, "MP {} {}", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A derivation from `theory`; the conclusion is the last line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertProof {
    pub theory: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl HilbertProof {
    pub fn new(theory: Vec<Formula>) -> Self {
        HilbertProof {
            theory,
            lines: Vec::new(),
        }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Appends a line and returns its index.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(ProofLine {
            formula,
            justification,
        });
        self.lines.len() - 1
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        parse_proof(src)
    }

    /// Whether only the propositional schemes are used.
    pub fn is_propositional(&self) -> bool {
        self.lines.iter().all(|l| match &l.justification {
            Justification::Axiom(id, _) => id.is_propositional(),
            _ => true,
        })
    }
}

impl fmt::Display for HilbertProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.theory.iter().enumerate() {
            writeln!(f, "theory {}. {t}", k + 1)?;
        }
        for (n, l) in self.lines.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", n + 1, l.formula, l.justification)?;
        }
        Ok(())
    }
}

impl FromStr for HilbertProof {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_proof(s)
    }
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn parse_number(s: &str, line: usize) -> Result<usize, Error> {
    s.trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format_err(line, format!("expected a positive number, found {s:?}")))
}

fn with_line(line: usize, e: ParseError) -> Error {
    format_err(line, e.to_string())
}

fn parse_proof(src: &str) -> Result<HilbertProof, Error> {
    let mut proof = HilbertProof::default();
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("theory") {
            if !proof.lines.is_empty() {
                return Err(format_err(ln, "theory lines must precede proof lines"));
            }
            let (num, body) = rest
                .split_once('.')
                .ok_or_else(|| format_err(ln, "expected `theory k. <formula>`"))?;
            if parse_number(num, ln)? != proof.theory.len() + 1 {
                return Err(format_err(ln, "theory entries must be numbered 1, 2, ..."));
            }
            proof
                .theory
                .push(Formula::parse(body.trim()).map_err(|e| with_line(ln, e))?);
            continue;
        }
        let (num, rest) = text
            .split_once('.')
            .ok_or_else(|| format_err(ln, "expected `n. <formula> ; <justification>`"))?;
        if parse_number(num, ln)? != proof.lines.len() + 1 {
            return Err(format_err(ln, "proof lines must be numbered 1, 2, ..."));
        }
        let (body, just) = rest
            .rsplit_once(';')
            .ok_or_else(|| format_err(ln, "missing `; <justification>`"))?;
        let formula = Formula::parse(body.trim()).map_err(|e| with_line(ln, e))?;
        let justification = parse_justification(just.trim(), ln)?;
        proof.push(formula, justification);
    }
    Ok(proof)
}

fn parse_justification(s: &str, ln: usize) -> Result<Justification, Error> {
    let words: Vec<&str> = s.split_whitespace().collect();
    match words.as_slice() {
        ["hyp", k] => Ok(Justification::Hypothesis(parse_number(k, ln)? - 1)),
        ["MP", i, j] => Ok(Justification::MP(
            parse_number(i, ln)? - 1,
            parse_number(j, ln)? - 1,
        )),
        _ if s.starts_with("Ax") => {
            let (head, inst) = match s.split_once('[') {
                Some((h, rest)) => {
                    let inner = rest
                        .strip_suffix(']')
                        .ok_or_else(|| format_err(ln, "missing `]`"))?;
                    (h.trim(), inner)
                }
                None => (s, ""),
            };
            let id = head[2..]
                .parse::<usize>()
                .ok()
                .and_then(AxiomId::from_number)
                .ok_or_else(|| format_err(ln, format!("unknown axiom {head:?}")))?;
            let inst = Instantiation::parse(id, inst).map_err(|e| with_line(ln, e))?;
            Ok(Justification::Axiom(id, inst))
        }
        _ => Err(format_err(ln, format!("unknown justification {s:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LineStatus {
    Ok,
    Rejected(String),
    /// A side condition could not be decided within the bounds.
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineReport {
    /// 0-based.
    pub line: usize,
    pub status: LineStatus,
    pub side_conditions: Option<SideConditionReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProofVerdict {
    Accepted,
    /// `line` is 0-based.
    Rejected {
        line: usize,
        reason: String,
    },
    Inconclusive {
        line: usize,
        reason: String,
    },
}

impl ProofVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ProofVerdict::Accepted)
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, ProofVerdict::Rejected { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProofVerdict::Accepted => "Accepted",
            ProofVerdict::Rejected { .. } => "Rejected",
            ProofVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

impl fmt::Display for ProofVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofVerdict::Accepted => f.write_str("Accepted"),
            ProofVerdict::Rejected { line, reason }
            | ProofVerdict::Inconclusive { line, reason } => {
                write!(f, "{} at line {}: {reason}", self.label(), line + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub verdict: ProofVerdict,
    pub lines: Vec<LineReport>,
}

/// Checks every line. The verdict is the first rejected line if any, else
/// the first line with an undecided side condition, else acceptance.
pub fn check_proof(p: &HilbertProof, bounds: &Bounds) -> ProofReport {
    let mut cache: HashMap<Statement, bool> = HashMap::new();
    let mut lines = Vec::with_capacity(p.lines.len());
    for (n, line) in p.lines.iter().enumerate() {
        let (status, side_conditions) = check_line(p, n, line, bounds, &mut cache);
        lines.push(LineReport {
            line: n,
            status,
            side_conditions,
        });
    }
    let verdict = if p.lines.is_empty() {
        ProofVerdict::Rejected {
            line: 0,
            reason: "empty proof".into(),
        }
    } else if let Some((line, reason)) = lines.iter().find_map(|r| match &r.status {
        LineStatus::Rejected(m) => Some((r.line, m.clone())),
        _ => None,
    }) {
        ProofVerdict::Rejected { line, reason }
    } else if let Some((line, reason)) = lines.iter().find_map(|r| match &r.status {
        LineStatus::Unknown(m) => Some((r.line, m.clone())),
        _ => None,
    }) {
        ProofVerdict::Inconclusive { line, reason }
    } else {
        ProofVerdict::Accepted
    };
    ProofReport { verdict, lines }
}

/// Accepted and concluding `goal`.
pub fn proves(p: &HilbertProof, goal: &Formula, bounds: &Bounds) -> bool {
    p.conclusion() == Some(goal) && check_proof(p, bounds).verdict.is_accepted()
}

fn check_line(
    p: &HilbertProof,
    n: usize,
    line: &ProofLine,
    bounds: &Bounds,
    cache: &mut HashMap<Statement, bool>,
) -> (LineStatus, Option<SideConditionReport>) {
    let f = &line.formula;
    if let Wf::IllFormed { reason, .. } = wf_formula_cached(f, cache) {
        return (LineStatus::Rejected(format!("ill-formed: {reason}")), None);
    }
    match &line.justification {
        Justification::Hypothesis(k) => match p.theory.get(*k) {
            None => (
                LineStatus::Rejected(format!("no theory entry {}", k + 1)),
                None,
            ),
            Some(t) if t == f => (LineStatus::Ok, None),
            Some(_) => (
                LineStatus::Rejected(format!("formula differs from theory entry {}", k + 1)),
                None,
            ),
        },
        Justification::MP(i, j) => {
            if *i >= n || *j >= n {
                return (
                    LineStatus::Rejected("MP must cite earlier lines".into()),
                    None,
                );
            }
            let (imp, ante) = (&p.lines[*i].formula, &p.lines[*j].formula);
            match imp.as_implies() {
                Some((a, b)) if a == ante && b == f => (LineStatus::Ok, None),
                Some((a, _)) if a != ante => (
                    LineStatus::Rejected(format!(
                        "line {} is not the antecedent of line {}",
                        j + 1,
                        i + 1
                    )),
                    None,
                ),
                Some(_) => (
                    LineStatus::Rejected(format!(
                        "MP of lines {} and {} does not yield this formula",
                        i + 1,
                        j + 1
                    )),
                    None,
                ),
                None => (
                    LineStatus::Rejected(format!("line {} is not an implication", i + 1)),
                    None,
                ),
            }
        }
        Justification::Axiom(id, inst) => match match_axiom_cached(f, *id, bounds, cache) {
            AxiomMatch::NoMatch => (
                LineStatus::Rejected(format!("not an instance of {id}")),
                None,
            ),
            AxiomMatch::Match {
                instantiation,
                report,
                ..
            } => {
                if !inst.is_empty() && *inst != instantiation {
                    (
                        LineStatus::Rejected(format!(
                            "the stated instantiation does not produce this formula (expected {id}[{instantiation}])"
                        )),
                        Some(report),
                    )
                } else {
                    (LineStatus::Ok, Some(report))
                }
            }
            AxiomMatch::UnknownSideCondition {
                instantiation,
                report,
                ..
            } => {
                if !inst.is_empty() && *inst != instantiation {
                    return (
                        LineStatus::Rejected(format!(
                            "the stated instantiation does not produce this formula (expected {id}[{instantiation}])"
                        )),
                        Some(report),
                    );
                }
                let reason = match &report.equality {
                    Some(eq) => format!(
                        "equality {} = {} undecided ({}) at fuel={}, arity={}",
                        eq.left, eq.right, eq.verdict, eq.fuel, eq.arity
                    ),
                    None => "side condition undecided".into(),
                };
                (LineStatus::Unknown(reason), Some(report))
            }
        },
    }
}
