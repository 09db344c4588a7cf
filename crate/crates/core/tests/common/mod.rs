//! Random generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lcl_core::kernel::{check_eq_derivation, EqDerivation, EqRule};
use lcl_core::logic::{ax4, ax6, ax7, ax8, check_proof, AxiomId, Instantiation, Justification};
use lcl_core::types::{infer_type, TypeSubstitution};
use lcl_core::{Basis, Bounds, Formula, HilbertProof, SimpleType, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn t(s: &str) -> Term {
    s.parse().unwrap()
}

pub fn ty(s: &str) -> SimpleType {
    s.parse().unwrap()
}

pub fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

/// A random term with exactly `size` nodes (`size` odd), leaves drawn from
/// the combinators and `vars`.
pub fn term_of_size(rng: &mut StdRng, size: usize, vars: &[&str]) -> Term {
    if size <= 1 {
        return match rng.gen_range(0..3 + vars.len()) {
            0 => Term::S,
            1 => Term::K,
            2 => Term::I,
            k => Term::var(vars[k - 3]),
        };
    }
    let inner = size - 1;
    let left = 2 * rng.gen_range(0..inner / 2) + 1;
    Term::app(
        term_of_size(rng, left, vars),
        term_of_size(rng, inner - left, vars),
    )
}

/// A random term with at most `max` nodes.
pub fn term(rng: &mut StdRng, max: usize) -> Term {
    let leaves = rng.gen_range(1..=max.div_ceil(2));
    term_of_size(rng, 2 * leaves - 1, &VARS)
}

pub fn type_of_size(rng: &mut StdRng, leaves: usize, names: &[&str]) -> SimpleType {
    if leaves <= 1 {
        return SimpleType::var(names.choose(rng).unwrap());
    }
    let l = rng.gen_range(1..leaves);
    SimpleType::arrow(
        type_of_size(rng, l, names),
        type_of_size(rng, leaves - l, names),
    )
}

pub fn random_type(rng: &mut StdRng, max_leaves: usize) -> SimpleType {
    let n = rng.gen_range(1..=max_leaves);
    type_of_size(rng, n, &["a", "b", "c", "d"])
}

/// Substitutes random types for the variables of `sigma` outside `fixed`.
pub fn random_instance(
    rng: &mut StdRng,
    sigma: &SimpleType,
    fixed: &BTreeSet<String>,
) -> SimpleType {
    let map: BTreeMap<String, SimpleType> = sigma
        .vars()
        .into_iter()
        .filter(|v| !fixed.contains(v))
        .map(|v| (v, random_type(rng, 3)))
        .collect();
    TypeSubstitution::from_map(map).apply(sigma)
}

// ---------------------------------------------------------------------------
// Equational derivations

fn conclusion_small(d: &EqDerivation, max: usize) -> bool {
    d.lhs.size() <= max && d.rhs.size() <= max
}

fn axiom(rng: &mut StdRng) -> EqDerivation {
    let small = |rng: &mut StdRng| term(rng, 3);
    match rng.gen_range(0..4) {
        0 => {
            let m = term(rng, 7);
            EqDerivation::axiom(EqRule::Id, m.clone(), m)
        }
        1 => {
            let (m, n) = (small(rng), small(rng));
            EqDerivation::axiom(EqRule::K, Term::apply_all(Term::K, [m.clone(), n]), m)
        }
        2 => {
            let m = term(rng, 7);
            EqDerivation::axiom(EqRule::I, Term::app(Term::I, m.clone()), m)
        }
        _ => {
            let (m, n, l) = (term(rng, 1), term(rng, 1), term(rng, 1));
            EqDerivation::axiom(
                EqRule::S,
                Term::apply_all(Term::S, [m.clone(), n.clone(), l.clone()]),
                Term::app(Term::app(m, l.clone()), Term::app(n, l)),
            )
        }
    }
}

/// A derivation of `m = ?` with at most `budget` nodes.
fn from_term(rng: &mut StdRng, m: &Term, budget: usize) -> EqDerivation {
    let sym_of = |inner: EqDerivation| {
        EqDerivation::node(
            EqRule::Sym,
            inner.rhs.clone(),
            inner.lhs.clone(),
            vec![inner],
        )
    };
    if budget >= 2 {
        match rng.gen_range(0..4) {
            0 => {
                let inner =
                    EqDerivation::axiom(EqRule::I, Term::app(Term::I, m.clone()), m.clone());
                return sym_of(inner);
            }
            1 => {
                let p = term(rng, 1);
                let inner = EqDerivation::axiom(
                    EqRule::K,
                    Term::apply_all(Term::K, [m.clone(), p]),
                    m.clone(),
                );
                return sym_of(inner);
            }
            2 => {
                if let Term::App(p, q) = m {
                    let right = rng.gen_bool(0.5);
                    let (moving, fixed) = if right { (&**q, &**p) } else { (&**p, &**q) };
                    let inner = from_term(rng, moving, budget - 1);
                    let (l, r) = if right {
                        (
                            Term::app(fixed.clone(), inner.lhs.clone()),
                            Term::app(fixed.clone(), inner.rhs.clone()),
                        )
                    } else {
                        (
                            Term::app(inner.lhs.clone(), fixed.clone()),
                            Term::app(inner.rhs.clone(), fixed.clone()),
                        )
                    };
                    let rule = if right { EqRule::AppR } else { EqRule::AppL };
                    return EqDerivation::node(rule, l, r, vec![inner]);
                }
            }
            _ => {}
        }
    }
    if let Some((kind, reduct)) = lcl_core::kernel::contract(m) {
        let rule = match kind {
            lcl_core::kernel::RedexKind::S => EqRule::S,
            lcl_core::kernel::RedexKind::K => EqRule::K,
            lcl_core::kernel::RedexKind::I => EqRule::I,
        };
        return EqDerivation::axiom(rule, m.clone(), reduct);
    }
    EqDerivation::axiom(EqRule::Id, m.clone(), m.clone())
}

fn node_count(d: &EqDerivation) -> usize {
    1 + d.premises.iter().map(node_count).sum::<usize>()
}

fn derivation_rec(rng: &mut StdRng, budget: usize) -> EqDerivation {
    if budget <= 1 || rng.gen_bool(0.25) {
        return axiom(rng);
    }
    match rng.gen_range(0..5) {
        0 => {
            let inner = derivation_rec(rng, budget - 1);
            EqDerivation::node(
                EqRule::Sym,
                inner.rhs.clone(),
                inner.lhs.clone(),
                vec![inner],
            )
        }
        1 | 2 if budget >= 3 => {
            let left = derivation_rec(rng, (budget - 1) / 2);
            let rest = budget - 1 - node_count(&left);
            let right = from_term(rng, &left.rhs, rest.max(1));
            EqDerivation::node(
                EqRule::Trans,
                left.lhs.clone(),
                right.rhs.clone(),
                vec![left, right],
            )
        }
        3 => {
            let inner = derivation_rec(rng, budget - 1);
            let p = term(rng, 3);
            EqDerivation::node(
                EqRule::AppL,
                Term::app(inner.lhs.clone(), p.clone()),
                Term::app(inner.rhs.clone(), p),
                vec![inner],
            )
        }
        _ => {
            let inner = derivation_rec(rng, budget - 1);
            let p = term(rng, 3);
            EqDerivation::node(
                EqRule::AppR,
                Term::app(p.clone(), inner.lhs.clone()),
                Term::app(p, inner.rhs.clone()),
                vec![inner],
            )
        }
    }
}

/// `S K K = I` by extensionality: six nodes.
pub fn skk_is_i() -> EqDerivation {
    let x = Term::var("x");
    let skkx = t("S K K x");
    let kxkx = t("K x (K x)");
    let ix = t("I x");
    let s = EqDerivation::axiom(EqRule::S, skkx.clone(), kxkx.clone());
    let k = EqDerivation::axiom(EqRule::K, kxkx.clone(), x.clone());
    let i = EqDerivation::axiom(EqRule::I, ix.clone(), x.clone());
    let back = EqDerivation::node(EqRule::Sym, x.clone(), ix.clone(), vec![i]);
    let tail = EqDerivation::node(EqRule::Trans, kxkx, ix.clone(), vec![k, back]);
    let whole = EqDerivation::node(EqRule::Trans, skkx, ix, vec![s, tail]);
    EqDerivation::node(EqRule::Ext("x".into()), t("S K K"), Term::I, vec![whole])
}

/// A valid derivation with at most `max_nodes` nodes whose conclusion
/// terms have at most `max_term` nodes.
pub fn eq_derivation(rng: &mut StdRng, max_nodes: usize, max_term: usize) -> EqDerivation {
    loop {
        let d = if rng.gen_ratio(1, 20) {
            skk_is_i()
        } else {
            derivation_rec(rng, max_nodes)
        };
        if node_count(&d) <= max_nodes && conclusion_small(&d, max_term) {
            assert!(
                check_eq_derivation(&d, true).is_valid(),
                "generator bug: {d:?}"
            );
            return d;
        }
    }
}

// ---------------------------------------------------------------------------
// Hilbert proofs

/// Atoms for random proofs: typable statements over a few variables.
pub fn atom_pool() -> Vec<Formula> {
    [
        "x : a",
        "y : b",
        "x : b",
        "m : a -> b",
        "m x : b",
        "n : b -> a",
        "n y : a",
        "K x y : a",
        "S K K x : a",
        "I x : a",
        "K : a -> b -> a",
        "I : a -> a",
    ]
    .iter()
    .map(|s| f(s))
    .collect()
}

fn random_formula(rng: &mut StdRng, pool: &[Formula], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return pool.choose(rng).unwrap().clone();
    }
    if rng.gen_bool(0.3) {
        Formula::not(random_formula(rng, pool, depth - 1))
    } else {
        Formula::implies(
            random_formula(rng, pool, depth - 1),
            random_formula(rng, pool, depth - 1),
        )
    }
}

/// A random accepted proof with at most `max_lines` lines over a theory of
/// 1–3 formulas. `atoms_only` restricts the theory to atoms.
pub fn random_proof(rng: &mut StdRng, max_lines: usize, atoms_only: bool) -> HilbertProof {
    let pool = atom_pool();
    let n_theory = rng.gen_range(1..=3);
    let mut theory: Vec<Formula> = Vec::new();
    while theory.len() < n_theory {
        let g = if atoms_only {
            pool.choose(rng).unwrap().clone()
        } else {
            random_formula(rng, &pool, 2)
        };
        if !theory.contains(&g) {
            theory.push(g);
        }
    }
    let mut p = HilbertProof::new(theory.clone());
    let target = rng.gen_range(1..=max_lines);
    while p.len() < target {
        let lines: Vec<Formula> = p.lines.iter().map(|l| l.formula.clone()).collect();
        let pick = |rng: &mut StdRng| -> Formula {
            if !lines.is_empty() && rng.gen_bool(0.6) {
                lines.choose(rng).unwrap().clone()
            } else {
                random_formula(rng, &pool, 1)
            }
        };
        // prefer modus ponens whenever one is available
        let mut mps = Vec::new();
        for (i, a) in lines.iter().enumerate() {
            if let Some((ante, cons)) = a.as_implies() {
                if let Some(j) = lines.iter().position(|b| b == ante) {
                    if !lines.contains(cons) {
                        mps.push((i, j, cons.clone()));
                    }
                }
            }
        }
        if !mps.is_empty() && rng.gen_bool(0.6) {
            let (i, j, c) = mps.choose(rng).unwrap().clone();
            p.push(c, Justification::MP(i, j));
            continue;
        }
        match rng.gen_range(0..6) {
            0 | 1 => {
                let k = rng.gen_range(0..theory.len());
                p.push(theory[k].clone(), Justification::Hypothesis(k));
            }
            2 => {
                let (a, b) = (pick(rng), pick(rng));
                let inst = Instantiation::of_formulas(AxiomId::Ax6, &[&a, &b]);
                p.push(ax6(&a, &b), Justification::Axiom(AxiomId::Ax6, inst));
            }
            3 => {
                let (a, b, c) = (pick(rng), pick(rng), pick(rng));
                let inst = Instantiation::of_formulas(AxiomId::Ax7, &[&a, &b, &c]);
                p.push(ax7(&a, &b, &c), Justification::Axiom(AxiomId::Ax7, inst));
            }
            4 => {
                let (a, b) = (pick(rng), pick(rng));
                let inst = Instantiation::of_formulas(AxiomId::Ax8, &[&a, &b]);
                p.push(ax8(&a, &b), Justification::Axiom(AxiomId::Ax8, inst));
            }
            _ => {
                let (g, id) = typed_axiom(rng);
                p.push(g, Justification::Axiom(id, Instantiation::default()));
            }
        }
    }
    let report = check_proof(&p, &Bounds::default());
    assert!(
        report.verdict.is_accepted(),
        "generator bug: {}\n{p}",
        report.verdict
    );
    p
}

/// An instance of one of the typing or equality schemes.
fn typed_axiom(rng: &mut StdRng) -> (Formula, AxiomId) {
    match rng.gen_range(0..4) {
        0 => (f("K : a -> b -> a"), AxiomId::Ax2),
        1 => (f("I : a -> a"), AxiomId::Ax3),
        2 => (ax4(&t("m"), &t("x"), &ty("a"), &ty("b")), AxiomId::Ax4),
        _ => (f("(x : a) => (S K K x : a)"), AxiomId::Ax5),
    }
}

/// A random basis over the variables used by [`atom_pool`].
pub fn random_basis(rng: &mut StdRng) -> Basis {
    let mut b = Basis::new();
    let choices: [(&str, &[&str]); 4] = [
        ("x", &["a", "b", "a -> a"]),
        ("y", &["a", "b"]),
        ("m", &["a -> b", "b -> a", "a"]),
        ("n", &["b -> a", "a -> b"]),
    ];
    for (v, tys) in choices {
        if rng.gen_bool(0.75) {
            b.insert(v, ty(tys.choose(rng).unwrap()));
        }
    }
    b
}

/// A random typable triple `(Γ, M, σ)`.
pub fn typable_triple(rng: &mut StdRng) -> (Basis, Term, SimpleType) {
    loop {
        let mut gamma = Basis::new();
        for v in VARS {
            gamma.insert(v, random_type(rng, 3));
        }
        let m = term(rng, 11);
        if let Ok(principal) = infer_type(&gamma, &m) {
            let sigma = if rng.gen_bool(0.5) {
                principal
            } else {
                random_instance(rng, &principal, &gamma.type_vars())
            };
            let used = m.free_vars();
            let gamma: Basis = gamma
                .iter()
                .filter(|(x, _)| used.contains(*x) || rng.gen_bool(0.2))
                .map(|(x, t)| (x.to_string(), t.clone()))
                .collect();
            return (gamma, m, sigma);
        }
    }
}
