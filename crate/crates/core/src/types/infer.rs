use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::ty::{match_type, type_var_name, Basis, SimpleType, Statement, Unifier, UnifyError};
use crate::kernel::{ext_normal_form, normalize, FreshVars, Normalization, Term, TriBool};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("variable {0} is not declared in the basis")]
    Unbound(String),
    #[error(transparent)]
    Unify(#[from] UnifyError),
}

// Inference variables carry a leading quote, which user syntax cannot produce.
fn is_flexible(a: &str) -> bool {
    a.starts_with('\'')
}

/// A typing derivation in the assignment system: leaves are basis
/// declarations or combinator axioms, inner nodes are arrow eliminations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypingDerivation {
    pub statement: Statement,
    pub premises: Option<Box<(TypingDerivation, TypingDerivation)>>,
}

impl TypingDerivation {
    /// All statements, conclusion first.
    pub fn statements(&self) -> Vec<&Statement> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.push(&d.statement);
            if let Some(p) = &d.premises {
                stack.push(&p.1);
                stack.push(&p.0);
            }
        }
        out
    }

    /// Every node, conclusion first.
    pub fn nodes(&self) -> Vec<&TypingDerivation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.push(d);
            if let Some(p) = &d.premises {
                stack.push(&p.1);
                stack.push(&p.0);
            }
        }
        out
    }
}

struct Tree {
    term: Term,
    ty: SimpleType,
    kids: Option<Box<(Tree, Tree)>>,
}

struct Infer {
    u: Unifier<fn(&str) -> bool>,
    counter: usize,
}

impl Infer {
    fn new() -> Self {
        Infer {
            u: Unifier::new(is_flexible as fn(&str) -> bool),
            counter: 0,
        }
    }

    fn fresh(&mut self) -> SimpleType {
        let t = SimpleType::var(&format!("'t{}", self.counter));
        self.counter += 1;
        t
    }

    fn scheme(&mut self, m: &Term) -> Option<SimpleType> {
        let arr = SimpleType::arrow;
        Some(match m {
            Term::S => {
                let (a, b, c) = (self.fresh(), self.fresh(), self.fresh());
                arr(
                    arr(a.clone(), arr(b.clone(), c.clone())),
                    arr(arr(a.clone(), b), arr(a, c)),
                )
            }
            Term::K => {
                let (a, b) = (self.fresh(), self.fresh());
                arr(a.clone(), arr(b, a))
            }
            Term::I => {
                let a = self.fresh();
                arr(a.clone(), a)
            }
            _ => return None,
        })
    }

    fn infer(&mut self, gamma: &Basis, m: &Term) -> Result<SimpleType, TypeError> {
        match m {
            Term::Var(x) => gamma
                .get(x)
                .cloned()
                .ok_or_else(|| TypeError::Unbound(x.to_string())),
            Term::App(f, a) => {
                let tf = self.infer(gamma, f)?;
                let ta = self.infer(gamma, a)?;
                let r = self.fresh();
                self.u.unify(&tf, &SimpleType::arrow(ta, r.clone()))?;
                Ok(r)
            }
            c => Ok(self.scheme(c).expect("combinator")),
        }
    }

    fn infer_tree(&mut self, gamma: &Basis, m: &Term) -> Result<Tree, TypeError> {
        match m {
            Term::App(f, a) => {
                let tf = self.infer_tree(gamma, f)?;
                let ta = self.infer_tree(gamma, a)?;
                let r = self.fresh();
                self.u
                    .unify(&tf.ty, &SimpleType::arrow(ta.ty.clone(), r.clone()))?;
                Ok(Tree {
                    term: m.clone(),
                    ty: r,
                    kids: Some(Box::new((tf, ta))),
                })
            }
            _ => Ok(Tree {
                term: m.clone(),
                ty: self.infer(gamma, m)?,
                kids: None,
            }),
        }
    }

    fn finish(&self, t: Tree, rename: &mut Renamer) -> TypingDerivation {
        let ty = rename.apply(&self.u.resolve(&t.ty));
        TypingDerivation {
            statement: Statement::new(t.term, ty),
            premises: t.kids.map(|k| {
                let (f, a) = *k;
                Box::new((self.finish(f, rename), self.finish(a, rename)))
            }),
        }
    }
}

/// Renames inference variables to ordinary names in first-use order,
/// skipping names already taken.
struct Renamer {
    avoid: BTreeSet<String>,
    map: BTreeMap<String, SimpleType>,
    next: usize,
}

impl Renamer {
    fn new(avoid: BTreeSet<String>) -> Self {
        Renamer {
            avoid,
            map: BTreeMap::new(),
            next: 0,
        }
    }

    fn apply(&mut self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Var(a) if is_flexible(a) => {
                if let Some(v) = self.map.get(&**a) {
                    return v.clone();
                }
                let name = loop {
                    let n = type_var_name(self.next);
                    self.next += 1;
                    if !self.avoid.contains(&n) {
                        break n;
                    }
                };
                let v = SimpleType::var(&name);
                self.map.insert(a.to_string(), v.clone());
                v
            }
            SimpleType::Var(_) => t.clone(),
            SimpleType::Arrow(d, c) => {
                let d = self.apply(d);
                SimpleType::arrow(d, self.apply(c))
            }
        }
    }
}

/// The principal type of `m` under `gamma`, with fresh type variables named
/// `a, b, c, ...` in order of first use (skipping those used by `gamma`).
pub fn infer_type(gamma: &Basis, m: &Term) -> Result<SimpleType, TypeError> {
    let mut inf = Infer::new();
    let t = inf.infer(gamma, m)?;
    let t = inf.u.resolve(&t);
    Ok(Renamer::new(gamma.type_vars()).apply(&t))
}

/// `gamma ⊢ m : sigma` in the simple type assignment system.
pub fn check_typing(gamma: &Basis, m: &Term, sigma: &SimpleType) -> bool {
    let mut inf = Infer::new();
    match inf.infer(gamma, m) {
        Ok(t) => match_type(&inf.u.resolve(&t), sigma, &is_flexible).is_some(),
        Err(_) => false,
    }
}

/// Whether `m : sigma` is derivable from some basis.
pub fn atom_in_cl(m: &Term, sigma: &SimpleType) -> bool {
    let mut inf = Infer::new();
    let gamma = flexible_basis(&mut inf, m);
    match inf.infer(&gamma, m) {
        Ok(t) => match_type(&inf.u.resolve(&t), sigma, &is_flexible).is_some(),
        Err(_) => false,
    }
}

fn flexible_basis(inf: &mut Infer, m: &Term) -> Basis {
    m.free_vars()
        .into_iter()
        .map(|x| (x, inf.fresh()))
        .collect()
}

fn derive_in(
    mut inf: Infer,
    gamma: &Basis,
    m: &Term,
    sigma: &SimpleType,
) -> Option<(Infer, TypingDerivation, Renamer)> {
    let tree = inf.infer_tree(gamma, m).ok()?;
    // sigma contains no inference variables, so unifying only instantiates
    // the principal type
    inf.u.unify(&tree.ty, sigma).ok()?;
    let mut avoid = gamma.type_vars();
    sigma.collect_vars(&mut avoid);
    let mut rename = Renamer::new(avoid);
    let d = inf.finish(tree, &mut rename);
    Some((inf, d, rename))
}

/// A derivation of `gamma ⊢ m : sigma`, if there is one. Types left open by
/// the derivation are fixed to fresh type variables.
pub fn derive_typing(gamma: &Basis, m: &Term, sigma: &SimpleType) -> Option<TypingDerivation> {
    derive_in(Infer::new(), gamma, m, sigma).map(|(_, d, _)| d)
}

/// A basis over the free variables of `m` together with a derivation of
/// `m : sigma` from it.
pub fn derive_atom(m: &Term, sigma: &SimpleType) -> Option<(Basis, TypingDerivation)> {
    let mut inf = Infer::new();
    let gamma = flexible_basis(&mut inf, m);
    let (inf, d, mut rename) = derive_in(inf, &gamma, m, sigma)?;
    let basis = gamma
        .iter()
        .map(|(x, t)| (x.to_string(), rename.apply(&inf.u.resolve(t))))
        .collect();
    Some((basis, d))
}

/// Outcome of typing modulo extensional equality, with the term that was
/// found typable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqTyping {
    pub verdict: TriBool,
    pub witness: Option<Term>,
}

/// `gamma ⊢ m : sigma` in the system extended with the equality rule.
pub fn check_typing_eq(
    gamma: &Basis,
    m: &Term,
    sigma: &SimpleType,
    fuel: u64,
    arity_bound: usize,
) -> TriBool {
    typing_eq_witness(gamma, m, sigma, fuel, arity_bound).verdict
}

/// Searches for a term extensionally equal to `m` that is typable with
/// `sigma` under `gamma`: `m` itself, its normal form, its canonical
/// extensional form, and eta-stripped reducts of `m` applied to fresh
/// variables. Typability is invariant under the equality, and the canonical
/// form is typable whenever any member of the class is, so an untypable
/// canonical form settles the question negatively.
pub fn typing_eq_witness(
    gamma: &Basis,
    m: &Term,
    sigma: &SimpleType,
    fuel: u64,
    arity_bound: usize,
) -> EqTyping {
    let found = |w: Term| EqTyping {
        verdict: TriBool::True,
        witness: Some(w),
    };
    if check_typing(gamma, m, sigma) {
        return found(m.clone());
    }
    if let Normalization::NormalForm { term, .. } = normalize(m, fuel) {
        if check_typing(gamma, &term, sigma) {
            return found(term);
        }
    }
    let reason = match ext_normal_form(m, fuel, arity_bound) {
        Ok(w) => {
            if check_typing(gamma, &w, sigma) {
                return found(w);
            }
            return EqTyping {
                verdict: TriBool::False,
                witness: None,
            };
        }
        Err(e) => e.to_string(),
    };
    for w in eta_witnesses(m, fuel, arity_bound) {
        if check_typing(gamma, &w, sigma) {
            return found(w);
        }
    }
    EqTyping {
        verdict: TriBool::Unknown(reason),
        witness: None,
    }
}

/// For `k ≤ arity_bound` fresh variables `x1..xk`: if `m x1 .. xk` has the
/// normal form `P x1 .. xk` with no `xi` in `P`, then `P` equals `m`.
fn eta_witnesses(m: &Term, fuel: u64, arity_bound: usize) -> Vec<Term> {
    let mut fresh = FreshVars::avoiding([m]);
    let xs = fresh.take(arity_bound);
    let mut out = Vec::new();
    for k in 1..=arity_bound {
        let applied = Term::apply_all(m.clone(), xs[..k].iter().cloned());
        let Some(nf) = normalize(&applied, fuel).normal_form().cloned() else {
            continue;
        };
        let mut p = nf;
        let mut ok = true;
        for x in xs[..k].iter().rev() {
            match &p {
                Term::App(f, a) if **a == *x => p = (**f).clone(),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && xs[..k].iter().all(|x| !p.occurs(x.as_var().unwrap_or(""))) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn basis(s: &str) -> Basis {
        s.parse().unwrap()
    }

    #[test]
    fn principal_types_of_combinators() {
        let e = Basis::new();
        assert_eq!(
            infer_type(&e, &t("K")).unwrap().to_string(),
            "a -> (b -> a)"
        );
        assert_eq!(
            infer_type(&e, &t("S")).unwrap().to_string(),
            "(a -> (b -> c)) -> ((a -> b) -> (a -> c))"
        );
        assert_eq!(infer_type(&e, &t("S K K")).unwrap().to_string(), "a -> a");
        assert!(matches!(
            infer_type(&e, &t("x")),
            Err(TypeError::Unbound(_))
        ));
        assert!(matches!(
            infer_type(&e, &t("S I I")),
            Err(TypeError::Unify(UnifyError::Occurs(..)))
        ));
    }

    #[test]
    fn fresh_names_avoid_the_basis() {
        let g = basis("x : a");
        assert_eq!(infer_type(&g, &t("K x")).unwrap().to_string(), "b -> a");
    }

    #[test]
    fn check_typing_examples() {
        assert!(check_typing(&basis("x : s"), &t("x"), &ty("s")));
        assert!(check_typing(
            &Basis::new(),
            &t("I"),
            &ty("(a -> b) -> (a -> b)")
        ));
        assert!(!check_typing(&basis("x : a"), &t("K x y"), &ty("a")));
        // basis variables are fixed, not instantiable
        assert!(!check_typing(&basis("x : a"), &t("x"), &ty("b")));
        assert!(!check_typing(&Basis::new(), &t("K"), &ty("a -> a")));
    }

    #[test]
    fn atom_examples() {
        assert!(!atom_in_cl(&t("x x"), &ty("a")));
        assert!(atom_in_cl(&t("K"), &ty("a -> (b -> a)")));
        assert!(atom_in_cl(&t("x"), &ty("(a -> b) -> c")));
        assert!(atom_in_cl(&t("x y"), &ty("a")));
        assert!(atom_in_cl(&t("K x x"), &ty("a -> b")));
        assert!(!atom_in_cl(&t("S I I"), &ty("a")));
    }

    #[test]
    fn typing_modulo_equality() {
        let g = basis("x : s");
        assert_eq!(
            check_typing_eq(&g, &t("K x y"), &ty("s"), 100, 3),
            TriBool::True
        );
        let g2 = basis("x : s, y : t");
        assert_eq!(
            check_typing_eq(&g2, &t("K x y"), &ty("s"), 100, 3),
            TriBool::True
        );
        assert_eq!(
            check_typing_eq(&Basis::new(), &t("I"), &ty("a -> a"), 100, 3),
            TriBool::True
        );
        assert!(check_typing_eq(&Basis::new(), &t("S I I (S I I)"), &ty("a"), 100, 3).is_unknown());
        // S K x is I extensionally, so x need not be declared
        assert_eq!(
            check_typing_eq(&Basis::new(), &t("S K x"), &ty("a -> a"), 100, 3),
            TriBool::True
        );
        assert_eq!(
            check_typing_eq(&Basis::new(), &t("S I I"), &ty("a"), 100, 3),
            TriBool::False
        );
        assert_eq!(
            check_typing_eq(&g, &t("x"), &ty("t"), 100, 3),
            TriBool::False
        );
    }

    #[test]
    fn derivations_cover_every_subterm() {
        let d = derive_typing(&Basis::new(), &t("S K K"), &ty("a -> a")).unwrap();
        let stmts = d.statements();
        assert_eq!(stmts.len(), 5);
        assert_eq!(stmts[0].to_string(), "S K K : a -> a");
        for s in stmts {
            assert!(check_typing(&Basis::new(), &s.subject, &s.predicate));
        }
        let (g, d) = derive_atom(&t("x y"), &ty("a")).unwrap();
        assert_eq!(g.to_string(), "x : b -> a, y : b");
        assert_eq!(d.statements().len(), 3);
    }
}
