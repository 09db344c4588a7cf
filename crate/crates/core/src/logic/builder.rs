//! Proof construction with temporary assumptions.
//!
//! Lines live in a shared graph. Each node records which assumptions it
//! depends on, so an assumption can be discharged by rewriting only the
//! nodes that actually use it (the others are weakened with `Ax6`). Nodes
//! with the same formula are shared whenever the existing node needs no
//! more assumptions than the new one would.

use std::collections::{BTreeMap, HashMap};

use super::axioms::{ax6, ax7, ax8, AxiomId, Instantiation};
use super::formula::Formula;
use super::proof::{HilbertProof, Justification};
use crate::types::Statement;

#[derive(Clone, Debug)]
enum Just {
    Theory(usize),
    Assume,
    Axiom(AxiomId, Instantiation),
    Mp(usize, usize),
}

#[derive(Clone, Debug)]
struct Node {
    formula: Formula,
    just: Just,
    deps: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Lemma {
    Identity,
    DoubleNegElim,
    DoubleNegIntro,
    NegImp,
    ContraRev,
    Contra,
    ImpFalse,
    Cases,
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

fn neg(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

fn subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[derive(Default)]
pub(crate) struct Builder {
    theory: Vec<Formula>,
    nodes: Vec<Node>,
    index: HashMap<Formula, Vec<usize>>,
    hyps: Vec<Formula>,
    hyp_ids: HashMap<Formula, u32>,
    discharged: HashMap<(usize, u32), usize>,
    lemmas: HashMap<(Lemma, Vec<Formula>), usize>,
}

impl Builder {
    pub fn new(theory: Vec<Formula>) -> Self {
        Builder {
            theory,
            ..Default::default()
        }
    }

    pub fn formula(&self, n: usize) -> &Formula {
        &self.nodes[n].formula
    }

    fn add(&mut self, formula: Formula, just: Just, deps: Vec<u32>) -> usize {
        if let Some(ids) = self.index.get(&formula) {
            if let Some(&n) = ids.iter().find(|&&n| subset(&self.nodes[n].deps, &deps)) {
                return n;
            }
        }
        let n = self.nodes.len();
        self.index.entry(formula.clone()).or_default().push(n);
        self.nodes.push(Node {
            formula,
            just,
            deps,
        });
        n
    }

    pub fn theory_line(&mut self, k: usize) -> usize {
        let f = self.theory[k].clone();
        self.add(f, Just::Theory(k), Vec::new())
    }

    /// Any already-built node proving `f` without assumptions.
    pub fn find_closed(&self, f: &Formula) -> Option<usize> {
        self.index
            .get(f)?
            .iter()
            .copied()
            .find(|&n| self.nodes[n].deps.is_empty())
    }

    pub fn axiom(&mut self, formula: Formula, id: AxiomId, inst: Instantiation) -> usize {
        self.add(formula, Just::Axiom(id, inst), Vec::new())
    }

    fn ax6(&mut self, a: &Formula, b: &Formula) -> usize {
        self.axiom(
            ax6(a, b),
            AxiomId::Ax6,
            Instantiation::of_formulas(AxiomId::Ax6, &[a, b]),
        )
    }

    fn ax7(&mut self, a: &Formula, b: &Formula, c: &Formula) -> usize {
        self.axiom(
            ax7(a, b, c),
            AxiomId::Ax7,
            Instantiation::of_formulas(AxiomId::Ax7, &[a, b, c]),
        )
    }

    fn ax8(&mut self, a: &Formula, b: &Formula) -> usize {
        self.axiom(
            ax8(a, b),
            AxiomId::Ax8,
            Instantiation::of_formulas(AxiomId::Ax8, &[a, b]),
        )
    }

    fn hyp_id(&mut self, f: &Formula) -> u32 {
        if let Some(&h) = self.hyp_ids.get(f) {
            return h;
        }
        let h = self.hyps.len() as u32;
        self.hyps.push(f.clone());
        self.hyp_ids.insert(f.clone(), h);
        h
    }

    pub fn assume(&mut self, f: &Formula) -> usize {
        let h = self.hyp_id(f);
        self.add(f.clone(), Just::Assume, vec![h])
    }

    /// Modus ponens: `i` proves `a ⇒ b`, `j` proves `a`.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let (a, b) = self.nodes[i]
            .formula
            .as_implies()
            .expect("major premise is an implication");
        debug_assert_eq!(a, &self.nodes[j].formula);
        let b = b.clone();
        let deps = union(&self.nodes[i].deps, &self.nodes[j].deps);
        self.add(b, Just::Mp(i, j), deps)
    }

    /// A node proving `α ⇒ φ` where `α` is the assumption `alpha` and `φ`
    /// the formula of `root`; it no longer depends on `alpha`.
    pub fn discharge(&mut self, root: usize, alpha: &Formula) -> usize {
        let h = self.hyp_id(alpha);
        let mut stack = vec![(root, false)];
        while let Some((n, expanded)) = stack.pop() {
            if self.discharged.contains_key(&(n, h)) {
                continue;
            }
            let out = if self.nodes[n].deps.binary_search(&h).is_err() {
                let beta = self.nodes[n].formula.clone();
                let w = self.ax6(&beta, alpha);
                self.mp(w, n)
            } else {
                match self.nodes[n].just.clone() {
                    Just::Assume => self.identity(alpha),
                    Just::Mp(i, j) => {
                        if !expanded {
                            stack.push((n, true));
                            stack.push((i, false));
                            stack.push((j, false));
                            continue;
                        }
                        let (di, dj) = (self.discharged[&(i, h)], self.discharged[&(j, h)]);
                        let gamma = self.nodes[j].formula.clone();
                        let beta = self.nodes[n].formula.clone();
                        let a7 = self.ax7(alpha, &gamma, &beta);
                        let m = self.mp(a7, di);
                        self.mp(m, dj)
                    }
                    _ => unreachable!("only assumptions and MP lines carry dependencies"),
                }
            };
            self.discharged.insert((n, h), out);
        }
        self.discharged[&(root, h)]
    }

    fn cached(&mut self, lemma: Lemma, args: &[&Formula]) -> Result<usize, Vec<Formula>> {
        let key: Vec<Formula> = args.iter().map(|f| (*f).clone()).collect();
        match self.lemmas.get(&(lemma, key.clone())) {
            Some(&n) => Ok(n),
            None => Err(key),
        }
    }

    fn remember(&mut self, lemma: Lemma, key: Vec<Formula>, n: usize) -> usize {
        debug_assert!(self.nodes[n].deps.is_empty());
        self.lemmas.insert((lemma, key), n);
        n
    }

    /// `α ⇒ α`
    pub fn identity(&mut self, a: &Formula) -> usize {
        let key = match self.cached(Lemma::Identity, &[a]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let aa = imp(a, a);
        let l1 = self.ax6(a, &aa);
        let l2 = self.ax7(a, &aa, a);
        let l3 = self.mp(l2, l1);
        let l4 = self.ax6(a, a);
        let n = self.mp(l3, l4);
        self.remember(Lemma::Identity, key, n)
    }

    /// `¬¬β ⇒ β`
    pub fn double_neg_elim(&mut self, b: &Formula) -> usize {
        let key = match self.cached(Lemma::DoubleNegElim, &[b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let nb = neg(b);
        let nnb = neg(&nb);
        let h = self.assume(&nnb);
        let a8 = self.ax8(b, &nb);
        let w = self.ax6(&nnb, &nb);
        let l4 = self.mp(w, h);
        let l5 = self.mp(a8, l4);
        let id = self.identity(&nb);
        let l7 = self.mp(l5, id);
        let n = self.discharge(l7, &nnb);
        self.remember(Lemma::DoubleNegElim, key, n)
    }

    /// `β ⇒ ¬¬β`
    pub fn double_neg_intro(&mut self, b: &Formula) -> usize {
        let key = match self.cached(Lemma::DoubleNegIntro, &[b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let nb = neg(b);
        let nnb = neg(&nb);
        let nnnb = neg(&nnb);
        let a8 = self.ax8(&nnb, b);
        let l = self.double_neg_elim(&nb);
        let m = self.mp(a8, l);
        let h = self.assume(b);
        let w = self.ax6(b, &nnnb);
        let w = self.mp(w, h);
        let r = self.mp(m, w);
        let n = self.discharge(r, b);
        self.remember(Lemma::DoubleNegIntro, key, n)
    }

    /// `¬α ⇒ (α ⇒ β)`
    pub fn neg_imp(&mut self, a: &Formula, b: &Formula) -> usize {
        let key = match self.cached(Lemma::NegImp, &[a, b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let na = neg(a);
        let nb = neg(b);
        let h1 = self.assume(&na);
        let h2 = self.assume(a);
        let w1 = self.ax6(a, &nb);
        let l4 = self.mp(w1, h2);
        let w2 = self.ax6(&na, &nb);
        let l6 = self.mp(w2, h1);
        let a8 = self.ax8(b, a);
        let l8 = self.mp(a8, l6);
        let l9 = self.mp(l8, l4);
        let d = self.discharge(l9, a);
        let n = self.discharge(d, &na);
        self.remember(Lemma::NegImp, key, n)
    }

    /// `(¬β ⇒ ¬α) ⇒ (α ⇒ β)`
    pub fn contra_rev(&mut self, a: &Formula, b: &Formula) -> usize {
        let key = match self.cached(Lemma::ContraRev, &[a, b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let nb = neg(b);
        let hyp = imp(&nb, &neg(a));
        let h1 = self.assume(&hyp);
        let h2 = self.assume(a);
        let a8 = self.ax8(b, a);
        let m1 = self.mp(a8, h1);
        let w = self.ax6(a, &nb);
        let w = self.mp(w, h2);
        let r = self.mp(m1, w);
        let d = self.discharge(r, a);
        let n = self.discharge(d, &hyp);
        self.remember(Lemma::ContraRev, key, n)
    }

    /// `(α ⇒ β) ⇒ (¬β ⇒ ¬α)`
    pub fn contra(&mut self, a: &Formula, b: &Formula) -> usize {
        let key = match self.cached(Lemma::Contra, &[a, b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let ab = imp(a, b);
        let nna = neg(&neg(a));
        let h1 = self.assume(&ab);
        let h2 = self.assume(&nna);
        let dne = self.double_neg_elim(a);
        let x = self.mp(dne, h2);
        let y = self.mp(h1, x);
        let dni = self.double_neg_intro(b);
        let z = self.mp(dni, y);
        let d = self.discharge(z, &nna);
        let cr = self.contra_rev(&neg(b), &neg(a));
        let e = self.mp(cr, d);
        let n = self.discharge(e, &ab);
        self.remember(Lemma::Contra, key, n)
    }

    /// `α ⇒ (¬β ⇒ ¬(α ⇒ β))`
    pub fn imp_false(&mut self, a: &Formula, b: &Formula) -> usize {
        let key = match self.cached(Lemma::ImpFalse, &[a, b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let ab = imp(a, b);
        let h1 = self.assume(a);
        let h2 = self.assume(&ab);
        let r = self.mp(h2, h1);
        let d = self.discharge(r, &ab);
        let c = self.contra(&ab, b);
        let e = self.mp(c, d);
        let n = self.discharge(e, a);
        self.remember(Lemma::ImpFalse, key, n)
    }

    /// `(α ⇒ β) ⇒ ((¬α ⇒ β) ⇒ β)`
    pub fn cases(&mut self, a: &Formula, b: &Formula) -> usize {
        let key = match self.cached(Lemma::Cases, &[a, b]) {
            Ok(n) => return n,
            Err(k) => k,
        };
        let na = neg(a);
        let ab = imp(a, b);
        let nab = imp(&na, b);
        let h1 = self.assume(&ab);
        let h2 = self.assume(&nab);
        let c1 = self.contra(a, b);
        let x = self.mp(c1, h1);
        let c2 = self.contra(&na, b);
        let y = self.mp(c2, h2);
        let a8 = self.ax8(b, &na);
        let z = self.mp(a8, y);
        let z = self.mp(z, x);
        let d = self.discharge(z, &nab);
        let n = self.discharge(d, &ab);
        self.remember(Lemma::Cases, key, n)
    }

    /// Proves `φ` if it is true under `v`, else `¬φ`, from the literals of
    /// `v` as assumptions. Returns the node and the truth value.
    pub fn kalmar(&mut self, f: &Formula, v: &BTreeMap<Statement, bool>) -> (usize, bool) {
        match f {
            Formula::Atom(s) => {
                if v[s] {
                    (self.assume(f), true)
                } else {
                    (self.assume(&neg(f)), false)
                }
            }
            Formula::Not(a) => {
                let (n, val) = self.kalmar(a, v);
                if val {
                    let dni = self.double_neg_intro(a);
                    (self.mp(dni, n), false)
                } else {
                    (n, true)
                }
            }
            Formula::Implies(a, b) => {
                let (na, va) = self.kalmar(a, v);
                if !va {
                    let l = self.neg_imp(a, b);
                    return (self.mp(l, na), true);
                }
                let (nb, vb) = self.kalmar(b, v);
                if vb {
                    let w = self.ax6(b, a);
                    (self.mp(w, nb), true)
                } else {
                    let l = self.imp_false(a, b);
                    let m = self.mp(l, na);
                    (self.mp(m, nb), false)
                }
            }
        }
    }

    /// Proves the tautology `f` by splitting on `atoms[k..]`, with the
    /// earlier atoms fixed by `v`.
    pub fn eliminate(
        &mut self,
        f: &Formula,
        atoms: &[Statement],
        k: usize,
        v: &mut BTreeMap<Statement, bool>,
    ) -> usize {
        if k == atoms.len() {
            let (n, val) = self.kalmar(f, v);
            assert!(val, "formula is not a tautology");
            return n;
        }
        let p = Formula::Atom(atoms[k].clone());
        let np = neg(&p);
        v.insert(atoms[k].clone(), true);
        let a = self.eliminate(f, atoms, k + 1, v);
        let hp = self.hyp_id(&p);
        if self.nodes[a].deps.binary_search(&hp).is_err() {
            return a;
        }
        v.insert(atoms[k].clone(), false);
        let b = self.eliminate(f, atoms, k + 1, v);
        let hn = self.hyp_id(&np);
        if self.nodes[b].deps.binary_search(&hn).is_err() {
            return b;
        }
        let da = self.discharge(a, &p);
        let db = self.discharge(b, &np);
        let g = self.cases(&p, f);
        let m = self.mp(g, da);
        self.mp(m, db)
    }

    /// The lines needed for `root`, in order, as a proof from the theory.
    pub fn extract(&self, root: usize) -> HilbertProof {
        assert!(self.nodes[root].deps.is_empty(), "open assumptions remain");
        let mut keep = vec![false; root + 1];
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            if keep[n] {
                continue;
            }
            keep[n] = true;
            if let Just::Mp(i, j) = self.nodes[n].just {
                stack.push(i);
                stack.push(j);
            }
        }
        let mut renum = vec![usize::MAX; root + 1];
        let mut p = HilbertProof::new(self.theory.clone());
        for n in (0..=root).filter(|&n| keep[n]) {
            let node = &self.nodes[n];
            let just = match &node.just {
                Just::Theory(k) => Justification::Hypothesis(*k),
                Just::Axiom(id, inst) => Justification::Axiom(*id, inst.clone()),
                Just::Mp(i, j) => Justification::MP(renum[*i], renum[*j]),
                Just::Assume => unreachable!("closed proofs use no assumptions"),
            };
            renum[n] = p.push(node.formula.clone(), just);
        }
        p
    }
}
