//! The identity theorem and the deduction transformation.

use super::axioms::{ax6, ax7, AxiomId, Instantiation};
use super::formula::{wf_formula, Formula, Wf};
use super::proof::{check_proof, HilbertProof, Justification, ProofVerdict};
use crate::error::Error;
use crate::Bounds;

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

/// Appends the five-line derivation of `α ⇒ α` and returns the index of its
/// last line.
pub(crate) fn push_identity(p: &mut HilbertProof, alpha: &Formula) -> usize {
    let aa = imp(alpha, alpha);
    let l1 = p.push(
        ax6(alpha, &aa),
        Justification::Axiom(
            AxiomId::Ax6,
            Instantiation::of_formulas(AxiomId::Ax6, &[alpha, &aa]),
        ),
    );
    let l2 = p.push(
        ax7(alpha, &aa, alpha),
        Justification::Axiom(
            AxiomId::Ax7,
            Instantiation::of_formulas(AxiomId::Ax7, &[alpha, &aa, alpha]),
        ),
    );
    let l3 = p.push(imp(&imp(alpha, &aa), &aa), Justification::MP(l2, l1));
    let l4 = p.push(
        ax6(alpha, alpha),
        Justification::Axiom(
            AxiomId::Ax6,
            Instantiation::of_formulas(AxiomId::Ax6, &[alpha, alpha]),
        ),
    );
    p.push(aa, Justification::MP(l3, l4))
}

/// A closed five-line proof of `α ⇒ α`.
pub fn theorem_identity(alpha: &Formula) -> Result<HilbertProof, Error> {
    if let Wf::IllFormed { reason, .. } = wf_formula(alpha) {
        return Err(Error::IllFormed(reason));
    }
    let mut p = HilbertProof::default();
    push_identity(&mut p, alpha);
    Ok(p)
}

/// Turns an accepted proof of `β` from `T ∪ {α}` into a proof of `α ⇒ β`
/// from `T` (the input theory with every copy of `α` removed). Each input
/// line becomes at most five output lines.
pub fn deduction_transform(
    p: &HilbertProof,
    alpha: &Formula,
    bounds: &Bounds,
) -> Result<HilbertProof, Error> {
    if let Wf::IllFormed { reason, .. } = wf_formula(alpha) {
        return Err(Error::IllFormed(reason));
    }
    match check_proof(p, bounds).verdict {
        ProofVerdict::Accepted => {}
        v => {
            return Err(Error::Precondition(format!(
                "input proof is not accepted: {v}"
            )))
        }
    }
    let mut theory = Vec::new();
    let mut hyp_map = Vec::with_capacity(p.theory.len());
    for t in &p.theory {
        if t == alpha {
            hyp_map.push(None);
        } else {
            hyp_map.push(Some(theory.len()));
            theory.push(t.clone());
        }
    }
    let mut out = HilbertProof::new(theory);
    // index of the line proving `α ⇒ β_k` for each input line k
    let mut map: Vec<usize> = Vec::with_capacity(p.lines.len());
    for line in &p.lines {
        let beta = &line.formula;
        let target = match &line.justification {
            Justification::Hypothesis(k) if hyp_map[*k].is_none() => push_identity(&mut out, alpha),
            Justification::MP(i, j) => {
                let gamma = &p.lines[*j].formula;
                let ax = out.push(
                    ax7(alpha, gamma, beta),
                    Justification::Axiom(
                        AxiomId::Ax7,
                        Instantiation::of_formulas(AxiomId::Ax7, &[alpha, gamma, beta]),
                    ),
                );
                let mid = out.push(
                    imp(&imp(alpha, gamma), &imp(alpha, beta)),
                    Justification::MP(ax, map[*i]),
                );
                out.push(imp(alpha, beta), Justification::MP(mid, map[*j]))
            }
            just => {
                let just = match just {
                    Justification::Hypothesis(k) => {
                        Justification::Hypothesis(hyp_map[*k].expect("not the discharged formula"))
                    }
                    other => other.clone(),
                };
                let b = out.push(beta.clone(), just);
                let ax = out.push(
                    ax6(beta, alpha),
                    Justification::Axiom(
                        AxiomId::Ax6,
                        Instantiation::of_formulas(AxiomId::Ax6, &[beta, alpha]),
                    ),
                );
                out.push(imp(alpha, beta), Justification::MP(ax, b))
            }
        };
        map.push(target);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::proof::proves;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_accepted() {
        let b = Bounds::default();
        for a in ["x : a", "~(x : a)", "(x : a) => (y : b)"] {
            let alpha = f(a);
            let p = theorem_identity(&alpha).unwrap();
            assert_eq!(p.len(), 5);
            assert!(proves(&p, &imp(&alpha, &alpha), &b));
        }
        assert!(theorem_identity(&f("x x : a")).is_err());
    }

    #[test]
    fn discharging_the_only_hypothesis() {
        let alpha = f("x : a");
        let mut p = HilbertProof::new(vec![alpha.clone()]);
        p.push(alpha.clone(), Justification::Hypothesis(0));
        let q = deduction_transform(&p, &alpha, &Bounds::default()).unwrap();
        assert!(q.theory.is_empty());
        assert!(proves(&q, &imp(&alpha, &alpha), &Bounds::default()));
    }

    #[test]
    fn discharging_from_the_application_example() {
        let b = Bounds::default();
        let p: HilbertProof = "\
theory 1. m : a -> b
theory 2. n : a
1. m : a -> b ; hyp 1
2. n : a ; hyp 2
3. (m : a -> b) => ((n : a) => (m n : b)) ; Ax4
4. (n : a) => (m n : b) ; MP 3 1
5. m n : b ; MP 4 2
"
        .parse()
        .unwrap();
        let alpha = f("n : a");
        let q = deduction_transform(&p, &alpha, &b).unwrap();
        assert_eq!(q.theory, vec![f("m : a -> b")]);
        assert!(proves(&q, &f("(n : a) => (m n : b)"), &b));
        assert!(q.len() <= 5 * p.len() + 5);
    }

    #[test]
    fn vacuous_discharge() {
        let b = Bounds::default();
        let mut p = HilbertProof::default();
        p.push(
            f("K : a -> b -> a"),
            Justification::Axiom(AxiomId::Ax2, Instantiation::default()),
        );
        let alpha = f("y : c");
        let q = deduction_transform(&p, &alpha, &b).unwrap();
        assert_eq!(q.len(), 3);
        assert!(proves(&q, &f("(y : c) => (K : a -> b -> a)"), &b));
    }
}
