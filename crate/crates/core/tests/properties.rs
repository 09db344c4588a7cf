mod common;

use std::collections::BTreeSet;

use common::*;
use lcl_core::kernel::{
    check_eq_derivation, ext_equal, find_redexes, normalize, reduce_step, substitute, weak_equal,
    EqDerivation, EqRule, Normalization,
};
use lcl_core::logic::{
    ax6, ax7, ax8, check_proof, deduction_transform, instantiate, match_axiom_as, proves,
    truth_table_valid, AxiomId, Binding, Instantiation, Justification,
};
use lcl_core::semantics::{interpret, term_model, Environment};
use lcl_core::types::{check_typing, check_typing_eq, infer_type, restrict_basis};
use lcl_core::{Basis, Bounds, Formula, HilbertProof, SimpleType, Term, TriBool};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn arb_term(max_depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::S),
        Just(Term::K),
        Just(Term::I),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(max_depth, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::app(a, b))
    })
}

fn arb_type() -> impl Strategy<Value = SimpleType> {
    let leaf = prop::sample::select(vec!["a", "b", "c"]).prop_map(SimpleType::var);
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| SimpleType::arrow(a, b))
    })
}

fn arb_basis() -> impl Strategy<Value = Basis> {
    prop::collection::vec(prop::option::of(arb_type()), 3).prop_map(|tys| {
        ["x", "y", "z"]
            .iter()
            .zip(tys)
            .filter_map(|(x, t)| t.map(|t| (x.to_string(), t)))
            .collect()
    })
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(atom_pool());
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

/// Matching where variables in `fixed` only match themselves.
fn matches_fixed(
    p: &SimpleType,
    t: &SimpleType,
    fixed: &BTreeSet<String>,
    sub: &mut Vec<(String, SimpleType)>,
) -> bool {
    match p {
        SimpleType::Var(v) if fixed.contains(&**v) => p == t,
        SimpleType::Var(v) => match sub.iter().find(|(k, _)| **k == **v) {
            Some((_, b)) => b == t,
            None => {
                sub.push((v.to_string(), t.clone()));
                true
            }
        },
        SimpleType::Arrow(p1, p2) => match t {
            SimpleType::Arrow(t1, t2) => {
                matches_fixed(p1, t1, fixed, sub) && matches_fixed(p2, t2, fixed, sub)
            }
            _ => false,
        },
    }
}

fn has_ext(d: &EqDerivation) -> bool {
    matches!(d.rule, EqRule::Ext(_)) || d.premises.iter().any(has_ext)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // kernel

    #[test]
    fn normalize_is_deterministic(m in arb_term(5)) {
        prop_assert_eq!(normalize(&m, 500), normalize(&m, 500));
    }

    #[test]
    fn random_redex_strategy_agrees(m in arb_term(4), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut cur = m.clone();
        let mut random_nf = None;
        for _ in 0..2000 {
            let sites = find_redexes(&cur);
            match sites.choose(&mut rng) {
                None => { random_nf = Some(cur.clone()); break; }
                Some(site) => cur = reduce_step(&cur, site).unwrap(),
            }
            if cur.size() > 5000 { break; }
        }
        if let (Some(r), Normalization::NormalForm { term, .. }) = (random_nf, normalize(&m, 10_000)) {
            prop_assert_eq!(r, term);
        }
    }

    #[test]
    fn valid_derivations_are_weakly_sound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = eq_derivation(&mut rng, 8, 10);
        prop_assume!(!has_ext(&d));
        prop_assert!(check_eq_derivation(&d, false).is_valid());
        prop_assert!(!weak_equal(&d.lhs, &d.rhs, 100_000).is_false());
    }

    #[test]
    fn substitution_commutes_with_contraction(m in arb_term(4), n in arb_term(2)) {
        for site in find_redexes(&m) {
            let m1 = reduce_step(&m, &site).unwrap();
            let sm = substitute(&m, "x", &n);
            let stepped = reduce_step(&sm, &site).unwrap();
            prop_assert_eq!(stepped, substitute(&m1, "x", &n));
        }
    }

    #[test]
    fn more_resources_never_flip_verdicts(m in arb_term(4), n in arb_term(4)) {
        let small = ext_equal(&m, &n, 20, 1);
        let large = ext_equal(&m, &n, 5000, 3);
        if let (Some(a), Some(b)) = (small.definite(), large.definite()) {
            prop_assert_eq!(a, b);
        }
        let small = weak_equal(&m, &n, 20);
        let large = weak_equal(&m, &n, 5000);
        if let (Some(a), Some(b)) = (small.definite(), large.definite()) {
            prop_assert_eq!(a, b);
        }
    }

    // types

    #[test]
    fn weakening_and_free_variables(seed in any::<u64>(), extra in arb_type()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (gamma, m, sigma) = typable_triple(&mut rng);
        prop_assert!(check_typing(&gamma, &m, &sigma));
        let fv = m.free_vars();
        prop_assert!(fv.iter().all(|x| gamma.contains(x)));
        let used: Vec<&String> = fv.iter().collect();
        prop_assert!(check_typing(&restrict_basis(&gamma, &used), &m, &sigma));
        let wider = gamma.clone().with("w", extra);
        prop_assert!(check_typing(&wider, &m, &sigma));
        prop_assert_eq!(check_typing_eq(&gamma, &m, &sigma, 10, 1), TriBool::True);
    }

    #[test]
    fn principal_types(gamma in arb_basis(), m in arb_term(4), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let Ok(principal) = infer_type(&gamma, &m) else { return Ok(()); };
        let fixed = gamma.type_vars();
        for _ in 0..10 {
            let inst = random_instance(&mut rng, &principal, &fixed);
            prop_assert!(check_typing(&gamma, &m, &inst), "{} : {}", m, inst);
            let other = random_type(&mut rng, 5);
            let oracle = matches_fixed(&principal, &other, &fixed, &mut Vec::new());
            prop_assert_eq!(check_typing(&gamma, &m, &other), oracle, "{} : {}", m, other);
        }
    }

    #[test]
    fn subject_reduction(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (gamma, m, sigma) = typable_triple(&mut rng);
        for site in find_redexes(&m) {
            let m1 = reduce_step(&m, &site).unwrap();
            prop_assert!(check_typing(&gamma, &m1, &sigma), "{} -> {}", m, m1);
        }
    }

    // logic

    #[test]
    fn propositional_proofs_are_tautological(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let atoms_only = rng.gen_bool(0.5);
        let p = random_proof(&mut rng, 20, atoms_only);
        prop_assume!(p.is_propositional());
        prop_assert!(truth_table_valid(&p.theory, p.conclusion().unwrap()).is_entailed());
    }

    #[test]
    fn deduction_round_trip(seed in any::<u64>()) {
        let b = Bounds::default();
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_proof(&mut rng, 30, false);
        let alpha = p.theory.choose(&mut rng).unwrap().clone();
        let beta = p.conclusion().unwrap().clone();
        let q = deduction_transform(&p, &alpha, &b).unwrap();
        prop_assert!(proves(&q, &Formula::implies(alpha.clone(), beta.clone()), &b));
        prop_assert!(q.len() <= 5 * p.len() + 5);
        let mut theory = q.theory.clone();
        theory.push(alpha.clone());
        let mut r = HilbertProof::new(theory.clone());
        for l in &q.lines {
            r.push(l.formula.clone(), l.justification.clone());
        }
        let imp = r.len() - 1;
        let h = r.push(alpha, Justification::Hypothesis(theory.len() - 1));
        r.push(beta.clone(), Justification::MP(imp, h));
        prop_assert!(proves(&r, &beta, &b));
    }

    #[test]
    fn axiom_instances_match(a in arb_formula(), b in arb_formula(), c in arb_formula(), s in arb_type(), u in arb_type()) {
        let bounds = Bounds::default();
        let cases: Vec<(AxiomId, Formula)> = vec![
            (AxiomId::Ax1, Formula::atom(Term::S, SimpleType::arrows(
                [SimpleType::arrows([s.clone(), u.clone()], s.clone())], SimpleType::arrows([SimpleType::arrow(s.clone(), u.clone())], SimpleType::arrow(s.clone(), s.clone())))) ),
            (AxiomId::Ax2, Formula::atom(Term::K, SimpleType::arrows([s.clone(), u.clone()], s.clone()))),
            (AxiomId::Ax3, Formula::atom(Term::I, SimpleType::arrow(s.clone(), s.clone()))),
            (AxiomId::Ax4, lcl_core::logic::ax4(&Term::K, &Term::var("x"), &s, &SimpleType::arrow(u.clone(), s.clone()))),
            (AxiomId::Ax5, Formula::implies(
                Formula::atom(t("I x"), s.clone()),
                Formula::atom(Term::var("x"), s.clone()))),
            (AxiomId::Ax6, ax6(&a, &b)),
            (AxiomId::Ax7, ax7(&a, &b, &c)),
            (AxiomId::Ax8, ax8(&a, &b)),
        ];
        for (id, g) in cases {
            prop_assert!(match_axiom_as(&g, id, &bounds).is_match(), "{} {}", id, g);
        }
        let inst = Instantiation(vec![
            ("alpha".into(), Binding::Formula(a.clone())),
            ("beta".into(), Binding::Formula(b.clone())),
        ]);
        prop_assert_eq!(instantiate(AxiomId::Ax6, &inst).unwrap(), ax6(&a, &b));
    }

    #[test]
    fn bad_mp_references_are_rejected(seed in any::<u64>()) {
        let b = Bounds::default();
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_proof(&mut rng, 25, false);
        for (k, line) in p.lines.iter().enumerate() {
            if let Justification::MP(i, j) = line.justification {
                if p.lines[i].formula != p.lines[j].formula {
                    let mut q = p.clone();
                    q.lines[k].justification = Justification::MP(j, i);
                    prop_assert!(check_proof(&q, &b).verdict.is_rejected());
                }
                let mut q = p.clone();
                q.lines[k].justification = Justification::MP(k, j);
                prop_assert!(check_proof(&q, &b).verdict.is_rejected());
                let mut q = p.clone();
                q.lines[k].justification = Justification::MP(i, k + 1);
                prop_assert!(check_proof(&q, &b).verdict.is_rejected());
            }
        }
    }

    // semantics

    #[test]
    fn irrelevance(m in arb_term(4), d in arb_term(2), e in arb_term(2)) {
        let model = term_model(Basis::new(), Bounds::default());
        let base = Environment::standard().with("x", d);
        let other = base.with("w", e.clone());
        prop_assert_eq!(interpret(&m, &base, &model), interpret(&m, &other, &model));
        if !m.occurs("y") {
            let moved = base.with("y", e);
            prop_assert_eq!(interpret(&m, &base, &model), interpret(&m, &moved, &model));
        }
    }

    #[test]
    fn substitution_lemma(m in arb_term(4), n in arb_term(3)) {
        let b = Bounds::default();
        let model = term_model(Basis::new(), b);
        let rho = Environment::standard();
        let lhs = interpret(&substitute(&m, "x", &n), &rho, &model);
        let rhs = interpret(&m, &rho.with("x", interpret(&n, &rho, &model)), &model);
        prop_assert_eq!(ext_equal(&lhs, &rhs, b.fuel, b.arity), TriBool::True);
    }

    // printing

    #[test]
    fn printed_values_reparse(m in arb_term(5), s in arb_type(), g in arb_formula(), seed in any::<u64>()) {
        prop_assert_eq!(Term::parse(&m.to_string()).unwrap(), m);
        prop_assert_eq!(SimpleType::parse(&s.to_string()).unwrap(), s);
        prop_assert_eq!(Formula::parse(&g.to_string()).unwrap(), g);
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_proof(&mut rng, 15, false);
        prop_assert_eq!(p.to_string().parse::<HilbertProof>().unwrap(), p);
    }
}
