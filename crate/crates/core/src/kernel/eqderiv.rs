//! Checking of equational derivations built from the rules of weak equality,
//! optionally extended with the extensionality rule.

use std::fmt;

use serde::Serialize;

use super::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqRule {
    /// `M = M`
    Id,
    /// `S M N L = M L (N L)`
    S,
    /// `K M N = M`
    K,
    /// `I M = M`
    I,
    /// from `M = N` infer `N = M`
    Sym,
    /// from `M = P` and `P = N` infer `M = N`
    Trans,
    /// from `L = Q` infer `L P = Q P`
    AppL,
    /// from `L = Q` infer `P L = P Q`
    AppR,
    /// from `M x = N x` infer `M = N`, with `x` not in `M` or `N`
    Ext(String),
}

impl EqRule {
    fn premise_count(&self) -> usize {
        match self {
            EqRule::Id | EqRule::S | EqRule::K | EqRule::I => 0,
            EqRule::Trans => 2,
            _ => 1,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            EqRule::Id => "id",
            EqRule::S => "S",
            EqRule::K => "K",
            EqRule::I => "I",
            EqRule::Sym => "sym",
            EqRule::Trans => "trans",
            EqRule::AppL => "app-l",
            EqRule::AppR => "app-r",
            EqRule::Ext(_) => "ext",
        }
    }
}

/// A derivation tree; every node carries its conclusion `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqDerivation {
    pub rule: EqRule,
    pub lhs: Term,
    pub rhs: Term,
    pub premises: Vec<EqDerivation>,
}

impl EqDerivation {
    pub fn axiom(rule: EqRule, lhs: Term, rhs: Term) -> Self {
        EqDerivation {
            rule,
            lhs,
            rhs,
            premises: Vec::new(),
        }
    }

    pub fn node(rule: EqRule, lhs: Term, rhs: Term, premises: Vec<EqDerivation>) -> Self {
        EqDerivation {
            rule,
            lhs,
            rhs,
            premises,
        }
    }

    pub fn conclusion(&self) -> (&Term, &Term) {
        (&self.lhs, &self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EqCheck {
    Valid,
    /// `node` is the path of premise indices from the root.
    Invalid {
        node: Vec<usize>,
        reason: String,
    },
}

impl EqCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, EqCheck::Valid)
    }
}

impl fmt::Display for EqCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqCheck::Valid => f.write_str("valid"),
            EqCheck::Invalid { node, reason } => {
                let path: Vec<String> = node.iter().map(|i| i.to_string()).collect();
                write!(f, "invalid at node [{}]: {reason}", path.join("."))
            }
        }
    }
}

/// Checks every node of `d`. Nodes are visited root first, premises in order,
/// and the first failure is reported.
pub fn check_eq_derivation(d: &EqDerivation, allow_ext: bool) -> EqCheck {
    let mut stack: Vec<(&EqDerivation, Vec<usize>)> = vec![(d, Vec::new())];
    while let Some((node, path)) = stack.pop() {
        if let Err(reason) = check_node(node, allow_ext) {
            return EqCheck::Invalid { node: path, reason };
        }
        for (i, p) in node.premises.iter().enumerate().rev() {
            let mut child = path.clone();
            child.push(i);
            stack.push((p, child));
        }
    }
    EqCheck::Valid
}

fn check_node(d: &EqDerivation, allow_ext: bool) -> Result<(), String> {
    let want = d.rule.premise_count();
    if d.premises.len() != want {
        return Err(format!(
            "rule ({}) takes {want} premise(s), found {}",
            d.rule.name(),
            d.premises.len()
        ));
    }
    let (m, n) = (&d.lhs, &d.rhs);
    let shape = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(format!("conclusion {m} = {n} is not {what}"))
        }
    };
    match &d.rule {
        EqRule::Id => shape(m == n, "of the form M = M"),
        EqRule::K => {
            let (h, args) = m.spine();
            shape(
                *h == Term::K && args.len() == 2 && args[0] == n,
                "of the form K M N = M",
            )
        }
        EqRule::I => {
            let (h, args) = m.spine();
            shape(
                *h == Term::I && args.len() == 1 && args[0] == n,
                "of the form I M = M",
            )
        }
        EqRule::S => {
            let (h, args) = m.spine();
            let ok = *h == Term::S && args.len() == 3 && {
                let (a, b, c) = (args[0], args[1], args[2]);
                *n == Term::app(
                    Term::app(a.clone(), c.clone()),
                    Term::app(b.clone(), c.clone()),
                )
            };
            shape(ok, "of the form S M N L = M L (N L)")
        }
        EqRule::Sym => {
            let p = &d.premises[0];
            if p.lhs == *n && p.rhs == *m {
                Ok(())
            } else {
                Err(format!(
                    "(sym) of {} = {} cannot conclude {m} = {n}",
                    p.lhs, p.rhs
                ))
            }
        }
        EqRule::Trans => {
            let (p, q) = (&d.premises[0], &d.premises[1]);
            if p.rhs != q.lhs {
                return Err(format!("middle terms differ: {} and {}", p.rhs, q.lhs));
            }
            if p.lhs == *m && q.rhs == *n {
                Ok(())
            } else {
                Err(format!(
                    "(trans) of {} = {} and {} = {} cannot conclude {m} = {n}",
                    p.lhs, p.rhs, q.lhs, q.rhs
                ))
            }
        }
        EqRule::AppL | EqRule::AppR => {
            let p = &d.premises[0];
            let ok = match (m, n) {
                (Term::App(mf, ma), Term::App(nf, na)) => {
                    if d.rule == EqRule::AppL {
                        ma == na && **mf == p.lhs && **nf == p.rhs
                    } else {
                        mf == nf && **ma == p.lhs && **na == p.rhs
                    }
                }
                _ => false,
            };
            if ok {
                Ok(())
            } else {
                Err(format!(
                    "({}) of {} = {} cannot conclude {m} = {n}",
                    d.rule.name(),
                    p.lhs,
                    p.rhs
                ))
            }
        }
        EqRule::Ext(x) => {
            if !allow_ext {
                return Err("rule (ext) is not allowed here".into());
            }
            if m.occurs(x) || n.occurs(x) {
                return Err(format!("variable {x} occurs in {m} = {n}"));
            }
            let p = &d.premises[0];
            let xv = Term::Var(x.as_str().into());
            if p.lhs == Term::app(m.clone(), xv.clone()) && p.rhs == Term::app(n.clone(), xv) {
                Ok(())
            } else {
                Err(format!(
                    "(ext) premise {} = {} is not {m} {x} = {n} {x}",
                    p.lhs, p.rhs
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn k_axiom_is_valid() {
        let d = EqDerivation::axiom(EqRule::K, t("K m n"), t("m"));
        assert_eq!(check_eq_derivation(&d, false), EqCheck::Valid);
    }

    #[test]
    fn trans_with_mismatched_middle_is_invalid() {
        let s = EqDerivation::axiom(EqRule::S, t("S K K x"), t("K x (K x)"));
        let id = EqDerivation::axiom(EqRule::Id, t("x"), t("x"));
        let d = EqDerivation::node(EqRule::Trans, t("S K K x"), t("x"), vec![s, id]);
        match check_eq_derivation(&d, false) {
            EqCheck::Invalid { node, .. } => assert!(node.is_empty()),
            v => panic!("{v:?}"),
        }
    }

    fn skk_ext() -> EqDerivation {
        let s = EqDerivation::axiom(EqRule::S, t("S K K x"), t("K x (K x)"));
        let k = EqDerivation::axiom(EqRule::K, t("K x (K x)"), t("x"));
        let left = EqDerivation::node(EqRule::Trans, t("S K K x"), t("x"), vec![s, k]);
        let i = EqDerivation::axiom(EqRule::I, t("I x"), t("x"));
        let right = EqDerivation::node(EqRule::Sym, t("x"), t("I x"), vec![i]);
        let premise = EqDerivation::node(EqRule::Trans, t("S K K x"), t("I x"), vec![left, right]);
        EqDerivation::node(EqRule::Ext("x".into()), t("S K K"), t("I"), vec![premise])
    }

    #[test]
    fn ext_derivation_of_skk_equals_i() {
        let d = skk_ext();
        assert_eq!(check_eq_derivation(&d, true), EqCheck::Valid);
        assert_eq!(
            check_eq_derivation(&d, false),
            EqCheck::Invalid {
                node: vec![],
                reason: "rule (ext) is not allowed here".into()
            }
        );
    }

    #[test]
    fn ext_variable_must_be_fresh() {
        let prem = EqDerivation::axiom(EqRule::Id, t("x x"), t("x x"));
        let d = EqDerivation::node(EqRule::Ext("x".into()), t("x"), t("x"), vec![prem]);
        assert!(!check_eq_derivation(&d, true).is_valid());
    }

    #[test]
    fn app_rules_and_failures_report_paths() {
        let i = EqDerivation::axiom(EqRule::I, t("I y"), t("y"));
        let l = EqDerivation::node(EqRule::AppL, t("I y z"), t("y z"), vec![i.clone()]);
        assert!(check_eq_derivation(&l, false).is_valid());
        let r = EqDerivation::node(EqRule::AppR, t("z (I y)"), t("z y"), vec![i]);
        assert!(check_eq_derivation(&r, false).is_valid());
        let bad_leaf = EqDerivation::axiom(EqRule::K, t("K y"), t("y"));
        let d = EqDerivation::node(EqRule::AppR, t("z (K y)"), t("z y"), vec![bad_leaf]);
        assert_eq!(
            match check_eq_derivation(&d, false) {
                EqCheck::Invalid { node, .. } => node,
                _ => vec![99],
            },
            vec![0]
        );
    }
}
