use std::fmt;

use crate::error::Error;
use crate::kernel::{ext_equal, Term, TriBool};
use crate::types::{check_typing_eq, Basis, SimpleType};
use crate::Bounds;

use super::ApplicativeStructure;

/// The term model over a basis: elements are terms standing for their
/// classes under extensional equality, application is syntactic, and the
/// carrier of `σ` holds the terms typable with `σ` from the basis modulo
/// equality. Both relations are decided within the stored bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermModel {
    pub basis: Basis,
    pub bounds: Bounds,
}

pub fn term_model(gamma: Basis, bounds: Bounds) -> TermModel {
    TermModel {
        basis: gamma,
        bounds,
    }
}

impl TermModel {
    pub fn membership(&self, m: &Term, sigma: &SimpleType) -> TriBool {
        self.member(m, sigma)
    }
}

impl ApplicativeStructure for TermModel {
    type Element = Term;

    fn apply(&self, d: &Term, e: &Term) -> Term {
        Term::app(d.clone(), e.clone())
    }

    fn s(&self) -> Term {
        Term::S
    }

    fn k(&self) -> Term {
        Term::K
    }

    fn i(&self) -> Term {
        Term::I
    }

    fn equal(&self, d: &Term, e: &Term) -> TriBool {
        ext_equal(d, e, self.bounds.fuel, self.bounds.arity)
    }

    fn member(&self, d: &Term, sigma: &SimpleType) -> TriBool {
        check_typing_eq(&self.basis, d, sigma, self.bounds.fuel, self.bounds.arity)
    }
}

impl fmt::Display for TermModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bounds: fuel={}, arity={}",
            self.bounds.fuel, self.bounds.arity
        )?;
        write!(f, "{}", self.basis)
    }
}

/// A parsed model description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub basis: Basis,
    pub bounds: Bounds,
}

impl ModelFile {
    pub fn model(&self) -> TermModel {
        term_model(self.basis.clone(), self.bounds)
    }
}

/// Reads a model file: an optional `bounds: fuel=N, arity=N` header
/// followed by a basis, possibly spread over several lines. `#` starts a
/// comment. Bounds not given keep the values in `defaults`.
pub fn parse_model_file(src: &str, defaults: Bounds) -> Result<ModelFile, Error> {
    let mut bounds = defaults;
    let mut decls: Vec<&str> = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("bounds:") {
            for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let bad = || Error::Format {
                    line: n + 1,
                    message: format!("bad bound `{item}`"),
                };
                let (key, value) = item.split_once('=').ok_or_else(bad)?;
                let value = value.trim();
                match key.trim() {
                    "fuel" => bounds.fuel = value.parse().map_err(|_| bad())?,
                    "arity" => bounds.arity = value.parse().map_err(|_| bad())?,
                    "depth" => bounds.depth = value.parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                }
            }
        } else {
            decls.push(line.trim_end_matches(','));
        }
    }
    let basis = Basis::parse(&decls.join(", "))?;
    Ok(ModelFile { basis, bounds })
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

    #[test]
    fn membership_examples() {
        let b = Bounds::default();
        let empty = term_model(Basis::new(), b);
        assert_eq!(empty.membership(&t("I"), &ty("a -> a")), TriBool::True);
        assert_eq!(empty.membership(&t("x"), &ty("a")), TriBool::False);
        let m = term_model(Basis::parse("x : s").unwrap(), b);
        assert_eq!(m.membership(&t("K x y"), &ty("s")), TriBool::True);
    }

    #[test]
    fn model_files() {
        let f = parse_model_file(
            "bounds: fuel=50, arity=2\nx : s,\ny : a -> b # note\n",
            Bounds::default(),
        )
        .unwrap();
        assert_eq!(f.bounds, Bounds::new(50, 2, Bounds::DEFAULT_DEPTH));
        assert_eq!(f.basis.to_string(), "x : s, y : a -> b");
        let f = parse_model_file("", Bounds::default()).unwrap();
        assert!(f.basis.is_empty());
        assert!(parse_model_file("bounds: speed=3", Bounds::default()).is_err());
        assert!(parse_model_file("x : ", Bounds::default()).is_err());
    }
}
