//! Lexer and recursive-descent parsers for the text grammars.
//!
//! * terms: `x | S | K | I | M N | (M)`, application left-associative;
//! * types: `a | s -> t | (s)`, arrows right-associative;
//! * statements: `M : sigma`;
//! * bases: `x : a -> b, y : c`;
//! * formulas: atoms, `~`, `&`, `|`, `=>` (right-associative), `<=>`, in
//!   decreasing binding strength.
//!
//! The unicode forms `→ ⇒ ¬ ∧ ∨ ⇔` are accepted as synonyms.

use std::sync::Arc;

use crate::error::ParseError;
use crate::kernel::Term;
use crate::logic::Formula;
use crate::types::{Basis, SimpleType, Statement};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Comb(char),
    LParen,
    RParen,
    Colon,
    Comma,
    Arrow,
    Implies,
    Iff,
    Not,
    And,
    Or,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '⇒' => Tok::Implies,
            '⇔' => Tok::Iff,
            'S' | 'K' | 'I' => Tok::Comb(c),
            '-' => {
                it.next();
                match it.peek() {
                    Some(&(_, '>')) => Tok::Arrow,
                    _ => return Err(ParseError::new(pos, "expected '->'")),
                }
            }
            '=' => {
                it.next();
                match it.peek() {
                    Some(&(_, '>')) => Tok::Implies,
                    _ => return Err(ParseError::new(pos, "expected '=>'")),
                }
            }
            '<' => {
                it.next();
                let ok =
                    matches!(it.next(), Some((_, '='))) && matches!(it.peek(), Some(&(_, '>')));
                if !ok {
                    return Err(ParseError::new(pos, "expected '<=>'"));
                }
                Tok::Iff
            }
            c if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(name), pos));
                continue;
            }
            c => return Err(ParseError::new(pos, format!("unexpected character {c:?}"))),
        };
        it.next();
        out.push((tok, pos));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Comb(_) | Tok::LParen)
        )
    }

    fn term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(x)) => {
                self.pos += 1;
                Ok(Term::Var(Arc::from(x.as_str())))
            }
            Some(Tok::Comb(c)) => {
                self.pos += 1;
                Ok(match c {
                    'S' => Term::S,
                    'K' => Term::K,
                    _ => Term::I,
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => self.err("expected a term"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.term_atom()?;
        while self.starts_term() {
            let a = self.term_atom()?;
            t = Term::app(t, a);
        }
        Ok(t)
    }

    fn ty_atom(&mut self) -> Result<SimpleType, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(a)) => {
                self.pos += 1;
                Ok(SimpleType::Var(Arc::from(a.as_str())))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => self.err("expected a type"),
        }
    }

    fn ty(&mut self) -> Result<SimpleType, ParseError> {
        let dom = self.ty_atom()?;
        if self.eat(&Tok::Arrow) {
            let cod = self.ty()?;
            Ok(SimpleType::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let subject = self.term()?;
        self.expect(&Tok::Colon, "':'")?;
        let predicate = self.ty()?;
        Ok(Statement::new(subject, predicate))
    }

    fn basis(&mut self) -> Result<Basis, ParseError> {
        let mut basis = Basis::new();
        if self.peek().is_none() {
            return Ok(basis);
        }
        loop {
            let at = self.offset();
            let x = match self.peek().cloned() {
                Some(Tok::Ident(x)) => x,
                _ => return self.err("expected a term variable"),
            };
            self.pos += 1;
            self.expect(&Tok::Colon, "':'")?;
            let ty = self.ty()?;
            if basis.insert(&x, ty).is_some() {
                return Err(ParseError::new(at, format!("duplicate declaration of {x}")));
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(basis)
    }

    // formula := iff
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let g = self.conjunction()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if self.peek() == Some(&Tok::LParen) {
            // Either a parenthesised formula or an atom whose subject starts
            // with a parenthesised term.
            let save = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.eat(&Tok::RParen) {
                    return Ok(f);
                }
            }
            self.pos = save;
        }
        Ok(Formula::Atom(self.statement()?))
    }
}

fn run<T>(
    src: &str,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(src)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    run(src, Parser::term)
}

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    run(src, Parser::ty)
}

pub fn parse_statement(src: &str) -> Result<Statement, ParseError> {
    run(src, Parser::statement)
}

pub fn parse_basis(src: &str) -> Result<Basis, ParseError> {
    run(src, Parser::basis)
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    run(src, Parser::formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_grammar() {
        let m = parse_term("SKK x").unwrap();
        assert_eq!(m.to_string(), "S K K x");
        assert!(parse_term("").is_err());
        assert!(parse_term("S (K").is_err());
        assert!(parse_term("B x").is_err());
    }

    #[test]
    fn type_grammar_is_right_associative() {
        let t = parse_type("a -> b -> a").unwrap();
        assert_eq!(t, parse_type("a -> (b -> a)").unwrap());
        assert_eq!(t.to_string(), "a -> (b -> a)");
        assert_eq!(parse_type("a → a").unwrap().to_string(), "a -> a");
    }

    #[test]
    fn basis_grammar() {
        let b = parse_basis("x : a -> b, y : c").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.to_string(), "x : a -> b, y : c");
        assert!(parse_basis("").unwrap().is_empty());
        assert!(parse_basis("x : a, x : b").is_err());
    }

    #[test]
    fn formula_grammar() {
        let f = parse_formula("(x : a) => (K x y : a)").unwrap();
        assert_eq!(f.to_string(), "(x : a) => (K x y : a)");
        let g = parse_formula("x : a => y : b => x : a").unwrap();
        assert_eq!(g.to_string(), "(x : a) => ((y : b) => (x : a))");
        let h = parse_formula("(S K) x : a").unwrap();
        assert_eq!(h.to_string(), "S K x : a");
        let n = parse_formula("~~(x : a) => x : a").unwrap();
        assert_eq!(n.to_string(), "~~(x : a) => (x : a)");
        assert!(parse_formula("x : a &").is_err());
    }

    #[test]
    fn derived_connectives_expand() {
        let a = parse_formula("x : a").unwrap();
        let b = parse_formula("y : b").unwrap();
        assert_eq!(
            parse_formula("x : a & y : b").unwrap(),
            Formula::not(Formula::implies(a.clone(), Formula::not(b.clone())))
        );
        assert_eq!(
            parse_formula("x : a | y : b").unwrap(),
            Formula::implies(Formula::not(a.clone()), b.clone())
        );
        assert_eq!(
            parse_formula("x : a <=> y : b").unwrap(),
            Formula::and(
                Formula::implies(a.clone(), b.clone()),
                Formula::implies(b, a)
            )
        );
    }
}
