//! Small exact expression language for parameter constraints:
//! integers, identifiers, + - * / ^ and parentheses.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::field::Field;
use super::numfield::{FieldElem, NumberField};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("{s:?} at {i}"), format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
    field: &'a Arc<NumberField>,
    vars: &'a BTreeMap<String, FieldElem>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("{:?} token {}", self.src, self.pos), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.parse::<u64>().map_err(|_| self.err("bad exponent"))?,
                _ => return Err(self.err("exponent must be an integer")),
            };
            self.pos += 1;
            let p = base.pow(e);
            return if neg { p.inv().map_err(|_| self.err("division by zero")) } else { Ok(p) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElem> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(FieldElem::from_rat(self.field, n.parse::<Rat>()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.vars.get(&name).cloned().ok_or_else(|| self.err(&format!("unknown identifier {name}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing )"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected a number, identifier or (")),
        }
    }
}

/// Evaluates `src` in the field with the given variable bindings.
pub fn eval_expr(src: &str, field: &Arc<NumberField>, vars: &BTreeMap<String, FieldElem>) -> Result<FieldElem> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, src, field, vars };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_in_number_field() {
        let k = NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1]).unwrap();
        let mut vars = BTreeMap::new();
        vars.insert("a".to_string(), FieldElem::generator(&k));
        assert!(eval_expr("a^6 + a^3 + 1", &k, &vars).unwrap().is_zero());
        assert!(eval_expr("a^-1 + a^5 + a^2", &k, &vars).unwrap().is_zero());
        assert!(eval_expr("(1/2 - 1/2)*a", &k, &vars).unwrap().is_zero());
        assert!(eval_expr("b + 1", &k, &vars).is_err());
        assert!(eval_expr("1 /", &k, &vars).is_err());
    }
}
