//! Arithmetic expressions over named variables.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := integer | ident | '(' expr ')' | '|' expr '|'
//! ```
//!
//! An identifier that is not a known variable but spells a run of
//! single-letter variables is read as their product, so `ab` is `a*b`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Fraction, MultiPoly, Rational, VarNames};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Abs(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()|".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    abs_depth: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        match self.peek() {
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => true,
            Some(Tok::Op('|')) => self.abs_depth == 0,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_primary() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    // `cd^2` is `c d^2`: the power takes only the last letter
                    if let Expr::Var(name) = &base {
                        if name.len() > 1 && name.chars().all(|c| c.is_ascii_alphabetic()) {
                            let (head, last) = name.split_at(name.len() - 1);
                            return Ok(Expr::Mul(
                                Box::new(Expr::Var(head.to_string())),
                                Box::new(Expr::Pow(Box::new(Expr::Var(last.to_string())), e)),
                            ));
                        }
                    }
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let saved = self.abs_depth;
                self.abs_depth = 0;
                let e = self.expr()?;
                self.abs_depth = saved;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op('|')) => {
                self.pos += 1;
                self.abs_depth += 1;
                let e = self.expr()?;
                self.abs_depth -= 1;
                if !self.eat('|') {
                    return Err(self.err("expected closing `|`"));
                }
                Ok(Expr::Abs(Box::new(e)))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            abs_depth: 0,
            src,
        };
        let e = p.expr()?;
        if p.pos != toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Exact polynomial fraction in the given variables. `|.|` is rejected.
    pub fn to_fraction(&self, names: &VarNames) -> Result<Fraction> {
        Ok(match self {
            Expr::Num(n) => Fraction::from_poly(MultiPoly::constant(Rational::from_integer(n.clone()))),
            Expr::Var(s) => Fraction::from_poly(resolve(s, names)?),
            Expr::Neg(a) => a.to_fraction(names)?.neg(),
            Expr::Add(a, b) => a.to_fraction(names)?.add(&b.to_fraction(names)?),
            Expr::Sub(a, b) => a.to_fraction(names)?.sub(&b.to_fraction(names)?),
            Expr::Mul(a, b) => a.to_fraction(names)?.mul(&b.to_fraction(names)?),
            Expr::Div(a, b) => a.to_fraction(names)?.div(&b.to_fraction(names)?)?,
            Expr::Pow(a, e) => a.to_fraction(names)?.pow(*e),
            Expr::Abs(_) => {
                return Err(Error::Parse("absolute value has no polynomial form".into()));
            }
        })
    }

    /// Polynomial form; fails if the expression has a nonconstant
    /// denominator.
    pub fn to_poly(&self, names: &VarNames) -> Result<MultiPoly> {
        self.to_fraction(names)?
            .to_poly()
            .ok_or_else(|| Error::Parse("expression is not a polynomial".into()))
    }

    /// Numeric value with variables looked up by name.
    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational> {
        Ok(match self {
            Expr::Num(n) => Rational::from_integer(n.clone()),
            Expr::Var(s) => lookup(s).ok_or_else(|| Error::MissingVariable(s.clone()))?,
            Expr::Neg(a) => -a.eval(lookup)?,
            Expr::Add(a, b) => a.eval(lookup)? + b.eval(lookup)?,
            Expr::Sub(a, b) => a.eval(lookup)? - b.eval(lookup)?,
            Expr::Mul(a, b) => a.eval(lookup)? * b.eval(lookup)?,
            Expr::Div(a, b) => {
                let d = b.eval(lookup)?;
                if d.is_zero() {
                    return Err(Error::Invalid("division by zero".into()));
                }
                a.eval(lookup)? / d
            }
            Expr::Pow(a, e) => num_traits::pow(a.eval(lookup)?, *e as usize),
            Expr::Abs(a) => a.eval(lookup)?.abs(),
        })
    }
}

fn resolve(name: &str, names: &VarNames) -> Result<MultiPoly> {
    if let Some(i) = names.index_of(name) {
        return Ok(MultiPoly::var(i));
    }
    let mut acc = MultiPoly::from_int(1);
    for c in name.chars() {
        let i = names
            .index_of(&c.to_string())
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        acc = acc.mul(&MultiPoly::var(i));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn poly(s: &str) -> MultiPoly {
        Expr::parse(s).unwrap().to_poly(&VarNames::letters(5)).unwrap()
    }

    #[test]
    fn implicit_multiplication() {
        assert_eq!(poly("ab"), poly("a*b"));
        assert_eq!(poly("2a(b+1)"), poly("2*a*b + 2*a"));
        assert_eq!(poly("(a+1)(a-1)"), poly("a^2 - 1"));
        assert_eq!(poly("cd^2"), poly("c*d^2"));
        assert_eq!(poly("abe^3"), poly("a*b*e^3"));
        assert_eq!(
            poly("-6(ab - c(a+b+d-1) + d(b+e))"),
            poly("-6ab + 6ac + 6bc + 6cd - 6c - 6bd - 6de")
        );
    }

    #[test]
    fn abs_and_eval() {
        let e = Expr::parse("2 - |x3 - x2|").unwrap();
        let look = |s: &str| match s {
            "x2" => Some(rat(1)),
            "x3" => Some(rat(0)),
            _ => None,
        };
        assert_eq!(e.eval(&look).unwrap(), rat(1));
        assert!(Expr::parse("|a| |b|").is_ok());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("a +").is_err());
        assert!(Expr::parse("(a").is_err());
        assert!(Expr::parse("a ^ b").is_err());
        assert!(Expr::parse("zz").unwrap().to_poly(&VarNames::letters(5)).is_err());
    }
}
