//! Expressions over a presentation.
//!
//! ```text
//! expr   := ["-"] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" ["-"] integer ]
//! atom   := rational | "i" | "sqrt2" | "q" | name ["'"] | "d" "(" expr ")" | "(" expr ")"
//! ```
//!
//! A leading minus and negative exponents (of invertible scalars) are
//! accepted so that every canonical rendering parses back.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Element, Presentation};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator '{name}' at position {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("cannot evaluate: {0}")]
    Evaluation(String),
}

/// Abstract syntax of an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(Rational),
    I,
    Sqrt2,
    Q,
    /// A generator name, as written (a trailing `'` is part of the name).
    Generator(String),
    D(Box<Expr>),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i32),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Expr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Expr::I => write!(f, "i"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::Q => write!(f, "q"),
            Expr::Generator(n) => write!(f, "{}", n),
            Expr::D(e) => write!(f, "d({})", e),
            Expr::Neg(e) => write!(f, "-({})", e),
            Expr::Sum(a, b) => write!(f, "({} + {})", a, b),
            Expr::Difference(a, b) => write!(f, "({} - {})", a, b),
            Expr::Product(a, b) => write!(f, "({} * {})", a, b),
            Expr::Power(a, k) => write!(f, "({})^{}", a, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(i64),
    Slash,
    Ident(String),
    Prime,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            c if c.is_whitespace() => k += 1,
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let text: String = chars[start..k].iter().map(|x| x.1).collect();
                let n = text.parse::<i64>().map_err(|_| ParseError::Syntax { pos, msg: format!("number {} too large", text) })?;
                out.push((pos, Token::Number(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                    k += 1;
                }
                out.push((pos, Token::Ident(chars[start..k].iter().map(|x| x.1).collect())));
            }
            _ => {
                let t = match c {
                    '/' => Token::Slash,
                    '\'' => Token::Prime,
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => return Err(ParseError::Syntax { pos, msg: format!("unexpected character '{}'", c) }),
                };
                out.push((pos, t));
                k += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    k: usize,
    end: usize,
    pres: &'a Presentation,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.k).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.k).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat(&Token::Minus) { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat(&Token::Plus) {
                acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                acc = Expr::Difference(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc = Expr::Product(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Token::Minus);
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.k += 1;
                let n = i32::try_from(n).or_else(|_| self.error("exponent too large"))?;
                Ok(Expr::Power(Box::new(base), if negative { -n } else { n }))
            }
            _ => self.error("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.k += 1;
                if self.eat(&Token::Slash) {
                    match self.peek().cloned() {
                        Some(Token::Number(d)) if d != 0 => {
                            self.k += 1;
                            Ok(Expr::Rational(Rational::new(n, d)))
                        }
                        _ => self.error("expected a non-zero denominator"),
                    }
                } else {
                    Ok(Expr::Rational(Rational::from_integer(n)))
                }
            }
            Some(Token::Open) => {
                self.k += 1;
                let e = self.expr()?;
                if !self.eat(&Token::Close) {
                    return self.error("expected ')'");
                }
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.k += 1;
                match name.as_str() {
                    "i" => return Ok(Expr::I),
                    "sqrt2" => return Ok(Expr::Sqrt2),
                    "q" => return Ok(Expr::Q),
                    "d" if self.peek() == Some(&Token::Open) => {
                        self.k += 1;
                        let e = self.expr()?;
                        if !self.eat(&Token::Close) {
                            return self.error("expected ')' after d(");
                        }
                        return Ok(Expr::D(Box::new(e)));
                    }
                    _ => {}
                }
                let full = if self.eat(&Token::Prime) { format!("{}'", name) } else { name };
                match self.pres.lookup(&full) {
                    Some(id) if id < self.pres.function_count() => Ok(Expr::Generator(full)),
                    _ => Err(ParseError::UnknownGenerator { pos, name: full }),
                }
            }
            Some(_) => self.error("expected an atom"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `src`, validating generator names against `pres`.
pub fn parse(src: &str, pres: &Presentation) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, k: 0, end: src.len(), pres };
    let e = p.expr()?;
    if p.k != p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Evaluates an expression to its normal form.
pub fn evaluate(e: &Expr, pres: &Arc<Presentation>) -> Result<Element, ParseError> {
    let scalar = |s: Scalar| Element::scalar(pres, s);
    Ok(match e {
        Expr::Rational(r) => scalar(Scalar::rational(*r)),
        Expr::I => scalar(Scalar::i()),
        Expr::Sqrt2 => scalar(Scalar::sqrt2()),
        Expr::Q => scalar(pres.deformation().q(1)),
        Expr::Generator(n) => Element::named(pres, n).map_err(|err| ParseError::Evaluation(err.to_string()))?,
        Expr::D(x) => evaluate(x, pres)?.differential(),
        Expr::Neg(x) => -evaluate(x, pres)?,
        Expr::Sum(a, b) => evaluate(a, pres)? + evaluate(b, pres)?,
        Expr::Difference(a, b) => evaluate(a, pres)? - evaluate(b, pres)?,
        Expr::Product(a, b) => evaluate(a, pres)? * evaluate(b, pres)?,
        Expr::Power(x, k) => {
            let base = evaluate(x, pres)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                let s = base
                    .as_scalar()
                    .and_then(|s| Scalar::one().checked_div(&s))
                    .ok_or_else(|| ParseError::Evaluation(format!("negative power of non-invertible {}", base)))?;
                Element::scalar(pres, s).pow(k.unsigned_abs())
            }
        }
    })
}

/// Parses and evaluates in one step.
pub fn parse_element(src: &str, pres: &Arc<Presentation>) -> Result<Element, ParseError> {
    evaluate(&parse(src, pres)?, pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Deformation;
    use crate::geometry::{build_chart, build_s4, build_s7};
    use proptest::prelude::*;

    #[test]
    fn grammar_examples() {
        let s4 = build_s4(Deformation::Formal);
        let e = parse("q^4 * z1 * z2", &s4).unwrap();
        assert!(matches!(e, Expr::Product(..)));
        let s7 = build_s7(Deformation::Formal);
        let e = parse("d(psi1) * psi3'", &s7).unwrap();
        match e {
            Expr::Product(a, b) => {
                assert!(matches!(*a, Expr::D(_)));
                assert_eq!(*b, Expr::Generator("psi3'".into()));
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse("z9", &s4), Err(ParseError::UnknownGenerator { .. })));
        assert!(matches!(parse("z1 +", &s4), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("z1 $ z2", &s4), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("1/0", &s4), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn evaluation() {
        let s4 = build_s4(Deformation::Formal);
        let a = parse_element("z2 * z1", &s4).unwrap();
        let b = parse_element("q^-4 * z1 * z2", &s4).unwrap();
        assert_eq!(a, b);
        let one = parse_element("z0^2 + z1*z1' + z2*z2'", &s4).unwrap();
        assert_eq!(one, Element::one(&s4));
        assert!(parse_element("z1^-1", &s4).is_err());
        let c4 = build_s4(Deformation::Classical);
        assert_eq!(parse_element("z2*z1 - z1*z2", &c4).unwrap(), Element::zero(&c4));
        assert_eq!(parse_element("-(i*sqrt2)^2", &s4).unwrap(), Element::integer(&s4, 2));
    }

    fn word_strategy(n: usize) -> impl Strategy<Value = Vec<(i64, i32, Vec<usize>)>> {
        prop::collection::vec((-5i64..6, -3i32..4, prop::collection::vec(0..n, 0..4)), 1..4)
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(raw in word_strategy(5), which in 0usize..3) {
            let pres = [build_s4(Deformation::Formal), build_s7(Deformation::Formal), build_chart(Deformation::Formal)][which].clone();
            let count = pres.generator_count();
            let mut acc = Element::zero(&pres);
            for (c, k, word) in raw {
                let w: Vec<usize> = word.iter().map(|g| g % count).collect();
                let s = Scalar::q_pow(k).mul_ref(&Scalar::frac(c, 2));
                acc = &acc + &Element::word_ids(&pres, s, &w);
            }
            let text = acc.render();
            let back = parse_element(&text, &pres).unwrap();
            prop_assert_eq!(&back, &acc);
            prop_assert_eq!(back.render(), text);
        }
    }
}
