//! Recursive-descent parser for the plain expression syntax.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*        juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := postfix ('^' integer)?
//! postfix := atom "'"*
//! atom    := integer | generator | 'd' | '(' expr ')' | 'D' ('^' integer)? '(' expr ')'
//! generator := w<k> | u<k> | V+ | V- | C<k> | alpha<k> | beta<k> | gamma<k>
//! ```
//!
//! The symbol `d` is the derivation as an operator and is only accepted by
//! [`parse_operator`], where juxtaposition means composition.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fraction::Fraction;
use crate::diffop::DiffOperator;
use super::generator::{Generator, ParamKind};
use super::poly::DiffPoly;
use super::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected one of [{}], found {}",
            self.position,
            self.expected.join(", "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(Generator),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    D,
    Del,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Gen(g) => format!("symbol {g}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Prime => "'''".into(),
            Tok::D => "'D'".into(),
            Tok::Del => "'d'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::Gen(_) | Tok::LParen | Tok::D | Tok::Del)
    }
}

fn err(position: usize, expected: &[&str], found: impl Into<String>) -> ParseError {
    ParseError {
        position,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.into(),
    }
}

fn tokenize(text: &str, n: u32) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'\'' => Some(Tok::Prime),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let j = digits(i);
            let v: BigInt = text[i..j].parse().expect("digits");
            out.push((start, Tok::Int(v)));
            i = j;
            continue;
        }
        if c == b'D' {
            out.push((start, Tok::D));
            i += 1;
            continue;
        }
        if c == b'V' {
            match bytes.get(i + 1) {
                Some(b'+') => out.push((start, Tok::Gen(Generator::v_plus()))),
                Some(b'-') => out.push((start, Tok::Gen(Generator::v_minus()))),
                _ => {
                    return Err(err(
                        i + 1,
                        &["'+'", "'-'"],
                        "a symbol V without sign",
                    ))
                }
            }
            i += 2;
            continue;
        }
        let word_end = {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_alphabetic() {
                j += 1;
            }
            j
        };
        let word = &text[i..word_end];
        if word == "d" {
            out.push((start, Tok::Del));
            i = word_end;
            continue;
        }
        let kind = match word {
            "w" | "u" | "C" | "alpha" | "beta" | "gamma" => word,
            _ => {
                return Err(err(
                    start,
                    &["number", "w<k>", "u<k>", "V+", "V-", "C<k>", "alpha<k>", "beta<k>", "gamma<k>", "D", "("],
                    format!("'{}'", &text[start..word_end.max(start + 1)]),
                ))
            }
        };
        let dend = digits(word_end);
        if dend == word_end {
            return Err(err(word_end, &["index digits"], format!("after '{word}'")));
        }
        let index: u32 = text[word_end..dend]
            .parse()
            .map_err(|_| err(word_end, &["small index"], text[word_end..dend].to_string()))?;
        let g = match kind {
            "w" => Generator::w(index),
            "u" => Generator::u(index),
            "C" => Generator::c(index),
            "alpha" => Generator::param(ParamKind::Alpha, index),
            "beta" => Generator::param(ParamKind::Beta, index),
            _ => Generator::param(ParamKind::Gamma, index),
        };
        if g.weight(n).is_none() {
            return Err(err(
                start,
                &[&format!("index below N={n}")],
                format!("'{}'", &text[start..dend]),
            ));
        }
        out.push((start, Tok::Gen(g)));
        i = dend;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Abstract syntax tree; evaluated either into a polynomial or into a
/// fraction with monomial denominator.
#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Gen(Generator),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
    Deriv(Box<Ast>, u32),
    Del(usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        err(self.offset(), expected, self.peek().describe())
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                t if t.starts_factor() => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.postfix()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.small_int()?;
            if e == 0 {
                return Err(err(self.toks[self.pos - 1].0, &["positive exponent"], "0"));
            }
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                let at = self.offset();
                self.bump();
                u32::try_from(v.clone()).map_err(|_| err(at, &["small integer"], v.to_string()))
            }
            _ => Err(self.fail(&["integer"])),
        }
    }

    fn postfix(&mut self) -> Result<Ast, ParseError> {
        let mut a = self.atom()?;
        let mut primes = 0;
        while *self.peek() == Tok::Prime {
            self.bump();
            primes += 1;
        }
        if primes > 0 {
            a = match a {
                Ast::Gen(g) => Ast::Gen(g.with_order(g.order + primes)),
                other => Ast::Deriv(Box::new(other), primes),
            };
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Ast::Num(v))
            }
            Tok::Gen(g) => {
                self.bump();
                Ok(Ast::Gen(g))
            }
            Tok::Del => {
                let at = self.offset();
                self.bump();
                Ok(Ast::Del(at))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::D => {
                self.bump();
                let mut order = 1;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    order = self.small_int()?;
                }
                if *self.peek() != Tok::LParen {
                    return Err(self.fail(&["'('"]));
                }
                self.bump();
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(Ast::Deriv(Box::new(e), order))
            }
            _ => Err(self.fail(&["number", "symbol", "'('", "'D'"])),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.fail(&["')'", "operator"]))
        }
    }
}

fn parse_ast(text: &str, n: u32) -> Result<Ast, ParseError> {
    let toks = tokenize(text, n)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.fail(&["operator", "end of input"]));
    }
    Ok(ast)
}

fn eval_poly(ast: &Ast, n: u32) -> Result<DiffPoly, ParseError> {
    Ok(match ast {
        Ast::Num(v) => DiffPoly::constant(n, Q::from_integer(v.clone())),
        Ast::Gen(g) => DiffPoly::var(n, *g),
        Ast::Add(a, b) => &eval_poly(a, n)? + &eval_poly(b, n)?,
        Ast::Sub(a, b) => &eval_poly(a, n)? - &eval_poly(b, n)?,
        Ast::Mul(a, b) => &eval_poly(a, n)? * &eval_poly(b, n)?,
        Ast::Neg(a) => -eval_poly(a, n)?,
        Ast::Pow(a, e) => eval_poly(a, n)?.pow(*e),
        Ast::Deriv(a, m) => eval_poly(a, n)?.derive_n(*m),
        Ast::Del(at) => return Err(err(*at, &["symbol"], "operator 'd' in a polynomial")),
        Ast::Div(a, b, at) => {
            let d = eval_poly(b, n)?;
            match d.as_constant() {
                Some(c) if !c.is_zero() => eval_poly(a, n)?.scale(&(Q::one() / c)),
                _ => return Err(err(*at, &["nonzero rational divisor"], d.to_string())),
            }
        }
    })
}

fn eval_fraction(ast: &Ast, n: u32) -> Result<Fraction, ParseError> {
    Ok(match ast {
        Ast::Num(v) => Fraction::from_poly(DiffPoly::constant(n, Q::from_integer(v.clone()))),
        Ast::Gen(g) => Fraction::from_poly(DiffPoly::var(n, *g)),
        Ast::Add(a, b) => eval_fraction(a, n)?.add(&eval_fraction(b, n)?),
        Ast::Sub(a, b) => eval_fraction(a, n)?.sub(&eval_fraction(b, n)?),
        Ast::Mul(a, b) => eval_fraction(a, n)?.mul(&eval_fraction(b, n)?),
        Ast::Neg(a) => eval_fraction(a, n)?.neg(),
        Ast::Pow(a, e) => {
            let base = eval_fraction(a, n)?;
            let mut acc = Fraction::from_poly(DiffPoly::one(n));
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            acc
        }
        Ast::Deriv(a, m) => {
            let mut f = eval_fraction(a, n)?;
            for _ in 0..*m {
                f = f.derive();
            }
            f
        }
        Ast::Del(at) => return Err(err(*at, &["symbol"], "operator 'd' in a fraction")),
        Ast::Div(a, b, at) => {
            let num = eval_fraction(a, n)?;
            let den = eval_fraction(b, n)?;
            match num.div_by_term(&den) {
                Some(f) => f,
                None => return Err(err(*at, &["monomial divisor"], den.to_string())),
            }
        }
    })
}

fn eval_operator(ast: &Ast, n: u32) -> Result<DiffOperator, ParseError> {
    Ok(match ast {
        Ast::Del(_) => DiffOperator::d_pow(n, 1),
        Ast::Add(a, b) => &eval_operator(a, n)? + &eval_operator(b, n)?,
        Ast::Sub(a, b) => &eval_operator(a, n)? - &eval_operator(b, n)?,
        Ast::Mul(a, b) => eval_operator(a, n)?.compose(&eval_operator(b, n)?),
        Ast::Neg(a) => -&eval_operator(a, n)?,
        Ast::Pow(a, e) => eval_operator(a, n)?.pow(*e),
        Ast::Div(a, b, at) => {
            let d = eval_poly(b, n)?;
            match d.as_constant() {
                Some(c) if !c.is_zero() => eval_operator(a, n)?.scale(&(Q::one() / c)),
                _ => return Err(err(*at, &["nonzero rational divisor"], d.to_string())),
            }
        }
        other => DiffOperator::multiply(eval_poly(other, n)?),
    })
}

/// Parses a polynomial expression for ambient `n`.
pub fn parse(text: &str, n: u32) -> Result<DiffPoly, ParseError> {
    eval_poly(&parse_ast(text, n)?, n)
}

/// Parses an expression whose divisors are single terms (rational times a
/// monomial), as in cleared-denominator identities.
pub fn parse_fraction(text: &str, n: u32) -> Result<Fraction, ParseError> {
    eval_fraction(&parse_ast(text, n)?, n)
}

/// Parses a differential operator; `d` is the derivation and products
/// compose, so `d*w1` is `w1 d + w1'`.
pub fn parse_operator(text: &str, n: u32) -> Result<DiffOperator, ParseError> {
    eval_operator(&parse_ast(text, n)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::poly::qi;

    #[test]
    fn parses_primes_powers_and_juxtaposition() {
        let p = parse("2*w1*w1'' - w1'^2 + 4*w1^2*u0", 2).unwrap();
        let q = parse("2w1w1'' - (w1')^2 + 4 w1^2 u0", 2).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.weight_of().unwrap(), 4);
    }

    #[test]
    fn zero_parses_to_empty() {
        assert!(parse("0", 3).unwrap().is_zero());
    }

    #[test]
    fn derivative_operator_forms_agree() {
        let a = parse("D^2(w1*w0)", 2).unwrap();
        let b = parse("(w1*w0)''", 2).unwrap();
        let c = parse("w1''w0 + 2w1'w0' + w1w0''", 2).unwrap();
        assert_eq!(a, c);
        assert_eq!(b, c);
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse("-1/4*w1 + 3/2 w1", 2).unwrap();
        assert_eq!(p, DiffPoly::var(2, Generator::w(1)).scale(&Q::new(5.into(), 4.into())));
        let v = parse("V+ - V-", 2).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(parse("C1*alpha0 - gamma7", 4).unwrap().len(), 2);
        let _ = qi(0);
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse("w1 + * w0", 2).unwrap_err();
        assert_eq!(e.position, 5);
        assert!(e.expected.iter().any(|s| s.contains("symbol")));
        let e = parse("w2", 2).unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse("(w1 + w0", 2).unwrap_err();
        assert_eq!(e.position, 8);
        assert!(parse("w1 / w0", 2).is_err());
        assert!(parse("w1^0", 2).is_err());
    }
}

#[cfg(test)]
mod operator_tests {
    use super::*;

    #[test]
    fn operator_products_compose() {
        let op = parse_operator("d*w1", 2).unwrap();
        assert_eq!(op.coefficient(1), parse("w1", 2).unwrap());
        assert_eq!(op.coefficient(0), parse("w1'", 2).unwrap());
        let q = parse_operator("28*d^2 + 15*w3*d - 9*w3' + (w3)^2", 4).unwrap();
        assert_eq!(q.order(), Some(2));
        assert!(parse("d + w1", 2).is_err());
    }
}
