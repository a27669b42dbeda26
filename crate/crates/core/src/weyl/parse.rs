//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := generator | 'comm(' expr ',' expr ')' | 'i' | rational | param | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Coefficient mode (used for binding values) additionally accepts `/`
//! between factors when the divisor is a scalar.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::error::AlgebraError;
use super::field::CoeffField;
use super::gauss::GaussRat;
use super::generators::GeneratorKind;
use super::ncpoly::NCPolynomial;
use super::subst::Param;

/// Largest total degree an expression may reach.
pub const DEGREE_LIMIT: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}, found {found}", expected.join(", "))]
    Syntax { position: usize, found: String, expected: Vec<String> },
    #[error("unknown identifier '{name}' at position {position}")]
    UnknownIdentifier { position: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownIdentifier { position, .. } => *position,
        }
    }

    /// The input line with a caret under the error position.
    pub fn caret(&self, text: &str) -> String {
        let col = text[..self.position().min(text.len())].chars().count();
        format!("{text}\n{}^", " ".repeat(col))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Generator(GeneratorKind),
    Param(Param),
    Imag,
    Rational(BigRational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Comm(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Upper bound on the operator degree of the expanded expression.
    pub fn degree_bound(&self) -> u32 {
        match self {
            Expr::Generator(_) => 1,
            Expr::Param(_) | Expr::Imag | Expr::Rational(_) => 0,
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            Expr::Mul(a, b) | Expr::Comm(a, b) => a.degree_bound().saturating_add(b.degree_bound()),
            Expr::Div(a, _) => a.degree_bound(),
            Expr::Pow(a, e) => a.degree_bound().saturating_mul(*e),
        }
    }

    /// Expands to a normal-ordered polynomial.
    pub fn to_polynomial(&self) -> Result<NCPolynomial, AlgebraError> {
        let degree = self.degree_bound();
        if degree > DEGREE_LIMIT {
            return Err(AlgebraError::DegreeLimit { degree, limit: DEGREE_LIMIT });
        }
        self.expand()
    }

    fn expand(&self) -> Result<NCPolynomial, AlgebraError> {
        Ok(match self {
            Expr::Generator(k) => k.expand(),
            Expr::Param(Param::Xi) => NCPolynomial::scalar(CoeffField::xi()),
            Expr::Param(Param::Sigma) => NCPolynomial::scalar(CoeffField::sigma()),
            Expr::Param(Param::Sym(s)) => NCPolynomial::scalar(CoeffField::var(*s)),
            Expr::Imag => NCPolynomial::scalar(CoeffField::i()),
            Expr::Rational(r) => NCPolynomial::scalar(CoeffField::from_gauss(GaussRat::real(r.clone()))),
            Expr::Add(a, b) => a.expand()?.add(&b.expand()?),
            Expr::Sub(a, b) => a.expand()?.sub(&b.expand()?),
            Expr::Mul(a, b) => a.expand()?.mul(&b.expand()?),
            Expr::Comm(a, b) => a.expand()?.commutator(&b.expand()?),
            Expr::Pow(a, e) => a.expand()?.pow_with(*e, super::field::Rules::generic()),
            Expr::Div(a, b) => {
                let d = b.expand()?.as_scalar().ok_or(AlgebraError::NonScalarDivisor)?;
                let inv = d.inv().ok_or_else(|| AlgebraError::DivisionByZero { denominator: d.to_string() })?;
                a.expand()?.scale(&inv)
            }
        })
    }

    /// Value of a scalar expression (no generators).
    pub fn to_scalar(&self) -> Result<CoeffField, AlgebraError> {
        self.to_polynomial()?.as_scalar().ok_or(AlgebraError::NotScalar)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_alphanumeric()) {
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            it.next();
        } else {
            return Err(ParseError::Syntax {
                position: pos,
                found: format!("'{c}'"),
                expected: vec!["operator".into(), "identifier".into(), "number".into()],
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    coefficient_mode: bool,
}

const ATOM_START: [&str; 6] = ["generator", "parameter", "'i'", "number", "'comm('", "'('"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.pos(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.coefficient_mode && self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            let e = u32::try_from(&e).map_err(|_| self.error(&["exponent below 2^32"]))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        if let Tok::Int(n) = self.peek().clone() {
            self.at += 1;
            Ok(n)
        } else {
            Err(self.error(&["unsigned integer"]))
        }
    }

    fn rational(&mut self, negative: bool) -> Result<Expr, ParseError> {
        let mut num = self.uint()?;
        if negative {
            num = -num;
        }
        let mut den = BigInt::from(1);
        if !self.coefficient_mode && self.eat('/') {
            let pos = self.pos();
            den = self.uint()?;
            if den == BigInt::from(0) {
                return Err(ParseError::Syntax { position: pos, found: "'0'".into(), expected: vec!["nonzero denominator".into()] });
            }
        }
        Ok(Expr::Rational(BigRational::new(num, den)))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => self.rational(false),
            Tok::Sym('-') if matches!(self.toks[self.at + 1].1, Tok::Int(_)) => {
                self.at += 1;
                self.rational(true)
            }
            Tok::Sym('(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.at += 1;
                if name == "comm" {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(',')?;
                    let b = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Comm(Box::new(a), Box::new(b)));
                }
                if name == "i" {
                    return Ok(Expr::Imag);
                }
                if let Ok(k) = name.parse::<GeneratorKind>() {
                    return Ok(Expr::Generator(k));
                }
                if let Ok(p) = name.parse::<Param>() {
                    return Ok(Expr::Param(p));
                }
                Err(ParseError::UnknownIdentifier { position: pos, name })
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}

fn parse_with(text: &str, coefficient_mode: bool) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, coefficient_mode };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let mut expected = vec!["'+'", "'-'", "'*'", "'^'"];
        if coefficient_mode {
            expected.push("'/'");
        }
        expected.push("end of input");
        return Err(p.error(&expected));
    }
    Ok(e)
}

/// Parses an operator expression into its syntax tree.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, false)
}

/// Parses a scalar expression where `/` may divide by any scalar factor.
pub fn parse_coefficient(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, true)
}

pub fn parse_operator_expression(text: &str) -> Result<NCPolynomial, AlgebraError> {
    parse_expression(text)?.to_polynomial()
}

/// Parses `NAME=EXPR` into a binding target and value.
pub fn parse_binding(text: &str) -> Result<(Param, CoeffField), AlgebraError> {
    let Some((name, value)) = text.split_once('=') else {
        return Err(ParseError::Syntax { position: text.len(), found: "end of input".into(), expected: vec!["'='".into()] }.into());
    };
    let param = name.trim().parse::<Param>().map_err(|_| ParseError::UnknownIdentifier {
        position: name.len() - name.trim_start().len(),
        name: name.trim().into(),
    })?;
    let offset = name.len() + 1;
    let expr = parse_coefficient(value).map_err(|e| match e {
        ParseError::Syntax { position, found, expected } => ParseError::Syntax { position: position + offset, found, expected },
        ParseError::UnknownIdentifier { position, name } => ParseError::UnknownIdentifier { position: position + offset, name },
    })?;
    Ok((param, expr.to_scalar()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::poly::{Poly, Symbol};

    fn ihbar() -> NCPolynomial {
        NCPolynomial::scalar(CoeffField::i().scale_poly(&Poly::var(Symbol::Hbar)))
    }

    #[test]
    fn examples() {
        assert_eq!(parse_operator_expression("comm(tx1, tp1)").unwrap(), ihbar());
        assert_eq!(parse_operator_expression("x1*p1 - p1*x1").unwrap(), ihbar());
        assert!(parse_operator_expression("comm(x1, x1)").unwrap().is_zero());
    }

    #[test]
    fn precedence_and_rationals() {
        let a = parse_operator_expression("1/2*x1^2 + -3*p2").unwrap();
        let b = parse_operator_expression("(x1*x1)*1/2 - 3*p2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn syntax_error_reports_position_and_expected() {
        let e = parse_expression("x1 * + p1").unwrap_err();
        match &e {
            ParseError::Syntax { position, expected, .. } => {
                assert_eq!(*position, 5);
                assert!(expected.contains(&"generator".to_string()));
            }
            _ => panic!("{e}"),
        }
        assert_eq!(e.caret("x1 * + p1"), "x1 * + p1\n     ^");
        assert!(matches!(parse_expression("x1 )"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_expression("x1 / x2"), Err(ParseError::Syntax { position: 3, .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(
            parse_expression("x1 + y3"),
            Err(ParseError::UnknownIdentifier { position: 5, name: "y3".into() })
        );
    }

    #[test]
    fn degree_limit() {
        assert!(parse_operator_expression("x1^16").is_ok());
        assert!(matches!(
            parse_operator_expression("x1^8*p1^9"),
            Err(AlgebraError::DegreeLimit { degree: 17, .. })
        ));
    }

    #[test]
    fn binding_values() {
        let (p, v) = parse_binding("theta=eta/(mu*omega)^2").unwrap();
        assert_eq!(p, Param::Sym(Symbol::Theta));
        assert_eq!(v.to_string(), "(eta/(mu^2*omega^2), 0)");
        assert!(matches!(parse_binding("theta=x1"), Err(AlgebraError::NotScalar)));
        assert!(matches!(parse_binding("zeta=1"), Err(AlgebraError::Parse(ParseError::UnknownIdentifier { .. }))));
    }
}
