//! Text grammar for expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := ("+" | "-")* factor ("*" factor)*
//! factor := number ("/" number)? | generator ("^" number)? | "(" expr ")"
//! ```
//!
//! Generators are written `x1`, `xt_1`, `p1`, `pt_1`, `xs_1`, `xi1`, `xis_1`,
//! `th_1` and `ths_1`. Exponents are only allowed on even generators.
//! Printing is the canonical `Display` of [`Expression`].

use std::fmt;

use num_bigint::BigInt;
use superbracket_core::{Chart, Expression, Family, Generator, Rational};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0} is not part of the chart")]
    NotInChart(Generator),
    #[error("index of {0} is out of range (dimension {1})")]
    IndexOutOfRange(Generator, usize),
    #[error("exponent on odd generator {0}")]
    ExponentOnOdd(Generator),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("number too large")]
    Overflow,
}

/// A syntax or validation error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    chart: Option<Chart>,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, kind }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => self.error_at(self.pos, ParseErrorKind::UnexpectedChar(c)),
            None => self.error_at(self.pos, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut negate = false;
        loop {
            if self.eat('-') {
                negate = !negate;
            } else if !self.eat('+') {
                break;
            }
        }
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.product(&self.factor()?);
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error_at(self.pos, ParseErrorKind::Expected("')'")));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.eat('/') {
                    self.skip_ws();
                    let at = self.pos;
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.error_at(at, ParseErrorKind::Expected("denominator")));
                    }
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.error_at(at, ParseErrorKind::ZeroDenominator));
                    }
                    Ok(Expression::constant(Rational::new(num, den)))
                } else {
                    Ok(Expression::constant(Rational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let g = self.generator()?;
                if self.eat('^') {
                    if g.is_odd() {
                        return Err(self.error_at(start, ParseErrorKind::ExponentOnOdd(g)));
                    }
                    self.skip_ws();
                    let at = self.pos;
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.error_at(at, ParseErrorKind::Expected("exponent")));
                    }
                    let n = self.integer()?;
                    let n = u32::try_from(n).map_err(|_| self.error_at(at, ParseErrorKind::Overflow))?;
                    Ok(Expression::generator(g).pow(n))
                } else {
                    Ok(Expression::generator(g))
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse as an integer"))
    }

    fn generator(&mut self) -> Result<Generator, ParseError> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            self.pos += 1;
        }
        let prefix = &self.src[start..self.pos];
        let digits_start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let word = &self.src[start..self.pos];
        let unknown = || ParseErrorKind::UnknownGenerator(word.to_string());
        let family = Family::ALL
            .into_iter()
            .find(|f| f.prefix() == prefix)
            .ok_or_else(|| self.error_at(start, unknown()))?;
        let digits = &self.src[digits_start..self.pos];
        if digits.is_empty() || digits.starts_with('0') {
            return Err(self.error_at(start, unknown()));
        }
        let index: u16 = digits.parse().map_err(|_| self.error_at(start, ParseErrorKind::Overflow))?;
        let g = Generator::new(family, index);
        if let Some(chart) = self.chart {
            if !chart.mode().families().contains(&family) {
                return Err(self.error_at(start, ParseErrorKind::NotInChart(g)));
            }
            if usize::from(index) > chart.dim() {
                return Err(self.error_at(start, ParseErrorKind::IndexOutOfRange(g, chart.dim())));
            }
        }
        Ok(g)
    }
}

/// Parses and normalizes an expression. With a chart, every generator must
/// belong to it.
pub fn parse_expression(text: &str, chart: Option<Chart>) -> Result<Expression, ParseError> {
    let mut p = Parser { src: text, pos: 0, chart };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Canonical text form.
pub fn print_expression(e: &Expression) -> String {
    e.to_string()
}

/// Largest generator index occurring in any of the expressions.
pub fn max_index<'a>(exprs: impl IntoIterator<Item = &'a Expression>) -> usize {
    exprs
        .into_iter()
        .flat_map(Expression::generators)
        .map(|g| usize::from(g.index))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: Generator) -> Expression {
        x.into()
    }

    #[test]
    fn canonical_examples() {
        let e = parse_expression("x1*xs_1 - 1/2*xi1*xi2*xis_1", None).unwrap();
        let expect = g(Generator::x(1)) * g(Generator::xs(1))
            - (g(Generator::xi(1)) * g(Generator::xi(2)) * g(Generator::xis(1))).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(e, expect);
        assert!(parse_expression("xi1*xi1", None).unwrap().is_zero());
        let e = parse_expression("xi2*xi1", None).unwrap();
        assert_eq!(print_expression(&e), "-1*xi1*xi2");
        let e = parse_expression("xi1*p1 + xis_1*pt_1", None).unwrap();
        assert_eq!(print_expression(&e), "p1*xi1 + pt_1*xis_1");
        assert_eq!(print_expression(&Expression::zero()), "0");
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse_expression("1 + 2*x1 - -x1", None).unwrap();
        assert_eq!(e, Expression::one() + (g(Generator::x(1))).scale(&Rational::from_integer(3.into())));
        let e = parse_expression("-(x1 + x2)*x1^2", None).unwrap();
        assert_eq!(print_expression(&e), "-1*x1^2*x2 - 1*x1^3");
        assert_eq!(parse_expression("2 * x1 ^ 2", None).unwrap(), parse_expression("2*x1^2", None).unwrap());
    }

    #[test]
    fn errors_have_positions() {
        let err = parse_expression("x1 +\n  xi1^2", None).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(err.kind, ParseErrorKind::ExponentOnOdd(Generator::xi(1)));

        let err = parse_expression("y1", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownGenerator("y1".into()));
        let err = parse_expression("x0", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownGenerator("x0".into()));
        let err = parse_expression("x3", Some(Chart::base(2))).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IndexOutOfRange(Generator::x(3), 2));
        let err = parse_expression("p1", Some(Chart::base(2))).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NotInChart(Generator::p(1)));
        let err = parse_expression("1/0", None).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(parse_expression("x1 +", None).unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse_expression("x1 x2", None).unwrap_err().kind, ParseErrorKind::UnexpectedChar('x'));
        assert_eq!(parse_expression("(x1", None).unwrap_err().kind, ParseErrorKind::Expected("')'"));
    }

    #[test]
    fn all_families_round_trip() {
        for f in Family::ALL {
            let e = Expression::generator(Generator::new(f, 3));
            assert_eq!(parse_expression(&print_expression(&e), None).unwrap(), e);
        }
    }
}
