//! Expressions in `t` over ℚ or 𝔽_p.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! atom  := integer | 't' | '(' expr ')'
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use kummer_core::algebra::ratfunc::RatFuncField;
use kummer_core::algebra::{PolyAlgorithms, PrimeField, RatFunc, Rationals};

/// Largest |exponent| accepted by the parser.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {column}: expected {expected}, found {found}")]
    Syntax { column: usize, expected: String, found: String },
    #[error("column {column}: division by zero")]
    DivisionByZero { column: usize },
    #[error("column {column}: exponent must be an integer")]
    NonIntegerExponent { column: usize },
    #[error("column {column}: exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { column: usize },
}

/// Fields whose elements can be written as integer literals.
pub trait Literal: PolyAlgorithms {
    fn literal(&self, n: &BigUint) -> Self::Elem;
}

impl Literal for PrimeField {
    fn literal(&self, n: &BigUint) -> u64 {
        (n % self.p()).to_u64().expect("reduced below p")
    }
}

impl Literal for Rationals {
    fn literal(&self, n: &BigUint) -> BigRational {
        BigRational::from_integer(n.clone().into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var => "'t'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), column));
            continue;
        }
        let tok = match c {
            't' => Tok::Var,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ParseError::Syntax {
                    column,
                    expected: "integer, 't', operator or parenthesis".into(),
                    found: format!("{c:?}"),
                })
            }
        };
        out.push((tok, column));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a, F: Literal> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    rf: RatFuncField<'a, F>,
    field: &'a F,
}

impl<'a, F: Literal> Parser<'a, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Syntax { column: self.column(), expected: expected.into(), found: self.peek().describe() }
    }

    fn expr(&mut self) -> Result<RatFunc<F::Elem>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.rf.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.rf.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc<F::Elem>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.rf.mul(&acc, &rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let column = self.column();
                    let rhs = self.unary()?;
                    acc = self.rf.div(&acc, &rhs).map_err(|_| ParseError::DivisionByZero { column })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc<F::Elem>, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(self.rf.neg(&inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc<F::Elem>, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let column = self.column();
        let e = self.exponent()?;
        self.rf.pow(&base, e).map_err(|_| ParseError::DivisionByZero { column })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let column = self.column();
        let value = match self.bump() {
            (Tok::Int(n), _) => n,
            (Tok::Var | Tok::LParen, _) => return Err(ParseError::NonIntegerExponent { column }),
            (t, c) => {
                return Err(ParseError::Syntax { column: c, expected: "integer exponent".into(), found: t.describe() })
            }
        };
        let magnitude = value
            .to_u64()
            .filter(|&v| v <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge { column })?;
        if parenthesized {
            match self.peek() {
                Tok::RParen => {
                    self.bump();
                }
                Tok::Slash => return Err(ParseError::NonIntegerExponent { column }),
                _ => return Err(self.unexpected("')'")),
            }
        }
        let magnitude = magnitude as i64;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn atom(&mut self) -> Result<RatFunc<F::Elem>, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(self.rf.constant(self.field.literal(&n)))
            }
            Tok::Var => {
                self.bump();
                Ok(self.rf.t())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')' or operator"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("integer, 't' or '('")),
        }
    }
}

/// Parses `text` into a reduced rational function over `field`.
pub fn parse_expression<F: Literal>(text: &str, field: &F) -> Result<RatFunc<F::Elem>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, rf: RatFuncField::new(field), field };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(value)
}

/// Splits a comma-separated generator list, ignoring empty entries.
pub fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::PolyRing;

    #[test]
    fn examples() {
        let k = PrimeField::new(5).unwrap();
        let ring = PolyRing::new(&k);
        let f = parse_expression("2*t^2", &k).unwrap();
        assert_eq!(f.numerator(), &ring.monomial(2, 2));
        let q = Rationals;
        let qr = PolyRing::new(&q);
        let f = parse_expression("(t^2-1)/(t-1)", &q).unwrap();
        assert_eq!(f.numerator(), &qr.from_i64s(&[1, 1]));
        assert!(qr.is_one(f.denominator()));
        let f = parse_expression("t^-3 * (t+1)^2", &q).unwrap();
        assert_eq!(f.denominator(), &qr.monomial(q.literal(&1u32.into()), 3));
        assert_eq!(f.numerator(), &qr.from_i64s(&[1, 2, 1]));
    }

    #[test]
    fn precedence_and_signs() {
        let q = Rationals;
        let a = parse_expression("-t^2", &q).unwrap();
        let b = parse_expression("-(t^2)", &q).unwrap();
        assert_eq!(a, b);
        let c = parse_expression("1/2*t", &q).unwrap();
        let d = parse_expression("t/2", &q).unwrap();
        assert_eq!(c, d);
        assert_eq!(parse_expression("t^(-1)", &q).unwrap(), parse_expression("1/t", &q).unwrap());
        assert_eq!(parse_expression(" t -  1 ", &q).unwrap(), parse_expression("t-1", &q).unwrap());
    }

    #[test]
    fn literals_reduce_mod_p() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(parse_expression("10*t", &k).unwrap(), parse_expression("3*t", &k).unwrap());
        assert_eq!(parse_expression("100000000000000000000007", &k).unwrap(), parse_expression("5", &k).unwrap());
    }

    #[test]
    fn errors_carry_columns() {
        let q = Rationals;
        assert_eq!(
            parse_expression("t + * 2", &q).unwrap_err(),
            ParseError::Syntax { column: 5, expected: "integer, 't' or '('".into(), found: "'*'".into() }
        );
        assert_eq!(parse_expression("t/(t-t)", &q).unwrap_err(), ParseError::DivisionByZero { column: 3 });
        assert_eq!(parse_expression("t^t", &q).unwrap_err(), ParseError::NonIntegerExponent { column: 3 });
        assert!(matches!(parse_expression("(t+1", &q).unwrap_err(), ParseError::Syntax { column: 5, .. }));
        assert!(matches!(parse_expression("x", &q).unwrap_err(), ParseError::Syntax { column: 1, .. }));
        assert_eq!(parse_expression("(t-t)^-1", &q).unwrap_err(), ParseError::DivisionByZero { column: 7 });
        assert_eq!(parse_expression("t^(1/2)", &q).unwrap_err(), ParseError::NonIntegerExponent { column: 4 });
        assert!(matches!(parse_expression("t^99999", &q).unwrap_err(), ParseError::ExponentTooLarge { .. }));
        let k = PrimeField::new(5).unwrap();
        assert_eq!(parse_expression("t/5", &k).unwrap_err(), ParseError::DivisionByZero { column: 3 });
    }
}
