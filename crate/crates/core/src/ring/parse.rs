//! Expression syntax for ring elements.
//!
//! Integers, variable names, `+ - * /`, `^` with an integer exponent (which
//! may be negative, written `x^-2` or `x^(-2)`), and parentheses.

use std::fmt;

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use super::var::Var;

const MAX_EXPONENT: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    /// 1-based character column of the offending token.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
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
            toks.push((Tok::Int(text.parse().unwrap()), start + 1));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), i + 1));
            i += 1;
        } else {
            return Err(ExprError { column: i + 1, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(Lexer { toks, end: chars.len() + 1 })
}

struct Parser {
    lx: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.lx.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.lx.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ExprError> {
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

    fn term(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.column();
                self.pos += 1;
                let d = self.unary()?;
                match d.inv() {
                    Some(inv) => acc = &acc * &inv,
                    None => return Err(ExprError { column: col, message: "division by zero".into() }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ExprError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.column();
        let e = self.exponent()?;
        if e.abs() > MAX_EXPONENT {
            return Err(ExprError { column: col, message: "exponent too large".into() });
        }
        base.pow(e).ok_or(ExprError { column: col, message: "negative power of zero".into() })
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = match self.peek() {
            Some(Tok::Int(n)) => {
                let v: i64 = match i64::try_from(n.clone()) {
                    Ok(v) => v,
                    Err(_) => return self.err("exponent too large"),
                };
                self.pos += 1;
                v
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::from_int(n))
            }
            Some(Tok::Ident(name)) => {
                if !Var::is_valid_name(&name) {
                    return self.err(format!("'{name}' is not a variable name"));
                }
                self.pos += 1;
                Ok(RatFunc::var(Var::new(&name)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parse an element of the fraction field.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, ExprError> {
    let lx = lex(src)?;
    let mut p = Parser { lx, pos: 0 };
    let v = p.expr()?;
    if p.pos < p.lx.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parse a Laurent polynomial; the expression must simplify to one.
pub fn parse_laurent(src: &str) -> Result<LaurentPoly, ExprError> {
    let r = parse_ratfunc(src)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ExprError { column: 1, message: "expression is not a Laurent polynomial".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_printing() {
        for s in ["x^2+1+x^-2", "-2*a*L^-1+3", "(a^2+1)/(a-L)", "0", "-7", "x*y^-3"] {
            let v = parse_ratfunc(s).unwrap();
            assert_eq!(parse_ratfunc(&v.to_string()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(parse_laurent("x^(-2)").unwrap(), parse_laurent("x^-2").unwrap());
        assert_eq!(parse_laurent("(x+1)^2").unwrap(), parse_laurent("x^2+2*x+1").unwrap());
        assert_eq!(parse_laurent("-x^2").unwrap().to_string(), "-x^2");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_ratfunc("x^y").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_ratfunc("x + $").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_ratfunc("(x+1").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_laurent("1/(x+1)").is_err());
        assert!(parse_ratfunc("i+1").is_err());
    }
}
