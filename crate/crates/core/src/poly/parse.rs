//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Parsing produces an [`Expr`] tree first so that the same grammar serves both
//! plain polynomials and graded elements.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{index_of, Polynomial, Rational, Vars};
use crate::error::{Error, Result};

/// Parsed expression; each leaf keeps its byte offset for error reporting.
#[derive(Clone, Debug)]
pub enum Expr {
    Num(Rational),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src,
            toks: Vec::new(),
        };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(Error::Syntax {
                        offset: i,
                        message: "decimal literals are not supported; write a fraction".into(),
                    });
                }
                let n: BigInt = lx.src[s..i].parse().unwrap();
                lx.toks.push((Tok::Int(n), s));
            } else if c.is_ascii_alphabetic() || c == b'_' {
                let s = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[s..i].to_string()), s));
            } else if b"+-*/^()".contains(&c) {
                lx.toks.push((Tok::Sym(c as char), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Tok::Sym('*') = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.bump();
            let off = self.offset();
            let bad = |message: &str| Error::BadExponent {
                offset: off,
                message: message.into(),
            };
            let k = match self.bump().0 {
                Tok::Int(k) => k,
                Tok::Sym('-') => return Err(bad("exponent must be nonnegative")),
                _ => return Err(bad("exponent must be a nonnegative integer literal")),
            };
            if let Tok::Sym('/') = self.peek() {
                return Err(bad("exponent must be an integer"));
            }
            let k: u32 = k
                .try_into()
                .map_err(|_| bad("exponent is too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, off) = self.bump();
        match tok {
            Tok::Int(n) => {
                if let Tok::Sym('/') = self.peek() {
                    self.bump();
                    let doff = self.offset();
                    match self.bump().0 {
                        Tok::Int(d) if d.is_zero() => Err(Error::Syntax {
                            offset: doff,
                            message: "division by zero".into(),
                        }),
                        Tok::Int(d) => Ok(Expr::Num(Rational::new(n, d))),
                        _ => Err(Error::Syntax {
                            offset: doff,
                            message: "expected an integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => Ok(Expr::Var(name, off)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Tok::Sym(')') => {
                        self.bump();
                        Ok(e)
                    }
                    _ => self.syntax("expected `)`"),
                }
            }
            Tok::End => Err(Error::Syntax {
                offset: off,
                message: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(Error::Syntax {
                offset: off,
                message: format!("unexpected `{c}`"),
            }),
        }
    }
}

/// Parse an expression into a syntax tree without resolving names.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Sym('/') => p.syntax("division is only allowed between integer literals"),
        _ => p.syntax("unexpected token; expected an operator or end of input"),
    }
}

impl Expr {
    /// Evaluate in any ring given constructors for constants and names.
    pub fn fold<T, C, V, A, M, N>(&self, c: &C, v: &V, add: &A, mul: &M, neg: &N) -> Result<T>
    where
        T: Clone,
        C: Fn(&Rational) -> T,
        V: Fn(&str, usize) -> Result<T>,
        A: Fn(T, T) -> T,
        M: Fn(T, T) -> T,
        N: Fn(T) -> T,
    {
        let rec = |e: &Expr| e.fold(c, v, add, mul, neg);
        Ok(match self {
            Expr::Num(r) => c(r),
            Expr::Var(name, off) => v(name, *off)?,
            Expr::Add(a, b) => add(rec(a)?, rec(b)?),
            Expr::Sub(a, b) => add(rec(a)?, neg(rec(b)?)),
            Expr::Mul(a, b) => mul(rec(a)?, rec(b)?),
            Expr::Neg(a) => neg(rec(a)?),
            Expr::Pow(a, k) => {
                let base = rec(a)?;
                let mut acc = c(&Rational::from_integer(1.into()));
                for _ in 0..*k {
                    acc = mul(acc, base.clone());
                }
                acc
            }
        })
    }
}

/// Parse a polynomial over `vars`. Every identifier must name one of them.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<Polynomial> {
    parse_expr(src)?.fold(
        &|r| Polynomial::constant(vars, r.clone()),
        &|name, offset| match index_of(vars, name) {
            Some(i) => Ok(Polynomial::var(vars, i)),
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                offset,
            }),
        },
        &|a, b| a + b,
        &|a, b| a * b,
        &|a| -a,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio, vars};

    fn v() -> Vars {
        vars(["x1", "x2"])
    }

    #[test]
    fn difference_of_squares() {
        let p = parse_poly("(x1+x2)*(x1-x2)", &v()).unwrap();
        assert_eq!(p, parse_poly("x1^2 - x2^2", &v()).unwrap());
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn fraction_coefficient() {
        let p = parse_poly("x1^2 + 3/2*x2", &v()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.eval(&[rat(0), rat(2)]), rat(3));
        assert_eq!(parse_poly("6/4", &v()).unwrap().as_constant(), Some(ratio(3, 2)));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("x1 + * x2", &v()) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_poly("x1 + w", &v()) {
            Err(Error::UnknownVariable { name, offset }) => {
                assert_eq!(name, "w");
                assert_eq!(offset, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x1^-1", &v()), Err(Error::BadExponent { .. })));
        assert!(matches!(parse_poly("x1^1/2", &v()), Err(Error::BadExponent { .. })));
        assert!(matches!(parse_poly("x1^x2", &v()), Err(Error::BadExponent { .. })));
        assert!(matches!(parse_poly("1.5", &v()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x1", &v()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("2x1", &v()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x1/2", &v()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &v()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", &v()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unary_minus_chains() {
        let p = parse_poly("--x1 - -x2", &v()).unwrap();
        assert_eq!(p, parse_poly("x1 + x2", &v()).unwrap());
    }
}
