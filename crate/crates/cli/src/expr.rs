//! Parser for λ-expressions such as `23*L3 - 2*L1^3`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' exponent)?
//! atom   := integer | 'p' | 'L' index | '(' expr ')'
//! index  := integer | 'p'
//! exponent := integer | 'p'
//! ```
//!
//! `p` stands for the prime given on the command line, so `Lp` and `L1^p` work
//! without shell substitution.

use chernsub::repring::SUPolynomial;
use chernsub::{Integer, Prime};
use thiserror::Error;

/// Exponents above this are rejected; `λ₁^p` for the primes in reach is far below.
const MAX_EXPONENT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(Integer),
    P,
    Lambda(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    column: usize,
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

fn lex(src: &str, p: Prime) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Lexed { tok, column });
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Lexed {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                column,
            });
        } else if c == 'p' {
            out.push(Lexed {
                tok: Tok::P,
                column,
            });
            i += 1;
        } else if c == 'L' {
            i += 1;
            let index = if i < chars.len() && chars[i] == 'p' {
                i += 1;
                p.get()
            } else {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(column, "expected an index after 'L'"));
                }
                let digits: String = chars[start..i].iter().collect();
                digits
                    .parse()
                    .map_err(|_| err(column, format!("index L{digits} is too large")))?
            };
            let top = p.square() - 1;
            if index == 0 || index > top {
                return Err(err(
                    column,
                    format!("L{index} is outside L1..L{top} for p = {p}"),
                ));
            }
            out.push(Lexed {
                tok: Tok::Lambda(index),
                column,
            });
        } else {
            return Err(err(column, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    end_column: usize,
    prime: Prime,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.end_column, |l| l.column)
    }

    fn expr(&mut self) -> Result<SUPolynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            let rhs = match op {
                Tok::Plus => {
                    self.pos += 1;
                    self.term()?
                }
                Tok::Minus => {
                    self.pos += 1;
                    self.term()?.scale(&Integer::from(-1))
                }
                _ => break,
            };
            acc = acc.add(&rhs).expect("single prime");
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SUPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("single prime");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SUPolynomial, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.scale(&Integer::from(-1)));
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        let exp = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                u64::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        err(
                            column,
                            format!("exponent {n} exceeds the maximum {MAX_EXPONENT}"),
                        )
                    })?
            }
            Some(Tok::P) => {
                self.pos += 1;
                self.prime.get()
            }
            _ => return Err(err(column, "expected an exponent after '^'")),
        };
        if exp > MAX_EXPONENT {
            return Err(err(
                column,
                format!("exponent {exp} exceeds the maximum {MAX_EXPONENT}"),
            ));
        }
        Ok(base.pow(exp as u32))
    }

    fn atom(&mut self) -> Result<SUPolynomial, ParseError> {
        let column = self.column();
        let p = self.prime;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(SUPolynomial::constant(p, n))
            }
            Some(Tok::P) => {
                self.pos += 1;
                Ok(SUPolynomial::constant(p, p.to_integer()))
            }
            Some(Tok::Lambda(ell)) => {
                self.pos += 1;
                Ok(SUPolynomial::lambda(ell, p).expect("range checked by the lexer"))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err(self.column(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(tok) => Err(err(column, format!("unexpected {}", describe(&tok)))),
            None => Err(err(column, "unexpected end of expression")),
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("number {n}"),
        Tok::P => "'p'".into(),
        Tok::Lambda(l) => format!("L{l}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

/// Parses a λ-expression into an element of `R(SU(p²))`.
pub fn parse(src: &str, p: Prime) -> Result<SUPolynomial, ParseError> {
    let toks = lex(src, p)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end_column: src.chars().count() + 1,
        prime: p,
    };
    let value = parser.expr()?;
    if parser.pos != toks.len() {
        let tok = &toks[parser.pos];
        return Err(err(
            tok.column,
            format!("unexpected {}", describe(&tok.tok)),
        ));
    }
    Ok(value)
}
