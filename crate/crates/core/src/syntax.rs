//! Text syntax for terms.
//!
//! ```text
//! term  := sum
//! sum   := prod (("+" | "-") prod)*
//! prod  := unary (("*" | "/") unary)*
//! unary := "-" unary | atom ("^" nat)?
//! atom  := int | ident | "(" term ")" | "inv" "(" term ")"
//! ```
//!
//! `/` is only accepted in divisive mode and `inv(...)` only in inversive
//! mode. The literal `1` is the constant one; every other integer literal is
//! the inductively built numeral, so `2` reads as `(0 + 1) + 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, ParseError};
use crate::term::{as_power, mk_numeral, power, Signature, Term};

/// Largest literal the parser unfolds into a numeral. Numerals are stored as
/// chains of additions, so bigger literals would produce unusably deep trees.
pub const MAX_LITERAL: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
            i += 1;
            column += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            let n: BigInt = text.parse().expect("digits");
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l,
                column: col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned {
                tok: Tok::Ident(text),
                line: l,
                column: col,
            });
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                expected: "a term".into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.into(),
            found: t.tok.describe(),
        }
        .into()
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), Error> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn sum(&mut self) -> Result<Term, Error> {
        let mut lhs = self.prod()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Term::add(lhs, self.prod()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Term::sub(lhs, self.prod()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prod(&mut self) -> Result<Term, Error> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Term::mul(lhs, self.unary()?);
                }
                Tok::Slash => {
                    let at = self.bump();
                    if self.sig != Signature::Divisive {
                        return Err(Error::SignatureError {
                            operator: "/".into(),
                            signature: self.sig,
                            line: at.line,
                            column: at.column,
                        });
                    }
                    lhs = Term::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Term, Error> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Term::neg(self.unary()?));
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let Tok::Int(n) = self.peek().tok.clone() else {
                return Err(self.error("a natural-number exponent"));
            };
            let k = u32::try_from(&n)
                .ok()
                .filter(|k| *k <= MAX_LITERAL)
                .ok_or_else(|| self.error(&format!("an exponent of at most {MAX_LITERAL}")))?;
            self.bump();
            return Ok(power(&base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term, Error> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                if n > BigInt::from(MAX_LITERAL) {
                    return Err(self.error(&format!("an integer literal of at most {MAX_LITERAL}")));
                }
                self.bump();
                Ok(if n.is_one() {
                    Term::One
                } else {
                    mk_numeral(&n)
                })
            }
            Tok::Ident(name) if name == "inv" => {
                let at = self.bump();
                if self.sig != Signature::Inversive {
                    return Err(Error::SignatureError {
                        operator: "inv".into(),
                        signature: self.sig,
                        line: at.line,
                        column: at.column,
                    });
                }
                self.expect(Tok::LParen, "`(` after `inv`")?;
                let t = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::inv(t))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("a term")),
        }
    }
}

/// Parses `input` as a term over the given signature.
pub fn parse(input: &str, sig: Signature) -> Result<Term, Error> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, sig };
    let t = p.sum()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(t)
}

/// Shorthand for [`parse`] in divisive mode.
pub fn parse_divisive(input: &str) -> Result<Term, Error> {
    parse(input, Signature::Divisive)
}

// Binding strength of what a printed term looks like at its root.
const SUM: u8 = 1;
const PROD: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

/// Prints `t` with minimal parentheses so that parsing the output gives back
/// the same tree. Numerals `n ≥ 2` print as integer literals and unfolded
/// powers `p^k` with `k ≥ 2` print with `^`.
pub fn print(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn level(t: &Term) -> u8 {
    if let Some(n) = t.as_numeral().filter(|n| !is_unit(n)) {
        return if n.is_negative() { UNARY } else { ATOM };
    }
    match t {
        Term::Zero | Term::One | Term::Var(_) | Term::Inv(_) => ATOM,
        Term::Add(..) => SUM,
        Term::Mul(..) if is_sugared_power(t) => UNARY,
        Term::Mul(..) | Term::Div(..) => PROD,
        Term::Neg(_) => UNARY,
    }
}

// The numerals of 1 and -1 print structurally (`0 + 1`) since the literal
// `1` denotes the constant.
fn is_unit(n: &BigInt) -> bool {
    n.abs().is_one()
}

fn is_sugared_power(t: &Term) -> bool {
    matches!(as_power(t), Some((_, k)) if k >= 2)
}

fn write_at(t: &Term, min: u8, out: &mut String) {
    if level(t) < min {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

fn write_term(t: &Term, out: &mut String) {
    if let Some(n) = t.as_numeral().filter(|n| !is_unit(n)) {
        out.push_str(&n.to_string());
        return;
    }
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Var(v) => out.push_str(v),
        Term::Add(a, b) => {
            write_at(a, SUM, out);
            if let Term::Neg(c) = &**b {
                out.push_str(" - ");
                write_at(c, PROD, out);
            } else {
                out.push_str(" + ");
                write_at(b, PROD, out);
            }
        }
        Term::Mul(a, b) => {
            if let Some((base, k)) = as_power(t).filter(|(_, k)| *k >= 2) {
                write_at(base, ATOM, out);
                out.push('^');
                out.push_str(&k.to_string());
                return;
            }
            write_at(a, PROD, out);
            out.push('*');
            write_at(b, UNARY, out);
        }
        Term::Div(a, b) => {
            write_at(a, PROD, out);
            out.push('/');
            write_at(b, UNARY, out);
        }
        Term::Neg(a) => {
            out.push('-');
            write_at(a, UNARY, out);
        }
        Term::Inv(a) => {
            out.push_str("inv(");
            write_term(a, out);
            out.push(')');
        }
    }
}
