//! Bundle expressions on the command line.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := atom ('*' atom)*
//! atom  := 'wedgeQ' '(' int [',' int] ')'
//!        | 'SymQ' '(' int [',' int] ')'
//!        | ('Q' | 'Udual' | 'Qdual') ['(' int ')']
//!        | 'O' '(' int ')'
//!        | '(' expr ')'
//! ```
//!
//! A parenthesised integer after `Q`, `Udual` or `Qdual` is a twist.

use roofcalc_core::bundles::{tensor, wedge_q, BundleExpr};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected {found} at offset {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unknown bundle `{0}`")]
    UnknownName(String),
    #[error("integer out of range at offset {0}")]
    BadInteger(usize),
    #[error(transparent)]
    Bundle(#[from] roofcalc_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Int(i) => format!("`{}`", i),
            Tok::Sym(c) => format!("`{}`", c),
            Tok::End => String::from("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if c.is_ascii_digit()
            || (c == '-' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit))
        {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = src[start..i]
                .parse()
                .map_err(|_| ParseError::BadInteger(start))?;
            out.push((start, Tok::Int(v)));
        } else if "()+*,".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Unexpected {
                pos: i,
                found: format!("`{}`", c),
                expected: "a token",
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if t.1 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.next() {
            (_, Tok::Sym(s)) if s == c => Ok(()),
            (pos, t) => Err(ParseError::Unexpected {
                pos,
                found: t.describe(),
                expected: match c {
                    '(' => "`(`",
                    ')' => "`)`",
                    _ => "a symbol",
                },
            }),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.next() {
            (_, Tok::Int(v)) => Ok(v),
            (pos, t) => Err(ParseError::Unexpected {
                pos,
                found: t.describe(),
                expected: "an integer",
            }),
        }
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        let pos = self.toks[self.pos].0;
        usize::try_from(self.int()?).map_err(|_| ParseError::BadInteger(pos))
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BundleExpr, ParseError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            acc = acc.plus(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BundleExpr, ParseError> {
        let mut acc = self.atom()?;
        while self.eat('*') {
            acc = tensor(&acc, &self.atom()?)?;
        }
        Ok(acc)
    }

    /// `(k[, t])`
    fn count_and_twist(&mut self) -> Result<(usize, i64), ParseError> {
        self.expect('(')?;
        let k = self.count()?;
        let t = if self.eat(',') { self.int()? } else { 0 };
        self.expect(')')?;
        Ok((k, t))
    }

    fn optional_twist(&mut self) -> Result<i64, ParseError> {
        if self.eat('(') {
            let t = self.int()?;
            self.expect(')')?;
            Ok(t)
        } else {
            Ok(0)
        }
    }

    fn atom(&mut self) -> Result<BundleExpr, ParseError> {
        let n = self.n;
        match self.next() {
            (_, Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            (_, Tok::Ident(name)) => match name.as_str() {
                "wedgeQ" => {
                    let (k, t) = self.count_and_twist()?;
                    Ok(wedge_q(k, t, n)?)
                }
                "SymQ" => {
                    let (k, t) = self.count_and_twist()?;
                    Ok(BundleExpr::sym_q(k, n)?.twisted(t))
                }
                "O" => {
                    self.expect('(')?;
                    let t = self.int()?;
                    self.expect(')')?;
                    Ok(BundleExpr::o(n, t)?)
                }
                "Q" => Ok(BundleExpr::q(n)?.twisted(self.optional_twist()?)),
                "Udual" => Ok(BundleExpr::u_dual(n)?.twisted(self.optional_twist()?)),
                "Qdual" => Ok(BundleExpr::q_dual(n)?.twisted(self.optional_twist()?)),
                _ => Err(ParseError::UnknownName(name)),
            },
            (pos, t) => Err(ParseError::Unexpected {
                pos,
                found: t.describe(),
                expected: "a bundle",
            }),
        }
    }
}

/// Parses `src` as a bundle on `G(n, 2n+1)`.
pub fn parse(src: &str, n: usize) -> Result<BundleExpr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        n,
    };
    let e = p.expr()?;
    match p.next() {
        (_, Tok::End) => Ok(e),
        (pos, t) => Err(ParseError::Unexpected {
            pos,
            found: t.describe(),
            expected: "end of input",
        }),
    }
}
