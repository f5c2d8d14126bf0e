//! Prefix-notation reader for énoncés.
//!
//! Keywords are lowercase ASCII (`psi imp all in lam sig del`) separated by
//! whitespace; the symbols `Ψ ⟹ ∀ ∈ λ ς δ` are accepted as aliases and need
//! no separating whitespace. Sugar: `theta`/`Θ`, `D#N`, `x@H`, `v@N`,
//! brace literals `{ D#0, { D#1 } }`, and the connectives `~ & | <=> E!`
//! (also `¬ ∧ ∨ ⟺ ∃`). A token starting with `#` begins a comment.

use num_bigint::BigUint;

use super::ast::{Enonce, Term};
use crate::dictif::{HfSet, INDEX_BIT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("column {col}: unknown token `{token}`")]
    UnknownToken { col: usize, token: String },
    #[error("column {col}: `{op}` is missing an operand")]
    Arity { col: usize, op: String },
    #[error("column {col}: expected a term, found `{found}`")]
    ExpectedTerm { col: usize, found: String },
    #[error("column {col}: expected an énoncé, found `{found}`")]
    ExpectedEnonce { col: usize, found: String },
    #[error("column {col}: unexpected trailing input `{found}`")]
    Trailing { col: usize, found: String },
    #[error("column {col}: heights and variable indices start at 1")]
    ZeroHeight { col: usize },
    #[error("column {col}: dictif index exceeds the {cap_bits}-bit cap")]
    IndexOverflow { col: usize, cap_bits: u64 },
}

impl ParseError {
    pub fn column(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::UnknownToken { col, .. }
            | ParseError::Arity { col, .. }
            | ParseError::ExpectedTerm { col, .. }
            | ParseError::ExpectedEnonce { col, .. }
            | ParseError::Trailing { col, .. }
            | ParseError::ZeroHeight { col }
            | ParseError::IndexOverflow { col, .. } => Some(*col),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Largest accepted bit length of a `D#N` index.
    pub index_bit_cap: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { index_bit_cap: INDEX_BIT_CAP }
    }
}

/// An énoncé that may still use the derived connectives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ext {
    Psi,
    Var(u32),
    Implies(Box<Ext>, Box<Ext>),
    ForAll(Box<Ext>),
    In(Term, Term),
    Not(Box<Ext>),
    And(Box<Ext>, Box<Ext>),
    Or(Box<Ext>, Box<Ext>),
    Iff(Box<Ext>, Box<Ext>),
    Exists(Box<Ext>),
}

/// Rewrites the derived connectives into `Ψ`, `⟹`, `∀`, `∈`.
pub fn desugar(e: &Ext) -> Enonce {
    match e {
        Ext::Psi => Enonce::Psi,
        Ext::Var(n) => Enonce::Var(*n),
        Ext::Implies(a, b) => Enonce::implies(desugar(a), desugar(b)),
        Ext::ForAll(b) => Enonce::forall(desugar(b)),
        Ext::In(l, r) => Enonce::In(l.clone(), r.clone()),
        Ext::Not(a) => Enonce::not(desugar(a)),
        Ext::And(a, b) => Enonce::and(desugar(a), desugar(b)),
        Ext::Or(a, b) => Enonce::or(desugar(a), desugar(b)),
        Ext::Iff(a, b) => Enonce::iff(desugar(a), desugar(b)),
        Ext::Exists(b) => Enonce::exists(desugar(b)),
    }
}

pub fn parse(text: &str) -> Result<Enonce, ParseError> {
    parse_with(text, &ParseOptions::default())
}

pub fn parse_with(text: &str, opts: &ParseOptions) -> Result<Enonce, ParseError> {
    parse_ext_with(text, opts).map(|e| desugar(&e))
}

pub fn parse_ext(text: &str) -> Result<Ext, ParseError> {
    parse_ext_with(text, &ParseOptions::default())
}

pub fn parse_ext_with(text: &str, opts: &ParseOptions) -> Result<Ext, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
        opts,
    };
    let e = p.enonce(None)?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Trailing {
            col: t.col,
            found: t.text.clone(),
        });
    }
    Ok(e)
}

/// Parses a single dictif term (`D#N`, `del … sig`, or a brace literal).
pub fn parse_dictif(text: &str) -> Result<HfSet, ParseError> {
    let opts = ParseOptions::default();
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
        opts: &opts,
    };
    let tok = p.next().ok_or(ParseError::Empty)?;
    let d = p.dictif_from(tok)?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Trailing {
            col: t.col,
            found: t.text.clone(),
        });
    }
    Ok(d)
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    col: usize,
}

const SYMBOLS: &[char] = &['Ψ', '⟹', '∀', '∈', 'λ', 'ς', 'δ', 'Θ', '¬', '∧', '∨', '⟺', '∃', '{', '}', ','];

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let flush = |cur: &mut String, start: usize, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token {
                text: std::mem::take(cur),
                col: start,
            });
        }
    };
    for (i, c) in text.chars().enumerate() {
        let col = i + 1;
        if c == '#' && cur.is_empty() {
            break;
        }
        if c.is_whitespace() {
            flush(&mut cur, start, &mut out);
        } else if SYMBOLS.contains(&c) {
            flush(&mut cur, start, &mut out);
            out.push(Token {
                text: c.to_string(),
                col,
            });
        } else {
            if cur.is_empty() {
                start = col;
            }
            cur.push(c);
        }
    }
    flush(&mut cur, start, &mut out);
    out
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    opts: &'a ParseOptions,
}

type Parent<'t> = Option<(&'t str, usize)>;

fn missing(parent: Parent<'_>) -> ParseError {
    match parent {
        Some((op, col)) => ParseError::Arity {
            col,
            op: op.to_string(),
        },
        None => ParseError::Empty,
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn enonce(&mut self, parent: Parent<'_>) -> Result<Ext, ParseError> {
        let tok = self.next().ok_or_else(|| missing(parent))?;
        let me = Some((tok.text.as_str(), tok.col));
        let unary = |p: &mut Self, f: fn(Box<Ext>) -> Ext| -> Result<Ext, ParseError> {
            Ok(f(Box::new(p.enonce(me)?)))
        };
        let binary = |p: &mut Self, f: fn(Box<Ext>, Box<Ext>) -> Ext| -> Result<Ext, ParseError> {
            let a = p.enonce(me)?;
            let b = p.enonce(me)?;
            Ok(f(Box::new(a), Box::new(b)))
        };
        match tok.text.as_str() {
            "psi" | "Ψ" => Ok(Ext::Psi),
            "theta" | "Θ" => Ok(Ext::Implies(Box::new(Ext::Psi), Box::new(Ext::Psi))),
            "imp" | "⟹" => binary(self, Ext::Implies),
            "all" | "∀" => unary(self, Ext::ForAll),
            "in" | "∈" => {
                let l = self.term(me)?;
                let r = self.term(me)?;
                Ok(Ext::In(l, r))
            }
            "~" | "¬" => unary(self, Ext::Not),
            "&" | "∧" => binary(self, Ext::And),
            "|" | "∨" => binary(self, Ext::Or),
            "<=>" | "⟺" => binary(self, Ext::Iff),
            "E!" | "∃" => unary(self, Ext::Exists),
            "lam" | "λ" => {
                let n = 1 + self.count_lams();
                match self.next() {
                    Some(t) if t.text == "psi" || t.text == "Ψ" => Ok(Ext::Var(n)),
                    Some(t) => Err(ParseError::ExpectedEnonce {
                        col: t.col,
                        found: t.text,
                    }),
                    None => Err(missing(me)),
                }
            }
            s if s.starts_with("v@") => Ok(Ext::Var(self.positive(&s[2..], tok.col)?)),
            s if is_term_start(s) => Err(ParseError::ExpectedEnonce {
                col: tok.col,
                found: tok.text.clone(),
            }),
            _ => Err(ParseError::UnknownToken {
                col: tok.col,
                token: tok.text.clone(),
            }),
        }
    }

    fn count_lams(&mut self) -> u32 {
        let mut n = 0;
        while matches!(self.peek(), Some(t) if t.text == "lam" || t.text == "λ") {
            self.pos += 1;
            n += 1;
        }
        n
    }

    fn positive(&self, digits: &str, col: usize) -> Result<u32, ParseError> {
        let n: u32 = digits.parse().map_err(|_| ParseError::UnknownToken {
            col,
            token: digits.to_string(),
        })?;
        if n == 0 {
            return Err(ParseError::ZeroHeight { col });
        }
        Ok(n)
    }

    fn term(&mut self, parent: Parent<'_>) -> Result<Term, ParseError> {
        let tok = self.next().ok_or_else(|| missing(parent))?;
        match tok.text.as_str() {
            "lam" | "λ" => {
                let h = 1 + self.count_lams();
                match self.next() {
                    Some(t) if t.text == "sig" || t.text == "ς" => Ok(Term::Litteme(h)),
                    Some(t) => Err(ParseError::ExpectedTerm {
                        col: t.col,
                        found: t.text,
                    }),
                    None => Err(missing(parent)),
                }
            }
            s if s.starts_with("x@") => Ok(Term::Litteme(self.positive(&s[2..], tok.col)?)),
            _ => Ok(Term::Dictif(self.dictif_from(tok)?)),
        }
    }

    fn dictif_from(&mut self, tok: Token) -> Result<HfSet, ParseError> {
        match tok.text.as_str() {
            "sig" | "ς" => Ok(HfSet::empty()),
            "del" | "δ" => {
                let mut k: u64 = 1;
                loop {
                    let t = self.next().ok_or(ParseError::Arity {
                        col: tok.col,
                        op: tok.text.clone(),
                    })?;
                    match t.text.as_str() {
                        "del" | "δ" => k += 1,
                        "sig" | "ς" => return Ok(HfSet::from_u64(k)),
                        s if s.starts_with("D#") => {
                            let n = self.index(&s[2..], t.col)? + BigUint::from(k);
                            return Ok(HfSet::from_index(&n));
                        }
                        _ => {
                            return Err(ParseError::ExpectedTerm {
                                col: t.col,
                                found: t.text,
                            })
                        }
                    }
                }
            }
            "{" => self.brace(tok.col),
            s if s.starts_with("D#") => Ok(HfSet::from_index(&self.index(&s[2..], tok.col)?)),
            s if is_enonce_start(s) => Err(ParseError::ExpectedTerm {
                col: tok.col,
                found: tok.text.clone(),
            }),
            _ => Err(ParseError::UnknownToken {
                col: tok.col,
                token: tok.text.clone(),
            }),
        }
    }

    fn index(&self, digits: &str, col: usize) -> Result<BigUint, ParseError> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::UnknownToken {
                col,
                token: format!("D#{digits}"),
            });
        }
        let n = BigUint::parse_bytes(digits.as_bytes(), 10).expect("digits checked");
        if n.bits() > self.opts.index_bit_cap {
            return Err(ParseError::IndexOverflow {
                col,
                cap_bits: self.opts.index_bit_cap,
            });
        }
        Ok(n)
    }

    fn brace(&mut self, col: usize) -> Result<HfSet, ParseError> {
        let open = Some(("{", col));
        let mut elems = Vec::new();
        if matches!(self.peek(), Some(t) if t.text == "}") {
            self.pos += 1;
            return Ok(HfSet::empty());
        }
        loop {
            let t = self.next().ok_or_else(|| missing(open))?;
            elems.push(self.dictif_from(t)?);
            match self.next() {
                Some(t) if t.text == "," => {}
                Some(t) if t.text == "}" => return Ok(HfSet::from_elements(elems)),
                Some(t) => {
                    return Err(ParseError::ExpectedTerm {
                        col: t.col,
                        found: t.text,
                    })
                }
                None => return Err(missing(open)),
            }
        }
    }
}

fn is_term_start(s: &str) -> bool {
    matches!(s, "sig" | "ς" | "del" | "δ" | "{") || s.starts_with("D#") || s.starts_with("x@")
}

fn is_enonce_start(s: &str) -> bool {
    matches!(
        s,
        "psi" | "Ψ" | "theta" | "Θ" | "imp" | "⟹" | "all" | "∀" | "in" | "∈" | "~" | "¬" | "&" | "∧" | "|" | "∨" | "<=>" | "⟺" | "E!" | "∃"
    ) || s.starts_with("v@")
}
