//! Combinator terms, their printed form and the parser.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Id,
    Pi0,
    Pi1,
    Zero,
    /// The unique map into the terminal space.
    One,
    /// `Comp(g, f)` is `g . f`: `f` runs first.
    Comp(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Add(Box<Term>, Box<Term>),
    Eps(Box<Term>),
    D(Box<Term>),
    Prim(String),
}

impl Term {
    pub fn comp(g: Term, f: Term) -> Term {
        Term::Comp(Box::new(g), Box::new(f))
    }

    pub fn pair(f: Term, g: Term) -> Term {
        Term::Pair(Box::new(f), Box::new(g))
    }

    pub fn add(f: Term, g: Term) -> Term {
        Term::Add(Box::new(f), Box::new(g))
    }

    pub fn eps(f: Term) -> Term {
        Term::Eps(Box::new(f))
    }

    pub fn d(f: Term) -> Term {
        Term::D(Box::new(f))
    }

    pub fn prim(name: &str) -> Term {
        Term::Prim(name.to_string())
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Comp(a, b) | Term::Pair(a, b) | Term::Add(a, b) => vec![a, b],
            Term::Eps(a) | Term::D(a) => vec![a],
            _ => Vec::new(),
        }
    }

    /// Nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Whether every `d` node sits on a chain of `d` nodes ending at a primitive.
    pub fn is_normal(&self) -> bool {
        fn chain_to_prim(t: &Term) -> bool {
            match t {
                Term::Prim(_) => true,
                Term::D(inner) => chain_to_prim(inner),
                _ => false,
            }
        }
        match self {
            Term::D(inner) => chain_to_prim(inner),
            other => other.children().iter().all(|c| c.is_normal()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id => f.write_str("id"),
            Term::Pi0 => f.write_str("pi0"),
            Term::Pi1 => f.write_str("pi1"),
            Term::Zero => f.write_str("zero"),
            Term::One => f.write_str("one"),
            Term::Comp(g, h) => write!(f, "(comp {g} {h})"),
            Term::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Term::Add(a, b) => write!(f, "(add {a} {b})"),
            Term::Eps(a) => write!(f, "(eps {a})"),
            Term::D(a) => write!(f, "(d {a})"),
            Term::Prim(name) => write!(f, "(prim {name})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                out.push((i, Token::Open));
                chars.next();
            }
            ')' => {
                out.push((i, Token::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Token::Word(word)));
            }
            other => {
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Close)) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error("expected ')'"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let start = self.pos;
        match self.next() {
            Some(Token::Word(w)) => match w.as_str() {
                "id" => Ok(Term::Id),
                "pi0" => Ok(Term::Pi0),
                "pi1" => Ok(Term::Pi1),
                "zero" => Ok(Term::Zero),
                "one" => Ok(Term::One),
                other => {
                    self.pos = start;
                    self.error(format!("unknown atom '{other}'"))
                }
            },
            Some(Token::Open) => {
                let head_pos = self.pos;
                let head = match self.next() {
                    Some(Token::Word(w)) => w,
                    _ => {
                        self.pos = head_pos;
                        return self.error("expected a combinator name");
                    }
                };
                let t = match head.as_str() {
                    "comp" => Term::comp(self.term()?, self.term()?),
                    "pair" => Term::pair(self.term()?, self.term()?),
                    "add" => Term::add(self.term()?, self.term()?),
                    "eps" => Term::eps(self.term()?),
                    "d" => Term::d(self.term()?),
                    "prim" => match self.next() {
                        Some(Token::Word(name)) => Term::Prim(name),
                        _ => {
                            self.pos -= 1;
                            return self.error("expected a primitive name");
                        }
                    },
                    other => {
                        self.pos = head_pos;
                        return self.error(format!("unknown combinator '{other}'"));
                    }
                };
                self.expect_close()?;
                Ok(t)
            }
            Some(Token::Close) => {
                self.pos = start;
                self.error("unexpected ')'")
            }
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<Term> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let term = parser.term()?;
    if parser.pos < parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(term)
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        parse(s)
    }
}
