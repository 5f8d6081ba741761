use std::fmt;

use crate::deciders::Flags;
use crate::error::{Error, Result};

/// A boolean combination of property flags, e.g. `fqp & !arithmetical`.
///
/// `&`, `∧`, `and` bind tighter than `|`, `∨`, `or`; negation is `!`,
/// `¬`, `~` or `not`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Flag(String),
    Not(Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '!' | '¬' | '~' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((
                    pos,
                    match word.as_str() {
                        "and" => Tok::And,
                        "or" => Tok::Or,
                        "not" => Tok::Not,
                        _ => Tok::Ident(word),
                    },
                ));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected `{other}` in query"),
                })
            }
        };
        // Doubled operators such as `&&` read as one.
        chars.next();
        if matches!(tok, Tok::And | Tok::Or) && chars.peek().is_some_and(|&(_, d)| d == c) {
            chars.next();
        }
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.to_string(),
        })
    }

    fn or(&mut self) -> Result<Query> {
        let mut left = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            left = Query::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Query> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            left = Query::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Query> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Query::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Open) => {
                self.at += 1;
                let q = self.or()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected `)`");
                }
                self.at += 1;
                Ok(q)
            }
            Some(Tok::Ident(name)) => {
                if Flags::default_all(true).get(&name).is_none() {
                    return self.fail(&format!("unknown flag `{name}`"));
                }
                self.at += 1;
                Ok(Query::Flag(name))
            }
            _ => self.fail("expected a flag name, `!` or `(`"),
        }
    }
}

impl Flags {
    pub(crate) fn default_all(value: bool) -> Flags {
        Flags {
            local: value,
            chained: value,
            arithmetical: value,
            fqp: value,
            gaussian: value,
            prufer: value,
            reduced: value,
            von_neumann_regular: value,
            total_quotient_ring: value,
        }
    }

    fn from_bits(bits: u32) -> Flags {
        let b = |k: u32| bits & (1 << k) != 0;
        Flags {
            local: b(0),
            chained: b(1),
            arithmetical: b(2),
            fqp: b(3),
            gaussian: b(4),
            prufer: b(5),
            reduced: b(6),
            von_neumann_regular: b(7),
            total_quotient_ring: b(8),
        }
    }
}

pub fn parse_query(text: &str) -> Result<Query> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        len: text.len(),
    };
    let q = p.or()?;
    if p.at != p.toks.len() {
        return p.fail("unexpected input after query");
    }
    Ok(q)
}

impl std::str::FromStr for Query {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_query(s)
    }
}

impl Query {
    pub fn eval(&self, flags: &Flags) -> bool {
        match self {
            Query::Flag(name) => flags.get(name).unwrap_or(false),
            Query::Not(q) => !q.eval(flags),
            Query::And(a, b) => a.eval(flags) && b.eval(flags),
            Query::Or(a, b) => a.eval(flags) || b.eval(flags),
        }
    }

    /// True when no finite ring can satisfy the query: every flag
    /// assignment meeting it breaks one of the implications between flags,
    /// or has `prufer` or `total_quotient_ring` false (both always hold for
    /// finite rings).
    pub fn forbidden(&self) -> bool {
        !(0..1u32 << 9).map(Flags::from_bits).any(|f| {
            f.prufer && f.total_quotient_ring && f.inconsistencies().is_empty() && self.eval(&f)
        })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Flag(name) => f.write_str(name),
            Query::Not(q) => match **q {
                Query::Flag(_) | Query::Not(_) => write!(f, "!{q}"),
                _ => write!(f, "!({q})"),
            },
            Query::And(a, b) => {
                let left = match **a {
                    Query::Or(..) => format!("({a})"),
                    _ => a.to_string(),
                };
                let right = match **b {
                    Query::Or(..) | Query::And(..) => format!("({b})"),
                    _ => b.to_string(),
                };
                write!(f, "{left} & {right}")
            }
            Query::Or(a, b) => match **b {
                Query::Or(..) => write!(f, "{a} | ({b})"),
                _ => write!(f, "{a} | {b}"),
            },
        }
    }
}
