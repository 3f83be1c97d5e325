//! Recursive descent parser for the ASCII concrete syntax.
//!
//! ```text
//! formula := "T" | "F" | prop | "~" formula | "(" formula ")"
//!          | "[" nat "]" formula | "<" nat ">" formula
//!          | "Kv" nat "(" formula "," vname ")"
//!          | formula ("&" | "|" | "->" | "<->") formula
//! ```
//!
//! Unary operators bind tightest, then `&`, `|`, `->` (right associative)
//! and finally `<->`. Propositions are lowercase identifiers not starting
//! with `d`; value names are identifiers starting with `d`.

use thiserror::Error;

use super::{Agent, Formula};

/// Nesting limit; keeps the recursive descent (and the recursive drop of
/// the tree) away from stack exhaustion on adversarial input.
const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {pos}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("agent id must be a positive integer")]
    AgentZero,
    #[error("agent id out of range")]
    AgentOutOfRange,
    #[error("empty identifier")]
    EmptyIdentifier,
    #[error("{0:?} is a value name and cannot be used as a proposition")]
    ValueNameAsProp(String),
    #[error("{0:?} is not a value name (value names start with 'd')")]
    NotAValueName(String),
    #[error("formula nested too deeply")]
    TooDeep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Top,
    Bot,
    Ident(String),
    Nat(String),
    Kv,
    Tilde,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Top => "\"T\"".into(),
            Tok::Bot => "\"F\"".into(),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Nat(s) => format!("number {s}"),
            Tok::Kv => "\"Kv\"".into(),
            Tok::Tilde => "\"~\"".into(),
            Tok::And => "\"&\"".into(),
            Tok::Or => "\"|\"".into(),
            Tok::Implies => "\"->\"".into(),
            Tok::Iff => "\"<->\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::LBracket => "\"[\"".into(),
            Tok::RBracket => "\"]\"".into(),
            Tok::Lt => "\"<\"".into(),
            Tok::Gt => "\">\"".into(),
            Tok::Comma => "\",\"".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'>' => Tok::Gt,
            b',' => Tok::Comma,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'<' => Tok::Lt,
            b'K' if bytes.get(i + 1) == Some(&b'v') => {
                i += 1;
                Tok::Kv
            }
            b'T' => Tok::Top,
            b'F' => Tok::Bot,
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Nat(text[start..=i].to_string())
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    nesting: usize,
}

/// Parses the concrete syntax into the primitive abstract syntax, rewriting
/// every derived connective.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        nesting: 0,
    };
    let f = p.iff()?;
    match p.peek() {
        None => Ok(f),
        Some(t) => Err(p.unexpected(t.clone(), "end of input")),
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind,
        }
    }

    fn unexpected(&self, found: Tok, expected: &'static str) -> ParseError {
        self.error(ParseErrorKind::UnexpectedToken {
            found: found.describe(),
            expected,
        })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => Err(self.unexpected(t.clone(), expected)),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd { expected })),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let lhs = self.implication()?;
        let f = if self.peek() == Some(&Tok::Iff) {
            self.at += 1;
            let rhs = self.iff()?;
            Formula::iff(lhs, rhs)
        } else {
            lhs
        };
        self.nesting -= 1;
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let lhs = self.disjunction()?;
        let f = if self.peek() == Some(&Tok::Implies) {
            self.at += 1;
            let rhs = self.implication()?;
            Formula::implies(lhs, rhs)
        } else {
            lhs
        };
        self.nesting -= 1;
        Ok(f)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            let rhs = self.conjunction()?;
            f = Formula::or(f, rhs);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            let rhs = self.unary()?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    fn agent(&mut self) -> Result<Agent, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                let id: u32 = n
                    .parse()
                    .map_err(|_| self.error(ParseErrorKind::AgentOutOfRange))?;
                let agent = Agent::new(id).ok_or_else(|| self.error(ParseErrorKind::AgentZero))?;
                self.at += 1;
                Ok(agent)
            }
            Some(t) => Err(self.unexpected(t, "agent number")),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd {
                expected: "agent number",
            })),
        }
    }

    fn value_name(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name.starts_with('d') => {
                self.at += 1;
                Ok(name)
            }
            Some(Tok::Ident(name)) => Err(self.error(ParseErrorKind::NotAValueName(name))),
            Some(Tok::RParen | Tok::Comma) => Err(self.error(ParseErrorKind::EmptyIdentifier)),
            Some(t) => Err(self.unexpected(t, "value name")),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd {
                expected: "value name",
            })),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let start = self.pos();
        let f = match self.bump() {
            Some(Tok::Top) => Formula::Top,
            Some(Tok::Bot) => Formula::bot(),
            Some(Tok::Ident(name)) => {
                if name.starts_with('d') {
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::ValueNameAsProp(name),
                    });
                }
                Formula::Prop(name)
            }
            Some(Tok::Tilde) => Formula::not(self.unary()?),
            Some(Tok::LParen) => {
                let f = self.iff()?;
                self.expect(Tok::RParen, "\")\"")?;
                f
            }
            Some(Tok::LBracket) => {
                let agent = self.agent()?;
                self.expect(Tok::RBracket, "\"]\"")?;
                Formula::boxed(agent, self.unary()?)
            }
            Some(Tok::Lt) => {
                let agent = self.agent()?;
                self.expect(Tok::Gt, "\">\"")?;
                Formula::diamond(agent, self.unary()?)
            }
            Some(Tok::Kv) => {
                let agent = self.agent()?;
                self.expect(Tok::LParen, "\"(\"")?;
                let guard = self.iff()?;
                self.expect(Tok::Comma, "\",\"")?;
                let d = self.value_name()?;
                self.expect(Tok::RParen, "\")\"")?;
                Formula::nabla(agent, guard, d)
            }
            Some(t) => {
                self.at -= 1;
                return Err(self.unexpected(t, "formula"));
            }
            None => {
                return Err(self.error(ParseErrorKind::UnexpectedEnd {
                    expected: "formula",
                }));
            }
        };
        self.nesting -= 1;
        Ok(f)
    }
}
