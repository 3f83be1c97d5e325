use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{parse, FormulaSet, ParseError};

/// An object value assigned to a value name at a world.
///
/// `Cell` holds the canonical prints of a finite set of formulas (sorted);
/// `Bullet` and `Circ` are two extra distinguished objects; `Default(n)`
/// covers brute-force enumeration and unconstrained entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueToken {
    Cell(Vec<String>),
    Bullet,
    Circ,
    Default(i64),
}

impl ValueToken {
    /// A cell token for a set of formulas; order and duplicates in the input
    /// do not matter.
    pub fn cell(set: &FormulaSet) -> ValueToken {
        ValueToken::Cell(set.keys().map(str::to_string).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenParseError {
    #[error("unknown value token {0:?}")]
    Unknown(String),
    #[error("bad default token {0:?}")]
    BadDefault(String),
    #[error("cell member {member:?}: {source}")]
    BadCellMember {
        member: String,
        #[source]
        source: ParseError,
    },
}

impl fmt::Display for ValueToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueToken::Cell(members) => write!(f, "cell:{{{}}}", members.join(";")),
            ValueToken::Bullet => f.write_str("bullet"),
            ValueToken::Circ => f.write_str("circ"),
            ValueToken::Default(n) => write!(f, "default:{n}"),
        }
    }
}

impl FromStr for ValueToken {
    type Err = TokenParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bullet" => return Ok(ValueToken::Bullet),
            "circ" => return Ok(ValueToken::Circ),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("default:") {
            return n
                .parse()
                .map(ValueToken::Default)
                .map_err(|_| TokenParseError::BadDefault(s.to_string()));
        }
        if let Some(body) = s.strip_prefix("cell:{").and_then(|r| r.strip_suffix('}')) {
            let mut set = FormulaSet::new();
            if !body.trim().is_empty() {
                for member in body.split(';') {
                    let f = parse(member).map_err(|source| TokenParseError::BadCellMember {
                        member: member.to_string(),
                        source,
                    })?;
                    set.insert(f);
                }
            }
            return Ok(ValueToken::cell(&set));
        }
        Err(TokenParseError::Unknown(s.to_string()))
    }
}
