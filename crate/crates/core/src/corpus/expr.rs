//! The family-constructor expression language:
//!
//! ```text
//! expr := term (" x " term)*
//! term := ident "(" int ("," int)* ")"
//! ```
//!
//! `x` is the direct product, left associative.

use thiserror::Error;

use crate::families::{family, FAMILY_NAMES};
use crate::group::{GroupError, GroupTable};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub family: String,
    pub params: Vec<u64>,
    /// 1-based column of the family name.
    pub column: usize,
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_spaces(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn expect(&mut self, byte: u8) -> Result<(), ExprError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {:?}", byte as char))
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos]).expect("ascii slice")
    }

    fn term(&mut self) -> Result<Term, ExprError> {
        let column = self.pos + 1;
        let ident = self
            .take_while(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
            .to_string();
        if ident.is_empty() {
            return self.error("expected a family name");
        }
        if !FAMILY_NAMES.contains(&ident.as_str()) {
            return Err(ExprError::Parse {
                column,
                message: format!("unknown family {ident:?}"),
            });
        }
        self.expect(b'(')?;
        let mut params = Vec::new();
        loop {
            self.skip_spaces();
            let digits = self.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return self.error("expected an integer");
            }
            let value = digits.parse().map_err(|_| ExprError::Parse {
                column: self.pos + 1,
                message: "integer too large".into(),
            })?;
            params.push(value);
            self.skip_spaces();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.error("expected ',' or ')'"),
            }
        }
        Ok(Term {
            family: ident,
            params,
            column,
        })
    }
}

/// Parses an expression without constructing any group.
pub fn parse_expression(text: &str) -> Result<Vec<Term>, ExprError> {
    if !text.is_ascii() {
        return Err(ExprError::Parse {
            column: 1,
            message: "expression must be ASCII".into(),
        });
    }
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    cur.skip_spaces();
    let mut terms = vec![cur.term()?];
    loop {
        let gap = cur.skip_spaces();
        if cur.peek().is_none() {
            break;
        }
        if gap == 0 || cur.peek() != Some(b'x') {
            return cur.error("expected \" x \" between terms");
        }
        cur.pos += 1;
        if cur.skip_spaces() == 0 {
            return cur.error("expected a space after 'x'");
        }
        terms.push(cur.term()?);
    }
    Ok(terms)
}

/// Canonical text of a parsed expression.
pub fn render_expression(terms: &[Term]) -> String {
    terms
        .iter()
        .map(|t| {
            let params: Vec<String> = t.params.iter().map(u64::to_string).collect();
            format!("{}({})", t.family, params.join(","))
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn eval_expression(text: &str, order_cap: usize) -> Result<GroupTable, ExprError> {
    let terms = parse_expression(text)?;
    let mut acc: Option<GroupTable> = None;
    for t in &terms {
        let g = family(&t.family, &t.params, order_cap)?;
        acc = Some(match acc {
            None => g,
            Some(prev) => prev.direct_product(&g, order_cap)?,
        });
    }
    Ok(acc.expect("at least one term"))
}
