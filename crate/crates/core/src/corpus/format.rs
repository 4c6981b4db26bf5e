//! The line-oriented group file format.
//!
//! ```text
//! # comment
//! group Q8
//! perm degree 8
//! gen (1 2 3 4)(5 8 7 6)
//! gen (1 5 3 7)(2 6 4 8)
//!
//! group V4
//! make elemab(2,2)
//!
//! group C3
//! cayley order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! `#` starts a comment, blank lines separate specs, Cayley entries are
//! 0-based and cycle points are 1-based.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::expr::{eval_expression, parse_expression, ExprError};
use crate::group::{AssocCheck, GroupError, GroupTable, DEFAULT_ORDER_CAP};
use crate::perm::{from_permutations, Permutation};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: duplicate group name {name:?} (first defined on line {first})")]
    DuplicateName {
        name: String,
        line: usize,
        first: usize,
    },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::Parse(e) => e.line,
            CorpusError::DuplicateName { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    CayleyLiteral {
        order: usize,
        rows: Vec<Vec<usize>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Permutation>,
    },
    Expression(String),
}

/// A named, not yet constructed group.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub source: GroupSource,
    /// Line of the `group` header, 0 when not read from text.
    pub line: usize,
    /// Line of each Cayley row, empty when not read from text.
    pub row_lines: Vec<usize>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.source == other.source
    }
}

impl Eq for GroupSpec {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub order_cap: usize,
    pub assoc: AssocCheck,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: DEFAULT_ORDER_CAP,
            assoc: AssocCheck::Auto,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("line {line}: group {name}: {source}")]
    Table {
        name: String,
        line: usize,
        source: GroupError,
    },
    #[error("line {line}: group {name}: {source}")]
    Expression {
        name: String,
        line: usize,
        source: ExprError,
    },
}

impl BuildError {
    /// Whether the failure is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            BuildError::Table {
                source: GroupError::OrderCapExceeded { .. },
                ..
            } | BuildError::Expression {
                source: ExprError::Group(GroupError::OrderCapExceeded { .. }),
                ..
            }
        )
    }

    pub fn line(&self) -> usize {
        match self {
            BuildError::Table { line, .. } | BuildError::Expression { line, .. } => *line,
        }
    }
}

impl GroupSpec {
    pub fn expression(name: impl Into<String>, expr: impl Into<String>) -> Self {
        GroupSpec {
            name: name.into(),
            source: GroupSource::Expression(expr.into()),
            line: 0,
            row_lines: Vec::new(),
        }
    }

    pub fn build(&self, opts: &BuildOptions) -> Result<GroupTable, BuildError> {
        let table_err = |source: GroupError, line: usize| BuildError::Table {
            name: self.name.clone(),
            line,
            source,
        };
        let g = match &self.source {
            GroupSource::Expression(text) => {
                eval_expression(text, opts.order_cap).map_err(|source| BuildError::Expression {
                    name: self.name.clone(),
                    line: self.line,
                    source,
                })?
            }
            GroupSource::Permutations { degree, generators } => {
                from_permutations(*degree, generators, self.name.clone(), opts.order_cap)
                    .map_err(|e| table_err(e, self.line))?
            }
            GroupSource::CayleyLiteral { order, rows } => {
                if *order > opts.order_cap {
                    return Err(table_err(
                        GroupError::OrderCapExceeded {
                            cap: opts.order_cap,
                        },
                        self.line,
                    ));
                }
                GroupTable::from_cayley_table_with(*order, rows, self.name.clone(), opts.assoc)
                    .map_err(|e| {
                        let row = match e {
                            GroupError::NotClosed { row, .. }
                            | GroupError::BadDimensions { row, .. } => Some(row),
                            GroupError::NoInverse { element } => Some(element),
                            GroupError::NotAssociative { a, .. } => Some(a),
                            _ => None,
                        };
                        let line = row
                            .and_then(|r| self.row_lines.get(r).copied())
                            .unwrap_or(self.line);
                        table_err(e, line)
                    })?
            }
        };
        Ok(g.with_name(self.name.clone()))
    }
}

/// Ordered specs plus the comment lines that document where they came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusManifest {
    /// Text after `#` on each full-line comment, in file order.
    pub comments: Vec<String>,
    pub specs: Vec<GroupSpec>,
}

impl CorpusManifest {
    pub fn get(&self, name: &str) -> Option<&GroupSpec> {
        self.specs.iter().find(|s| s.name == name)
    }
}

enum State {
    Idle,
    NeedBody,
    Perm,
    Cayley { remaining: usize },
    Done,
}

struct Parser {
    manifest: CorpusManifest,
    state: State,
    seen: HashMap<String, usize>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_ascii_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_count(line: usize, (column, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            perr(
                line,
                column,
                format!("expected a positive {what}, found {tok:?}"),
            )
        })
}

impl Parser {
    fn current(&mut self) -> &mut GroupSpec {
        self.manifest.specs.last_mut().expect("a spec is open")
    }

    fn close(&mut self, line: usize) -> Result<(), ParseError> {
        match self.state {
            State::NeedBody => {
                let name = &self.current().name;
                return Err(perr(line, 1, format!("group {name} has no body")));
            }
            State::Cayley { remaining } if remaining > 0 => {
                return Err(perr(
                    line,
                    1,
                    format!("expected {remaining} more table row(s)"),
                ));
            }
            _ => {}
        }
        self.state = State::Idle;
        Ok(())
    }

    fn line(&mut self, no: usize, raw: &str) -> Result<(), CorpusError> {
        let trimmed = raw.trim_start();
        if let Some(comment) = trimmed.strip_prefix('#') {
            self.manifest.comments.push(comment.to_string());
            return Ok(());
        }
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            self.close(no)?;
            return Ok(());
        }
        if toks[0].1 == "group" {
            self.close(no)?;
            if toks.len() != 2 {
                return Err(perr(no, toks[0].0, "expected \"group NAME\"").into());
            }
            let name = toks[1].1.to_string();
            if let Some(&first) = self.seen.get(&name) {
                return Err(CorpusError::DuplicateName {
                    name,
                    line: no,
                    first,
                });
            }
            self.seen.insert(name.clone(), no);
            self.manifest.specs.push(GroupSpec {
                name,
                source: GroupSource::Expression(String::new()),
                line: no,
                row_lines: Vec::new(),
            });
            self.state = State::NeedBody;
            return Ok(());
        }
        match self.state {
            State::Idle => Err(perr(no, toks[0].0, "expected \"group NAME\"").into()),
            State::Done => Err(perr(no, toks[0].0, "unexpected line after group body").into()),
            State::NeedBody => self.body(no, content, &toks),
            State::Perm => {
                if toks[0].1 != "gen" {
                    return Err(perr(no, toks[0].0, "expected \"gen CYCLES\"").into());
                }
                let offset = toks.get(1).map_or(content.len(), |t| t.0 - 1);
                let GroupSource::Permutations { degree, .. } = self.current().source else {
                    unreachable!("perm state implies a permutation source")
                };
                let perm = Permutation::parse(degree, &content[offset..])
                    .map_err(|e| perr(no, offset + e.column, e.message))?;
                if let GroupSource::Permutations { generators, .. } = &mut self.current().source {
                    generators.push(perm);
                }
                Ok(())
            }
            State::Cayley { remaining } => {
                let GroupSource::CayleyLiteral { order, .. } = self.current().source else {
                    unreachable!("cayley state implies a cayley source")
                };
                if toks.len() != order {
                    return Err(perr(
                        no,
                        toks[0].0,
                        format!("expected {order} entries, found {}", toks.len()),
                    )
                    .into());
                }
                let row = toks
                    .iter()
                    .map(|&(col, t)| {
                        t.parse::<usize>()
                            .map_err(|_| perr(no, col, format!("expected an index, found {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = self.current();
                spec.row_lines.push(no);
                if let GroupSource::CayleyLiteral { rows, .. } = &mut spec.source {
                    rows.push(row);
                }
                self.state = State::Cayley {
                    remaining: remaining - 1,
                };
                Ok(())
            }
        }
    }

    fn body(
        &mut self,
        no: usize,
        content: &str,
        toks: &[(usize, &str)],
    ) -> Result<(), CorpusError> {
        match toks[0].1 {
            "make" => {
                let Some(&(col, _)) = toks.get(1) else {
                    return Err(perr(no, toks[0].0, "expected an expression").into());
                };
                let text = content[col - 1..].trim_end();
                parse_expression(text).map_err(|e| match e {
                    ExprError::Parse { column, message } => perr(no, col - 1 + column, message),
                    other => perr(no, col, other.to_string()),
                })?;
                self.current().source = GroupSource::Expression(text.to_string());
                self.state = State::Done;
            }
            "perm" => {
                if toks.len() != 3 || toks[1].1 != "degree" {
                    return Err(perr(no, toks[0].0, "expected \"perm degree D\"").into());
                }
                let degree = parse_count(no, toks[2], "degree")?;
                self.current().source = GroupSource::Permutations {
                    degree,
                    generators: Vec::new(),
                };
                self.state = State::Perm;
            }
            "cayley" => {
                if toks.len() != 3 || toks[1].1 != "order" {
                    return Err(perr(no, toks[0].0, "expected \"cayley order N\"").into());
                }
                let order = parse_count(no, toks[2], "order")?;
                self.current().source = GroupSource::CayleyLiteral {
                    order,
                    rows: Vec::new(),
                };
                self.state = State::Cayley { remaining: order };
            }
            other => {
                return Err(perr(
                    no,
                    toks[0].0,
                    format!("expected perm, make or cayley, found {other:?}"),
                )
                .into())
            }
        }
        Ok(())
    }
}

pub fn parse_manifest(text: &str) -> Result<CorpusManifest, CorpusError> {
    let mut parser = Parser {
        manifest: CorpusManifest::default(),
        state: State::Idle,
        seen: HashMap::new(),
    };
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        last = i + 1;
        parser.line(i + 1, raw)?;
    }
    parser.close(last + 1)?;
    Ok(parser.manifest)
}

/// Parses every spec in a group file; no group is constructed.
pub fn parse_group_file(text: &str) -> Result<Vec<GroupSpec>, CorpusError> {
    Ok(parse_manifest(text)?.specs)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.name)?;
        match &self.source {
            GroupSource::Expression(text) => writeln!(f, "make {text}"),
            GroupSource::Permutations { degree, generators } => {
                writeln!(f, "perm degree {degree}")?;
                for g in generators {
                    writeln!(f, "gen {g}")?;
                }
                Ok(())
            }
            GroupSource::CayleyLiteral { order, rows } => {
                writeln!(f, "cayley order {order}")?;
                for row in rows {
                    let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                    writeln!(f, "{}", cells.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

pub fn render_manifest(manifest: &CorpusManifest) -> String {
    let mut out = String::new();
    for c in &manifest.comments {
        let _ = writeln!(out, "#{c}");
    }
    for (i, spec) in manifest.specs.iter().enumerate() {
        if i > 0 || !manifest.comments.is_empty() {
            out.push('\n');
        }
        let _ = write!(out, "{spec}");
    }
    out
}
