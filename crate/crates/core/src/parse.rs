//! Concrete syntax for terms.
//!
//! ```text
//! TERM := VAR | NAME | NAME '(' TERM (',' TERM)* ')'
//! NAME := [a-z0-9][a-zA-Z0-9_]*
//! VAR  := [A-Z_][a-zA-Z0-9_]*
//! ```
//!
//! Whitespace is insignificant between tokens.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::term::{is_reserved_name, Symbol, Term, Var};

/// Parser knobs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject a name used at two different arities within one problem.
    pub strict_arity: bool,
    /// Accept `_G<k>` variable names, which are normally reserved for the
    /// fresh-variable supply. Needed to read back printed engine output.
    pub allow_reserved: bool,
}

/// What went wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Input ended while a term was still open.
    UnexpectedEnd,
    /// A character that cannot start or continue a term here.
    UnexpectedChar(char),
    /// Input continues after a complete term.
    TrailingInput,
    /// `_G<k>` written by the user.
    ReservedVariable(String),
    /// Same name at two arities under strict checking.
    ArityConflict {
        /// Offending name.
        name: String,
        /// Arity seen first.
        first: usize,
        /// Arity seen now.
        second: usize,
    },
}

/// Syntax error with its position. `offset` is a 0-based byte offset,
/// `line` and `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Error category.
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
    /// Line number.
    pub line: usize,
    /// Column number (in characters).
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::TrailingInput => f.write_str("unexpected input after term"),
            ParseErrorKind::ReservedVariable(v) => {
                write!(f, "variable name {v} is reserved for fresh variables")
            }
            ParseErrorKind::ArityConflict { name, first, second } => {
                write!(f, "{name} used with arity {first} and arity {second}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses one term with default options.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, ParseOptions::default())
}

/// Parses one term.
pub fn parse_term_with(text: &str, options: ParseOptions) -> Result<Term, ParseError> {
    let mut arities = BTreeMap::new();
    Parser::new(text, options, &mut arities).parse_all()
}

/// Parses several terms forming one problem; strict arity checking, when on,
/// spans all of them.
pub fn parse_terms(texts: &[&str], options: ParseOptions) -> Result<Vec<Term>, ParseError> {
    let mut arities = BTreeMap::new();
    texts
        .iter()
        .map(|text| Parser::new(text, options, &mut arities).parse_all())
        .collect()
}

struct Parser<'a, 'm> {
    src: &'a str,
    pos: usize,
    options: ParseOptions,
    arities: &'m mut BTreeMap<String, usize>,
}

impl<'a, 'm> Parser<'a, 'm> {
    fn new(src: &'a str, options: ParseOptions, arities: &'m mut BTreeMap<String, usize>) -> Self {
        Parser { src, pos: 0, options, arities }
    }

    fn error_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        ParseError { kind, offset, line, column }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.error_at(self.pos, ParseErrorKind::UnexpectedEnd),
            Some(c) => self.error_at(self.pos, ParseErrorKind::UnexpectedChar(c)),
        }
    }

    fn parse_all(mut self) -> Result<Term, ParseError> {
        let t = self.term()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error_at(self.pos, ParseErrorKind::TrailingInput));
        }
        Ok(t)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_uppercase() || c == '_' => {
                let name = self.ident();
                if !self.options.allow_reserved && is_reserved_name(name) {
                    return Err(self.error_at(start, ParseErrorKind::ReservedVariable(name.into())));
                }
                Ok(Term::Var(Var::new(name)))
            }
            Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() => {
                let name = self.ident();
                self.skip_ws();
                let mut args = Vec::new();
                if self.peek() == Some('(') {
                    self.pos += 1;
                    args.push(self.term()?);
                    loop {
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => {
                                self.pos += 1;
                                args.push(self.term()?);
                            }
                            Some(')') => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.unexpected()),
                        }
                    }
                }
                self.check_arity(start, name, args.len())?;
                Ok(Term::App(Symbol::new(name, args.len()), args))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn check_arity(&mut self, at: usize, name: &str, arity: usize) -> Result<(), ParseError> {
        if !self.options.strict_arity {
            return Ok(());
        }
        match self.arities.get(name) {
            Some(&first) if first != arity => Err(self.error_at(
                at,
                ParseErrorKind::ArityConflict { name: name.into(), first, second: arity },
            )),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.into(), arity);
                Ok(())
            }
        }
    }
}
