//! Signature files.
//!
//! ```text
//! # comment
//! tnorm min
//! sim a/0 b/0 : 0.7
//! sim l/2 h/3 : 0.8 [1->2, 2->3]
//! ```
//!
//! One entry per line. The mapping may be omitted only for equal arities,
//! where it defaults to the identity. The `tnorm` header is optional and
//! defaults to `min`.

use std::fs;
use std::path::Path;

use termlat_core::{SignatureError, SimilaritySignature, Symbol, TNorm};
use thiserror::Error;

/// What went wrong on a line.
#[derive(Debug, Error, PartialEq)]
pub enum SigErrorKind {
    /// Malformed line.
    #[error("{0}")]
    Syntax(String),
    /// Well-formed entry rejected by validation.
    #[error("{0}")]
    Invalid(SignatureError),
    /// Second `tnorm` header, or one after the first entry.
    #[error("tnorm header must appear once, before any entry")]
    MisplacedHeader,
}

/// Error with its location (1-based line and column).
#[derive(Debug, Error, PartialEq)]
#[error("line {line}, column {column}: {kind}")]
pub struct SigFileError {
    /// Line number.
    pub line: usize,
    /// Column of the offending token.
    pub column: usize,
    /// Cause.
    pub kind: SigErrorKind,
}

/// Loading from disk can also fail on IO.
#[derive(Debug, Error)]
pub enum LoadError {
    /// File could not be read.
    #[error("cannot read {path}: {source}")]
    Io {
        /// Path as given.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
    /// File content rejected.
    #[error("{path}: {source}")]
    Parse {
        /// Path as given.
        path: String,
        /// Underlying error.
        source: SigFileError,
    },
}

/// Parses and validates signature text.
pub fn load_signature(text: &str) -> Result<SimilaritySignature, SigFileError> {
    let mut sig = SimilaritySignature::new(TNorm::Min);
    let mut header_allowed = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut cursor = Cursor { line: i + 1, text: line, pos: 0 };
        let keyword = cursor.word()?;
        match keyword {
            "tnorm" => {
                if !header_allowed {
                    return Err(cursor.error_at(0, SigErrorKind::MisplacedHeader));
                }
                header_allowed = false;
                let at = cursor.skip_ws();
                let tnorm = match cursor.word()? {
                    "min" => TNorm::Min,
                    "product" => TNorm::Product,
                    other => {
                        return Err(cursor.syntax_at(at, format!("unknown t-norm `{other}`, expected min or product")))
                    }
                };
                cursor.end()?;
                sig = sig.with_tnorm(tnorm);
            }
            "sim" => {
                header_allowed = false;
                let start = cursor.skip_ws();
                let lo = cursor.symbol()?;
                let hi = cursor.symbol()?;
                cursor.expect(':')?;
                let degree = cursor.number()?;
                cursor.skip_ws();
                let mapping = if cursor.peek() == Some('[') { Some(cursor.mapping()?) } else { None };
                cursor.end()?;
                sig.add(lo, hi, degree, mapping.as_deref())
                    .map_err(|e| cursor.error_at(start, SigErrorKind::Invalid(e)))?;
            }
            other => {
                return Err(cursor.syntax_at(0, format!("unknown directive `{other}`, expected sim or tnorm")))
            }
        }
    }
    Ok(sig)
}

/// Reads and parses a signature file.
pub fn load_signature_file(path: &Path) -> Result<SimilaritySignature, LoadError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: shown.clone(), source })?;
    load_signature(&text).map_err(|source| LoadError::Parse { path: shown, source })
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error_at(&self, pos: usize, kind: SigErrorKind) -> SigFileError {
        let column = self.text[..pos.min(self.text.len())].chars().count() + 1;
        SigFileError { line: self.line, column, kind }
    }

    fn syntax_at(&self, pos: usize, msg: String) -> SigFileError {
        self.error_at(pos, SigErrorKind::Syntax(msg))
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) -> usize {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        self.pos
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&keep) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn word(&mut self) -> Result<&'a str, SigFileError> {
        self.skip_ws();
        let at = self.pos;
        let w = self.take_while(|c| c.is_alphanumeric() || c == '_');
        if w.is_empty() {
            return Err(self.syntax_at(at, "expected a word".into()));
        }
        Ok(w)
    }

    fn expect(&mut self, want: char) -> Result<(), SigFileError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            Ok(())
        } else {
            Err(self.syntax_at(self.pos, format!("expected `{want}`")))
        }
    }

    fn symbol(&mut self) -> Result<Symbol, SigFileError> {
        self.skip_ws();
        let at = self.pos;
        let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
        if !name.chars().next().is_some_and(|c| c.is_lowercase() || c.is_ascii_digit()) {
            return Err(self.syntax_at(at, "expected a symbol NAME/ARITY".into()));
        }
        if self.peek() != Some('/') {
            return Err(self.syntax_at(self.pos, "expected `/` and an arity".into()));
        }
        self.pos += 1;
        let arity = self.unsigned()?;
        Ok(Symbol::new(name, arity))
    }

    fn unsigned(&mut self) -> Result<usize, SigFileError> {
        self.skip_ws();
        let at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.syntax_at(at, "expected a non-negative integer".into()))
    }

    fn number(&mut self) -> Result<f64, SigFileError> {
        self.skip_ws();
        let at = self.pos;
        let text = self.take_while(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
        text.parse().map_err(|_| self.syntax_at(at, "expected a degree".into()))
    }

    fn mapping(&mut self) -> Result<Vec<(usize, usize)>, SigFileError> {
        self.expect('[')?;
        let mut pairs = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(pairs);
        }
        loop {
            let from = self.unsigned()?;
            self.expect('-')?;
            if self.peek() != Some('>') {
                return Err(self.syntax_at(self.pos, "expected `->`".into()));
            }
            self.pos += 1;
            let to = self.unsigned()?;
            pairs.push((from, to));
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(pairs);
                }
                _ => return Err(self.syntax_at(self.pos, "expected `,` or `]`".into())),
            }
        }
    }

    fn end(&mut self) -> Result<(), SigFileError> {
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.syntax_at(self.pos, "unexpected trailing input".into()));
        }
        Ok(())
    }
}
