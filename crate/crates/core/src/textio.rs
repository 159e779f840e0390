//! Line-oriented parsing shared by the matrix, triangulation, chain-complex
//! and link file formats.

use thiserror::Error;

/// A parse failure with the 1-based line number it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Iterates content lines of a text document, skipping blanks and
/// `#` comments, and tracking line numbers for diagnostics.
pub struct LineReader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> LineReader<'a> {
    pub fn new(text: &'a str) -> Self {
        LineReader {
            lines: text.lines().enumerate(),
        }
    }

    fn advance(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.lines.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((idx + 1, line));
        }
        None
    }

    /// Next content line, or an error naming what was expected.
    pub fn next_content_line(&mut self, expected: &str) -> Result<(usize, &'a str), ParseError> {
        self.advance().ok_or_else(|| {
            ParseError::new(0, format!("unexpected end of input, expected {expected}"))
        })
    }

    /// Fails if any content remains.
    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.advance() {
            None => Ok(()),
            Some((line, text)) => Err(ParseError::new(
                line,
                format!("unexpected trailing content `{text}`"),
            )),
        }
    }
}
