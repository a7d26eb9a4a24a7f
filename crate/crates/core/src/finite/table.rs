//! Plain-text tables.
//!
//! ```text
//! # comments run to the end of the line
//! size 3
//! oplus
//! 0 1 2
//! 1 2 2
//! 2 2 2
//! neg 2 1 0
//! zero 0
//! one 2
//! ```
//!
//! Elements are the indices `0..size`; the `neg` values may also continue
//! on the following lines.

use super::{FiniteMv, MvTable};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Table(format!("line {line}: {msg}"))
}

struct Cursor<'a> {
    tokens: std::vec::IntoIter<(usize, &'a str)>,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Option<&'a str> {
        let (l, t) = self.tokens.next()?;
        self.line = l;
        Some(t)
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == k => Ok(()),
            Some(t) => Err(err(self.line, format!("expected `{k}`, found `{t}`"))),
            None => Err(err(self.line, format!("expected `{k}`, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.next() {
            Some(t) => t.parse().map_err(|_| err(self.line, format!("expected an index, found `{t}`"))),
            None => Err(err(self.line, "unexpected end of input")),
        }
    }
}

pub fn parse_table(text: &str) -> Result<MvTable> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        tokens.extend(line.split_whitespace().map(|t| (n + 1, t)));
    }
    let mut c = Cursor { tokens: tokens.into_iter(), line: 1 };
    c.keyword("size")?;
    let m = c.number()?;
    if m == 0 || m > super::MAX_ELEMENTS {
        return Err(err(c.line, format!("size must be in 1..={}", super::MAX_ELEMENTS)));
    }
    c.keyword("oplus")?;
    let mut oplus = vec![vec![0; m]; m];
    for row in oplus.iter_mut() {
        for v in row.iter_mut() {
            *v = c.number()?;
        }
    }
    c.keyword("neg")?;
    let neg = (0..m).map(|_| c.number()).collect::<Result<Vec<_>>>()?;
    c.keyword("zero")?;
    let zero = c.number()?;
    c.keyword("one")?;
    let one = c.number()?;
    if let Some(t) = c.next() {
        return Err(err(c.line, format!("trailing `{t}`")));
    }
    Ok(MvTable { labels: (0..m).map(|i| i.to_string()).collect(), oplus, neg, zero, one })
}

pub fn print_table(t: &MvTable) -> String {
    let mut s = format!("size {}\noplus\n", t.size());
    for row in &t.oplus {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    let neg: Vec<String> = t.neg.iter().map(|v| v.to_string()).collect();
    s.push_str(&format!("neg {}\nzero {}\none {}\n", neg.join(" "), t.zero, t.one));
    s
}

/// Parses and validates.
pub fn load_table(text: &str) -> Result<FiniteMv> {
    FiniteMv::new(parse_table(text)?)
}
