//! SAF v1, a line-oriented text format for automata.
//!
//! ```text
//! SAF 1
//! <n> <k>
//! <letter> t_0 t_1 ... t_{n-1}     (k lines, 0-based targets)
//! ```
//!
//! Blank lines and lines whose first non-blank character is `#` are ignored.

use crate::dfa::Dfa;
use crate::error::{Error, Result};

pub const HEADER: &str = "SAF 1";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_automaton(text: &str) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((no, l)) => return Err(parse_error(no, format!("bad header {l:?}, expected {HEADER:?}"))),
        None => return Err(parse_error(1, "missing header")),
    }

    let (size_line, sizes) = lines
        .next()
        .ok_or_else(|| parse_error(text.lines().count().max(1), "missing size line"))?;
    let sizes: Vec<usize> = sizes
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(size_line, format!("bad number {t:?}"))))
        .collect::<Result<_>>()?;
    let [n, k] = sizes[..] else {
        return Err(parse_error(size_line, "size line must be \"<n> <k>\""));
    };
    if n == 0 || k == 0 {
        return Err(parse_error(size_line, "need at least one state and one letter"));
    }

    let mut names = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    for j in 0..k {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_error(text.lines().count(), format!("missing row for letter {}", j + 1)))?;
        let mut tokens = line.split_whitespace();
        let name = tokens.next().expect("line is nonempty");
        if names.contains(&name) {
            return Err(parse_error(no, format!("duplicate letter name {name:?}")));
        }
        let row: Vec<usize> = tokens
            .map(|t| {
                let target: usize = t
                    .parse()
                    .map_err(|_| parse_error(no, format!("bad state {t:?}")))?;
                if target >= n {
                    return Err(parse_error(no, format!("state {target} out of range 0..{n}")));
                }
                Ok(target)
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_error(no, format!("row has {} entries, expected {n}", row.len())));
        }
        names.push(name);
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_error(no, "unexpected content after the last row"));
    }
    Dfa::new(names, rows).map_err(|e| parse_error(size_line, e.to_string()))
}

/// Canonical SAF text, newline-terminated.
pub fn render_automaton(dfa: &Dfa) -> String {
    let mut out = format!("{HEADER}\n{} {}\n", dfa.n(), dfa.k());
    for (name, row) in dfa.letters().iter().zip(dfa.rows()) {
        out.push_str(name);
        for t in row {
            out.push(' ');
            out.push_str(&t.to_string());
        }
        out.push('\n');
    }
    out
}
