//! Line-oriented helpers shared by the plain-text file formats.

use crate::error::{Error, Result};

/// Non-blank lines of `input`, each paired with its 1-based line number.
pub(crate) fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_int<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{token}`")))
}

pub(crate) fn parse_ints<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<Vec<T>> {
    text.split_whitespace().map(|tok| parse_int(line, tok, what)).collect()
}

/// Splits `keyword <index>: rest` into the index and `rest`.
pub(crate) fn split_indexed<'a>(line: usize, text: &'a str, keyword: &str) -> Result<(usize, &'a str)> {
    let rest = text
        .strip_prefix(keyword)
        .ok_or_else(|| Error::parse(line, format!("expected `{keyword} <i>: ...`")))?;
    let (idx, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(line, format!("missing `:` after `{keyword}` index")))?;
    let idx = parse_int(line, idx.trim(), "an index")?;
    Ok((idx, body.trim()))
}

pub(crate) fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&item.to_string());
    }
    out
}
