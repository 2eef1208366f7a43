//! Text format:
//!
//! ```text
//! lcp <n>
//! allowed 1: v v ...
//! ...
//! allowed n: v v ...
//! order 1: p1 p2 ... pn      (smallest first) or `order 1: free`
//! ...
//! order n-1: ...
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Gap, LcpInstance, LinearOrder};
use crate::error::{Error, Result};
use crate::text::{content_lines, join, parse_int, parse_ints, split_indexed};

impl fmt::Display for LcpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lcp {}", self.n)?;
        for (i, h) in self.allowed.iter().enumerate() {
            if h.is_empty() {
                writeln!(f, "allowed {}:", i + 1)?;
            } else {
                writeln!(f, "allowed {}: {}", i + 1, join(h))?;
            }
        }
        for (i, g) in self.gaps.iter().enumerate() {
            match g {
                Gap::Free => writeln!(f, "order {}: free", i + 1)?,
                Gap::Ordered(o) => writeln!(f, "order {}: {}", i + 1, join(o.order_word()))?,
            }
        }
        Ok(())
    }
}

impl FromStr for LcpInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected `lcp <n>`"))?;
        let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["lcp", n] => parse_int(hline, n, "an instance size")?,
            _ => return Err(Error::parse(hline, "expected header `lcp <n>`")),
        };
        if n == 0 {
            return Err(Error::parse(hline, "instance size must be positive"));
        }
        let mut last_line = hline;
        let mut allowed = Vec::with_capacity(n);
        for expected in 1..=n {
            let (line, text) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line + 1, format!("missing `allowed {expected}:` line")))?;
            last_line = line;
            let (idx, body) = split_indexed(line, text, "allowed")?;
            if idx != expected {
                return Err(Error::parse(
                    line,
                    format!("expected `allowed {expected}:`, found index {idx}"),
                ));
            }
            let values: Vec<u32> = parse_ints(line, body, "a value")?;
            if let Some(&v) = values.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(Error::parse(line, format!("value {v} is outside 1..={n}")));
            }
            allowed.push(values.into_iter().collect::<BTreeSet<u32>>());
        }
        let mut gaps = Vec::with_capacity(n - 1);
        for expected in 1..n {
            let (line, text) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line + 1, format!("missing `order {expected}:` line")))?;
            last_line = line;
            let (idx, body) = split_indexed(line, text, "order")?;
            if idx != expected {
                return Err(Error::parse(
                    line,
                    format!("expected `order {expected}:`, found index {idx}"),
                ));
            }
            if body == "free" {
                gaps.push(Gap::Free);
                continue;
            }
            let order: Vec<u32> = parse_ints(line, body, "a value")?;
            if order.len() != n {
                return Err(Error::parse(
                    line,
                    format!("order lists {} values, expected a permutation of 1..={n}", order.len()),
                ));
            }
            let order =
                LinearOrder::new(order).map_err(|e| Error::parse(line, format!("order is not a bijection: {e}")))?;
            gaps.push(Gap::Ordered(order));
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, "unexpected content after the last order line"));
        }
        LcpInstance::new(allowed, gaps).map_err(|e| Error::parse(hline, e.to_string()))
    }
}
