//! Where each gadget of the 3-SAT → LCP construction lives, plus the
//! sidecar text format used by witness tooling:
//!
//! ```text
//! layout <n> <p> <m> <d>
//! literal <i> <j> <±var> <rank> <first position> <first f value> <first t value>
//! clause <i> <position>
//! compare <i> <j> <i'> <j'> <position 1> <position 2>
//! dummy <position> <value>
//! balance <position>
//! ```
//!
//! Clause and slot indices are 1-based. A literal's memory cell occupies
//! `p + 1` consecutive positions starting at its first position; its
//! f-values and t-values are the consecutive runs starting at the given
//! values.

use std::fmt;
use std::str::FromStr;

use super::cnf::{CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::text::{content_lines, parse_int};

/// Memory cell of one literal occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralCell {
    /// 0-based clause and slot.
    pub clause: usize,
    pub slot: usize,
    pub literal: Literal,
    /// 1-based rank among the occurrences of the same variable.
    pub rank: usize,
    pub first_position: usize,
    pub first_f: u32,
    pub first_t: u32,
}

impl LiteralCell {
    /// Position of copy `x` (copy 0 feeds the clause gadget).
    pub fn position(&self, x: usize) -> usize {
        self.first_position + x
    }

    pub fn f(&self, x: usize) -> u32 {
        self.first_f + x as u32
    }

    pub fn t(&self, x: usize) -> u32 {
        self.first_t + x as u32
    }
}

/// Equality gadget between two occurrences of one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    /// Indices into [`ReductionLayout::cells`], `first < second`.
    pub first: usize,
    pub second: usize,
    pub positions: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    /// Number of positions (and values) of the instance this layout describes.
    pub n: usize,
    /// Largest number of occurrences of one variable; each cell has `p + 1` copies.
    pub p: usize,
    pub formula: CnfFormula,
    /// Clause-major, slot-minor.
    pub cells: Vec<LiteralCell>,
    pub clause_positions: Vec<usize>,
    pub comparisons: Vec<Comparison>,
    /// `(position, value)` of each dummy closing a free gap.
    pub dummies: Vec<(usize, u32)>,
    pub balancing: Vec<usize>,
}

impl ReductionLayout {
    pub fn cell(&self, clause: usize, slot: usize) -> &LiteralCell {
        &self.cells[clause * 3 + slot]
    }

    /// Number of positions belonging to memory cells.
    pub fn memory_positions(&self) -> usize {
        self.cells.len() * (self.p + 1)
    }

    pub(crate) fn remap_positions(&mut self, map: impl Fn(usize) -> usize) {
        for c in &mut self.cells {
            c.first_position = map(c.first_position);
        }
        for p in &mut self.clause_positions {
            *p = map(*p);
        }
        for c in &mut self.comparisons {
            c.positions = c.positions.map(&map);
        }
        for p in &mut self.balancing {
            *p = map(*p);
        }
    }
}

impl fmt::Display for ReductionLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "layout {} {} {} {}",
            self.n,
            self.p,
            self.formula.num_vars(),
            self.formula.clauses().len()
        )?;
        for c in &self.cells {
            writeln!(
                f,
                "literal {} {} {} {} {} {} {}",
                c.clause + 1,
                c.slot + 1,
                c.literal.to_dimacs(),
                c.rank,
                c.first_position,
                c.first_f,
                c.first_t
            )?;
        }
        for (i, p) in self.clause_positions.iter().enumerate() {
            writeln!(f, "clause {} {p}", i + 1)?;
        }
        for c in &self.comparisons {
            let (a, b) = (&self.cells[c.first], &self.cells[c.second]);
            writeln!(
                f,
                "compare {} {} {} {} {} {}",
                a.clause + 1,
                a.slot + 1,
                b.clause + 1,
                b.slot + 1,
                c.positions[0],
                c.positions[1]
            )?;
        }
        for (p, v) in &self.dummies {
            writeln!(f, "dummy {p} {v}")?;
        }
        for p in &self.balancing {
            writeln!(f, "balance {p}")?;
        }
        Ok(())
    }
}

impl FromStr for ReductionLayout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected `layout <n> <p> <m> <d>`"))?;
        let nums = |line: usize, fields: &[&str]| -> Result<Vec<i64>> {
            fields.iter().map(|t| parse_int(line, t, "an integer")).collect()
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "layout" {
            return Err(Error::parse(hline, "expected header `layout <n> <p> <m> <d>`"));
        }
        let h = nums(hline, &fields[1..])?;
        let (n, p, m, d) = (h[0] as usize, h[1] as usize, h[2] as usize, h[3] as usize);

        let mut cells = Vec::new();
        let mut clause_positions = Vec::new();
        let mut comparisons = Vec::new();
        let mut dummies = Vec::new();
        let mut balancing = Vec::new();
        for (line, text) in lines {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let (kind, rest) = fields.split_first().expect("content line is nonempty");
            let v = nums(line, rest)?;
            let arity = |want: usize| -> Result<()> {
                if v.len() == want {
                    Ok(())
                } else {
                    Err(Error::parse(
                        line,
                        format!("`{kind}` takes {want} fields, found {}", v.len()),
                    ))
                }
            };
            match *kind {
                "literal" => {
                    arity(7)?;
                    let (clause, slot) = ((v[0] - 1) as usize, (v[1] - 1) as usize);
                    if clause * 3 + slot != cells.len() || slot > 2 {
                        return Err(Error::parse(
                            line,
                            "literal lines must list slots in clause-major order",
                        ));
                    }
                    if v[2] == 0 {
                        return Err(Error::parse(line, "literal 0 is not a variable"));
                    }
                    cells.push(LiteralCell {
                        clause,
                        slot,
                        literal: Literal::new(v[2].unsigned_abs() as usize, v[2] < 0),
                        rank: v[3] as usize,
                        first_position: v[4] as usize,
                        first_f: v[5] as u32,
                        first_t: v[6] as u32,
                    });
                }
                "clause" => {
                    arity(2)?;
                    clause_positions.push(v[1] as usize);
                }
                "compare" => {
                    arity(6)?;
                    let index = |c: i64, s: i64| ((c - 1) * 3 + (s - 1)) as usize;
                    comparisons.push(Comparison {
                        first: index(v[0], v[1]),
                        second: index(v[2], v[3]),
                        positions: [v[4] as usize, v[5] as usize],
                    });
                }
                "dummy" => {
                    arity(2)?;
                    dummies.push((v[0] as usize, v[1] as u32));
                }
                "balance" => {
                    arity(1)?;
                    balancing.push(v[0] as usize);
                }
                other => return Err(Error::parse(line, format!("unknown layout entry `{other}`"))),
            }
        }
        if cells.len() != 3 * d || clause_positions.len() != d {
            return Err(Error::parse(
                hline,
                format!("expected {} literal and {d} clause lines", 3 * d),
            ));
        }
        if comparisons
            .iter()
            .any(|c| c.first >= cells.len() || c.second >= cells.len())
        {
            return Err(Error::parse(
                hline,
                "a compare line names a literal that does not exist",
            ));
        }
        let clauses = cells
            .chunks(3)
            .map(|c| [c[0].literal, c[1].literal, c[2].literal])
            .collect();
        let formula = CnfFormula::new(m, clauses).map_err(|e| Error::parse(hline, e.to_string()))?;
        Ok(ReductionLayout {
            n,
            p,
            formula,
            cells,
            clause_positions,
            comparisons,
            dummies,
            balancing,
        })
    }
}
