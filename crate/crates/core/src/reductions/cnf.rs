use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{join, parse_int};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Literal { var, negated }
    }

    pub fn pos(var: usize) -> Self {
        Literal::new(var, false)
    }

    pub fn neg(var: usize) -> Self {
        Literal::new(var, true)
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var) != self.negated
    }

    /// DIMACS integer: `var` or `-var`.
    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }
}

pub type Clause = [Literal; 3];

/// A 3-CNF formula: every clause has exactly three literals, which may
/// repeat variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    m: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(m: usize, clauses: Vec<Clause>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::invalid("a formula needs at least one clause"));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var == 0 || l.var > m) {
                return Err(Error::invalid(format!(
                    "clause {} uses variable {}, outside 1..={m}",
                    i + 1,
                    l.var
                )));
            }
        }
        Ok(CnfFormula { m, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// 1-based index of the first clause `a` falsifies.
    pub fn first_violated(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(a)))
            .map(|i| i + 1)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.m && self.first_violated(a).is_none()
    }

    /// First satisfying assignment in binary counting order (variable 1 is
    /// the least significant bit), by trying all `2^m`.
    pub fn brute_force_solve(&self) -> Option<Assignment> {
        assert!(self.m < 32, "exhaustive assignment search is limited to 31 variables");
        (0u64..1 << self.m)
            .map(|bits| Assignment::new((0..self.m).map(|v| bits >> v & 1 == 1).collect()))
            .find(|a| self.is_satisfied_by(a))
    }
}

/// Truth values of variables `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for Assignment {
    /// `1` / `0` per variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(self.0.iter().map(|&b| u8::from(b))))
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| match tok {
                "1" | "T" | "true" => Ok(true),
                "0" | "F" | "false" => Ok(false),
                _ => Err(Error::parse(1, format!("expected 1/0 truth value, found `{tok}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.m, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} 0", join(c.iter().map(|l| l.to_dimacs())))?;
        }
        Ok(())
    }
}

impl FromStr for CnfFormula {
    type Err = Error;

    /// DIMACS CNF. Comment lines (`c ...`) are skipped, a `%` line ends the
    /// input, and clauses may span lines.
    fn from_str(s: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        let mut clause_start = 0;
        let mut last_line = 0;
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('c') {
                continue;
            }
            if text.starts_with('%') {
                break;
            }
            last_line = line;
            if text.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(line, "duplicate `p cnf` header"));
                }
                match text.split_whitespace().collect::<Vec<_>>()[..] {
                    ["p", "cnf", m, d] => {
                        header = Some((
                            line,
                            parse_int(line, m, "a variable count")?,
                            parse_int(line, d, "a clause count")?,
                        ))
                    }
                    _ => return Err(Error::parse(line, "expected header `p cnf <vars> <clauses>`")),
                }
                continue;
            }
            let Some((_, m, _)) = header else {
                return Err(Error::parse(line, "clause before the `p cnf` header"));
            };
            for tok in text.split_whitespace() {
                let lit: i64 = parse_int(line, tok, "a literal")?;
                if lit == 0 {
                    if current.len() != 3 {
                        return Err(Error::parse(
                            clause_start.max(1),
                            format!(
                                "clause {} has {} literals; exactly 3 are required",
                                clauses.len() + 1,
                                current.len()
                            ),
                        ));
                    }
                    clauses.push([current[0], current[1], current[2]]);
                    current.clear();
                    continue;
                }
                if current.is_empty() {
                    clause_start = line;
                }
                let var = lit.unsigned_abs() as usize;
                if var > m {
                    return Err(Error::parse(
                        line,
                        format!("literal {lit} uses a variable outside 1..={m}"),
                    ));
                }
                current.push(Literal::new(var, lit < 0));
            }
        }
        let Some((hline, m, d)) = header else {
            return Err(Error::parse(1, "missing `p cnf <vars> <clauses>` header"));
        };
        if !current.is_empty() {
            return Err(Error::parse(last_line, "last clause is not terminated by 0"));
        }
        if clauses.len() != d {
            return Err(Error::parse(
                hline,
                format!("header declares {d} clauses but {} follow", clauses.len()),
            ));
        }
        CnfFormula::new(m, clauses).map_err(|e| Error::parse(hline, e.to_string()))
    }
}
