//! 3-SAT → Locally Constrained Permutation.
//!
//! Gadgets, in position order:
//! 1. a memory cell per literal occurrence: `p + 1` positions, copy `x`
//!    allowing `{f+x, t+x}`, chained by orders `f+x ≺ f+x+1 ≺ t+x ≺ t+x+1`.
//!    The chain forbids a t-copy followed by an f-copy, so a cell reads
//!    f…f t…t. Holding the t-values leaves the f-values free, which is what
//!    "the literal is true" means to the other gadgets;
//! 2. a clause position allowing the copy-0 f-values of its three literals;
//! 3. two comparison positions per pair of occurrences of one variable
//!    (the `k`-th and `k'`-th), reading copy `k'` of the first cell and copy
//!    `k` of the second, with allowed sets chosen by polarity so that the
//!    two occurrences cannot disagree;
//! 4. balancing positions allowing every value, until positions and values
//!    are equally many.
//!
//! Values are numbered literal by literal, f-run then t-run, so every chain
//! order agrees with the integer order and the memory cells form an
//! increasing prefix. Every gap outside a chain is free; [`sat_to_lcp`]
//! closes them with dummies, [`prefix_increasing_normal_form`] keeps the
//! prefix-increasing shape instead.

use std::collections::BTreeSet;

use super::cnf::{Assignment, CnfFormula};
use super::layout::{Comparison, LiteralCell, ReductionLayout};
use crate::error::{Error, Result};
use crate::lcp::{Gap, LcpInstance, LinearOrder, PipInstance};
use crate::words::Permutation;

/// Truth reading of one memory cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellState {
    True,
    False,
    /// f-values then t-values. Only weakens the literal toward false.
    Mixed,
}

/// The prefix-increasing form of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipNormalForm {
    pub instance: PipInstance,
    pub layout: ReductionLayout,
}

/// Builds the raw construction: free gaps left open, no dummies.
fn build(formula: &CnfFormula) -> (Vec<BTreeSet<u32>>, Vec<Gap>, ReductionLayout) {
    let literals: Vec<_> = formula.clauses().iter().flatten().copied().collect();
    let mut occurrences = vec![0usize; formula.num_vars() + 1];
    let ranks: Vec<usize> = literals
        .iter()
        .map(|l| {
            occurrences[l.var] += 1;
            occurrences[l.var]
        })
        .collect();
    let p = occurrences.iter().copied().max().unwrap_or(0);
    let copies = p + 1;

    let cells: Vec<LiteralCell> = literals
        .iter()
        .zip(&ranks)
        .enumerate()
        .map(|(idx, (&literal, &rank))| {
            let base = (idx * 2 * copies) as u32 + 1;
            LiteralCell {
                clause: idx / 3,
                slot: idx % 3,
                literal,
                rank,
                first_position: idx * copies + 1,
                first_f: base,
                first_t: base + copies as u32,
            }
        })
        .collect();
    let n = cells.len() * 2 * copies;

    let mut allowed: Vec<BTreeSet<u32>> = Vec::with_capacity(n);
    for c in &cells {
        allowed.extend((0..copies).map(|x| BTreeSet::from([c.f(x), c.t(x)])));
    }

    let clause_positions: Vec<usize> = formula
        .clauses()
        .iter()
        .enumerate()
        .map(|(i, _)| {
            allowed.push((0..3).map(|s| cells[3 * i + s].f(0)).collect());
            allowed.len()
        })
        .collect();

    let mut comparisons = Vec::new();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            let (first, second) = (&cells[a], &cells[b]);
            if first.literal.var != second.literal.var {
                continue;
            }
            // Copy `rank(second)` of the first cell, copy `rank(first)` of the second.
            let (x, y) = (second.rank, first.rank);
            let (one, two) = if first.literal.negated == second.literal.negated {
                ([first.t(x), second.f(y)], [first.f(x), second.t(y)])
            } else {
                ([first.t(x), second.t(y)], [first.f(x), second.f(y)])
            };
            allowed.push(one.into_iter().collect());
            allowed.push(two.into_iter().collect());
            let positions = [allowed.len() - 1, allowed.len()];
            comparisons.push(Comparison {
                first: a,
                second: b,
                positions,
            });
        }
    }

    assert!(allowed.len() <= n, "construction has more positions than values");
    let balancing: Vec<usize> = (allowed.len() + 1..=n).collect();
    let everything: BTreeSet<u32> = (1..=n as u32).collect();
    allowed.resize(n, everything);

    let mut gaps = vec![Gap::Free; n - 1];
    for c in &cells {
        for x in 0..p {
            let chain = [c.f(x), c.f(x + 1), c.t(x), c.t(x + 1)];
            gaps[c.position(x) - 1] = Gap::Ordered(LinearOrder::from_chain(n, &chain).expect("distinct chain values"));
        }
    }

    let layout = ReductionLayout {
        n,
        p,
        formula: formula.clone(),
        cells,
        clause_positions,
        comparisons,
        dummies: Vec::new(),
        balancing,
    };
    (allowed, gaps, layout)
}

/// The LCP instance of `formula`, with every free gap closed by a dummy.
/// Satisfiable iff `formula` is.
pub fn sat_to_lcp(formula: &CnfFormula) -> (LcpInstance, ReductionLayout) {
    let (allowed, gaps, mut layout) = build(formula);
    let raw = LcpInstance::new(allowed, gaps).expect("construction is well formed");
    let completion = raw.complete_free_orders_mapped();
    layout.remap_positions(|p| completion.positions[p - 1]);
    layout.dummies = completion.dummies;
    layout.n = completion.instance.n();
    (completion.instance, layout)
}

/// The same construction as a Prefix Increasing Permutation instance: the
/// only order used is `<`, on the memory-cell prefix of positions.
pub fn prefix_increasing_normal_form(formula: &CnfFormula) -> PipNormalForm {
    let (allowed, _, layout) = build(formula);
    let k = layout.memory_positions() - 1;
    PipNormalForm {
        instance: PipInstance::new(allowed, k).expect("prefix fits"),
        layout,
    }
}

/// Builds the solution corresponding to a satisfying assignment.
///
/// Cells of true literals take their t-values, others their f-values; a
/// clause takes the copy-0 f-value of its first true literal; comparison
/// positions take whichever of their two values is still free; dummies
/// take their own value and balancing positions the leftovers, ascending.
pub fn embed_assignment(layout: &ReductionLayout, a: &Assignment) -> Result<Permutation> {
    let formula = &layout.formula;
    if a.len() != formula.num_vars() {
        return Err(Error::invalid(format!(
            "assignment has {} values for {} variables",
            a.len(),
            formula.num_vars()
        )));
    }
    if let Some(clause) = formula.first_violated(a) {
        return Err(Error::UnsatisfiedClause { clause });
    }
    let n = layout.n;
    let mut values = vec![0u32; n];
    let mut used = vec![false; n + 1];
    let put = |values: &mut Vec<u32>, used: &mut Vec<bool>, pos: usize, v: u32| {
        debug_assert!(!used[v as usize], "value {v} used twice");
        used[v as usize] = true;
        values[pos - 1] = v;
    };
    for c in &layout.cells {
        let truth = c.literal.eval(a);
        for x in 0..=layout.p {
            put(
                &mut values,
                &mut used,
                c.position(x),
                if truth { c.t(x) } else { c.f(x) },
            );
        }
    }
    for (i, &pos) in layout.clause_positions.iter().enumerate() {
        let c = (0..3)
            .map(|s| layout.cell(i, s))
            .find(|c| c.literal.eval(a))
            .expect("clause is satisfied");
        put(&mut values, &mut used, pos, c.f(0));
    }
    for cmp in &layout.comparisons {
        let (first, second) = (&layout.cells[cmp.first], &layout.cells[cmp.second]);
        let (x, y) = (second.rank, first.rank);
        let same = first.literal.negated == second.literal.negated;
        let options = if same {
            [[first.t(x), second.f(y)], [first.f(x), second.t(y)]]
        } else {
            [[first.t(x), second.t(y)], [first.f(x), second.f(y)]]
        };
        for (pos, choice) in cmp.positions.into_iter().zip(options) {
            let v = choice
                .into_iter()
                .find(|&v| !used[v as usize])
                .ok_or_else(|| Error::invalid(format!("comparison at position {pos} has no free value")))?;
            put(&mut values, &mut used, pos, v);
        }
    }
    for &(pos, v) in &layout.dummies {
        put(&mut values, &mut used, pos, v);
    }
    let mut spare = (1..=n as u32)
        .filter(|&v| !used[v as usize])
        .collect::<Vec<_>>()
        .into_iter();
    for &pos in &layout.balancing {
        let v = spare
            .next()
            .ok_or_else(|| Error::invalid("ran out of values for balancing"))?;
        put(&mut values, &mut used, pos, v);
    }
    Permutation::new(values)
}

/// Reads the memory cell of `cell` off a solution.
pub fn cell_state(layout: &ReductionLayout, cell: usize, pi: &Permutation) -> CellState {
    let c = &layout.cells[cell];
    let held: Vec<bool> = (0..=layout.p).map(|x| pi.at(c.position(x)) == c.t(x)).collect();
    if held.iter().all(|&t| t) {
        CellState::True
    } else if held.iter().all(|&t| !t) {
        CellState::False
    } else {
        CellState::Mixed
    }
}

/// Assignment read off a solution without validating it: each variable
/// takes the value implied by its first decided occurrence, or false if
/// every occurrence is mixed.
pub fn read_assignment(layout: &ReductionLayout, pi: &Permutation) -> Assignment {
    let mut values: Vec<Option<bool>> = vec![None; layout.formula.num_vars()];
    for (i, c) in layout.cells.iter().enumerate() {
        let truth = match cell_state(layout, i, pi) {
            CellState::True => true,
            CellState::False => false,
            CellState::Mixed => continue,
        };
        values[c.literal.var - 1].get_or_insert(truth != c.literal.negated);
    }
    Assignment::new(values.into_iter().map(|v| v.unwrap_or(false)).collect())
}

/// Recovers a satisfying assignment from a solution of `inst`.
pub fn extract_assignment(inst: &LcpInstance, layout: &ReductionLayout, pi: &Permutation) -> Result<Assignment> {
    if !inst.check_solution(pi) {
        return Err(Error::invalid("permutation is not a solution of the instance"));
    }
    let a = read_assignment(layout, pi);
    if let Some(clause) = layout.formula.first_violated(&a) {
        return Err(Error::invalid(format!(
            "recovered assignment violates clause {clause}; the layout does not match the instance"
        )));
    }
    Ok(a)
}
