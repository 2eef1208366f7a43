//! Locally Constrained Permutation: find `π ∈ S_n` with `π_i ∈ H_i` for every
//! position and `π_i ≺_i π_{i+1}` for every constrained gap.
//!
//! A gap may be [`Gap::Free`]; [`LcpInstance::complete_free_orders`] removes
//! free gaps by inserting a dummy position with a fresh value that is the
//! maximum of the order on its left and the minimum of the order on its right.

mod format;
mod solver;

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::Permutation;

pub use solver::SolveOptions;

/// A total order on `{1..n}`, stored as its smallest-first listing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    order: Vec<u32>,
    /// `rank[v]` for `v` in `1..=n`; index 0 unused.
    rank: Vec<u32>,
}

impl LinearOrder {
    /// `order` must list every element of `{1..n}` exactly once.
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![u32::MAX; n + 1];
        for (r, &v) in order.iter().enumerate() {
            let slot = rank
                .get_mut(v as usize)
                .filter(|_| v != 0)
                .ok_or_else(|| Error::invalid(format!("order value {v} is outside 1..={n}")))?;
            if *slot != u32::MAX {
                return Err(Error::invalid(format!("order lists value {v} twice")));
            }
            *slot = r as u32;
        }
        Ok(LinearOrder { order, rank })
    }

    /// The usual order `1 < 2 < … < n`.
    pub fn integer(n: usize) -> Self {
        LinearOrder {
            order: (1..=n as u32).collect(),
            rank: std::iter::once(u32::MAX).chain(0..n as u32).collect(),
        }
    }

    /// Extends a partial chain `mentioned` (smallest first) to a total order
    /// by appending the unmentioned values in increasing integer order.
    pub fn from_chain(n: usize, mentioned: &[u32]) -> Result<Self> {
        let listed: BTreeSet<u32> = mentioned.iter().copied().collect();
        let order = mentioned
            .iter()
            .copied()
            .chain((1..=n as u32).filter(|v| !listed.contains(v)))
            .collect();
        LinearOrder::new(order)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Elements smallest-first; this is the word `ORD(≺)`.
    pub fn order_word(&self) -> &[u32] {
        &self.order
    }

    pub fn rank(&self, v: u32) -> u32 {
        self.rank[v as usize]
    }

    pub fn precedes(&self, x: u32, y: u32) -> bool {
        self.rank(x) < self.rank(y)
    }

    pub fn is_integer(&self) -> bool {
        self.order.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// The same order over `{1..n'}`, with `n+1..=n'` appended on top.
    fn widened(&self, n_new: usize) -> LinearOrder {
        let mut order = self.order.clone();
        order.extend(self.n() as u32 + 1..=n_new as u32);
        LinearOrder::new(order).expect("widening keeps a bijection")
    }
}

/// The constraint between two consecutive positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gap {
    Free,
    Ordered(LinearOrder),
}

impl Gap {
    pub fn order(&self) -> Option<&LinearOrder> {
        match self {
            Gap::Free => None,
            Gap::Ordered(o) => Some(o),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Gap::Free)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LcpInstance {
    n: usize,
    allowed: Vec<BTreeSet<u32>>,
    gaps: Vec<Gap>,
}

impl LcpInstance {
    /// `allowed` has one set per position, `gaps` one entry per consecutive
    /// pair. Empty allowed sets are accepted.
    pub fn new(allowed: Vec<BTreeSet<u32>>, gaps: Vec<Gap>) -> Result<Self> {
        let n = allowed.len();
        if n == 0 {
            return Err(Error::invalid("an instance needs at least one position"));
        }
        if gaps.len() != n - 1 {
            return Err(Error::invalid(format!(
                "{n} positions need {} gaps, got {}",
                n - 1,
                gaps.len()
            )));
        }
        for (i, set) in allowed.iter().enumerate() {
            if let Some(&v) = set.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(Error::invalid(format!(
                    "allowed set {} contains {v}, outside 1..={n}",
                    i + 1
                )));
            }
        }
        for (i, gap) in gaps.iter().enumerate() {
            if let Gap::Ordered(o) = gap {
                if o.n() != n {
                    return Err(Error::invalid(format!(
                        "order {} ranges over {} values, expected {n}",
                        i + 1,
                        o.n()
                    )));
                }
            }
        }
        Ok(LcpInstance { n, allowed, gaps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `H_i` for 1-based `i`.
    pub fn allowed(&self, i: usize) -> &BTreeSet<u32> {
        &self.allowed[i - 1]
    }

    pub fn allowed_sets(&self) -> &[BTreeSet<u32>] {
        &self.allowed
    }

    /// The constraint between positions `i` and `i + 1` (1-based `i`).
    pub fn gap(&self, i: usize) -> &Gap {
        &self.gaps[i - 1]
    }

    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn has_free_gaps(&self) -> bool {
        self.gaps.iter().any(Gap::is_free)
    }

    pub fn check_solution(&self, pi: &Permutation) -> bool {
        if pi.n() != self.n {
            return false;
        }
        let v = pi.values();
        v.iter().zip(&self.allowed).all(|(x, h)| h.contains(x))
            && self
                .gaps
                .iter()
                .enumerate()
                .all(|(i, g)| g.order().is_none_or(|o| o.precedes(v[i], v[i + 1])))
    }

    /// Exact search; see [`SolveOptions`].
    pub fn solve(&self) -> Option<Permutation> {
        self.solve_with(SolveOptions::default())
    }

    pub fn solve_with(&self, options: SolveOptions) -> Option<Permutation> {
        solver::solve(self, options)
    }

    /// Lexicographically smallest solution, by enumerating `S_n`.
    pub fn brute_force_solve(&self, limits: &Limits) -> Result<Option<Permutation>> {
        Limits::check("instance size", self.n, limits.oracle_max_n)?;
        for perm in (1..=self.n as u32).permutations(self.n) {
            let perm = Permutation::new(perm)?;
            if self.check_solution(&perm) {
                return Ok(Some(perm));
            }
        }
        Ok(None)
    }

    pub fn complete_free_orders(&self) -> LcpInstance {
        self.complete_free_orders_mapped().instance
    }

    /// Closes every free gap with a dummy position, keeping track of where
    /// the original positions went.
    ///
    /// Dummy values are `n+1, n+2, …` in left-to-right gap order; original
    /// values keep their numbers.
    pub fn complete_free_orders_mapped(&self) -> Completion {
        let free = self.gaps.iter().filter(|g| g.is_free()).count();
        let n_new = self.n + free;
        let mut allowed = Vec::with_capacity(n_new);
        let mut gaps = Vec::with_capacity(n_new - 1);
        let mut positions = Vec::with_capacity(self.n);
        let mut dummies = Vec::with_capacity(free);
        let mut next_value = self.n as u32;
        for i in 0..self.n {
            allowed.push(self.allowed[i].clone());
            positions.push(allowed.len());
            let Some(gap) = self.gaps.get(i) else { break };
            match gap {
                Gap::Ordered(o) => gaps.push(Gap::Ordered(o.widened(n_new))),
                Gap::Free => {
                    next_value += 1;
                    let c = next_value;
                    allowed.push(BTreeSet::from([c]));
                    dummies.push((allowed.len(), c));
                    let others = (1..=n_new as u32).filter(|&v| v != c);
                    let top: Vec<u32> = others.clone().chain([c]).collect();
                    let bottom: Vec<u32> = std::iter::once(c).chain(others).collect();
                    gaps.push(Gap::Ordered(LinearOrder::new(top).expect("bijection")));
                    gaps.push(Gap::Ordered(LinearOrder::new(bottom).expect("bijection")));
                }
            }
        }
        Completion {
            instance: LcpInstance::new(allowed, gaps).expect("completion is well formed"),
            positions,
            dummies,
        }
    }
}

/// Result of [`LcpInstance::complete_free_orders_mapped`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub instance: LcpInstance,
    /// New 1-based position of each original position.
    pub positions: Vec<usize>,
    /// `(position, value)` of each dummy, left to right.
    pub dummies: Vec<(usize, u32)>,
}

impl Completion {
    /// Restricts a solution of the completed instance to the original positions.
    pub fn project(&self, pi: &Permutation) -> Result<Permutation> {
        Permutation::new(self.positions.iter().map(|&p| pi.at(p)).collect())
    }

    /// Extends a solution of the original instance with the dummy values.
    pub fn lift(&self, pi: &Permutation) -> Result<Permutation> {
        let mut values = vec![0; self.instance.n()];
        for (&p, &v) in self.positions.iter().zip(pi.values()) {
            values[p - 1] = v;
        }
        for &(p, c) in &self.dummies {
            values[p - 1] = c;
        }
        Permutation::new(values)
    }
}

/// Prefix Increasing Permutation: `π_i ∈ H_i` and `π_1 < π_2 < … < π_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PipInstance {
    allowed: Vec<BTreeSet<u32>>,
    k: usize,
}

impl PipInstance {
    /// `k` counts constrained gaps and must be at most `n - 1`.
    pub fn new(allowed: Vec<BTreeSet<u32>>, k: usize) -> Result<Self> {
        let n = allowed.len();
        if n == 0 {
            return Err(Error::invalid("an instance needs at least one position"));
        }
        if k >= n {
            return Err(Error::invalid(format!("k = {k} exceeds the number of gaps {}", n - 1)));
        }
        for (i, set) in allowed.iter().enumerate() {
            if let Some(&v) = set.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(Error::invalid(format!(
                    "allowed set {} contains {v}, outside 1..={n}",
                    i + 1
                )));
            }
        }
        Ok(PipInstance { allowed, k })
    }

    pub fn n(&self) -> usize {
        self.allowed.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn allowed_sets(&self) -> &[BTreeSet<u32>] {
        &self.allowed
    }

    pub fn check_solution(&self, pi: &Permutation) -> bool {
        pi.n() == self.n()
            && pi.values().iter().zip(&self.allowed).all(|(x, h)| h.contains(x))
            && pi.values()[..=self.k].windows(2).all(|w| w[0] < w[1])
    }

    /// Gaps `1..=k` get the integer order, the rest are free.
    pub fn to_lcp(&self) -> LcpInstance {
        let n = self.n();
        let gaps = (1..n)
            .map(|g| {
                if g <= self.k {
                    Gap::Ordered(LinearOrder::integer(n))
                } else {
                    Gap::Free
                }
            })
            .collect();
        LcpInstance::new(self.allowed.clone(), gaps).expect("same shape")
    }

    /// Recognizes an LCP instance whose constrained gaps are exactly a
    /// prefix of integer orders.
    pub fn from_lcp(inst: &LcpInstance) -> Result<Self> {
        let k = inst
            .gaps
            .iter()
            .take_while(|g| g.order().is_some_and(LinearOrder::is_integer))
            .count();
        if let Some(g) = inst.gaps[k..].iter().position(|g| !g.is_free()) {
            return Err(Error::invalid(format!(
                "gap {} is constrained but does not belong to an integer-order prefix",
                k + g + 1
            )));
        }
        PipInstance::new(inst.allowed.clone(), k)
    }
}

/// Gaps `1..=k` get the integer order, the rest are free.
pub fn pip_to_lcp(p: &PipInstance) -> LcpInstance {
    p.to_lcp()
}
