//! Depth-first search over positions, left to right, with propagation.
//!
//! Each node keeps a domain (bit set of values) per position. Propagation
//! runs to a fixpoint:
//! - a singleton domain removes its value from every other domain;
//! - an ordered gap `(i, i+1)` keeps in `D_{i+1}` only values above the
//!   `≺_i`-minimum of `D_i`, and in `D_i` only values below the
//!   `≺_i`-maximum of `D_{i+1}`.
//!
//! After propagation, Hall's condition is tested by keeping a perfect
//! matching between positions and values (repaired incrementally from the
//! parent's matching); a node without one is pruned.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::LcpInstance;
use crate::words::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Prune nodes violating Hall's condition. Disabling it keeps the search
    /// exact but slower; it exists for differential testing.
    pub hall_pruning: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { hall_pruning: true }
    }
}

const UNMATCHED: u32 = u32::MAX;

struct Problem {
    n: usize,
    /// Per gap, `rank[v]` for 0-based values, or `None` when free.
    ranks: Vec<Option<Vec<u32>>>,
    hall: bool,
}

#[derive(Clone)]
struct Node {
    domains: Vec<FixedBitSet>,
    /// Positions whose singleton value was already removed elsewhere.
    settled: FixedBitSet,
    pos_to_val: Vec<u32>,
    val_to_pos: Vec<u32>,
}

pub(super) fn solve(inst: &LcpInstance, options: SolveOptions) -> Option<Permutation> {
    let n = inst.n();
    let problem = Problem {
        n,
        ranks: inst
            .gaps()
            .iter()
            .map(|g| g.order().map(|o| (1..=n as u32).map(|v| o.rank(v)).collect()))
            .collect(),
        hall: options.hall_pruning,
    };
    let domains: Vec<FixedBitSet> = inst
        .allowed_sets()
        .iter()
        .map(|h| {
            let mut d = FixedBitSet::with_capacity(n);
            d.extend(h.iter().map(|&v| v as usize - 1));
            d
        })
        .collect();
    let mut root = Node {
        domains,
        settled: FixedBitSet::with_capacity(n),
        pos_to_val: vec![UNMATCHED; n],
        val_to_pos: vec![UNMATCHED; n],
    };
    let everything: Vec<usize> = (0..n).collect();
    if !problem.propagate(&mut root, everything) {
        return None;
    }
    let values = problem.search(root)?;
    let pi = Permutation::new(values.into_iter().map(|v| v as u32 + 1).collect()).ok()?;
    debug_assert!(inst.check_solution(&pi));
    Some(pi)
}

impl Problem {
    fn search(&self, node: Node) -> Option<Vec<usize>> {
        let Some(branch) = (0..self.n).find(|&i| node.domains[i].count_ones(..) > 1) else {
            return Some(
                node.domains
                    .iter()
                    .map(|d| d.ones().next().expect("nonempty domain"))
                    .collect(),
            );
        };
        for v in node.domains[branch].ones() {
            let mut child = node.clone();
            child.domains[branch].clear();
            child.domains[branch].insert(v);
            if self.propagate(&mut child, vec![branch]) {
                if let Some(found) = self.search(child) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Runs propagation from the positions in `dirty`, then the Hall test.
    fn propagate(&self, node: &mut Node, dirty: Vec<usize>) -> bool {
        let n = self.n;
        let mut queue: VecDeque<usize> = dirty.into();
        let mut queued = FixedBitSet::with_capacity(n);
        for &i in &queue {
            queued.insert(i);
        }
        while let Some(i) = queue.pop_front() {
            queued.set(i, false);
            let mut touched: Vec<usize> = Vec::new();
            let size = node.domains[i].count_ones(..);
            if size == 0 {
                return false;
            }
            if size == 1 && !node.settled.contains(i) {
                node.settled.insert(i);
                let v = node.domains[i].ones().next().expect("singleton");
                for j in (0..n).filter(|&j| j != i) {
                    if node.domains[j].contains(v) {
                        node.domains[j].set(v, false);
                        touched.push(j);
                    }
                }
            }
            // Gap (i, i+1): raise the floor of D_{i+1}.
            if let Some(Some(rank)) = self.ranks.get(i) {
                let floor = node.domains[i].ones().map(|v| rank[v]).min().expect("nonempty");
                if retain(&mut node.domains[i + 1], |v| rank[v] > floor) {
                    touched.push(i + 1);
                }
            }
            // Gap (i-1, i): lower the ceiling of D_{i-1}.
            if i > 0 {
                if let Some(rank) = &self.ranks[i - 1] {
                    let ceiling = node.domains[i].ones().map(|v| rank[v]).max().expect("nonempty");
                    if retain(&mut node.domains[i - 1], |v| rank[v] < ceiling) {
                        touched.push(i - 1);
                    }
                }
            }
            for j in touched {
                if node.domains[j].is_clear() {
                    return false;
                }
                if !queued.contains(j) {
                    queued.insert(j);
                    queue.push_back(j);
                }
            }
        }
        !self.hall || self.repair_matching(node)
    }

    /// Restores a perfect matching inside the current domains, or reports
    /// that none exists.
    fn repair_matching(&self, node: &mut Node) -> bool {
        for p in 0..self.n {
            let v = node.pos_to_val[p];
            if v != UNMATCHED && !node.domains[p].contains(v as usize) {
                node.pos_to_val[p] = UNMATCHED;
                node.val_to_pos[v as usize] = UNMATCHED;
            }
        }
        let mut visited = FixedBitSet::with_capacity(self.n);
        for p in 0..self.n {
            if node.pos_to_val[p] == UNMATCHED {
                visited.clear();
                if !augment(node, p, &mut visited) {
                    return false;
                }
            }
        }
        true
    }
}

/// Kuhn's augmenting path search from position `p`.
fn augment(node: &mut Node, p: usize, visited: &mut FixedBitSet) -> bool {
    // Prefer a free value before recursing.
    let free = node.domains[p].ones().find(|&v| node.val_to_pos[v] == UNMATCHED);
    if let Some(v) = free {
        node.pos_to_val[p] = v as u32;
        node.val_to_pos[v] = p as u32;
        return true;
    }
    let candidates: Vec<usize> = node.domains[p].ones().collect();
    for v in candidates {
        if visited.put(v) {
            continue;
        }
        let holder = node.val_to_pos[v] as usize;
        if augment(node, holder, visited) {
            node.pos_to_val[p] = v as u32;
            node.val_to_pos[v] = p as u32;
            return true;
        }
    }
    false
}

/// Keeps the members of `set` satisfying `keep`; reports whether anything
/// was removed.
fn retain(set: &mut FixedBitSet, keep: impl Fn(usize) -> bool) -> bool {
    let drop: Vec<usize> = set.ones().filter(|&v| !keep(v)).collect();
    for &v in &drop {
        set.set(v, false);
    }
    !drop.is_empty()
}
