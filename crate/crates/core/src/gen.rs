//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 seeded directly with the 64-bit
//! seed. Bounded draws use the multiply-shift map
//! `below(b) = (next_u64() as u128 * b as u128) >> 64`, and shuffles are
//! Fisher–Yates from the last index down, so another implementation of the
//! same three rules reproduces every instance exactly.
//!
//! Distributions:
//! - word: each symbol uniform in `1..=n`;
//! - LCP: each value enters each `H_i` with probability 1/2; each gap is
//!   free, the integer order, or a uniformly shuffled order, 1/3 each;
//! - CNF: each literal has a uniform variable and is negated with
//!   probability 1/2;
//! - matching: each edge `(i, j)` present with probability 1/2 (row-major
//!   draw order); the restricted set has uniform size in `0..=n` and is the
//!   sorted prefix of a shuffled `1..=n`.

use std::collections::BTreeSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::lcp::{Gap, LcpInstance, LinearOrder};
use crate::matching::MatchingInstance;
use crate::reductions::{CnfFormula, Literal};
use crate::words::Word;

pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

pub fn random_word(n: u32, len: usize, rng: &mut SeededRng) -> Word {
    let symbols = (0..len).map(|_| rng.below(n as u64) as u32 + 1).collect();
    Word::new(n, symbols).expect("positive alphabet")
}

pub fn random_lcp(n: usize, rng: &mut SeededRng) -> LcpInstance {
    let allowed = (0..n)
        .map(|_| (1..=n as u32).filter(|_| rng.chance(1, 2)).collect::<BTreeSet<u32>>())
        .collect();
    let gaps = (1..n)
        .map(|_| match rng.below(3) {
            0 => Gap::Free,
            1 => Gap::Ordered(LinearOrder::integer(n)),
            _ => {
                let mut order: Vec<u32> = (1..=n as u32).collect();
                rng.shuffle(&mut order);
                Gap::Ordered(LinearOrder::new(order).expect("shuffled bijection"))
            }
        })
        .collect();
    LcpInstance::new(allowed, gaps).expect("well formed")
}

pub fn random_cnf(m: usize, d: usize, rng: &mut SeededRng) -> CnfFormula {
    let clauses = (0..d)
        .map(|_| {
            [(); 3].map(|_| {
                let var = rng.below(m as u64) as usize + 1;
                Literal::new(var, rng.chance(1, 2))
            })
        })
        .collect();
    CnfFormula::new(m, clauses).expect("well formed")
}

/// Every formula with `1..=max_vars` variables and `1..=max_clauses` clauses,
/// up to reordering literals within a clause and clauses within the formula.
/// Literals are ordered `x1 < ¬x1 < x2 < …`; clauses and formulas are
/// nondecreasing sequences.
pub fn cnf_grid(max_vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    use itertools::Itertools;

    let mut out = Vec::new();
    for m in 1..=max_vars {
        let literals: Vec<Literal> = (1..=m).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
        let clauses: Vec<[Literal; 3]> = literals
            .iter()
            .copied()
            .combinations_with_replacement(3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        for d in 1..=max_clauses {
            for chosen in clauses.iter().copied().combinations_with_replacement(d) {
                out.push(CnfFormula::new(m, chosen).expect("well formed"));
            }
        }
    }
    out
}

pub fn random_matching(n: usize, rng: &mut SeededRng) -> MatchingInstance {
    let mut edges = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            if rng.chance(1, 2) {
                edges.insert((i, j));
            }
        }
    }
    let size = rng.below(n as u64 + 1) as usize;
    let mut order: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut order);
    let restricted = order[..size].iter().copied().collect();
    MatchingInstance::new(n, edges, restricted).expect("well formed")
}
