//! Exhaustive search for the shortest universal word over `{1..n}`.
//!
//! Words are grown left to right. The search state is the greedy match
//! progress of every permutation, which determines the future completely.
//! Pruning:
//! - only canonical words are generated: a symbol that has not appeared yet
//!   must be the smallest unused one (universality is invariant under
//!   relabeling, and the canonical relabeling is the lexicographic minimum
//!   of its orbit);
//! - a state needs at least `max_π (n − progress(π))` more symbols;
//! - states proven hopeless for `r` remaining symbols are remembered and
//!   skipped for any `r' ≤ r`.
//!
//! Lengths are tried in increasing order, and symbols in increasing order,
//! so the first hit is the lexicographically smallest shortest word.

use std::collections::HashMap;
use std::sync::Mutex;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinUniversal {
    pub length: usize,
    pub example: Word,
}

/// Progress of each permutation, in the fixed order of `Space::perms`.
type State = Box<[u8]>;

struct Space {
    n: u8,
    /// `need[i * n + p]`: symbol (0-based) permutation `i` needs after `p` matches.
    need: Vec<u8>,
    count: usize,
}

impl Space {
    fn new(n: u8) -> Self {
        let mut need = Vec::new();
        let mut count = 0;
        for perm in (0..n).permutations(n as usize) {
            need.extend(perm);
            count += 1;
        }
        Space { n, need, count }
    }

    fn root(&self) -> State {
        vec![0u8; self.count].into_boxed_slice()
    }

    fn step(&self, state: &[u8], c: u8) -> State {
        let n = self.n as usize;
        state
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if (p as usize) < n && self.need[i * n + p as usize] == c {
                    p + 1
                } else {
                    p
                }
            })
            .collect()
    }

    fn lower_bound(&self, state: &[u8]) -> usize {
        let least = state.iter().copied().min().unwrap_or(self.n);
        (self.n - least) as usize
    }

    /// Symbols already used: those some permutation starts with and has matched.
    fn used_symbols(&self, state: &[u8]) -> u8 {
        let n = self.n as usize;
        (0..self.count)
            .filter(|&i| state[i] > 0)
            .map(|i| self.need[i * n] + 1)
            .max()
            .unwrap_or(0)
    }
}

struct Searcher<'a> {
    space: &'a Space,
    /// Largest remaining length proven insufficient, per state.
    hopeless: HashMap<State, usize>,
}

impl<'a> Searcher<'a> {
    fn new(space: &'a Space) -> Self {
        Searcher {
            space,
            hopeless: HashMap::new(),
        }
    }

    /// Extends `word` by exactly `remaining` symbols into a universal word,
    /// trying symbols in increasing order. Leaves `word` unchanged on failure.
    fn extend(&mut self, state: &[u8], remaining: usize, word: &mut Vec<u8>) -> bool {
        let lb = self.space.lower_bound(state);
        if lb == 0 {
            return remaining == 0;
        }
        if lb > remaining {
            return false;
        }
        if self.hopeless.get(state).is_some_and(|&r| r >= remaining) {
            return false;
        }
        let limit = (self.space.used_symbols(state) + 1).min(self.space.n);
        for c in 0..limit {
            let next = self.space.step(state, c);
            word.push(c);
            if self.extend(&next, remaining - 1, word) {
                return true;
            }
            word.pop();
        }
        self.hopeless.insert(state.into(), remaining);
        false
    }
}

/// Shortest universal word over `{1..n}` of length at most `length_budget`,
/// together with the lexicographically smallest example of that length.
///
/// `jobs > 1` splits each length level over canonical prefixes and searches
/// them on a thread pool; the answer is identical to the sequential run.
pub fn min_universal_length(n: usize, length_budget: usize, jobs: usize, limits: &Limits) -> Result<MinUniversal> {
    if n == 0 {
        return Err(Error::invalid("alphabet size must be positive"));
    }
    Limits::check("alphabet size", n, limits.search_max_n)?;
    if length_budget < n {
        return Err(Error::invalid(format!(
            "length budget {length_budget} is below the alphabet size {n}"
        )));
    }
    let space = Space::new(n as u8);
    let found = if jobs <= 1 {
        search_sequential(&space, n, length_budget)
    } else {
        search_parallel(&space, n, length_budget, jobs)?
    };
    match found {
        Some(word) => Ok(MinUniversal {
            length: word.len(),
            example: Word::new(n as u32, word.into_iter().map(|c| c as u32 + 1).collect())?,
        }),
        None => Err(Error::BudgetExhausted {
            n,
            budget: length_budget,
        }),
    }
}

fn search_sequential(space: &Space, from: usize, budget: usize) -> Option<Vec<u8>> {
    let mut searcher = Searcher::new(space);
    let root = space.root();
    (from..=budget).find_map(|len| {
        let mut word = Vec::with_capacity(len);
        searcher.extend(&root, len, &mut word).then_some(word)
    })
}

const SPLIT_DEPTH: usize = 3;

fn search_parallel(space: &Space, from: usize, budget: usize, jobs: usize) -> Result<Option<Vec<u8>>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {jobs} worker threads: {e}")))?;

    // Canonical prefixes in lexicographic order, with their states.
    let mut prefixes: Vec<(Vec<u8>, State)> = vec![(Vec::new(), space.root())];
    for _ in 0..SPLIT_DEPTH.min(from) {
        prefixes = prefixes
            .into_iter()
            .flat_map(|(prefix, state)| {
                let limit = (space.used_symbols(&state) + 1).min(space.n);
                (0..limit)
                    .map(|c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        (p, space.step(&state, c))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let depth = prefixes[0].0.len();
    let searchers: Vec<Mutex<Searcher>> = prefixes.iter().map(|_| Mutex::new(Searcher::new(space))).collect();

    Ok(pool.install(|| {
        (from..=budget).find_map(|len| {
            let hits: Vec<Option<Vec<u8>>> = prefixes
                .par_iter()
                .zip(searchers.par_iter())
                .map(|((prefix, state), searcher)| {
                    let mut word = prefix.clone();
                    let mut searcher = searcher.lock().expect("searcher lock");
                    searcher.extend(state, len - depth, &mut word).then_some(word)
                })
                .collect();
            hits.into_iter().flatten().next()
        })
    }))
}
