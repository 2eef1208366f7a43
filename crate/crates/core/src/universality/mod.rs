//! Deciding whether a word contains every permutation of its alphabet.
//!
//! The exact decider is a dynamic program over subsets: `reach(S)` is the
//! worst (largest) greedy end position over all orderings of `S`. Extending
//! an ordering of `S \ {c}` by `c` ends at `next(reach(S \ {c}), c)` because
//! `next` is monotone in its position argument, so
//! `reach(S) = max_{c ∈ S} next(reach(S \ {c}), c)`. The word is universal iff
//! `reach({1..n})` is finite.

mod search;

use itertools::Itertools;

use crate::error::Result;
use crate::limits::Limits;
use crate::words::{is_subsequence, Permutation, SuccessorTable, Word};

pub use search::{min_universal_length, MinUniversal};

/// Outcome of a universality query. A witness is present iff the word is
/// not universal, and it is never a subsequence of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityVerdict {
    pub universal: bool,
    pub witness: Option<Permutation>,
}

impl UniversalityVerdict {
    fn universal() -> Self {
        UniversalityVerdict {
            universal: true,
            witness: None,
        }
    }

    fn missing(witness: Permutation) -> Self {
        UniversalityVerdict {
            universal: false,
            witness: Some(witness),
        }
    }
}

/// `reach` for every subset of the alphabet, indexed by bit mask (bit
/// `c - 1` stands for symbol `c`).
#[derive(Debug, Clone)]
pub struct FrontierTable {
    n: usize,
    successors: SuccessorTable,
    reach: Vec<u32>,
}

impl FrontierTable {
    pub fn build(text: &Word, limits: &Limits) -> Result<Self> {
        let n = text.alphabet_size() as usize;
        Limits::check("alphabet size", n, limits.frontier_max_n)?;
        let successors = SuccessorTable::new(text);
        let full = 1usize << n;
        let mut reach = vec![0u32; full];
        // Increasing mask order: every `mask ^ bit` is smaller than `mask`.
        for mask in 1..full {
            let mut worst = 0;
            let mut bits = mask;
            while bits != 0 {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                let pos = successors.next(reach[mask ^ (1 << c)], c + 1);
                worst = worst.max(pos);
            }
            reach[mask] = worst;
        }
        Ok(FrontierTable { n, successors, reach })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The "no occurrence" sentinel, `|T| + 1`.
    pub fn infinity(&self) -> u32 {
        self.successors.infinity()
    }

    pub fn reach(&self, mask: usize) -> u32 {
        self.reach[mask]
    }

    pub fn is_universal(&self) -> bool {
        self.reach[self.reach.len() - 1] < self.infinity()
    }

    /// The ordering of `mask` whose greedy match ends at `reach(mask)`.
    ///
    /// Walks the table backwards, fixing the last symbol first. Among tied
    /// symbols the largest is placed last, which keeps smaller symbols toward
    /// the front of the ordering.
    pub fn worst_ordering(&self, mask: usize) -> Vec<u32> {
        let mut order = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            let target = self.reach[rest];
            let c = (0..self.n as u32)
                .rev()
                .filter(|&c| rest & (1 << c) != 0)
                .find(|&c| self.successors.next(self.reach[rest ^ (1 << c)], c + 1) == target)
                .expect("reach is attained by some symbol");
            order.push(c + 1);
            rest ^= 1 << c;
        }
        order.reverse();
        order
    }

    pub fn verdict(&self) -> UniversalityVerdict {
        if self.is_universal() {
            UniversalityVerdict::universal()
        } else {
            let full = (1usize << self.n) - 1;
            let witness = Permutation::new(self.worst_ordering(full)).expect("ordering of the full alphabet");
            UniversalityVerdict::missing(witness)
        }
    }
}

pub fn is_universal(text: &Word, limits: &Limits) -> Result<bool> {
    Ok(FrontierTable::build(text, limits)?.is_universal())
}

pub fn find_missing_permutation(text: &Word, limits: &Limits) -> Result<UniversalityVerdict> {
    Ok(FrontierTable::build(text, limits)?.verdict())
}

/// Number of successful steps of the farthest-next-occurrence greedy chain:
/// from the current position, jump to the symbol whose next occurrence is
/// farthest right, stopping when some symbol has no further occurrence.
///
/// Each step is a linear scan that ends exactly where the next step starts,
/// so the whole chain costs `O(|T|)`.
pub fn max_covered_word_length(text: &Word) -> usize {
    let n = text.alphabet_size() as usize;
    let symbols = text.symbols();
    let mut seen = vec![0usize; n];
    let mut steps = 0;
    let mut pos = 0;
    loop {
        let mut missing = n;
        let round = steps + 1;
        let mut far = None;
        for (j, &c) in symbols.iter().enumerate().skip(pos) {
            let slot = &mut seen[c as usize - 1];
            if *slot != round {
                *slot = round;
                missing -= 1;
                if missing == 0 {
                    far = Some(j + 1);
                    break;
                }
            }
        }
        match far {
            Some(j) => {
                steps += 1;
                pos = j;
            }
            None => return steps,
        }
    }
}

/// Whether every length-`k` word over the alphabet (repetitions allowed) is
/// a subsequence of `text`.
pub fn all_words_universal(text: &Word, k: usize) -> bool {
    k == 0 || max_covered_word_length(text) >= k
}

/// Enumeration oracle: greedy-matches all `n!` permutations in lexicographic
/// order and reports the first one missing.
pub fn brute_force_universal(text: &Word, limits: &Limits) -> Result<UniversalityVerdict> {
    let n = text.alphabet_size() as usize;
    Limits::check("alphabet size", n, limits.oracle_max_n)?;
    for perm in (1..=n as u32).permutations(n) {
        if !is_subsequence(&perm, text.symbols()) {
            return Ok(UniversalityVerdict::missing(Permutation::new(perm)?));
        }
    }
    Ok(UniversalityVerdict::universal())
}

/// `(1 2 … n)` repeated `n` times.
pub fn construct_universal(n: u32) -> Word {
    let symbols = (0..n).flat_map(|_| 1..=n).collect();
    Word::new(n.max(1), symbols).expect("symbols within the alphabet")
}
