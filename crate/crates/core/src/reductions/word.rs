//! LCP → word: a permutation solves the instance iff it is *not* a
//! subsequence of
//!
//! `W = enc(H̄_1) · ord(≺_1)^R · enc(H̄_2) · ord(≺_2)^R · … · ord(≺_{n-1})^R · enc(H̄_n)`.
//!
//! An embedding of `π` into `W` that uses no `enc` block and never places
//! two consecutive symbols in the same reversed order block has at most
//! `n − 1` symbols, so every embedding witnesses either `π_j ∉ H_j` or
//! `π_j ⊀_j π_{j+1}`; conversely each such violation yields an embedding.
//! Every `ord` block is a full permutation, so `W` contains every word of
//! length `n − 1`.

use std::collections::BTreeSet;

use super::cnf::CnfFormula;
use super::layout::ReductionLayout;
use super::sat::sat_to_lcp;
use crate::error::{Error, Result};
use crate::lcp::{LcpInstance, LinearOrder};
use crate::words::Word;

/// Elements smallest-first under the order.
pub fn ord(order: &LinearOrder) -> Word {
    Word::new(order.n() as u32, order.order_word().to_vec()).expect("order values are in range")
}

/// Elements of `set` in increasing order.
pub fn enc(set: &BTreeSet<u32>, n: u32) -> Word {
    Word::new(n, set.iter().copied().collect()).expect("set values are in range")
}

/// Rejects instances with free gaps; complete them first.
pub fn lcp_to_word(inst: &LcpInstance) -> Result<Word> {
    let n = inst.n() as u32;
    let mut w = Word::empty(n);
    for i in 1..=inst.n() {
        let complement: BTreeSet<u32> = (1..=n).filter(|v| !inst.allowed(i).contains(v)).collect();
        w.extend_from(enc(&complement, n).symbols());
        if i < inst.n() {
            let order = inst.gap(i).order().ok_or_else(|| {
                Error::invalid(format!(
                    "gap {i} is free; complete free orders before building the word"
                ))
            })?;
            w.extend_from(ord(order).reversed().symbols());
        }
    }
    Ok(w)
}

/// `Σ_i (n − |H_i|) + n(n − 1)`.
pub fn expected_word_length(inst: &LcpInstance) -> usize {
    let n = inst.n();
    inst.allowed_sets().iter().map(|h| n - h.len()).sum::<usize>() + n * (n - 1)
}

/// Output of [`sat_to_word`]: the word plus the intermediate LCP instance
/// and its layout, which together turn assignments into witnesses.
#[derive(Debug, Clone)]
pub struct SatWord {
    pub word: Word,
    pub instance: LcpInstance,
    pub layout: ReductionLayout,
}

/// The formula is satisfiable iff the word is not universal.
pub fn sat_to_word(formula: &CnfFormula) -> SatWord {
    let (instance, layout) = sat_to_lcp(formula);
    let word = lcp_to_word(&instance).expect("sat_to_lcp leaves no free gaps");
    SatWord { word, instance, layout }
}
