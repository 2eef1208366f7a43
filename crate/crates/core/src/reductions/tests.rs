use std::collections::BTreeSet;

use itertools::Itertools;

use super::*;
use crate::gen::{cnf_grid, random_cnf, random_lcp, SeededRng};
use crate::lcp::{Gap, LcpInstance, LinearOrder};
use crate::universality::{all_words_universal, is_universal};
use crate::words::Permutation;
use crate::Limits;

fn x(v: usize) -> Literal {
    Literal::pos(v)
}

fn nx(v: usize) -> Literal {
    Literal::neg(v)
}

/// (x₁ ∨ x₂ ∨ ¬x₃)
fn simple() -> CnfFormula {
    CnfFormula::new(3, vec![[x(1), x(2), nx(3)]]).unwrap()
}

/// (x ∨ x ∨ x) ∧ (¬x ∨ ¬x ∨ ¬x)
fn contradiction() -> CnfFormula {
    CnfFormula::new(1, vec![[x(1), x(1), x(1)], [nx(1), nx(1), nx(1)]]).unwrap()
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

#[test]
fn satisfiable_formula_gives_solvable_instance() {
    let (inst, layout) = sat_to_lcp(&simple());
    assert!(!inst.has_free_gaps());
    let pi = inst.solve().expect("satisfiable");
    let a = extract_assignment(&inst, &layout, &pi).unwrap();
    assert!(simple().is_satisfied_by(&a));
}

#[test]
fn contradiction_gives_unsolvable_instance() {
    assert_eq!(contradiction().brute_force_solve(), None);
    let (inst, _) = sat_to_lcp(&contradiction());
    assert_eq!(inst.solve(), None);
}

#[test]
fn structural_counts_for_one_clause() {
    let PipNormalForm { instance, layout } = prefix_increasing_normal_form(&simple());
    assert_eq!(layout.p, 1);
    assert_eq!(layout.memory_positions(), 6);
    assert_eq!(layout.clause_positions.len(), 1);
    assert_eq!(layout.comparisons.len(), 0);
    // 12 values, 7 gadget positions, 5 balancing.
    assert_eq!(instance.n(), 12);
    assert_eq!(layout.balancing.len(), 5);

    // 11 gaps, of which the three copy-0 → copy-1 links are ordered.
    let (inst, layout) = sat_to_lcp(&simple());
    assert_eq!(layout.dummies.len(), 8);
    assert_eq!(inst.n(), 20);
}

#[test]
fn layout_is_injective() {
    let f = CnfFormula::new(2, vec![[x(1), nx(2), x(1)], [nx(1), x(2), x(2)]]).unwrap();
    let (inst, layout) = sat_to_lcp(&f);
    let mut positions = BTreeSet::new();
    let mut values = BTreeSet::new();
    for c in &layout.cells {
        for k in 0..=layout.p {
            assert!(positions.insert(c.position(k)));
            assert!(values.insert(c.f(k)));
            assert!(values.insert(c.t(k)));
        }
    }
    for &p in layout
        .clause_positions
        .iter()
        .chain(layout.comparisons.iter().flat_map(|c| &c.positions))
    {
        assert!(positions.insert(p));
    }
    for &(p, v) in &layout.dummies {
        assert!(positions.insert(p));
        assert!(values.insert(v));
    }
    for &p in &layout.balancing {
        assert!(positions.insert(p));
    }
    assert_eq!(positions.len(), inst.n());
    assert_eq!(values.len(), inst.n());
    // Each variable occurs 3 times: 3 pairs per variable.
    assert_eq!(layout.comparisons.len(), 6);
    // Memory cells stay contiguous after dummies are inserted.
    for c in &layout.cells {
        for k in 0..layout.p {
            assert!(inst.gap(c.position(k)).order().is_some());
        }
    }
}

#[test]
fn embedding_examples() {
    let (inst, layout) = sat_to_lcp(&simple());
    let pi = embed_assignment(&layout, &Assignment::new(vec![true, false, false])).unwrap();
    assert!(inst.check_solution(&pi));
    assert_eq!(
        embed_assignment(&layout, &Assignment::new(vec![false, false, true])),
        Err(crate::Error::UnsatisfiedClause { clause: 1 })
    );
    assert!(embed_assignment(&layout, &Assignment::new(vec![true])).is_err());

    let single = CnfFormula::new(1, vec![[x(1), x(1), x(1)]]).unwrap();
    let (inst, layout) = sat_to_lcp(&single);
    let pi = embed_assignment(&layout, &Assignment::new(vec![true])).unwrap();
    assert!(inst.check_solution(&pi));
}

#[test]
fn extraction_rejects_non_solutions() {
    let (inst, layout) = sat_to_lcp(&simple());
    assert!(extract_assignment(&inst, &layout, &Permutation::identity(inst.n())).is_err());
}

#[test]
fn round_trips_on_small_grid() {
    for f in cnf_grid(2, 2) {
        let (inst, layout) = sat_to_lcp(&f);
        let truth = f.brute_force_solve().is_some();
        let solved = inst.solve();
        assert_eq!(solved.is_some(), truth, "{f}");
        if let Some(pi) = solved {
            assert!(f.is_satisfied_by(&extract_assignment(&inst, &layout, &pi).unwrap()));
        }
        for bits in 0..1u32 << f.num_vars() {
            let a = Assignment::new((0..f.num_vars()).map(|v| bits >> v & 1 == 1).collect());
            if f.is_satisfied_by(&a) {
                let pi = embed_assignment(&layout, &a).unwrap();
                assert!(inst.check_solution(&pi));
                assert!(f.is_satisfied_by(&extract_assignment(&inst, &layout, &pi).unwrap()));
            }
        }
    }
}

#[test]
fn random_formulas_match_brute_force() {
    let mut rng = SeededRng::new(31);
    for _ in 0..40 {
        let m = 1 + rng.below(4) as usize;
        let d = 1 + rng.below(3) as usize;
        let f = random_cnf(m, d, &mut rng);
        let (inst, layout) = sat_to_lcp(&f);
        let solved = inst.solve();
        assert_eq!(solved.is_some(), f.brute_force_solve().is_some(), "{f}");
        if let Some(pi) = solved {
            assert!(f.is_satisfied_by(&extract_assignment(&inst, &layout, &pi).unwrap()));
        }
    }
}

/// x₂'s cell copy 1 is not read by any comparison, so a false literal may
/// switch to its t-value there.
#[test]
fn one_sided_error_is_tolerated() {
    let f = simple();
    let (inst, layout) = sat_to_lcp(&f);
    let pi = embed_assignment(&layout, &Assignment::new(vec![true, false, false])).unwrap();
    let cell = layout.cell(0, 1);
    let (from, to) = (cell.f(1), cell.t(1));
    let holder = pi.values().iter().position(|&v| v == to).unwrap();
    let mut values = pi.into_values();
    values[cell.position(1) - 1] = to;
    values[holder] = from;
    let mixed = Permutation::new(values).unwrap();
    assert!(inst.check_solution(&mixed));
    assert_eq!(cell_state(&layout, 1, &mixed), CellState::Mixed);
    assert!(f.is_satisfied_by(&extract_assignment(&inst, &layout, &mixed).unwrap()));

    // The reverse switch (t then f) breaks the chain order.
    let pi = embed_assignment(&layout, &Assignment::new(vec![true, false, false])).unwrap();
    let cell = layout.cell(0, 0);
    let (from, to) = (cell.t(1), cell.f(1));
    let holder = pi.values().iter().position(|&v| v == to).unwrap();
    let mut values = pi.into_values();
    values[cell.position(1) - 1] = to;
    values[holder] = from;
    assert!(!inst.check_solution(&Permutation::new(values).unwrap()));
}

#[test]
fn ord_and_enc() {
    let o = LinearOrder::new(vec![1, 3, 2]).unwrap();
    assert_eq!(ord(&o).symbols(), &[1, 3, 2]);
    assert_eq!(enc(&set(&[1, 3]), 3).symbols(), &[1, 3]);
    assert!(enc(&set(&[]), 3).is_empty());
}

#[test]
fn lcp_to_word_examples() {
    let inst = LcpInstance::new(
        vec![set(&[1]), set(&[1, 2])],
        vec![Gap::Ordered(LinearOrder::integer(2))],
    )
    .unwrap();
    let w = lcp_to_word(&inst).unwrap();
    assert_eq!(w.symbols(), &[2, 2, 1]);
    assert!(!w.contains(&[1, 2]));
    assert!(inst.check_solution(&Permutation::new(vec![1, 2]).unwrap()));
    assert!(w.contains(&[2, 1]));
    assert!(!inst.check_solution(&Permutation::new(vec![2, 1]).unwrap()));

    let one = LcpInstance::new(vec![set(&[1])], vec![]).unwrap();
    let w = lcp_to_word(&one).unwrap();
    assert!(w.is_empty());
    assert!(!w.contains(&[1]));

    let free = LcpInstance::new(vec![set(&[1]), set(&[2])], vec![Gap::Free]).unwrap();
    assert!(lcp_to_word(&free).is_err());
}

fn equivalence_holds(inst: &LcpInstance) {
    let w = lcp_to_word(inst).unwrap();
    assert_eq!(w.len(), expected_word_length(inst));
    assert!(all_words_universal(&w, inst.n() - 1));
    for p in (1..=inst.n() as u32).permutations(inst.n()) {
        let p = Permutation::new(p).unwrap();
        assert_ne!(inst.check_solution(&p), w.contains(p.values()), "{inst}\n{p}");
    }
    assert_eq!(is_universal(&w, &Limits::default()).unwrap(), inst.solve().is_none());
}

#[test]
fn word_encodes_lcp_on_random_instances() {
    let mut rng = SeededRng::new(77);
    let mut checked = 0;
    while checked < 50 {
        let n = 1 + rng.below(6) as usize;
        let inst = random_lcp(n, &mut rng).complete_free_orders();
        if inst.n() > 6 {
            continue;
        }
        equivalence_holds(&inst);
        checked += 1;
    }
}

#[test]
fn sat_to_word_witness() {
    let f = simple();
    let out = sat_to_word(&f);
    assert_eq!(out.word.len(), expected_word_length(&out.instance));
    let pi = embed_assignment(&out.layout, &Assignment::new(vec![true, true, true])).unwrap();
    assert!(!out.word.contains(pi.values()));
    let solved = out.instance.solve().unwrap();
    assert!(!out.word.contains(solved.values()));

    let out = sat_to_word(&contradiction());
    assert_eq!(out.instance.solve(), None);
}

#[test]
fn normal_form_structure_and_equivalence() {
    for f in cnf_grid(2, 2).into_iter().step_by(7).chain([simple(), contradiction()]) {
        let nf = prefix_increasing_normal_form(&f);
        let lcp = nf.instance.to_lcp();
        let k = nf.instance.k();
        assert_eq!(k + 1, nf.layout.memory_positions());
        for (g, gap) in lcp.gaps().iter().enumerate() {
            match gap {
                Gap::Ordered(o) => {
                    assert!(g < k);
                    assert!(o.is_integer());
                }
                Gap::Free => assert!(g >= k),
            }
        }
        let (full, _) = sat_to_lcp(&f);
        let solved = lcp.solve();
        assert_eq!(solved.is_some(), full.solve().is_some(), "{f}");
        if let Some(pi) = solved {
            assert!(nf.instance.check_solution(&pi));
            assert!(f.is_satisfied_by(&read_assignment(&nf.layout, &pi)));
        }
        if let Some(a) = f.brute_force_solve() {
            let pi = embed_assignment(&nf.layout, &a).unwrap();
            assert!(nf.instance.check_solution(&pi));
        }
    }
}

#[test]
fn layout_text_round_trip() {
    let f = CnfFormula::new(2, vec![[x(1), nx(2), x(1)], [nx(1), x(2), x(2)]]).unwrap();
    let (_, layout) = sat_to_lcp(&f);
    let text = layout.to_string();
    assert_eq!(text.parse::<ReductionLayout>().unwrap(), layout);
    assert!("layout 3 1 1 1\nliteral 1 1 0 1 1 1 3\n"
        .parse::<ReductionLayout>()
        .is_err());
}
