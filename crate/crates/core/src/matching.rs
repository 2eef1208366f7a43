//! Partially non-crossing perfect matchings in ordered bipartite graphs.
//!
//! `U = (a_1..a_n)` and `V = (b_1..b_n)` are identified with their indices.
//! A perfect matching is acceptable when its edges incident to the
//! restricted set `W ⊆ U` do not cross: for restricted `a_i, a_k` matched to
//! `b_j, b_l`, `i < k` implies `j < l`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lcp::PipInstance;
use crate::limits::Limits;
use crate::text::{content_lines, join, parse_int, parse_ints};
use crate::words::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchingInstance {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    restricted: BTreeSet<usize>,
}

/// A set of `(u, v)` pairs. Whether it is perfect is for [`MatchingInstance::verify`] to say.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `a_i` matched to `b_{π_i}`.
    pub fn from_permutation(pi: &Permutation) -> Self {
        Matching::new(
            pi.values()
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, v as usize))
                .collect(),
        )
    }

    /// The permutation `π_i = j ⇔ (a_i, b_j) ∈ M`, if the pairing is perfect.
    pub fn to_permutation(&self) -> Result<Permutation> {
        if self.pairs.iter().enumerate().any(|(i, &(u, _))| u != i + 1) {
            return Err(Error::invalid("matching does not cover every left vertex once"));
        }
        Permutation::new(self.pairs.iter().map(|&(_, v)| v as u32).collect())
    }
}

impl MatchingInstance {
    pub fn new(n: usize, edges: BTreeSet<(usize, usize)>, restricted: BTreeSet<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("both sides need at least one vertex"));
        }
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i == 0 || j == 0 || i > n || j > n) {
            return Err(Error::invalid(format!("edge ({i}, {j}) is outside 1..={n}")));
        }
        if let Some(&i) = restricted.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::invalid(format!("restricted vertex {i} is outside 1..={n}")));
        }
        Ok(MatchingInstance { n, edges, restricted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn restricted(&self) -> &BTreeSet<usize> {
        &self.restricted
    }

    /// Edges present, perfect, and non-crossing on the restricted side.
    pub fn verify(&self, m: &Matching) -> bool {
        let Ok(pi) = m.to_permutation() else {
            return false;
        };
        if pi.n() != self.n {
            return false;
        }
        if !m.pairs.iter().all(|e| self.edges.contains(e)) {
            return false;
        }
        m.pairs
            .iter()
            .filter(|(u, _)| self.restricted.contains(u))
            .tuple_windows()
            .all(|(a, b)| a.1 < b.1)
    }

    /// Backtracking over `a_1, a_2, …` in order, smallest `b` first.
    ///
    /// A restricted vertex must take a `b` above every `b` already taken by a
    /// restricted vertex. Each node also checks that the unassigned vertices
    /// still admit a perfect matching into the free `b`s (restricted ones
    /// limited to `b`s above the current restricted maximum).
    pub fn solve(&self) -> Option<Matching> {
        let n = self.n;
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(i, j) in &self.edges {
            adj[i - 1].insert(j - 1);
        }
        let restricted: Vec<bool> = (1..=n).map(|i| self.restricted.contains(&i)).collect();
        let mut search = MatchSearch {
            n,
            adj,
            restricted,
            taken: FixedBitSet::with_capacity(n),
            chosen: Vec::with_capacity(n),
        };
        search
            .run(0, None)
            .then(|| Matching::new(search.chosen.iter().enumerate().map(|(i, &j)| (i + 1, j + 1)).collect()))
    }

    /// Enumerates all `n!` pairings in lexicographic order.
    pub fn brute_force_matchings(&self, limits: &Limits) -> Result<Option<Matching>> {
        Limits::check("side size", self.n, limits.oracle_max_n)?;
        Ok((1..=self.n)
            .permutations(self.n)
            .map(|vs| Matching::new(vs.into_iter().enumerate().map(|(i, j)| (i + 1, j)).collect()))
            .find(|m| self.verify(m)))
    }
}

struct MatchSearch {
    n: usize,
    adj: Vec<FixedBitSet>,
    restricted: Vec<bool>,
    taken: FixedBitSet,
    chosen: Vec<usize>,
}

impl MatchSearch {
    fn candidates(&self, u: usize, floor: Option<usize>) -> FixedBitSet {
        let mut c = self.adj[u].clone();
        c.difference_with(&self.taken);
        if self.restricted[u] {
            if let Some(f) = floor {
                c.remove_range(..f + 1);
            }
        }
        c
    }

    fn run(&mut self, u: usize, floor: Option<usize>) -> bool {
        if u == self.n {
            return true;
        }
        if !self.hall_ok(u, floor) {
            return false;
        }
        for v in self.candidates(u, floor).ones() {
            self.taken.insert(v);
            self.chosen.push(v);
            let next_floor = if self.restricted[u] { Some(v) } else { floor };
            if self.run(u + 1, next_floor) {
                return true;
            }
            self.chosen.pop();
            self.taken.set(v, false);
        }
        false
    }

    /// Perfect matching of `a_from..a_n` into untaken `b`s.
    fn hall_ok(&self, from: usize, floor: Option<usize>) -> bool {
        let cand: Vec<FixedBitSet> = (from..self.n).map(|u| self.candidates(u, floor)).collect();
        let mut owner = vec![usize::MAX; self.n];
        for left in 0..cand.len() {
            let mut seen = FixedBitSet::with_capacity(self.n);
            if !kuhn(left, &cand, &mut owner, &mut seen) {
                return false;
            }
        }
        true
    }
}

fn kuhn(left: usize, cand: &[FixedBitSet], owner: &mut [usize], seen: &mut FixedBitSet) -> bool {
    for v in cand[left].ones() {
        if seen.put(v) {
            continue;
        }
        if owner[v] == usize::MAX || kuhn(owner[v], cand, owner, seen) {
            owner[v] = left;
            return true;
        }
    }
    false
}

/// Position `i` becomes `a_i`, value `j` becomes `b_j`, with an edge iff
/// `j ∈ H_i`; the restricted set is the prefix `a_1..a_{k+1}`.
pub fn pip_to_matching(p: &PipInstance) -> MatchingInstance {
    let edges = p
        .allowed_sets()
        .iter()
        .enumerate()
        .flat_map(|(i, h)| h.iter().map(move |&j| (i + 1, j as usize)))
        .collect();
    let restricted = (1..=p.k() + 1).collect();
    MatchingInstance::new(p.n(), edges, restricted).expect("same shape")
}

impl fmt::Display for MatchingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "match {}", self.n)?;
        if self.restricted.is_empty() {
            writeln!(f, "restricted:")?;
        } else {
            writeln!(f, "restricted: {}", join(&self.restricted))?;
        }
        for (i, j) in &self.edges {
            writeln!(f, "edge {i} {j}")?;
        }
        Ok(())
    }
}

impl FromStr for MatchingInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected `match <n>`"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let n: usize = match fields[..] {
            ["match", n] => parse_int(hline, n, "a side size")?,
            ["match", _, _] => {
                return Err(Error::parse(
                    hline,
                    "both sides must have the same size; expected `match <n>`",
                ))
            }
            _ => return Err(Error::parse(hline, "expected header `match <n>`")),
        };
        if n == 0 {
            return Err(Error::parse(hline, "side size must be positive"));
        }
        let (rline, rtext) = lines
            .next()
            .ok_or_else(|| Error::parse(hline + 1, "missing `restricted:` line"))?;
        let body = rtext
            .strip_prefix("restricted:")
            .ok_or_else(|| Error::parse(rline, "expected `restricted: i1 i2 ...`"))?;
        let restricted: Vec<usize> = parse_ints(rline, body, "a vertex index")?;
        if let Some(&i) = restricted.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::parse(rline, format!("restricted vertex {i} is outside 1..={n}")));
        }
        let mut edges = BTreeSet::new();
        for (line, text) in lines {
            let (i, j) = parse_pair(line, text, "edge")?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::parse(line, format!("edge ({i}, {j}) is outside 1..={n}")));
            }
            edges.insert((i, j));
        }
        MatchingInstance::new(n, edges, restricted.into_iter().collect())
            .map_err(|e| Error::parse(hline, e.to_string()))
    }
}

fn parse_pair(line: usize, text: &str, keyword: &str) -> Result<(usize, usize)> {
    match text.split_whitespace().collect::<Vec<_>>()[..] {
        [k, i, j] if k == keyword => Ok((parse_int(line, i, "an index")?, parse_int(line, j, "an index")?)),
        _ => Err(Error::parse(line, format!("expected `{keyword} <i> <j>`"))),
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in &self.pairs {
            writeln!(f, "pair {i} {j}")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pairs = content_lines(s)
            .map(|(line, text)| parse_pair(line, text, "pair"))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matching::new(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_matching, SeededRng};

    fn inst(n: usize, edges: &[(usize, usize)], restricted: &[usize]) -> MatchingInstance {
        MatchingInstance::new(n, edges.iter().copied().collect(), restricted.iter().copied().collect()).unwrap()
    }

    fn full(n: usize, restricted: &[usize]) -> MatchingInstance {
        let edges: Vec<_> = (1..=n).cartesian_product(1..=n).collect();
        inst(n, &edges, restricted)
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn verify_examples() {
        let diag = inst(3, &[(1, 1), (2, 2), (3, 3)], &[1, 2, 3]);
        assert!(diag.verify(&Matching::new(vec![(1, 1), (2, 2), (3, 3)])));

        let cross = Matching::new(vec![(1, 2), (2, 1)]);
        assert!(!inst(2, &[(1, 2), (2, 1)], &[1, 2]).verify(&cross));
        assert!(inst(2, &[(1, 2), (2, 1)], &[1]).verify(&cross));
    }

    #[test]
    fn verify_rejects_non_edges_and_imperfect() {
        let g = inst(2, &[(1, 1), (2, 2)], &[]);
        assert!(!g.verify(&Matching::new(vec![(1, 2), (2, 1)])));
        assert!(!g.verify(&Matching::new(vec![(1, 1)])));
        assert!(!g.verify(&Matching::new(vec![(1, 1), (2, 1)])));
        assert!(!g.verify(&Matching::new(vec![(1, 1), (1, 2)])));
        assert!(g.verify(&Matching::new(vec![(2, 2), (1, 1)])));
    }

    #[test]
    fn solve_examples() {
        let diag = inst(3, &[(1, 1), (2, 2), (3, 3)], &[1, 2, 3]);
        assert!(diag.verify(&diag.solve().unwrap()));
        assert_eq!(inst(2, &[(1, 2), (2, 1)], &[1, 2]).solve(), None);
        let one = inst(2, &[(1, 2), (2, 1)], &[1]);
        assert!(one.verify(&one.solve().unwrap()));
        assert_eq!(inst(1, &[(1, 1)], &[1]).solve(), Some(Matching::new(vec![(1, 1)])));
        assert_eq!(inst(3, &[], &[]).solve(), None);
    }

    #[test]
    fn oracle_examples() {
        let lim = Limits::default();
        let all = full(4, &[1, 2, 3, 4]);
        assert_eq!(
            all.brute_force_matchings(&lim).unwrap(),
            Some(Matching::new(vec![(1, 1), (2, 2), (3, 3), (4, 4)]))
        );
        assert!(full(4, &[]).brute_force_matchings(&lim).unwrap().is_some());
        assert!(full(9, &[]).brute_force_matchings(&lim).is_err());
    }

    #[test]
    fn solver_matches_oracle() {
        let lim = Limits::default();
        let mut rng = SeededRng::new(8);
        for _ in 0..500 {
            let g = random_matching(1 + rng.below(6) as usize, &mut rng);
            let oracle = g.brute_force_matchings(&lim).unwrap();
            let found = g.solve();
            assert_eq!(found.is_some(), oracle.is_some(), "{g}");
            if let Some(m) = found {
                assert!(g.verify(&m));
            }
        }
    }

    #[test]
    fn unrestricted_is_plain_perfect_matching() {
        let mut rng = SeededRng::new(3);
        for _ in 0..100 {
            let g = random_matching(1 + rng.below(5) as usize, &mut rng);
            let free = MatchingInstance::new(g.n(), g.edges().clone(), BTreeSet::new()).unwrap();
            for vs in (1..=g.n()).permutations(g.n()) {
                let m = Matching::new(vs.into_iter().enumerate().map(|(i, j)| (i + 1, j)).collect());
                let inside = m.pairs().iter().all(|e| g.edges().contains(e));
                assert_eq!(free.verify(&m), inside);
            }
        }
    }

    #[test]
    fn pip_mapping_examples() {
        let p = PipInstance::new(vec![set(&[2, 3]), set(&[1, 2, 3]), set(&[1, 2, 3])], 1).unwrap();
        let g = pip_to_matching(&p);
        assert_eq!(g.restricted(), &BTreeSet::from([1, 2]));
        let m = g.solve().unwrap();
        assert!(g.verify(&m));
        assert!(p.check_solution(&m.to_permutation().unwrap()));

        let k0 = PipInstance::new(vec![set(&[2]), set(&[1])], 0).unwrap();
        let g0 = pip_to_matching(&k0);
        assert_eq!(g0.restricted(), &BTreeSet::from([1]));
        assert!(g0.solve().is_some());

        let crossing = PipInstance::new(vec![set(&[2]), set(&[1])], 1).unwrap();
        assert_eq!(crossing.to_lcp().solve(), None);
        assert_eq!(pip_to_matching(&crossing).solve(), None);
    }

    #[test]
    fn formats() {
        let g = inst(2, &[(1, 2), (2, 1)], &[1]);
        let text = g.to_string();
        assert_eq!(text, "match 2\nrestricted: 1\nedge 1 2\nedge 2 1\n");
        assert_eq!(text.parse::<MatchingInstance>().unwrap(), g);
        let bare = inst(3, &[], &[]);
        assert_eq!(bare.to_string().parse::<MatchingInstance>().unwrap(), bare);

        let m = Matching::new(vec![(2, 1), (1, 2)]);
        assert_eq!(m.to_string(), "pair 1 2\npair 2 1\n");
        assert_eq!(m.to_string().parse::<Matching>().unwrap(), m);

        assert!("match 2 3\nrestricted:\n".parse::<MatchingInstance>().is_err());
        assert!(matches!(
            "match 2\nrestricted: 1\nedge 1 3\n".parse::<MatchingInstance>(),
            Err(Error::Parse { line: 3, .. })
        ));
        let mut rng = SeededRng::new(17);
        for _ in 0..50 {
            let g = random_matching(1 + rng.below(7) as usize, &mut rng);
            assert_eq!(g.to_string().parse::<MatchingInstance>().unwrap(), g);
        }
    }
}
