//! Maximum matching (Edmonds' blossom algorithm), the Tutte–Berge witness
//! obtained from the Gallai–Edmonds decomposition, and a checker for the
//! structure every maximum matching has relative to such a witness.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A set of pairwise disjoint edges with constant-time partner lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    /// Builds a matching from explicit pairs, checking that each is an edge
    /// of `g` and that no vertex is covered twice.
    pub fn from_pairs<I>(g: &Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Matching::empty(g.n());
        for (u, v) in pairs {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::InvalidMatching(format!("edge {u}-{v} overlaps another edge")));
            }
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.mate.len()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate.iter().enumerate().filter_map(|(u, &m)| m.filter(|&v| u < v).map(|v| (u, v))).collect()
    }

    pub fn unmatched(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.mate[v].is_none()).collect()
    }

    /// Checks the symmetric-partner invariant and that every edge lies in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.order() != g.n() {
            return Err(Error::InvalidMatching(format!(
                "matching over {} vertices used with graph of order {}",
                self.order(),
                g.n()
            )));
        }
        for (u, &m) in self.mate.iter().enumerate() {
            if let Some(v) = m {
                if self.mate.get(v).copied().flatten() != Some(u) {
                    return Err(Error::InvalidMatching(format!("asymmetric partner at {u}")));
                }
                if !g.has_edge(u, v) {
                    return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
                }
            }
        }
        Ok(())
    }

    /// Replaces edges `remove` by `add`; the caller guarantees the result
    /// is a matching.
    pub(crate) fn rewire(&mut self, remove: &[(usize, usize)], add: &[(usize, usize)]) {
        for &(u, v) in remove {
            debug_assert_eq!(self.mate[u], Some(v));
            self.mate[u] = None;
            self.mate[v] = None;
        }
        for &(u, v) in add {
            debug_assert!(self.mate[u].is_none() && self.mate[v].is_none());
            self.mate[u] = Some(v);
            self.mate[v] = Some(u);
        }
    }
}

impl std::fmt::Debug for Matching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.edges()).finish()
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.edges())
    }
}

/// Search state for one alternating-tree growth from a single root.
struct Blossom<'g> {
    g: &'g Graph,
    used: Vec<bool>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            used: vec![false; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[Option<usize>], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match mate[a] {
                Some(m) => a = self.parent[m].expect("outer vertex has a tree parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = mate[b].expect("path to root alternates");
            b = self.parent[m].expect("outer vertex has a tree parent");
        }
    }

    fn mark_path(&mut self, mate: &[Option<usize>], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = mate[v].expect("blossom path vertices are matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("outer vertex has a tree parent");
        }
    }

    /// Grows an alternating tree from `root`; returns the exposed endpoint
    /// of an augmenting path if one exists (recoverable through `parent`).
    fn find_path(&mut self, mate: &[Option<usize>], root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&self, mate: &mut [Option<usize>], mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path is linked");
            let next = mate[pv];
            mate[v] = Some(pv);
            mate[pv] = Some(v);
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
    }
}

/// A maximum matching of `g`. Exposed vertices are tried as roots in
/// ascending id order and neighbors are scanned in ascending order, so the
/// result is a deterministic function of the graph.
pub fn maximum_matching(g: &Graph) -> Matching {
    augment_to_maximum(g, Matching::empty(g.n()))
}

/// Grows `initial` (a matching of `g`) to a maximum matching.
pub fn augment_to_maximum(g: &Graph, initial: Matching) -> Matching {
    let mut mate = initial.mate;
    let mut search = Blossom::new(g);
    for root in 0..g.n() {
        if mate[root].is_none() {
            if let Some(end) = search.find_path(&mate, root) {
                search.augment(&mut mate, end);
            }
        }
    }
    Matching { mate }
}

/// Vertices missed by at least one maximum matching, given one maximum
/// matching `m`: exposed vertices, plus each matched `v` whose removal
/// leaves the matching number unchanged.
pub fn missable_vertices(g: &Graph, m: &Matching) -> VertexSet {
    let mut out = VertexSet::new(g.n());
    for v in 0..g.n() {
        match m.partner(v) {
            None => {
                out.insert(v);
            }
            Some(p) => {
                // Any augmenting path for M - vp in G - v must start at p.
                let h = g.without_vertex_edges(v);
                let mut mate = m.mate.clone();
                mate[v] = None;
                mate[p] = None;
                if Blossom::new(&h).find_path(&mate, p).is_some() {
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Connected components of `G - x` having odd order.
pub fn odd_components(g: &Graph, x: &VertexSet) -> (usize, Vec<VertexSet>) {
    let comps: Vec<VertexSet> = g
        .components_avoiding(x)
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .map(|c| VertexSet::from_ids(g.n(), c))
        .collect();
    (comps.len(), comps)
}

/// A set `X` together with the odd components of `G - X` and the value
/// `(n + |X| - oc(G - X)) / 2`, which bounds the matching number from above
/// and equals it when `X` is a minimizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteBergeWitness {
    pub x: VertexSet,
    pub odd_components: Vec<VertexSet>,
    pub value: usize,
}

impl TutteBergeWitness {
    pub fn for_set(g: &Graph, x: VertexSet) -> Self {
        let (oc, odd_components) = odd_components(g, &x);
        let value = (g.n() + x.len()).saturating_sub(oc) / 2;
        TutteBergeWitness { x, odd_components, value }
    }

    pub fn odd_count(&self) -> usize {
        self.odd_components.len()
    }
}

/// The Gallai–Edmonds set `A(G) = N(D(G)) \ D(G)` as a Tutte–Berge
/// minimizer.
pub fn tutte_berge_witness(g: &Graph) -> TutteBergeWitness {
    let m = maximum_matching(g);
    witness_from_matching(g, &m)
}

/// As [`tutte_berge_witness`], reusing a known maximum matching.
pub fn witness_from_matching(g: &Graph, m: &Matching) -> TutteBergeWitness {
    let d = missable_vertices(g, m);
    let mut a = VertexSet::new(g.n());
    for v in &d {
        for &w in g.neighbors(v) {
            if !d.contains(w) {
                a.insert(w);
            }
        }
    }
    TutteBergeWitness::for_set(g, a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    InvalidMatching { detail: String },
    WitnessMismatch { detail: String },
    ValueMismatch { matching_size: usize, witness_value: usize },
    UnmatchedCount { found: usize, expected: i64 },
    OddComponentExposure { component: usize, exposed: Vec<usize> },
    EvenComponentExposed { vertex: usize },
    WitnessVertexUnmatched { vertex: usize },
    WitnessPartnerOutsideOddComponent { vertex: usize, partner: usize },
    WitnessPartnersShareComponent { component: usize, vertices: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub passed: bool,
    pub matching_size: usize,
    pub witness_value: usize,
    pub unmatched: Vec<usize>,
    pub violations: Vec<StructureViolation>,
}

/// Checks that `m` relates to `w` the way every maximum matching relates to
/// a Tutte–Berge minimizer: `oc(G-X) - |X|` exposed vertices, each
/// component of `G - X` matched internally except one vertex per odd
/// component, and `X` matched into distinct odd components.
pub fn validate_structure(g: &Graph, m: &Matching, w: &TutteBergeWitness) -> StructureReport {
    let mut violations = Vec::new();
    if let Err(e) = m.validate(g) {
        violations.push(StructureViolation::InvalidMatching { detail: e.to_string() });
        return StructureReport {
            passed: false,
            matching_size: m.len(),
            witness_value: w.value,
            unmatched: Vec::new(),
            violations,
        };
    }

    let recomputed = TutteBergeWitness::for_set(g, w.x.clone());
    if recomputed != *w {
        violations.push(StructureViolation::WitnessMismatch {
            detail: "odd components or value do not match the set X".into(),
        });
    }
    if m.len() != recomputed.value {
        violations.push(StructureViolation::ValueMismatch {
            matching_size: m.len(),
            witness_value: recomputed.value,
        });
    }

    let unmatched = m.unmatched();
    let expected = recomputed.odd_count() as i64 - recomputed.x.len() as i64;
    if unmatched.len() as i64 != expected {
        violations.push(StructureViolation::UnmatchedCount { found: unmatched.len(), expected });
    }

    let comps = g.components_avoiding(&recomputed.x);
    let mut comp_of = vec![usize::MAX; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    // exposed in G - X: unmatched, or matched into X
    let exposed_in = |v: usize| m.partner(v).is_none_or(|p| recomputed.x.contains(p));
    let mut odd_index = 0;
    let mut odd_of_comp = vec![usize::MAX; comps.len()];
    for (i, c) in comps.iter().enumerate() {
        let exposed: Vec<usize> = c.iter().copied().filter(|&v| exposed_in(v)).collect();
        if c.len() % 2 == 1 {
            odd_of_comp[i] = odd_index;
            if exposed.len() != 1 {
                violations.push(StructureViolation::OddComponentExposure { component: odd_index, exposed });
            }
            odd_index += 1;
        } else {
            violations.extend(
                exposed.into_iter().map(|vertex| StructureViolation::EvenComponentExposed { vertex }),
            );
        }
    }

    let mut partners_by_comp: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for x in &recomputed.x {
        match m.partner(x) {
            None => violations.push(StructureViolation::WitnessVertexUnmatched { vertex: x }),
            Some(p) if recomputed.x.contains(p) || comps[comp_of[p]].len().is_multiple_of(2) => violations
                .push(StructureViolation::WitnessPartnerOutsideOddComponent { vertex: x, partner: p }),
            Some(p) => partners_by_comp[comp_of[p]].push(x),
        }
    }
    for (i, xs) in partners_by_comp.into_iter().enumerate() {
        if xs.len() > 1 {
            violations.push(StructureViolation::WitnessPartnersShareComponent {
                component: odd_of_comp[i],
                vertices: xs,
            });
        }
    }

    StructureReport {
        passed: violations.is_empty(),
        matching_size: m.len(),
        witness_value: recomputed.value,
        unmatched,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star3() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn small_maximum_matchings() {
        assert_eq!(maximum_matching(&generators::complete(4)).len(), 2);
        let m = maximum_matching(&cycle(5));
        assert_eq!(m.len(), 2);
        assert_eq!(m.unmatched().len(), 1);
        assert_eq!(maximum_matching(&generators::petersen()).len(), 5);
        assert_eq!(maximum_matching(&Graph::empty(0)).len(), 0);
    }

    #[test]
    fn blossom_needed() {
        // triangle 0-1-2 with pendant 3 on vertex 2 and 4 on vertex 0
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (3, 5)]).unwrap();
        assert_eq!(maximum_matching(&g).len(), 3);
    }

    #[test]
    fn odd_component_examples() {
        let none = VertexSet::new(5);
        assert_eq!(odd_components(&cycle(5), &none).0, 1);
        assert_eq!(odd_components(&star3(), &VertexSet::from_ids(4, [0])).0, 3);
        assert_eq!(odd_components(&generators::complete(4), &VertexSet::new(4)).0, 0);
    }

    #[test]
    fn witness_examples() {
        let w = tutte_berge_witness(&cycle(5));
        assert!(w.x.is_empty());
        assert_eq!(w.value, 2);

        let w = tutte_berge_witness(&star3());
        assert_eq!(w.x.to_vec(), vec![0]);
        assert_eq!(w.value, 1);

        let p = generators::petersen();
        assert_eq!(tutte_berge_witness(&p).value, 5);
    }

    #[test]
    fn structure_examples() {
        let c5 = cycle(5);
        let r = validate_structure(&c5, &maximum_matching(&c5), &tutte_berge_witness(&c5));
        assert!(r.passed, "{r:?}");
        assert_eq!(r.unmatched.len(), 1);

        let s = star3();
        let r = validate_structure(&s, &maximum_matching(&s), &tutte_berge_witness(&s));
        assert!(r.passed, "{r:?}");
        assert_eq!(r.unmatched.len(), 2);
    }

    #[test]
    fn structure_flags_non_maximum() {
        let c5 = cycle(5);
        let m = Matching::from_pairs(&c5, [(0, 1)]).unwrap();
        let r = validate_structure(&c5, &m, &tutte_berge_witness(&c5));
        assert!(!r.passed);
        assert!(r.violations.iter().any(|v| matches!(v, StructureViolation::ValueMismatch { .. })));
    }

    #[test]
    fn from_pairs_rejects_overlap_and_non_edges() {
        let c5 = cycle(5);
        assert!(Matching::from_pairs(&c5, [(0, 1), (1, 2)]).is_err());
        assert!(Matching::from_pairs(&c5, [(0, 2)]).is_err());
    }
}
