//! Dependency forests over the bad 4-cycles of a minimized transversal.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::graph::Graph;
use crate::locdom::{bad_pairs, DConfig};
use crate::matching::{Matching, TutteBergeWitness};
use crate::vertex_set::VertexSet;

/// A 4-cycle `u u' v v'` with `uu'`, `vv'` matching edges, `u ~ v'`,
/// `v ~ u'`, of which only the primed vertices lie in `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BadFourCycle {
    pub u: usize,
    pub u_prime: usize,
    pub v: usize,
    pub v_prime: usize,
}

impl BadFourCycle {
    pub fn vertices(&self) -> [usize; 4] {
        [self.u, self.u_prime, self.v, self.v_prime]
    }

    pub fn primes(&self) -> [usize; 2] {
        [self.u_prime, self.v_prime]
    }

    pub fn min_vertex(&self) -> usize {
        *self.vertices().iter().min().unwrap()
    }

    /// Checks the definition directly against `g`, `m` and `d`.
    pub fn is_bad(&self, g: &Graph, m: &Matching, d: &VertexSet) -> bool {
        let BadFourCycle { u, u_prime, v, v_prime } = *self;
        let distinct = BTreeSet::from(self.vertices()).len() == 4;
        let mut code_v: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| d.contains(w)).collect();
        code_v.sort_unstable();
        let mut primes = vec![u_prime, v_prime];
        primes.sort_unstable();
        distinct
            && m.partner(u) == Some(u_prime)
            && m.partner(v) == Some(v_prime)
            && g.has_edge(u, v_prime)
            && g.has_edge(v, u_prime)
            && !d.contains(u)
            && !d.contains(v)
            && d.contains(u_prime)
            && d.contains(v_prime)
            && code_v == primes
    }

    fn relabel(&self, map: &[usize]) -> Self {
        BadFourCycle {
            u: map[self.u],
            u_prime: map[self.u_prime],
            v: map[self.v],
            v_prime: map[self.v_prime],
        }
    }
}

/// `from` depends on `to` through the prime `via` of `from`: `u_to ~ via`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DependencyArc {
    pub from: usize,
    pub to: usize,
    pub via: usize,
}

/// The leaf whose primes both see unmatched vertices, together with those
/// unmatched neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChosenLeaf {
    pub node: usize,
    pub u_unmatched: usize,
    pub v_unmatched: usize,
}

/// Rooted at node 0, the cycle through the bad pair `pair`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependencyTree {
    pub pair: (usize, usize),
    pub nodes: Vec<BadFourCycle>,
    pub arcs: Vec<DependencyArc>,
    pub depth: Vec<usize>,
    pub chosen_leaf: ChosenLeaf,
}

impl DependencyTree {
    pub fn parent_arc(&self, node: usize) -> Option<&DependencyArc> {
        self.arcs.iter().find(|a| a.to == node)
    }

    pub fn children(&self, node: usize) -> impl Iterator<Item = &DependencyArc> + '_ {
        self.arcs.iter().filter(move |a| a.from == node)
    }

    pub fn leaf(&self) -> &BadFourCycle {
        &self.nodes[self.chosen_leaf.node]
    }

    /// The `(removed, added)` exchanges that walk from the root towards
    /// `node`: each ancestor gives up its prime on the path for its mate.
    pub(crate) fn path_flips(&self, m: &Matching, node: usize) -> Vec<(usize, usize)> {
        let mut flips = Vec::new();
        let mut cur = node;
        while let Some(arc) = self.parent_arc(cur) {
            flips.push((arc.via, m.partner(arc.via).unwrap()));
            cur = arc.from;
        }
        flips.reverse();
        flips
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependencyForest {
    pub trees: Vec<DependencyTree>,
}

impl DependencyForest {
    pub fn node_count(&self) -> usize {
        self.trees.iter().map(|t| t.nodes.len()).sum()
    }

    /// Maps local vertex ids through `map` (local id -> host id).
    pub fn relabel(&self, map: &[usize]) -> Self {
        let trees = self
            .trees
            .iter()
            .map(|t| {
                let (a, b) = (map[t.pair.0], map[t.pair.1]);
                DependencyTree {
                    pair: (a.min(b), a.max(b)),
                    nodes: t.nodes.iter().map(|c| c.relabel(map)).collect(),
                    arcs: t.arcs.iter().map(|a| DependencyArc { via: map[a.via], ..*a }).collect(),
                    depth: t.depth.clone(),
                    chosen_leaf: ChosenLeaf {
                        node: t.chosen_leaf.node,
                        u_unmatched: map[t.chosen_leaf.u_unmatched],
                        v_unmatched: map[t.chosen_leaf.v_unmatched],
                    },
                }
            })
            .collect();
        DependencyForest { trees }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForestErrorKind {
    UnmatchedPairVertex {
        vertex: usize,
    },
    NotABadCycle {
        cycle: BadFourCycle,
    },
    /// A prime with neither an unmatched neighbor nor a cycle hanging off it.
    MissingDependency {
        cycle: BadFourCycle,
        via: usize,
    },
    SharedVertex {
        vertex: usize,
    },
    LeafCondition {
        cycle: BadFourCycle,
        detail: String,
    },
}

/// Extraction failed. `flips` lists `(removed, added)` exchanges leading
/// from the current set to the configuration the failure points at; a
/// minimal configuration would never produce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestError {
    pub pair: (usize, usize),
    pub kind: ForestErrorKind,
    pub flips: Vec<(usize, usize)>,
}

impl fmt::Display for ForestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dependency forest for pair {:?}: {:?}", self.pair, self.kind)
    }
}

impl std::error::Error for ForestError {}

impl From<ForestError> for Error {
    fn from(e: ForestError) -> Self {
        Error::Internal(e.to_string())
    }
}

fn outside_neighbors(g: &Graph, x: usize, cycle: &BadFourCycle) -> Vec<usize> {
    let vs = cycle.vertices();
    g.neighbors(x).iter().copied().filter(|w| !vs.contains(w)).collect()
}

/// A bad 4-cycle `B` with `u_B = z` hanging off the prime `x`: `M(z)` and
/// some further neighbor `t` of `z` lie in `D`, and `(z, M(z), M(t), t)` is
/// bad.
fn cycle_at(g: &Graph, cfg: &DConfig, z: usize, x: usize) -> Option<BadFourCycle> {
    let d = &cfg.set;
    let m = &cfg.matching;
    if d.contains(z) {
        return None;
    }
    let zp = m.partner(z)?;
    g.neighbors(z).iter().copied().filter(|&t| t != x && t != zp && d.contains(t)).find_map(|t| {
        let c = BadFourCycle { u: z, u_prime: zp, v: m.partner(t)?, v_prime: t };
        c.is_bad(g, m, d).then_some(c)
    })
}

/// Builds one dependency tree per bad pair of `cfg`.
///
/// For each pair `{u, v}` (u < v) the root is `(u, M(u), v, M(v))`; every
/// prime without an unmatched neighbor must have a further bad cycle
/// attached to it, and the cycles must be vertex-disjoint. The chosen leaf
/// is the deepest, ties going to the smallest vertex id, and its primes
/// must lie in `w.x`.
pub fn extract_forest(
    g: &Graph,
    cfg: &DConfig,
    w: &TutteBergeWitness,
) -> Result<DependencyForest, ForestError> {
    let m = &cfg.matching;
    let mut owner = vec![false; g.n()];
    let mut trees = Vec::new();
    for bp in bad_pairs(g, &cfg.set) {
        let pair = (bp.u, bp.v);
        let fail = |kind, flips| ForestError { pair, kind, flips };
        let (Some(up), Some(vp)) = (m.partner(bp.u), m.partner(bp.v)) else {
            let vertex = if m.is_matched(bp.u) { bp.v } else { bp.u };
            return Err(fail(ForestErrorKind::UnmatchedPairVertex { vertex }, Vec::new()));
        };
        let root = BadFourCycle { u: bp.u, u_prime: up, v: bp.v, v_prime: vp };
        if !root.is_bad(g, m, &cfg.set) {
            return Err(fail(ForestErrorKind::NotABadCycle { cycle: root }, Vec::new()));
        }

        let mut tree = DependencyTree {
            pair,
            nodes: Vec::new(),
            arcs: Vec::new(),
            depth: Vec::new(),
            chosen_leaf: ChosenLeaf { node: 0, u_unmatched: 0, v_unmatched: 0 },
        };
        let claim = |owner: &mut Vec<bool>, c: &BadFourCycle| -> Result<(), ForestErrorKind> {
            for x in c.vertices() {
                if owner[x] {
                    return Err(ForestErrorKind::SharedVertex { vertex: x });
                }
            }
            for x in c.vertices() {
                owner[x] = true;
            }
            Ok(())
        };
        claim(&mut owner, &root).map_err(|k| fail(k, Vec::new()))?;
        tree.nodes.push(root);
        tree.depth.push(0);

        let mut unmatched_at: Vec<[Option<usize>; 2]> = Vec::new();
        let mut head = 0;
        while head < tree.nodes.len() {
            let a = tree.nodes[head];
            let mut seen = [None, None];
            for (side, x) in a.primes().into_iter().enumerate() {
                let outside = outside_neighbors(g, x, &a);
                if let Some(&z) = outside.iter().find(|&&z| !m.is_matched(z)) {
                    seen[side] = Some(z);
                    continue;
                }
                let Some(b) = outside.iter().find_map(|&z| cycle_at(g, cfg, z, x)) else {
                    let mut flips = tree.path_flips(m, head);
                    flips.push((x, m.partner(x).unwrap()));
                    return Err(fail(ForestErrorKind::MissingDependency { cycle: a, via: x }, flips));
                };
                claim(&mut owner, &b).map_err(|k| fail(k, tree.path_flips(m, head)))?;
                let to = tree.nodes.len();
                tree.nodes.push(b);
                tree.depth.push(tree.depth[head] + 1);
                tree.arcs.push(DependencyArc { from: head, to, via: x });
            }
            unmatched_at.push(seen);
            head += 1;
        }

        let leaf = (0..tree.nodes.len())
            .filter(|&i| tree.children(i).next().is_none())
            .min_by_key(|&i| (std::cmp::Reverse(tree.depth[i]), tree.nodes[i].min_vertex()))
            .unwrap();
        let c = tree.nodes[leaf];
        let leaf_fail = |detail: &str| {
            fail(
                ForestErrorKind::LeafCondition { cycle: c, detail: detail.to_string() },
                tree.path_flips(m, leaf),
            )
        };
        let [Some(uu), Some(vv)] = unmatched_at[leaf] else {
            return Err(leaf_fail("a prime has no unmatched neighbor"));
        };
        if uu == vv {
            return Err(leaf_fail("both primes see the same unmatched vertex"));
        }
        if !w.x.contains(c.u_prime) || !w.x.contains(c.v_prime) {
            return Err(leaf_fail("a prime lies outside the Tutte-Berge set"));
        }
        tree.chosen_leaf = ChosenLeaf { node: leaf, u_unmatched: uu, v_unmatched: vv };
        trees.push(tree);
    }
    Ok(DependencyForest { trees })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForestViolation {
    PairCoverage { expected: Vec<(usize, usize)>, found: Vec<(usize, usize)> },
    RootMismatch { tree: usize },
    NotBad { tree: usize, node: usize },
    Overlap { vertex: usize },
    ArcMismatch { tree: usize },
    InDegree { tree: usize, node: usize, indegree: usize },
    Unreachable { tree: usize, node: usize },
    UnsupportedPrime { tree: usize, node: usize, prime: usize },
    BadLeaf { tree: usize, detail: String },
}

/// Re-derives every structural property of `forest` from `g`, `cfg` and
/// `w`, independently of how it was built. Empty means consistent.
pub fn check_forest(
    g: &Graph,
    cfg: &DConfig,
    w: &TutteBergeWitness,
    forest: &DependencyForest,
) -> Vec<ForestViolation> {
    let m = &cfg.matching;
    let d = &cfg.set;
    let mut out = Vec::new();

    let expected: Vec<(usize, usize)> = bad_pairs(g, d).iter().map(|p| (p.u, p.v)).collect();
    let found: Vec<(usize, usize)> = forest.trees.iter().map(|t| t.pair).collect();
    if expected != found {
        out.push(ForestViolation::PairCoverage { expected, found });
    }

    let mut used = VertexSet::new(g.n());
    for (ti, t) in forest.trees.iter().enumerate() {
        let root = t.nodes[0];
        if (root.u, root.v) != t.pair {
            out.push(ForestViolation::RootMismatch { tree: ti });
        }
        for (ni, c) in t.nodes.iter().enumerate() {
            if !c.is_bad(g, m, d) {
                out.push(ForestViolation::NotBad { tree: ti, node: ni });
            }
            for x in c.vertices() {
                if !used.insert(x) {
                    out.push(ForestViolation::Overlap { vertex: x });
                }
            }
        }

        // the digraph on this tree's cycles, straight from the definition
        let mut arcs = BTreeSet::new();
        for (a, ca) in t.nodes.iter().enumerate() {
            for (b, cb) in t.nodes.iter().enumerate() {
                for x in ca.primes() {
                    if a != b && g.has_edge(x, cb.u) {
                        arcs.insert(DependencyArc { from: a, to: b, via: x });
                    }
                }
            }
        }
        if arcs != t.arcs.iter().copied().collect() {
            out.push(ForestViolation::ArcMismatch { tree: ti });
        }
        for node in 0..t.nodes.len() {
            let indegree = arcs.iter().filter(|a| a.to == node).count();
            if indegree != usize::from(node != 0) {
                out.push(ForestViolation::InDegree { tree: ti, node, indegree });
            }
        }
        let mut depth: Vec<Option<usize>> = vec![None; t.nodes.len()];
        let mut stack = vec![0];
        depth[0] = Some(0);
        while let Some(a) = stack.pop() {
            for arc in arcs.iter().filter(|arc| arc.from == a) {
                if depth[arc.to].is_none() {
                    depth[arc.to] = Some(depth[a].unwrap() + 1);
                    stack.push(arc.to);
                }
            }
        }
        for (node, r) in depth.iter().enumerate() {
            if r.is_none() {
                out.push(ForestViolation::Unreachable { tree: ti, node });
            }
        }
        for (ni, c) in t.nodes.iter().enumerate() {
            for x in c.primes() {
                let sees_unmatched = g.neighbors(x).iter().any(|&z| !m.is_matched(z));
                let has_arc = arcs.iter().any(|a| a.from == ni && a.via == x);
                if !sees_unmatched && !has_arc {
                    out.push(ForestViolation::UnsupportedPrime { tree: ti, node: ni, prime: x });
                }
            }
        }

        let leaf = t.chosen_leaf;
        let bad_leaf = |detail: &str| ForestViolation::BadLeaf { tree: ti, detail: detail.into() };
        let Some(c) = t.nodes.get(leaf.node) else {
            out.push(bad_leaf("leaf index out of range"));
            continue;
        };
        if arcs.iter().any(|a| a.from == leaf.node) {
            out.push(bad_leaf("chosen leaf has children"));
        }
        let deepest = (0..t.nodes.len())
            .filter(|&i| !arcs.iter().any(|a| a.from == i))
            .min_by_key(|&i| (std::cmp::Reverse(depth[i]), t.nodes[i].min_vertex()));
        if deepest != Some(leaf.node) {
            out.push(bad_leaf("not the deepest leaf"));
        }
        let ok_side = |x: usize, z: usize| g.has_edge(x, z) && !m.is_matched(z);
        if !ok_side(c.u_prime, leaf.u_unmatched) || !ok_side(c.v_prime, leaf.v_unmatched) {
            out.push(bad_leaf("recorded unmatched neighbors are wrong"));
        }
        if leaf.u_unmatched == leaf.v_unmatched {
            out.push(bad_leaf("unmatched neighbors coincide"));
        }
        if !w.x.contains(c.u_prime) || !w.x.contains(c.v_prime) {
            out.push(bad_leaf("prime outside the Tutte-Berge set"));
        }
    }
    out
}
