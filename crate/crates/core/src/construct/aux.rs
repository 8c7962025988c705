//! The auxiliary multigraph on unmatched vertices and a dominating set of
//! at most half its order.

use std::collections::VecDeque;

use serde::Serialize;

use super::forest::DependencyForest;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// One edge per dependency tree, joining the unmatched neighbors of its
/// chosen leaf. `a` sees the leaf's `u'`, `b` sees its `v'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuxEdge {
    pub a: usize,
    pub b: usize,
    pub tree: usize,
    pub pair: (usize, usize),
}

impl AuxEdge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A multigraph on the unmatched vertices that some edge touches (ids are
/// host ids, `order` is the host order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxMultigraph {
    pub order: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<AuxEdge>,
}

impl AuxMultigraph {
    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().map(|e| usize::from(e.a == x) + usize::from(e.b == x)).sum()
    }

    /// Incident edge indices of `x`, ascending.
    pub fn incident(&self, x: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].a == x || self.edges[i].b == x).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|&x| self.degree(x)).max().unwrap_or(0)
    }

    /// Maps local ids through `map` into a host graph of order `order`.
    pub fn relabel(&self, order: usize, map: &[usize]) -> Self {
        let mut vertices: Vec<usize> = self.vertices.iter().map(|&x| map[x]).collect();
        vertices.sort_unstable();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (p, q) = (map[e.pair.0], map[e.pair.1]);
                AuxEdge { a: map[e.a], b: map[e.b], pair: (p.min(q), p.max(q)), ..*e }
            })
            .collect();
        AuxMultigraph { order, vertices, edges }
    }

    /// Loop-free, endpoints are vertices, degree at most 3.
    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if e.a == e.b {
                return Err(Error::Internal(format!("auxiliary loop at {}", e.a)));
            }
            for x in [e.a, e.b] {
                if self.vertices.binary_search(&x).is_err() {
                    return Err(Error::Internal(format!(
                        "auxiliary edge endpoint {x} missing from the vertex list"
                    )));
                }
            }
        }
        if self.max_degree() > 3 {
            return Err(Error::Internal("auxiliary multigraph has degree above 3".into()));
        }
        Ok(())
    }
}

/// One edge per tree, from its chosen leaf, in tree order.
pub fn build_aux(order: usize, forest: &DependencyForest) -> AuxMultigraph {
    let edges: Vec<AuxEdge> = forest
        .trees
        .iter()
        .enumerate()
        .map(|(tree, t)| AuxEdge {
            a: t.chosen_leaf.u_unmatched,
            b: t.chosen_leaf.v_unmatched,
            tree,
            pair: t.pair,
        })
        .collect();
    let mut vertices: Vec<usize> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    AuxMultigraph { order, vertices, edges }
}

/// A dominating set of `h` with at most `|V(h)| / 2` vertices: in each
/// component, the smaller parity class of a BFS tree from its smallest
/// vertex, ties to the class of the root.
pub fn dominating_set_half(h: &AuxMultigraph) -> Result<VertexSet> {
    let mut level: Vec<Option<usize>> = vec![None; h.order];
    let mut out = VertexSet::new(h.order);
    for &root in &h.vertices {
        if level[root].is_some() {
            continue;
        }
        let mut classes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        level[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let lx = level[x].unwrap();
            classes[lx % 2].push(x);
            let mut nbrs: Vec<usize> = h.incident(x).into_iter().map(|i| h.edges[i].other(x)).collect();
            nbrs.sort_unstable();
            for y in nbrs {
                if level[y].is_none() {
                    level[y] = Some(lx + 1);
                    queue.push_back(y);
                }
            }
        }
        if classes[1].is_empty() {
            return Err(Error::IsolatedVertex(root));
        }
        let pick = if classes[1].len() < classes[0].len() { 1 } else { 0 };
        for &x in &classes[pick] {
            out.insert(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multigraph(order: usize, edges: &[(usize, usize)]) -> AuxMultigraph {
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        AuxMultigraph {
            order,
            vertices,
            edges: edges
                .iter()
                .enumerate()
                .map(|(tree, &(a, b))| AuxEdge { a, b, tree, pair: (0, 0) })
                .collect(),
        }
    }

    fn dominates(h: &AuxMultigraph, d: &VertexSet) -> bool {
        h.vertices
            .iter()
            .all(|&x| d.contains(x) || h.incident(x).iter().any(|&i| d.contains(h.edges[i].other(x))))
    }

    #[test]
    fn half_dominating_examples() {
        let cases: Vec<AuxMultigraph> = vec![
            multigraph(2, &[(0, 1)]),
            multigraph(2, &[(0, 1), (0, 1)]),
            multigraph(3, &[(0, 1), (1, 2)]),
            multigraph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
            multigraph(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]),
            multigraph(7, &[(0, 1), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)]),
        ];
        for h in &cases {
            h.validate().unwrap();
            let d = dominating_set_half(h).unwrap();
            assert!(dominates(h, &d), "{h:?}");
            assert!(2 * d.len() <= h.vertices.len(), "{h:?}");
        }
        // the path 0-1-2 takes its middle
        assert_eq!(dominating_set_half(&cases[2]).unwrap().to_vec(), vec![1]);
        // equal classes keep the root's
        assert_eq!(dominating_set_half(&cases[0]).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let mut h = multigraph(3, &[(0, 1)]);
        h.vertices.push(2);
        assert_eq!(dominating_set_half(&h), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn validate_rejects_loops_and_high_degree() {
        assert!(multigraph(2, &[(1, 1)]).validate().is_err());
        assert!(multigraph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).validate().is_err());
    }
}
