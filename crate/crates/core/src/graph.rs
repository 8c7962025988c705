//! Simple undirected graphs over dense vertex ids.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and duplicate-free; symmetry is enforced at
/// construction time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinKind {
    Open,
    Closed,
}

impl fmt::Display for TwinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwinKind::Open => "open",
            TwinKind::Closed => "closed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwinPair {
    pub u: usize,
    pub v: usize,
    pub kind: TwinKind,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n() });
        }
        Ok(())
    }

    /// Open and closed neighborhoods of `v`.
    pub fn neighborhoods(&self, v: usize) -> Result<(VertexSet, VertexSet)> {
        self.check_vertex(v)?;
        let open = VertexSet::from_ids(self.n(), self.adj[v].iter().copied());
        let mut closed = open.clone();
        closed.insert(v);
        Ok((open, closed))
    }

    /// Re-checks the structural invariants; used by tests and after
    /// hand-built constructions.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for (u, list) in self.adj.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if i > 0 && list[i - 1] >= v {
                    return Err(Error::DuplicateEdge(u, v));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::Internal(format!("asymmetric adjacency {u}->{v}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn require_cubic(&self) -> Result<()> {
        match self.adj.iter().position(|l| l.len() != 3) {
            Some(v) => Err(Error::NotCubic { vertex: v, degree: self.degree(v) }),
            None => Ok(()),
        }
    }

    /// All unordered twin pairs, each reported once with `u < v`.
    ///
    /// Pairwise scan comparing sorted neighbor lists. Open twins are never
    /// adjacent and closed twins always are, so each pair has one kind.
    pub fn find_twins(&self) -> Vec<TwinPair> {
        let n = self.n();
        let closed: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut c = self.adj[v].clone();
                let pos = c.binary_search(&v).unwrap_err();
                c.insert(pos, v);
                c
            })
            .collect();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adj[u] == self.adj[v] {
                    out.push(TwinPair { u, v, kind: TwinKind::Open });
                } else if closed[u] == closed[v] {
                    out.push(TwinPair { u, v, kind: TwinKind::Closed });
                }
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        self.find_twins().is_empty()
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        self.adj.iter().position(Vec::is_empty)
    }

    /// Connected components in order of their smallest vertex, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&VertexSet::new(self.n()))
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] || removed.contains(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] && !removed.contains(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced by `vertices` (which must be sorted and
    /// duplicate-free), relabeled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> =
                    self.adj[v].iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj }
    }

    /// The same vertex set with every edge at `v` removed.
    pub fn without_vertex_edges(&self, v: usize) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, l)| if u == v { Vec::new() } else { l.iter().copied().filter(|&w| w != v).collect() })
            .collect();
        Graph { adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}
