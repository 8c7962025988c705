//! Exact location-domination number by branch and bound.

use serde::Serialize;

use super::classify_set;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleOutcome {
    Exact {
        value: usize,
        witness: VertexSet,
        nodes: u64,
    },
    /// The node budget ran out; `upper_bound` is the best set size found.
    Unknown {
        upper_bound: usize,
        nodes: u64,
    },
}

impl OracleOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            OracleOutcome::Exact { value, .. } => Some(*value),
            OracleOutcome::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Undecided,
    In,
    Out,
}

struct Search<'g> {
    g: &'g Graph,
    state: Vec<State>,
    in_count: usize,
    best: usize,
    best_set: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    spread: usize,
}

impl Search<'_> {
    fn covered(&self, v: usize) -> bool {
        self.state[v] == State::In || self.g.neighbors(v).iter().any(|&w| self.state[w] == State::In)
    }

    fn search(&mut self) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let n = self.g.n();

        let mut uncovered = Vec::new();
        for v in 0..n {
            if !self.covered(v) {
                let open = self.state[v] == State::Undecided
                    || self.g.neighbors(v).iter().any(|&w| self.state[w] == State::Undecided);
                if !open {
                    return;
                }
                uncovered.push(v);
            }
        }
        let lower = uncovered.len().div_ceil(self.spread);
        if self.in_count + lower >= self.best {
            return;
        }

        // Vertices outside D whose neighborhood is fully decided have final
        // codes; any repeat is fatal for this branch.
        let mut finals: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if self.state[v] != State::Out {
                continue;
            }
            let nb = self.g.neighbors(v);
            if nb.iter().any(|&w| self.state[w] == State::Undecided) {
                continue;
            }
            finals.push(nb.iter().copied().filter(|&w| self.state[w] == State::In).collect());
        }
        finals.sort_unstable();
        if finals.windows(2).any(|w| w[0] == w[1]) {
            return;
        }

        let mut branch = None;
        let mut best_gain = 0;
        for v in 0..n {
            if self.state[v] != State::Undecided {
                continue;
            }
            let gain = uncovered.binary_search(&v).is_ok() as usize
                + self.g.neighbors(v).iter().filter(|w| uncovered.binary_search(w).is_ok()).count();
            if branch.is_none() || gain > best_gain {
                branch = Some(v);
                best_gain = gain;
            }
        }

        let Some(v) = branch else {
            // complete assignment; the checks above make it locating-dominating
            let d = VertexSet::from_ids(n, (0..n).filter(|&u| self.state[u] == State::In));
            debug_assert!(classify_set(self.g, &d).is_locating_dominating());
            self.best = self.in_count;
            self.best_set = d.to_vec();
            return;
        };

        self.state[v] = State::In;
        self.in_count += 1;
        self.search();
        self.in_count -= 1;
        if self.exhausted {
            self.state[v] = State::Undecided;
            return;
        }
        self.state[v] = State::Out;
        self.search();
        self.state[v] = State::Undecided;
    }
}

/// The location-domination number of `g` and a minimum witness, or
/// [`OracleOutcome::Unknown`] if more than `budget` search nodes are needed.
pub fn ld_number_exact(g: &Graph, budget: u64) -> Result<OracleOutcome> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.n();
    let mut s = Search {
        g,
        state: vec![State::Undecided; n],
        in_count: 0,
        best: n,
        best_set: (0..n).collect(),
        nodes: 0,
        budget,
        exhausted: false,
        spread: g.max_degree() + 1,
    };
    s.search();
    if s.exhausted {
        return Ok(OracleOutcome::Unknown { upper_bound: s.best, nodes: s.nodes });
    }
    let witness = VertexSet::from_ids(n, s.best_set.iter().copied());
    debug_assert!(classify_set(g, &witness).is_locating_dominating());
    Ok(OracleOutcome::Exact { value: s.best, witness, nodes: s.nodes })
}
