//! Local search for a transversal with few bad pairs.
//!
//! The neighborhood has two kinds of exchange: flipping the `D`-endpoint of
//! an unforced matching edge, and re-pairing the four vertices of two
//! matching edges that span a 4-cycle (with every admissible choice of
//! `D`-endpoints on the new edges). The search takes the steepest strictly
//! improving exchange; when none exists it tries to extract the dependency
//! forest, and on failure follows the moves the failure points at, or
//! wanders the plateau without revisiting a configuration.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::forest::{extract_forest, DependencyForest};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::locdom::family::{forced_endpoint, is_in_d_family};
use crate::locdom::{bad_pair_count, build_d_member, Chooser, DConfig};
use crate::matching::{maximum_matching, Matching, TutteBergeWitness};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Flip,
    Rewire,
    /// A chain of flips suggested by a failed forest extraction.
    Guided,
}

/// One applied exchange. `improving` is false for moves that keep the
/// bad-pair count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exchange {
    pub kind: MoveKind,
    pub improving: bool,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
    pub matching_removed: Vec<(usize, usize)>,
    pub matching_added: Vec<(usize, usize)>,
    pub bad_pairs: usize,
}

struct Move {
    kind: MoveKind,
    removed: Vec<usize>,
    added: Vec<usize>,
    m_remove: Vec<(usize, usize)>,
    m_add: Vec<(usize, usize)>,
}

impl Move {
    fn apply_set(&self, d: &VertexSet) -> VertexSet {
        let mut out = d.clone();
        for &x in &self.removed {
            out.remove(x);
        }
        for &x in &self.added {
            out.insert(x);
        }
        out
    }

    fn apply_matching(&self, m: &Matching) -> Matching {
        let mut out = m.clone();
        out.rewire(&self.m_remove, &self.m_add);
        out
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn candidate_moves(g: &Graph, cfg: &DConfig) -> Vec<Move> {
    let m = &cfg.matching;
    let d = &cfg.set;
    let mut moves = Vec::new();
    let edges = m.edges();
    for &(a, b) in &edges {
        if forced_endpoint(g, m, a, b).is_none() {
            let (x, y) = if d.contains(a) { (a, b) } else { (b, a) };
            moves.push(Move {
                kind: MoveKind::Flip,
                removed: vec![x],
                added: vec![y],
                m_remove: vec![],
                m_add: vec![],
            });
        }
    }

    let mut seen = HashSet::new();
    for &(p, q) in &edges {
        for &r in g.neighbors(p).iter().chain(g.neighbors(q)) {
            let Some(s) = m.partner(r) else { continue };
            let other = ordered(r, s);
            if other <= (p, q) || r == p || r == q {
                continue;
            }
            let mut pairings = Vec::new();
            if g.has_edge(p, r) && g.has_edge(q, s) {
                pairings.push([ordered(p, r), ordered(q, s)]);
            }
            if g.has_edge(p, s) && g.has_edge(q, r) {
                pairings.push([ordered(p, s), ordered(q, r)]);
            }
            for new in pairings {
                if !seen.insert(new) {
                    continue;
                }
                let old = [(p, q), other];
                let quad = [p, q, r, s];
                for pick in 0..4 {
                    let chosen = [
                        if pick & 1 == 0 { new[0].0 } else { new[0].1 },
                        if pick & 2 == 0 { new[1].0 } else { new[1].1 },
                    ];
                    // forcing depends only on the unmatched set, which a
                    // re-pairing leaves alone
                    let admissible = new
                        .iter()
                        .zip(chosen)
                        .all(|(&(x, y), c)| forced_endpoint(g, m, x, y).is_none_or(|f| f == c));
                    if !admissible {
                        continue;
                    }
                    let removed: Vec<usize> =
                        quad.iter().copied().filter(|&x| d.contains(x) && !chosen.contains(&x)).collect();
                    let added: Vec<usize> = chosen.iter().copied().filter(|&x| !d.contains(x)).collect();
                    moves.push(Move {
                        kind: MoveKind::Rewire,
                        removed,
                        added,
                        m_remove: old.to_vec(),
                        m_add: new.to_vec(),
                    });
                }
            }
        }
    }
    moves
}

/// Flips `(removed, added)` in order, returning `None` unless each is an
/// exchange across a matching edge and the result stays in the family.
fn guided_move(g: &Graph, cfg: &DConfig, flips: &[(usize, usize)]) -> Option<Move> {
    let mut d = cfg.set.clone();
    for &(x, y) in flips {
        if cfg.matching.partner(x) != Some(y) || !d.remove(x) || !d.insert(y) {
            return None;
        }
    }
    if !is_in_d_family(g, &cfg.matching, &d).ok {
        return None;
    }
    Some(Move {
        kind: MoveKind::Guided,
        removed: cfg.set.difference(&d).to_vec(),
        added: d.difference(&cfg.set).to_vec(),
        m_remove: vec![],
        m_add: vec![],
    })
}

pub(crate) enum Descent {
    /// No bad pairs left, or the forest extracted cleanly.
    Structured(DConfig, DependencyForest),
    Stuck,
    CapReached,
}

/// Runs the search from `cfg` for at most `cap` exchanges, appending each
/// applied exchange to `log`.
pub(crate) fn descend(
    g: &Graph,
    mut cfg: DConfig,
    w: &TutteBergeWitness,
    cap: usize,
    log: &mut Vec<Exchange>,
) -> Descent {
    let mut count = bad_pair_count(g, &cfg.set);
    let mut visited = HashSet::new();
    visited.insert((cfg.matching.clone(), cfg.set.clone()));

    let mut exchanges = 0;
    loop {
        if count == 0 {
            if let Ok(forest) = extract_forest(g, &cfg, w) {
                return Descent::Structured(cfg, forest);
            }
        }
        if exchanges >= cap {
            return Descent::CapReached;
        }

        let mut moves: Vec<Option<Move>> = candidate_moves(g, &cfg).into_iter().map(Some).collect();
        let scored: Vec<(usize, usize)> = moves
            .iter()
            .enumerate()
            .map(|(i, mv)| (bad_pair_count(g, &mv.as_ref().unwrap().apply_set(&cfg.set)), i))
            .collect();

        let mut chosen: Option<(Move, usize)> = None;
        if let Some(&(c, i)) = scored.iter().min().filter(|&&(c, _)| c < count) {
            chosen = Some((moves[i].take().unwrap(), c));
        }
        if chosen.is_none() {
            // a local minimum: either the structure is there, or the
            // extraction failure names a better place to look
            let flips = match extract_forest(g, &cfg, w) {
                Ok(forest) => return Descent::Structured(cfg, forest),
                Err(e) => e.flips,
            };
            if let Some(mv) = guided_move(g, &cfg, &flips) {
                let d = mv.apply_set(&cfg.set);
                let c = bad_pair_count(g, &d);
                if c <= count && !visited.contains(&(cfg.matching.clone(), d)) {
                    chosen = Some((mv, c));
                }
            }
        }
        if chosen.is_none() {
            for &(c, i) in &scored {
                if c != count {
                    continue;
                }
                let mv = moves[i].as_ref().unwrap();
                let key = (mv.apply_matching(&cfg.matching), mv.apply_set(&cfg.set));
                if !visited.contains(&key) {
                    chosen = Some((moves[i].take().unwrap(), c));
                    break;
                }
            }
        }
        let Some((mv, c)) = chosen else {
            return Descent::Stuck;
        };

        let m = mv.apply_matching(&cfg.matching);
        let d = mv.apply_set(&cfg.set);
        debug_assert!(is_in_d_family(g, &m, &d).ok);
        visited.insert((m.clone(), d.clone()));
        log.push(Exchange {
            kind: mv.kind,
            improving: c < count,
            removed: mv.removed,
            added: mv.added,
            matching_removed: mv.m_remove,
            matching_added: mv.m_add,
            bad_pairs: c,
        });
        cfg = DConfig::unchecked(g, m, d);
        count = c;
        exchanges += 1;
    }
}

/// The starting matching for a restart: the canonical maximum matching for
/// the fixed choosers, one found on a shuffled labelling for seeded ones.
pub(crate) fn restart_matching(g: &Graph, chooser: Chooser) -> Matching {
    let Chooser::Seeded(seed) = chooser else {
        return maximum_matching(g);
    };
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let h =
        Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).expect("relabelling is a bijection");
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let pairs = maximum_matching(&h).edges().into_iter().map(|(a, b)| (inv[a], inv[b]));
    Matching::from_pairs(g, pairs).expect("relabelled matching is a matching of g")
}

/// The chooser used by restart `i`: lower ids, higher ids, then seeds
/// `0, 1, ...`.
pub fn restart_chooser(i: usize) -> Chooser {
    match i {
        0 => Chooser::LowerId,
        1 => Chooser::HigherId,
        _ => Chooser::Seeded(i as u64 - 2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minimized {
    pub config: DConfig,
    pub forest: DependencyForest,
    pub restarts: usize,
    pub exchanges: Vec<Exchange>,
}

/// Searches for a configuration whose bad pairs have a valid dependency
/// forest, trying up to `restarts` starting points with `4 n^2` exchanges
/// each.
pub fn minimize_bad_pairs(g: &Graph, restarts: usize) -> Result<Minimized> {
    let m0 = maximum_matching(g);
    let w = crate::matching::witness_from_matching(g, &m0);
    let cap = 4 * g.n() * g.n();
    for i in 0..restarts {
        let chooser = restart_chooser(i);
        let start = build_d_member(g, &restart_matching(g, chooser), chooser)?;
        let mut exchanges = Vec::new();
        if let Descent::Structured(config, forest) = descend(g, start, &w, cap, &mut exchanges) {
            return Ok(Minimized { config, forest, restarts: i, exchanges });
        }
    }
    Err(Error::Internal(format!("no structured configuration after {restarts} restarts")))
}

/// Runs the search once from the given configuration (cap `4 n^2`).
pub fn minimize_from(g: &Graph, cfg: DConfig) -> Result<Minimized> {
    let w = crate::matching::witness_from_matching(g, &cfg.matching);
    let cap = 4 * g.n() * g.n();
    let mut exchanges = Vec::new();
    match descend(g, cfg, &w, cap, &mut exchanges) {
        Descent::Structured(config, forest) => Ok(Minimized { config, forest, restarts: 0, exchanges }),
        Descent::Stuck => Err(Error::Internal("search stuck on a plateau".into())),
        Descent::CapReached => Err(Error::Internal("search hit the exchange cap".into())),
    }
}
