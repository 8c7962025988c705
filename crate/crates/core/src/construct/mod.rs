//! A locating-dominating set of at most half the order of a twin-free
//! cubic graph, built from a maximum matching.
//!
//! Per connected component: take a maximum matching and one endpoint of
//! each of its edges, search for a choice whose bad pairs all hang off
//! dependency forests, then repair those pairs by swapping along the trees
//! while adding a small dominating set of an auxiliary multigraph on
//! unmatched vertices. If the search never reaches the required structure
//! the component falls back to the exact oracle.

mod aux;
mod dot;
mod forest;
mod minimize;
mod propagate;

pub use aux::{build_aux, dominating_set_half, AuxEdge, AuxMultigraph};
pub use dot::forest_to_dot;
pub use forest::{
    check_forest, extract_forest, BadFourCycle, ChosenLeaf, DependencyArc, DependencyForest, DependencyTree,
    ForestError, ForestErrorKind, ForestViolation,
};
pub use minimize::{minimize_bad_pairs, minimize_from, restart_chooser, Exchange, Minimized, MoveKind};
pub use propagate::{propagate, Propagation, Swap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::locdom::{
    build_d_member, classify_set, ld_number_exact, Chooser, LdCertificate, OracleOutcome, DEFAULT_BUDGET,
};
use crate::matching::{maximum_matching, witness_from_matching};
use crate::vertex_set::VertexSet;
use minimize::{descend, restart_matching, Descent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Starting points tried per component before falling back.
    pub restarts: usize,
    /// Exchanges per restart are capped at `cap_factor * n^2`.
    pub cap_factor: usize,
    pub oracle_budget: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { restarts: 8, cap_factor: 4, oracle_budget: DEFAULT_BUDGET }
    }
}

/// Every change to the working set, in host vertex ids. Replaying
/// `removed`/`added` from the empty set yields the final set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Start {
        component: usize,
        attempt: usize,
        chooser: Chooser,
        matching: Vec<(usize, usize)>,
        removed: Vec<usize>,
        added: Vec<usize>,
        bad_pairs: usize,
    },
    Exchange {
        component: usize,
        #[serde(flatten)]
        exchange: Exchange,
    },
    Swap {
        component: usize,
        step: u8,
        tree: usize,
        node: usize,
        removed: usize,
        added: usize,
    },
    AddDominators {
        component: usize,
        added: Vec<usize>,
    },
    Fallback {
        component: usize,
        reason: String,
        removed: Vec<usize>,
        added: Vec<usize>,
    },
}

impl TraceEvent {
    /// `(removed, added)` for this event.
    pub fn delta(&self) -> (Vec<usize>, Vec<usize>) {
        match self {
            TraceEvent::Start { removed, added, .. } | TraceEvent::Fallback { removed, added, .. } => {
                (removed.clone(), added.clone())
            }
            TraceEvent::Exchange { exchange, .. } => (exchange.removed.clone(), exchange.added.clone()),
            TraceEvent::Swap { removed, added, .. } => (vec![*removed], vec![*added]),
            TraceEvent::AddDominators { added, .. } => (Vec::new(), added.clone()),
        }
    }
}

/// Applies every event of `trace` to the empty set over `n` vertices.
pub fn replay(n: usize, trace: &[TraceEvent]) -> VertexSet {
    let mut d = VertexSet::new(n);
    for e in trace {
        let (removed, added) = e.delta();
        for x in removed {
            d.remove(x);
        }
        for x in added {
            d.insert(x);
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub matching_number: usize,
    pub attempts: usize,
    pub fallback_used: bool,
    pub forest: Option<DependencyForest>,
    pub auxiliary: Option<AuxMultigraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    pub final_set: VertexSet,
    pub size: usize,
    /// `n / 2`.
    pub bound: usize,
    pub matching_number: usize,
    pub certificate: LdCertificate,
    pub components: Vec<ComponentReport>,
    pub trace: Vec<TraceEvent>,
    pub fallback_used: bool,
}

struct ComponentRun {
    set: VertexSet,
    events: Vec<TraceEvent>,
    report: ComponentReport,
}

fn relabel_all(v: &[usize], map: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| map[x]).collect()
}

fn relabel_pairs(v: &[(usize, usize)], map: &[usize]) -> Vec<(usize, usize)> {
    v.iter().map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect()
}

impl TraceEvent {
    fn relabel(self, map: &[usize]) -> Self {
        match self {
            TraceEvent::Start { component, attempt, chooser, matching, removed, added, bad_pairs } => {
                TraceEvent::Start {
                    component,
                    attempt,
                    chooser,
                    matching: relabel_pairs(&matching, map),
                    removed: relabel_all(&removed, map),
                    added: relabel_all(&added, map),
                    bad_pairs,
                }
            }
            TraceEvent::Exchange { component, exchange } => TraceEvent::Exchange {
                component,
                exchange: Exchange {
                    removed: relabel_all(&exchange.removed, map),
                    added: relabel_all(&exchange.added, map),
                    matching_removed: relabel_pairs(&exchange.matching_removed, map),
                    matching_added: relabel_pairs(&exchange.matching_added, map),
                    ..exchange
                },
            },
            TraceEvent::Swap { component, step, tree, node, removed, added } => {
                TraceEvent::Swap { component, step, tree, node, removed: map[removed], added: map[added] }
            }
            TraceEvent::AddDominators { component, added } => {
                TraceEvent::AddDominators { component, added: relabel_all(&added, map) }
            }
            TraceEvent::Fallback { component, reason, removed, added } => TraceEvent::Fallback {
                component,
                reason,
                removed: relabel_all(&removed, map),
                added: relabel_all(&added, map),
            },
        }
    }
}

/// Runs the matching-based construction on one connected twin-free cubic
/// graph `g`, labelling events with `component`.
fn construct_component(g: &Graph, component: usize, opts: &ConstructOptions) -> Result<ComponentRun> {
    let n = g.n();
    let m0 = maximum_matching(g);
    let w = witness_from_matching(g, &m0);
    let cap = opts.cap_factor * n * n;
    let mut events = Vec::new();
    let mut current = VertexSet::new(n);
    let mut last_failure = String::from("no restarts allowed");

    for attempt in 0..opts.restarts {
        let chooser = restart_chooser(attempt);
        let start = build_d_member(g, &restart_matching(g, chooser), chooser)?;
        events.push(TraceEvent::Start {
            component,
            attempt,
            chooser,
            matching: start.matching.edges(),
            removed: current.difference(&start.set).to_vec(),
            added: start.set.difference(&current).to_vec(),
            bad_pairs: crate::locdom::bad_pair_count(g, &start.set),
        });
        current = start.set.clone();

        let mut log = Vec::new();
        let outcome = descend(g, start, &w, cap, &mut log);
        for exchange in log {
            for &x in &exchange.removed {
                current.remove(x);
            }
            for &x in &exchange.added {
                current.insert(x);
            }
            events.push(TraceEvent::Exchange { component, exchange });
        }
        let (cfg, forest) = match outcome {
            Descent::Structured(cfg, forest) => (cfg, forest),
            Descent::Stuck => {
                last_failure = format!("attempt {attempt} stuck on a plateau");
                continue;
            }
            Descent::CapReached => {
                last_failure = format!("attempt {attempt} hit the exchange cap");
                continue;
            }
        };
        let violations = check_forest(g, &cfg, &w, &forest);
        if !violations.is_empty() {
            last_failure = format!("attempt {attempt}: forest check failed: {violations:?}");
            continue;
        }
        let h = build_aux(n, &forest);
        let prop = h
            .validate()
            .and_then(|_| dominating_set_half(&h))
            .and_then(|dstar| propagate(g, &cfg, &forest, &h, &dstar));
        let prop = match prop {
            Ok(p) => p,
            Err(e) => {
                last_failure = format!("attempt {attempt}: {e}");
                continue;
            }
        };
        for s in &prop.swaps {
            events.push(TraceEvent::Swap {
                component,
                step: s.step,
                tree: s.tree,
                node: s.node,
                removed: s.removed,
                added: s.added,
            });
        }
        events.push(TraceEvent::AddDominators { component, added: prop.dominators.to_vec() });
        return Ok(ComponentRun {
            set: prop.set,
            events,
            report: ComponentReport {
                vertices: (0..n).collect(),
                matching_number: m0.len(),
                attempts: attempt + 1,
                fallback_used: false,
                forest: Some(forest),
                auxiliary: Some(h),
            },
        });
    }

    let witness = match ld_number_exact(g, opts.oracle_budget)? {
        OracleOutcome::Exact { witness, .. } => witness,
        OracleOutcome::Unknown { nodes, .. } => return Err(Error::OracleBudgetExhausted { nodes }),
    };
    events.push(TraceEvent::Fallback {
        component,
        reason: last_failure,
        removed: current.difference(&witness).to_vec(),
        added: witness.difference(&current).to_vec(),
    });
    Ok(ComponentRun {
        set: witness,
        events,
        report: ComponentReport {
            vertices: (0..n).collect(),
            matching_number: m0.len(),
            attempts: opts.restarts,
            fallback_used: true,
            forest: None,
            auxiliary: None,
        },
    })
}

/// [`construct_with`] using the default options.
pub fn construct(g: &Graph) -> Result<ConstructionResult> {
    construct_with(g, &ConstructOptions::default())
}

/// A verified locating-dominating set of the twin-free cubic graph `g` with
/// at most `n / 2` vertices.
pub fn construct_with(g: &Graph, opts: &ConstructOptions) -> Result<ConstructionResult> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    g.require_cubic()?;
    if let Some(t) = g.find_twins().first() {
        return Err(Error::NotTwinFree { u: t.u, v: t.v, kind: t.kind });
    }

    let n = g.n();
    let mut final_set = VertexSet::new(n);
    let mut trace = Vec::new();
    let mut components = Vec::new();
    for (ci, verts) in g.components().into_iter().enumerate() {
        let local = g.induced(&verts);
        let run = construct_component(&local, ci, opts)?;
        for x in &run.set {
            final_set.insert(verts[x]);
        }
        trace.extend(run.events.into_iter().map(|e| e.relabel(&verts)));
        let r = run.report;
        components.push(ComponentReport {
            vertices: verts.clone(),
            forest: r.forest.map(|f| f.relabel(&verts)),
            auxiliary: r.auxiliary.map(|h| h.relabel(n, &verts)),
            ..r
        });
    }

    let certificate = classify_set(g, &final_set);
    if !certificate.is_locating_dominating() {
        return Err(Error::Internal(format!("final set fails: {:?}", certificate.violations)));
    }
    if 2 * final_set.len() > n {
        return Err(Error::Internal(format!(
            "final set has {} vertices, above n/2 for n = {n}",
            final_set.len()
        )));
    }
    if replay(n, &trace) != final_set {
        return Err(Error::Internal("trace does not replay to the final set".into()));
    }
    let matching_number = components.iter().map(|c| c.matching_number).sum();
    let fallback_used = components.iter().any(|c| c.fallback_used);
    Ok(ConstructionResult {
        size: final_set.len(),
        final_set,
        bound: n / 2,
        matching_number,
        certificate,
        components,
        trace,
        fallback_used,
    })
}
