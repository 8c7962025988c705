//! Resolving the bad pairs of a minimized transversal by swaps along the
//! dependency trees.

use serde::Serialize;

use super::aux::AuxMultigraph;
use super::forest::DependencyForest;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::locdom::{bad_pairs, classify_set, DConfig};
use crate::vertex_set::VertexSet;

/// One exchange `removed -> added` made while walking tree `tree` from its
/// chosen leaf towards the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Swap {
    pub step: u8,
    pub tree: usize,
    pub node: usize,
    pub removed: usize,
    pub added: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Propagation {
    /// `D''`, the modified transversal, before the auxiliary dominators are
    /// added.
    pub modified: VertexSet,
    pub dominators: VertexSet,
    pub set: VertexSet,
    pub swaps: Vec<Swap>,
    /// Bad pairs left after the first step, as `(u, v)`.
    pub after_step_one: Vec<(usize, usize)>,
}

fn swap_along_path(
    cfg: &DConfig,
    forest: &DependencyForest,
    tree: usize,
    start_prime: usize,
    step: u8,
    d: &mut VertexSet,
    swaps: &mut Vec<Swap>,
) -> Result<()> {
    let t = &forest.trees[tree];
    let mut node = t.chosen_leaf.node;
    let mut prime = start_prime;
    loop {
        let mate = cfg.matching.partner(prime).expect("primes are matched");
        if !d.remove(prime) || !d.insert(mate) {
            return Err(Error::Internal(format!("swap {prime} -> {mate} in tree {tree} is not an exchange")));
        }
        swaps.push(Swap { step, tree, node, removed: prime, added: mate });
        match t.parent_arc(node) {
            Some(arc) => {
                node = arc.from;
                prime = arc.via;
            }
            None => return Ok(()),
        }
    }
}

/// The leaf prime of `tree` adjacent to the auxiliary vertex `c`.
fn leaf_prime_towards(forest: &DependencyForest, tree: usize, c: usize) -> usize {
    let t = &forest.trees[tree];
    let leaf = t.leaf();
    if c == t.chosen_leaf.u_unmatched {
        leaf.u_prime
    } else {
        leaf.v_prime
    }
}

/// Orders the edges of a path or cycle component of `h - dstar`, each
/// directed `(edge, tail)`. Paths start at their smaller-id end, cycles at
/// their smallest vertex heading to its smaller neighbor.
fn orient_component(h: &AuxMultigraph, dstar: &VertexSet, comp: &[usize]) -> Result<Vec<(usize, usize)>> {
    let live = |i: usize| !dstar.contains(h.edges[i].a) && !dstar.contains(h.edges[i].b);
    let incident = |x: usize| -> Vec<usize> { h.incident(x).into_iter().filter(|&i| live(i)).collect() };
    if let Some(&x) = comp.iter().find(|&&x| incident(x).len() > 2) {
        return Err(Error::Internal(format!("auxiliary vertex {x} keeps degree above 2")));
    }
    let start = comp
        .iter()
        .copied()
        .filter(|&x| incident(x).len() == 1)
        .min()
        .unwrap_or_else(|| *comp.iter().min().unwrap());
    let mut used = vec![false; h.edges.len()];
    let mut out = Vec::new();
    let mut cur = start;
    loop {
        let next =
            incident(cur).into_iter().filter(|&i| !used[i]).min_by_key(|&i| (h.edges[i].other(cur), i));
        let Some(i) = next else { break };
        used[i] = true;
        out.push((i, cur));
        cur = h.edges[i].other(cur);
    }
    let total: usize = comp.iter().map(|&x| incident(x).len()).sum::<usize>() / 2;
    if out.len() != total {
        return Err(Error::Internal("auxiliary component is not a path or cycle".into()));
    }
    Ok(out)
}

/// Turns the minimized configuration into a locating-dominating set
/// `D'' ∪ D*` and checks the result.
///
/// Step 1 resolves every tree whose auxiliary edge touches `dstar`; step 2
/// walks the remaining path and cycle components of `h - dstar` so that no
/// auxiliary vertex loses more than one neighbor from `D`.
pub fn propagate(
    g: &Graph,
    cfg: &DConfig,
    forest: &DependencyForest,
    h: &AuxMultigraph,
    dstar: &VertexSet,
) -> Result<Propagation> {
    let mut d = cfg.set.clone();
    let mut swaps = Vec::new();

    let mut resolved = Vec::new();
    for e in &h.edges {
        let start = if dstar.contains(e.a) {
            e.a
        } else if dstar.contains(e.b) {
            e.b
        } else {
            continue;
        };
        let prime = leaf_prime_towards(forest, e.tree, start);
        swap_along_path(cfg, forest, e.tree, prime, 1, &mut d, &mut swaps)?;
        resolved.push(e.pair);
    }

    let original: Vec<(usize, usize)> = bad_pairs(g, &cfg.set).iter().map(|p| (p.u, p.v)).collect();
    let after_step_one: Vec<(usize, usize)> =
        bad_pairs(g, &d.union(dstar)).iter().map(|p| (p.u, p.v)).collect();
    if let Some(p) = after_step_one.iter().find(|p| !original.contains(p) || resolved.contains(p)) {
        return Err(Error::Internal(format!("step 1 left or created bad pair {p:?}")));
    }

    let rest: Vec<usize> = h.vertices.iter().copied().filter(|&x| !dstar.contains(x)).collect();
    let mut seen = VertexSet::new(h.order);
    for &x in &rest {
        if seen.contains(x) {
            continue;
        }
        let mut comp = vec![x];
        seen.insert(x);
        let mut i = 0;
        while i < comp.len() {
            for j in h.incident(comp[i]) {
                let y = h.edges[j].other(comp[i]);
                if !dstar.contains(y) && seen.insert(y) {
                    comp.push(y);
                }
            }
            i += 1;
        }
        for (edge, tail) in orient_component(h, dstar, &comp)? {
            let prime = leaf_prime_towards(forest, h.edges[edge].tree, tail);
            swap_along_path(cfg, forest, h.edges[edge].tree, prime, 2, &mut d, &mut swaps)?;
        }
    }

    let removed = cfg.set.difference(&d);
    for &c in &rest {
        let lost = g.neighbors(c).iter().filter(|&&w| removed.contains(w)).count();
        if lost > 1 {
            return Err(Error::Internal(format!("auxiliary vertex {c} lost {lost} dominators")));
        }
    }

    let set = d.union(dstar);
    let cert = classify_set(g, &set);
    if !cert.is_locating_dominating() {
        return Err(Error::Internal(format!("propagated set fails: {:?}", cert.violations)));
    }
    if 2 * set.len() > 2 * cfg.matching.len() + h.vertices.len() {
        return Err(Error::Internal(format!(
            "propagated set has {} vertices, above the bound {} + {}/2",
            set.len(),
            cfg.matching.len(),
            h.vertices.len()
        )));
    }
    Ok(Propagation { modified: d, dominators: dstar.clone(), set, swaps, after_step_one })
}
