//! Graphviz rendering of dependency forests.

use std::fmt::Write;

use super::forest::DependencyForest;

/// One cluster per tree; each node is a box listing its 4-cycle, arcs point
/// from a cycle to the cycle that depends on it through `via`. The chosen
/// leaf is drawn with a double border.
pub fn forest_to_dot(forest: &DependencyForest) -> String {
    let mut out = String::from("digraph forest {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (ti, t) in forest.trees.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{ti} {{");
        let _ = writeln!(out, "    label=\"pair {{{}, {}}}\";", t.pair.0, t.pair.1);
        for (ni, c) in t.nodes.iter().enumerate() {
            let extra = if ni == t.chosen_leaf.node { ", peripheries=2" } else { "" };
            let _ = writeln!(
                out,
                "    t{ti}n{ni} [label=\"u={} u'={}\\nv={} v'={}\"{extra}];",
                c.u, c.u_prime, c.v, c.v_prime
            );
        }
        for a in &t.arcs {
            let _ = writeln!(out, "    t{ti}n{} -> t{ti}n{} [label=\"via {}\"];", a.from, a.to, a.via);
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
