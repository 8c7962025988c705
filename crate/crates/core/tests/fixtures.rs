use std::collections::BTreeSet;

use locdom::construct::{
    build_aux, check_forest, dominating_set_half, extract_forest, forest_to_dot, propagate, BadFourCycle,
};
use locdom::fixtures::{dependency_chain, leaf_triangle, odd_components_example};
use locdom::locdom::{bad_pairs, classify_set, is_in_d_family, DConfig};
use locdom::matching::{maximum_matching, tutte_berge_witness, validate_structure, TutteBergeWitness};
use locdom::VertexSet;

/// Cycles of a tree keyed by identity, arcs as (from, to, via).
fn arc_set(t: &locdom::construct::DependencyTree) -> BTreeSet<(BadFourCycle, BadFourCycle, usize)> {
    t.arcs.iter().map(|a| (t.nodes[a.from], t.nodes[a.to], a.via)).collect()
}

#[test]
fn chain_configuration_is_valid_and_maximum() {
    let f = dependency_chain();
    assert!(f.graph.max_degree() <= 3);
    assert!(f.graph.is_twin_free());
    assert_eq!(maximum_matching(&f.graph).len(), f.matching.len());
    assert_eq!(f.matching.len(), 25);
    assert_eq!(f.matching.unmatched(), f.unmatched.to_vec());
    assert!(is_in_d_family(&f.graph, &f.matching, &f.set).ok);

    let pairs: Vec<(usize, usize)> = bad_pairs(&f.graph, &f.set).iter().map(|p| (p.u, p.v)).collect();
    assert_eq!(pairs, vec![(f.cycles[0].u, f.cycles[0].v)]);

    let cfg = DConfig::new(&f.graph, f.matching.clone(), f.set.clone()).unwrap();
    for c in &f.cycles {
        assert!(c.is_bad(&f.graph, &cfg.matching, &cfg.set), "{c:?}");
    }
}

#[test]
fn chain_forest_shape() {
    let f = dependency_chain();
    let [r, c1, c2, c3, c4, c5] = f.cycles;
    let w = tutte_berge_witness(&f.graph);
    let cfg = DConfig::new(&f.graph, f.matching.clone(), f.set.clone()).unwrap();
    let forest = extract_forest(&f.graph, &cfg, &w).unwrap();
    assert!(check_forest(&f.graph, &cfg, &w, &forest).is_empty());

    assert_eq!(forest.trees.len(), 1);
    let t = &forest.trees[0];
    assert_eq!(t.nodes[0], r);
    let nodes: BTreeSet<_> = t.nodes.iter().copied().collect();
    assert_eq!(nodes, BTreeSet::from(f.cycles));
    let expected = BTreeSet::from([
        (r, c1, r.u_prime),
        (r, c2, r.v_prime),
        (c1, c3, c1.v_prime),
        (c1, c4, c1.u_prime),
        (c3, c5, c3.u_prime),
    ]);
    assert_eq!(arc_set(t), expected);

    assert_eq!(*t.leaf(), c5);
    assert_eq!((t.chosen_leaf.u_unmatched, t.chosen_leaf.v_unmatched), (42, 43));
    for x in c5.primes() {
        assert!(w.x.contains(x));
    }

    let dot = forest_to_dot(&forest);
    assert_eq!(dot.matches(" -> ").count(), 5);
    assert_eq!(dot.matches("peripheries=2").count(), 1);
}

#[test]
fn chain_aux_and_swaps() {
    let f = dependency_chain();
    let [r, c1, _, c3, _, c5] = f.cycles;
    let w = tutte_berge_witness(&f.graph);
    let cfg = DConfig::new(&f.graph, f.matching.clone(), f.set.clone()).unwrap();
    let forest = extract_forest(&f.graph, &cfg, &w).unwrap();

    let h = build_aux(f.graph.n(), &forest);
    h.validate().unwrap();
    assert_eq!(h.vertices, vec![42, 43]);
    assert_eq!(h.edges.len(), 1);
    assert_eq!((h.edges[0].a, h.edges[0].b), (42, 43));

    let dstar = dominating_set_half(&h).unwrap();
    assert_eq!(dstar.to_vec(), vec![42]);

    let out = propagate(&f.graph, &cfg, &forest, &h, &dstar).unwrap();
    let swaps: Vec<(usize, usize)> = out.swaps.iter().map(|s| (s.removed, s.added)).collect();
    assert_eq!(swaps, vec![(c5.u_prime, c5.u), (c3.u_prime, c3.u), (c1.v_prime, c1.v), (r.u_prime, r.u)]);
    assert!(out.swaps.iter().all(|s| s.step == 1));

    let cert = classify_set(&f.graph, &out.set);
    assert!(cert.is_locating_dominating(), "{:?}", cert.violations);
    assert_eq!(out.set.len(), cfg.matching.len() + 1);
    assert!(out.after_step_one.is_empty());

    // starting from the other endpoint walks the other side of the leaf
    let other = VertexSet::from_ids(f.graph.n(), [43]);
    let out = propagate(&f.graph, &cfg, &forest, &h, &other).unwrap();
    assert_eq!((out.swaps[0].removed, out.swaps[0].added), (c5.v_prime, c5.v));
    assert_eq!(out.swaps.len(), 4);
    assert!(classify_set(&f.graph, &out.set).is_locating_dominating());
}

#[test]
fn triangle_needs_the_second_step() {
    let f = leaf_triangle();
    assert!(f.graph.is_twin_free());
    assert_eq!(maximum_matching(&f.graph).len(), f.matching.len());
    let w = tutte_berge_witness(&f.graph);
    let cfg = DConfig::new(&f.graph, f.matching.clone(), f.set.clone()).unwrap();
    assert_eq!(bad_pairs(&f.graph, &cfg.set).len(), 3);

    let forest = extract_forest(&f.graph, &cfg, &w).unwrap();
    assert!(check_forest(&f.graph, &cfg, &w, &forest).is_empty());
    assert!(forest.trees.iter().all(|t| t.nodes.len() == 1));

    let h = build_aux(f.graph.n(), &forest);
    h.validate().unwrap();
    assert_eq!(h.vertices, f.unmatched.to_vec());
    assert_eq!(h.edges.len(), 3);
    let dstar = dominating_set_half(&h).unwrap();
    assert_eq!(dstar.to_vec(), vec![24]);

    let out = propagate(&f.graph, &cfg, &forest, &h, &dstar).unwrap();
    let steps: Vec<u8> = out.swaps.iter().map(|s| s.step).collect();
    assert_eq!(steps, vec![1, 1, 2]);
    // the surviving edge 25-26 is walked from 25, so the prime next to 25
    // in the middle cycle goes
    let c = f.cycles[1];
    assert_eq!((out.swaps[2].removed, out.swaps[2].added), (c.u_prime, c.u));
    // bad pairs after step 1 are a subset of the originals, untouched by D*
    assert_eq!(out.after_step_one, vec![(c.u, c.v)]);
    assert!(classify_set(&f.graph, &out.set).is_locating_dominating());
    assert!(2 * out.set.len() <= 2 * cfg.matching.len() + h.vertices.len());
}

#[test]
fn odd_components_example_structure() {
    let g = odd_components_example();
    let m = maximum_matching(&g);
    assert_eq!(m.len(), 9);
    assert_eq!(m.unmatched().len(), 2);

    let x = VertexSet::from_ids(20, [0, 1, 2]);
    let w = TutteBergeWitness::for_set(&g, x);
    assert_eq!(w.odd_count(), 5);
    assert_eq!(w.value, 9);
    let report = validate_structure(&g, &m, &w);
    assert!(report.passed, "{:?}", report.violations);

    // the canonical witness is a different minimizer
    let canonical = tutte_berge_witness(&g);
    assert_eq!(canonical.x.to_vec(), vec![0, 1]);
    assert_eq!(canonical.value, 9);
    assert!(validate_structure(&g, &m, &canonical).passed);
}
