use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use locdom::generators::random_cubic;
use locdom::locdom::{bad_pairs, build_d_member, classify_set, Chooser};
use locdom::matching::{maximum_matching, tutte_berge_witness, validate_structure};
use locdom::{parse_graph6, write_graph6, Graph, TwinKind, VertexSet};

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Largest matching by trying every edge subset.
fn brute_matching_number(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = 0;
    for mask in 0u64..1 << edges.len() {
        let mut used = 0u64;
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used >> u & 1 == 1 || used >> v & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << u | 1 << v;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Quadratic reference: dominating iff no empty code, locating iff all
/// codes distinct.
fn naive_ld(g: &Graph, d: &[bool]) -> (bool, bool) {
    let n = g.n();
    let code = |v: usize| -> Vec<usize> { (0..n).filter(|&w| d[w] && g.has_edge(v, w)).collect() };
    let outside: Vec<usize> = (0..n).filter(|&v| !d[v]).collect();
    let dominating = outside.iter().all(|&v| !code(v).is_empty());
    let mut locating = true;
    for (i, &u) in outside.iter().enumerate() {
        for &v in &outside[i + 1..] {
            if code(u) == code(v) {
                locating = false;
            }
        }
    }
    (dominating, locating)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn graph6_round_trip(g in arb_graph(8)) {
        let s = write_graph6(&g);
        prop_assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn classify_matches_reference(g in arb_graph(9), bits in any::<u16>()) {
        let d: Vec<bool> = (0..g.n()).map(|i| bits >> i & 1 == 1).collect();
        let set = VertexSet::from_ids(g.n(), (0..g.n()).filter(|&i| d[i]));
        let cert = classify_set(&g, &set);
        let (dom, loc) = naive_ld(&g, &d);
        prop_assert_eq!(cert.is_locating_dominating(), dom && loc);
        prop_assert_eq!(cert.violations.is_empty(), dom && loc);
        let naive_bad = bad_pairs(&g, &set).len();
        prop_assert_eq!(naive_bad == 0, loc);
        if dom && loc {
            // adding any vertex keeps the set locating-dominating
            for v in 0..g.n() {
                let mut bigger = set.clone();
                bigger.insert(v);
                prop_assert!(classify_set(&g, &bigger).is_locating_dominating());
            }
        }
    }

    #[test]
    fn twin_scan_matches_definition(g in arb_graph(9)) {
        let n = g.n();
        let twins = g.find_twins();
        for u in 0..n {
            for v in u + 1..n {
                let (ou, cu) = g.neighborhoods(u).unwrap();
                let (ov, cv) = g.neighborhoods(v).unwrap();
                let kind = if ou == ov {
                    Some(TwinKind::Open)
                } else if cu == cv {
                    Some(TwinKind::Closed)
                } else {
                    None
                };
                let found = twins.iter().find(|t| t.u == u && t.v == v).map(|t| t.kind);
                prop_assert_eq!(found, kind);
            }
        }
    }
}

#[test]
fn matching_number_equals_witness_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let n = rng.gen_range(1..=14);
        let p = [0.1, 0.2, 0.35, 0.5, 0.8][i % 5];
        let g = gnp(n, p, &mut rng);
        let m = maximum_matching(&g);
        let w = tutte_berge_witness(&g);
        assert_eq!(m.len(), w.value, "{g:?}");
        assert_eq!(m.unmatched().len(), w.odd_count() - w.x.len());
        let report = validate_structure(&g, &m, &w);
        assert!(report.passed, "{g:?}: {:?}", report.violations);
        if n <= 8 {
            assert_eq!(m.len(), brute_matching_number(&g), "{g:?}");
        }
        assert_eq!(maximum_matching(&g), m);
    }
}

#[test]
fn transversal_properties_on_cubic_graphs() {
    let mut checked = 0;
    let mut seed = 0;
    while checked < 200 {
        let n = [8, 10, 12, 14, 16][seed as usize % 5];
        let g = random_cubic(n, seed).unwrap();
        seed += 1;
        if !g.is_twin_free() {
            continue;
        }
        let m = maximum_matching(&g);
        let cfg = build_d_member(&g, &m, Chooser::Seeded(seed)).unwrap();
        let cert = classify_set(&g, &cfg.set);
        assert!(cert
            .violations
            .iter()
            .all(|v| !matches!(v, locdom::locdom::LdViolation::Undominated { .. })));
        for z in m.unmatched() {
            assert!(cfg.codes.k(z).unwrap() >= 2);
        }
        for p in bad_pairs(&g, &cfg.set) {
            assert_eq!(p.common_code.len(), 2, "{g:?} {p:?}");
        }
        checked += 1;
    }
}
