use locdom::construct::{check_forest, minimize_bad_pairs, minimize_from, replay, TraceEvent};
use locdom::generators::{complete, complete_bipartite, petersen, prism, random_cubic};
use locdom::locdom::{bad_pairs, classify_set, is_in_d_family, ld_number_exact, DConfig, DEFAULT_BUDGET};
use locdom::matching::witness_from_matching;
use locdom::{construct, Error, Graph, Matching, TwinKind, VertexSet};

fn perfect_matchings(g: &Graph) -> Vec<Matching> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << edges.len() {
        if mask.count_ones() as usize * 2 != g.n() {
            continue;
        }
        let chosen = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        if let Ok(m) = Matching::from_pairs(g, chosen) {
            out.push(m);
        }
    }
    out
}

fn transversals(m: &Matching) -> Vec<VertexSet> {
    let edges = m.edges();
    (0u64..1 << edges.len())
        .map(|mask| {
            let ids = edges.iter().enumerate().map(|(i, &(a, b))| if mask >> i & 1 == 1 { b } else { a });
            VertexSet::from_ids(m.order(), ids)
        })
        .collect()
}

#[test]
fn every_admissible_start_on_the_cube_minimizes() {
    let g = prism(4).unwrap();
    let pms = perfect_matchings(&g);
    assert_eq!(pms.len(), 9);
    let mut starts = 0;
    for m in pms {
        for d in transversals(&m) {
            if !is_in_d_family(&g, &m, &d).ok {
                continue;
            }
            starts += 1;
            let before = bad_pairs(&g, &d).len();
            let cfg = DConfig::new(&g, m.clone(), d).unwrap();
            let out = minimize_from(&g, cfg).unwrap();
            let after = bad_pairs(&g, &out.config.set);
            assert!(after.len() <= before);
            for p in &after {
                assert!(out.config.matching.is_matched(p.u) && out.config.matching.is_matched(p.v));
                assert_eq!(p.common_code.len(), 2);
            }
            let w = witness_from_matching(&g, &out.config.matching);
            assert!(check_forest(&g, &out.config, &w, &out.forest).is_empty());
        }
    }
    assert_eq!(starts, 9 * 16);
}

#[test]
fn petersen_has_a_clean_transversal() {
    let g = petersen();
    let m = perfect_matchings(&g).into_iter().next().unwrap();
    let clean = transversals(&m).into_iter().any(|d| bad_pairs(&g, &d).is_empty());
    assert!(clean);
    let out = minimize_bad_pairs(&g, 8).unwrap();
    assert!(bad_pairs(&g, &out.config.set).is_empty());
}

#[test]
fn small_examples() {
    let r = construct(&prism(3).unwrap()).unwrap();
    assert_eq!(r.size, 3);
    assert!(r.certificate.is_locating_dominating());

    let r = construct(&petersen()).unwrap();
    assert!(r.size <= 5);
    assert!(classify_set(&petersen(), &r.final_set).is_locating_dominating());

    match construct(&complete(4)) {
        Err(Error::NotTwinFree { kind: TwinKind::Closed, .. }) => {}
        other => panic!("{other:?}"),
    }
    match construct(&complete_bipartite(3, 3)) {
        Err(Error::NotTwinFree { kind: TwinKind::Open, .. }) => {}
        other => panic!("{other:?}"),
    }
    let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    assert!(matches!(construct(&path), Err(Error::NotCubic { .. })));
    assert!(matches!(construct(&Graph::empty(2)), Err(Error::IsolatedVertex(0))));
}

#[test]
fn disconnected_input_is_handled_per_component() {
    let a = petersen();
    let b = prism(3).unwrap();
    let edges = a.edges().chain(b.edges().map(|(u, v)| (u + 10, v + 10)));
    let g = Graph::from_edges(16, edges).unwrap();
    let r = construct(&g).unwrap();
    assert_eq!(r.components.len(), 2);
    assert!(r.certificate.is_locating_dominating());
    assert!(r.size <= 8);
    assert_eq!(replay(16, &r.trace), r.final_set);
}

#[test]
fn traces_replay_and_never_beat_the_oracle() {
    for seed in 0..60 {
        let n = [8, 10, 12][seed as usize % 3];
        let g = random_cubic(n, seed).unwrap();
        if !g.is_twin_free() {
            continue;
        }
        let r = construct(&g).unwrap();
        assert_eq!(replay(n, &r.trace), r.final_set);
        assert!(2 * r.size <= n);
        let opt = ld_number_exact(&g, DEFAULT_BUDGET).unwrap().value().unwrap();
        assert!(opt <= r.size);

        // within one attempt the bad-pair count never goes up
        let mut last = usize::MAX;
        for e in &r.trace {
            match e {
                TraceEvent::Start { bad_pairs, .. } => last = *bad_pairs,
                TraceEvent::Exchange { exchange, .. } => {
                    assert!(exchange.bad_pairs <= last);
                    last = exchange.bad_pairs;
                }
                _ => {}
            }
        }
    }
}
