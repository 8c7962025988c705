//! Hand-built instances that exercise parts of the construction random
//! cubic graphs rarely reach.

use crate::construct::BadFourCycle;
use crate::graph::Graph;
use crate::matching::Matching;
use crate::vertex_set::VertexSet;

/// Six bad 4-cycles chained into one dependency tree, on a subcubic graph
/// with six unmatched vertices.
///
/// Cycle `i` (0 = root, then `c1..c5`) occupies ids `4i..4i+4` as
/// `u, u', v, v'`. Dependencies: `root -> c1` via `u'`, `root -> c2` via
/// `v'`, `c1 -> c3` via `v'`, `c1 -> c4` via `u'`, `c3 -> c5` via `u'`.
/// Every `v` hangs a two-vertex tail (`24..36`), the root's `u` hangs one
/// more (`36, 37`), and the unmatched vertices `38..44` sit next to the
/// primes of `c2..c5`; 42 sees both `u'` of `c5` and `v'` of `c4`. Each
/// unmatched vertex also sees a forced vertex with a pendant (`44..56`), so
/// it is dominated twice as it would be in a cubic graph.
#[derive(Debug, Clone)]
pub struct DependencyChain {
    pub graph: Graph,
    pub matching: Matching,
    /// A member of the matching's transversal family: every prime, every
    /// tail end and every forced neighbor of an unmatched vertex.
    pub set: VertexSet,
    pub cycles: [BadFourCycle; 6],
    pub unmatched: [usize; 6],
}

pub fn dependency_chain() -> DependencyChain {
    let cycles: [BadFourCycle; 6] = std::array::from_fn(|i| BadFourCycle {
        u: 4 * i,
        u_prime: 4 * i + 1,
        v: 4 * i + 2,
        v_prime: 4 * i + 3,
    });
    let [r, c1, c2, c3, c4, c5] = cycles;
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        edges.extend([(c.u, c.u_prime), (c.u_prime, c.v), (c.v, c.v_prime), (c.v_prime, c.u)]);
        pairs.extend([(c.u, c.u_prime), (c.v, c.v_prime)]);
        let (x, hat) = (24 + 2 * i, 25 + 2 * i);
        edges.extend([(c.v, x), (x, hat)]);
        pairs.push((x, hat));
    }
    edges.extend([(r.u, 36), (36, 37)]);
    pairs.push((36, 37));
    edges.extend([
        (r.u_prime, c1.u),
        (r.v_prime, c2.u),
        (c1.v_prime, c3.u),
        (c1.u_prime, c4.u),
        (c3.u_prime, c5.u),
    ]);
    let unmatched = [38, 39, 40, 41, 42, 43];
    edges.extend([
        (c2.u_prime, 38),
        (c2.v_prime, 39),
        (c3.v_prime, 40),
        (c4.u_prime, 41),
        (c5.u_prime, 42),
        (c4.v_prime, 42),
        (c5.v_prime, 43),
    ]);
    for (i, &z) in unmatched.iter().enumerate() {
        let p = 44 + 2 * i;
        edges.extend([(z, p), (p, p + 1)]);
        pairs.push((p, p + 1));
    }
    let graph = Graph::from_edges(56, edges).expect("fixture edges are simple");
    let matching = Matching::from_pairs(&graph, pairs).expect("fixture matching is valid");
    let set = VertexSet::from_ids(
        56,
        cycles
            .iter()
            .flat_map(|c| c.primes())
            .chain((0..6).map(|i| 25 + 2 * i))
            .chain([37])
            .chain((0..6).map(|i| 44 + 2 * i)),
    );
    DependencyChain { graph, matching, set, cycles, unmatched }
}

/// A 20-vertex graph whose Tutte-Berge set `{0, 1, 2}` leaves five odd
/// components (a vertex, a triangle, a 5-cycle, a vertex, a triangle) and
/// one even 4-cycle; two vertices stay unmatched in every maximum matching.
pub fn odd_components_example() -> Graph {
    let mut edges = vec![(4, 5), (5, 6), (6, 4), (13, 14), (14, 15), (15, 13)];
    edges.extend((0..5).map(|i| (7 + i, 7 + (i + 1) % 5)));
    edges.extend((0..4).map(|i| (16 + i, 16 + (i + 1) % 4)));
    edges.extend([(0, 3), (0, 4), (1, 7), (1, 12), (2, 13), (2, 16), (0, 1), (1, 17)]);
    Graph::from_edges(20, edges).expect("fixture edges are simple")
}

/// Three root-only dependency trees whose auxiliary edges form a triangle
/// on the unmatched vertices `24, 25, 26`, so one edge survives the
/// auxiliary dominating set.
///
/// Cycle `i` occupies `4i..4i+4` as `u, u', v, v'`; each `u` and `v` has a
/// two-vertex tail (`12..24`). Cycle `i` sends `u'` to unmatched vertex
/// `24 + i` and `v'` to `24 + (i + 1) % 3`. Each unmatched vertex also sees
/// a forced vertex with a pendant (`27..33`).
#[derive(Debug, Clone)]
pub struct LeafTriangle {
    pub graph: Graph,
    pub matching: Matching,
    pub set: VertexSet,
    pub cycles: [BadFourCycle; 3],
    pub unmatched: [usize; 3],
}

pub fn leaf_triangle() -> LeafTriangle {
    let cycles: [BadFourCycle; 3] = std::array::from_fn(|i| BadFourCycle {
        u: 4 * i,
        u_prime: 4 * i + 1,
        v: 4 * i + 2,
        v_prime: 4 * i + 3,
    });
    let unmatched = [24, 25, 26];
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let mut set = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        edges.extend([(c.u, c.u_prime), (c.u_prime, c.v), (c.v, c.v_prime), (c.v_prime, c.u)]);
        pairs.extend([(c.u, c.u_prime), (c.v, c.v_prime)]);
        set.extend(c.primes());
        for (j, end) in [c.u, c.v].into_iter().enumerate() {
            let t = 12 + 4 * i + 2 * j;
            edges.extend([(end, t), (t, t + 1)]);
            pairs.push((t, t + 1));
            set.push(t + 1);
        }
        edges.push((c.u_prime, unmatched[i]));
        edges.push((c.v_prime, unmatched[(i + 1) % 3]));
        let p = 27 + 2 * i;
        edges.extend([(unmatched[i], p), (p, p + 1)]);
        pairs.push((p, p + 1));
        set.push(p);
    }
    let graph = Graph::from_edges(33, edges).expect("fixture edges are simple");
    let matching = Matching::from_pairs(&graph, pairs).expect("fixture matching is valid");
    let set = VertexSet::from_ids(33, set);
    LeafTriangle { graph, matching, set, cycles, unmatched }
}
