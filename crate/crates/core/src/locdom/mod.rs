//! Ground-truth checks for domination and location.

pub(crate) mod family;
mod oracle;

pub use family::{build_d_member, is_in_d_family, Chooser, DConfig, FamilyCheck, FamilyViolation};
pub use oracle::{ld_number_exact, OracleOutcome, DEFAULT_BUDGET};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// For each vertex outside `D`, its code `N(v) ∩ D` (ascending); `None`
/// for members of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationCodes {
    codes: Vec<Option<Vec<usize>>>,
}

impl DominationCodes {
    pub fn compute(g: &Graph, d: &VertexSet) -> Self {
        let codes = (0..g.n())
            .map(|v| {
                (!d.contains(v)).then(|| g.neighbors(v).iter().copied().filter(|&w| d.contains(w)).collect())
            })
            .collect();
        DominationCodes { codes }
    }

    pub fn code(&self, v: usize) -> Option<&[usize]> {
        self.codes[v].as_deref()
    }

    /// Number of neighbors in `D` (the `k` in "k-dominated"), `None` for
    /// members of `D`.
    pub fn k(&self, v: usize) -> Option<usize> {
        self.codes[v].as_ref().map(Vec::len)
    }

    /// Vertices outside `D` grouped by identical code, groups of size >= 2
    /// only, in order of their smallest member.
    fn collisions(&self) -> Vec<(&[usize], Vec<usize>)> {
        let mut by_code: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (v, c) in self.codes.iter().enumerate() {
            if let Some(c) = c {
                by_code.entry(c.as_slice()).or_default().push(v);
            }
        }
        let mut groups: Vec<_> = by_code.into_iter().filter(|(_, vs)| vs.len() > 1).collect();
        groups.sort_by_key(|(_, vs)| vs[0]);
        groups
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    LocatingDominating,
    DominatingOnly,
    LocatingOnly,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LdViolation {
    Undominated { vertex: usize },
    Unlocated { u: usize, v: usize, code: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LdCertificate {
    pub set: VertexSet,
    pub size: usize,
    pub codes: DominationCodes,
    pub verdict: Verdict,
    pub violations: Vec<LdViolation>,
}

impl LdCertificate {
    pub fn is_locating_dominating(&self) -> bool {
        self.verdict == Verdict::LocatingDominating
    }
}

/// Classifies `d` as dominating and/or locating.
///
/// An empty code is a domination failure; two vertices sharing a code
/// (empty or not) is a location failure. A locating set may therefore
/// leave a single vertex undominated.
pub fn classify_set(g: &Graph, d: &VertexSet) -> LdCertificate {
    let codes = DominationCodes::compute(g, d);
    let mut violations: Vec<LdViolation> = (0..g.n())
        .filter(|&v| codes.k(v) == Some(0))
        .map(|vertex| LdViolation::Undominated { vertex })
        .collect();
    let dominating = violations.is_empty();
    let mut locating = true;
    for (code, vs) in codes.collisions() {
        locating = false;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                violations.push(LdViolation::Unlocated { u, v, code: code.to_vec() });
            }
        }
    }
    let verdict = match (dominating, locating) {
        (true, true) => Verdict::LocatingDominating,
        (true, false) => Verdict::DominatingOnly,
        (false, true) => Verdict::LocatingOnly,
        (false, false) => Verdict::Neither,
    };
    LdCertificate { set: d.clone(), size: d.len(), codes, verdict, violations }
}

/// Two vertices outside `D` with the same code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BadPair {
    pub u: usize,
    pub v: usize,
    pub common_code: Vec<usize>,
}

/// Every pair not located by `d`, as `(u, v)` with `u < v`, sorted.
pub fn bad_pairs(g: &Graph, d: &VertexSet) -> Vec<BadPair> {
    bad_pairs_from_codes(&DominationCodes::compute(g, d))
}

pub(crate) fn bad_pairs_from_codes(codes: &DominationCodes) -> Vec<BadPair> {
    let mut out = Vec::new();
    for (code, vs) in codes.collisions() {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                out.push(BadPair { u, v, common_code: code.to_vec() });
            }
        }
    }
    out.sort();
    out
}

/// Number of bad pairs of `d`, without materializing them.
pub(crate) fn bad_pair_count(g: &Graph, d: &VertexSet) -> usize {
    let mut keys: Vec<[usize; 4]> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        if d.contains(v) {
            continue;
        }
        let mut key = [usize::MAX; 4];
        let mut k = 0;
        for &w in g.neighbors(v) {
            if d.contains(w) {
                if k == 3 {
                    // degree above 3: fall back to the general path
                    return bad_pairs(g, d).len();
                }
                key[k] = w;
                k += 1;
            }
        }
        key[3] = k;
        keys.push(key);
    }
    keys.sort_unstable();
    let mut total = 0;
    let mut run = 1;
    for i in 1..=keys.len() {
        if i < keys.len() && keys[i] == keys[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn classify_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(classify_set(&k2, &VertexSet::from_ids(2, [0])).verdict, Verdict::LocatingDominating);

        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let cert = classify_set(&p3, &VertexSet::from_ids(3, [1]));
        assert_eq!(cert.verdict, Verdict::DominatingOnly);
        assert_eq!(cert.violations, vec![LdViolation::Unlocated { u: 0, v: 2, code: vec![1] }]);

        // vertex 2 has an empty code as well
        let cert = classify_set(&cycle(4), &VertexSet::from_ids(4, [0]));
        assert_eq!(cert.verdict, Verdict::Neither);
    }

    #[test]
    fn single_undominated_vertex_is_locating_only() {
        // path 0-1-2-3, D = {1}: codes 0:{1} 2:{1} collide; use D = {0, 1}
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let cert = classify_set(&p4, &VertexSet::from_ids(4, [0, 1]));
        assert_eq!(cert.verdict, Verdict::LocatingOnly);
        assert_eq!(cert.violations, vec![LdViolation::Undominated { vertex: 3 }]);
        // two undominated vertices share the empty code
        let cert = classify_set(&p4, &VertexSet::from_ids(4, [0]));
        assert_eq!(cert.verdict, Verdict::Neither);
    }

    #[test]
    fn bad_pairs_examples() {
        let c4 = cycle(4);
        let bp = bad_pairs(&c4, &VertexSet::from_ids(4, [0]));
        assert_eq!(bp, vec![BadPair { u: 1, v: 3, common_code: vec![0] }]);
        assert_eq!(bad_pair_count(&c4, &VertexSet::from_ids(4, [0])), 1);

        let p = generators::prism(3).unwrap();
        for mask in 0u32..64 {
            let d = VertexSet::from_ids(6, (0..6).filter(|i| mask & (1 << i) != 0));
            let cert = classify_set(&p, &d);
            let bp = bad_pairs(&p, &d);
            assert_eq!(bp.len(), bad_pair_count(&p, &d));
            if cert.is_locating_dominating() {
                assert!(bp.is_empty());
            }
        }
    }
}
