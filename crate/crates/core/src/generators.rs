//! Named graph families used as fixtures and corpus sources.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Attempts per `random_cubic` call before giving up.
pub const RANDOM_CUBIC_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Prism { k: usize },
    SubsetConstruction { k: usize },
    K4,
    K33,
    Petersen,
    RandomCubic { n: usize, seed: u64 },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GeneratorSpec::Prism { k } => prism(k),
            GeneratorSpec::SubsetConstruction { k } => subset_construction(k),
            GeneratorSpec::K4 => Ok(complete(4)),
            GeneratorSpec::K33 => Ok(complete_bipartite(3, 3)),
            GeneratorSpec::Petersen => Ok(petersen()),
            GeneratorSpec::RandomCubic { n, seed } => random_cubic(n, seed),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Prism { k } => write!(f, "prism:{k}"),
            GeneratorSpec::SubsetConstruction { k } => write!(f, "subset:{k}"),
            GeneratorSpec::K4 => f.write_str("k4"),
            GeneratorSpec::K33 => f.write_str("k33"),
            GeneratorSpec::Petersen => f.write_str("petersen"),
            GeneratorSpec::RandomCubic { n, seed } => write!(f, "random:{n}:{seed}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Accepts `prism:K`, `subset:K`, `k4`, `k33`, `petersen` and
    /// `random:N:SEED` (`random_cubic` is an alias of `random`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenerator(format!("unrecognized generator spec `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u64> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let spec = match (parts[0].to_ascii_lowercase().as_str(), parts.len()) {
            ("prism", 2) => GeneratorSpec::Prism { k: num(1)? as usize },
            ("subset" | "subset_construction", 2) => {
                GeneratorSpec::SubsetConstruction { k: num(1)? as usize }
            }
            ("k4", 1) => GeneratorSpec::K4,
            ("k33" | "k3,3", 1) => GeneratorSpec::K33,
            ("petersen", 1) => GeneratorSpec::Petersen,
            ("random" | "random_cubic", 3) => {
                GeneratorSpec::RandomCubic { n: num(1)? as usize, seed: num(2)? }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// `C_k □ K_2`: outer cycle `0..k`, inner cycle `k..2k`, rungs `i ~ i+k`.
pub fn prism(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidGenerator(format!("prism needs k >= 3, got {k}")));
    }
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    Graph::from_edges(2 * k, edges)
}

/// Element vertices `0..k`; the subset with bitmask `m` (nonzero) is
/// vertex `k + m - 1`, adjacent to the elements it contains.
pub fn subset_construction(k: usize) -> Result<Graph> {
    if !(2..=20).contains(&k) {
        return Err(Error::InvalidGenerator(format!("subset construction needs 2 <= k <= 20, got {k}")));
    }
    let subsets = (1usize << k) - 1;
    let edges =
        (1..=subsets).flat_map(|m| (0..k).filter(move |e| m & (1 << e) != 0).map(move |e| (e, k + m - 1)));
    Graph::from_edges(k + subsets, edges)
}

/// Outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// A simple connected cubic graph from the pairing model, rejecting loops,
/// multi-edges and disconnected outcomes. Deterministic in `seed`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidGenerator(format!("random cubic graph needs even n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..RANDOM_CUBIC_RETRIES {
        points.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no simple connected cubic graph on {n} vertices after {RANDOM_CUBIC_RETRIES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_shape() {
        for k in 3..=8 {
            let g = prism(k).unwrap();
            g.validate().unwrap();
            assert_eq!(g.n(), 2 * k);
            assert!(g.is_cubic());
            assert!(g.is_twin_free(), "prism {k}");
            let outer = g.induced(&(0..k).collect::<Vec<_>>());
            let inner = g.induced(&(k..2 * k).collect::<Vec<_>>());
            assert_eq!(outer.edge_count(), k);
            assert_eq!(inner.edge_count(), k);
            for cyc in [&outer, &inner] {
                assert!(cyc.is_connected());
                assert!((0..k).all(|v| cyc.degree(v) == 2));
            }
            assert!((0..k).all(|i| g.has_edge(i, i + k)));
        }
        assert!(prism(2).is_err());
    }

    #[test]
    fn subset_construction_shape() {
        for k in 2..=5 {
            let g = subset_construction(k).unwrap();
            g.validate().unwrap();
            assert_eq!(g.n(), k + (1 << k) - 1);
            assert!(g.is_twin_free(), "subset {k}");
        }
        assert!(subset_construction(1).is_err());
    }

    #[test]
    fn petersen_shape() {
        let g = petersen();
        g.validate().unwrap();
        assert!(g.is_cubic() && g.is_twin_free() && g.is_connected());
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn random_cubic_deterministic() {
        let a = random_cubic(10, 1).unwrap();
        let b = random_cubic(10, 1).unwrap();
        assert_eq!(a, b);
        a.validate().unwrap();
        assert!(a.is_cubic() && a.is_connected());
        assert!(random_cubic(7, 0).is_err());
        assert!(random_cubic(2, 0).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("prism:3".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Prism { k: 3 });
        assert_eq!("k4".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::K4);
        assert_eq!(
            "random:12:7".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::RandomCubic { n: 12, seed: 7 }
        );
        assert!("prism".parse::<GeneratorSpec>().is_err());
        assert!("hypercube:3".parse::<GeneratorSpec>().is_err());
        for s in ["prism:5", "subset:3", "k4", "k33", "petersen", "random:10:2"] {
            assert_eq!(s.parse::<GeneratorSpec>().unwrap().to_string(), s);
        }
    }
}
