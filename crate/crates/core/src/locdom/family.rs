use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::DominationCodes;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{maximum_matching, Matching};
use crate::vertex_set::VertexSet;

/// Tie-break for matching edges whose endpoint in `D` is not forced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "chooser", content = "seed", rename_all = "snake_case")]
pub enum Chooser {
    LowerId,
    HigherId,
    Seeded(u64),
}

/// A maximum matching with a transversal from its admissible family, plus
/// the cached codes `N(v) ∩ D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DConfig {
    pub matching: Matching,
    pub set: VertexSet,
    #[serde(skip)]
    pub codes: DominationCodes,
}

impl DConfig {
    /// Wraps `(m, d)`, rejecting sets outside the family of `m`.
    pub fn new(g: &Graph, m: Matching, d: VertexSet) -> Result<Self> {
        m.validate(g)?;
        let check = is_in_d_family(g, &m, &d);
        if let Some(v) = check.first_violation {
            return Err(Error::NotInFamily(format!("{v:?}")));
        }
        Ok(DConfig::unchecked(g, m, d))
    }

    pub(crate) fn unchecked(g: &Graph, m: Matching, d: VertexSet) -> Self {
        let codes = DominationCodes::compute(g, &d);
        DConfig { matching: m, set: d, codes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyViolation {
    UnmatchedInSet { vertex: usize },
    BothEndpoints { u: usize, v: usize },
    NeitherEndpoint { u: usize, v: usize },
    ForcedEndpointMissing { forced: usize, other: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub ok: bool,
    pub first_violation: Option<FamilyViolation>,
}

pub(crate) fn has_unmatched_neighbor(g: &Graph, m: &Matching, v: usize) -> bool {
    g.neighbors(v).iter().any(|&w| !m.is_matched(w))
}

/// The endpoint of matching edge `uv` that must lie in `D`, if any: the
/// unique endpoint with an unmatched neighbor.
pub(crate) fn forced_endpoint(g: &Graph, m: &Matching, u: usize, v: usize) -> Option<usize> {
    match (has_unmatched_neighbor(g, m, u), has_unmatched_neighbor(g, m, v)) {
        (true, false) => Some(u),
        (false, true) => Some(v),
        _ => None,
    }
}

/// Whether `d` belongs to the family of `m`: exactly one endpoint of every
/// matching edge, the forced endpoint where one exists, and no unmatched
/// vertex.
pub fn is_in_d_family(g: &Graph, m: &Matching, d: &VertexSet) -> FamilyCheck {
    let first_violation = family_violation(g, m, d);
    FamilyCheck { ok: first_violation.is_none(), first_violation }
}

fn family_violation(g: &Graph, m: &Matching, d: &VertexSet) -> Option<FamilyViolation> {
    for v in d {
        if !m.is_matched(v) {
            return Some(FamilyViolation::UnmatchedInSet { vertex: v });
        }
    }
    for (u, v) in m.edges() {
        match (d.contains(u), d.contains(v)) {
            (true, true) => return Some(FamilyViolation::BothEndpoints { u, v }),
            (false, false) => return Some(FamilyViolation::NeitherEndpoint { u, v }),
            (in_u, _) => {
                if let Some(f) = forced_endpoint(g, m, u, v) {
                    let chosen = if in_u { u } else { v };
                    if chosen != f {
                        return Some(FamilyViolation::ForcedEndpointMissing { forced: f, other: chosen });
                    }
                }
            }
        }
    }
    None
}

/// A member of the family of the maximum matching `m`, choosing free
/// endpoints with `chooser`.
pub fn build_d_member(g: &Graph, m: &Matching, chooser: Chooser) -> Result<DConfig> {
    m.validate(g)?;
    let nu = maximum_matching(g).len();
    if m.len() != nu {
        return Err(Error::InvalidMatching(format!(
            "matching has {} edges but the matching number is {nu}",
            m.len()
        )));
    }
    let mut rng = match chooser {
        Chooser::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut d = VertexSet::new(g.n());
    for (u, v) in m.edges() {
        let pick = match forced_endpoint(g, m, u, v) {
            Some(f) => f,
            None => match chooser {
                Chooser::LowerId => u,
                Chooser::HigherId => v,
                Chooser::Seeded(_) => {
                    if rng.as_mut().unwrap().gen_bool(0.5) {
                        u
                    } else {
                        v
                    }
                }
            },
        };
        d.insert(pick);
    }
    Ok(DConfig::unchecked(g, m.clone(), d))
}
