use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use locdom::construct::forest_to_dot;
use locdom::locdom::{classify_set, ld_number_exact, OracleOutcome};
use locdom::matching::validate_structure;
use locdom::{
    construct_with, maximum_matching, tutte_berge_witness, write_graph6, ConstructOptions, Error, Graph,
};

use crate::input::{Item, Unusable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    SkippedInput,
    Failed,
}

/// One output line. Field order is the serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub id: String,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub twin_free: bool,
    pub cubic: bool,
    pub twin_pair: Option<String>,
    pub matching_number: Option<usize>,
    pub barrier_size: Option<usize>,
    pub constructed_size: Option<usize>,
    pub constructed_set: Option<String>,
    pub oracle_value: Option<usize>,
    pub fallback_used: bool,
    pub elapsed_ms: Option<u64>,
    pub status: Status,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Construct,
    Oracle,
    Extremal,
    Twins,
    Matching,
}

pub struct Settings {
    pub verb: Verb,
    pub budget: u64,
    pub check: bool,
    pub timing: bool,
    pub dot: bool,
}

/// Everything produced for one item.
pub struct Outcome {
    pub record: RunRecord,
    pub graph6: Option<String>,
    pub dots: Vec<String>,
    pub malformed: bool,
    /// Present on internal-consistency failures; written to a trace file.
    pub failure: Option<serde_json::Value>,
}

fn join(set: impl Iterator<Item = usize>) -> String {
    set.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn process(item: &Item, s: &Settings) -> Outcome {
    let start = Instant::now();
    let mut record = RunRecord {
        id: item.id.clone(),
        seed: item.seed,
        n: None,
        twin_free: false,
        cubic: false,
        twin_pair: None,
        matching_number: None,
        barrier_size: None,
        constructed_size: None,
        constructed_set: None,
        oracle_value: None,
        fallback_used: false,
        elapsed_ms: None,
        status: Status::Ok,
        reason: None,
    };
    let mut out =
        Outcome { record: record.clone(), graph6: None, dots: Vec::new(), malformed: false, failure: None };
    let g = match &item.graph {
        Ok(g) => g,
        Err(Unusable::Malformed(e)) => {
            record.status = Status::SkippedInput;
            record.reason = Some(e.clone());
            out.record = record;
            out.malformed = true;
            return out;
        }
        Err(Unusable::Generation(e)) => {
            record.status = Status::Failed;
            record.reason = Some(e.clone());
            out.failure = Some(json!({ "id": item.id, "error": e }));
            out.record = record;
            return out;
        }
    };
    record.n = Some(g.n());
    record.cubic = g.is_cubic();
    let twin = g.find_twins().into_iter().next();
    record.twin_free = twin.is_none();
    record.twin_pair = twin.map(|t| format!("{} {} {}", t.u, t.v, t.kind));
    out.graph6 = Some(write_graph6(g));

    let mut failure = None;
    let mut dots = Vec::new();
    let mut fail = |record: &mut RunRecord, e: String, detail: serde_json::Value| {
        record.status = Status::Failed;
        record.reason = Some(e);
        failure = Some(detail);
    };

    match s.verb {
        Verb::Twins => {}
        Verb::Matching => {
            let m = maximum_matching(g);
            let w = tutte_berge_witness(g);
            record.matching_number = Some(m.len());
            record.barrier_size = Some(w.x.len());
            let report = validate_structure(g, &m, &w);
            if m.len() != w.value || !report.passed {
                let e = format!("matching of size {} against witness value {}", m.len(), w.value);
                let detail = json!({ "id": item.id, "graph6": write_graph6(g), "error": e, "violations": report.violations });
                fail(&mut record, e, detail);
            }
        }
        Verb::Construct => {
            construct_step(g, item, s, &mut record, &mut dots, &mut fail);
            if s.check && record.status == Status::Ok {
                oracle_step(g, s, &mut record, false);
                check_step(g, item, &mut record, &mut fail);
            }
        }
        Verb::Oracle | Verb::Extremal => {
            oracle_step(g, s, &mut record, true);
            if s.check && record.status == Status::Ok && record.cubic && record.twin_free {
                construct_step(g, item, s, &mut record, &mut dots, &mut fail);
                check_step(g, item, &mut record, &mut fail);
            }
        }
    }
    if s.timing {
        record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    out.record = record;
    out.failure = failure;
    out.dots = dots;
    out
}

fn construct_step(
    g: &Graph,
    item: &Item,
    s: &Settings,
    record: &mut RunRecord,
    dots: &mut Vec<String>,
    fail: &mut impl FnMut(&mut RunRecord, String, serde_json::Value),
) {
    let opts = ConstructOptions { oracle_budget: s.budget, ..ConstructOptions::default() };
    match construct_with(g, &opts) {
        Ok(r) => {
            record.constructed_size = Some(r.size);
            record.constructed_set = Some(join(r.final_set.iter()));
            record.matching_number = Some(r.matching_number);
            record.fallback_used = r.fallback_used;
            if s.dot {
                dots.extend(r.components.iter().filter_map(|c| c.forest.as_ref()).map(forest_to_dot));
            }
        }
        Err(e) if e.is_input() => {
            record.status = Status::SkippedInput;
            record.reason = Some(e.to_string());
        }
        Err(e @ Error::OracleBudgetExhausted { .. }) => {
            record.status = Status::Failed;
            record.reason = Some(e.to_string());
        }
        Err(e) => {
            let detail = json!({ "id": item.id, "graph6": write_graph6(g), "error": e.to_string() });
            fail(record, e.to_string(), detail);
        }
    }
}

/// `required`: budget exhaustion fails the record instead of leaving the
/// value empty.
fn oracle_step(g: &Graph, s: &Settings, record: &mut RunRecord, required: bool) {
    match ld_number_exact(g, s.budget) {
        Ok(OracleOutcome::Exact { value, .. }) => record.oracle_value = Some(value),
        Ok(OracleOutcome::Unknown { nodes, .. }) => {
            if required {
                record.status = Status::Failed;
                record.reason = Some(Error::OracleBudgetExhausted { nodes }.to_string());
            }
        }
        Err(e) => {
            record.status = Status::SkippedInput;
            record.reason = Some(e.to_string());
        }
    }
}

/// Cross-check: the set must verify and `oracle <= constructed <= n/2`.
fn check_step(
    g: &Graph,
    item: &Item,
    record: &mut RunRecord,
    fail: &mut impl FnMut(&mut RunRecord, String, serde_json::Value),
) {
    let Some(size) = record.constructed_size else { return };
    let set: Vec<usize> = record
        .constructed_set
        .as_deref()
        .unwrap_or("")
        .split_whitespace()
        .map(|x| x.parse().expect("set was written by this process"))
        .collect();
    let verified = classify_set(g, &locdom::VertexSet::from_ids(g.n(), set)).is_locating_dominating();
    let mut problems = Vec::new();
    if !verified {
        problems.push("constructed set is not locating-dominating".to_string());
    }
    if 2 * size > g.n() {
        problems.push(format!("constructed size {size} exceeds n/2"));
    }
    if let Some(opt) = record.oracle_value {
        if opt > size {
            problems.push(format!("oracle value {opt} exceeds constructed size {size}"));
        }
    }
    if !problems.is_empty() {
        let e = problems.join("; ");
        let detail =
            json!({ "id": item.id, "graph6": write_graph6(g), "error": e, "record": record.clone() });
        fail(record, e, detail);
    }
}
