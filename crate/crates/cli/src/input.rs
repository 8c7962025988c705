use std::fs;
use std::io::{self, Read};
use std::path::Path;

use locdom::generators::GeneratorSpec;
use locdom::{parse_graph6, Graph};

pub enum Unusable {
    /// Malformed input line.
    Malformed(String),
    /// The generator gave up.
    Generation(String),
}

/// One graph to process. Unusable entries still produce a record.
pub struct Item {
    pub id: String,
    pub seed: Option<u64>,
    pub graph: Result<Graph, Unusable>,
}

/// `random:N` without a seed expands to `count` graphs seeded from `base`.
fn expand_spec(spec: &str, count: usize, base: u64) -> Result<Vec<(GeneratorSpec, Option<u64>)>, String> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let is_random = matches!(parts[0].to_ascii_lowercase().as_str(), "random" | "random_cubic");
    if is_random && parts.len() == 2 {
        let n: usize = parts[1].parse().map_err(|_| format!("unrecognized generator spec `{spec}`"))?;
        return Ok((0..count as u64)
            .map(|i| (GeneratorSpec::RandomCubic { n, seed: base + i }, Some(base + i)))
            .collect());
    }
    let g: GeneratorSpec = spec.parse().map_err(|e: locdom::Error| e.to_string())?;
    let seed = match g {
        GeneratorSpec::RandomCubic { seed, .. } => Some(seed),
        _ => None,
    };
    Ok(vec![(g, seed)])
}

pub fn from_generators(specs: &[String], count: usize, base: u64) -> Result<Vec<Item>, String> {
    let mut items = Vec::new();
    for s in specs {
        for (spec, seed) in expand_spec(s, count, base)? {
            let graph = match spec.generate() {
                Ok(g) => Ok(g),
                Err(e) if e.is_input() => return Err(format!("{spec}: {e}")),
                Err(e) => Err(Unusable::Generation(e.to_string())),
            };
            items.push(Item { id: spec.to_string(), seed, graph });
        }
    }
    Ok(items)
}

/// Reads graph6 lines from `path` (`-` is stdin). Blank lines and the
/// optional `>>graph6<<` header are not graphs and are skipped.
pub fn from_graph6(path: &Path) -> io::Result<Vec<Item>> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim().trim_start_matches(">>graph6<<");
        if line.is_empty() {
            continue;
        }
        let graph = parse_graph6(line.as_bytes()).map_err(|e| Unusable::Malformed(e.to_string()));
        items.push(Item { id: format!("line:{}", i + 1), seed: None, graph });
    }
    Ok(items)
}
