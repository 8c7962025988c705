mod input;
mod run;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use input::Item;
use run::{process, Outcome, RunRecord, Settings, Status, Verb};

#[derive(Parser)]
#[command(name = "locdom", version, about = "Locating-dominating sets in twin-free cubic graphs")]
struct Cli {
    #[command(subcommand)]
    verb: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a locating-dominating set of size at most n/2.
    Construct(Common),
    /// Exact location-domination number.
    Oracle(Common),
    /// Report twin-free cubic graphs whose number is exactly n/2.
    Extremal(Common),
    /// Cubicity and the first twin pair.
    Twins(Common),
    /// Maximum matching and its Tutte-Berge certificate.
    Matching(Common),
}

#[derive(Args)]
struct Common {
    /// Generator spec: prism:K, subset:K, k4, k33, petersen, random:N:SEED,
    /// or random:N (expanded with --count and --seed). Repeatable.
    #[arg(long = "gen", value_name = "SPEC")]
    generators: Vec<String>,
    /// graph6 file, one graph per line; `-` reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Flat CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// First seed for `random:N` specs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graphs per `random:N` spec.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Search-node budget of the exact oracle.
    #[arg(long, default_value_t = locdom::locdom::DEFAULT_BUDGET)]
    budget: u64,
    /// Run both the construction and the oracle and cross-check them.
    #[arg(long)]
    check: bool,
    /// Write dependency-forest DOT files into this directory.
    #[arg(long, value_name = "DIR")]
    dot: Option<PathBuf>,
    /// Fill `elapsed_ms`; output is then no longer reproducible.
    #[arg(long)]
    timing: bool,
    /// Directory for failure traces (default: the system temp directory).
    #[arg(long, value_name = "DIR")]
    trace_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct ExtremalEntry<'a> {
    id: &'a str,
    n: usize,
    graph6: &'a str,
}

#[derive(Serialize)]
struct ExtremalReport<'a> {
    graphs: usize,
    eligible: usize,
    skipped: usize,
    failed: usize,
    extremal_count: usize,
    extremal: Vec<ExtremalEntry<'a>>,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("locdom: {msg}");
    ExitCode::from(2)
}

fn sanitize(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn write_records(w: &mut dyn Write, records: &[&RunRecord], csv: bool) -> io::Result<()> {
    if csv {
        let mut wr = csv::Writer::from_writer(w);
        for r in records {
            wr.serialize(r)?;
        }
        wr.flush()
    } else {
        for r in records {
            serde_json::to_writer(&mut *w, r)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

fn write_extremal(w: &mut dyn Write, outcomes: &[Outcome], csv: bool) -> io::Result<()> {
    let mut report = ExtremalReport {
        graphs: outcomes.len(),
        eligible: 0,
        skipped: 0,
        failed: 0,
        extremal_count: 0,
        extremal: Vec::new(),
    };
    for o in outcomes {
        let r = &o.record;
        match r.status {
            Status::Failed => report.failed += 1,
            Status::SkippedInput => report.skipped += 1,
            Status::Ok if !(r.cubic && r.twin_free) => report.skipped += 1,
            Status::Ok => {
                report.eligible += 1;
                let n = r.n.unwrap_or(0);
                if r.oracle_value.is_some_and(|v| 2 * v == n) {
                    let graph6 = o.graph6.as_deref().unwrap_or("");
                    report.extremal.push(ExtremalEntry { id: &r.id, n, graph6 });
                }
            }
        }
    }
    report.extremal_count = report.extremal.len();
    if csv {
        let mut wr = csv::Writer::from_writer(w);
        for e in &report.extremal {
            wr.serialize(e)?;
        }
        wr.flush()
    } else {
        serde_json::to_writer(&mut *w, &report)?;
        writeln!(w)
    }
}

fn write_trace(dir: &Path, index: usize, detail: &serde_json::Value) -> io::Result<PathBuf> {
    let path = dir.join(format!("locdom-failure-{}-{index}.json", std::process::id()));
    fs::write(&path, serde_json::to_string_pretty(detail)?)?;
    Ok(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, opts) = match cli.verb {
        Command::Construct(c) => (Verb::Construct, c),
        Command::Oracle(c) => (Verb::Oracle, c),
        Command::Extremal(c) => (Verb::Extremal, c),
        Command::Twins(c) => (Verb::Twins, c),
        Command::Matching(c) => (Verb::Matching, c),
    };

    let mut items: Vec<Item> = match input::from_generators(&opts.generators, opts.count, opts.seed) {
        Ok(items) => items,
        Err(e) => return input_error(e),
    };
    if let Some(path) = &opts.input {
        match input::from_graph6(path) {
            Ok(more) => items.extend(more),
            Err(e) => return input_error(format!("{}: {e}", path.display())),
        }
    }
    if let Some(dir) = &opts.dot {
        if let Err(e) = fs::create_dir_all(dir) {
            return input_error(format!("{}: {e}", dir.display()));
        }
    }

    let settings = Settings {
        verb,
        budget: opts.budget,
        check: opts.check,
        timing: opts.timing,
        dot: opts.dot.is_some(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    // collect keeps input order whatever the worker count
    let outcomes: Vec<Outcome> = pool.install(|| items.par_iter().map(|it| process(it, &settings)).collect());

    let mut sink: Box<dyn Write> = match &opts.out {
        Some(p) => match fs::File::create(p) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => return input_error(format!("{}: {e}", p.display())),
        },
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let written = if verb == Verb::Extremal {
        write_extremal(&mut sink, &outcomes, opts.csv)
    } else {
        let records: Vec<&RunRecord> = outcomes.iter().map(|o| &o.record).collect();
        write_records(&mut sink, &records, opts.csv)
    };
    if let Err(e) = written.and_then(|_| sink.flush()) {
        eprintln!("locdom: writing output: {e}");
        return ExitCode::from(3);
    }

    if let Some(dir) = &opts.dot {
        for (i, o) in outcomes.iter().enumerate() {
            for (c, dot) in o.dots.iter().enumerate() {
                let name = format!("{i:05}-{}-c{c}.dot", sanitize(&o.record.id));
                if let Err(e) = fs::write(dir.join(name), dot) {
                    eprintln!("locdom: writing DOT: {e}");
                    return ExitCode::from(3);
                }
            }
        }
    }

    let trace_dir = opts.trace_dir.clone().unwrap_or_else(std::env::temp_dir);
    let mut internal = false;
    for (i, o) in outcomes.iter().enumerate() {
        if let Some(detail) = &o.failure {
            internal = true;
            match write_trace(&trace_dir, i, detail) {
                Ok(p) => eprintln!(
                    "locdom: {}: {}; trace written to {}",
                    o.record.id,
                    o.record.reason.as_deref().unwrap_or("failure"),
                    p.display()
                ),
                Err(e) => eprintln!("locdom: {}: could not write trace: {e}", o.record.id),
            }
        }
    }
    if internal {
        return ExitCode::from(3);
    }
    if outcomes.iter().any(|o| o.malformed) {
        eprintln!("locdom: some input lines were not valid graph6");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
