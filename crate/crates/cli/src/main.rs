//! `fqp`: classify finite commutative rings, run the verification suites,
//! and search small families for strictness witnesses.

mod config;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use fqp_core::deciders::{classify, DeciderOptions};
use fqp_core::harness::{parse_query, search_strictness, verify, Corpus, Instance, SUITES};
use fqp_core::{parse_spec, Caps, Error};
use serde::Serialize;

use config::Format;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "fqp", version, about = "Finite commutative ring lab: arithmetical, fqp, Gaussian, Prüfer")]
struct Cli {
    /// Resource cap overrides, e.g. `--caps ring_size=512,oracle_module_size=32`.
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    caps: Vec<String>,
    /// Skip the brute-force quasi-projectivity cross-check.
    #[arg(long, global = true)]
    no_oracle: bool,
    /// Treat any cap hit as an error (exit 3).
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with `format`, `oracle` and a `[caps]` table.
    #[arg(long, global = true, env = "FQP_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify rings given as specs (`Z(12)`, `TrivExt(Z(4),[2],1)`) or corpus names.
    Classify {
        #[arg(required = true, value_name = "SPEC|NAME")]
        rings: Vec<String>,
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
    },
    /// Run verification suites over a corpus.
    Verify {
        /// Suite names, or `all` (the default).
        #[arg(value_name = "SUITE")]
        suites: Vec<String>,
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
    },
    /// Search the built-in families for rings matching a flag query.
    Search {
        /// e.g. `fqp & !arithmetical`
        query: String,
        #[arg(long, default_value_t = 16)]
        size_max: usize,
    },
    /// Corpus utilities.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List corpus entries with their expectations.
    List {
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
    },
}

struct Settings {
    opts: DeciderOptions,
    format: Format,
    strict: bool,
}

struct Failed(u8, String);

fn usage(msg: impl Into<String>) -> Failed {
    Failed(EXIT_USAGE, msg.into())
}

fn from_core(e: Error) -> Failed {
    let code = if e.is_resource_cap() { EXIT_CAP } else { EXIT_USAGE };
    Failed(code, e.to_string())
}

fn settings(cli: &Cli) -> Result<Settings, Failed> {
    let file = match &cli.config {
        Some(path) => config::load(path).map_err(usage)?,
        None => config::FileConfig::default(),
    };
    let caps: Caps = config::override_caps(file.caps, &cli.caps).map_err(usage)?;
    let oracle = !cli.no_oracle && file.oracle.unwrap_or(true);
    Ok(Settings {
        opts: DeciderOptions::new(caps, oracle),
        format: cli.format.or(file.format).unwrap_or_default(),
        strict: cli.strict,
    })
}

fn load_corpus(path: Option<&PathBuf>) -> Result<Corpus, Failed> {
    match path {
        None => Ok(Corpus::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Corpus::parse(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
    }
}

fn emit<T: Serialize>(s: &Settings, kind: &str, body: &T, human: impl FnOnce() -> String) {
    let text = match s.format {
        Format::Machine => format!("{}\n", render::machine(kind, body)),
        Format::Human => human(),
    };
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // A closed pipe (`fqp ... | head`) is not an error worth a message.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

/// Tracks the exit code: property failures outrank cap hits.
#[derive(Default)]
struct Outcome {
    failed: bool,
    capped: bool,
}

impl Outcome {
    fn code(&self, strict: bool) -> u8 {
        if self.failed {
            EXIT_FAIL
        } else if self.capped && strict {
            EXIT_CAP
        } else {
            EXIT_PASS
        }
    }
}

#[derive(Serialize)]
struct Mismatch {
    expected: String,
    got: String,
}

#[derive(Serialize)]
struct ClassifyRecord<'a> {
    #[serde(flatten)]
    report: &'a fqp_core::deciders::PropertyReport,
    inconsistencies: Vec<&'static str>,
    mismatches: Vec<Mismatch>,
}

fn run_classify(s: &Settings, rings: &[String], corpus: Option<&PathBuf>) -> Result<u8, Failed> {
    let corpus = load_corpus(corpus)?;
    let mut targets = Vec::new();
    for text in rings {
        let (name, spec, expect) = match corpus.get(text) {
            Some(e) => (e.name.clone(), e.spec.clone(), e.expect.clone()),
            None => {
                let spec = parse_spec(text).map_err(|e| usage(format!("`{text}`: {e}")))?;
                (spec.to_string(), spec, Vec::new())
            }
        };
        targets.push((name, spec, expect));
    }
    let mut outcome = Outcome::default();
    for (name, spec, expect) in targets {
        let ring = Arc::new(spec.build(s.opts.caps.ring_size).map_err(from_core)?.with_name(name));
        let report = classify(&ring, &s.opts).map_err(from_core)?;
        let inconsistencies = report.flags.inconsistencies();
        let mismatches: Vec<Mismatch> = expect
            .iter()
            .filter_map(|x| x.mismatch(&report))
            .map(|(expected, got)| Mismatch { expected, got })
            .collect();
        outcome.failed |= !inconsistencies.is_empty() || !mismatches.is_empty();
        outcome.capped |= report.stats.oracle_capped > 0;
        let record = ClassifyRecord {
            report: &report,
            inconsistencies,
            mismatches,
        };
        emit(s, "classify", &record, || {
            let mut out = render::classify_human(&report);
            for i in &record.inconsistencies {
                out.push_str(&format!("  INCONSISTENT: {i}\n"));
            }
            for m in &record.mismatches {
                out.push_str(&format!("  MISMATCH: expected {}, got {}\n", m.expected, m.got));
            }
            out
        });
    }
    Ok(outcome.code(s.strict))
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    suites: usize,
    instances: usize,
    failures: usize,
    caps_hit: usize,
    build_errors: &'a [BuildError],
    passed: bool,
}

#[derive(Serialize)]
struct BuildError {
    ring: String,
    error: String,
}

fn run_verify(s: &Settings, suites: &[String], corpus: Option<&PathBuf>) -> Result<u8, Failed> {
    let names: Vec<&str> = if suites.is_empty() {
        vec!["all"]
    } else {
        suites.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| **n != "all" && !SUITES.contains(n)) {
        return Err(usage(format!("unknown suite `{bad}`; known: all, {}", SUITES.join(", "))));
    }
    let corpus = load_corpus(corpus)?;
    let start = Instant::now();
    let (instances, failed): (Vec<Instance>, _) = corpus.instances(s.opts.caps.ring_size);
    let mut outcome = Outcome::default();
    let mut build_errors = Vec::new();
    for (ring, err) in failed {
        if err.is_resource_cap() {
            outcome.capped = true;
        } else {
            outcome.failed = true;
        }
        build_errors.push(BuildError {
            ring,
            error: err.to_string(),
        });
    }
    let reports = verify(&names, &instances, &s.opts).map_err(from_core)?;
    for r in &reports {
        outcome.failed |= !r.passed();
        outcome.capped |= !r.caps_hit.is_empty();
        emit(s, "verify", r, || render::verify_human(r));
    }
    let summary = VerifySummary {
        suites: reports.len(),
        instances: instances.len(),
        failures: reports.iter().map(|r| r.failures.len()).sum(),
        caps_hit: reports.iter().map(|r| r.caps_hit.len()).sum(),
        build_errors: &build_errors,
        passed: !outcome.failed,
    };
    emit(s, "verify_summary", &summary, || {
        let mut out = String::new();
        for b in &build_errors {
            out.push_str(&format!("not built: {}: {}\n", b.ring, b.error));
        }
        out.push_str(&format!(
            "{} suites over {} rings: {} failures, {} cap hits, {:.2} s\n",
            summary.suites,
            summary.instances,
            summary.failures,
            summary.caps_hit,
            start.elapsed().as_secs_f64()
        ));
        out
    });
    Ok(outcome.code(s.strict))
}

fn run_search(s: &Settings, query: &str, size_max: usize) -> Result<u8, Failed> {
    let q = parse_query(query).map_err(|e| usage(format!("query `{query}`: {e}")))?;
    let report = search_strictness(size_max, &q, &s.opts).map_err(from_core)?;
    emit(s, "search", &report, || render::search_human(&report));
    let outcome = Outcome {
        failed: !report.passed(),
        capped: !report.caps_hit.is_empty(),
    };
    Ok(outcome.code(s.strict))
}

fn run_corpus_list(s: &Settings, corpus: Option<&PathBuf>) -> Result<u8, Failed> {
    let corpus = load_corpus(corpus)?;
    for e in &corpus.entries {
        emit(s, "corpus_entry", &render::entry_record(e), || {
            format!("{}\n", render::entry_human(e))
        });
    }
    Ok(EXIT_PASS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let result = settings(&cli).and_then(|s| match &cli.command {
        Command::Classify { rings, corpus } => run_classify(&s, rings, corpus.as_ref()),
        Command::Verify { suites, corpus } => run_verify(&s, suites, corpus.as_ref()),
        Command::Search { query, size_max } => run_search(&s, query, *size_max),
        Command::Corpus {
            action: CorpusAction::List { corpus },
        } => run_corpus_list(&s, corpus.as_ref()),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failed(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
