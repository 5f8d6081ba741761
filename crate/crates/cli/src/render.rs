//! Human tables and JSON Lines records.

use std::fmt::Write as _;
use std::time::Duration;

use fqp_core::deciders::{FactorCase, PropertyReport, Wdim, Witness};
use fqp_core::harness::{CorpusEntry, SearchReport, VerificationReport};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    schema_version: u32,
    record: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// One JSON object on one line.
pub fn machine<T: Serialize>(kind: &str, body: &T) -> String {
    serde_json::to_string(&Record {
        schema_version: SCHEMA_VERSION,
        record: kind,
        body,
    })
    .expect("report types serialize")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

pub fn witness(w: &Witness) -> String {
    match w {
        Witness::LocalFactors { count } => format!("{count} local factors"),
        Witness::IncomparablePair { a, b } => format!("({a}) and ({b}) incomparable"),
        Witness::GaussianPair { a, b, reason } => format!("pair {a}, {b}: {reason:?}"),
        Witness::NotQuasiProjective { ideal, oracle } => {
            let mut s = format!("ideal ({}) not quasi-projective", ideal.join(","));
            if let Some(ev) = oracle {
                let images: Vec<String> = ev.images.iter().map(|(g, i)| format!("{g}↦{i}")).collect();
                let _ = write!(
                    s,
                    "; map {} into I/{{{}}} does not lift",
                    images.join(", "),
                    ev.submodule.join(",")
                );
            }
            s
        }
        Witness::NotProjective { ideal } => format!("regular ideal ({}) not projective", ideal.join(",")),
        Witness::RegularNonUnit { element } => format!("{element} is a regular non-unit"),
        Witness::Nilpotent { element } => format!("{element} is nilpotent"),
        Witness::NotRegular { element } => format!("{element} not in ({element}^2)"),
    }
}

pub fn wdim_text(w: Wdim, cases: &[FactorCase]) -> String {
    let value = match w {
        Wdim::Zero => "0",
        Wdim::Infinite => "infinite",
        Wdim::NotApplicable => "n/a (not fqp)",
    };
    if cases.is_empty() || w == Wdim::NotApplicable {
        return value.to_string();
    }
    let cases: Vec<String> = cases
        .iter()
        .map(|c| match c {
            FactorCase::Field => "field",
            FactorCase::NilSquareZero => "Nil^2=0",
            FactorCase::Chained => "chained",
            FactorCase::Neither => "neither",
        })
        .map(str::to_string)
        .collect();
    format!("{value} [{}]", cases.join(", "))
}

pub fn classify_human(r: &PropertyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  {}  ({} elements)", r.name, r.spec, r.size);
    let w = &r.witnesses;
    let rows: [(&str, bool, &Option<Witness>); 9] = [
        ("local", r.flags.local, &w.local),
        ("chained", r.flags.chained, &w.chained),
        ("arithmetical", r.flags.arithmetical, &w.arithmetical),
        ("fqp", r.flags.fqp, &w.fqp),
        ("gaussian", r.flags.gaussian, &w.gaussian),
        ("prufer", r.flags.prufer, &w.prufer),
        ("reduced", r.flags.reduced, &w.reduced),
        ("von_neumann_regular", r.flags.von_neumann_regular, &w.von_neumann_regular),
        ("total_quotient_ring", r.flags.total_quotient_ring, &w.total_quotient_ring),
    ];
    for (name, value, wit) in rows {
        let _ = write!(out, "  {name:<20} {}", yes(value));
        if let Some(wit) = wit {
            let pad = if value { " " } else { "  " };
            let _ = write!(out, "{pad}{}", witness(wit));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "  {:<20} {}", "wdim", wdim_text(r.wdim, &r.wdim_cases));
    let s = &r.stats;
    let oracle = if r.oracle_verified {
        format!("verified on all {} ideals", s.ideal_count)
    } else {
        format!(
            "{} of {} ideals checked, {} over caps, {} disagreements",
            s.oracle_checked, s.ideal_count, s.oracle_capped, s.oracle_disagreements
        )
    };
    let _ = writeln!(out, "  {:<20} {oracle}", "oracle");
    let _ = writeln!(out, "  {:<20} {}", "ideals", s.ideal_count);
    let _ = writeln!(out, "  {:<20} {}", "elapsed", ms(s.elapsed));
    out
}

pub fn verify_human(r: &VerificationReport) -> String {
    let mut out = String::new();
    let counters: Vec<String> = r.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(
        out,
        "{} {:<18} {:>4} instances  {:>3} failures  {:>3} capped  {}  [{}]",
        if r.passed() { "PASS" } else { "FAIL" },
        r.suite,
        r.instances,
        r.failures.len(),
        r.caps_hit.len(),
        ms(r.elapsed),
        counters.join(" ")
    );
    for f in &r.failures {
        let _ = write!(out, "     {}: {}", f.ring, f.check);
        if let Some(e) = &f.expected {
            let _ = write!(out, "; expected {e}");
        }
        if let Some(g) = &f.got {
            let _ = write!(out, "; got {g}");
        }
        if let Some(w) = &f.witness {
            let _ = write!(out, "; witness {w}");
        }
        out.push('\n');
    }
    out
}

pub fn search_human(r: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "query `{}` over families up to {} elements: {} rings examined, {} matches up to isomorphism{}",
        r.query,
        r.size_max,
        r.examined,
        r.hits.len(),
        if r.forbidden { " (no finite ring may match)" } else { "" }
    );
    for h in &r.hits {
        let _ = writeln!(out, "  {:>5}  {}", h.size, h.spec);
    }
    if !r.caps_hit.is_empty() {
        let _ = writeln!(out, "  {} rings skipped over caps", r.caps_hit.len());
    }
    out
}

#[derive(Serialize)]
pub struct EntryRecord<'a> {
    pub name: &'a str,
    pub spec: String,
    pub expect: Vec<String>,
    pub tags: &'a [String],
}

pub fn entry_record(e: &CorpusEntry) -> EntryRecord<'_> {
    EntryRecord {
        name: &e.name,
        spec: e.spec.to_string(),
        expect: e.expect.iter().map(|x| x.to_string()).collect(),
        tags: &e.tags,
    }
}

pub fn entry_human(e: &CorpusEntry) -> String {
    let expect: Vec<String> = e.expect.iter().map(|x| x.to_string()).collect();
    let mut line = format!("{:<16} {}", e.name, e.spec);
    if !expect.is_empty() {
        let _ = write!(line, "  expect{{{}}}", expect.join(", "));
    }
    line
}
