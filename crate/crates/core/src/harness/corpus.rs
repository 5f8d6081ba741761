use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::deciders::{Flags, PropertyReport, Wdim};
use crate::error::{Error, Result};
use crate::ring::RingRef;
use crate::spec::{parse_spec, RingSpec};

const DEFAULT_CORPUS: &str = include_str!("../../corpus/default.corpus");

/// One expected property of a corpus ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expectation {
    Flag { flag: String, value: bool },
    Wdim { wdim: Wdim },
}

impl Expectation {
    /// `None` when the report agrees, else `(expected, got)`.
    pub fn mismatch(&self, report: &PropertyReport) -> Option<(String, String)> {
        match self {
            Expectation::Flag { flag, value } => {
                let got = report.flags.get(flag)?;
                (got != *value).then(|| (format!("{flag}={value}"), format!("{flag}={got}")))
            }
            Expectation::Wdim { wdim } => (report.wdim != *wdim)
                .then(|| (format!("wdim={}", wdim_name(*wdim)), format!("wdim={}", wdim_name(report.wdim)))),
        }
    }
}

pub(crate) fn wdim_name(w: Wdim) -> &'static str {
    match w {
        Wdim::Zero => "zero",
        Wdim::Infinite => "infinite",
        Wdim::NotApplicable => "not_applicable",
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Flag { flag, value: true } => write!(f, "{flag}"),
            Expectation::Flag { flag, value: false } => write!(f, "!{flag}"),
            Expectation::Wdim { wdim } => write!(f, "wdim={}", wdim_name(*wdim)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: RingSpec,
    pub expect: Vec<Expectation>,
    pub tags: Vec<String>,
}

/// A ring ready for the suites. Built from a corpus entry, or supplied
/// directly (possibly with broken tables, which the axiom suite catches).
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub ring: RingRef,
    pub spec: Option<RingSpec>,
    pub expect: Vec<Expectation>,
    pub tags: Vec<String>,
}

impl Instance {
    pub fn new(name: impl Into<String>, ring: RingRef) -> Self {
        Instance {
            name: name.into(),
            ring,
            spec: None,
            expect: Vec::new(),
            tags: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

fn parse_expectation(item: &str, line: usize) -> Result<Expectation, CorpusError> {
    let bad = |message: String| CorpusError {
        line,
        error: Error::Parse { position: 0, message },
    };
    let item = item.trim();
    if let Some(flag) = item.strip_prefix('!') {
        return check_flag(flag.trim(), false).ok_or_else(|| bad(format!("unknown flag `{flag}`")));
    }
    match item.split_once('=') {
        None => check_flag(item, true).ok_or_else(|| bad(format!("unknown flag `{item}`"))),
        Some((key, value)) => {
            let (key, value) = (key.trim(), value.trim());
            if key == "wdim" {
                let wdim = match value {
                    "zero" | "0" => Wdim::Zero,
                    "infinite" | "inf" => Wdim::Infinite,
                    "not_applicable" | "n/a" => Wdim::NotApplicable,
                    _ => return Err(bad(format!("unknown wdim value `{value}`"))),
                };
                return Ok(Expectation::Wdim { wdim });
            }
            let value = match value {
                "true" => true,
                "false" => false,
                _ => return Err(bad(format!("expected true or false, found `{value}`"))),
            };
            check_flag(key, value).ok_or_else(|| bad(format!("unknown flag `{key}`")))
        }
    }
}

fn check_flag(name: &str, value: bool) -> Option<Expectation> {
    let canonical = match name {
        "vnr" => "von_neumann_regular",
        "tqr" => "total_quotient_ring",
        other => Flags::NAMES.iter().copied().find(|n| *n == other)?,
    };
    Some(Expectation::Flag {
        flag: canonical.to_string(),
        value,
    })
}

/// A corpus line that failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {error}")]
pub struct CorpusError {
    pub line: usize,
    pub error: Error,
}

impl Corpus {
    /// Reads the line format described in the shipped corpus file.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut entries = Vec::new();
        let mut tags: Vec<String> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let trimmed = raw.trim();
            if let Some(tag) = trimmed.strip_prefix("##") {
                tags = vec![tag.trim().to_string()];
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (body, expect) = match trimmed.find("expect{") {
                Some(at) => {
                    let rest = &trimmed[at + "expect{".len()..];
                    let close = rest.rfind('}').ok_or_else(|| CorpusError {
                        line,
                        error: Error::Parse {
                            position: at,
                            message: "unterminated expect{".into(),
                        },
                    })?;
                    let items = rest[..close]
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| parse_expectation(s, line))
                        .collect::<Result<Vec<_>, _>>()?;
                    (&trimmed[..at], items)
                }
                None => (trimmed, Vec::new()),
            };
            let (name, spec_text) = match body.split_once(':') {
                Some((name, spec)) => (Some(name.trim().to_string()), spec.trim()),
                None => (None, body.trim()),
            };
            let spec = parse_spec(spec_text).map_err(|error| CorpusError { line, error })?;
            entries.push(CorpusEntry {
                name: name.unwrap_or_else(|| spec.to_string()),
                spec,
                expect,
                tags: tags.clone(),
            });
        }
        Ok(Corpus { entries })
    }

    /// The shipped corpus: the four fixture rings plus the families.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("shipped corpus parses")
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Builds every entry. Entries that fail to build (usually a size cap)
    /// come back separately.
    pub fn instances(&self, ring_cap: usize) -> (Vec<Instance>, Vec<(String, Error)>) {
        let mut ok = Vec::new();
        let mut failed = Vec::new();
        for e in &self.entries {
            match e.spec.build(ring_cap) {
                Ok(ring) => ok.push(Instance {
                    name: e.name.clone(),
                    ring: Arc::new(ring.with_name(e.name.clone())),
                    spec: Some(e.spec.clone()),
                    expect: e.expect.clone(),
                    tags: e.tags.clone(),
                }),
                Err(err) => failed.push((e.name.clone(), err)),
            }
        }
        (ok, failed)
    }
}
