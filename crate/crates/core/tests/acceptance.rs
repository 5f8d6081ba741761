//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.
//!
//! Pinned limits: each fixture classification under 1.0 s; oracle suite
//! under 60.0 s with at least 200 ideals over at least 30 rings. All
//! other checks are exact.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use fqp_core::deciders::*;
use fqp_core::harness::*;
use fqp_core::module::FiniteModule;
use fqp_core::ring::{check_axioms, make_product, make_trivial_extension, quotient_ring, ring_isomorphism};
use fqp_core::{Caps, FiniteRing, RingRef};

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_MIN_IDEALS: usize = 200;
const ORACLE_MIN_RINGS: usize = 30;
const SEARCH_EMPTY_SIZE: usize = 32;
const TRIVEXT_BASE_SIZE: usize = 16;

type Check = Result<String, String>;

fn opts() -> DeciderOptions {
    DeciderOptions::new(Caps::default(), true)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus() -> Vec<Instance> {
    let (instances, failed) = Corpus::builtin().instances(Caps::default().ring_size);
    assert!(failed.is_empty(), "corpus entries failed to build: {failed:?}");
    instances
}

fn suite_ok(r: &VerificationReport) -> Result<(), String> {
    ensure(
        r.passed(),
        format!("{}: {} failures, first {:?}", r.suite, r.failures.len(), r.failures.first()),
    )
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    for (name, spec) in [("ex3.2", EX32), ("ex3.3", EX33), ("ex4.5", EX45), ("ex4.6", EX46)] {
        let start = Instant::now();
        let r = ring(spec);
        let rep = classify(&r, &opts()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(took < FIXTURE_LIMIT, format!("{name} took {took:?}"))?;
        ensure(rep.oracle_verified, format!("{name}: oracle did not verify"))?;
        let f = rep.flags;
        match name {
            "ex3.2" => {
                ensure(r.size() == 8, "ex3.2 size")?;
                ensure(f.local && f.fqp && !f.arithmetical && f.gaussian, "ex3.2 flags")?;
                ensure(rep.wdim == Wdim::Infinite, "ex3.2 wdim")?;
            }
            "ex3.3" => {
                ensure(r.size() == 16, "ex3.3 size")?;
                ensure(f.gaussian && !f.fqp, "ex3.3 flags")?;
                let m = members(&ideal(&r, &["x", "y"]));
                match &rep.witnesses.fqp {
                    Some(Witness::NotQuasiProjective { ideal: gens, .. }) => {
                        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
                        ensure(members(&ideal(&r, &gens)) == m, "ex3.3 witness is not m")?;
                    }
                    other => return Err(format!("ex3.3 witness {other:?}")),
                }
            }
            "ex4.5" => {
                ensure(r.size() == 16, "ex4.5 size")?;
                ensure(f.gaussian && !f.fqp, "ex4.5 flags")?;
            }
            _ => {
                ensure(r.size() == 8, "ex4.6 size")?;
                ensure(f.fqp && !f.arithmetical, "ex4.6 flags")?;
            }
        }
        notes.push(format!("{name} {:.1} ms", took.as_secs_f64() * 1e3));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Check {
    let r = ring(EX32);
    let got: std::collections::BTreeSet<_> = r.all_ideals(1000).map_err(|e| e.to_string())?.iter().map(members).collect();
    let listed: std::collections::BTreeSet<_> = [vec![], vec!["x"], vec!["y"], vec!["x+y"], vec!["x", "y"], vec!["1"]]
        .iter()
        .map(|g| members(&ideal(&r, g)))
        .collect();
    ensure(got.len() == 6 && got == listed, format!("ex3.2 has {} ideals", got.len()))?;

    let r = ring(EX33);
    let m = ideal(&r, &["x", "y"]);
    let ann = r.annihilator(&m).map_err(|e| e.to_string())?;
    ensure(members(&ann) == members(&ideal(&r, &["x", "y^2"])), "Ann(m) != (x,y^2)")?;
    let (q, _) = quotient_ring(&r, &ann).map_err(|e| e.to_string())?;
    ensure(q.size() == 4, format!("quotient size {}", q.size()))?;
    ensure(is_chained(&q), "quotient not chained")?;
    Ok("6 ideals; Ann(m) = (x,y^2); R/Ann(m) of size 4, chained".into())
}

fn criterion_3(corpus: &[Instance]) -> Check {
    let start = Instant::now();
    let rep = verify_oracle_equivalence(corpus, &opts());
    let took = start.elapsed();
    suite_ok(&rep)?;
    let ideals = rep.counter("compared");
    let rings = rep.counter("rings_compared");
    ensure(ideals >= ORACLE_MIN_IDEALS, format!("only {ideals} ideals compared"))?;
    ensure(rings >= ORACLE_MIN_RINGS, format!("only {rings} rings compared"))?;
    ensure(took < ORACLE_LIMIT, format!("took {took:?}"))?;
    Ok(format!(
        "{ideals} ideals over {rings} rings, 0 disagreements, {:.1} s",
        took.as_secs_f64()
    ))
}

fn criterion_4(corpus: &[Instance]) -> Check {
    let rep = verify_chain(corpus, &opts());
    suite_ok(&rep)?;
    let fast = DeciderOptions::new(Caps::default(), false);
    let mut violations = 0;
    for inst in corpus {
        let f = classify(&inst.ring, &fast).map_err(|e| e.to_string())?.flags;
        violations += usize::from(f.arithmetical && !f.fqp) + usize::from(f.fqp && !f.gaussian);
    }
    ensure(violations == 0, format!("{violations} implication violations"))?;
    for q in ["arithmetical & !fqp", "fqp & !gaussian"] {
        let s = search_strictness(SEARCH_EMPTY_SIZE, &parse_query(q).unwrap(), &fast).map_err(|e| e.to_string())?;
        if let Some(hit) = s.hits.first() {
            return Err(format!("`{q}` found {}", hit.spec));
        }
    }
    Ok(format!(
        "{} rings, 0 violations; both forbidden searches empty up to size {SEARCH_EMPTY_SIZE}",
        corpus.len()
    ))
}

fn includes(hits: &[SearchHit], spec: &str) -> bool {
    let target = ring(spec);
    hits.iter().any(|h| {
        let r = ring(&h.spec);
        r.size() == target.size() && ring_isomorphism(&r, &target, 1 << 24).unwrap().is_some()
    })
}

fn criterion_5() -> Check {
    let fast = DeciderOptions::new(Caps::default(), false);
    let mut notes = Vec::new();
    for (q, size, fixtures) in [("fqp & !arithmetical", 8, [EX32, EX46]), ("gaussian & !fqp", 16, [EX33, EX45])] {
        let s = search_strictness(size, &parse_query(q).unwrap(), &fast).map_err(|e| e.to_string())?;
        ensure(!s.hits.is_empty(), format!("`{q}` empty"))?;
        for f in fixtures {
            ensure(includes(&s.hits, f), format!("`{q}` misses {f}"))?;
        }
        notes.push(format!("`{q}` ≤ {size}: {} hits", s.hits.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_6(corpus: &[Instance]) -> Check {
    let fast = DeciderOptions::new(Caps::default(), false);
    let mut seen = std::collections::HashSet::new();
    let mut checked = 0;
    for inst in corpus {
        let a: &RingRef = &inst.ring;
        if a.size() > TRIVEXT_BASE_SIZE || !a.is_local() || !seen.insert(a.spec().to_string()) {
            continue;
        }
        let m = a.maximal_ideals().remove(0);
        let m_sq_zero = a.ideal_product(&m, &m).map_err(|e| e.to_string())?.is_zero();
        let a_fqp = is_fqp(a, &fast).map_err(|e| e.to_string())?;
        for j in 1..=2 {
            let e = FiniteModule::cyclic(a, &m).and_then(|k| k.power(j)).map_err(|e| e.to_string())?;
            let r: RingRef = Arc::new(make_trivial_extension(a, &e, 4096).map_err(|e| e.to_string())?);
            let fqp = is_fqp(&r, &fast).map_err(|e| e.to_string())?;
            ensure(fqp == m_sq_zero, format!("{} j={j}: fqp={fqp}, m^2=0 is {m_sq_zero}", inst.name))?;
            ensure(!fqp || a_fqp, format!("{} j={j}: extension fqp over non-fqp base", inst.name))?;
            checked += 1;
        }
    }
    suite_ok(&verify_trivext(corpus, &opts()))?;
    ensure(checked >= 20, format!("only {checked} extensions"))?;
    Ok(format!("{checked} extensions, 0 mismatches"))
}

fn criterion_7(corpus: &[Instance]) -> Check {
    let o = opts();
    let reports = [
        verify_lemma38(corpus, &o),
        verify_dichotomy(corpus, &o),
        verify_zanardo(corpus, &o),
        verify_base_change(corpus, &o),
        verify_localization(corpus, &o),
        verify_split_identity(corpus, &o),
    ];
    for r in &reports {
        suite_ok(r)?;
    }
    Ok(reports
        .iter()
        .map(|r| format!("{} {}", r.suite, r.instances))
        .collect::<Vec<_>>()
        .join(", "))
}

fn criterion_8(corpus: &[Instance]) -> Check {
    suite_ok(&verify_wdim(corpus, &opts()))?;
    let fast = DeciderOptions::new(Caps::default(), false);
    let mut fqp_rings = 0;
    for inst in corpus {
        let r = &inst.ring;
        if !is_fqp(r, &fast).map_err(|e| e.to_string())? {
            continue;
        }
        fqp_rings += 1;
        let v = wdim_classify(r, true);
        let expected = if is_reduced(r) { Wdim::Zero } else { Wdim::Infinite };
        ensure(v.value == expected && v.consistent, format!("{}: wdim {:?}", inst.name, v.value))?;
    }
    let readme = include_str!("../../../README.md");
    ensure(readme.contains("weak global dimension 1"), "README does not address dimension 1")?;
    Ok(format!("{fqp_rings} fqp rings, each Zero or Infinite as reducedness dictates"))
}

fn criterion_9(corpus: &[Instance]) -> Check {
    suite_ok(&verify_structure(corpus, &opts()))?;
    for inst in corpus {
        let r: &FiniteRing = &inst.ring;
        ensure(is_prufer(&inst.ring, &Caps::default()).unwrap() && is_total_quotient_ring(r), inst.name.clone())?;
        let units = naive_units(r);
        let zd = set(r.zero_divisors());
        ensure(r.size() == 1 || (units.is_disjoint(&zd) && units.len() + zd.len() == r.size()), inst.name.clone())?;
        let d = r.local_factors();
        if d.factors.is_empty() {
            continue;
        }
        let mut acc = d.factors[0].ring.as_ref().clone();
        for f in &d.factors[1..] {
            acc = make_product(&acc, &f.ring, 4096).map_err(|e| e.to_string())?;
        }
        ensure(
            ring_isomorphism(&acc, r, 1 << 26).map_err(|e| e.to_string())?.is_some(),
            format!("{}: factors do not rebuild the ring", inst.name),
        )?;
    }
    Ok(format!("{} rings", corpus.len()))
}

fn criterion_10() -> Check {
    let r = ring(EX32);
    let base = r.tables().clone();
    let n = base.size;
    let mut mutants = 0;
    for slot in 0..n * n {
        for value in 0..n {
            if value == base.mul[slot] as usize {
                continue;
            }
            let mut t = base.clone();
            t.mul[slot] = value as u16;
            ensure(check_axioms(&t).is_err(), format!("mutant at {slot} -> {value} passed"))?;
            mutants += 1;
        }
    }
    let mut t = base.clone();
    t.mul[n + 2] = ((t.mul[n + 2] as usize + 1) % n) as u16;
    let bad = Instance::new(
        "mutant",
        Arc::new(FiniteRing::from_tables_unchecked(t, "mutant", "mutant", r.presentation().clone())),
    );
    let reports = verify(&["chain"], &[bad], &opts()).map_err(|e| e.to_string())?;
    ensure(!reports[0].passed() && reports[1].instances == 0, "mutant reached the chain suite")?;
    Ok(format!("{mutants} single-entry mutants all rejected"))
}

fn main() -> ExitCode {
    let total = Instant::now();
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("fixture classification", Box::new(criterion_1)),
        ("ideal lattice ground truth", Box::new(criterion_2)),
        ("oracle equivalence", Box::new(|| criterion_3(&corpus))),
        ("hierarchy chain", Box::new(|| criterion_4(&corpus))),
        ("strictness witnesses", Box::new(criterion_5)),
        ("trivial extension criterion", Box::new(|| criterion_6(&corpus))),
        ("lemma suites", Box::new(|| criterion_7(&corpus))),
        ("wdim classifier", Box::new(|| criterion_8(&corpus))),
        ("structural invariants", Box::new(|| criterion_9(&corpus))),
        ("mutant sensitivity", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name} ({secs:.2} s): {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
