use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::corpus::Instance;
use crate::deciders::{
    self, classify, gaussian_content_witness, ideal_quasi_projectivity, is_chained, is_fqp, is_prufer,
    is_total_quotient_ring, nil_chained_alternatives, wdim_classify, DeciderOptions, Dichotomy, Wdim,
};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{
    are_isomorphic, homs, is_quasi_projective, is_relatively_projective, quasi_projective_oracle, split_identity,
    FiniteModule,
};
use crate::ring::{
    check_axioms, check_axioms_exhaustive, is_ring_isomorphism, make_product, make_trivial_extension, quotient_ring,
    ring_isomorphism, FiniteRing, RingRef,
};
use crate::spec::parse_spec;

/// Every suite name accepted by [`verify`], in run order.
pub const SUITES: [&str; 15] = [
    "axioms",
    "chain",
    "oracle",
    "lemma38",
    "dichotomy",
    "zanardo",
    "base_change",
    "localization",
    "split_identity",
    "trivext",
    "wdim",
    "structure",
    "hom_factorization",
    "direct_sum",
    "content",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub ring: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Work skipped because it exceeded a cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapHit {
    pub ring: String,
    pub what: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    /// Suite-specific tallies, e.g. how many ideals were compared.
    pub counters: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    pub caps_hit: Vec<CapHit>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn counter(&self, key: &str) -> usize {
        self.counters.get(key).copied().unwrap_or(0)
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    counters: BTreeMap<String, usize>,
    failures: Vec<Failure>,
    caps: Vec<CapHit>,
}

impl Tally {
    fn count(&mut self, key: &str) {
        self.add(key, 1);
    }

    fn add(&mut self, key: &str, n: usize) {
        *self.counters.entry(key.to_string()).or_default() += n;
    }

    fn fail(&mut self, ring: &str, check: impl Into<String>) -> &mut Failure {
        self.failures.push(Failure {
            ring: ring.to_string(),
            check: check.into(),
            expected: None,
            got: None,
            witness: None,
        });
        self.failures.last_mut().unwrap()
    }

    fn cap(&mut self, ring: &str, what: impl Into<String>) {
        self.caps.push(CapHit {
            ring: ring.to_string(),
            what: what.into(),
        });
    }

    /// Routes a resource cap to the cap list and anything else to a failure.
    fn absorb(&mut self, ring: &str, err: Error) {
        if err.is_resource_cap() {
            self.cap(ring, err.to_string());
        } else {
            self.fail(ring, "unexpected error").witness = Some(err.to_string());
        }
    }

    fn check<T>(&mut self, ring: &str, r: Result<T>) -> Option<T> {
        r.map_err(|e| self.absorb(ring, e)).ok()
    }
}

fn run_each<F>(suite: &str, instances: &[Instance], size_limit: Option<usize>, f: F) -> VerificationReport
where
    F: Fn(&Instance, &mut Tally) -> Result<()> + Sync,
{
    let start = Instant::now();
    let tallies: Vec<Tally> = instances
        .par_iter()
        .map(|inst| {
            let mut t = Tally::default();
            match size_limit {
                Some(limit) if inst.ring.size() > limit => {
                    t.cap(&inst.name, format!("suite ring size {} > {limit}", inst.ring.size()));
                }
                _ => {
                    if let Err(e) = f(inst, &mut t) {
                        t.absorb(&inst.name, e);
                    }
                }
            }
            t
        })
        .collect();
    let mut report = VerificationReport {
        suite: suite.to_string(),
        instances: 0,
        counters: BTreeMap::new(),
        failures: Vec::new(),
        caps_hit: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for t in tallies {
        report.instances += t.instances;
        for (k, v) in t.counters {
            *report.counters.entry(k).or_default() += v;
        }
        report.failures.extend(t.failures);
        report.caps_hit.extend(t.caps);
    }
    report.elapsed = start.elapsed();
    report
}

fn fast(opts: &DeciderOptions) -> DeciderOptions {
    DeciderOptions {
        oracle: false,
        ..opts.clone()
    }
}

fn describe(r: &FiniteRing, ideal: &Ideal) -> String {
    r.describe_ideal(ideal)
}

fn ideal_qp(r: &RingRef, ideal: &Ideal) -> Result<bool> {
    is_quasi_projective(&FiniteModule::from_ideal(r, ideal)?)
}

/// Ring axioms (generator-reduced check, plus the exhaustive triple loop
/// within the suite size cap) and spec print/parse round trip.
pub fn verify_axioms(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let limit = opts.caps.suite_ring_size;
    run_each("axioms", instances, None, |inst, t| {
        t.instances += 1;
        let tables = inst.ring.tables();
        if let Err(e) = check_axioms(tables) {
            t.fail(&inst.name, "ring axioms").witness = Some(e.to_string());
            return Ok(());
        }
        if tables.size <= limit {
            t.count("exhaustive");
            if let Err(e) = check_axioms_exhaustive(tables) {
                t.fail(&inst.name, "ring axioms (exhaustive)").witness = Some(e.to_string());
            }
        }
        if let Some(spec) = &inst.spec {
            let printed = spec.to_string();
            match parse_spec(&printed) {
                Ok(back) if &back == spec => {}
                Ok(back) => {
                    let f = t.fail(&inst.name, "spec round trip");
                    f.expected = Some(printed);
                    f.got = Some(back.to_string());
                }
                Err(e) => t.fail(&inst.name, "spec round trip").witness = Some(e.to_string()),
            }
        }
        Ok(())
    })
}

/// Hierarchy implications and fixture expectations on every ring.
pub fn verify_chain(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let opts = fast(opts);
    run_each("chain", instances, None, |inst, t| {
        let report = classify(&inst.ring, &opts)?;
        t.instances += 1;
        for (flag, on) in [
            ("arithmetical", report.flags.arithmetical),
            ("fqp", report.flags.fqp),
            ("gaussian", report.flags.gaussian),
        ] {
            if on {
                t.count(flag);
            }
        }
        for broken in report.flags.inconsistencies() {
            t.fail(&inst.name, broken);
        }
        for e in &inst.expect {
            if let Some((expected, got)) = e.mismatch(&report) {
                let f = t.fail(&inst.name, "expected flag");
                f.expected = Some(expected);
                f.got = Some(got);
            }
        }
        Ok(())
    })
}

/// The projectivity criterion against the brute-force oracle on every
/// ideal, plus quasi-projectivity of principal ideals and cyclic modules.
pub fn verify_oracle_equivalence(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let opts = DeciderOptions {
        oracle: true,
        ..opts.clone()
    };
    run_each("oracle", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        let ideals = r.all_ideals(opts.caps.ideal_count)?;
        t.instances += 1;
        let mut compared = 0;
        for ideal in &ideals {
            let Some((fast, oracle)) = t.check(&inst.name, ideal_quasi_projectivity(r, ideal, &opts)) else {
                continue;
            };
            t.count("ideals");
            match oracle {
                Some(Ok((holds, _))) => {
                    compared += 1;
                    t.count("compared");
                    if holds != fast {
                        let f = t.fail(&inst.name, "oracle disagrees with criterion");
                        f.witness = Some(describe(r, ideal));
                        f.expected = Some(format!("criterion={fast}"));
                        f.got = Some(format!("oracle={holds}"));
                    }
                }
                Some(Err(_)) => t.count("oracle_capped"),
                None => {}
            }
            if r.is_principal(ideal)? && !fast {
                t.fail(&inst.name, "principal ideal not quasi-projective").witness = Some(describe(r, ideal));
            }
            let cyclic = FiniteModule::cyclic(r, ideal)?;
            t.count("cyclic_modules");
            if !is_quasi_projective(&cyclic)? {
                t.fail(&inst.name, "cyclic module not quasi-projective").witness =
                    Some(format!("R/{}", describe(r, ideal)));
            }
            match quasi_projective_oracle(&cyclic, &opts.caps) {
                Ok(v) if !v.holds => {
                    t.fail(&inst.name, "oracle rejects cyclic module").witness =
                        Some(format!("R/{}", describe(r, ideal)));
                }
                Ok(_) => t.count("cyclic_compared"),
                Err(e) if e.is_resource_cap() => {}
                Err(e) => return Err(e),
            }
        }
        if compared > 0 {
            t.count("rings_compared");
        }
        Ok(())
    })
}

/// Incomparable pairs generating a quasi-projective ideal in a local ring
/// satisfy `(a)∩(b) = 0`, `a² = b² = ab = 0` and `Ann(a) = Ann(b)`.
pub fn verify_lemma38(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("lemma38", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        if !r.is_local() {
            return Ok(());
        }
        t.instances += 1;
        let mut cache: HashMap<FixedBitSet, bool> = HashMap::new();
        for a in r.elements().filter(|&a| a != r.zero()) {
            for b in (a + 1..r.size()).filter(|&b| b != r.zero()) {
                let report = deciders::lemma38_with(r, a, b, |pair| {
                    if let Some(&v) = cache.get(pair.members()) {
                        return Ok(v);
                    }
                    let v = ideal_qp(r, pair)?;
                    cache.insert(pair.members().clone(), v);
                    Ok(v)
                })?;
                match report {
                    deciders::Lemma38Report::NotApplicable => t.count("comparable"),
                    deciders::Lemma38Report::Inspected { hypothesis, .. } => {
                        t.count("incomparable");
                        if hypothesis {
                            t.count("hypothesis_held");
                        }
                        if !report.passes() {
                            let f = t.fail(&inst.name, "conclusion fails under the hypothesis");
                            f.witness = Some(format!("a={}, b={}", r.label(a), r.label(b)));
                            f.got = Some(format!("{report:?}"));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// A local fqp ring has `Nil(R)² = 0` or is chained.
pub fn verify_dichotomy(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let opts = fast(opts);
    run_each("dichotomy", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        if !r.is_local() || !is_fqp(r, &opts)? {
            return Ok(());
        }
        t.instances += 1;
        match nil_chained_alternatives(r) {
            Dichotomy::NilSquareZero => t.count("nil_square_zero"),
            Dichotomy::Chained => t.count("chained"),
            Dichotomy::Both => t.count("both"),
            Dichotomy::Neither => {
                t.fail(&inst.name, "neither Nil(R)^2 = 0 nor chained");
            }
        }
        Ok(())
    })
}

/// In a local ring, a quasi-projective ideal `I` with `n` minimal
/// generators is isomorphic to `(R/Ann(I))^n`.
pub fn verify_zanardo(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("zanardo", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        if !r.is_local() {
            return Ok(());
        }
        t.instances += 1;
        for ideal in r.all_ideals(opts.caps.ideal_count)? {
            if !ideal_qp(r, &ideal)? {
                continue;
            }
            let n = r.minimal_generators(&ideal)?.len();
            let module = FiniteModule::from_ideal(r, &ideal)?;
            let model = FiniteModule::cyclic(r, &r.annihilator(&ideal)?)?.power(n)?;
            if let Some(iso) = t.check(&inst.name, are_isomorphic(&module, &model, &opts.caps)) {
                t.count("ideals");
                if !iso {
                    let f = t.fail(&inst.name, "quasi-projective ideal not (R/Ann I)^n");
                    f.witness = Some(describe(r, &ideal));
                    f.expected = Some(format!("n={n}"));
                }
            }
        }
        Ok(())
    })
}

/// For quasi-projective `M` and any ideal `K`, `M/KM` is quasi-projective
/// over `R/K`.
pub fn verify_base_change(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("base_change", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        t.instances += 1;
        let ideals = r.all_ideals(opts.caps.ideal_count)?;
        let quotients: Vec<(RingRef, Vec<usize>)> = ideals
            .iter()
            .map(|k| quotient_ring(r, k).map(|(q, p)| (Arc::new(q), p)))
            .collect::<Result<_>>()?;
        for ideal in &ideals {
            let module = FiniteModule::from_ideal(r, ideal)?;
            if !is_quasi_projective(&module)? {
                continue;
            }
            for (k, (q, projection)) in ideals.iter().zip(&quotients) {
                let km = module.ideal_times(k, &module.whole())?;
                let (reduced, _) = module.quotient(&km)?;
                let over = reduced.over_quotient(q, projection)?;
                t.count("pairs");
                if !is_quasi_projective(&over)? {
                    let f = t.fail(&inst.name, "M/KM not quasi-projective over R/K");
                    f.witness = Some(format!("M={}, K={}", describe(r, ideal), describe(r, k)));
                }
            }
        }
        Ok(())
    })
}

/// Every local factor of an fqp ring is fqp.
pub fn verify_localization(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let opts = fast(opts);
    run_each("localization", instances, None, |inst, t| {
        let r = &inst.ring;
        if !is_fqp(r, &opts)? {
            return Ok(());
        }
        t.instances += 1;
        let decomposition = r.local_factors().clone();
        for (i, factor) in decomposition.factors.iter().enumerate() {
            t.count("factors");
            if !is_fqp(&factor.ring, &opts)? {
                t.fail(&inst.name, "local factor of an fqp ring is not fqp").witness =
                    Some(format!("factor {i} (idempotent {})", r.label(factor.idempotent)));
            }
        }
        Ok(())
    })
}

/// A quasi-projective ideal written as the sum of the cyclic submodules
/// on its minimal generators admits endomorphisms `f_i` into the parts
/// summing to the identity.
pub fn verify_split_identity(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("split_identity", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        t.instances += 1;
        for ideal in r.all_ideals(opts.caps.ideal_count)? {
            if ideal.len() > opts.caps.oracle_module_size {
                t.cap(&inst.name, format!("ideal {} exceeds oracle module size", describe(r, &ideal)));
                continue;
            }
            let module = FiniteModule::from_ideal(r, &ideal)?;
            if !is_quasi_projective(&module)? {
                continue;
            }
            let parts = module
                .minimal_generators()
                .into_iter()
                .map(|g| module.span(&[g]))
                .collect::<Result<Vec<_>>>()?;
            if let Some(found) = t.check(&inst.name, split_identity(&module, &parts, &opts.caps)) {
                t.count("ideals");
                if found.is_none() {
                    t.fail(&inst.name, "no splitting of the identity").witness = Some(describe(r, &ideal));
                }
            }
        }
        Ok(())
    })
}

/// `A ⋉ (A/m)^j` over every local base of at most 16 elements: fqp exactly
/// when `m² = 0`; fqp descends to `A`; a non-chained local fqp extension
/// has zero-divisors equal to nilpotents; `0 ⋉ E` squares to zero with
/// quotient `A`.
pub fn verify_trivext(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    verify_trivext_with(instances, opts, 16, 2)
}

pub fn verify_trivext_with(
    instances: &[Instance],
    opts: &DeciderOptions,
    base_size: usize,
    max_copies: usize,
) -> VerificationReport {
    let opts = fast(opts);
    let mut seen = std::collections::HashSet::new();
    let bases: Vec<Instance> = instances
        .iter()
        .filter(|i| i.ring.size() <= base_size && i.ring.is_local())
        .filter(|i| seen.insert(i.ring.spec().to_string()))
        .cloned()
        .collect();
    run_each("trivext", &bases, None, |inst, t| {
        let a = &inst.ring;
        let m = r_maximal(a);
        let m_sq_zero = a.ideal_product(&m, &m)?.is_zero();
        let a_fqp = is_fqp(a, &opts)?;
        for j in 1..=max_copies {
            let e = FiniteModule::cyclic(a, &m)?.power(j)?;
            let Some(ring) = t.check(&inst.name, make_trivial_extension(a, &e, opts.caps.ring_size)) else {
                continue;
            };
            let r: RingRef = Arc::new(ring);
            let name = format!("{} ⋉ (A/m)^{j}", inst.name);
            t.instances += 1;
            let fqp = is_fqp(&r, &opts)?;
            if fqp {
                t.count("fqp");
            }
            if fqp != m_sq_zero {
                let f = t.fail(&name, "fqp must match m^2 = 0 in the base");
                f.expected = Some(format!("fqp={m_sq_zero}"));
                f.got = Some(format!("fqp={fqp}"));
            }
            if fqp && !a_fqp {
                t.fail(&name, "fqp extension over a base that is not fqp");
            }
            if fqp && r.is_local() && !is_chained(&r) {
                t.count("zero_divisor_checks");
                if r.zero_divisors() != r.nilradical() {
                    t.fail(&name, "zero-divisors differ from nilpotents");
                }
            }
            let ne = e.size();
            let mut mask = FixedBitSet::with_capacity(r.size());
            for x in 0..ne {
                mask.insert(a.zero() * ne + x);
            }
            let zero_e = r.ideal_from_mask(mask)?;
            if !r.ideal_product(&zero_e, &zero_e)?.is_zero() {
                t.fail(&name, "0 ⋉ E does not square to zero");
            }
            let (q, _) = quotient_ring(&r, &zero_e)?;
            if let Some(iso) = t.check(&name, ring_isomorphism(&q, a, opts.caps.candidates)) {
                if iso.is_none() {
                    t.fail(&name, "(A ⋉ E)/(0 ⋉ E) not isomorphic to A");
                }
            }
        }
        Ok(())
    })
}

fn r_maximal(a: &RingRef) -> Ideal {
    a.maximal_ideals()
        .into_iter()
        .next()
        .unwrap_or_else(|| a.unit_ideal())
}

/// An fqp ring has weak dimension zero or infinity, zero exactly when reduced.
pub fn verify_wdim(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    let opts = fast(opts);
    run_each("wdim", instances, None, |inst, t| {
        let r = &inst.ring;
        let fqp = is_fqp(r, &opts)?;
        t.instances += 1;
        let verdict = wdim_classify(r, fqp);
        match verdict.value {
            Wdim::Zero => t.count("zero"),
            Wdim::Infinite => t.count("infinite"),
            Wdim::NotApplicable => t.count("not_applicable"),
        }
        let reduced = deciders::is_reduced(r);
        let expected = match (fqp, reduced) {
            (false, _) => Wdim::NotApplicable,
            (true, true) => Wdim::Zero,
            (true, false) => Wdim::Infinite,
        };
        if verdict.value != expected {
            let f = t.fail(&inst.name, "weak dimension does not match reducedness");
            f.expected = Some(format!("{expected:?}"));
            f.got = Some(format!("{:?}", verdict.value));
        }
        if !verdict.consistent {
            t.fail(&inst.name, "weak dimension case analysis inconsistent").got =
                Some(format!("{:?}", verdict.factor_cases));
        }
        Ok(())
    })
}

/// Prüfer and total-quotient flags, the unit/zero-divisor split, and the
/// local decomposition (orthogonal idempotents, local factors, product
/// round trip).
pub fn verify_structure(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("structure", instances, None, |inst, t| {
        let r = &inst.ring;
        t.instances += 1;
        if !is_prufer(r, &opts.caps)? {
            t.fail(&inst.name, "not prufer");
        }
        if !is_total_quotient_ring(r) {
            t.fail(&inst.name, "not a total quotient ring");
        }
        let units = r.units();
        let zd = r.zero_divisors();
        let overlap = units.iter().any(|u| zd.binary_search(u).is_ok());
        if r.size() > 1 && (overlap || units.len() + zd.len() != r.size()) {
            t.fail(&inst.name, "units and zero-divisors do not partition the ring");
        }
        let d = r.local_factors().clone();
        let mut total = r.zero();
        for (i, f) in d.factors.iter().enumerate() {
            total = r.add(total, f.idempotent);
            if !f.ring.is_local() {
                t.fail(&inst.name, format!("factor {i} not local"));
            }
            for g in &d.factors[i + 1..] {
                if r.mul(f.idempotent, g.idempotent) != r.zero() {
                    t.fail(&inst.name, "idempotents not orthogonal");
                }
            }
        }
        if d.factors.is_empty() {
            return Ok(());
        }
        if total != r.one() {
            t.fail(&inst.name, "idempotents do not sum to 1");
        }
        if d.sizes().iter().product::<usize>() != r.size() {
            t.fail(&inst.name, "factor sizes do not multiply to the ring size");
        }
        let mut product = (*d.factors[0].ring).clone();
        for f in &d.factors[1..] {
            product = make_product(&product, &f.ring, opts.caps.ring_size)?;
        }
        t.count("round_trips");
        if !is_ring_isomorphism(&product, r, &d.embedding) {
            t.fail(&inst.name, "product of local factors not isomorphic to the ring");
        }
        Ok(())
    })
}

/// `|End(M)|` is the product of `|End(eM)|` over the local factors, for
/// every ideal `M` within the oracle module size.
pub fn verify_hom_factorization(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("hom_factorization", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        t.instances += 1;
        let d = r.local_factors().clone();
        for ideal in r.all_ideals(opts.caps.ideal_count)? {
            if ideal.len() > opts.caps.oracle_module_size {
                continue;
            }
            let module = FiniteModule::from_ideal(r, &ideal)?;
            let Some(whole) = t.check(&inst.name, homs(&module, &module, opts.caps.candidates)) else {
                continue;
            };
            let mut product: usize = 1;
            let mut capped = false;
            for f in &d.factors {
                let local = module.localize(f)?;
                match t.check(&inst.name, homs(&local, &local, opts.caps.candidates)) {
                    Some(h) => product *= h.len(),
                    None => capped = true,
                }
            }
            if capped {
                continue;
            }
            t.count("ideals");
            if whole.len() != product {
                let f = t.fail(&inst.name, "endomorphism count does not factor");
                f.witness = Some(describe(r, &ideal));
                f.expected = Some(product.to_string());
                f.got = Some(whole.len().to_string());
            }
        }
        Ok(())
    })
}

/// For ideals `I`, `J` with `I ∩ J = 0`, `I + J` is quasi-projective iff
/// each of `I`, `J` is projective relative to each of `I`, `J`.
pub fn verify_direct_sum(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("direct_sum", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        t.instances += 1;
        let ideals: Vec<Ideal> = r
            .all_ideals(opts.caps.ideal_count)?
            .into_iter()
            .filter(|i| !i.is_zero())
            .collect();
        let modules = ideals
            .iter()
            .map(|i| FiniteModule::from_ideal(r, i))
            .collect::<Result<Vec<_>>>()?;
        let mut relative_cache: HashMap<(usize, usize), Option<bool>> = HashMap::new();
        for (x, i) in ideals.iter().enumerate() {
            for (y, j) in ideals.iter().enumerate().skip(x + 1) {
                if !r.ideal_intersection(i, j)?.is_zero() {
                    continue;
                }
                let sum = r.ideal_sum(i, j)?;
                if sum.len() > opts.caps.oracle_module_size {
                    continue;
                }
                let mut relative = true;
                let mut capped = false;
                for key in [(x, x), (x, y), (y, x), (y, y)] {
                    let verdict = *relative_cache.entry(key).or_insert_with(|| {
                        t.check(
                            &inst.name,
                            is_relatively_projective(&modules[key.0], &modules[key.1], &opts.caps),
                        )
                    });
                    match verdict {
                        Some(p) => relative &= p,
                        None => capped = true,
                    }
                }
                if capped {
                    continue;
                }
                t.count("pairs");
                let qp = ideal_qp(r, &sum)?;
                if qp != relative {
                    let f = t.fail(&inst.name, "direct sum law");
                    f.witness = Some(format!("{} + {}", describe(r, i), describe(r, j)));
                    f.expected = Some(format!("relative={relative}"));
                    f.got = Some(format!("quasi_projective={qp}"));
                }
            }
        }
        Ok(())
    })
}

/// Gaussian rings admit no content-formula failure up to the configured
/// degree.
pub fn verify_content(instances: &[Instance], opts: &DeciderOptions) -> VerificationReport {
    run_each("content", instances, Some(opts.caps.suite_ring_size), |inst, t| {
        let r = &inst.ring;
        let gaussian = deciders::is_gaussian(r);
        let Some(found) = t.check(
            &inst.name,
            gaussian_content_witness(r, opts.caps.content_degree, opts.caps.content_pairs),
        ) else {
            return Ok(());
        };
        t.instances += 1;
        match (gaussian, found) {
            (true, Some(w)) => {
                let f = t.fail(&inst.name, "content formula fails in a gaussian ring");
                f.witness = Some(format!(
                    "f={:?}, g={:?}",
                    w.f.iter().map(|&c| r.label(c)).collect::<Vec<_>>(),
                    w.g.iter().map(|&c| r.label(c)).collect::<Vec<_>>()
                ));
            }
            (false, Some(_)) => t.count("refuted"),
            (_, None) => t.count("clean"),
        }
        Ok(())
    })
}

fn run_named(name: &str, instances: &[Instance], opts: &DeciderOptions) -> Option<VerificationReport> {
    Some(match name {
        "axioms" => verify_axioms(instances, opts),
        "chain" => verify_chain(instances, opts),
        "oracle" => verify_oracle_equivalence(instances, opts),
        "lemma38" => verify_lemma38(instances, opts),
        "dichotomy" => verify_dichotomy(instances, opts),
        "zanardo" => verify_zanardo(instances, opts),
        "base_change" => verify_base_change(instances, opts),
        "localization" => verify_localization(instances, opts),
        "split_identity" => verify_split_identity(instances, opts),
        "trivext" => verify_trivext(instances, opts),
        "wdim" => verify_wdim(instances, opts),
        "structure" => verify_structure(instances, opts),
        "hom_factorization" => verify_hom_factorization(instances, opts),
        "direct_sum" => verify_direct_sum(instances, opts),
        "content" => verify_content(instances, opts),
        _ => return None,
    })
}

/// Runs the named suites (`"all"` for every suite). The axiom suite always
/// runs first; rings failing it are withheld from the other suites.
pub fn verify(names: &[&str], instances: &[Instance], opts: &DeciderOptions) -> Result<Vec<VerificationReport>> {
    let mut wanted: Vec<&str> = Vec::new();
    for &n in names {
        if n == "all" {
            wanted.extend(SUITES);
        } else if SUITES.contains(&n) {
            wanted.push(n);
        } else {
            return Err(Error::Precondition(format!("unknown suite `{n}`")));
        }
    }
    let axioms = verify_axioms(instances, opts);
    let broken: std::collections::HashSet<&str> = axioms.failures.iter().map(|f| f.ring.as_str()).collect();
    let sound: Vec<Instance> = instances
        .iter()
        .filter(|i| !broken.contains(i.name.as_str()))
        .cloned()
        .collect();
    let mut out = vec![axioms];
    let mut done = vec!["axioms"];
    for name in wanted {
        if done.contains(&name) {
            continue;
        }
        done.push(name);
        out.push(run_named(name, &sound, opts).expect("suite names checked above"));
    }
    Ok(out)
}
