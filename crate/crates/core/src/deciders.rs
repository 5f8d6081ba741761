//! Ring properties in the hierarchy arithmetical ⇒ fqp ⇒ Gaussian ⇒ Prüfer,
//! plus weak global dimension and two structural inspectors.
//!
//! Local properties are evaluated factor by factor: a finite ring is the
//! product of its local factors, and localizing at a maximal ideal is
//! projecting onto the matching factor.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice;
use crate::module::{is_projective, is_quasi_projective, quasi_projective_oracle, FiniteModule, OracleWitness};
use crate::ring::{FiniteRing, RingRef};

/// Knobs shared by the deciders.
#[derive(Debug, Clone, Default)]
pub struct DeciderOptions {
    pub caps: Caps,
    /// Cross-check every quasi-projectivity verdict by brute force.
    pub oracle: bool,
}

impl DeciderOptions {
    pub fn new(caps: Caps, oracle: bool) -> Self {
        DeciderOptions { caps, oracle }
    }
}

/// Why a Gaussian pair condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianFailure {
    /// `(a,b)²` equals neither `(a²)` nor `(b²)`.
    NoDominantSquare,
    /// `(a,b)² = (a²)` and `ab = 0`, yet `b² ≠ 0` (or the mirror image).
    ZeroProductNonzeroSquare,
}

/// A map `I → I/N` with no lift to an endomorphism of `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleEvidence {
    pub submodule: Vec<String>,
    /// `(generator, image)` pairs of the unliftable map.
    pub images: Vec<(String, String)>,
}

/// Evidence attached to a false flag. Elements are printed labels that
/// parse back in the ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    LocalFactors {
        count: usize,
    },
    IncomparablePair {
        a: String,
        b: String,
    },
    GaussianPair {
        a: String,
        b: String,
        reason: GaussianFailure,
    },
    NotQuasiProjective {
        ideal: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleEvidence>,
    },
    NotProjective {
        ideal: Vec<String>,
    },
    RegularNonUnit {
        element: String,
    },
    Nilpotent {
        element: String,
    },
    NotRegular {
        element: String,
    },
}

pub fn is_local(r: &FiniteRing) -> bool {
    r.is_local()
}

fn incomparable_pair(r: &FiniteRing) -> Option<(usize, usize)> {
    for a in r.elements() {
        for b in a + 1..r.size() {
            if !r.divides(b, a) && !r.divides(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// A pair `(a, b)` with `a ∉ (b)` and `b ∉ (a)`, if any.
pub fn chained_witness(r: &FiniteRing) -> Option<(usize, usize)> {
    incomparable_pair(r)
}

/// Ideals totally ordered by inclusion. Comparing principal ideals is
/// enough: elements separating two incomparable ideals generate
/// incomparable principal ideals.
pub fn is_chained(r: &FiniteRing) -> bool {
    chained_witness(r).is_none()
}

/// An incomparable pair inside some local factor, as elements of `r`.
pub fn arithmetical_witness(r: &FiniteRing) -> Option<(usize, usize)> {
    let decomposition = r.local_factors().clone();
    decomposition.factors.iter().find_map(|f| {
        incomparable_pair(&f.ring).map(|(a, b)| (f.elements[a], f.elements[b]))
    })
}

/// Every local factor is chained.
pub fn is_arithmetical(r: &FiniteRing) -> bool {
    arithmetical_witness(r).is_none()
}

fn gaussian_pair(f: &FiniteRing, a: usize, b: usize) -> Option<GaussianFailure> {
    let (a2, b2, ab) = (f.mul(a, a), f.mul(b, b), f.mul(a, b));
    let by_a = f.divides(a2, ab) && f.divides(a2, b2);
    let by_b = f.divides(b2, ab) && f.divides(b2, a2);
    if !by_a && !by_b {
        return Some(GaussianFailure::NoDominantSquare);
    }
    if ab == f.zero() && ((by_a && b2 != f.zero()) || (by_b && a2 != f.zero())) {
        return Some(GaussianFailure::ZeroProductNonzeroSquare);
    }
    None
}

/// The first failing pair of the local Gaussian criterion, as elements of `r`.
pub fn gaussian_witness(r: &FiniteRing) -> Option<(usize, usize, GaussianFailure)> {
    let decomposition = r.local_factors().clone();
    decomposition.factors.iter().find_map(|f| {
        let ring = &f.ring;
        ring.elements().find_map(|a| {
            (a..ring.size()).find_map(|b| gaussian_pair(ring, a, b).map(|why| (f.elements[a], f.elements[b], why)))
        })
    })
}

/// Local criterion on every factor: for all `a, b`, `(a,b)² = (a²)` or
/// `(a,b)² = (b²)`, and in the first case `ab = 0` forces `b² = 0`.
pub fn is_gaussian(r: &FiniteRing) -> bool {
    gaussian_witness(r).is_none()
}

/// Polynomials `f`, `g` (coefficients listed from degree 0) with
/// `c(fg) ≠ c(f)c(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContentWitness {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

fn span_of(r: &FiniteRing, xs: &[usize]) -> FixedBitSet {
    let principal = r.principal_ideals();
    let mut acc = principal[r.zero()].clone();
    for &x in xs {
        if !acc.contains(x) {
            acc = lattice::sum(r, &acc, &principal[x]);
        }
    }
    acc
}

fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Searches polynomial pairs of degree at most `degree` for a failure of
/// the content formula `c(fg) = c(f)c(g)`. Only ever refutes.
pub fn gaussian_content_witness(r: &FiniteRing, degree: usize, cap: u64) -> Result<Option<ContentWitness>> {
    let n = r.size();
    let space = (n as u128).checked_pow(2 * (degree as u32 + 1)).unwrap_or(u128::MAX);
    if space > cap as u128 {
        return Err(Error::cap("content search pairs", space, cap as u128));
    }
    let len = degree + 1;
    let mut f = vec![0usize; len];
    let mut h = vec![0usize; 2 * len - 1];
    loop {
        let mut g = vec![0usize; len];
        loop {
            h.iter_mut().for_each(|c| *c = r.zero());
            for (i, &fi) in f.iter().enumerate() {
                for (j, &gj) in g.iter().enumerate() {
                    h[i + j] = r.add(h[i + j], r.mul(fi, gj));
                }
            }
            let content = span_of(r, &h);
            let fails = f
                .iter()
                .any(|&fi| g.iter().any(|&gj| !content.contains(r.mul(fi, gj))));
            if fails {
                return Ok(Some(ContentWitness { f, g }));
            }
            if !next_tuple(&mut g, n) {
                break;
            }
        }
        if !next_tuple(&mut f, n) {
            return Ok(None);
        }
    }
}

/// Outcome of the fqp decision over all ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FqpVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub ideals_checked: usize,
    /// Ideals whose verdict was confirmed by brute force.
    pub oracle_checked: usize,
    /// Ideals the brute-force check skipped for exceeding a cap.
    pub oracle_capped: usize,
    /// Ideals on which the brute-force check and the criterion disagree.
    pub disagreements: Vec<Vec<String>>,
}

impl FqpVerdict {
    pub fn oracle_verified(&self) -> bool {
        self.oracle_checked == self.ideals_checked && self.disagreements.is_empty()
    }
}

fn labels(r: &FiniteRing, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| r.label(x)).collect()
}

fn evidence(r: &FiniteRing, module: &FiniteModule, carrier: &[usize], w: &OracleWitness) -> Result<OracleEvidence> {
    let (quotient, _) = module.quotient(&w.submodule)?;
    let submodule = w.submodule.elements().iter().map(|&k| r.label(carrier[k])).collect();
    let images = module
        .compact_generators()
        .into_iter()
        .map(|g| (r.label(carrier[g]), quotient.label(w.unliftable.apply(g))))
        .collect();
    Ok(OracleEvidence { submodule, images })
}

/// The brute-force verdict on one ideal, or the cap that stopped it.
pub type OracleOutcome = Result<(bool, Option<OracleEvidence>)>;

/// Quasi-projectivity of one ideal, with the brute-force cross-check when
/// enabled. Returns the fast verdict and the oracle verdict (`None` when
/// the oracle was off or capped out).
pub fn ideal_quasi_projectivity(
    r: &RingRef,
    ideal: &Ideal,
    opts: &DeciderOptions,
) -> Result<(bool, Option<OracleOutcome>)> {
    let module = FiniteModule::from_ideal(r, ideal)?;
    let fast = is_quasi_projective(&module)?;
    if !opts.oracle {
        return Ok((fast, None));
    }
    let carrier = ideal.elements();
    let oracle = match quasi_projective_oracle(&module, &opts.caps) {
        Ok(v) => {
            let ev = match &v.witness {
                Some(w) => Some(evidence(r, &module, &carrier, w)?),
                None => None,
            };
            Ok((v.holds, ev))
        }
        Err(e) if e.is_resource_cap() => Err(e),
        Err(e) => return Err(e),
    };
    Ok((fast, Some(oracle)))
}

fn fqp_over(r: &RingRef, ideals: &[Ideal], opts: &DeciderOptions) -> Result<FqpVerdict> {
    let mut verdict = FqpVerdict {
        holds: true,
        witness: None,
        ideals_checked: 0,
        oracle_checked: 0,
        oracle_capped: 0,
        disagreements: Vec::new(),
    };
    for ideal in ideals {
        let (fast, oracle) = ideal_quasi_projectivity(r, ideal, opts)?;
        verdict.ideals_checked += 1;
        let gens = r.minimal_generators(ideal)?;
        let mut evidence = None;
        match oracle {
            Some(Ok((holds, ev))) => {
                verdict.oracle_checked += 1;
                if holds != fast {
                    verdict.disagreements.push(labels(r, &gens));
                }
                evidence = ev;
            }
            Some(Err(_)) => verdict.oracle_capped += 1,
            None => {}
        }
        if !fast && verdict.holds {
            verdict.holds = false;
            verdict.witness = Some(Witness::NotQuasiProjective {
                ideal: labels(r, &gens),
                oracle: evidence,
            });
        }
    }
    Ok(verdict)
}

/// Every ideal is quasi-projective (every ideal of a finite ring is
/// finitely generated).
pub fn fqp_verdict(r: &RingRef, opts: &DeciderOptions) -> Result<FqpVerdict> {
    let ideals = r.all_ideals(opts.caps.ideal_count)?;
    fqp_over(r, &ideals, opts)
}

pub fn is_fqp(r: &RingRef, opts: &DeciderOptions) -> Result<bool> {
    let fast = DeciderOptions {
        oracle: false,
        ..opts.clone()
    };
    Ok(fqp_verdict(r, &fast)?.holds)
}

fn prufer_over(r: &RingRef, ideals: &[Ideal]) -> Result<Option<Witness>> {
    for ideal in ideals {
        if ideal.members().ones().any(|x| !r.is_zero_divisor(x)) {
            let module = FiniteModule::from_ideal(r, ideal)?;
            if !is_projective(&module) {
                return Ok(Some(Witness::NotProjective {
                    ideal: labels(r, &r.minimal_generators(ideal)?),
                }));
            }
        }
    }
    Ok(None)
}

/// Every ideal containing a non-zero-divisor is projective. A regular
/// element of a finite ring is a unit, so this always holds.
pub fn is_prufer(r: &RingRef, caps: &Caps) -> Result<bool> {
    Ok(prufer_over(r, &r.all_ideals(caps.ideal_count)?)?.is_none())
}

/// A non-unit that is not a zero-divisor, if any.
pub fn total_quotient_witness(r: &FiniteRing) -> Option<usize> {
    let units = r.units();
    r.elements()
        .find(|&x| units.binary_search(&x).is_err() && !r.is_zero_divisor(x))
}

/// Every non-unit is a zero-divisor.
pub fn is_total_quotient_ring(r: &FiniteRing) -> bool {
    total_quotient_witness(r).is_none()
}

pub fn is_reduced(r: &FiniteRing) -> bool {
    r.nilradical().len() == 1
}

/// An element `a` with `a ∉ (a²)`, if any.
pub fn regularity_witness(r: &FiniteRing) -> Option<usize> {
    r.elements().find(|&a| !r.divides(r.mul(a, a), a))
}

/// Every `a` satisfies `a = a²x` for some `x`.
pub fn is_von_neumann_regular(r: &FiniteRing) -> bool {
    regularity_witness(r).is_none()
}

fn nil_square_zero(r: &FiniteRing) -> bool {
    let nil = r.nilradical();
    nil.iter()
        .all(|&a| nil.iter().all(|&b| r.mul(a, b) == r.zero()))
}

/// Weak global dimension of an fqp ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Wdim {
    Zero,
    Infinite,
    NotApplicable,
}

/// How a local factor enters the weak-dimension verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorCase {
    /// Reduced local, hence a field.
    Field,
    /// Not reduced, and its nilradical squares to zero.
    NilSquareZero,
    /// Not reduced, chained, with nilradical squaring to something nonzero.
    Chained,
    /// Not reduced and neither of the above; impossible for fqp factors.
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WdimVerdict {
    pub value: Wdim,
    pub factor_cases: Vec<FactorCase>,
    /// The case analysis agrees with the value: `Zero` needs every factor a
    /// field, `Infinite` needs no factor in `Neither`.
    pub consistent: bool,
}

pub fn factor_case(f: &FiniteRing) -> FactorCase {
    if is_reduced(f) {
        FactorCase::Field
    } else if nil_square_zero(f) {
        FactorCase::NilSquareZero
    } else if is_chained(f) {
        FactorCase::Chained
    } else {
        FactorCase::Neither
    }
}

/// Classifies the weak global dimension of a ring already known to be fqp
/// or not. A finite fqp ring has weak dimension 0 (reduced, hence a product
/// of fields) or infinity; the value 1 never occurs, since a finite ring of
/// weak dimension at most 1 is reduced.
pub fn wdim_classify(r: &FiniteRing, fqp: bool) -> WdimVerdict {
    if !fqp {
        return WdimVerdict {
            value: Wdim::NotApplicable,
            factor_cases: Vec::new(),
            consistent: true,
        };
    }
    let decomposition = r.local_factors().clone();
    let factor_cases: Vec<FactorCase> = decomposition.factors.iter().map(|f| factor_case(&f.ring)).collect();
    if is_reduced(r) {
        let consistent = factor_cases.iter().all(|c| *c == FactorCase::Field) && is_von_neumann_regular(r);
        WdimVerdict {
            value: Wdim::Zero,
            factor_cases,
            consistent,
        }
    } else {
        let consistent = !factor_cases.contains(&FactorCase::Neither);
        WdimVerdict {
            value: Wdim::Infinite,
            factor_cases,
            consistent,
        }
    }
}

/// Which alternatives hold for a local ring: `Nil(R)² = 0`, chained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    NilSquareZero,
    Chained,
    Both,
    Neither,
}

pub fn nil_chained_alternatives(r: &FiniteRing) -> Dichotomy {
    match (nil_square_zero(r), is_chained(r)) {
        (true, true) => Dichotomy::Both,
        (true, false) => Dichotomy::NilSquareZero,
        (false, true) => Dichotomy::Chained,
        (false, false) => Dichotomy::Neither,
    }
}

/// For a local fqp ring, either `Nil(R)² = 0` or `R` is chained.
/// `Neither` is returned, not hidden, so callers can count it as a failure.
pub fn fqp_dichotomy(r: &RingRef, opts: &DeciderOptions) -> Result<Dichotomy> {
    if !r.is_local() {
        return Err(Error::Precondition("ring is not local".into()));
    }
    if !is_fqp(r, opts)? {
        return Err(Error::Precondition("ring is not fqp".into()));
    }
    Ok(nil_chained_alternatives(r))
}

/// Result of inspecting an incomparable pair `a, b` in a local ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Lemma38Report {
    /// `(a)` and `(b)` are comparable.
    NotApplicable,
    Inspected {
        /// `(a, b)` is quasi-projective.
        hypothesis: bool,
        /// `(a) ∩ (b) = 0`.
        intersection_zero: bool,
        /// `a² = b² = ab = 0`.
        products_zero: bool,
        /// `Ann(a) = Ann(b)`.
        equal_annihilators: bool,
    },
}

impl Lemma38Report {
    /// False only when the hypothesis holds and some conclusion fails.
    pub fn passes(&self) -> bool {
        match *self {
            Lemma38Report::NotApplicable => true,
            Lemma38Report::Inspected {
                hypothesis,
                intersection_zero,
                products_zero,
                equal_annihilators,
            } => !hypothesis || (intersection_zero && products_zero && equal_annihilators),
        }
    }
}

/// Checks the three consequences of `(a, b)` being quasi-projective for
/// incomparable `(a)`, `(b)` in a local ring.
pub fn lemma38_inspect(r: &RingRef, a: usize, b: usize) -> Result<Lemma38Report> {
    if !r.is_local() {
        return Err(Error::Precondition("ring is not local".into()));
    }
    for x in [a, b] {
        if x >= r.size() {
            return Err(Error::ElementOutOfRange { index: x, size: r.size() });
        }
        if x == r.zero() {
            return Err(Error::Precondition("elements must be nonzero".into()));
        }
    }
    lemma38_with(r, a, b, |pair| is_quasi_projective(&FiniteModule::from_ideal(r, pair)?))
}

/// [`lemma38_inspect`] without the precondition checks, with the
/// quasi-projectivity test supplied by the caller (so it can be cached).
pub(crate) fn lemma38_with(
    r: &RingRef,
    a: usize,
    b: usize,
    quasi_projective: impl FnOnce(&Ideal) -> Result<bool>,
) -> Result<Lemma38Report> {
    if r.divides(a, b) || r.divides(b, a) {
        return Ok(Lemma38Report::NotApplicable);
    }
    let pair = r.ideal_generated(&[a, b])?;
    let hypothesis = quasi_projective(&pair)?;
    let (pa, pb) = (r.principal_ideal(a), r.principal_ideal(b));
    let zero = r.zero();
    Ok(Lemma38Report::Inspected {
        hypothesis,
        intersection_zero: r.ideal_intersection(&pa, &pb)?.is_zero(),
        products_zero: r.mul(a, a) == zero && r.mul(b, b) == zero && r.mul(a, b) == zero,
        equal_annihilators: r.annihilator_of(a) == r.annihilator_of(b),
    })
}

/// Property flags of one ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub local: bool,
    pub chained: bool,
    pub arithmetical: bool,
    pub fqp: bool,
    pub gaussian: bool,
    pub prufer: bool,
    pub reduced: bool,
    pub von_neumann_regular: bool,
    pub total_quotient_ring: bool,
}

impl Flags {
    pub const NAMES: [&'static str; 9] = [
        "local",
        "chained",
        "arithmetical",
        "fqp",
        "gaussian",
        "prufer",
        "reduced",
        "von_neumann_regular",
        "total_quotient_ring",
    ];

    /// Looks a flag up by name (`vnr` and `tqr` are accepted abbreviations).
    pub fn get(&self, name: &str) -> Option<bool> {
        Some(match name {
            "local" => self.local,
            "chained" => self.chained,
            "arithmetical" => self.arithmetical,
            "fqp" => self.fqp,
            "gaussian" => self.gaussian,
            "prufer" => self.prufer,
            "reduced" => self.reduced,
            "von_neumann_regular" | "vnr" => self.von_neumann_regular,
            "total_quotient_ring" | "tqr" => self.total_quotient_ring,
            _ => return None,
        })
    }

    /// Implications that must hold between the flags.
    pub fn inconsistencies(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.arithmetical && !self.fqp {
            out.push("arithmetical but not fqp");
        }
        if self.fqp && !self.gaussian {
            out.push("fqp but not gaussian");
        }
        if self.gaussian && !self.prufer {
            out.push("gaussian but not prufer");
        }
        if self.chained && !self.arithmetical {
            out.push("chained but not arithmetical");
        }
        if self.von_neumann_regular && !self.reduced {
            out.push("von neumann regular but not reduced");
        }
        out
    }
}

/// Evidence for each false flag.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chained: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arithmetical: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fqp: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prufer: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub von_neumann_regular: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_quotient_ring: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub ideal_count: usize,
    pub oracle_checked: usize,
    pub oracle_capped: usize,
    pub oracle_disagreements: usize,
    /// Wall time; left out of machine records so reruns compare equal.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Classification of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub spec: String,
    pub size: usize,
    pub flags: Flags,
    pub wdim: Wdim,
    pub wdim_cases: Vec<FactorCase>,
    pub witnesses: Witnesses,
    pub oracle_verified: bool,
    pub stats: Stats,
}

/// Runs every decider on `r`.
pub fn classify(r: &RingRef, opts: &DeciderOptions) -> Result<PropertyReport> {
    let start = Instant::now();
    let ideals = r.all_ideals(opts.caps.ideal_count)?;
    let pair = |(a, b): (usize, usize)| Witness::IncomparablePair {
        a: r.label(a),
        b: r.label(b),
    };
    let mut w = Witnesses::default();

    let local = r.is_local();
    if !local {
        w.local = Some(Witness::LocalFactors {
            count: r.local_factors().factors.len(),
        });
    }
    w.chained = chained_witness(r).map(pair);
    w.arithmetical = arithmetical_witness(r).map(pair);
    w.gaussian = gaussian_witness(r).map(|(a, b, reason)| Witness::GaussianPair {
        a: r.label(a),
        b: r.label(b),
        reason,
    });
    let fqp = fqp_over(r, &ideals, opts)?;
    w.fqp = fqp.witness.clone();
    w.prufer = prufer_over(r, &ideals)?;
    w.total_quotient_ring = total_quotient_witness(r).map(|x| Witness::RegularNonUnit { element: r.label(x) });
    w.reduced = r
        .nilradical()
        .into_iter()
        .find(|&x| x != r.zero())
        .map(|x| Witness::Nilpotent { element: r.label(x) });
    w.von_neumann_regular = regularity_witness(r).map(|x| Witness::NotRegular { element: r.label(x) });

    let flags = Flags {
        local,
        chained: w.chained.is_none(),
        arithmetical: w.arithmetical.is_none(),
        fqp: fqp.holds,
        gaussian: w.gaussian.is_none(),
        prufer: w.prufer.is_none(),
        reduced: w.reduced.is_none(),
        von_neumann_regular: w.von_neumann_regular.is_none(),
        total_quotient_ring: w.total_quotient_ring.is_none(),
    };
    let wdim = wdim_classify(r, flags.fqp);
    Ok(PropertyReport {
        name: r.name().to_string(),
        spec: r.spec().to_string(),
        size: r.size(),
        flags,
        wdim: wdim.value,
        wdim_cases: wdim.factor_cases,
        witnesses: w,
        oracle_verified: opts.oracle && fqp.oracle_verified(),
        stats: Stats {
            ideal_count: ideals.len(),
            oracle_checked: fqp.oracle_checked,
            oracle_capped: fqp.oracle_capped,
            oracle_disagreements: fqp.disagreements.len(),
            elapsed: start.elapsed(),
        },
    })
}
