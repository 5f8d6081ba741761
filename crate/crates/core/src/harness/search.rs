use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::Instance;
use super::query::Query;
use super::suites::CapHit;
use crate::deciders::{classify, DeciderOptions, Flags};
use crate::error::Result;
use crate::ring::{ring_fingerprint, ring_isomorphism, RingFingerprint, RingRef};
use crate::spec::{ElementExpr, Monomial, RingSpec};

const VARS: [&str; 3] = ["x", "y", "z"];

fn primes_up_to(n: usize) -> Vec<u64> {
    (2..=n as u64).filter(|&p| crate::ring::is_prime(p)).collect()
}

/// Order ideals (staircases) of monomials in `k` variables with exactly
/// `size` members, each containing every variable.
fn staircases(k: usize, size: usize) -> Vec<BTreeSet<Vec<u32>>> {
    let mut start = BTreeSet::new();
    start.insert(vec![0u32; k]);
    for i in 0..k {
        let mut e = vec![0u32; k];
        e[i] = 1;
        start.insert(e);
    }
    if start.len() > size {
        return Vec::new();
    }
    let mut layer = BTreeSet::from([start]);
    while layer.iter().next().is_some_and(|s| s.len() < size) {
        let mut next = BTreeSet::new();
        for s in &layer {
            for m in s {
                for i in 0..k {
                    let mut c = m.clone();
                    c[i] += 1;
                    if s.contains(&c) || !lower_closed(s, &c) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.insert(c);
                    next.insert(t);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

fn lower_closed(s: &BTreeSet<Vec<u32>>, m: &[u32]) -> bool {
    (0..m.len()).filter(|&i| m[i] > 0).all(|i| {
        let mut d = m.to_vec();
        d[i] -= 1;
        s.contains(&d)
    })
}

/// Minimal monomials outside a staircase, by degree and then with higher
/// powers of earlier variables first.
fn corners(s: &BTreeSet<Vec<u32>>, k: usize) -> Vec<Vec<u32>> {
    let mut out = BTreeSet::new();
    for m in s {
        for i in 0..k {
            let mut c = m.clone();
            c[i] += 1;
            if !s.contains(&c) && lower_closed(s, &c) {
                out.insert(c);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = out.into_iter().collect();
    out.sort_by(|a, b| {
        let deg = |m: &Vec<u32>| m.iter().sum::<u32>();
        deg(a).cmp(&deg(b)).then_with(|| b.cmp(a))
    });
    out
}

fn monomial(exps: &[u32]) -> Monomial {
    Monomial(
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VARS[i].to_string(), e))
            .collect(),
    )
}

fn var_element(name: &str) -> ElementExpr {
    ElementExpr::Sum(vec![crate::spec::Term {
        negative: false,
        coeff: None,
        monomial: Monomial(vec![(name.to_string(), 1)]),
    }])
}

/// A local family member with the data needed to extend it.
struct Local {
    spec: RingSpec,
    size: usize,
    residue: usize,
    maximal: Vec<ElementExpr>,
}

/// Ring specs from the structured families, up to `size_max` elements:
/// `Z(n)`; monomial quotients of `F_p[x,y,z]`; trivial extensions
/// `A ⋉ (A/m)^j` and `A ⋉ A` of local members; products of two local
/// members. Order is deterministic.
pub fn family_specs(size_max: usize) -> Vec<RingSpec> {
    let mut out = Vec::new();
    let mut locals = Vec::new();
    for n in 1..=size_max as u64 {
        out.push(RingSpec::Z(n));
        let prime = primes_up_to(n as usize).into_iter().find(|p| {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            m == 1
        });
        if let Some(p) = prime {
            locals.push(Local {
                spec: RingSpec::Z(n),
                size: n as usize,
                residue: p as usize,
                maximal: if n == p { Vec::new() } else { vec![ElementExpr::constant(p as i128)] },
            });
        }
    }
    for p in primes_up_to(size_max) {
        for k in 1..=VARS.len() {
            let mut dim = k + 1;
            while (p as u128).pow(dim as u32) <= size_max as u128 {
                for s in staircases(k, dim) {
                    let spec = RingSpec::Poly {
                        p,
                        vars: VARS[..k].iter().map(|v| v.to_string()).collect(),
                        monomials: corners(&s, k).iter().map(|c| monomial(c)).collect(),
                    };
                    out.push(spec.clone());
                    locals.push(Local {
                        spec,
                        size: (p as usize).pow(dim as u32),
                        residue: p as usize,
                        maximal: VARS[..k].iter().map(|v| var_element(v)).collect(),
                    });
                }
                dim += 1;
            }
        }
    }
    let mut extensions = Vec::new();
    for a in &locals {
        let mut size = a.size * a.residue;
        let mut j = 1;
        while size <= size_max {
            extensions.push(Local {
                spec: RingSpec::TrivExt {
                    base: Box::new(a.spec.clone()),
                    gens: a.maximal.clone(),
                    copies: j,
                },
                size,
                residue: a.residue,
                maximal: Vec::new(),
            });
            size *= a.residue;
            j += 1;
        }
        if a.size > 1 && a.size * a.size <= size_max {
            extensions.push(Local {
                spec: RingSpec::TrivExt {
                    base: Box::new(a.spec.clone()),
                    gens: Vec::new(),
                    copies: 1,
                },
                size: a.size * a.size,
                residue: a.residue,
                maximal: Vec::new(),
            });
        }
    }
    out.extend(extensions.iter().map(|e| e.spec.clone()));
    locals.extend(extensions);
    let locals: Vec<&Local> = locals.iter().filter(|l| l.size > 1).collect();
    for (i, a) in locals.iter().enumerate() {
        for b in &locals[i..] {
            if a.size * b.size <= size_max {
                out.push(RingSpec::Prod(Box::new(a.spec.clone()), Box::new(b.spec.clone())));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub name: String,
    pub spec: String,
    pub size: usize,
    pub flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub query: String,
    pub size_max: usize,
    /// Rings classified.
    pub examined: usize,
    /// Matches after removing isomorphic duplicates.
    pub hits: Vec<SearchHit>,
    pub caps_hit: Vec<CapHit>,
    /// No finite ring can match, so any hit is a failure.
    pub forbidden: bool,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        !(self.forbidden && !self.hits.is_empty())
    }
}

/// Classifies the given rings and keeps those matching `query`, one per
/// isomorphism class (first occurrence wins).
pub fn search_instances(instances: &[Instance], query: &Query, size_max: usize, opts: &DeciderOptions) -> SearchReport {
    let results: Vec<(usize, std::result::Result<Flags, String>)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| (i, classify(&inst.ring, opts).map(|r| r.flags).map_err(|e| e.to_string())))
        .collect();
    let mut caps_hit = Vec::new();
    let mut examined = 0;
    let mut matches = Vec::new();
    for (i, res) in results {
        match res {
            Ok(flags) => {
                examined += 1;
                if query.eval(&flags) {
                    matches.push((i, flags));
                }
            }
            Err(what) => caps_hit.push(CapHit {
                ring: instances[i].name.clone(),
                what,
            }),
        }
    }
    let mut classes: BTreeMap<RingFingerprint, Vec<RingRef>> = BTreeMap::new();
    let mut hits = Vec::new();
    for (i, flags) in matches {
        let ring = &instances[i].ring;
        let class = classes.entry(ring_fingerprint(ring)).or_default();
        let duplicate = class
            .iter()
            .any(|other| !matches!(ring_isomorphism(other, ring, opts.caps.candidates), Ok(None)));
        if duplicate {
            continue;
        }
        class.push(ring.clone());
        hits.push(SearchHit {
            name: instances[i].name.clone(),
            spec: ring.spec().to_string(),
            size: ring.size(),
            flags,
        });
    }
    SearchReport {
        query: query.to_string(),
        size_max,
        examined,
        hits,
        caps_hit,
        forbidden: query.forbidden(),
    }
}

/// Searches the structured families up to `size_max` elements.
pub fn search_strictness(size_max: usize, query: &Query, opts: &DeciderOptions) -> Result<SearchReport> {
    let cap = opts.caps.ring_size.min(size_max);
    let instances: Vec<Instance> = family_specs(size_max)
        .into_iter()
        .filter_map(|spec| {
            let ring = spec.build(cap).ok()?;
            Some(Instance {
                name: spec.to_string(),
                ring: Arc::new(ring),
                spec: Some(spec),
                expect: Vec::new(),
                tags: vec!["generated".to_string()],
            })
        })
        .collect();
    Ok(search_instances(&instances, query, size_max, opts))
}
