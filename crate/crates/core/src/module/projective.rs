use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ring::quotient_ring;

use super::hom::{homs, HomPlan, ModuleHom};
use super::{FiniteModule, Submodule};

/// Projectivity over a finite ring: every local component `eM` must be
/// free. With `q` the residue field size and `q^k = |eM / m·eM|`, the
/// component is free iff `|eM| = |eR|^k`.
pub fn is_projective(m: &FiniteModule) -> bool {
    let ring = m.ring().clone();
    let decomposition = ring.local_factors().clone();
    decomposition.factors.iter().all(|factor| {
        let mut part = fixedbitset::FixedBitSet::with_capacity(m.size());
        for x in 0..m.size() {
            part.insert(m.act(factor.idempotent, x));
        }
        let part = Submodule { members: part };
        let mpart = m
            .ideal_times(
                &crate::ideal::Ideal::from_parts(ring.tag(), factor.maximal_ideal.clone(), None),
                &part,
            )
            .expect("same module");
        let q = ring.size() / factor.maximal_ideal.count_ones(..);
        let mut ratio = part.len() / mpart.len();
        let mut k = 0u32;
        while ratio > 1 {
            ratio /= q;
            k += 1;
        }
        (factor.ring.size() as u128).checked_pow(k) == Some(part.len() as u128)
    })
}

/// Quasi-projectivity via projectivity over `R / Ann(M)`.
pub fn is_quasi_projective(m: &FiniteModule) -> Result<bool> {
    let ann = m.annihilator();
    let (quotient, projection) = quotient_ring(m.ring(), &ann)?;
    let over = m.over_quotient(&Arc::new(quotient), &projection)?;
    Ok(is_projective(&over))
}

/// A submodule `N` of the target together with a map `V → M/N` that does
/// not lift to `V → M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleWitness {
    #[serde(serialize_with = "serialize_submodule")]
    pub submodule: Submodule,
    #[serde(serialize_with = "serialize_hom")]
    pub unliftable: ModuleHom,
}

fn serialize_submodule<S: serde::Serializer>(s: &Submodule, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.members.ones())
}

fn serialize_hom<S: serde::Serializer>(h: &ModuleHom, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(h.map.iter())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub holds: bool,
    pub witness: Option<OracleWitness>,
    pub submodules_checked: usize,
}

fn oracle_caps(v: &FiniteModule, m: &FiniteModule, caps: &Caps) -> Result<()> {
    if m.size() > caps.oracle_module_size {
        return Err(Error::cap(
            "oracle module size",
            m.size() as u128,
            caps.oracle_module_size as u128,
        ));
    }
    let k = v.compact_generators().len();
    if k > caps.oracle_generators {
        return Err(Error::cap("oracle generators", k as u128, caps.oracle_generators as u128));
    }
    Ok(())
}

fn first_unliftable(v: &FiniteModule, m: &FiniteModule, caps: &Caps) -> Result<(Option<OracleWitness>, usize)> {
    if !v.same_ring(m) {
        return Err(Error::ForeignModule);
    }
    oracle_caps(v, m, caps)?;
    let sources = homs(v, m, caps.candidates)?;
    let subs = m.submodules(caps.ideal_count)?;
    for (checked, n) in subs.iter().enumerate() {
        let (q, projection) = m.quotient(n)?;
        let pushed: HashSet<Vec<usize>> = sources
            .iter()
            .map(|f| f.map.iter().map(|&y| projection[y]).collect())
            .collect();
        let mut missing = None;
        HomPlan::new(v, &q, caps.candidates)?.for_each(|t| {
            if pushed.contains(t) {
                ControlFlow::Continue(())
            } else {
                missing = Some(ModuleHom { map: t.to_vec() });
                ControlFlow::Break(())
            }
        });
        if let Some(unliftable) = missing {
            return Ok((
                Some(OracleWitness {
                    submodule: n.clone(),
                    unliftable,
                }),
                checked + 1,
            ));
        }
    }
    Ok((None, subs.len()))
}

/// Brute-force quasi-projectivity: for every submodule `N`, every map
/// `M → M/N` must come from an endomorphism of `M`.
pub fn quasi_projective_oracle(m: &FiniteModule, caps: &Caps) -> Result<OracleVerdict> {
    let (witness, submodules_checked) = first_unliftable(m, m, caps)?;
    Ok(OracleVerdict {
        holds: witness.is_none(),
        witness,
        submodules_checked,
    })
}

/// `V` is `M`-projective iff no map `V → M/N` fails to lift.
pub fn is_relatively_projective(v: &FiniteModule, m: &FiniteModule, caps: &Caps) -> Result<bool> {
    Ok(relative_projectivity_witness(v, m, caps)?.is_none())
}

pub fn relative_projectivity_witness(v: &FiniteModule, m: &FiniteModule, caps: &Caps) -> Result<Option<OracleWitness>> {
    Ok(first_unliftable(v, m, caps)?.0)
}

/// Endomorphisms `f_1..f_n` with `f_i(M) ⊆ N_i` summing to the identity;
/// the first such tuple in lexicographic order of endomorphism tables.
pub fn split_identity(m: &FiniteModule, parts: &[Submodule], caps: &Caps) -> Result<Option<Vec<ModuleHom>>> {
    let mut total = m.zero_submodule();
    for p in parts {
        total = m.submodule_sum(&total, p)?;
    }
    if total != m.whole() {
        return Err(Error::Precondition("parts do not sum to the module".into()));
    }
    if parts.is_empty() {
        return Ok(if m.is_zero() { Some(Vec::new()) } else { None });
    }
    let mut ends = homs(m, m, caps.candidates)?;
    ends.sort();
    let candidates: Vec<Vec<&ModuleHom>> = parts
        .iter()
        .map(|p| ends.iter().filter(|f| f.map.iter().all(|&y| p.contains(y))).collect())
        .collect();
    let (last, init) = candidates.split_last().unwrap();
    let space: u128 = init.iter().map(|c| c.len() as u128).product();
    if space > caps.candidates as u128 {
        return Err(Error::cap("identity splitting tuples", space, caps.candidates as u128));
    }
    let last_set: HashSet<&[usize]> = last.iter().map(|f| f.map.as_slice()).collect();

    fn search<'a>(
        m: &FiniteModule,
        init: &[Vec<&'a ModuleHom>],
        last_set: &HashSet<&[usize]>,
        acc: Vec<usize>,
        chosen: &mut Vec<&'a ModuleHom>,
    ) -> Option<ModuleHom> {
        if chosen.len() == init.len() {
            let rest: Vec<usize> = (0..m.size()).map(|x| m.add(x, m.neg(acc[x]))).collect();
            return last_set.contains(rest.as_slice()).then_some(ModuleHom { map: rest });
        }
        for &f in &init[chosen.len()] {
            let next: Vec<usize> = acc.iter().zip(&f.map).map(|(&a, &b)| m.add(a, b)).collect();
            chosen.push(f);
            if let Some(found) = search(m, init, last_set, next, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    let mut chosen = Vec::new();
    let found = search(m, init, &last_set, vec![m.zero(); m.size()], &mut chosen);
    Ok(found.map(|last| {
        let mut out: Vec<ModuleHom> = chosen.into_iter().cloned().collect();
        out.push(last);
        out
    }))
}

/// Isomorphism invariants of a module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleFingerprint {
    pub size: usize,
    pub annihilator: Vec<usize>,
    pub additive_orders: Vec<usize>,
    pub generators: usize,
}

pub fn module_fingerprint(m: &FiniteModule) -> ModuleFingerprint {
    let mut additive_orders: Vec<usize> = (0..m.size()).map(|x| m.additive_order(x)).collect();
    additive_orders.sort_unstable();
    ModuleFingerprint {
        size: m.size(),
        annihilator: m.annihilator().elements(),
        additive_orders,
        generators: m.minimal_generators().len(),
    }
}

/// Searches `Hom(M, N)` for a bijection after comparing fingerprints.
pub fn are_isomorphic(m: &FiniteModule, n: &FiniteModule, caps: &Caps) -> Result<bool> {
    if !m.same_ring(n) {
        return Err(Error::ForeignModule);
    }
    if module_fingerprint(m) != module_fingerprint(n) {
        return Ok(false);
    }
    let mut found = false;
    HomPlan::new(m, n, caps.candidates)?.for_each(|t| {
        let h = ModuleHom { map: t.to_vec() };
        if h.is_injective(n.size()) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}
