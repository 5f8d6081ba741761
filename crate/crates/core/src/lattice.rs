//! Submodule arithmetic shared by ideals (submodules of the regular module)
//! and submodules of finite modules.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// An abelian group with a ring action, addressed by element index.
pub(crate) trait Carrier {
    fn ring(&self) -> &FiniteRing;
    fn len(&self) -> usize;
    fn zero_elem(&self) -> usize;
    fn plus(&self, x: usize, y: usize) -> usize;
    fn act_on(&self, r: usize, x: usize) -> usize;
}

impl Carrier for FiniteRing {
    fn ring(&self) -> &FiniteRing {
        self
    }
    fn len(&self) -> usize {
        self.size()
    }
    fn zero_elem(&self) -> usize {
        self.zero()
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add(x, y)
    }
    fn act_on(&self, r: usize, x: usize) -> usize {
        self.mul(r, x)
    }
}

pub(crate) fn singleton<C: Carrier + ?Sized>(c: &C, x: usize) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(c.len());
    m.insert(x);
    m
}

/// `R·x`.
pub(crate) fn cyclic<C: Carrier + ?Sized>(c: &C, x: usize) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(c.len());
    for r in c.ring().elements() {
        m.insert(c.act_on(r, x));
    }
    m
}

/// `A + B` for submodules `A`, `B`.
pub(crate) fn sum<C: Carrier + ?Sized>(c: &C, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    if a.is_subset(b) {
        return b.clone();
    }
    if b.is_subset(a) {
        return a.clone();
    }
    let bs: Vec<usize> = b.ones().collect();
    let mut out = FixedBitSet::with_capacity(c.len());
    for x in a.ones() {
        for &y in &bs {
            out.insert(c.plus(x, y));
        }
    }
    out
}

/// Least submodule containing `gens`.
pub(crate) fn span<C: Carrier + ?Sized>(c: &C, gens: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut current = singleton(c, c.zero_elem());
    for g in gens {
        if !current.contains(g) {
            current = sum(c, &current, &cyclic(c, g));
        }
    }
    current
}

/// Least submodule containing every element of `mask`.
pub(crate) fn span_mask<C: Carrier + ?Sized>(c: &C, mask: &FixedBitSet) -> FixedBitSet {
    span(c, mask.ones().collect::<Vec<_>>())
}

/// Canonical ordering: cardinality, then member list.
pub(crate) fn canonical_cmp(a: &FixedBitSet, b: &FixedBitSet) -> std::cmp::Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

/// Every submodule, as the closure of the cyclic submodules under sums.
pub(crate) fn all_submodules<C: Carrier + ?Sized>(c: &C, cap: usize) -> Result<Vec<FixedBitSet>> {
    let mut cyclics: Vec<FixedBitSet> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in 0..c.len() {
        let m = cyclic(c, x);
        if seen_cyclic.insert(m.clone()) {
            cyclics.push(m);
        }
    }
    let mut found: HashSet<FixedBitSet> = cyclics.iter().cloned().collect();
    let mut list: Vec<FixedBitSet> = cyclics.clone();
    let mut next = 0;
    while next < list.len() {
        if list.len() > cap {
            return Err(Error::cap("submodule count", list.len() as u128, cap as u128));
        }
        let current = list[next].clone();
        next += 1;
        for cy in &cyclics {
            if cy.is_subset(&current) {
                continue;
            }
            let s = sum(c, &current, cy);
            if found.insert(s.clone()) {
                list.push(s);
            }
        }
    }
    if list.len() > cap {
        return Err(Error::cap("submodule count", list.len() as u128, cap as u128));
    }
    list.sort_by(canonical_cmp);
    Ok(list)
}

/// `{ r ∈ R : r·x = 0 for all x ∈ mask }` as a mask over ring elements.
pub(crate) fn annihilator<C: Carrier + ?Sized>(c: &C, mask: &FixedBitSet) -> FixedBitSet {
    let members: Vec<usize> = mask.ones().collect();
    let r = c.ring();
    let mut out = FixedBitSet::with_capacity(r.size());
    for s in r.elements() {
        if members.iter().all(|&x| c.act_on(s, x) == c.zero_elem()) {
            out.insert(s);
        }
    }
    out
}

/// `I·N` for an ideal mask `I` of the ring and a submodule `N`.
pub(crate) fn ideal_times<C: Carrier + ?Sized>(c: &C, ideal: &FixedBitSet, sub: &FixedBitSet) -> FixedBitSet {
    let mut products = FixedBitSet::with_capacity(c.len());
    let xs: Vec<usize> = sub.ones().collect();
    for r in ideal.ones() {
        for &x in &xs {
            products.insert(c.act_on(r, x));
        }
    }
    span_mask(c, &products)
}

/// Minimal generating sets of the local components of a submodule: over
/// each local factor `eR` with maximal ideal `mₑ`, lifts of a basis of
/// `eN / mₑ·eN` chosen greedily by smallest index.
pub(crate) fn factor_generators<C: Carrier + ?Sized>(c: &C, sub: &FixedBitSet) -> Vec<Vec<usize>> {
    let decomposition = c.ring().local_factors().clone();
    let mut out = Vec::new();
    for factor in &decomposition.factors {
        let mut part = FixedBitSet::with_capacity(c.len());
        for x in sub.ones() {
            part.insert(c.act_on(factor.idempotent, x));
        }
        let target = part.count_ones(..);
        let mut current = ideal_times(c, &factor.maximal_ideal, &part);
        let mut gens = Vec::new();
        for x in part.ones() {
            if current.count_ones(..) == target {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = sum(c, &current, &cyclic(c, x));
            }
        }
        out.push(gens);
    }
    out
}

/// Factorwise minimal generators, concatenated in factor order.
pub(crate) fn minimal_generators<C: Carrier + ?Sized>(c: &C, sub: &FixedBitSet) -> Vec<usize> {
    factor_generators(c, sub).concat()
}

/// A generating set of least possible size: the `i`-th factorwise
/// generators added together.
pub(crate) fn compact_generators<C: Carrier + ?Sized>(c: &C, sub: &FixedBitSet) -> Vec<usize> {
    let mut combined: Vec<usize> = Vec::new();
    for gens in factor_generators(c, sub) {
        for (i, g) in gens.into_iter().enumerate() {
            match combined.get_mut(i) {
                Some(acc) => *acc = c.plus(*acc, g),
                None => combined.push(g),
            }
        }
    }
    combined
}
