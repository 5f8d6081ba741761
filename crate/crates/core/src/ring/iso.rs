//! Ring isomorphism: cheap invariants first, then a search over images of a
//! ring generating set.

use serde::Serialize;

use super::FiniteRing;
use crate::error::{Error, Result};

/// Isomorphism-invariant summary of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingFingerprint {
    pub size: usize,
    pub units: usize,
    pub nilpotents: usize,
    pub idempotents: usize,
    pub square_zero: usize,
    pub principal_ideals: usize,
    pub additive_orders: Vec<usize>,
    pub factor_sizes: Vec<usize>,
}

pub fn ring_fingerprint(r: &FiniteRing) -> RingFingerprint {
    let mut additive_orders: Vec<usize> = r.elements().map(|x| r.additive_order(x)).collect();
    additive_orders.sort_unstable();
    let mut principal: Vec<_> = r.principal_ideals().iter().collect();
    principal.sort_by(|a, b| a.ones().cmp(b.ones()));
    principal.dedup();
    let mut factor_sizes = r.local_factors().sizes();
    factor_sizes.sort_unstable();
    RingFingerprint {
        size: r.size(),
        units: r.units().len(),
        nilpotents: r.nilradical().len(),
        idempotents: r.idempotents().len(),
        square_zero: r.elements().filter(|&x| r.mul(x, x) == r.zero()).count(),
        principal_ideals: principal.len(),
        additive_orders,
        factor_sizes,
    }
}

fn element_signature(r: &FiniteRing, x: usize) -> (usize, bool, bool, usize, usize) {
    let nil_index = if r.is_nilpotent(x) {
        let mut k = 1;
        let mut acc = x;
        while acc != r.zero() {
            acc = r.mul(acc, x);
            k += 1;
        }
        k
    } else {
        0
    };
    (
        r.additive_order(x),
        r.is_unit(x),
        r.is_idempotent(x),
        nil_index,
        r.principal_ideals()[x].count_ones(..),
    )
}

pub(crate) fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let n = r.size();
    let mut reached = vec![false; n];
    reached[r.zero()] = true;
    let mut gens = Vec::new();
    while let Some(g) = (0..n).find(|&x| !reached[x]) {
        gens.push(g);
        let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &a in &gens {
                let y = r.add(x, a);
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// True when `map` (indexed by elements of `a`) is a bijective unital ring
/// homomorphism `a → b`.
pub fn is_ring_isomorphism(a: &FiniteRing, b: &FiniteRing, map: &[usize]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &y in map {
        if y >= b.size() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    is_ring_hom(a, b, map, &additive_generators(a))
}

fn is_ring_hom(a: &FiniteRing, b: &FiniteRing, map: &[usize], add_gens: &[usize]) -> bool {
    if map[a.one()] != b.one() || map[a.zero()] != b.zero() {
        return false;
    }
    let gens = a.ring_generators();
    for x in a.elements() {
        for &g in add_gens {
            if map[a.add(x, g)] != b.add(map[x], map[g]) {
                return false;
            }
        }
        for &g in gens.iter() {
            if map[a.mul(x, g)] != b.mul(map[x], map[g]) {
                return false;
            }
        }
    }
    true
}

/// Searches for a ring isomorphism `a → b`, returned as an element map.
/// `candidate_cap` bounds the number of generator-image tuples tried.
pub fn ring_isomorphism(a: &FiniteRing, b: &FiniteRing, candidate_cap: u64) -> Result<Option<Vec<usize>>> {
    if ring_fingerprint(a) != ring_fingerprint(b) {
        return Ok(None);
    }
    let n = a.size();
    let gens = a.ring_generators().clone();
    let sig_b: Vec<_> = b.elements().map(|y| element_signature(b, y)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let s = element_signature(a, g);
            b.elements().filter(|&y| sig_b[y] == s).collect()
        })
        .collect();
    let space = candidates
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if space > candidate_cap as u128 {
        return Err(Error::cap("ring isomorphism candidates", space, candidate_cap));
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }

    // Construction program: monomials in the generators by multiplication,
    // then every element as a sum of monomials.
    let mut mono_steps = Vec::new(); // (new, parent, generator slot)
    let mut is_mono = vec![false; n];
    is_mono[a.one()] = true;
    let mut stack = vec![a.one()];
    while let Some(m) = stack.pop() {
        for (slot, &g) in gens.iter().enumerate() {
            let next = a.mul(m, g);
            if !is_mono[next] {
                is_mono[next] = true;
                mono_steps.push((next, m, slot));
                stack.push(next);
            }
        }
    }
    let monos: Vec<usize> = (0..n).filter(|&x| is_mono[x]).collect();
    let mut sum_steps = Vec::new(); // (new, parent, monomial)
    let mut reached = vec![false; n];
    reached[a.zero()] = true;
    let mut stack = vec![a.zero()];
    while let Some(s) = stack.pop() {
        for &m in &monos {
            let next = a.add(s, m);
            if !reached[next] {
                reached[next] = true;
                sum_steps.push((next, s, m));
                stack.push(next);
            }
        }
    }
    debug_assert!(reached.iter().all(|&r| r));

    let add_gens = additive_generators(a);
    let mut choice = vec![0usize; gens.len()];
    let mut mono_img = vec![usize::MAX; n];
    let mut map = vec![usize::MAX; n];
    loop {
        mono_img.fill(usize::MAX);
        mono_img[a.one()] = b.one();
        for &(next, parent, slot) in &mono_steps {
            mono_img[next] = b.mul(mono_img[parent], candidates[slot][choice[slot]]);
        }
        map.fill(usize::MAX);
        map[a.zero()] = b.zero();
        for &(next, parent, m) in &sum_steps {
            map[next] = b.add(map[parent], mono_img[m]);
        }
        if is_ring_isomorphism_with(a, b, &map, &add_gens) {
            return Ok(Some(map));
        }
        let mut i = gens.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn is_ring_isomorphism_with(a: &FiniteRing, b: &FiniteRing, map: &[usize], add_gens: &[usize]) -> bool {
    let mut seen = vec![false; b.size()];
    for &y in map {
        if std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    is_ring_hom(a, b, map, add_gens)
}
