use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::lattice;

use super::FiniteModule;

/// A module homomorphism given by its table on elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleHom {
    pub map: Vec<usize>,
}

impl ModuleHom {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom {
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }

    pub fn is_injective(&self, codomain_size: usize) -> bool {
        let mut seen = vec![false; codomain_size];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self, codomain_size: usize) -> bool {
        let mut seen = vec![false; codomain_size];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Checks additivity and linearity against explicit tables.
    pub fn is_homomorphism(&self, from: &FiniteModule, to: &FiniteModule) -> bool {
        if self.map.len() != from.size() || !from.same_ring(to) || self.map.iter().any(|&y| y >= to.size()) {
            return false;
        }
        (0..from.size()).all(|x| {
            (0..from.size()).all(|y| self.map[from.add(x, y)] == to.add(self.map[x], self.map[y]))
                && from.ring().elements().all(|r| self.map[from.act(r, x)] == to.act(r, self.map[x]))
        })
    }
}

/// Precomputed data for enumerating `Hom(M, N)`.
///
/// A homomorphism is determined by the images of a smallest generating set
/// `g_1..g_k` of `M`; the image of `g_i` must be killed by `Ann(g_i)`. Each
/// element of `M` is stored as a fixed combination `Σ r_i g_i`, so a
/// candidate tuple extends to a table in `O(k·|M|)` and is then checked on
/// additive generators of `M` and ring generators of `R`.
pub struct HomPlan<'a> {
    from: &'a FiniteModule,
    to: &'a FiniteModule,
    gens: Vec<usize>,
    coords: Vec<Vec<usize>>,
    candidates: Vec<Vec<usize>>,
    additive: Vec<usize>,
    ring_gens: Vec<usize>,
}

impl<'a> HomPlan<'a> {
    pub fn new(from: &'a FiniteModule, to: &'a FiniteModule, cap: u64) -> Result<Self> {
        if !from.same_ring(to) {
            return Err(Error::ForeignModule);
        }
        let ring = from.ring();
        let gens = from.compact_generators();
        let k = gens.len();
        let mut coords: Vec<Option<Vec<usize>>> = vec![None; from.size()];
        coords[from.zero()] = Some(vec![ring.zero(); k]);
        for (i, &g) in gens.iter().enumerate() {
            let reached: Vec<usize> = (0..from.size()).filter(|&x| coords[x].is_some()).collect();
            for x in reached {
                for r in ring.elements() {
                    let y = from.add(x, from.act(r, g));
                    if coords[y].is_none() {
                        let mut c = coords[x].clone().unwrap();
                        c[i] = r;
                        coords[y] = Some(c);
                    }
                }
            }
        }
        let coords: Vec<Vec<usize>> = coords
            .into_iter()
            .map(|c| c.expect("minimal generators span the module"))
            .collect();
        let mut candidates = Vec::with_capacity(k);
        let mut space: u128 = 1;
        for &g in &gens {
            let ann: Vec<usize> = lattice::annihilator(from, &lattice::singleton(from, g))
                .ones()
                .collect();
            let c: Vec<usize> = (0..to.size())
                .filter(|&n| ann.iter().all(|&r| to.act(r, n) == to.zero()))
                .collect();
            space = space.saturating_mul(c.len() as u128);
            candidates.push(c);
        }
        if space > cap as u128 {
            return Err(Error::cap("homomorphism candidates", space, cap as u128));
        }
        Ok(HomPlan {
            from,
            to,
            gens,
            coords,
            candidates,
            additive: from.additive_generators(),
            ring_gens: ring.ring_generators().to_vec(),
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Number of candidate generator-image tuples.
    pub fn candidate_count(&self) -> u128 {
        self.candidates.iter().map(|c| c.len() as u128).product()
    }

    fn extend(&self, images: &[usize], table: &mut Vec<usize>) -> bool {
        let (m, n) = (self.from, self.to);
        table.clear();
        for c in &self.coords {
            let mut acc = n.zero();
            for (i, &r) in c.iter().enumerate() {
                acc = n.add(acc, n.act(r, images[i]));
            }
            table.push(acc);
        }
        for &a in &self.additive {
            let ta = table[a];
            for x in 0..m.size() {
                if table[m.add(x, a)] != n.add(table[x], ta) {
                    return false;
                }
            }
        }
        for &r in &self.ring_gens {
            for x in 0..m.size() {
                if table[m.act(r, x)] != n.act(r, table[x]) {
                    return false;
                }
            }
        }
        true
    }

    /// Calls `f` on each homomorphism table, in lexicographic order of
    /// generator images.
    pub fn for_each(&self, mut f: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let k = self.gens.len();
        if self.candidates.iter().any(|c| c.is_empty()) {
            return;
        }
        let mut idx = vec![0usize; k];
        let mut images: Vec<usize> = self.candidates.iter().map(|c| c[0]).collect();
        let mut table = Vec::with_capacity(self.from.size());
        loop {
            if self.extend(&images, &mut table) && f(&table).is_break() {
                return;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < self.candidates[i].len() {
                    images[i] = self.candidates[i][idx[i]];
                    break;
                }
                idx[i] = 0;
                images[i] = self.candidates[i][0];
            }
        }
    }
}

/// Visits every homomorphism `M → N`.
pub fn for_each_hom(
    from: &FiniteModule,
    to: &FiniteModule,
    cap: u64,
    f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    HomPlan::new(from, to, cap)?.for_each(f);
    Ok(())
}

/// All homomorphisms `M → N`.
pub fn homs(from: &FiniteModule, to: &FiniteModule, cap: u64) -> Result<Vec<ModuleHom>> {
    let mut out = Vec::new();
    for_each_hom(from, to, cap, |t| {
        out.push(ModuleHom { map: t.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
