//! Finite modules over finite rings.

mod hom;
mod projective;

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice::{self, Carrier};
use crate::ring::{FiniteRing, LocalFactor, ModulePresentation, RingRef};

pub use hom::{for_each_hom, homs, HomPlan, ModuleHom};
pub use projective::{
    are_isomorphic, is_projective, is_quasi_projective, is_relatively_projective, module_fingerprint,
    quasi_projective_oracle, relative_projectivity_witness, split_identity, ModuleFingerprint, OracleVerdict,
    OracleWitness,
};

/// A finite module: an abelian group table plus a ring action table
/// (`action[r * size + x] = r·x`).
#[derive(Clone)]
pub struct FiniteModule {
    ring: RingRef,
    size: usize,
    add: Vec<u16>,
    action: Vec<u16>,
    zero: usize,
    presentation: Arc<ModulePresentation>,
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteModule")
            .field("ring", &self.ring.name())
            .field("size", &self.size)
            .finish()
    }
}

/// A submodule, as a membership mask over module elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    members: FixedBitSet,
}

impl Submodule {
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }
}

impl Carrier for FiniteModule {
    fn ring(&self) -> &FiniteRing {
        &self.ring
    }
    fn len(&self) -> usize {
        self.size
    }
    fn zero_elem(&self) -> usize {
        self.zero
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add(x, y)
    }
    fn act_on(&self, r: usize, x: usize) -> usize {
        self.act(r, x)
    }
}

impl FiniteModule {
    fn build(
        ring: RingRef,
        size: usize,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        presentation: ModulePresentation,
    ) -> Self {
        let mut add_t = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                add_t.push(add(x, y) as u16);
            }
        }
        let mut act_t = Vec::with_capacity(ring.size() * size);
        for r in 0..ring.size() {
            for x in 0..size {
                act_t.push(act(r, x) as u16);
            }
        }
        FiniteModule {
            ring,
            size,
            add: add_t,
            action: act_t,
            zero,
            presentation: Arc::new(presentation),
        }
    }

    /// Validates raw tables against the module axioms.
    pub fn from_tables(ring: RingRef, size: usize, add: Vec<u16>, action: Vec<u16>, zero: usize) -> Result<Self> {
        if size == 0 || add.len() != size * size || action.len() != ring.size() * size || zero >= size {
            return Err(Error::ModuleAxiom("table dimensions do not match".into()));
        }
        if add.iter().chain(&action).any(|&v| v as usize >= size) {
            return Err(Error::ModuleAxiom("table entry out of range".into()));
        }
        let m = FiniteModule {
            ring,
            size,
            add,
            action,
            zero,
            presentation: Arc::new(ModulePresentation::Opaque),
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// Abelian group axioms plus a bilinear, associative, unital action.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        let r = &self.ring;
        let fail = |msg: String| Err(Error::ModuleAxiom(msg));
        for x in 0..n {
            if self.add(self.zero, x) != x {
                return fail(format!("0 + {x} != {x}"));
            }
            if !(0..n).any(|y| self.add(x, y) == self.zero) {
                return fail(format!("{x} has no additive inverse"));
            }
            if self.act(r.one(), x) != x {
                return fail(format!("1 · {x} != {x}"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail(format!("addition not commutative at ({x}, {y})"));
                }
            }
        }
        let gens = self.additive_generators();
        for &g in &gens {
            for x in 0..n {
                let xg = self.add(x, g);
                for y in 0..n {
                    if self.add(xg, y) != self.add(x, self.add(g, y)) {
                        return fail(format!("addition not associative at ({x}, {g}, {y})"));
                    }
                }
                for s in r.elements() {
                    if self.act(s, xg) != self.add(self.act(s, x), self.act(s, g)) {
                        return fail(format!("action not additive in the module at {s}·({x} + {g})"));
                    }
                }
            }
        }
        let ring_add_gens = crate::ring::iso_additive_generators(r);
        let ring_gens = r.ring_generators();
        for s in r.elements() {
            for x in 0..n {
                for &g in &ring_add_gens {
                    if self.act(r.add(s, g), x) != self.add(self.act(s, x), self.act(g, x)) {
                        return fail(format!("action not additive in the ring at ({s} + {g})·{x}"));
                    }
                }
                for &g in ring_gens.iter() {
                    if self.act(r.mul(s, g), x) != self.act(s, self.act(g, x)) {
                        return fail(format!("action not associative at ({s}·{g})·{x}"));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.action[r * self.size + x] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.size).find(|&y| self.add(x, y) == self.zero).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn presentation(&self) -> &Arc<ModulePresentation> {
        &self.presentation
    }

    pub fn label(&self, x: usize) -> String {
        self.presentation.label(x)
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    pub fn same_ring(&self, other: &FiniteModule) -> bool {
        self.ring.tag() == other.ring.tag()
    }

    /// `R` as a module over itself.
    pub fn regular(ring: &RingRef) -> Self {
        let r = ring.clone();
        Self::build(
            ring.clone(),
            ring.size(),
            ring.zero(),
            |x, y| r.add(x, y),
            |s, x| r.mul(s, x),
            ModulePresentation::Ring {
                ring: ring.presentation().clone(),
                elements: None,
            },
        )
    }

    pub fn zero_module(ring: &RingRef) -> Self {
        Self::build(ring.clone(), 1, 0, |_, _| 0, |_, _| 0, ModulePresentation::Opaque)
    }

    /// An ideal regarded as a module; element `k` is the `k`-th smallest member.
    pub fn from_ideal(ring: &RingRef, ideal: &Ideal) -> Result<Self> {
        if ideal.ring_tag() != ring.tag() {
            return Err(Error::ForeignRing);
        }
        let carrier = ideal.elements();
        let mut pos = vec![usize::MAX; ring.size()];
        for (k, &x) in carrier.iter().enumerate() {
            pos[x] = k;
        }
        let r = ring.clone();
        Ok(Self::build(
            ring.clone(),
            carrier.len(),
            pos[ring.zero()],
            |a, b| pos[r.add(carrier[a], carrier[b])],
            |s, a| pos[r.mul(s, carrier[a])],
            ModulePresentation::Ring {
                ring: ring.presentation().clone(),
                elements: Some(carrier.clone()),
            },
        ))
    }

    /// `R / J`.
    pub fn cyclic(ring: &RingRef, ideal: &Ideal) -> Result<Self> {
        if ideal.ring_tag() != ring.tag() {
            return Err(Error::ForeignRing);
        }
        let regular = Self::regular(ring);
        let sub = Submodule {
            members: ideal.members().clone(),
        };
        Ok(regular.quotient(&sub)?.0)
    }

    /// `M ⊕ N`; element `(m, n)` has index `m·|N| + n`.
    pub fn direct_sum(&self, other: &FiniteModule) -> Result<Self> {
        if !self.same_ring(other) {
            return Err(Error::ForeignRing);
        }
        let nb = other.size;
        let mut parts = Vec::new();
        for m in [self, other] {
            match m.presentation.as_ref() {
                ModulePresentation::Sum { parts: p } => parts.extend(p.iter().cloned()),
                _ => parts.push((m.presentation.clone(), m.size)),
            }
        }
        Ok(Self::build(
            self.ring.clone(),
            self.size * nb,
            self.zero * nb + other.zero,
            |x, y| self.add(x / nb, y / nb) * nb + other.add(x % nb, y % nb),
            |s, x| self.act(s, x / nb) * nb + other.act(s, x % nb),
            ModulePresentation::Sum { parts },
        ))
    }

    /// `M ⊕ … ⊕ M` (`copies` times; zero copies is the zero module).
    pub fn power(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Ok(Self::zero_module(&self.ring));
        }
        let mut acc = self.clone();
        for _ in 1..copies {
            acc = acc.direct_sum(self)?;
        }
        Ok(acc)
    }

    fn own(&self, sub: &Submodule) -> Result<()> {
        if sub.members.len() != self.size {
            return Err(Error::ForeignModule);
        }
        Ok(())
    }

    /// `M / N` and the projection. Cosets are represented by their smallest
    /// element and numbered in order of representatives.
    pub fn quotient(&self, sub: &Submodule) -> Result<(Self, Vec<usize>)> {
        self.own(sub)?;
        let members: Vec<usize> = sub.members.ones().collect();
        let mut class_of = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &y in &members {
                class_of[self.add(x, y)] = c;
            }
        }
        let q = Self::build(
            self.ring.clone(),
            reps.len(),
            class_of[self.zero],
            |a, b| class_of[self.add(reps[a], reps[b])],
            |s, a| class_of[self.act(s, reps[a])],
            ModulePresentation::Cosets {
                base: self.presentation.clone(),
                reps: reps.clone(),
                class_of: class_of.clone(),
            },
        );
        Ok((q, class_of))
    }

    /// A submodule regarded as a module in its own right; element `k` is the
    /// `k`-th smallest member. Also returns the inclusion map.
    pub fn submodule_module(&self, sub: &Submodule) -> Result<(Self, Vec<usize>)> {
        self.own(sub)?;
        let carrier = sub.elements();
        let mut pos = vec![usize::MAX; self.size];
        for (k, &x) in carrier.iter().enumerate() {
            pos[x] = k;
        }
        let presentation = match self.presentation.as_ref() {
            ModulePresentation::Ring { ring, elements } => ModulePresentation::Ring {
                ring: ring.clone(),
                elements: Some(
                    carrier
                        .iter()
                        .map(|&k| elements.as_ref().map_or(k, |e| e[k]))
                        .collect(),
                ),
            },
            _ => ModulePresentation::Opaque,
        };
        let m = Self::build(
            self.ring.clone(),
            carrier.len(),
            pos[self.zero],
            |a, b| pos[self.add(carrier[a], carrier[b])],
            |s, a| pos[self.act(s, carrier[a])],
            presentation,
        );
        Ok((m, carrier))
    }

    /// The same group regarded as a module over `R / K`, given the
    /// projection `R → R/K`. Fails unless `K` acts trivially.
    pub fn over_quotient(&self, quotient: &RingRef, projection: &[usize]) -> Result<Self> {
        let r = &self.ring;
        if projection.len() != r.size() {
            return Err(Error::ForeignRing);
        }
        let mut rep = vec![usize::MAX; quotient.size()];
        for s in r.elements().rev() {
            rep[projection[s]] = s;
        }
        for s in r.elements() {
            let t = rep[projection[s]];
            if (0..self.size).any(|x| self.act(s, x) != self.act(t, x)) {
                return Err(Error::Precondition(
                    "kernel of the quotient map does not annihilate the module".into(),
                ));
            }
        }
        Ok(Self::build(
            quotient.clone(),
            self.size,
            self.zero,
            |x, y| self.add(x, y),
            |c, x| self.act(rep[c], x),
            (*self.presentation).clone(),
        ))
    }

    /// The component `eM` as a module over the local factor `eR`.
    pub fn localize(&self, factor: &LocalFactor) -> Result<Self> {
        if factor.projection.len() != self.ring.size() {
            return Err(Error::ForeignRing);
        }
        let mut part = FixedBitSet::with_capacity(self.size);
        for x in 0..self.size {
            part.insert(self.act(factor.idempotent, x));
        }
        let (sub, _) = self.submodule_module(&Submodule { members: part })?;
        Ok(Self::build(
            factor.ring.clone(),
            sub.size,
            sub.zero,
            |x, y| sub.add(x, y),
            |k, x| sub.act(factor.elements[k], x),
            (*sub.presentation).clone(),
        ))
    }

    pub fn annihilator(&self) -> Ideal {
        let mut gens = FixedBitSet::with_capacity(self.size);
        gens.extend(self.compact_generators());
        let mask = lattice::annihilator(self, &gens);
        Ideal::from_parts(self.ring.tag(), mask, None)
    }

    pub fn whole(&self) -> Submodule {
        let mut all = FixedBitSet::with_capacity(self.size);
        all.insert_range(..);
        Submodule { members: all }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            members: lattice::singleton(self, self.zero),
        }
    }

    pub fn span(&self, gens: &[usize]) -> Result<Submodule> {
        if let Some(&index) = gens.iter().find(|&&g| g >= self.size) {
            return Err(Error::ElementOutOfRange {
                index,
                size: self.size,
            });
        }
        Ok(Submodule {
            members: lattice::span(self, gens.iter().copied()),
        })
    }

    pub fn submodule_from_mask(&self, members: FixedBitSet) -> Result<Submodule> {
        if members.len() != self.size {
            return Err(Error::ForeignModule);
        }
        let closed = lattice::span_mask(self, &members);
        if closed != members {
            return Err(Error::Precondition("subset is not a submodule".into()));
        }
        Ok(Submodule { members })
    }

    pub fn submodule_sum(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        self.own(a)?;
        self.own(b)?;
        Ok(Submodule {
            members: lattice::sum(self, &a.members, &b.members),
        })
    }

    /// `K·N` for an ideal `K` of the ring.
    pub fn ideal_times(&self, ideal: &Ideal, sub: &Submodule) -> Result<Submodule> {
        self.own(sub)?;
        if ideal.ring_tag() != self.ring.tag() {
            return Err(Error::ForeignRing);
        }
        Ok(Submodule {
            members: lattice::ideal_times(self, ideal.members(), &sub.members),
        })
    }

    /// Every submodule, in canonical order (cardinality, then members).
    pub fn submodules(&self, cap: usize) -> Result<Vec<Submodule>> {
        Ok(lattice::all_submodules(self, cap)?
            .into_iter()
            .map(|members| Submodule { members })
            .collect())
    }

    pub fn minimal_generators(&self) -> Vec<usize> {
        lattice::minimal_generators(self, &self.whole().members)
    }

    /// A generating set of least size (one element per position across
    /// the local components).
    pub fn compact_generators(&self) -> Vec<usize> {
        lattice::compact_generators(self, &self.whole().members)
    }

    pub fn minimal_generators_of(&self, sub: &Submodule) -> Result<Vec<usize>> {
        self.own(sub)?;
        Ok(lattice::minimal_generators(self, &sub.members))
    }

    /// Greedy generating set of the additive group.
    pub fn additive_generators(&self) -> Vec<usize> {
        let n = self.size;
        let mut reached = vec![false; n];
        reached[self.zero] = true;
        let mut gens = Vec::new();
        while let Some(g) = (0..n).find(|&x| !reached[x]) {
            gens.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &a in &gens {
                    let y = self.add(x, a);
                    if !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }
}

/// An ideal as a module over its ring.
pub fn module_from_ideal(ring: &RingRef, ideal: &Ideal) -> Result<FiniteModule> {
    FiniteModule::from_ideal(ring, ideal)
}

/// `R / J` as an `R`-module.
pub fn cyclic_module(ring: &RingRef, ideal: &Ideal) -> Result<FiniteModule> {
    FiniteModule::cyclic(ring, ideal)
}

pub fn direct_sum(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
    m.direct_sum(n)
}

pub fn quotient_module(m: &FiniteModule, n: &Submodule) -> Result<(FiniteModule, Vec<usize>)> {
    m.quotient(n)
}
