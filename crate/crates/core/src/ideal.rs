//! Ideals of a finite ring, stored as membership masks.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice;
use crate::ring::FiniteRing;

/// An ideal: a membership mask over element indices, tagged with its ring.
/// Generators are remembered when the ideal was built from them.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring_tag: u64,
    members: FixedBitSet,
    gens: Option<Vec<usize>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring_tag == other.ring_tag && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring_tag.hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cardinality first, then member list.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        lattice::canonical_cmp(&self.members, &other.members).then(self.ring_tag.cmp(&other.ring_tag))
    }
}

#[allow(clippy::len_without_is_empty)]
impl Ideal {
    pub(crate) fn from_parts(ring_tag: u64, members: FixedBitSet, gens: Option<Vec<usize>>) -> Self {
        Ideal {
            ring_tag,
            members,
            gens,
        }
    }

    pub fn ring_tag(&self) -> u64 {
        self.ring_tag
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    /// True for the zero ideal. (An ideal always contains zero.)
    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    /// Generators supplied at construction, if any.
    pub fn cached_generators(&self) -> Option<&[usize]> {
        self.gens.as_deref()
    }

    /// Generators supplied at construction, else every member.
    pub fn generators(&self) -> Vec<usize> {
        self.gens.clone().unwrap_or_else(|| self.elements())
    }

    pub fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.gens = Some(gens);
        self
    }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.members.is_subset(&self.members)
    }
}

impl FiniteRing {
    fn own(&self, ideal: &Ideal) -> Result<()> {
        if ideal.ring_tag != self.tag() || ideal.members.len() != self.size() {
            return Err(Error::ForeignRing);
        }
        Ok(())
    }

    fn check_elements(&self, xs: &[usize]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.size()) {
            Some(&index) => Err(Error::ElementOutOfRange {
                index,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }

    fn wrap(&self, members: FixedBitSet) -> Ideal {
        Ideal::from_parts(self.tag(), members, None)
    }

    /// The least ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[usize]) -> Result<Ideal> {
        self.check_elements(gens)?;
        let members = lattice::span(self, gens.iter().copied());
        Ok(Ideal::from_parts(self.tag(), members, Some(gens.to_vec())))
    }

    /// Wraps a mask after checking it is an ideal.
    pub fn ideal_from_mask(&self, members: FixedBitSet) -> Result<Ideal> {
        if members.len() != self.size() {
            return Err(Error::ForeignRing);
        }
        if !members.contains(self.zero()) {
            return Err(Error::Precondition("subset does not contain zero".into()));
        }
        let xs: Vec<usize> = members.ones().collect();
        for &x in &xs {
            for &y in &xs {
                if !members.contains(self.add(x, y)) {
                    return Err(Error::Precondition("subset not closed under addition".into()));
                }
            }
            for r in self.elements() {
                if !members.contains(self.mul(r, x)) {
                    return Err(Error::Precondition("subset not closed under multiplication".into()));
                }
            }
        }
        Ok(self.wrap(members))
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.wrap(lattice::singleton(self, self.zero()))
            .with_generators(Vec::new())
    }

    pub fn unit_ideal(&self) -> Ideal {
        let mut m = FixedBitSet::with_capacity(self.size());
        m.insert_range(..);
        self.wrap(m).with_generators(vec![self.one()])
    }

    pub fn principal_ideal(&self, a: usize) -> Ideal {
        Ideal::from_parts(self.tag(), self.principal_ideals()[a].clone(), Some(vec![a]))
    }

    /// Every ideal, in canonical order (cardinality, then members).
    pub fn all_ideals(&self, cap: usize) -> Result<Vec<Ideal>> {
        Ok(lattice::all_submodules(self, cap)?
            .into_iter()
            .map(|m| self.wrap(m))
            .collect())
    }

    pub fn annihilator(&self, ideal: &Ideal) -> Result<Ideal> {
        self.own(ideal)?;
        let gens = ideal.generators();
        let mut out = FixedBitSet::with_capacity(self.size());
        for r in self.elements() {
            if gens.iter().all(|&x| self.mul(r, x) == self.zero()) {
                out.insert(r);
            }
        }
        Ok(self.wrap(out))
    }

    pub fn annihilator_of(&self, a: usize) -> Ideal {
        let mut out = FixedBitSet::with_capacity(self.size());
        for r in self.elements() {
            if self.mul(r, a) == self.zero() {
                out.insert(r);
            }
        }
        self.wrap(out)
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.own(i)?;
        self.own(j)?;
        let gens = match (&i.gens, &j.gens) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(Ideal::from_parts(
            self.tag(),
            lattice::sum(self, &i.members, &j.members),
            gens,
        ))
    }

    /// `I·J`, the ideal generated by all products.
    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.own(i)?;
        self.own(j)?;
        let left = i.generators();
        let right = j.generators();
        let mut products = FixedBitSet::with_capacity(self.size());
        for &a in &left {
            for &b in &right {
                products.insert(self.mul(a, b));
            }
        }
        Ok(self.wrap(lattice::span_mask(self, &products)))
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.own(i)?;
        self.own(j)?;
        let mut m = i.members.clone();
        m.intersect_with(&j.members);
        Ok(self.wrap(m))
    }

    /// `J ⊆ I`.
    pub fn ideal_contains(&self, i: &Ideal, j: &Ideal) -> Result<bool> {
        self.own(i)?;
        self.own(j)?;
        Ok(i.contains_ideal(j))
    }

    pub fn ideal_equals(&self, i: &Ideal, j: &Ideal) -> Result<bool> {
        self.own(i)?;
        self.own(j)?;
        Ok(i.members == j.members)
    }

    /// A single generator of `I`, smallest index first, if one exists.
    pub fn principal_generator(&self, ideal: &Ideal) -> Result<Option<usize>> {
        self.own(ideal)?;
        let principal = self.principal_ideals();
        Ok(ideal.members.ones().find(|&a| principal[a] == ideal.members))
    }

    pub fn is_principal(&self, ideal: &Ideal) -> Result<bool> {
        Ok(self.principal_generator(ideal)?.is_some())
    }

    /// Minimal generating set: over a local ring, lifts of a basis of
    /// `I / mI`; over a product of local rings, the concatenation of the
    /// factorwise sets.
    pub fn minimal_generators(&self, ideal: &Ideal) -> Result<Vec<usize>> {
        self.own(ideal)?;
        Ok(lattice::minimal_generators(self, &ideal.members))
    }

    /// One maximal ideal per local factor, in factor order.
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        self.local_factors()
            .factors
            .iter()
            .map(|f| self.wrap(f.maximal_ideal.clone()))
            .collect()
    }

    pub fn nilradical_ideal(&self) -> Ideal {
        let mut m = FixedBitSet::with_capacity(self.size());
        for x in self.nilradical() {
            m.insert(x);
        }
        self.wrap(m)
    }

    /// Human-readable member or generator list.
    pub fn describe_ideal(&self, ideal: &Ideal) -> String {
        let gens = match (ideal.cached_generators(), self.principal_generator(ideal)) {
            (Some(g), _) => g.to_vec(),
            (None, Ok(Some(g))) => vec![g],
            (None, _) => lattice::minimal_generators(self, &ideal.members),
        };
        let labels: Vec<String> = gens.iter().map(|&g| self.label(g)).collect();
        format!("({})", labels.join(","))
    }
}
