//! Finite commutative rings stored as explicit operation tables.
//!
//! Elements are indices `0..size`. Every decider in this crate is an
//! exhaustive loop over these tables, so lookups are kept branch-free.

mod axioms;
mod construct;
mod decompose;
mod iso;
pub mod presentation;
mod structure;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use axioms::{check_axioms, check_axioms_exhaustive};
pub use construct::{make_poly_quot, make_product, make_trivial_extension, make_zmod, quotient_ring};
pub use decompose::{LocalDecomposition, LocalFactor};
pub use iso::{is_ring_isomorphism, ring_fingerprint, ring_isomorphism, RingFingerprint};
pub(crate) use construct::is_prime;
pub(crate) use iso::additive_generators as iso_additive_generators;
pub use presentation::{ModulePresentation, Presentation};
pub use structure::RingStructure;

/// Shared handle used wherever a ring is referenced by modules or ideals.
pub type RingRef = Arc<FiniteRing>;

/// Raw operation tables, row-major (`add[a * size + b]`).
///
/// This is the unchecked form of a ring: it is what the axiom suite inspects
/// and what mutation tests corrupt.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingTables {
    pub size: usize,
    pub add: Vec<u16>,
    pub mul: Vec<u16>,
    pub zero: usize,
    pub one: usize,
}

impl RingTables {
    pub(crate) fn from_fns(
        size: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut add_t = Vec::with_capacity(size * size);
        let mut mul_t = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                add_t.push(add(a, b) as u16);
                mul_t.push(mul(a, b) as u16);
            }
        }
        RingTables {
            size,
            add: add_t,
            mul: mul_t,
            zero,
            one,
        }
    }
}

/// A finite commutative unital ring.
#[derive(Clone)]
pub struct FiniteRing {
    tables: RingTables,
    neg: Vec<u16>,
    name: String,
    spec: String,
    tag: u64,
    presentation: Arc<Presentation>,
    principal: OnceLock<Arc<Vec<FixedBitSet>>>,
    decomposition: OnceLock<Arc<LocalDecomposition>>,
    generators: OnceLock<Arc<Vec<usize>>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("size", &self.size())
            .finish()
    }
}

impl FiniteRing {
    /// Validates `tables` against the ring axioms and wraps them.
    pub fn from_tables(tables: RingTables, name: impl Into<String>, spec: impl Into<String>) -> Result<Self> {
        check_axioms(&tables)?;
        Ok(Self::from_tables_unchecked(
            tables,
            name,
            spec,
            Arc::new(Presentation::Opaque),
        ))
    }

    /// Wraps tables without checking the axioms. Callers are the
    /// constructors in this crate, whose outputs are rings by construction.
    pub fn from_tables_unchecked(
        tables: RingTables,
        name: impl Into<String>,
        spec: impl Into<String>,
        presentation: Arc<Presentation>,
    ) -> Self {
        let n = tables.size;
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| tables.add[a * n + b] as usize == tables.zero)
                    .unwrap_or(a) as u16
            })
            .collect();
        let mut hasher = DefaultHasher::new();
        tables.hash(&mut hasher);
        FiniteRing {
            tag: hasher.finish(),
            tables,
            neg,
            name: name.into(),
            spec: spec.into(),
            presentation,
            principal: OnceLock::new(),
            decomposition: OnceLock::new(),
            generators: OnceLock::new(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.tables.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.tables.zero
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.tables.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.tables.add[a * self.tables.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.tables.mul[a * self.tables.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k · a` by repeated addition.
    pub fn scale(&self, k: u64, a: usize) -> usize {
        let mut acc = self.zero();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn element(&self, index: usize) -> Result<RingElement<'_>> {
        if index >= self.size() {
            return Err(Error::ElementOutOfRange {
                index,
                size: self.size(),
            });
        }
        Ok(RingElement { ring: self, index })
    }

    /// Reads an element written in the construction's own syntax, e.g. `x+y`
    /// for a polynomial quotient or `(2,1)` for a trivial extension.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let expr = crate::spec::parse_element(text).map_err(|e| Error::BadElement {
            text: text.to_string(),
            reason: e.to_string(),
        })?;
        self.presentation
            .resolve(&expr)
            .map_err(|reason| Error::BadElement {
                text: text.to_string(),
                reason,
            })
    }

    pub fn label(&self, index: usize) -> String {
        self.presentation.label(index)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_spec(mut self, spec: impl Into<String>) -> Self {
        self.spec = spec.into();
        self
    }

    /// Hash of the operation tables. Two rings with identical tables share a
    /// tag, which is how ideals and modules detect foreign operands.
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn tables(&self) -> &RingTables {
        &self.tables
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size() == 1
    }

    /// Principal ideal masks, one per element, computed once.
    pub fn principal_ideals(&self) -> &Arc<Vec<FixedBitSet>> {
        self.principal.get_or_init(|| {
            let n = self.size();
            Arc::new(
                (0..n)
                    .map(|a| {
                        let mut mask = FixedBitSet::with_capacity(n);
                        for r in 0..n {
                            mask.insert(self.mul(r, a));
                        }
                        mask
                    })
                    .collect(),
            )
        })
    }

    /// True when `a ∈ (b)`.
    #[inline]
    pub fn divides(&self, b: usize, a: usize) -> bool {
        self.principal_ideals()[b].contains(a)
    }

    /// A small set of elements generating the ring (under `+`, `·`, and 1),
    /// chosen greedily by smallest index.
    pub fn ring_generators(&self) -> &Arc<Vec<usize>> {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut covered = self.subring_generated(&gens);
            while let Some(next) = (0..self.size()).find(|&x| !covered.contains(x)) {
                gens.push(next);
                covered = self.subring_generated(&gens);
            }
            Arc::new(gens)
        })
    }

    /// Subring generated by `gens`: the additive span of all monomials in
    /// `gens` (including the empty monomial 1).
    pub fn subring_generated(&self, gens: &[usize]) -> FixedBitSet {
        let n = self.size();
        let mut monomials = FixedBitSet::with_capacity(n);
        let mut stack = vec![self.one()];
        monomials.insert(self.one());
        while let Some(m) = stack.pop() {
            for &g in gens {
                let next = self.mul(m, g);
                if !monomials.put(next) {
                    stack.push(next);
                }
            }
        }
        let monos: Vec<usize> = monomials.ones().collect();
        let mut span = FixedBitSet::with_capacity(n);
        span.insert(self.zero());
        let mut stack = vec![self.zero()];
        while let Some(s) = stack.pop() {
            for &m in &monos {
                let next = self.add(s, m);
                if !span.put(next) {
                    stack.push(next);
                }
            }
        }
        span
    }
}

/// An element paired with its ring, for arithmetic in tests and examples.
#[derive(Clone, Copy)]
pub struct RingElement<'r> {
    ring: &'r FiniteRing,
    index: usize,
}

impl<'r> RingElement<'r> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn pow(self, e: u64) -> Self {
        RingElement {
            ring: self.ring,
            index: self.ring.pow(self.index, e),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.index == self.ring.zero()
    }
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.tag == other.ring.tag && self.index == other.index
    }
}

impl Eq for RingElement<'_> {}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.label(self.index))
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.label(self.index))
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl<'r> $trait for RingElement<'r> {
            type Output = RingElement<'r>;
            fn $method(self, rhs: Self) -> Self::Output {
                assert_eq!(self.ring.tag, rhs.ring.tag, "elements of different rings");
                RingElement {
                    ring: self.ring,
                    index: self.ring.$op(self.index, rhs.index),
                }
            }
        }
    };
}

elem_binop!(Add, add, add);
elem_binop!(Mul, mul, mul);
elem_binop!(Sub, sub, sub);

impl<'r> Neg for RingElement<'r> {
    type Output = RingElement<'r>;
    fn neg(self) -> Self::Output {
        RingElement {
            ring: self.ring,
            index: self.ring.neg(self.index),
        }
    }
}
