//! Splitting a finite ring into local factors along primitive idempotents.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::presentation::Presentation;
use super::{FiniteRing, RingRef, RingTables};

/// One local factor `eR` of a ring `R`.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    /// `eR` as a ring with identity `e`.
    pub ring: RingRef,
    /// The primitive idempotent, as an element of `R`.
    pub idempotent: usize,
    /// Factor index → element of `R`.
    pub elements: Vec<usize>,
    /// Element of `R` → factor index (`r ↦ e·r`).
    pub projection: Vec<usize>,
    /// The maximal ideal of `R` lying over this factor:
    /// `{ r : e·r is a non-unit of eR }`.
    pub maximal_ideal: FixedBitSet,
}

/// `R ≅ e₁R × … × e_kR` with the `eᵢ` primitive idempotents in increasing
/// index order.
#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    pub factors: Vec<LocalFactor>,
    /// Mixed-radix tuple index (first factor most significant) → element of
    /// `R`. This is the inverse of the product of the projections, and its
    /// domain ordering matches iterated [`make_product`](super::make_product).
    pub embedding: Vec<usize>,
}

impl LocalDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.ring.size()).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.idempotent).collect()
    }
}

impl FiniteRing {
    /// Nonzero idempotents with no nonzero idempotent strictly below them.
    pub fn primitive_idempotents(&self) -> Vec<usize> {
        let idem: Vec<usize> = self
            .idempotents()
            .into_iter()
            .filter(|&e| e != self.zero())
            .collect();
        idem.iter()
            .copied()
            .filter(|&e| !idem.iter().any(|&f| f != e && self.mul(f, e) == f))
            .collect()
    }

    /// The local factor decomposition, computed once and cached.
    ///
    /// # Panics
    ///
    /// If the tables are not a ring the idempotent bookkeeping can break;
    /// that is reported as a panic rather than an error.
    pub fn local_factors(&self) -> &Arc<LocalDecomposition> {
        self.decomposition.get_or_init(|| Arc::new(decompose(self)))
    }

    pub fn is_local(&self) -> bool {
        self.local_factors().factors.len() == 1
    }
}

fn decompose(r: &FiniteRing) -> LocalDecomposition {
    let n = r.size();
    let prims = r.primitive_idempotents();
    let mut total = r.zero();
    for (i, &e) in prims.iter().enumerate() {
        total = r.add(total, e);
        for &f in &prims[i + 1..] {
            assert_eq!(r.mul(e, f), r.zero(), "primitive idempotents not orthogonal");
        }
    }
    if n > 1 {
        assert_eq!(total, r.one(), "primitive idempotents do not sum to 1");
    }

    let mut factors = Vec::with_capacity(prims.len());
    for &e in &prims {
        let mut in_factor = FixedBitSet::with_capacity(n);
        for x in 0..n {
            in_factor.insert(r.mul(e, x));
        }
        let elements: Vec<usize> = in_factor.ones().collect();
        let mut position = vec![usize::MAX; n];
        for (k, &x) in elements.iter().enumerate() {
            position[x] = k;
        }
        let projection: Vec<usize> = (0..n).map(|x| position[r.mul(e, x)]).collect();
        let m = elements.len();
        let tables = RingTables::from_fns(
            m,
            position[r.zero()],
            position[e],
            |a, b| position[r.add(elements[a], elements[b])],
            |a, b| position[r.mul(elements[a], elements[b])],
        );
        let ring = FiniteRing::from_tables_unchecked(
            tables,
            format!("{} · [{}]", r.name(), r.label(e)),
            format!("{} · [{}]", r.spec(), r.label(e)),
            Arc::new(Presentation::Sub {
                base: r.presentation().clone(),
                elements: elements.clone(),
            }),
        );
        let nonunits: Vec<usize> = (0..m).filter(|&x| !ring.is_unit(x)).collect();
        let mut nonunit_mask = FixedBitSet::with_capacity(m);
        nonunits.iter().for_each(|&x| nonunit_mask.insert(x));
        for &a in &nonunits {
            for &b in &nonunits {
                assert!(
                    nonunit_mask.contains(ring.add(a, b)),
                    "factor at idempotent {e} is not local"
                );
            }
        }
        let mut maximal_ideal = FixedBitSet::with_capacity(n);
        for (x, &px) in projection.iter().enumerate() {
            if nonunit_mask.contains(px) {
                maximal_ideal.insert(x);
            }
        }
        factors.push(LocalFactor {
            ring: Arc::new(ring),
            idempotent: e,
            elements,
            projection,
            maximal_ideal,
        });
    }

    let total_size: usize = factors.iter().map(|f| f.ring.size()).product();
    assert_eq!(total_size, n, "factor sizes do not multiply to the ring size");
    let mut embedding = Vec::with_capacity(n);
    for t in 0..n {
        let mut rest = t;
        let mut x = r.zero();
        for f in factors.iter().rev() {
            let m = f.ring.size();
            x = r.add(x, f.elements[rest % m]);
            rest /= m;
        }
        embedding.push(x);
    }
    LocalDecomposition { factors, embedding }
}
