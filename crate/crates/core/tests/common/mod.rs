//! Helpers and brute-force oracles shared by the integration tests. The
//! oracles deliberately avoid the library's own closure and search code.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use fqp_core::module::{FiniteModule, Submodule};
use fqp_core::{parse_spec, FiniteRing, Ideal, RingRef};

pub const EX32: &str = "Poly(2,[x,y],[x^2,x*y,y^2])";
pub const EX33: &str = "Poly(2,[x,y],[x^2,x*y,y^3])";
pub const EX45: &str = "TrivExt(Z(8),[2],1)";
pub const EX46: &str = "TrivExt(Z(4),[2],1)";

pub fn ring(spec: &str) -> RingRef {
    Arc::new(parse_spec(spec).unwrap().build(4096).unwrap())
}

pub fn el(r: &FiniteRing, text: &str) -> usize {
    r.parse_element(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn ideal(r: &FiniteRing, gens: &[&str]) -> Ideal {
    let gens: Vec<usize> = gens.iter().map(|g| el(r, g)).collect();
    r.ideal_generated(&gens).unwrap()
}

pub fn set(xs: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    xs.into_iter().collect()
}

pub fn members(i: &Ideal) -> BTreeSet<usize> {
    set(i.elements())
}

/// Least ideal containing `gens`, by iterating `x+y` and `r·x` to a fixed point.
pub fn naive_closure(r: &FiniteRing, gens: &[usize]) -> BTreeSet<usize> {
    let mut s = set([r.zero()]);
    s.extend(gens.iter().copied());
    loop {
        let mut next = s.clone();
        for &a in &s {
            for &b in &s {
                next.insert(r.add(a, b));
            }
            for c in 0..r.size() {
                next.insert(r.mul(c, a));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

pub fn is_ideal_set(r: &FiniteRing, s: &BTreeSet<usize>) -> bool {
    s.contains(&r.zero())
        && s.iter().all(|&a| {
            s.iter().all(|&b| s.contains(&r.add(a, b))) && (0..r.size()).all(|c| s.contains(&r.mul(c, a)))
        })
}

/// Every ideal, found by testing every subset that contains zero.
/// Only usable up to about 16 elements.
pub fn naive_ideals(r: &FiniteRing) -> BTreeSet<BTreeSet<usize>> {
    let n = r.size();
    assert!(n <= 16, "subset enumeration needs a small ring");
    let others: Vec<usize> = (0..n).filter(|&x| x != r.zero()).collect();
    let mut out = BTreeSet::new();
    for bits in 0u32..(1 << others.len()) {
        let mut s = set([r.zero()]);
        for (k, &x) in others.iter().enumerate() {
            if bits & (1 << k) != 0 {
                s.insert(x);
            }
        }
        if is_ideal_set(r, &s) {
            out.insert(s);
        }
    }
    out
}

pub fn naive_annihilator(r: &FiniteRing, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..r.size())
        .filter(|&c| s.iter().all(|&x| r.mul(c, x) == r.zero()))
        .collect()
}

pub fn naive_units(r: &FiniteRing) -> BTreeSet<usize> {
    (0..r.size())
        .filter(|&a| (0..r.size()).any(|b| r.mul(a, b) == r.one()))
        .collect()
}

/// Every module map, by assigning images element by element and
/// backtracking as soon as an additive or scalar relation among assigned
/// elements breaks.
pub fn naive_homs(from: &FiniteModule, to: &FiniteModule) -> Vec<Vec<usize>> {
    fn consistent(from: &FiniteModule, to: &FiniteModule, f: &[Option<usize>], x: usize) -> bool {
        let fx = f[x].unwrap();
        for a in 0..from.size() {
            let Some(fa) = f[a] else { continue };
            let s = from.add(x, a);
            if let Some(fs) = f[s] {
                if fs != to.add(fx, fa) {
                    return false;
                }
            }
            // x might itself be a sum of two assigned elements.
            let d = from.add(x, from.neg(a));
            if let Some(fd) = f[d] {
                if to.add(fd, fa) != fx {
                    return false;
                }
            }
        }
        for r in 0..from.ring().size() {
            let y = from.act(r, x);
            if let Some(fy) = f[y] {
                if fy != to.act(r, fx) {
                    return false;
                }
            }
            for a in 0..from.size() {
                if from.act(r, a) == x {
                    if let Some(fa) = f[a] {
                        if to.act(r, fa) != fx {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn go(from: &FiniteModule, to: &FiniteModule, f: &mut Vec<Option<usize>>, x: usize, out: &mut Vec<Vec<usize>>) {
        if x == from.size() {
            out.push(f.iter().map(|v| v.unwrap()).collect());
            return;
        }
        for y in 0..to.size() {
            f[x] = Some(y);
            if consistent(from, to, f, x) {
                go(from, to, f, x + 1, out);
            }
        }
        f[x] = None;
    }

    let mut out = Vec::new();
    let mut f = vec![None; from.size()];
    go(from, to, &mut f, 0, &mut out);
    out
}

pub fn naive_submodules(m: &FiniteModule) -> Vec<Submodule> {
    let n = m.size();
    assert!(n <= 16);
    let others: Vec<usize> = (0..n).filter(|&x| x != m.zero()).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << others.len()) {
        let mut s: BTreeSet<usize> = set([m.zero()]);
        for (k, &x) in others.iter().enumerate() {
            if bits & (1 << k) != 0 {
                s.insert(x);
            }
        }
        let closed = s.iter().all(|&a| {
            s.iter().all(|&b| s.contains(&m.add(a, b))) && m.ring().elements().all(|r| s.contains(&m.act(r, a)))
        });
        if closed {
            let gens: Vec<usize> = s.into_iter().collect();
            out.push(m.span(&gens).unwrap());
        }
    }
    out
}

/// Quasi-projectivity straight from the lifting definition, using naive
/// hom enumeration and naive submodule enumeration.
pub fn naive_quasi_projective(m: &FiniteModule) -> bool {
    let ends = naive_homs(m, m);
    naive_submodules(m).iter().all(|n| {
        let (q, proj) = m.quotient(n).unwrap();
        let pushed: BTreeSet<Vec<usize>> = ends.iter().map(|f| f.iter().map(|&y| proj[y]).collect()).collect();
        naive_homs(m, &q).into_iter().all(|g| pushed.contains(&g))
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
