//! Ring axiom verification.
//!
//! [`check_axioms`] runs in `O(n² · g)` where `g` is the size of a greedy
//! additive generating set: additive associativity uses Light's test over
//! the generators, and once multiplication is known to be bi-additive its
//! associativity is a trilinear identity that only needs checking on
//! generator triples. [`check_axioms_exhaustive`] is the plain triple loop.

use super::RingTables;
use crate::error::{Error, Result};

fn basic_shape(t: &RingTables) -> Result<()> {
    let n = t.size;
    if n == 0 {
        return Err(Error::Axiom("ring has no elements".into()));
    }
    if t.add.len() != n * n || t.mul.len() != n * n {
        return Err(Error::Axiom("table dimensions do not match size".into()));
    }
    if t.zero >= n || t.one >= n {
        return Err(Error::Axiom("zero or one out of range".into()));
    }
    if let Some(bad) = t.add.iter().chain(t.mul.iter()).find(|&&v| v as usize >= n) {
        return Err(Error::Axiom(format!("table entry {bad} out of range")));
    }
    if n > 1 && t.zero == t.one {
        return Err(Error::Axiom("zero equals one in a nonzero ring".into()));
    }
    Ok(())
}

fn pairwise(t: &RingTables) -> Result<()> {
    let n = t.size;
    let add = |a: usize, b: usize| t.add[a * n + b] as usize;
    let mul = |a: usize, b: usize| t.mul[a * n + b] as usize;
    for a in 0..n {
        if add(t.zero, a) != a {
            return Err(Error::Axiom(format!("0 + {a} != {a}")));
        }
        if mul(t.one, a) != a {
            return Err(Error::Axiom(format!("1 · {a} != {a}")));
        }
        if !(0..n).any(|b| add(a, b) == t.zero) {
            return Err(Error::Axiom(format!("{a} has no additive inverse")));
        }
        for b in (a + 1)..n {
            if add(a, b) != add(b, a) {
                return Err(Error::Axiom(format!("addition not commutative at ({a}, {b})")));
            }
            if mul(a, b) != mul(b, a) {
                return Err(Error::Axiom(format!(
                    "multiplication not commutative at ({a}, {b})"
                )));
            }
        }
    }
    Ok(())
}

/// Greedy generating set of the additive magma: every element is reachable
/// from zero by repeatedly adding generators on the right.
fn additive_generators(t: &RingTables) -> Vec<usize> {
    let n = t.size;
    let mut reached = vec![false; n];
    reached[t.zero] = true;
    let mut gens = Vec::new();
    while let Some(g) = (0..n).find(|&x| !reached[x]) {
        gens.push(g);
        let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &a in &gens {
                let y = t.add[x * n + a] as usize;
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// Checks that `t` is a commutative unital ring.
pub fn check_axioms(t: &RingTables) -> Result<()> {
    basic_shape(t)?;
    pairwise(t)?;
    let n = t.size;
    let add = |a: usize, b: usize| t.add[a * n + b] as usize;
    let mul = |a: usize, b: usize| t.mul[a * n + b] as usize;
    let gens = additive_generators(t);
    for &g in &gens {
        for x in 0..n {
            let xg = add(x, g);
            for y in 0..n {
                if add(xg, y) != add(x, add(g, y)) {
                    return Err(Error::Axiom(format!(
                        "addition not associative at ({x}, {g}, {y})"
                    )));
                }
            }
        }
    }
    for &g in &gens {
        for x in 0..n {
            let xg = mul(x, g);
            for y in 0..n {
                if mul(x, add(y, g)) != add(mul(x, y), xg) {
                    return Err(Error::Axiom(format!(
                        "distributivity fails at {x} · ({y} + {g})"
                    )));
                }
            }
        }
    }
    for &a in &gens {
        for &b in &gens {
            let ab = mul(a, b);
            for &c in &gens {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(Error::Axiom(format!(
                        "multiplication not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Triple-loop verification of every axiom. Cubic; intended for small rings
/// and as an independent check of [`check_axioms`].
pub fn check_axioms_exhaustive(t: &RingTables) -> Result<()> {
    basic_shape(t)?;
    pairwise(t)?;
    let n = t.size;
    let add = |a: usize, b: usize| t.add[a * n + b] as usize;
    let mul = |a: usize, b: usize| t.mul[a * n + b] as usize;
    for a in 0..n {
        for b in 0..n {
            let ab_add = add(a, b);
            let ab_mul = mul(a, b);
            for c in 0..n {
                if add(ab_add, c) != add(a, add(b, c)) {
                    return Err(Error::Axiom(format!(
                        "addition not associative at ({a}, {b}, {c})"
                    )));
                }
                if mul(ab_mul, c) != mul(a, mul(b, c)) {
                    return Err(Error::Axiom(format!(
                        "multiplication not associative at ({a}, {b}, {c})"
                    )));
                }
                if mul(a, add(b, c)) != add(ab_mul, mul(a, c)) {
                    return Err(Error::Axiom(format!(
                        "distributivity fails at {a} · ({b} + {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}
