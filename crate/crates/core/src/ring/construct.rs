use std::collections::HashMap;
use std::sync::Arc;

use super::presentation::{monomial_text, Presentation};
use super::{FiniteRing, RingRef, RingTables};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::FiniteModule;

fn check_size(size: u128, cap: usize) -> Result<usize> {
    if size > cap as u128 {
        return Err(Error::cap("ring size", size, cap as u128));
    }
    Ok(size as usize)
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The integers modulo `n`, with element `k` the residue `k`.
pub fn make_zmod(n: u64, cap: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let size = check_size(n as u128, cap)?;
    let tables = RingTables::from_fns(
        size,
        0,
        if size == 1 { 0 } else { 1 },
        |a, b| (a + b) % size,
        |a, b| (a * b) % size,
    );
    let spec = format!("Z({n})");
    Ok(FiniteRing::from_tables_unchecked(
        tables,
        spec.clone(),
        spec,
        Arc::new(Presentation::Zmod { n }),
    ))
}

/// `F_p[vars] / (monomials)`, where each generator is an exponent vector
/// over `vars`. The ideal must contain a power of every variable.
pub fn make_poly_quot(p: u64, vars: &[String], gens: &[Vec<u32>], cap: usize) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let k = vars.len();
    if let Some(bad) = gens.iter().find(|g| g.len() != k) {
        return Err(Error::Precondition(format!(
            "monomial has {} exponents for {k} variables",
            bad.len()
        )));
    }
    let divides = |g: &[u32], e: &[u32]| g.iter().zip(e).all(|(a, b)| a <= b);
    let basis: Vec<Vec<u32>> = if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        Vec::new()
    } else {
        let mut bounds = Vec::with_capacity(k);
        for (i, var) in vars.iter().enumerate() {
            let pure = gens
                .iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g[i])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Err(Error::InfiniteQuotient(var.clone())),
            }
        }
        let box_size: u128 = bounds.iter().map(|&b| b as u128).product();
        if box_size > 64 * cap as u128 {
            return Err(Error::cap("monomial box", box_size, 64 * cap as u128));
        }
        let mut basis = Vec::new();
        let mut exps = vec![0u32; k];
        loop {
            if !gens.iter().any(|g| divides(g, &exps)) {
                basis.push(exps.clone());
            }
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        basis
    };
    let b = basis.len();
    let size = check_size((p as u128).checked_pow(b as u32).unwrap_or(u128::MAX), cap)?;
    let p_us = p as usize;

    let index_of: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let basis_product: Vec<Vec<Option<usize>>> = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| {
                    let w: Vec<u32> = u.iter().zip(v).map(|(a, b)| a + b).collect();
                    index_of.get(w.as_slice()).copied()
                })
                .collect()
        })
        .collect();
    let powers: Vec<usize> = (0..b).map(|t| p_us.pow(t as u32)).collect();
    let digits = |x: usize| -> Vec<usize> { (0..b).map(|t| (x / powers[t]) % p_us).collect() };
    let encode = |coords: &[usize]| -> usize { coords.iter().zip(&powers).map(|(c, w)| c * w).sum() };

    let mut add = vec![0u16; size * size];
    for x in 0..size {
        let dx = digits(x);
        for y in 0..size {
            let v = if p == 2 {
                x ^ y
            } else {
                let dy = digits(y);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, c)| (a + c) % p_us).collect();
                encode(&s)
            };
            add[x * size + y] = v as u16;
        }
    }

    // Rows for the single-term elements c·basis[t]; every other row is a sum
    // of an earlier row and one of these.
    let mut single: Vec<Vec<Vec<u16>>> = vec![vec![Vec::new(); p_us]; b];
    for (t, rows) in single.iter_mut().enumerate() {
        for (c, slot) in rows.iter_mut().enumerate().skip(1) {
            let row = (0..size)
                .map(|y| {
                    let dy = digits(y);
                    let mut out = vec![0usize; b];
                    for (l, &cy) in dy.iter().enumerate() {
                        if cy == 0 {
                            continue;
                        }
                        if let Some(w) = basis_product[t][l] {
                            out[w] = (out[w] + c * cy) % p_us;
                        }
                    }
                    encode(&out) as u16
                })
                .collect();
            *slot = row;
        }
    }
    let mut mul = vec![0u16; size * size];
    for x in 1..size {
        let t = (0..b).find(|&t| !(x / powers[t]).is_multiple_of(p_us)).unwrap();
        let c = (x / powers[t]) % p_us;
        let rest = x - c * powers[t];
        for y in 0..size {
            let a = mul[rest * size + y] as usize;
            let s = single[t][c][y] as usize;
            mul[x * size + y] = add[a * size + s];
        }
    }
    let one = if b == 0 { 0 } else { 1 };
    let tables = RingTables {
        size,
        add,
        mul,
        zero: 0,
        one,
    };
    let gen_text: Vec<String> = gens.iter().map(|g| monomial_text(vars, g)).collect();
    let spec = format!("Poly({p},[{}],[{}])", vars.join(","), gen_text.join(","));
    Ok(FiniteRing::from_tables_unchecked(
        tables,
        spec.clone(),
        spec,
        Arc::new(Presentation::Poly {
            p,
            vars: vars.to_vec(),
            basis,
        }),
    ))
}

/// Componentwise ring on `A × B`; element `(a, b)` has index `a·|B| + b`.
pub fn make_product(a: &FiniteRing, b: &FiniteRing, cap: usize) -> Result<FiniteRing> {
    let (na, nb) = (a.size(), b.size());
    let size = check_size(na as u128 * nb as u128, cap)?;
    let tables = RingTables::from_fns(
        size,
        a.zero() * nb + b.zero(),
        a.one() * nb + b.one(),
        |x, y| a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb),
        |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
    );
    let spec = format!("Prod({},{})", a.spec(), b.spec());
    Ok(FiniteRing::from_tables_unchecked(
        tables,
        format!("{} × {}", a.name(), b.name()),
        spec,
        Arc::new(Presentation::Product {
            left: a.presentation().clone(),
            right: b.presentation().clone(),
            right_size: nb,
        }),
    ))
}

/// Idealization `A ⋉ E` with `(a₁,e₁)(a₂,e₂) = (a₁a₂, a₁e₂ + a₂e₁)`.
/// Element `(a, e)` has index `a·|E| + e`.
pub fn make_trivial_extension(a: &RingRef, e: &FiniteModule, cap: usize) -> Result<FiniteRing> {
    if e.ring().tag() != a.tag() {
        return Err(Error::ForeignRing);
    }
    let (na, ne) = (a.size(), e.size());
    let size = check_size(na as u128 * ne as u128, cap)?;
    let tables = RingTables::from_fns(
        size,
        a.zero() * ne + e.zero(),
        a.one() * ne + e.zero(),
        |x, y| a.add(x / ne, y / ne) * ne + e.add(x % ne, y % ne),
        |x, y| {
            let (a1, e1) = (x / ne, x % ne);
            let (a2, e2) = (y / ne, y % ne);
            a.mul(a1, a2) * ne + e.add(e.act(a1, e2), e.act(a2, e1))
        },
    );
    Ok(FiniteRing::from_tables_unchecked(
        tables,
        format!("{} ⋉ E", a.name()),
        format!("TrivExt({},?)", a.spec()),
        Arc::new(Presentation::TrivExt {
            base: a.presentation().clone(),
            module: e.presentation().clone(),
            module_size: ne,
            module_zero: e.zero(),
        }),
    ))
}

/// `R / I` together with the canonical surjection `R → R/I`. Each coset is
/// represented by its smallest element index, and cosets are numbered in
/// order of their representatives.
pub fn quotient_ring(r: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, Vec<usize>)> {
    if ideal.ring_tag() != r.tag() {
        return Err(Error::ForeignRing);
    }
    let n = r.size();
    let members: Vec<usize> = ideal.members().ones().collect();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &i in &members {
            class_of[r.add(x, i)] = c;
        }
    }
    let size = reps.len();
    let tables = RingTables::from_fns(
        size,
        class_of[r.zero()],
        class_of[r.one()],
        |a, b| class_of[r.add(reps[a], reps[b])],
        |a, b| class_of[r.mul(reps[a], reps[b])],
    );
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .map(|&g| r.label(g))
        .collect();
    let name = format!("{} / ({})", r.name(), gens.join(","));
    let ring = FiniteRing::from_tables_unchecked(
        tables,
        name.clone(),
        name,
        Arc::new(Presentation::Quotient {
            base: r.presentation().clone(),
            reps,
            class_of: class_of.clone(),
        }),
    );
    Ok((ring, class_of))
}
