//! How a ring's element indices map to human-readable syntax.
//!
//! Labels produced here are accepted back by [`Presentation::resolve`], so a
//! witness printed in a report can be pasted into a ring spec.

use std::collections::HashMap;
use std::sync::Arc;

use crate::spec::{ElementExpr, Monomial};

/// Element syntax of a constructed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Opaque,
    Zmod {
        n: u64,
    },
    Poly {
        p: u64,
        vars: Vec<String>,
        /// Standard monomials as exponent vectors; coordinate `k` of an
        /// element is its coefficient on `basis[k]`, stored base-`p` with
        /// `k = 0` least significant.
        basis: Vec<Vec<u32>>,
    },
    Product {
        left: Arc<Presentation>,
        right: Arc<Presentation>,
        right_size: usize,
    },
    TrivExt {
        base: Arc<Presentation>,
        module: Arc<ModulePresentation>,
        module_size: usize,
        module_zero: usize,
    },
    Quotient {
        base: Arc<Presentation>,
        reps: Vec<usize>,
        class_of: Vec<usize>,
    },
    Sub {
        base: Arc<Presentation>,
        elements: Vec<usize>,
    },
}

/// Element syntax of a constructed module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulePresentation {
    Opaque,
    /// Elements of a ring (the regular module, or an ideal when `elements`
    /// lists the carrier).
    Ring {
        ring: Arc<Presentation>,
        elements: Option<Vec<usize>>,
    },
    Cosets {
        base: Arc<ModulePresentation>,
        reps: Vec<usize>,
        class_of: Vec<usize>,
    },
    /// Flattened direct sum; index is mixed radix, first part most significant.
    Sum {
        parts: Vec<(Arc<ModulePresentation>, usize)>,
    },
}

fn constant_of(expr: &ElementExpr) -> Option<i128> {
    match expr {
        ElementExpr::Tuple(_) => None,
        ElementExpr::Sum(terms) => {
            let mut total: i128 = 0;
            for t in terms {
                if !t.monomial.is_one() {
                    return None;
                }
                let c = t.coeff.unwrap_or(1) as i128;
                total += if t.negative { -c } else { c };
            }
            Some(total)
        }
    }
}

fn reduce(c: i128, n: u64) -> u64 {
    c.rem_euclid(n as i128) as u64
}

pub(crate) fn monomial_text(vars: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl Presentation {
    pub fn label(&self, index: usize) -> String {
        match self {
            Presentation::Opaque => format!("#{index}"),
            Presentation::Zmod { .. } => index.to_string(),
            Presentation::Poly { p, vars, basis } => {
                let mut rest = index as u64;
                let mut terms = Vec::new();
                for exps in basis {
                    let c = rest % p;
                    rest /= p;
                    if c == 0 {
                        continue;
                    }
                    let mono = monomial_text(vars, exps);
                    terms.push(match (c, mono.as_str()) {
                        (1, _) => mono,
                        (_, "1") => c.to_string(),
                        _ => format!("{c}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
            Presentation::Product {
                left,
                right,
                right_size,
            } => format!(
                "({},{})",
                left.label(index / right_size),
                right.label(index % right_size)
            ),
            Presentation::TrivExt {
                base,
                module,
                module_size,
                ..
            } => {
                let mut parts = vec![base.label(index / module_size)];
                parts.extend(module.component_labels(index % module_size));
                format!("({})", parts.join(","))
            }
            Presentation::Quotient { base, reps, .. } => base.label(reps[index]),
            Presentation::Sub { base, elements } => base.label(elements[index]),
        }
    }

    /// Maps a parsed element expression to its index.
    pub fn resolve(&self, expr: &ElementExpr) -> Result<usize, String> {
        match self {
            Presentation::Opaque => Err("ring has no element syntax".into()),
            Presentation::Zmod { n } => match constant_of(expr) {
                Some(c) => Ok(reduce(c, *n) as usize),
                None => match expr {
                    ElementExpr::Tuple(_) => Err("Z(n) elements are integers".into()),
                    ElementExpr::Sum(terms) => Err(format!(
                        "unknown variable `{}`",
                        terms
                            .iter()
                            .find(|t| !t.monomial.is_one())
                            .map(|t| t.monomial.0[0].0.clone())
                            .unwrap_or_default()
                    )),
                },
            },
            Presentation::Poly { p, vars, basis } => {
                let ElementExpr::Sum(terms) = expr else {
                    return Err("polynomial elements are sums of terms".into());
                };
                let position: HashMap<&[u32], usize> = basis
                    .iter()
                    .enumerate()
                    .map(|(k, e)| (e.as_slice(), k))
                    .collect();
                let mut coords = vec![0u64; basis.len()];
                for t in terms {
                    let mut exps = vec![0u32; vars.len()];
                    for (v, e) in &t.monomial.0 {
                        let slot = vars
                            .iter()
                            .position(|w| w == v)
                            .ok_or_else(|| format!("unknown variable `{v}`"))?;
                        exps[slot] += e;
                    }
                    if let Some(&k) = position.get(exps.as_slice()) {
                        let c = t.coeff.unwrap_or(1) as i128;
                        let c = if t.negative { -c } else { c };
                        coords[k] = reduce(coords[k] as i128 + c, *p);
                    }
                }
                Ok(coords.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize)
            }
            Presentation::Product {
                left,
                right,
                right_size,
            } => match expr {
                ElementExpr::Tuple(parts) if parts.len() == 2 => {
                    Ok(left.resolve(&parts[0])? * right_size + right.resolve(&parts[1])?)
                }
                ElementExpr::Tuple(parts) => Err(format!(
                    "product elements are pairs, got {} components",
                    parts.len()
                )),
                ElementExpr::Sum(_) => match constant_of(expr) {
                    Some(c) => {
                        let k = ElementExpr::constant(c);
                        Ok(left.resolve(&k)? * right_size + right.resolve(&k)?)
                    }
                    None => Err("product elements are pairs".into()),
                },
            },
            Presentation::TrivExt {
                base,
                module,
                module_size,
                module_zero,
            } => match expr {
                ElementExpr::Tuple(parts) if parts.len() >= 2 => {
                    let a = base.resolve(&parts[0])?;
                    let e = module.resolve_components(&parts[1..])?;
                    Ok(a * module_size + e)
                }
                ElementExpr::Tuple(_) => Err("trivial extension elements are (a,e...)".into()),
                ElementExpr::Sum(_) => match constant_of(expr) {
                    Some(c) => Ok(base.resolve(&ElementExpr::constant(c))? * module_size + module_zero),
                    None => Err("trivial extension elements are (a,e...)".into()),
                },
            },
            Presentation::Quotient { base, class_of, .. } => Ok(class_of[base.resolve(expr)?]),
            Presentation::Sub { base, elements } => {
                let x = base.resolve(expr)?;
                elements
                    .binary_search(&x)
                    .map_err(|_| "element lies outside this factor".to_string())
            }
        }
    }
}

impl ModulePresentation {
    pub fn label(&self, index: usize) -> String {
        let parts = self.component_labels(index);
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(","))
        }
    }

    pub(crate) fn component_labels(&self, index: usize) -> Vec<String> {
        match self {
            ModulePresentation::Opaque => vec![format!("#{index}")],
            ModulePresentation::Ring { ring, elements } => {
                vec![ring.label(elements.as_ref().map_or(index, |e| e[index]))]
            }
            ModulePresentation::Cosets { base, reps, .. } => vec![base.label(reps[index])],
            ModulePresentation::Sum { parts } => {
                let mut rest = index;
                let mut labels = Vec::with_capacity(parts.len());
                for (part, size) in parts.iter().rev() {
                    labels.push(part.label(rest % size));
                    rest /= size;
                }
                labels.reverse();
                labels
            }
        }
    }

    pub fn resolve(&self, expr: &ElementExpr) -> Result<usize, String> {
        match (self, expr) {
            (ModulePresentation::Sum { .. }, ElementExpr::Tuple(parts)) => self.resolve_components(parts),
            _ => self.resolve_components(std::slice::from_ref(expr)),
        }
    }

    fn resolve_components(&self, parts: &[ElementExpr]) -> Result<usize, String> {
        match self {
            ModulePresentation::Sum { parts: summands } => {
                if summands.len() != parts.len() {
                    return Err(format!(
                        "expected {} module components, got {}",
                        summands.len(),
                        parts.len()
                    ));
                }
                let mut index = 0;
                for ((summand, size), part) in summands.iter().zip(parts) {
                    index = index * size + summand.resolve(part)?;
                }
                Ok(index)
            }
            _ if parts.len() != 1 => Err(format!("expected 1 module component, got {}", parts.len())),
            ModulePresentation::Opaque => Err("module has no element syntax".into()),
            ModulePresentation::Ring { ring, elements } => {
                let x = ring.resolve(&parts[0])?;
                match elements {
                    None => Ok(x),
                    Some(carrier) => carrier
                        .iter()
                        .position(|&y| y == x)
                        .ok_or_else(|| "element lies outside the submodule".to_string()),
                }
            }
            ModulePresentation::Cosets { base, class_of, .. } => Ok(class_of[base.resolve(&parts[0])?]),
        }
    }
}

impl Monomial {
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|(_, e)| *e == 0)
    }
}
