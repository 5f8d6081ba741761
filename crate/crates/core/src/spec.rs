//! Ring construction expressions.
//!
//! ```text
//! spec     := "Z(" int ")"
//!           | "Poly(" int "," "[" ident ("," ident)* "]" "," "[" monomial ("," monomial)* "]" ")"
//!           | "TrivExt(" spec "," "[" (element ("," element)*)? "]" "," int ")"
//!           | "Prod(" spec "," spec ")"
//! monomial := "1" | ident ("^" int)? ("*" ident ("^" int)?)*
//! element  := "(" element ("," element)* ")" | ["-"] term (("+" | "-") term)*
//! term     := int | int "*" monomial | monomial
//! ```
//!
//! Whitespace is ignored. `TrivExt(A, [g…], j)` is `A ⋉ (A/(g…))^j`. An
//! integer literal denotes that multiple of the identity in any ring.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::ring::{make_poly_quot, make_product, make_trivial_extension, make_zmod, FiniteRing, RingRef};

/// A product of variable powers; empty means `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<(String, u32)>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub coeff: Option<u64>,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementExpr {
    Tuple(Vec<ElementExpr>),
    Sum(Vec<Term>),
}

impl ElementExpr {
    pub fn constant(c: i128) -> Self {
        ElementExpr::Sum(vec![Term {
            negative: c < 0,
            coeff: Some(c.unsigned_abs() as u64),
            monomial: Monomial::default(),
        }])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Z(u64),
    Poly {
        p: u64,
        vars: Vec<String>,
        monomials: Vec<Monomial>,
    },
    TrivExt {
        base: Box<RingSpec>,
        gens: Vec<ElementExpr>,
        copies: usize,
    },
    Prod(Box<RingSpec>, Box<RingSpec>),
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(v)?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff, self.monomial.0.is_empty()) {
            (Some(c), true) => write!(f, "{c}"),
            (Some(c), false) => write!(f, "{c}*{}", self.monomial),
            (None, _) => write!(f, "{}", self.monomial),
        }
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementExpr::Tuple(parts) => {
                f.write_str("(")?;
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            ElementExpr::Sum(terms) => {
                for (k, t) in terms.iter().enumerate() {
                    match (k, t.negative) {
                        (_, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, false) => f.write_str("+")?,
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z(n) => write!(f, "Z({n})"),
            RingSpec::Poly { p, vars, monomials } => {
                write!(f, "Poly({p},[{}],[{}])", vars.join(","), join(monomials))
            }
            RingSpec::TrivExt { base, gens, copies } => {
                write!(f, "TrivExt({base},[{}],{copies})", join(gens))
            }
            RingSpec::Prod(a, b) => write!(f, "Prod({a},{b})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.fail(format!("expected `{c}`, found `{found}`")),
                None => self.fail(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.fail("expected an integer");
        }
        digits.parse().map_err(|_| Error::Parse {
            position: start,
            message: format!("integer `{digits}` is too large"),
        })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return self.fail("expected an identifier");
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string())
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.fail(format!("unexpected `{c}`")),
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>, allow_empty: bool) -> Result<Vec<T>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if allow_empty && self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let head = self.ident()?;
        self.expect('(')?;
        let spec = match head.as_str() {
            "Z" => RingSpec::Z(self.int()?),
            "Poly" => {
                let p = self.int()?;
                self.expect(',')?;
                let vars = self.list(|s| s.ident(), false)?;
                self.expect(',')?;
                let monomials = self.list(|s| s.monomial(), false)?;
                RingSpec::Poly { p, vars, monomials }
            }
            "TrivExt" => {
                let base = self.spec()?;
                self.expect(',')?;
                let gens = self.list(|s| s.element(), true)?;
                self.expect(',')?;
                let copies = self.int()? as usize;
                RingSpec::TrivExt {
                    base: Box::new(base),
                    gens,
                    copies,
                }
            }
            "Prod" => {
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                RingSpec::Prod(Box::new(a), Box::new(b))
            }
            other => {
                self.pos = start;
                return self.fail(format!("unknown constructor `{other}`"));
            }
        };
        self.expect(')')?;
        Ok(spec)
    }

    fn monomial(&mut self) -> Result<Monomial> {
        if self.peek() == Some('1') {
            self.int()?;
            return Ok(Monomial::default());
        }
        let mut factors = Vec::new();
        loop {
            let v = self.ident()?;
            let e = if self.eat('^') { self.int()? as u32 } else { 1 };
            factors.push((v, e));
            if !self.eat('*') {
                return Ok(Monomial(factors));
            }
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.int()?;
                let monomial = if self.eat('*') { self.monomial()? } else { Monomial::default() };
                Ok(Term {
                    negative,
                    coeff: Some(c),
                    monomial,
                })
            }
            _ => Ok(Term {
                negative,
                coeff: None,
                monomial: self.monomial()?,
            }),
        }
    }

    fn element(&mut self) -> Result<ElementExpr> {
        if self.eat('(') {
            let mut parts = vec![self.element()?];
            while self.eat(',') {
                parts.push(self.element()?);
            }
            self.expect(')')?;
            return Ok(ElementExpr::Tuple(parts));
        }
        let negative = self.eat('-');
        let mut terms = vec![self.term(negative)?];
        loop {
            if self.eat('+') {
                terms.push(self.term(false)?);
            } else if self.eat('-') {
                terms.push(self.term(true)?);
            } else {
                return Ok(ElementExpr::Sum(terms));
            }
        }
    }
}

fn check_poly(spec: &RingSpec) -> Result<()> {
    match spec {
        RingSpec::Z(_) => Ok(()),
        RingSpec::Poly { p, vars, monomials } => {
            if !crate::ring::is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            for m in monomials {
                if let Some((v, _)) = m.0.iter().find(|(v, _)| !vars.contains(v)) {
                    return Err(Error::UnknownVariable(v.clone()));
                }
            }
            Ok(())
        }
        RingSpec::TrivExt { base, .. } => check_poly(base),
        RingSpec::Prod(a, b) => {
            check_poly(a)?;
            check_poly(b)
        }
    }
}

/// Parses a ring construction expression.
pub fn parse_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser::new(text);
    let spec = p.spec()?;
    p.end()?;
    check_poly(&spec)?;
    Ok(spec)
}

/// Parses an element expression (resolved against a ring separately).
pub fn parse_element(text: &str) -> Result<ElementExpr> {
    let mut p = Parser::new(text);
    let e = p.element()?;
    p.end()?;
    Ok(e)
}

impl std::str::FromStr for RingSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl RingSpec {
    /// Builds the ring, rejecting anything larger than `cap` elements.
    pub fn build(&self, cap: usize) -> Result<FiniteRing> {
        let ring = match self {
            RingSpec::Z(n) => make_zmod(*n, cap)?,
            RingSpec::Poly { p, vars, monomials } => {
                let gens: Vec<Vec<u32>> = monomials
                    .iter()
                    .map(|m| {
                        let mut exps = vec![0u32; vars.len()];
                        for (v, e) in &m.0 {
                            let slot = vars
                                .iter()
                                .position(|w| w == v)
                                .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                            exps[slot] += e;
                        }
                        Ok(exps)
                    })
                    .collect::<Result<_>>()?;
                make_poly_quot(*p, vars, &gens, cap)?
            }
            RingSpec::TrivExt { base, gens, copies } => {
                let a: RingRef = Arc::new(base.build(cap)?);
                let indices = gens
                    .iter()
                    .map(|g| {
                        a.presentation().resolve(g).map_err(|reason| Error::BadElement {
                            text: g.to_string(),
                            reason,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let j = a.ideal_generated(&indices)?;
                let quotient = FiniteModule::cyclic(&a, &j)?;
                if (quotient.size() as f64).powi(*copies as i32) * a.size() as f64 > cap as f64 {
                    return Err(Error::cap(
                        "ring size",
                        (quotient.size() as u128).saturating_pow(*copies as u32) * a.size() as u128,
                        cap as u128,
                    ));
                }
                let e = quotient.power(*copies)?;
                make_trivial_extension(&a, &e, cap)?
            }
            RingSpec::Prod(a, b) => make_product(&a.build(cap)?, &b.build(cap)?, cap)?,
        };
        let text = self.to_string();
        Ok(ring.with_spec(text.clone()).with_name(text))
    }
}
