mod common;

use std::collections::BTreeSet;

use common::*;
use fqp_core::deciders::Flags;
use fqp_core::harness::{parse_query, Query};
use fqp_core::module::{homs, module_from_ideal};
use fqp_core::ring::{make_product, make_zmod, ring_isomorphism};
use fqp_core::spec::{ElementExpr, Monomial, Term};
use fqp_core::{parse_spec, RingSpec};
use proptest::prelude::*;

const RINGS: [&str; 9] = [
    EX32,
    EX33,
    EX45,
    EX46,
    "Z(12)",
    "Z(16)",
    "Prod(Z(2),Poly(2,[x,y],[x^2,x*y,y^2]))",
    "Poly(3,[x],[x^3])",
    "TrivExt(Z(9),[3],2)",
];

fn ident() -> impl Strategy<Value = String> {
    "[a-w][a-z0-9_]{0,3}"
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop_oneof![
        1 => Just(Monomial::default()),
        4 => prop::collection::vec((ident(), 1u32..6), 1..3).prop_map(Monomial),
    ]
}

fn term() -> impl Strategy<Value = Term> {
    (any::<bool>(), prop::option::of(0u64..50), monomial()).prop_map(|(negative, coeff, monomial)| {
        // A bare term needs a coefficient or a variable to print.
        let coeff = if monomial.0.is_empty() { Some(coeff.unwrap_or(1)) } else { coeff };
        Term {
            negative,
            coeff,
            monomial,
        }
    })
}

fn element() -> impl Strategy<Value = ElementExpr> {
    let leaf = prop::collection::vec(term(), 1..4).prop_map(ElementExpr::Sum);
    leaf.prop_recursive(2, 8, 3, |inner| prop::collection::vec(inner, 1..4).prop_map(ElementExpr::Tuple))
}

fn spec_ast() -> impl Strategy<Value = RingSpec> {
    let poly = (0u64..100, prop::collection::vec(ident(), 1..4), prop::collection::vec(monomial(), 1..4))
        .prop_map(|(p, vars, monomials)| RingSpec::Poly { p, vars, monomials });
    let leaf = prop_oneof![(1u64..10_000).prop_map(RingSpec::Z), poly];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::collection::vec(element(), 0..3), 0usize..4).prop_map(|(b, gens, copies)| {
                RingSpec::TrivExt {
                    base: Box::new(b),
                    gens,
                    copies,
                }
            }),
            (inner.clone(), inner).prop_map(|(a, b)| RingSpec::Prod(Box::new(a), Box::new(b))),
        ]
    })
}

fn query() -> impl Strategy<Value = Query> {
    let leaf = prop::sample::select(Flags::NAMES.to_vec()).prop_map(|f| Query::Flag(f.to_string()));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|q| Query::Not(Box::new(q))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Query::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Query::Or(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spec_print_parse_round_trip(ast in spec_ast()) {
        let text = ast.to_string();
        // The parser also checks primality and variable names; compare the
        // syntax tree through the element and monomial printers instead.
        match parse_spec(&text) {
            Ok(back) => prop_assert_eq!(back, ast),
            Err(fqp_core::Error::Parse { .. }) => prop_assert!(false, "syntax error on {}", text),
            Err(_) => {}
        }
    }

    #[test]
    fn spec_whitespace_is_ignored(ast in spec_ast()) {
        let text = ast.to_string();
        let spaced: String = text
            .chars()
            .map(|c| if "()[],^*+-".contains(c) { format!(" {c}\t") } else { c.to_string() })
            .collect();
        let a = parse_spec(&text).map_err(|e| e.to_string());
        let b = parse_spec(&spaced).map_err(|e| e.to_string());
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn element_print_parse_round_trip(e in element()) {
        prop_assert_eq!(fqp_core::parse_element(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn query_round_trip(q in query()) {
        prop_assert_eq!(parse_query(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn labels_round_trip(k in 0..RINGS.len(), seed in any::<usize>()) {
        let r = ring(RINGS[k]);
        let x = seed % r.size();
        prop_assert_eq!(r.parse_element(&r.label(x)).unwrap(), x);
    }

    #[test]
    fn closure_is_idempotent(k in 0..RINGS.len(), seeds in prop::collection::vec(any::<usize>(), 0..4)) {
        let r = ring(RINGS[k]);
        let gens: Vec<usize> = seeds.iter().map(|s| s % r.size()).collect();
        let i = r.ideal_generated(&gens).unwrap();
        prop_assert_eq!(r.ideal_generated(&i.elements()).unwrap(), i.clone());
        prop_assert!(is_ideal_set(&r, &members(&i)));
        for &g in &gens {
            prop_assert!(i.contains(g));
        }
    }

    #[test]
    fn ideal_times_annihilator_is_zero(k in 0..RINGS.len(), seeds in prop::collection::vec(any::<usize>(), 0..3)) {
        let r = ring(RINGS[k]);
        let gens: Vec<usize> = seeds.iter().map(|s| s % r.size()).collect();
        let i = r.ideal_generated(&gens).unwrap();
        let ann = r.annihilator(&i).unwrap();
        prop_assert!(r.ideal_product(&i, &ann).unwrap().is_zero());
        let ann3 = r.annihilator(&r.annihilator(&ann).unwrap()).unwrap();
        prop_assert_eq!(ann3, ann);
    }

    #[test]
    fn ideal_lattice_is_closed(k in 0..RINGS.len(), a in any::<usize>(), b in any::<usize>()) {
        let r = ring(RINGS[k]);
        let all = r.all_ideals(100_000).unwrap();
        let known: BTreeSet<_> = all.iter().map(members).collect();
        let i = &all[a % all.len()];
        let j = &all[b % all.len()];
        for x in [
            r.ideal_sum(i, j).unwrap(),
            r.ideal_product(i, j).unwrap(),
            r.ideal_intersection(i, j).unwrap(),
            r.annihilator(i).unwrap(),
        ] {
            prop_assert!(known.contains(&members(&x)));
        }
        prop_assert_eq!(r.ideal_product(i, j).unwrap(), r.ideal_product(j, i).unwrap());
        prop_assert!(r.ideal_contains(&r.ideal_intersection(i, j).unwrap(), &r.ideal_product(i, j).unwrap()).unwrap());
    }

    #[test]
    fn minimal_generators_generate(k in 0..RINGS.len(), a in any::<usize>()) {
        let r = ring(RINGS[k]);
        let all = r.all_ideals(100_000).unwrap();
        let i = &all[a % all.len()];
        let gens = r.minimal_generators(i).unwrap();
        prop_assert_eq!(naive_closure(&r, &gens), members(i));
    }

    #[test]
    fn hom_composites_are_homs(k in 0..4usize, a in any::<usize>(), b in any::<usize>()) {
        let r = ring(RINGS[k]);
        let all = r.all_ideals(1000).unwrap();
        let m = module_from_ideal(&r, &all[a % all.len()]).unwrap();
        let n = module_from_ideal(&r, &all[b % all.len()]).unwrap();
        let mn = homs(&m, &n, 1 << 20).unwrap();
        let nm = homs(&n, &m, 1 << 20).unwrap();
        let ends: BTreeSet<Vec<usize>> = homs(&m, &m, 1 << 20).unwrap().into_iter().map(|h| h.map).collect();
        for f in mn.iter().take(8) {
            for g in nm.iter().take(8) {
                prop_assert!(ends.contains(&f.then(g).map));
            }
        }
    }

    #[test]
    fn chinese_remainder(a in 1u64..13, b in 1u64..13) {
        let p = make_product(&make_zmod(a, 4096).unwrap(), &make_zmod(b, 4096).unwrap(), 4096).unwrap();
        let cyclic = ring_isomorphism(&p, &make_zmod(a * b, 4096).unwrap(), 1 << 24).unwrap().is_some();
        prop_assert_eq!(cyclic, gcd(a, b) == 1);
    }
}
