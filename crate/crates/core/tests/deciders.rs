mod common;

use std::time::Instant;

use common::*;
use fqp_core::deciders::*;
use fqp_core::module::module_from_ideal;
use fqp_core::{Caps, FiniteRing, RingRef};

fn opts() -> DeciderOptions {
    DeciderOptions::new(Caps::default(), true)
}

/// Every pair of ideals comparable, by subset enumeration.
fn naive_chained(r: &FiniteRing) -> bool {
    let ideals: Vec<_> = naive_ideals(r).into_iter().collect();
    ideals
        .iter()
        .all(|a| ideals.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
}

/// Every ideal quasi-projective by the lifting definition. Principal ideals
/// are cyclic and skipped.
fn naive_fqp(r: &RingRef) -> bool {
    r.all_ideals(1000).unwrap().iter().all(|i| {
        r.is_principal(i).unwrap() || naive_quasi_projective(&module_from_ideal(r, i).unwrap())
    })
}

fn content(r: &FiniteRing, coeffs: &[usize]) -> std::collections::BTreeSet<usize> {
    naive_closure(r, coeffs)
}

/// `c(fg) ≠ c(f)c(g)` computed from scratch.
fn content_fails(r: &FiniteRing, f: &[usize], g: &[usize]) -> bool {
    let mut h = vec![r.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            h[i + j] = r.add(h[i + j], r.mul(a, b));
        }
    }
    let products: Vec<usize> = f.iter().flat_map(|&a| g.iter().map(move |&b| (a, b))).map(|(a, b)| r.mul(a, b)).collect();
    content(r, &h) != content(r, &products)
}

#[test]
fn local_and_chained_examples() {
    for k in 1..=6 {
        assert!(is_chained(&ring(&format!("Z({})", 2u64.pow(k)))));
    }
    assert!(is_chained(&ring("Z(27)")));
    let r = ring("Z(6)");
    assert!(!is_local(&r));
    let (a, b) = chained_witness(&r).unwrap();
    assert!(!r.divides(a, b) && !r.divides(b, a));
    let r = ring(EX32);
    assert!(is_local(&r) && !is_chained(&r));
    assert!(!r.divides(el(&r, "y"), el(&r, "x")));
    assert!(!naive_closure(&r, &[el(&r, "y")]).contains(&el(&r, "x")));
}

#[test]
fn chained_matches_ideal_comparability() {
    for spec in [EX32, EX33, EX45, EX46, "Z(8)", "Z(9)", "Z(12)", "Poly(2,[x],[x^4])", "Poly(2,[x,y],[x^2,y^2])", "Z(1)"] {
        let r = ring(spec);
        assert_eq!(is_chained(&r), naive_chained(&r), "{spec}");
    }
}

#[test]
fn arithmetical_examples() {
    for n in 1..=64 {
        assert!(is_arithmetical(&ring(&format!("Z({n})"))), "Z({n})");
    }
    assert!(!is_arithmetical(&ring(EX32)));
    assert!(!is_arithmetical(&ring(EX46)));
}

#[test]
fn arithmetical_means_chained_factors() {
    for spec in ["Prod(Z(4),Z(9))", "Prod(Z(2),Poly(2,[x,y],[x^2,x*y,y^2]))", "Prod(Z(3),Z(8))", EX45] {
        let r = ring(spec);
        let expected = r.local_factors().factors.iter().all(|f| naive_chained(&f.ring));
        assert_eq!(is_arithmetical(&r), expected, "{spec}");
    }
}

#[test]
fn gaussian_examples() {
    assert!(is_gaussian(&ring(EX33)));
    assert!(is_gaussian(&ring(EX45)));
    assert!(is_gaussian(&ring("Z(8)")));
    let r = ring("Poly(2,[x,y],[x^2,y^2])");
    let (a, b, _) = gaussian_witness(&r).unwrap();
    assert!(a != r.zero() && b != r.zero());
    assert!(!is_gaussian(&r));
}

#[test]
fn content_search_with_constants_never_refutes() {
    for spec in [EX32, EX33, "Poly(2,[x,y],[x^2,y^2])", "Z(12)"] {
        assert_eq!(gaussian_content_witness(&ring(spec), 0, 1 << 20).unwrap(), None);
    }
}

#[test]
fn gaussian_rings_have_no_content_witness() {
    for (spec, d) in [("Z(4)", 3), ("Z(8)", 2), (EX32, 2), (EX46, 2), ("Z(6)", 2), (EX33, 1), (EX45, 1)] {
        let r = ring(spec);
        assert!(is_gaussian(&r));
        assert_eq!(gaussian_content_witness(&r, d, 1 << 24).unwrap(), None, "{spec} degree {d}");
    }
}

#[test]
fn content_witness_for_non_gaussian_rings() {
    let r = ring("Poly(2,[x,y],[x^2,y^2])");
    let w = gaussian_content_witness(&r, 1, 1 << 20).unwrap().unwrap();
    assert!(content_fails(&r, &w.f, &w.g));
}

#[test]
fn content_witness_for_the_cube_of_the_maximal_ideal() {
    let r = ring("Poly(2,[x,y],[x^3,x^2*y,x*y^2,y^3])");
    assert_eq!(r.size(), 64);
    let f = [el(&r, "x"), el(&r, "y")];
    assert!(content_fails(&r, &f, &f));
    let cf = content(&r, &f);
    let squares = content(&r, &[el(&r, "x^2"), el(&r, "y^2")]);
    assert!(!squares.contains(&el(&r, "x*y")));
    assert!(cf.contains(&el(&r, "x")));
    assert!(gaussian_content_witness(&r, 1, 1_000_000).unwrap_err().is_resource_cap());
    let w = gaussian_content_witness(&r, 1, 1 << 25).unwrap().unwrap();
    assert!(content_fails(&r, &w.f, &w.g));
    assert!(!is_gaussian(&r));
}

#[test]
fn fqp_examples() {
    let v = fqp_verdict(&ring(EX32), &opts()).unwrap();
    assert!(v.holds && v.oracle_verified());
    assert_eq!(v.ideals_checked, 6);

    let r = ring(EX33);
    let v = fqp_verdict(&r, &opts()).unwrap();
    assert!(!v.holds && v.oracle_verified());
    match v.witness.unwrap() {
        Witness::NotQuasiProjective { ideal, oracle } => {
            let gens: Vec<&str> = ideal.iter().map(String::as_str).collect();
            assert_eq!(members(&common::ideal(&r, &gens)), members(&common::ideal(&r, &["x", "y"])));
            assert!(oracle.is_some());
        }
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(!is_fqp(&ring(EX45), &opts()).unwrap());
    assert!(is_fqp(&ring(EX46), &opts()).unwrap());
}

#[test]
fn fqp_matches_the_lifting_definition() {
    for spec in [EX32, EX33, EX45, EX46, "Z(8)", "Z(12)", "Poly(2,[x,y],[x^2,y^2])", "TrivExt(Z(2),[],1)"] {
        let r = ring(spec);
        assert_eq!(is_fqp(&r, &opts()).unwrap(), naive_fqp(&r), "{spec}");
    }
}

#[test]
fn fqp_without_the_oracle_is_unverified() {
    let off = DeciderOptions::new(Caps::default(), false);
    let v = fqp_verdict(&ring(EX32), &off).unwrap();
    assert!(v.holds);
    assert_eq!(v.oracle_checked, 0);
    assert!(!v.oracle_verified());
}

#[test]
fn fqp_with_a_capped_oracle_still_decides() {
    let tight = DeciderOptions::new(
        Caps {
            oracle_module_size: 2,
            ..Caps::default()
        },
        true,
    );
    let v = fqp_verdict(&ring(EX33), &tight).unwrap();
    assert!(!v.holds);
    assert!(v.oracle_capped > 0);
    assert!(!v.oracle_verified());
}

#[test]
fn prufer_and_total_quotient_examples() {
    for spec in [EX32, EX33, EX45, EX46, "Z(1)", "Z(60)", "Prod(Z(4),Z(3))"] {
        let r = ring(spec);
        assert!(is_prufer(&r, &Caps::default()).unwrap(), "{spec}");
        assert!(is_total_quotient_ring(&r), "{spec}");
        assert_eq!(total_quotient_witness(&r), None);
    }
}

#[test]
fn reduced_and_regular() {
    for n in 1..=40u64 {
        let r = ring(&format!("Z({n})"));
        let squarefree = (2..=n).all(|p| n % (p * p) != 0);
        assert_eq!(is_reduced(&r), squarefree, "Z({n})");
        assert_eq!(is_von_neumann_regular(&r), squarefree, "Z({n})");
    }
    let r = ring(EX32);
    assert!(!is_reduced(&r));
    let x = regularity_witness(&r).unwrap();
    assert!(!naive_closure(&r, &[r.mul(x, x)]).contains(&x));
}

#[test]
fn wdim_examples() {
    let r = ring("Z(6)");
    let v = wdim_classify(&r, true);
    assert_eq!(v.value, Wdim::Zero);
    assert_eq!(v.factor_cases, vec![FactorCase::Field, FactorCase::Field]);
    let v = wdim_classify(&ring(EX32), true);
    assert_eq!((v.value, v.factor_cases.clone(), v.consistent), (Wdim::Infinite, vec![FactorCase::NilSquareZero], true));
    assert_eq!(wdim_classify(&ring(EX33), false).value, Wdim::NotApplicable);
    let v = wdim_classify(&ring("Z(8)"), true);
    assert_eq!((v.value, v.factor_cases), (Wdim::Infinite, vec![FactorCase::Chained]));
}

#[test]
fn lemma38_examples() {
    let r = ring(EX32);
    let rep = lemma38_inspect(&r, el(&r, "x"), el(&r, "y")).unwrap();
    assert_eq!(
        rep,
        Lemma38Report::Inspected {
            hypothesis: true,
            intersection_zero: true,
            products_zero: true,
            equal_annihilators: true,
        }
    );
    assert_eq!(members(&r.annihilator_of(el(&r, "x"))), members(&ideal(&r, &["x", "y"])));
    assert_eq!(lemma38_inspect(&r, el(&r, "x"), el(&r, "x")).unwrap(), Lemma38Report::NotApplicable);

    let r = ring(EX33);
    match lemma38_inspect(&r, el(&r, "x"), el(&r, "y")).unwrap() {
        Lemma38Report::Inspected {
            hypothesis, products_zero, ..
        } => {
            assert!(!hypothesis);
            assert!(!products_zero);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn lemma38_needs_a_local_ring() {
    let r = ring("Z(6)");
    assert!(lemma38_inspect(&r, el(&r, "2"), el(&r, "3")).is_err());
}

#[test]
fn dichotomy_examples() {
    assert_eq!(fqp_dichotomy(&ring(EX32), &opts()).unwrap(), Dichotomy::NilSquareZero);
    assert_eq!(fqp_dichotomy(&ring("Z(8)"), &opts()).unwrap(), Dichotomy::Chained);
    assert_eq!(fqp_dichotomy(&ring(EX46), &opts()).unwrap(), Dichotomy::NilSquareZero);
    assert_eq!(fqp_dichotomy(&ring("Z(4)"), &opts()).unwrap(), Dichotomy::Both);
    assert!(fqp_dichotomy(&ring(EX33), &opts()).is_err());
    assert!(fqp_dichotomy(&ring("Z(6)"), &opts()).is_err());
}

#[test]
fn classify_fixtures() {
    for (spec, fqp, arith, gauss) in [(EX32, true, false, true), (EX33, false, false, true), (EX45, false, false, true), (EX46, true, false, true)] {
        let start = Instant::now();
        let rep = classify(&ring(spec), &opts()).unwrap();
        assert!(start.elapsed().as_secs_f64() < 1.0);
        assert_eq!((rep.flags.fqp, rep.flags.arithmetical, rep.flags.gaussian), (fqp, arith, gauss), "{spec}");
        assert!(rep.flags.local && rep.flags.prufer && rep.flags.total_quotient_ring);
        assert!(rep.flags.inconsistencies().is_empty());
        assert!(rep.oracle_verified);
        assert_eq!(rep.wdim == Wdim::NotApplicable, !fqp);
    }
}

#[test]
fn classify_the_zero_ring() {
    let rep = classify(&ring("Z(1)"), &opts()).unwrap();
    let f = rep.flags;
    assert!(f.chained && f.arithmetical && f.fqp && f.gaussian && f.prufer);
    assert!(!f.local);
    assert_eq!(rep.wdim, Wdim::Zero);
    assert_eq!(rep.stats.ideal_count, 1);
}

#[test]
fn every_false_hierarchy_flag_has_a_witness() {
    for spec in [EX32, EX33, EX45, EX46, "Z(12)", "Poly(2,[x,y],[x^2,y^2])", "Prod(Z(2),Z(8))"] {
        let rep = classify(&ring(spec), &opts()).unwrap();
        let w = &rep.witnesses;
        for (flag, wit) in [
            (rep.flags.local, &w.local),
            (rep.flags.chained, &w.chained),
            (rep.flags.arithmetical, &w.arithmetical),
            (rep.flags.fqp, &w.fqp),
            (rep.flags.gaussian, &w.gaussian),
            (rep.flags.reduced, &w.reduced),
            (rep.flags.von_neumann_regular, &w.von_neumann_regular),
        ] {
            assert_eq!(flag, wit.is_none(), "{spec}");
        }
    }
}

#[test]
fn flag_lookup_accepts_abbreviations() {
    let rep = classify(&ring("Z(6)"), &opts()).unwrap();
    assert_eq!(rep.flags.get("vnr"), Some(true));
    assert_eq!(rep.flags.get("tqr"), Some(true));
    assert_eq!(rep.flags.get("nope"), None);
}
