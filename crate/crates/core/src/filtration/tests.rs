use proptest::prelude::*;

use super::certify::filtration_value;
use super::*;
use crate::cli::parser::poly;
use crate::poly::{int, rat, Monomial};

const B: Budget = Budget { max_steps: 2_000_000, max_degree: 400 };

fn pres(names: &[&str], gens: &[&str], b: &str) -> RingPresentation {
    RingPresentation::parse(names, gens, b).unwrap()
}

fn ex19() -> RingPresentation {
    pres(&["a", "b", "c"], &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"], "b")
}

fn twisted() -> RingPresentation {
    pres(&["a", "b", "c", "d"], &["a*b - c", "a*c - b^3*d", "c^2 - b^4*d"], "b")
}

fn weights(w: &[Rational]) -> WeightVector {
    WeightVector::new(w.to_vec())
}

#[test]
fn adic_order_of_powers_of_x_in_x_squared() {
    let p = pres(&["x"], &[], "x^2");
    let f = Filtration::new(&p, B);
    let x = poly(&["x"], "x");
    assert_eq!(f.adic_order(&x.pow(3), 16).unwrap(), OrderValue::Finite(1));
    for n in 1..=9u32 {
        // oracle: x^n ∈ <x^(2m)> iff n ≥ 2m
        let expect = (0..=n).filter(|m| n >= 2 * m).max().unwrap();
        assert_eq!(f.adic_order(&x.pow(n), 16).unwrap(), OrderValue::Finite(expect), "n = {n}");
    }
}

#[test]
fn adic_order_in_nonseparated_example() {
    let p = pres(&["a", "b"], &["a^2 - a*b"], "b");
    let a = poly(&["a", "b"], "a");
    for n in 2..=6 {
        assert_eq!(adic_order(&a.pow(n), &p, 16, B).unwrap(), OrderValue::Finite(n - 1));
    }
    let two_lines = pres(&["a", "b"], &["a^2 - b^2"], "b");
    assert_eq!(adic_order(&a, &two_lines, 16, B).unwrap(), OrderValue::Finite(0));
}

#[test]
fn adic_order_edge_values() {
    let p = pres(&["a", "b"], &["a^2 - a*b"], "b");
    let b = poly(&["a", "b"], "b");
    assert_eq!(adic_order(&b.pow(5), &p, 3, B).unwrap(), OrderValue::ExceedsCap(3));
    assert_eq!(adic_order(&poly(&["a", "b"], "a^2 - a*b"), &p, 3, B).unwrap(), OrderValue::Infinity);
    assert!(adic_order(&b, &p, 0, B).is_err());
}

#[test]
fn samuel_sequences() {
    let p = pres(&["a", "b"], &["a^2 - a*b"], "b");
    let a = poly(&["a", "b"], "a");
    let s = samuel_sequence(&a, &p, &[1, 2, 4, 8], 32, B).unwrap();
    let ratios: Vec<Rational> = s.iter().map(|e| e.ratio.clone().unwrap()).collect();
    assert_eq!(ratios, vec![int(0), rat(1, 2), rat(3, 4), rat(7, 8)]);

    let b = poly(&["a", "b"], "b");
    let s = samuel_sequence(&b, &p, &[1, 2, 4, 8], 32, B).unwrap();
    assert!(s.iter().all(|e| e.ratio == Some(int(1))));

    let p = pres(&["x"], &[], "x^2");
    let s = samuel_sequence(&poly(&["x"], "x"), &p, &[2, 4, 8], 16, B).unwrap();
    assert!(s.iter().all(|e| e.ratio == Some(rat(1, 2))));
    assert!(samuel_sequence(&poly(&["x"], "x"), &p, &[2, 2], 16, B).is_err());
}

#[test]
fn barq_estimates() {
    let names = ["a", "b"];
    let two_lines = pres(&names, &["a^2 - b^2"], "b");
    let est = barq_estimate(&poly(&names, "a"), &two_lines, &EstimateOptions::default(), B).unwrap();
    assert_eq!(est.lower_bound, Bound::Finite(int(1)));
    assert_eq!(est.status, EstimateStatus::Stabilized);
    let est = barq_estimate(&poly(&names, "b"), &two_lines, &EstimateOptions::default(), B).unwrap();
    assert_eq!(est.lower_bound, Bound::Finite(int(1)));
    assert_eq!(est.status, EstimateStatus::Stabilized);

    let bcde = ["b", "c", "d", "e"];
    let planes = pres(&bcde, &["d*(b - d)", "d*c", "e*(b - d)", "e*c"], "b");
    let est = barq_estimate(&poly(&bcde, "d"), &planes, &EstimateOptions::default(), B).unwrap();
    assert_eq!(est.lower_bound, Bound::Finite(rat(15, 16)));
    assert_eq!(est.status, EstimateStatus::LowerBoundOnly);
    for e in &est.entries {
        let n = e.n as i64;
        assert_eq!(e.ratio, Some(rat(n - 1, n)));
    }
}

#[test]
fn nilpotent_has_infinite_estimate() {
    let p = pres(&["x", "b"], &["x^3"], "b");
    let est = barq_estimate(&poly(&["x", "b"], "x"), &p, &EstimateOptions::default(), B).unwrap();
    assert_eq!(est.lower_bound, Bound::Infinite);
}

#[test]
fn twisted_ring_orders() {
    let p = twisted();
    let names = ["a", "b", "c", "d"];
    let c = poly(&names, "c");
    let f = Filtration::new(&p, B);
    assert_eq!(f.adic_order(&c, 16).unwrap(), OrderValue::Finite(1));
    assert_eq!(f.adic_order(&c.pow(2), 16).unwrap(), OrderValue::Finite(4));
}

#[test]
fn certify_cubic() {
    let p = ex19();
    let w = weights(&[int(0), int(1), int(1)]);
    let cert = certify_weights(&p, &w, &CertifyOptions::default(), B).unwrap();
    assert!(cert.is_certified(), "{:?}", cert.reduced_evidence);
    let names = ["a", "b", "c"];
    let expect = Ideal::new(3, ["a*(a+1)", "a*c", "b^2*(a+1) - c^2"].iter().map(|g| poly(&names, g)).collect());
    assert!(cert.initial_ideal.equals(&expect, B).unwrap());
    assert!(is_groebner(cert.gb_evidence.elements(), &TermOrder::Weighted(w.clone()), B).unwrap());
}

use crate::groebner::is_groebner;
use crate::poly::TermOrder;

#[test]
fn certify_twisted_ring() {
    let p = twisted();
    let names = ["a", "b", "c", "d"];
    let w = weights(&[int(0), int(1), int(2), int(0)]);
    let cert = certify_weights(&p, &w, &CertifyOptions::default(), B).unwrap();
    assert!(cert.is_certified(), "{:?}", cert.reduced_evidence);
    let expect = Ideal::new(4, ["a*b", "a*c", "c^2 - b^4*d"].iter().map(|g| poly(&names, g)).collect());
    assert!(cert.initial_ideal.equals(&expect, B).unwrap());
    assert!(matches!(
        cert.lower_bounds.iter().find(|e| e.var() == 2),
        Some(LowerBoundEvidence::IntegralDependence { level: 2, .. })
    ));

    let naive = weights(&[int(0), int(1), int(1), int(0)]);
    let cert = certify_weights(&p, &naive, &CertifyOptions::default(), B).unwrap();
    assert_eq!(cert.status, CertificateStatus::Refuted { witness: poly(&names, "c"), exponent: 2 });
}

#[test]
fn certify_requires_lower_bounds() {
    let p = pres(&["a", "b"], &["a^2 - a*b"], "b");
    let w = weights(&[int(2), int(1)]);
    match certify_weights(&p, &w, &CertifyOptions::default(), B) {
        Err(Error::LowerBoundsUnverified(v)) => assert_eq!(v, vec!["a".to_string()]),
        other => panic!("{other:?}"),
    }
    let bad_b = weights(&[int(0), int(2)]);
    assert!(matches!(certify_weights(&p, &bad_b, &CertifyOptions::default(), B), Err(Error::Invalid(_))));
}

#[test]
fn supplied_power_witness() {
    let names = ["a", "b"];
    let p = pres(&names, &["a^2 - b^2"], "b");
    let w = weights(&[int(1), int(1)]);
    let options = CertifyOptions {
        witnesses: vec![PowerWitness { var: 0, n: 2, k: 2, cofactor: poly(&names, "1") }],
        ..CertifyOptions::default()
    };
    let cert = certify_weights(&p, &w, &options, B).unwrap();
    assert!(cert.is_certified());
    assert_eq!(cert.lower_bounds[0], LowerBoundEvidence::Supplied { var: 0, n: 2, k: 2 });
}

#[test]
fn composite_element_rewrite() {
    let p = pres(&["x"], &[], "x^2");
    assert!(p.b_var().is_none());
    let q = p.with_element_variable(B).unwrap();
    assert_eq!(q.b_var(), Some(1));
    assert_eq!(q.names()[1], "t");
    let x = Polynomial::var(2, 0);
    assert_eq!(adic_order(&x.pow(3), &q, 16, B).unwrap(), OrderValue::Finite(1));
}

#[test]
fn non_principal_ideal_powers() {
    let vars = VarTable::new(["x", "y"]);
    let gens = vec![poly(&["x", "y"], "x"), poly(&["x", "y"], "y")];
    let p = RingPresentation::with_ideal(vars, Ideal::zero(2), FiltrationIdeal::Generators(gens), None, B).unwrap();
    let f = Filtration::new(&p, B);
    // the maximal ideal: the order is the lowest total degree
    assert_eq!(f.adic_order(&poly(&["x", "y"], "x^2*y + y^5"), 8).unwrap(), OrderValue::Finite(3));
    assert!(!f.warnings().is_empty());
}

#[test]
fn certified_filtration_values() {
    let p = twisted();
    let names = ["a", "b", "c", "d"];
    let w = weights(&[int(0), int(1), int(2), int(0)]);
    let cap = int(12);
    assert_eq!(filtration_value(&p, &w, &poly(&names, "c"), &cap, B).unwrap(), Some(int(2)));
    assert_eq!(filtration_value(&p, &w, &poly(&names, "a*b"), &cap, B).unwrap(), Some(int(2)));
    assert_eq!(filtration_value(&p, &w, &poly(&names, "b^2*d + a"), &cap, B).unwrap(), Some(int(0)));
    // the certified weight of each variable bounds its Samuel ratios
    let f = Filtration::new(&p, B);
    for v in 0..4 {
        let est =
            f.barq_estimate(&Polynomial::var(4, v), &EstimateOptions { cap: 8, ..EstimateOptions::default() }).unwrap();
        match est.lower_bound {
            Bound::Finite(r) => assert!(&r <= w.weight(v)),
            Bound::Infinite => panic!("variable {v} nilpotent"),
        }
    }
}

fn small_element(nvars: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, nvars), -2i64..=2), 1..4).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), int(c))))
    })
}

fn lower(v: OrderValue, cap: u32) -> u32 {
    v.lower_bound().unwrap_or(cap)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adic_order_is_superadditive(r in small_element(3), s in small_element(3)) {
        let p = ex19();
        let f = Filtration::new(&p, B);
        let cap = 8;
        let qr = lower(f.adic_order(&r, cap).unwrap(), cap);
        let qs = lower(f.adic_order(&s, cap).unwrap(), cap);
        let qrs = lower(f.adic_order(&(&r * &s), cap).unwrap(), cap);
        let qsum = lower(f.adic_order(&(&r + &s), cap).unwrap(), cap);
        prop_assert!(qrs >= (qr + qs).min(cap));
        prop_assert!(qsum >= qr.min(qs));
    }

    #[test]
    fn estimate_dominates_order(r in small_element(3)) {
        let p = ex19();
        let f = Filtration::new(&p, B);
        let q = f.adic_order(&r, 8).unwrap();
        let est = f.barq_estimate(&r, &EstimateOptions { cap: 4, ..EstimateOptions::default() }).unwrap();
        // the estimate only inspects orders up to n * ratio_cap
        if let OrderValue::Finite(n) = q {
            let ratio_cap = EstimateOptions::default().ratio_cap;
            prop_assert!(est.lower_bound.at_least(&int(n.min(ratio_cap) as i64)));
        }
    }

    #[test]
    fn certified_filtration_is_homogeneous(c in proptest::collection::vec(-2i64..=2, 3)) {
        // homogeneous elements of weight 2 in the certified grading of the twisted ring
        let p = twisted();
        let names = ["a", "b", "c", "d"];
        let w = weights(&[int(0), int(1), int(2), int(0)]);
        let r = &(&poly(&names, "c").scale(&int(c[0])) + &poly(&names, "b^2*d").scale(&int(c[1])))
            + &poly(&names, "a*b^2").scale(&int(c[2]));
        let cap = int(10);
        let v1 = filtration_value(&p, &w, &r, &cap, B).unwrap();
        let v2 = filtration_value(&p, &w, &r.pow(2), &cap, B).unwrap();
        match (v1, v2) {
            (Some(a), Some(b)) => prop_assert_eq!(b, a * int(2)),
            (None, None) => {}
            (a, b) => prop_assert!(false, "{:?} {:?}", a, b),
        }
    }
}
