use super::*;
use crate::cli::parser::poly;
use crate::filtration::{certify_weights, CertifyOptions};
use crate::poly::{int, rat};

const B: Budget = Budget { max_steps: 2_000_000, max_degree: 400 };

fn pres(names: &[&str], gens: &[&str], b: &str) -> RingPresentation {
    RingPresentation::parse(names, gens, b).unwrap()
}

fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
    Ideal::new(names.len(), gens.iter().map(|g| poly(names, g)).collect())
}

fn ogr(p: &RingPresentation, w: &[Rational]) -> GradedPresentation {
    let cert = certify_weights(p, &WeightVector::new(w.to_vec()), &CertifyOptions::default(), B).unwrap();
    assert!(cert.is_certified(), "{:?}", cert.status);
    ogr_presentation(p, &cert, B).unwrap()
}

fn parabola() -> RingPresentation {
    pres(&["x", "t"], &["t - x^2"], "t")
}

fn cubic() -> RingPresentation {
    pres(&["a", "b", "c"], &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"], "b")
}

#[test]
fn gr_of_parabola() {
    let g = gr_presentation(&parabola(), B).unwrap();
    assert!(g.ideal.equals(&ideal(&["x", "t"], &["x^2"]), B).unwrap());
    let h = hilbert_function(&g, Grading::Filtration, &int(3), B).unwrap();
    assert_eq!(h.entries.iter().map(|e| e.1).collect::<Vec<_>>(), vec![2, 2, 2, 2]);
    assert_eq!(graded_density(&g, None, B).unwrap(), int(2));
    for m in b_maps(&g, &int(4), B).unwrap() {
        assert!(m.onto() && m.injective(), "{m:?}");
    }
}

#[test]
fn ogr_of_parabola() {
    let g = ogr(&parabola(), &[rat(1, 2), int(1)]);
    assert_eq!(g.denominator(), 2);
    assert!(g.ideal.equals(&ideal(&["x", "t"], &["t - x^2"]), B).unwrap());
    let h = hilbert_function(&g, Grading::Filtration, &int(2), B).unwrap();
    assert_eq!(h.entries.len(), 5);
    assert!(h.entries.iter().all(|e| e.1 == 1));
    assert_eq!(h.dim(&rat(3, 2)), Some(1));
    assert_eq!(graded_density(&g, None, B).unwrap(), int(2));
    assert_eq!(default_window(&g), (int(2), int(4)));
}

#[test]
fn polynomial_ring_in_b() {
    let p = pres(&["b"], &[], "b");
    let g = gr_presentation(&p, B).unwrap();
    assert_eq!(graded_density(&g, None, B).unwrap(), int(1));
    assert!(hilbert_function(&g, Grading::Original, &int(2), B).is_err());
}

#[test]
fn gr_of_twisted_ring() {
    let names = ["a", "b", "c", "d"];
    let p = pres(&names, &["a*b - c", "a*c - b^3*d", "c^2 - b^4*d"], "b");
    let g = gr_presentation(&p, B).unwrap();
    assert!(g.ideal.equals(&ideal(&names, &["c", "a^2*b"]), B).unwrap());
    // a and d have weight 0 and are unconstrained
    assert!(matches!(hilbert_function(&g, Grading::Filtration, &int(1), B), Err(Error::InfiniteDimensional { .. })));
    match is_reduced(&g.ideal, 2, &[], B).unwrap() {
        ReducednessVerdict::NotReduced { witness, exponent } => {
            assert_eq!(witness, poly(&names, "a*b"));
            assert_eq!(exponent, 2);
        }
        v => panic!("{v}"),
    }
}

#[test]
fn ogr_of_two_planes() {
    let names = ["b", "c", "d", "e"];
    let p = pres(&names, &["d*(b - d)", "d*c", "e*(b - d)", "e*c"], "b");
    let g = ogr(&p, &[int(1), int(0), int(1), int(0)]);
    assert!(g.ideal.equals(&p.defining, B).unwrap());
    let gr = gr_presentation(&p, B).unwrap();
    assert!(gr.ideal.equals(&ideal(&names, &["e*c", "d^2", "d*c", "e*d"]), B).unwrap());
}

#[test]
fn ogr_of_cuspidal_family() {
    let names = ["b", "c", "d", "f"];
    let p = pres(&names, &["b^2*f + b*c*d + c^3"], "b");
    let cert =
        certify_weights(&p, &WeightVector::new(vec![int(1), rat(1, 2), int(0), int(0)]), &CertifyOptions::default(), B)
            .unwrap();
    assert!(cert.is_certified());
    assert_eq!(cert.reduced_evidence, ReducednessVerdict::Reduced(Tier::Principal));
    assert!(cert.initial_ideal.equals(&ideal(&names, &["b*c*d + c^3"]), B).unwrap());
}

#[test]
fn cubic_components() {
    let names = ["a", "b", "c"];
    let p = cubic();
    let g = ogr(&p, &[int(0), int(1), int(1)]);
    let h = hilbert_function(&g, Grading::Filtration, &int(4), B).unwrap();
    assert_eq!(h.entries.iter().map(|e| e.1).collect::<Vec<_>>(), vec![2, 3, 3, 3, 3]);
    let comps = [ideal(&names, &["a", "b - c"]), ideal(&names, &["a", "b + c"]), ideal(&names, &["a + 1", "c"])];
    let r = component_report(&g, &comps, None, B).unwrap();
    assert_eq!(r.total_density, int(3));
    assert!(r.components.iter().all(|c| c.1 == int(1)));
    assert!(r.verified && r.additive);
    for m in b_maps(&g, &int(3), B).unwrap() {
        if m.degree > int(0) {
            assert!(m.injective(), "{m:?}");
        }
    }

    let gr = gr_presentation(&p, B).unwrap();
    let comps = [ideal(&names, &["c - a*(a+1)", "a^2"]), ideal(&names, &["a + 1", "c"])];
    let r = component_report(&gr, &comps, None, B).unwrap();
    assert_eq!(r.total_density, int(3));
    assert_eq!(r.components.iter().map(|c| c.1.clone()).collect::<Vec<_>>(), vec![int(2), int(1)]);
    assert!(r.verified && r.additive);
    for m in b_maps(&gr, &int(3), B).unwrap() {
        assert!(m.onto(), "{m:?}");
    }
}

#[test]
fn incomplete_components_are_flagged() {
    let names = ["a", "b", "c"];
    let g = ogr(&cubic(), &[int(0), int(1), int(1)]);
    let r = component_report(&g, &[ideal(&names, &["a", "b - c"]), ideal(&names, &["a + 1", "c"])], None, B).unwrap();
    assert!(!r.verified);
    assert!(!r.additive);
    assert!(component_report(&g, &[ideal(&names, &["b"])], None, B).is_err());
}

#[test]
fn two_lines_multiplication_by_b() {
    let p = pres(&["a", "b"], &["a^2 - a*b"], "b");
    let gr = gr_presentation(&p, B).unwrap();
    assert!(gr.ideal.equals(&ideal(&["a", "b"], &["a^2"]), B).unwrap());
    let g = ogr(&p, &[int(1), int(1)]);
    let maps = b_maps(&g, &int(4), B).unwrap();
    // b is a nonzerodivisor in R, so degree 0 is injective as well
    assert!(maps.iter().all(|m| m.injective()));
    assert!(maps.iter().filter(|m| m.degree >= int(1)).all(|m| m.onto()));
    assert!(!maps[0].onto());
}

#[test]
fn nodal_cubic_limit() {
    let names = ["a", "b"];
    let w = WeightVector::new(vec![int(0), int(1)]);
    let lim = limit_ideal(&ideal(&names, &["b^2 - a^2*(a+1)"]), &w, B).unwrap();
    assert!(lim.equals(&ideal(&names, &["a^2*(a+1)"]), B).unwrap());
}

#[test]
fn unstable_window_is_reported() {
    let names = ["x", "b"];
    let g = GradedPresentation::new(
        VarTable::new(names),
        WeightVector::new(vec![int(1), int(1)]),
        ideal(&names, &["x^3"]),
        None,
        1,
        B,
    )
    .unwrap();
    assert!(matches!(graded_density(&g, Some((int(0), int(3))), B), Err(Error::NotStabilized(_))));
    assert_eq!(graded_density(&g, None, B).unwrap(), int(3));
}

#[test]
fn inhomogeneous_ideal_rejected() {
    let names = ["x", "b"];
    let r = GradedPresentation::new(
        VarTable::new(names),
        WeightVector::new(vec![int(1), int(1)]),
        ideal(&names, &["x - b^2"]),
        None,
        1,
        B,
    );
    assert!(r.is_err());
}

#[test]
fn multigraded_counts() {
    let names = ["x", "b"];
    let i = ideal(&names, &["x^2"]);
    let w1 = WeightVector::new(vec![int(1), int(0)]);
    let w2 = WeightVector::new(vec![int(0), int(1)]);
    assert_eq!(multigraded_standard_monomials(&i, &[&w1, &w2], &[1, 5], B).unwrap().len(), 1);
    assert!(multigraded_standard_monomials(&i, &[&w1, &w2], &[2, 5], B).unwrap().is_empty());
    assert_eq!(standard_monomials(&i, &WeightVector::new(vec![int(1), int(1)]), 4, B).unwrap().len(), 2);
}
