use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::cli::parser::poly;
use crate::linalg;
use crate::poly::{int, rat, Monomial};

const ABC: [&str; 3] = ["a", "b", "c"];

fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
    Ideal::new(names.len(), gens.iter().map(|g| poly(names, g)).collect())
}

fn same(i: &Ideal, j: &Ideal) -> bool {
    i.equals(j, Budget::default()).unwrap()
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..nvars {
                let x = m.mul(&Monomial::var(nvars, v));
                if !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Naive oracle: is `f = Σ q_i g_i` with every `q_i` of degree at most `d`?
fn represented(f: &Polynomial, gens: &[Polynomial], d: u32) -> bool {
    let n = f.nvars();
    let mut span = Vec::new();
    for g in gens {
        for m in monomials_up_to(n, d) {
            span.push(g.mul_term(&m, &int(1)));
        }
    }
    linalg::express(&span, f).is_some()
}

#[test]
fn single_generator_bases() {
    let b = Budget::default();
    let x2 = ideal(&["x"], &["x^2"]);
    let gb = groebner_basis(&x2, &TermOrder::Lex, b).unwrap();
    assert_eq!(gb.elements(), &[poly(&["x"], "x^2")]);
    let ab = ideal(&["a", "b"], &["a^2 - a*b"]);
    let gb = groebner_basis(&ab, &TermOrder::Grevlex, b).unwrap();
    assert_eq!(gb.elements(), &[poly(&["a", "b"], "a^2 - a*b")]);
}

#[test]
fn normal_forms() {
    let b = Budget::default();
    let gb = groebner_basis(&ideal(&["x"], &["x^2"]), &TermOrder::Grevlex, b).unwrap();
    assert!(normal_form(&poly(&["x"], "x^3"), &gb).is_zero());
    let names = ["a", "b"];
    let gb = groebner_basis(&ideal(&names, &["a^2 - a*b"]), &TermOrder::Grevlex, b).unwrap();
    assert_eq!(normal_form(&poly(&names, "a"), &gb), poly(&names, "a"));
    for n in 2..=6 {
        let f = poly(&names, &format!("a^{n} - a*b^{}", n - 1));
        assert!(normal_form(&f, &gb).is_zero(), "n = {n}");
    }
}

#[test]
fn ex19_membership_agrees_with_cofactor_search() {
    let gens: Vec<Polynomial> = ["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"].iter().map(|g| poly(&ABC, g)).collect();
    let i = Ideal::new(3, gens.clone());
    let gb = i.basis(Budget::default()).unwrap();
    let mut rng = StdRng::seed_from_u64(19);
    let small = monomials_up_to(3, 1);
    let random_poly = |rng: &mut StdRng| {
        let terms = small.iter().filter_map(|m| {
            let c: i64 = rng.gen_range(-3..=3);
            (c != 0).then(|| (m.clone(), int(c)))
        });
        Polynomial::from_terms(3, terms.collect::<Vec<_>>())
    };
    let mut members = 0;
    for k in 0..50 {
        let mut f = Polynomial::zero(3);
        for g in &gens {
            f = &f + &(&random_poly(&mut rng) * g);
        }
        let perturb = k % 2 == 1;
        if perturb {
            let m = &small[rng.gen_range(0..small.len())];
            f = &f + &Polynomial::monomial(m.clone());
        }
        let by_basis = gb.contains(&f);
        let by_search = represented(&f, &gens, 1);
        if !perturb {
            assert!(by_basis && by_search, "ideal element #{k} rejected");
            members += 1;
        } else if by_basis {
            // a perturbation can land back in the ideal; the search must then find it at some degree
            assert!(represented(&f, &gens, 3), "#{k}");
        } else {
            assert!(!represented(&f, &gens, 3), "#{k}: basis says non-member, search found cofactors");
        }
    }
    assert_eq!(members, 25);
}

#[test]
fn computed_bases_pass_the_s_polynomial_check() {
    let b = Budget::default();
    let cases = [
        ideal(&ABC, &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"]),
        ideal(&["a", "b", "c", "d"], &["a*b - c", "a*c - b^3*d", "c^2 - b^4*d"]),
        ideal(&["x", "y"], &["x^3 - y^2", "x*y - 1"]),
    ];
    for i in &cases {
        for order in [TermOrder::Lex, TermOrder::Grevlex] {
            let gb = groebner_basis(i, &order, b).unwrap();
            assert!(is_groebner(gb.elements(), &order, b).unwrap());
            let lms = gb.leading_monomials();
            for (x, m) in lms.iter().enumerate() {
                for (y, o) in lms.iter().enumerate() {
                    assert!(x == y || !m.divides(o), "not minimal");
                }
            }
            for g in gb.elements() {
                assert!(i.contains(g, b).unwrap());
            }
            for g in i.generators() {
                assert!(gb.contains(g));
            }
        }
    }
}

#[test]
fn is_groebner_examples() {
    let b = Budget::default();
    let names = ["a", "b"];
    assert!(is_groebner(&[poly(&["x"], "x^2")], &TermOrder::Lex, b).unwrap());
    assert!(is_groebner(&[poly(&names, "b^2"), poly(&names, "a*b")], &TermOrder::Grevlex, b).unwrap());
    assert!(!is_groebner(&[poly(&names, "a^2 - b"), poly(&names, "a*b")], &TermOrder::Grevlex, b).unwrap());

    let abcd = ["a", "b", "c", "d"];
    let gens: Vec<Polynomial> = ["a*b - c", "a*c - b^3*d", "c^2 - b^4*d"].iter().map(|g| poly(&abcd, g)).collect();
    let w = WeightVector::new(vec![int(0), int(1), int(2), int(0)]);
    assert!(is_groebner(&gens, &TermOrder::Weighted(w), b).unwrap());
}

#[test]
fn weighted_initial_ideals() {
    let b = Budget::default();
    let names = ["a", "b"];
    let i = ideal(&names, &["b - a^2"]);
    let w0 = WeightVector::new(vec![int(0), int(1)]);
    assert!(same(&initial_ideal(&i, &w0, b).unwrap(), &ideal(&names, &["a^2"])));
    let wh = WeightVector::new(vec![rat(1, 2), int(1)]);
    assert!(same(&initial_ideal(&i, &wh, b).unwrap(), &i));

    let ex = ideal(&ABC, &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"]);
    let w = WeightVector::new(vec![int(0), int(1), int(1)]);
    let expect = ideal(&ABC, &["a*(a+1)", "a*c", "b^2*(a+1) - c^2"]);
    assert!(same(&initial_ideal(&ex, &w, b).unwrap(), &expect));
}

#[test]
fn weighted_initial_ideal_is_homogeneous_and_contains_forms() {
    let b = Budget::default();
    let ex = ideal(&ABC, &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"]);
    let w = WeightVector::new(vec![int(0), int(1), int(1)]);
    let init = initial_ideal(&ex, &w, b).unwrap();
    assert!(init.is_homogeneous(&w));
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let q = Polynomial::from_terms(3, monomials_up_to(3, 2).into_iter().map(|m| (m, int(rng.gen_range(-2..=2)))));
        let f = &q * &ex.generators()[rng.gen_range(0..3)];
        if !f.is_zero() {
            assert!(init.contains(&f.lowest_weight_part(&w), b).unwrap());
        }
    }
}

#[test]
fn elimination() {
    let b = Budget::default();
    let at = ["a", "t"];
    let e = eliminate(&ideal(&at, &["t*a", "1 - t"]), &[1], b).unwrap();
    assert!(same(&e, &ideal(&at, &["a"])));
    let xy = ["x", "y"];
    let e = eliminate(&ideal(&xy, &["y - x^2"]), &[1], b).unwrap();
    assert!(e.is_zero());
    let abt = ["a", "b", "t"];
    let e = eliminate(&ideal(&abt, &["t*a", "(1 - t)*b"]), &[2], b).unwrap();
    assert!(same(&e, &ideal(&abt, &["a*b"])));
    // oracle: ab is in both <a> and <b>, and a, b are not in the product ideal
    assert!(!e.contains(&poly(&abt, "a"), b).unwrap());
    assert!(eliminate(&ideal(&xy, &["x"]), &[0, 1], b).is_err());
}

#[test]
fn intersections() {
    let b = Budget::default();
    let names = ["a", "b"];
    let m = intersect(&ideal(&names, &["a"]), &ideal(&names, &["b"]), b).unwrap();
    assert!(same(&m, &ideal(&names, &["a*b"])));

    let parts = [ideal(&ABC, &["a + 1", "c"]), ideal(&ABC, &["a", "b - c"]), ideal(&ABC, &["a", "b + c"])];
    let all = intersect_all(&parts, b).unwrap();
    assert!(same(&all, &ideal(&ABC, &["a*(a+1)", "a*c", "b^2*(a+1) - c^2"])));
    for p in &parts {
        assert!(p.contains_ideal(&all, b).unwrap());
    }

    let i = ideal(&ABC, &["c - a*(a+1)", "b^2 - a*c"]);
    assert!(same(&intersect(&i, &i, b).unwrap(), &i));
    let left = intersect(&intersect(&parts[0], &parts[1], b).unwrap(), &parts[2], b).unwrap();
    let right = intersect(&parts[0], &intersect(&parts[1], &parts[2], b).unwrap(), b).unwrap();
    assert!(same(&left, &right));
}

#[test]
fn colons_and_saturation() {
    let b = Budget::default();
    let names = ["a", "b"];
    let i = ideal(&names, &["a^2 - a*b"]);
    let f = poly(&names, "a - b");
    let q = colon(&i, &f, b).unwrap();
    assert!(same(&q, &ideal(&names, &["a"])));
    // oracle: g ∈ (I : f) iff g f ∈ I, over all monomials of degree ≤ 3
    for m in monomials_up_to(2, 3) {
        let g = Polynomial::monomial(m);
        assert_eq!(q.contains(&g, b).unwrap(), i.contains(&(&g * &f), b).unwrap());
    }
    let x = ["x"];
    let q = colon_or_saturate(&ideal(&x, &["x^2"]), &poly(&x, "x"), ColonMode::Colon, b).unwrap();
    assert!(same(&q, &ideal(&x, &["x"])));
    let s = colon_or_saturate(&ideal(&names, &["a^2*b"]), &poly(&names, "b"), ColonMode::Saturate, b).unwrap();
    assert!(same(&s, &ideal(&names, &["a^2"])));
    let s = saturate(&ideal(&names, &["a*b^3", "a^2*b"]), &poly(&names, "b"), b).unwrap();
    assert!(same(&s, &ideal(&names, &["a"])));
}

#[test]
fn radical_membership() {
    let b = Budget::default();
    assert!(radical_member(&poly(&["x"], "x"), &ideal(&["x"], &["x^2"]), b).unwrap());
    let i = ideal(&ABC, &["c", "a^2*b"]);
    let ab = poly(&ABC, "a*b");
    assert!(radical_member(&ab, &i, b).unwrap());
    assert!(!i.contains(&ab, b).unwrap());
    assert!(i.contains(&ab.pow(2), b).unwrap());
    let names = ["a", "b"];
    assert!(!radical_member(&poly(&names, "a"), &ideal(&names, &["b"]), b).unwrap());
}

#[test]
fn budget_is_reported_distinctly() {
    let i = ideal(&ABC, &["c - a*(a+1)", "b^2 - a*c", "b^2*(a+1) - c^2"]);
    let err = groebner_basis(&i, &TermOrder::Lex, Budget::steps(2)).unwrap_err();
    assert!(err.is_budget());
    let tight = Budget { max_steps: u64::MAX, max_degree: 1 };
    assert!(groebner_basis(&i, &TermOrder::Grevlex, tight).unwrap_err().is_budget());
}

#[test]
fn unit_ideal() {
    let b = Budget::default();
    let names = ["x", "y"];
    let i = ideal(&names, &["x*y - 1", "x"]);
    assert!(i.is_unit(b).unwrap());
    assert_eq!(i.basis(b).unwrap().elements(), &[Polynomial::one(2)]);
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..=3), 0..5).prop_map(|terms| {
        Polynomial::from_terms(
            3,
            terms.into_iter().map(|((x, y, z), c)| (Monomial::from_exponents(vec![x, y, z]), int(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_linear(f in small_poly(), g in small_poly(), h in small_poly()) {
        let i = Ideal::new(3, vec![f.clone(), &g * &f + h.clone()]);
        let gb = i.basis(Budget::default()).unwrap();
        let nf = gb.normal_form(&h);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        let sum = gb.normal_form(&(&h + &g));
        prop_assert_eq!(sum, &nf + &gb.normal_form(&g));
        prop_assert!(is_groebner(gb.elements(), &TermOrder::Grevlex, Budget::default()).unwrap());
    }

    #[test]
    fn membership_is_consistent(f in small_poly(), g in small_poly(), q in small_poly()) {
        let b = Budget::default();
        let i = Ideal::new(3, vec![f.clone(), g.clone()]);
        let member = &q * &f;
        prop_assert!(i.contains(&member, b).unwrap());
        prop_assert!(radical_member(&member, &i, b).unwrap());
        prop_assert!(i.contains(&(&member * &g), b).unwrap());
    }

    #[test]
    fn intersection_lies_in_both(f in small_poly(), g in small_poly()) {
        let b = Budget::default();
        let i = Ideal::new(3, vec![f]);
        let j = Ideal::new(3, vec![g]);
        let m = intersect(&i, &j, b).unwrap();
        prop_assert!(i.contains_ideal(&m, b).unwrap());
        prop_assert!(j.contains_ideal(&m, b).unwrap());
    }
}
