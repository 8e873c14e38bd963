//! Multivariate gcd by recursive primitive remainder sequences, and squarefree parts.

use super::{PolyError, Polynomial};

fn lowest_var(f: &Polynomial, g: &Polynomial) -> Option<usize> {
    (0..f.nvars()).find(|&v| f.uses_var(v) || g.uses_var(v))
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &Polynomial, var: usize) -> Polynomial {
    p.coefficients_in(var).iter().filter(|c| !c.is_zero()).fold(Polynomial::zero(p.nvars()), |acc, c| gcd(&acc, c))
}

fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn leading_coefficient(p: &Polynomial, var: usize) -> Polynomial {
    p.coefficients_in(var).pop().unwrap_or_else(|| Polynomial::zero(p.nvars()))
}

/// A nonzero constant multiple of the pseudo-remainder of `a` by `b` in `var`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lb = leading_coefficient(b, var);
    let mut a = a.clone();
    while !a.is_zero() && a.uses_var(var) && a.degree_in(var) >= db {
        let da = a.degree_in(var);
        let la = leading_coefficient(&a, var);
        let shift = Polynomial::var(n, var).pow(da - db);
        a = &(&lb * &a) - &(&(&la * &shift) * b);
    }
    a
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars();
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    let v = lowest_var(f, g).expect("non-constant input uses a variable");
    if !f.uses_var(v) {
        return gcd(f, &content(g, v));
    }
    if !g.uses_var(v) {
        return gcd(&content(f, v), g);
    }
    let c = gcd(&content(f, v), &content(g, v));
    let (mut a, mut b) = (primitive_part(f, v), primitive_part(g, v));
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let h = loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break b;
        }
        if !r.uses_var(v) {
            break Polynomial::one(n);
        }
        a = b;
        b = primitive_part(&r, v);
    };
    (&c * &primitive_part(&h, v)).monic()
}

/// `f / gcd(f, df/dx_1, ..., df/dx_n)`, made monic. Characteristic zero.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let g = (0..f.nvars()).fold(f.clone(), |acc, v| gcd(&acc, &f.derivative(v)));
    Ok(f.div_exact(&g).expect("gcd divides").monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Monomial};
    use proptest::prelude::*;

    fn vars() -> (Polynomial, Polynomial, Polynomial) {
        (Polynomial::var(3, 0), Polynomial::var(3, 1), Polynomial::var(3, 2))
    }

    #[test]
    fn squarefree_of_power() {
        let x = Polynomial::var(1, 0);
        assert_eq!(squarefree_part(&x.pow(2)).unwrap(), x);
    }

    #[test]
    fn line_and_conic_already_squarefree() {
        // variables b, c, d
        let (b, c, d) = vars();
        let f = &c * &(&c.pow(2) - &(&b * &d));
        assert_eq!(squarefree_part(&f).unwrap(), f.monic());
        // df/db = -cd shares c with f; only the c-partial is coprime to f
        assert_eq!(gcd(&f, &f.derivative(0)), c.clone());
        assert!(gcd(&f, &f.derivative(1)).is_constant());
        let all = (0..3).fold(f.clone(), |acc, v| gcd(&acc, &f.derivative(v)));
        assert!(all.is_constant());
    }

    #[test]
    fn repeated_factor_removed() {
        let a = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let f = &a.pow(2) * &(&a + &one);
        assert_eq!(squarefree_part(&f).unwrap(), &a * &(&a + &one));
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(squarefree_part(&Polynomial::zero(2)), Err(PolyError::ZeroInput));
    }

    #[test]
    fn gcd_of_products() {
        let (a, b, c) = vars();
        let p = &a - &b;
        let q = &(&a * &c) + &Polynomial::one(3);
        let r = &b + &c;
        let g = gcd(&(&p * &q), &(&p * &r));
        assert_eq!(g, p.monic());
        assert!(gcd(&q, &r).is_constant());
    }

    fn arb(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -2i64..3), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), int(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn squarefree_is_idempotent_and_divides(f in arb(2), g in arb(2)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let h = &(&f * &f) * &g;
            let s = squarefree_part(&h).unwrap();
            prop_assert_eq!(squarefree_part(&s).unwrap(), s.clone());
            prop_assert!(h.div_exact(&s).is_some());
            // s^2 divides h * s exactly when s has a repeated factor in h
            let sf = squarefree_part(&f).unwrap();
            prop_assert!(s.div_exact(&sf).is_some());
        }
    }
}
