use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Polynomial, TermOrder, WeightVector};

use super::{basis_for_engine, Budget, GroebnerBasis, Ideal};

/// Standard basis for the lowest-weight-first order.
///
/// The grevlex basis is homogenized with an extra variable `h`; a basis of the
/// homogenized ideal for (total degree, -w, grevlex) is a well-order computation,
/// and setting `h = 1` gives a basis whose lowest-weight forms generate the
/// initial ideal.
pub(crate) fn weighted_standard_basis(ideal: &Ideal, w: &WeightVector, budget: Budget) -> Result<GroebnerBasis> {
    let n = ideal.nvars();
    if w.len() != n {
        return Err(Error::Invalid(format!("weight vector has {} entries for {} variables", w.len(), n)));
    }
    let membership = ideal.basis(budget)?.clone();
    let order = TermOrder::Weighted(w.clone());
    if w.scaled().iter().all(|&s| s == 0) {
        let elements = membership.elements().to_vec();
        return Ok(GroebnerBasis::weighted(order, n, elements, membership));
    }
    let homog: Vec<Polynomial> = membership.elements().iter().map(|g| g.homogenize()).collect();
    let mut neg: Vec<i64> = w.scaled().iter().map(|s| -s).collect();
    neg.push(0);
    let engine = MonomialOrder::weighted(vec![vec![1; n + 1], neg]);
    let hb = basis_for_engine(&homog, n + 1, engine, TermOrder::Grevlex, budget)?;
    let mut elements: Vec<Polynomial> = Vec::new();
    for g in hb.elements() {
        let d = g.dehomogenize().monic();
        if !elements.contains(&d) {
            elements.push(d);
        }
    }
    Ok(GroebnerBasis::weighted(order, n, elements, membership))
}

/// The ideal of lowest-weight components, as a canonical (reduced grevlex) ideal.
pub fn initial_ideal(ideal: &Ideal, w: &WeightVector, budget: Budget) -> Result<Ideal> {
    let sb = weighted_standard_basis(ideal, w, budget)?;
    let forms = sb.elements().iter().map(|g| g.lowest_weight_part(w)).collect();
    Ideal::new(ideal.nvars(), forms).canonical(budget)
}

/// `I ∩ k[remaining variables]`, kept in the ambient ring.
pub fn eliminate(ideal: &Ideal, drop: &[usize], budget: Budget) -> Result<Ideal> {
    let n = ideal.nvars();
    if drop.iter().any(|&v| v >= n) {
        return Err(Error::Invalid("eliminated variable out of range".into()));
    }
    if (0..n).all(|v| drop.contains(&v)) {
        return Err(Error::Invalid("cannot eliminate every variable".into()));
    }
    let engine = MonomialOrder::elimination(n, drop);
    let gb = basis_for_engine(ideal.generators(), n, engine, TermOrder::Grevlex, budget)?;
    let kept = gb.elements().iter().filter(|g| !g.uses_any(drop)).cloned().collect();
    Ideal::new(n, kept).canonical(budget)
}

/// `I ∩ J` through `t I + (1 - t) J` and elimination of `t`.
pub fn intersect(i: &Ideal, j: &Ideal, budget: Budget) -> Result<Ideal> {
    let n = i.nvars();
    if j.nvars() != n {
        return Err(Error::Invalid("intersection of ideals in different rings".into()));
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(n));
    }
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(&t * &f.extend_vars(1));
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.extend_vars(1));
    }
    let e = eliminate(&Ideal::new(n + 1, gens), &[n], budget)?;
    let gens = e.generators().iter().map(|g| g.truncate_vars(1).expect("t eliminated")).collect();
    Ideal::new(n, gens).canonical(budget)
}

pub fn intersect_all(ideals: &[Ideal], budget: Budget) -> Result<Ideal> {
    let (first, rest) = ideals.split_first().ok_or_else(|| Error::Invalid("empty intersection".into()))?;
    rest.iter().try_fold(first.clone(), |acc, j| intersect(&acc, j, budget))
}

/// `(I : f)`.
pub fn colon(ideal: &Ideal, f: &Polynomial, budget: Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::Invalid("colon by the zero polynomial".into()));
    }
    let n = ideal.nvars();
    if ideal.is_zero() {
        return Ok(Ideal::zero(n));
    }
    let meet = intersect(ideal, &Ideal::principal(f.clone()), budget)?;
    let gens =
        meet.generators().iter().map(|g| g.div_exact(f).expect("generators of I ∩ <f> are multiples of f")).collect();
    Ideal::new(n, gens).canonical(budget)
}

/// `(I : f^∞)`, iterating colons until the ideal stops growing.
pub fn saturate(ideal: &Ideal, f: &Polynomial, budget: Budget) -> Result<Ideal> {
    let mut current = ideal.canonical(budget)?;
    loop {
        let next = colon(&current, f, budget)?;
        if current.contains_ideal(&next, budget)? {
            return Ok(current);
        }
        current = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColonMode {
    Colon,
    Saturate,
}

pub fn colon_or_saturate(ideal: &Ideal, f: &Polynomial, mode: ColonMode, budget: Budget) -> Result<Ideal> {
    match mode {
        ColonMode::Colon => colon(ideal, f, budget),
        ColonMode::Saturate => saturate(ideal, f, budget),
    }
}

/// Whether `f ∈ √I`, by testing `1 ∈ I + <1 - y f>` with a fresh variable `y`.
pub fn radical_member(f: &Polynomial, ideal: &Ideal, budget: Budget) -> Result<bool> {
    let n = ideal.nvars();
    if f.is_zero() {
        return Ok(true);
    }
    let y = Polynomial::var(n + 1, n);
    let rabinowitsch = &Polynomial::one(n + 1) - &(&y * &f.extend_vars(1));
    let ext = ideal.extend_vars(1).with_generators([rabinowitsch]);
    ext.is_unit(budget)
}
