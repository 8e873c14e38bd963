//! Buchberger's algorithm over a fixed well-order.
//!
//! Polynomials are converted to term lists sorted by the active order so the
//! leading term is always at index 0.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::BudgetExceeded;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

use super::Budget;

#[derive(Debug, Clone)]
pub(crate) struct Sorted {
    pub terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(c) = self.terms.first().map(|t| t.1.clone()) {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }
}

/// `a - c * m * b`, every list sorted by `order`.
fn sub_scaled(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    m: &Monomial,
    c: &Rational,
    order: &MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted: Vec<(Monomial, Rational)> = b.iter().map(|(t, x)| (t.mul(m), x * c)).collect();
    while i < a.len() || j < shifted.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == shifted.len() {
            Ordering::Greater
        } else {
            order.cmp(&a[i].0, &shifted[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -&shifted[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let x = &a[i].1 - &shifted[j].1;
                if !x.is_zero() {
                    out.push((a[i].0.clone(), x));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) struct Meter {
    steps: u64,
    budget: Budget,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter { steps: 0, budget }
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(BudgetExceeded(format!("more than {} reduction steps", self.budget.max_steps)));
        }
        Ok(())
    }

    fn check_degree(&self, m: &Monomial) -> Result<(), BudgetExceeded> {
        if m.degree() > self.budget.max_degree {
            return Err(BudgetExceeded(format!(
                "intermediate degree {} above cap {}",
                m.degree(),
                self.budget.max_degree
            )));
        }
        Ok(())
    }
}

/// Full reduction of `f` by `basis`; the result has no term divisible by a leading monomial.
pub(crate) fn reduce(
    f: &Sorted,
    basis: &[Sorted],
    order: &MonomialOrder,
    meter: &mut Meter,
) -> Result<Sorted, BudgetExceeded> {
    let mut rem = f.terms.clone();
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    while !rem.is_empty() {
        let (m, c) = rem[0].clone();
        let divisor = basis.iter().find(|g| g.lm().divides(&m));
        match divisor {
            Some(g) => {
                meter.tick()?;
                let q = g.lm().quotient_of(&m).expect("divides");
                let coef = &c / g.lc();
                rem = sub_scaled(&rem, &g.terms, &q, &coef, order);
            }
            None => {
                meter.check_degree(&m)?;
                out.push((m, c));
                rem.remove(0);
            }
        }
    }
    Ok(Sorted { terms: out })
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).unwrap();
    let mg = g.lm().quotient_of(&l).unwrap();
    let a: Vec<(Monomial, Rational)> = f.terms.iter().map(|(t, c)| (t.mul(&mf), c / f.lc())).collect();
    let terms = sub_scaled(&a, &g.terms, &mg, &g.lc().recip(), order);
    Sorted { terms }
}

/// Whether every S-polynomial of `gens` reduces to zero against `gens`.
pub(crate) fn satisfies_buchberger(
    gens: &[Sorted],
    order: &MonomialOrder,
    meter: &mut Meter,
) -> Result<bool, BudgetExceeded> {
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if gens[i].lm().is_coprime(gens[j].lm()) {
                continue;
            }
            let s = s_polynomial(&gens[i], &gens[j], order);
            if !reduce(&s, gens, order, meter)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
pub(crate) fn buchberger(
    gens: &[Polynomial],
    nvars: usize,
    order: &MonomialOrder,
    budget: Budget,
) -> Result<Vec<Sorted>, BudgetExceeded> {
    let mut meter = Meter::new(budget);
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens {
        let s = Sorted::from_poly(g, order);
        let mut r = reduce(&s, &basis, order, &mut meter)?;
        if !r.is_zero() {
            r.make_monic();
            basis.push(r);
        }
    }
    if basis.iter().any(|g| g.lm().is_one()) {
        return Ok(vec![Sorted { terms: vec![(Monomial::one(nvars), Rational::one())] }]);
    }

    // pending pairs keyed by (lcm degree, j, i) for the normal strategy
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut alive: Vec<bool> = vec![true; basis.len()];
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((basis[i].lm().lcm(basis[j].lm()).degree(), j, i));
        }
    }
    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, j, i) = key;
        done.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        meter.check_degree(&l)?;
        let s = s_polynomial(fi, fj, order);
        let active: Vec<Sorted> = basis.iter().zip(&alive).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
        let mut r = reduce(&s, &active, order, &mut meter)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(vec![r]);
        }
        let k = basis.len();
        for (idx, g) in basis.iter().enumerate() {
            if alive[idx] && r.lm().divides(g.lm()) {
                alive[idx] = false;
            }
        }
        basis.push(r);
        alive.push(true);
        for i in 0..k {
            pending.insert((basis[i].lm().lcm(basis[k].lm()).degree(), k, i));
        }
    }

    // minimalize then interreduce
    let mut minimal: Vec<Sorted> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(o, h)| o != idx && h.lm().divides(g.lm()) && (h.lm() != g.lm() || o < idx));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Sorted> =
            minimal.iter().enumerate().filter(|(o, _)| *o != idx).map(|(_, g)| g.clone()).collect();
        let head = Sorted { terms: vec![minimal[idx].terms[0].clone()] };
        let tail = Sorted { terms: minimal[idx].terms[1..].to_vec() };
        let mut r = reduce(&tail, &others, order, &mut meter)?;
        r.terms.insert(0, head.terms[0].clone());
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}
