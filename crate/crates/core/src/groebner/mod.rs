//! Ideals, reduced Gröbner bases and the ideal operations built on them.
//!
//! Every computation takes a [`Budget`]. Running out of budget is reported as
//! [`Error::Budget`](crate::error::Error::Budget) and never as a mathematical answer.

mod engine;
mod ops;

use std::sync::OnceLock;

use crate::error::{BudgetExceeded, Result};
use crate::poly::{MonomialOrder, Polynomial, TermOrder, WeightVector};

pub(crate) use engine::Sorted;
pub use ops::{
    colon, colon_or_saturate, eliminate, initial_ideal, intersect, intersect_all, radical_member, saturate, ColonMode,
};

/// Caps on Gröbner work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Reduction steps across one basis computation.
    pub max_steps: u64,
    /// Largest total degree allowed for an intermediate leading monomial.
    pub max_degree: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 2_000_000, max_degree: 400 }
    }
}

impl Budget {
    pub fn steps(max_steps: u64) -> Self {
        Budget { max_steps, ..Budget::default() }
    }
}

/// A Gröbner basis for a term order.
///
/// For lex and grevlex this is the unique reduced basis. For a weighted
/// (lowest-weight-first) order it is a standard basis whose lowest-weight
/// forms generate the weighted initial ideal; membership and normal forms
/// then go through the reduced grevlex basis of the same ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: TermOrder,
    nvars: usize,
    elements: Vec<Polynomial>,
    reducer: Reducer,
}

#[derive(Debug, Clone)]
enum Reducer {
    Direct { engine: MonomialOrder, sorted: Vec<Sorted> },
    Delegate(Box<GroebnerBasis>),
}

impl GroebnerBasis {
    pub(crate) fn from_engine(order: TermOrder, nvars: usize, engine: MonomialOrder, sorted: Vec<Sorted>) -> Self {
        let elements = sorted.iter().map(|s| s.to_poly(nvars)).collect();
        GroebnerBasis { order, nvars, elements, reducer: Reducer::Direct { engine, sorted } }
    }

    pub(crate) fn weighted(
        order: TermOrder,
        nvars: usize,
        elements: Vec<Polynomial>,
        membership: GroebnerBasis,
    ) -> Self {
        GroebnerBasis { order, nvars, elements, reducer: Reducer::Delegate(Box::new(membership)) }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Leading monomials under the basis' engine order (well-orders only).
    pub fn leading_monomials(&self) -> Vec<crate::poly::Monomial> {
        match &self.reducer {
            Reducer::Direct { sorted, .. } => sorted.iter().map(|s| s.lm().clone()).collect(),
            Reducer::Delegate(inner) => inner.leading_monomials(),
        }
    }

    /// Remainder of full division; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.try_normal_form(f, Budget { max_steps: u64::MAX, max_degree: u64::MAX }).expect("unbounded reduction")
    }

    pub fn try_normal_form(&self, f: &Polynomial, budget: Budget) -> Result<Polynomial, BudgetExceeded> {
        match &self.reducer {
            Reducer::Direct { engine, sorted } => {
                let mut meter = engine::Meter::new(budget);
                let s = Sorted::from_poly(f, engine);
                Ok(engine::reduce(&s, sorted, engine, &mut meter)?.to_poly(self.nvars))
            }
            Reducer::Delegate(inner) => inner.try_normal_form(f, budget),
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of `gens` for an engine-level well-order.
pub(crate) fn basis_for_engine(
    gens: &[Polynomial],
    nvars: usize,
    engine: MonomialOrder,
    label: TermOrder,
    budget: Budget,
) -> Result<GroebnerBasis> {
    let sorted = engine::buchberger(gens, nvars, &engine, budget)?;
    Ok(GroebnerBasis::from_engine(label, nvars, engine, sorted))
}

/// An ideal of a polynomial ring in `nvars` variables.
#[derive(Debug, Clone)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    grevlex: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Self {
        assert!(generators.iter().all(|g| g.nvars() == nvars), "generator arity");
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, generators, grevlex: OnceLock::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn principal(f: Polynomial) -> Self {
        Self::new(f.nvars(), vec![f])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The cached reduced grevlex basis.
    pub fn basis(&self, budget: Budget) -> Result<&GroebnerBasis> {
        if let Some(g) = self.grevlex.get() {
            return Ok(g);
        }
        let g = basis_for_engine(
            &self.generators,
            self.nvars,
            MonomialOrder::grevlex(self.nvars),
            TermOrder::Grevlex,
            budget,
        )?;
        let _ = self.grevlex.set(g);
        Ok(self.grevlex.get().expect("just set"))
    }

    pub fn contains(&self, f: &Polynomial, budget: Budget) -> Result<bool> {
        Ok(self.basis(budget)?.try_normal_form(f, budget)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: Budget) -> Result<bool> {
        let g = self.basis(budget)?;
        for f in other.generators() {
            if !g.try_normal_form(f, budget)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership against reduced bases.
    pub fn equals(&self, other: &Ideal, budget: Budget) -> Result<bool> {
        if self.nvars != other.nvars {
            return Ok(false);
        }
        let theirs = Ideal::new(self.nvars, other.basis(budget)?.elements().to_vec());
        let mine = Ideal::new(self.nvars, self.basis(budget)?.elements().to_vec());
        Ok(self.contains_ideal(&theirs, budget)? && other.contains_ideal(&mine, budget)?)
    }

    pub fn is_unit(&self, budget: Budget) -> Result<bool> {
        Ok(self.basis(budget)?.is_unit())
    }

    /// The ideal generated by its reduced grevlex basis.
    pub fn canonical(&self, budget: Budget) -> Result<Ideal> {
        let g = self.basis(budget)?.clone();
        let out = Ideal { nvars: self.nvars, generators: g.elements().to_vec(), grevlex: OnceLock::new() };
        let _ = out.grevlex.set(g);
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.nvars, other.nvars);
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(extra);
        Ideal::new(self.nvars, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                g.push(a * b);
            }
        }
        Ideal::new(self.nvars, g)
    }

    pub fn extend_vars(&self, extra: usize) -> Ideal {
        Ideal::new(self.nvars + extra, self.generators.iter().map(|g| g.extend_vars(extra)).collect())
    }

    pub fn is_homogeneous(&self, w: &WeightVector) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous(w))
    }
}

/// Reduced Gröbner basis of `ideal` for `order`.
pub fn groebner_basis(ideal: &Ideal, order: &TermOrder, budget: Budget) -> Result<GroebnerBasis> {
    let n = ideal.nvars();
    match order.well_order(n) {
        Some(engine) if *order == TermOrder::Grevlex => {
            let _ = engine;
            Ok(ideal.basis(budget)?.clone())
        }
        Some(engine) => basis_for_engine(ideal.generators(), n, engine, order.clone(), budget),
        None => {
            let TermOrder::Weighted(w) = order else { unreachable!("lex and grevlex are well-orders") };
            ops::weighted_standard_basis(ideal, w, budget)
        }
    }
}

pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    basis.normal_form(f)
}

/// Buchberger's criterion for well-orders. For a weighted order, whether the
/// lowest-weight forms of `gens` generate the weighted initial ideal of `<gens>`.
pub fn is_groebner(gens: &[Polynomial], order: &TermOrder, budget: Budget) -> Result<bool> {
    let Some(first) = gens.first() else { return Ok(true) };
    let n = first.nvars();
    match order.well_order(n) {
        Some(engine) => {
            let sorted: Vec<Sorted> =
                gens.iter().filter(|g| !g.is_zero()).map(|g| Sorted::from_poly(g, &engine)).collect();
            let mut meter = engine::Meter::new(budget);
            Ok(engine::satisfies_buchberger(&sorted, &engine, &mut meter)?)
        }
        None => {
            let TermOrder::Weighted(w) = order else { unreachable!() };
            let ideal = Ideal::new(n, gens.to_vec());
            let forms = Ideal::new(n, gens.iter().map(|g| g.lowest_weight_part(w)).collect());
            let init = initial_ideal(&ideal, w, budget)?;
            forms.equals(&init, budget)
        }
    }
}

#[cfg(test)]
mod tests;
