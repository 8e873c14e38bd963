//! The I-adic order `q`, Samuel sequences `q(r^n)/n`, lower bounds for the
//! balanced order `q̄`, and weight certificates.

mod certify;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::poly::{format_rational, Polynomial, Rational, VarTable, WeightVector};

pub use certify::{
    certify_weights, filtration_value, integral_dependence_degree, CertificateStatus, CertifyOptions,
    LowerBoundEvidence, PowerWitness, WeightCertificate,
};

/// The filtration ideal: a single element `b`, or a list of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationIdeal {
    Principal(Polynomial),
    Generators(Vec<Polynomial>),
}

/// `R = k[vars]/I_R` with a distinguished filtration ideal.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    pub vars: VarTable,
    pub defining: Ideal,
    pub ideal: FiltrationIdeal,
    pub grading: Option<WeightVector>,
}

impl RingPresentation {
    /// Checks that `b` is nonzero in `R` and that the grading, if any, is respected.
    pub fn new(
        vars: VarTable,
        defining: Ideal,
        b: Polynomial,
        grading: Option<WeightVector>,
        budget: Budget,
    ) -> Result<Self> {
        Self::with_ideal(vars, defining, FiltrationIdeal::Principal(b), grading, budget)
    }

    pub fn with_ideal(
        vars: VarTable,
        defining: Ideal,
        ideal: FiltrationIdeal,
        grading: Option<WeightVector>,
        budget: Budget,
    ) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::Invalid("empty variable set".into()));
        }
        if defining.nvars() != n {
            return Err(Error::Invalid("defining ideal lives in a different ring".into()));
        }
        let gens: Vec<&Polynomial> = match &ideal {
            FiltrationIdeal::Principal(b) => vec![b],
            FiltrationIdeal::Generators(g) => g.iter().collect(),
        };
        if gens.is_empty() || gens.iter().any(|g| g.nvars() != n) {
            return Err(Error::Invalid("filtration ideal must have generators in the ring".into()));
        }
        if gens.iter().all(|g| defining.contains(g, budget).unwrap_or(false)) {
            return Err(Error::Invalid("the filtration ideal is zero in R".into()));
        }
        if let Some(w) = &grading {
            if w.len() != n {
                return Err(Error::Invalid("grading has the wrong number of weights".into()));
            }
            if !defining.is_homogeneous(w) {
                return Err(Error::Invalid("defining ideal is not homogeneous for the grading".into()));
            }
        }
        Ok(RingPresentation { vars, defining, ideal, grading })
    }

    /// Parse generators and `b` over `names`, with the default budget.
    pub fn parse(names: &[&str], gens: &[&str], b: &str) -> Result<Self> {
        let vars = VarTable::new(names.iter().copied());
        let parse = |t: &str| crate::cli::parse_polynomial(&vars, t).map_err(|e| Error::Invalid(e.to_string()));
        let gens = gens.iter().map(|g| parse(g)).collect::<Result<Vec<_>>>()?;
        let b = parse(b)?;
        RingPresentation::new(vars.clone(), Ideal::new(names.len(), gens), b, None, Budget::default())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        self.vars.names()
    }

    /// The index of `b` when the filtration ideal is generated by one variable.
    pub fn b_var(&self) -> Option<usize> {
        let FiltrationIdeal::Principal(b) = &self.ideal else { return None };
        let (m, c) = b.terms().first()?;
        if b.len() != 1 || !c.is_integer() || c.to_integer() != 1.into() || m.degree() != 1 {
            return None;
        }
        m.exponents().iter().position(|&e| e == 1)
    }

    pub fn b(&self) -> Option<&Polynomial> {
        match &self.ideal {
            FiltrationIdeal::Principal(b) => Some(b),
            FiltrationIdeal::Generators(_) => None,
        }
    }

    /// Present `R` with `b` as a variable, adding `t` and the relation `t - b` if needed.
    pub fn with_element_variable(&self, budget: Budget) -> Result<RingPresentation> {
        if self.b_var().is_some() {
            return Ok(self.clone());
        }
        let FiltrationIdeal::Principal(b) = &self.ideal else {
            return Err(Error::Invalid("a non-principal filtration ideal has no single element".into()));
        };
        let name = self.vars.fresh_name("t");
        let vars = self.vars.with_extra([name]);
        let n = vars.len();
        let t = Polynomial::var(n, n - 1);
        let defining = self.defining.extend_vars(1).with_generators([&t - &b.extend_vars(1)]);
        let grading = match &self.grading {
            Some(w) => {
                let Some((lo, hi)) = b.scaled_weight_range(w) else { unreachable!("b is nonzero") };
                if lo != hi {
                    return Err(Error::Invalid("b is not homogeneous for the grading".into()));
                }
                Some(w.extended(&[w.unscale(lo)]))
            }
            None => None,
        };
        RingPresentation::new(vars, defining, t, grading, budget)
    }

    /// Whether `r = 0` in `R`.
    pub fn is_zero(&self, r: &Polynomial, budget: Budget) -> Result<bool> {
        self.defining.contains(r, budget)
    }

    pub fn display(&self, f: &Polynomial) -> String {
        f.display(self.names()).to_string()
    }
}

/// A value of the I-adic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrderValue {
    Finite(u32),
    /// `r ∈ I^cap`; only a lower bound is known.
    ExceedsCap(u32),
    /// `r = 0` in `R`.
    Infinity,
}

impl OrderValue {
    pub fn lower_bound(&self) -> Option<u32> {
        match self {
            OrderValue::Finite(n) | OrderValue::ExceedsCap(n) => Some(*n),
            OrderValue::Infinity => None,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(n) => write!(f, "{n}"),
            OrderValue::ExceedsCap(n) => write!(f, ">= {n} (cap)"),
            OrderValue::Infinity => f.write_str("infinity"),
        }
    }
}

/// A session for I-adic computations with a cache of `I_R + I^n` ideals.
#[derive(Debug)]
pub struct Filtration<'p> {
    pub presentation: &'p RingPresentation,
    pub budget: Budget,
    powers: Mutex<HashMap<u32, Arc<Ideal>>>,
    warnings: Mutex<Vec<String>>,
}

impl<'p> Filtration<'p> {
    pub fn new(presentation: &'p RingPresentation, budget: Budget) -> Self {
        Filtration { presentation, budget, powers: Mutex::new(HashMap::new()), warnings: Mutex::new(Vec::new()) }
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().expect("warning lock").clone()
    }

    /// `I_R + I^n`.
    fn power_ideal(&self, n: u32) -> Arc<Ideal> {
        if let Some(i) = self.powers.lock().expect("cache lock").get(&n) {
            return i.clone();
        }
        let p = self.presentation;
        let gens: Vec<Polynomial> = match &p.ideal {
            FiltrationIdeal::Principal(b) => vec![b.pow(n)],
            FiltrationIdeal::Generators(g) => {
                let products = generator_products(g, n);
                self.warnings
                    .lock()
                    .expect("warning lock")
                    .push(format!("non-principal ideal: formed {} generator products for I^{n}", products.len()));
                products
            }
        };
        let ideal = Arc::new(p.defining.with_generators(gens));
        self.powers.lock().expect("cache lock").entry(n).or_insert(ideal).clone()
    }

    fn in_power(&self, r: &Polynomial, n: u32) -> Result<bool> {
        if n == 0 {
            return Ok(true);
        }
        self.power_ideal(n).contains(r, self.budget)
    }

    /// Largest `n ≤ cap` with `r ∈ I^n`.
    pub fn adic_order(&self, r: &Polynomial, cap: u32) -> Result<OrderValue> {
        if cap == 0 {
            return Err(Error::Invalid("cap must be at least 1".into()));
        }
        if self.presentation.is_zero(r, self.budget)? {
            return Ok(OrderValue::Infinity);
        }
        // gallop to bracket the order, then bisect
        let (mut lo, mut hi) = (0u32, None);
        let mut n = 1u32;
        while n < cap {
            if self.in_power(r, n)? {
                lo = n;
                n = n.saturating_mul(2);
            } else {
                hi = Some(n);
                break;
            }
        }
        let mut hi = match hi {
            Some(h) => h,
            None => {
                if self.in_power(r, cap)? {
                    return Ok(OrderValue::ExceedsCap(cap));
                }
                cap
            }
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.in_power(r, mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(OrderValue::Finite(lo))
    }

    /// `(n, q(r^n), q(r^n)/n)` for each exponent.
    pub fn samuel_sequence(&self, r: &Polynomial, exponents: &[u32], cap: u32) -> Result<Vec<SamuelEntry>> {
        if exponents.is_empty() || exponents.windows(2).any(|w| w[0] >= w[1]) || exponents[0] == 0 {
            return Err(Error::Invalid("exponents must be positive and increasing".into()));
        }
        let mut out = Vec::with_capacity(exponents.len());
        for &n in exponents {
            let order = self.adic_order(&r.pow(n), cap)?;
            out.push(SamuelEntry::new(n, order));
        }
        assert_monotone(&out);
        Ok(out)
    }

    /// A certified lower bound for `q̄(r)` from `q(r^n)/n` along `n = 1, 2, 4, ... ≤ cap`.
    pub fn barq_estimate(&self, r: &Polynomial, options: &EstimateOptions) -> Result<BarqEstimate> {
        if options.cap < 2 {
            return Err(Error::Invalid("cap must be at least 2".into()));
        }
        let mut entries = Vec::new();
        let mut n = 1u32;
        while n <= options.cap {
            let order = self.adic_order(&r.pow(n), n.saturating_mul(options.ratio_cap).max(1))?;
            let infinite = order == OrderValue::Infinity;
            entries.push(SamuelEntry::new(n, order));
            if infinite {
                break;
            }
            n *= 2;
        }
        assert_monotone(&entries);
        Ok(BarqEstimate::from_entries(entries, options.denominator_bound))
    }
}

/// All products of `n` generators, with repetition.
fn generator_products(gens: &[Polynomial], n: u32) -> Vec<Polynomial> {
    let mut layer: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one(gens[0].nvars()))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, p) in &layer {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, p * g));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(_, p)| p).collect()
}

fn assert_monotone(entries: &[SamuelEntry]) {
    for a in entries {
        for b in entries {
            if b.n % a.n == 0 {
                if let (Some(x), Some(y), OrderValue::Finite(_), OrderValue::Finite(_)) =
                    (&a.ratio, &b.ratio, a.order, b.order)
                {
                    assert!(x <= y, "Samuel ratios decreased along {} | {}", a.n, b.n);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamuelEntry {
    pub n: u32,
    pub order: OrderValue,
    /// `q(r^n)/n`, or its lower bound at the cap; `None` when `r^n = 0`.
    pub ratio: Option<Rational>,
}

impl SamuelEntry {
    fn new(n: u32, order: OrderValue) -> Self {
        let ratio = order.lower_bound().map(|q| Rational::new(q.into(), n.into()));
        SamuelEntry { n, order, ratio }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateOptions {
    /// Largest exponent `n` in the doubling sequence.
    pub cap: u32,
    /// `q(r^n)` is searched up to `n * ratio_cap`.
    pub ratio_cap: u32,
    /// Largest denominator accepted for a stabilized value.
    pub denominator_bound: u32,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions { cap: 16, ratio_cap: 4, denominator_bound: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Finite(Rational),
    Infinite,
}

impl Bound {
    pub fn at_least(&self, w: &Rational) -> bool {
        match self {
            Bound::Finite(x) => x >= w,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(x) => f.write_str(&format_rational(x)),
            Bound::Infinite => f.write_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateStatus {
    /// The last two ratios agree with a small denominator. Evidence, not proof.
    Stabilized,
    LowerBoundOnly,
}

impl fmt::Display for EstimateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateStatus::Stabilized => "stabilized",
            EstimateStatus::LowerBoundOnly => "lower_bound_only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarqEstimate {
    pub lower_bound: Bound,
    pub status: EstimateStatus,
    pub entries: Vec<SamuelEntry>,
}

impl BarqEstimate {
    fn from_entries(entries: Vec<SamuelEntry>, denominator_bound: u32) -> Self {
        if entries.iter().any(|e| e.order == OrderValue::Infinity) {
            return BarqEstimate { lower_bound: Bound::Infinite, status: EstimateStatus::Stabilized, entries };
        }
        let best = entries.iter().filter_map(|e| e.ratio.clone()).max().unwrap_or_else(Rational::zero);
        let status = match entries.as_slice() {
            [.., a, b]
                if matches!(a.order, OrderValue::Finite(_))
                    && matches!(b.order, OrderValue::Finite(_))
                    && a.ratio == b.ratio
                    && b.ratio.as_ref().and_then(|r| r.denom().to_u32()).is_some_and(|d| d <= denominator_bound) =>
            {
                EstimateStatus::Stabilized
            }
            _ => EstimateStatus::LowerBoundOnly,
        };
        BarqEstimate { lower_bound: Bound::Finite(best), status, entries }
    }
}

pub fn adic_order(r: &Polynomial, p: &RingPresentation, cap: u32, budget: Budget) -> Result<OrderValue> {
    Filtration::new(p, budget).adic_order(r, cap)
}

pub fn samuel_sequence(
    r: &Polynomial,
    p: &RingPresentation,
    exponents: &[u32],
    cap: u32,
    budget: Budget,
) -> Result<Vec<SamuelEntry>> {
    Filtration::new(p, budget).samuel_sequence(r, exponents, cap)
}

pub fn barq_estimate(
    r: &Polynomial,
    p: &RingPresentation,
    options: &EstimateOptions,
    budget: Budget,
) -> Result<BarqEstimate> {
    Filtration::new(p, budget).barq_estimate(r, options)
}

#[cfg(test)]
mod tests;
