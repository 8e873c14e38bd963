//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a sparse list of terms kept in strictly descending
//! lexicographic order on exponent vectors. That storage order is an
//! implementation detail used for canonical form; term orders that matter
//! to the algebra live in [`order`].

mod gcd;
pub mod order;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use gcd::{gcd, squarefree_part};
pub use order::{MonomialOrder, TermOrder, WeightVector};

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable-set mismatch: {left} vs {right} variables")]
    VariableMismatch { left: usize, right: usize },
    #[error("squarefree part of the zero polynomial is undefined")]
    ZeroInput,
}

/// Exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * n).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Sum of exponents times weights, exactly.
    pub fn weight(&self, w: &WeightVector) -> Rational {
        Rational::new(BigInt::from(self.scaled_weight(w)), BigInt::from(w.denominator()))
    }

    /// Weight scaled by the weight vector's common denominator.
    pub fn scaled_weight(&self, w: &WeightVector) -> i64 {
        debug_assert_eq!(self.0.len(), w.len());
        self.0.iter().zip(w.scaled()).map(|(&e, &s)| e as i64 * s).sum()
    }

    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    /// Drop the trailing `count` variables, which must not occur.
    pub fn truncate(&self, count: usize) -> Option<Monomial> {
        let keep = self.0.len() - count;
        if self.0[keep..].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial(self.0[..keep].to_vec()))
    }

    pub fn uses_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&v| self.0[v] != 0)
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    /// Build from arbitrary terms; duplicates are summed and zeros dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            let slot = acc.entry(m).or_insert_with(Rational::zero);
            *slot += c;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient in storage (lex) order.
    pub fn storage_lc(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Divide by the storage-order leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.storage_lc() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // multiplication by a monomial preserves lex order
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { nvars: self.nvars, terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let slot = acc.entry(m.mul(n)).or_insert_with(Rational::zero);
                *slot += a * b;
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), c * int(k as i64))
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Minimum and maximum scaled weight over the terms.
    pub fn scaled_weight_range(&self, w: &WeightVector) -> Option<(i64, i64)> {
        let mut it = self.terms.iter().map(|(m, _)| m.scaled_weight(w));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn is_homogeneous(&self, w: &WeightVector) -> bool {
        match self.scaled_weight_range(w) {
            None => true,
            Some((lo, hi)) => lo == hi,
        }
    }

    /// The sum of the terms of least weight.
    pub fn lowest_weight_part(&self, w: &WeightVector) -> Polynomial {
        let Some((lo, _)) = self.scaled_weight_range(w) else {
            return self.clone();
        };
        self.weight_component(w, lo)
    }

    /// The terms of scaled weight exactly `scaled`.
    pub fn weight_component(&self, w: &WeightVector, scaled: i64) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.scaled_weight(w) == scaled).cloned().collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// Embed in a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Remove `count` trailing variables that do not occur.
    pub fn truncate_vars(&self, count: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.truncate(count)?, c.clone()));
        }
        Some(Polynomial { nvars: self.nvars - count, terms })
    }

    pub fn uses_any(&self, vars: &[usize]) -> bool {
        self.terms.iter().any(|(m, _)| m.uses_any(vars))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] != 0)
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    /// Substitute polynomials (over `target_nvars` variables) for every variable.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let mut out = Polynomial::zero(target_nvars);
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target_nvars), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().product(&images[v]);
                    powers[v].push(next);
                }
                t = t.product(&powers[v][e as usize]);
            }
            out = out.merge(&t, false);
        }
        out
    }

    /// Substitute a polynomial for one variable, keeping the ring.
    pub fn substitute_var(&self, var: usize, value: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> =
            (0..self.nvars).map(|v| if v == var { value.clone() } else { Polynomial::var(self.nvars, v) }).collect();
        self.substitute(&images, self.nvars)
    }

    /// Homogenize with respect to total degree using the extra last variable.
    pub fn homogenize(&self) -> Polynomial {
        let d = self.total_degree();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.push((d - m.degree()) as u32);
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(self.nvars + 1, terms)
    }

    /// Set the last variable to 1.
    pub fn dehomogenize(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.pop();
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(self.nvars - 1, terms)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = &c / &lc;
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(self.nvars, quot))
    }

    /// Coefficients as a univariate polynomial in `var`, indexed by degree.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var] as usize;
            e[var] = 0;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(self.nvars, t)).collect()
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Shared table of variable names for one ambient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Arc<[String]>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarTable { names: names.into_iter().map(Into::into).collect::<Vec<_>>().into() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Polynomial {
        let i = self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Polynomial::var(self.len(), i)
    }

    /// A new table with extra names appended.
    pub fn with_extra<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> VarTable {
        let mut v: Vec<String> = self.names.to_vec();
        v.extend(extra.into_iter().map(Into::into));
        VarTable { names: v.into() }
    }

    /// A fresh name not already in the table, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index(stem).is_none() {
            return stem.to_string();
        }
        (1..).map(|i| format!("{stem}{i}")).find(|n| self.index(n).is_none()).unwrap()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (v, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&names[v])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    /// Terms are printed in descending graded-reverse-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let order = MonomialOrder::grevlex(self.poly.nvars);
        let mut terms: Vec<&(Monomial, Rational)> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    let s = format_rational(&abs);
                    if abs.is_integer() {
                        write!(f, "{s}*")?;
                    } else {
                        write!(f, "({s})*")?;
                    }
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

/// Render with default names `x0, x1, ...`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Convert a small rational to f64 for diagnostics only.
pub fn approx(c: &Rational) -> f64 {
    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
}
