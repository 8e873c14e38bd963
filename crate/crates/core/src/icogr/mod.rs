//! The periodic completion `ICogr R`: fractions `m/b^k` integral over
//! `ogr R/ann(b)` adjoined inside `ogr R[1/b]`.
//!
//! Integral fractions are found by a bounded search over monomial numerators.
//! The assembled ideal is saturated with respect to `b`, so `b` is a
//! nonzerodivisor in the result. Completeness of the closure is not claimed.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graded::{divisible_by_any, exact_weight_monomials, multigraded_standard_monomials, GradedPresentation};
use crate::groebner::{colon, saturate, Budget, Ideal};
use crate::linalg::{express, Matrix};
use crate::poly::{format_rational, int, squarefree_part, Monomial, Polynomial, Rational, VarTable, WeightVector};

#[derive(Debug, Clone)]
pub struct SearchBounds {
    /// New degrees `weight(m) - k` are searched in `[0, degree_bound)`.
    pub degree_bound: Rational,
    pub power_bound: u32,
    pub relation_degree: u32,
    /// Total degree cap on the weight-0 part of relation coefficients.
    pub coefficient_degree: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { degree_bound: int(2), power_bound: 4, relation_degree: 4, coefficient_degree: 4 }
    }
}

/// `g = m/b^k` together with `g^d = Σ_{i<d} c_i g^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralFraction {
    pub numerator: Polynomial,
    pub power: u32,
    pub new_degree: Rational,
    /// Degree of `g` in the original grading, when the numerator is homogeneous for it.
    pub original_degree: Option<Rational>,
    /// `c_0, ..., c_{d-1}`.
    pub coefficients: Vec<Polynomial>,
}

impl IntegralFraction {
    pub fn relation_degree(&self) -> u32 {
        self.coefficients.len() as u32
    }

    /// `m^d - Σ c_i b^(k(d-i)) m^i`; zero in the base ring.
    pub fn cleared_relation(&self, b: &Polynomial) -> Polynomial {
        let d = self.relation_degree();
        let mut out = self.numerator.pow(d);
        for (i, c) in self.coefficients.iter().enumerate() {
            let i = i as u32;
            out = &out - &(&(c * &b.pow(self.power * (d - i))) * &self.numerator.pow(i));
        }
        out
    }

    /// `y^d - Σ c_i y^i` with `y` the variable `var` of an `nvars`-variable ring.
    pub fn monic_relation(&self, nvars: usize, var: usize) -> Polynomial {
        let y = Polynomial::var(nvars, var);
        let mut out = y.pow(self.relation_degree());
        for (i, c) in self.coefficients.iter().enumerate() {
            out = &out - &(&c.extend_vars(nvars - c.nvars()) * &y.pow(i as u32));
        }
        out
    }

    pub fn verify(&self, base: &GradedPresentation, budget: Budget) -> Result<bool> {
        let b = Polynomial::var(base.nvars(), base.b);
        base.ideal.contains(&self.cleared_relation(&b), budget)
    }

    /// `var = m/b^k; relation` with `b` the variable `b` of `names`.
    pub fn display(&self, names: &[String], b: usize, var: &str) -> String {
        let nv = names.len() + 1;
        let mut all = names.to_vec();
        all.push(var.to_string());
        let num = self.numerator.display(names).to_string();
        let num = if self.numerator.is_monomial() { num } else { format!("({num})") };
        format!("{var} = {num}/{}^{}; {} = 0", names[b], self.power, self.monic_relation(nv, nv - 1).display(&all))
    }
}

/// `ogr R/ann(b)`, adjoined fractions, and the presented ring.
#[derive(Debug, Clone)]
pub struct ICogrPresentation {
    pub ogr: GradedPresentation,
    pub base: GradedPresentation,
    pub adjoined: Vec<(String, IntegralFraction)>,
    pub ring: GradedPresentation,
}

fn b_poly(g: &GradedPresentation) -> Polynomial {
    Polynomial::var(g.nvars(), g.b)
}

fn b_is_nonzerodivisor(g: &GradedPresentation, budget: Budget) -> Result<bool> {
    colon(&g.ideal, &b_poly(g), budget)?.equals(&g.ideal, budget)
}

/// `ogr R/ann(b)`, the quotient by `J : b`.
pub fn annihilator_quotient(g: &GradedPresentation, budget: Budget) -> Result<GradedPresentation> {
    let j = colon(&g.ideal, &b_poly(g), budget)?;
    g.with_ideal(j, budget)
}

fn monomials_up_to_degree(vars: &[usize], cap: u32, nvars: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..cap {
        let mut next = Vec::new();
        for m in &frontier {
            let last = vars.iter().rposition(|&v| m.exponents()[v] > 0).unwrap_or(0);
            for &v in &vars[last..] {
                next.push(m.mul(&Monomial::var(nvars, v)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Standard monomials of filtration weight `scaled` and, if given, original degree `original`.
fn coefficient_basis(
    g: &GradedPresentation,
    scaled: i64,
    original: Option<&Rational>,
    cap: u32,
    lms: &[Monomial],
) -> Vec<Monomial> {
    let n = g.nvars();
    let w = &g.weights;
    let pos: Vec<usize> = (0..n).filter(|&v| w.scaled()[v] > 0).collect();
    let zero: Vec<usize> = (0..n).filter(|&v| w.scaled()[v] == 0).collect();
    let target = match (&g.original, original) {
        (Some(o), Some(d)) => match o.scale_degree(d) {
            Some(t) => Some((o, t)),
            None => return Vec::new(),
        },
        _ => None,
    };
    let zero_part = monomials_up_to_degree(&zero, cap, n);
    let mut out = Vec::new();
    for u in exact_weight_monomials(&[w], &pos, &[scaled], n) {
        for z in &zero_part {
            let m = u.mul(z);
            if target.is_some_and(|(o, t)| m.scaled_weight(o) != t) {
                continue;
            }
            if !divisible_by_any(&m, lms) {
                out.push(m);
            }
        }
    }
    out
}

/// Search for a monic relation of `numerator / b^power` over the base ring.
pub fn find_relation(
    g: &GradedPresentation,
    numerator: &Polynomial,
    power: u32,
    bounds: &SearchBounds,
    budget: Budget,
) -> Result<Option<IntegralFraction>> {
    let w = &g.weights;
    let (lo, hi) = numerator.scaled_weight_range(w).ok_or_else(|| Error::Invalid("zero numerator".into()))?;
    if lo != hi {
        return Err(Error::Invalid("numerator is not homogeneous".into()));
    }
    let new_scaled = lo - power as i64 * w.scaled()[g.b];
    if new_scaled < 0 {
        return Err(Error::Invalid("fraction of negative degree".into()));
    }
    let original_degree = g.original.as_ref().and_then(|o| {
        let (olo, ohi) = numerator.scaled_weight_range(o)?;
        (olo == ohi).then(|| o.unscale(olo) - o.weight(g.b) * Rational::from_integer(power.into()))
    });
    let gb = g.ideal.basis(budget)?;
    let lms = gb.leading_monomials();
    let b = b_poly(g);
    let nf = |f: &Polynomial| gb.try_normal_form(f, budget).map_err(Error::from);
    let target_powers: Vec<Polynomial> = (0..=bounds.relation_degree).map(|i| numerator.pow(i)).collect();
    for d in 1..=bounds.relation_degree {
        let mut columns = Vec::new();
        let mut labels = Vec::new();
        for i in 0..d {
            let scale = (d - i) as i64;
            let orig = original_degree.as_ref().map(|o| o * Rational::from_integer(scale.into()));
            for m in coefficient_basis(g, scale * new_scaled, orig.as_ref(), bounds.coefficient_degree, &lms) {
                let col = &(&Polynomial::monomial(m.clone()) * &b.pow(power * (d - i))) * &target_powers[i as usize];
                columns.push(nf(&col)?);
                labels.push((i, m));
            }
        }
        let target = nf(&target_powers[d as usize])?;
        let Some(x) = express(&columns, &target) else { continue };
        let mut coefficients = vec![Polynomial::zero(g.nvars()); d as usize];
        for ((i, m), c) in labels.into_iter().zip(x) {
            if !c.is_zero() {
                coefficients[i as usize] = &coefficients[i as usize] + &Polynomial::term(m, c);
            }
        }
        let fraction = IntegralFraction {
            numerator: numerator.clone(),
            power,
            new_degree: w.unscale(new_scaled),
            original_degree: original_degree.clone(),
            coefficients,
        };
        if fraction.verify(g, budget)? {
            return Ok(Some(fraction));
        }
    }
    Ok(None)
}

fn adjoin(ideal: &Ideal, b: usize, fraction: &IntegralFraction, budget: Budget) -> Result<Ideal> {
    let nv = ideal.nvars() + 1;
    let y = Polynomial::var(nv, nv - 1);
    let m = fraction.numerator.extend_vars(nv - fraction.numerator.nvars());
    let bk = Polynomial::var(nv, b).pow(fraction.power);
    let naive = ideal.extend_vars(1).with_generators([&(&bk * &y) - &m, fraction.monic_relation(nv, nv - 1)]);
    saturate(&naive, &Polynomial::var(nv, b), budget)
}

/// Integral fractions `m/b^k` with `m` a standard monomial in the positive-weight
/// variables other than `b`.
///
/// Candidates are visited by increasing new degree, then power; a candidate
/// already in the ring built from earlier fractions is skipped.
pub fn find_integral_fractions(
    g: &GradedPresentation,
    bounds: &SearchBounds,
    budget: Budget,
) -> Result<Vec<IntegralFraction>> {
    if !b_is_nonzerodivisor(g, budget)? {
        return Err(Error::Invalid("b is a zero divisor; pass the annihilator quotient".into()));
    }
    let n = g.nvars();
    let w = &g.weights;
    let sb = w.scaled()[g.b];
    let top = w.scale_degree(&bounds.degree_bound).unwrap_or_else(|| {
        (&bounds.degree_bound * Rational::from_integer(w.denominator().into()))
            .ceil()
            .to_integer()
            .to_i64()
            .unwrap_or(0)
    });
    let gb = g.ideal.basis(budget)?;
    let lms = gb.leading_monomials();
    let pos: Vec<usize> = (0..n).filter(|&v| v != g.b && w.scaled()[v] > 0).collect();
    let mut candidates = Vec::new();
    for k in 1..=bounds.power_bound {
        for t in 0..top {
            for m in exact_weight_monomials(&[w], &pos, &[k as i64 * sb + t], n) {
                if !divisible_by_any(&m, &lms) {
                    candidates.push((t, k, m));
                }
            }
        }
    }
    candidates.sort();
    let mut current = g.ideal.clone();
    let mut found = Vec::new();
    for (_, k, m) in candidates {
        let nv = current.nvars();
        let mp = Polynomial::monomial(m);
        let bk = Polynomial::var(nv, g.b).pow(k);
        if current.with_generators([bk]).contains(&mp.extend_vars(nv - n), budget)? {
            continue;
        }
        if let Some(f) = find_relation(g, &mp, k, bounds, budget)? {
            current = adjoin(&current, g.b, &f, budget)?;
            found.push(f);
        }
    }
    Ok(found)
}

/// Adjoin `fractions` to `ogr R/ann(b)` under fresh names.
pub fn icogr_presentation(
    ogr: &GradedPresentation,
    fractions: &[IntegralFraction],
    budget: Budget,
) -> Result<ICogrPresentation> {
    let mut vars = ogr.vars.clone();
    let mut named = Vec::new();
    for f in fractions {
        let name = vars.fresh_name("f");
        vars = vars.with_extra([name.clone()]);
        named.push((name, f.clone()));
    }
    icogr_presentation_named(ogr, named, budget)
}

pub fn icogr_presentation_named(
    ogr: &GradedPresentation,
    fractions: Vec<(String, IntegralFraction)>,
    budget: Budget,
) -> Result<ICogrPresentation> {
    let base = annihilator_quotient(ogr, budget)?;
    let n = base.nvars();
    let r = fractions.len();
    for (name, f) in &fractions {
        if base.vars.index(name).is_some() || fractions.iter().filter(|(o, _)| o == name).count() > 1 {
            return Err(Error::Invalid(format!("variable {name} is already in use")));
        }
        if f.numerator.nvars() != n || !f.verify(&base, budget)? {
            return Err(Error::Invalid(format!("the relation for {name} does not hold")));
        }
    }
    let vars = base.vars.with_extra(fractions.iter().map(|(s, _)| s.clone()));
    let b = Polynomial::var(n + r, base.b);
    let mut gens: Vec<Polynomial> = base.ideal.extend_vars(r).generators().to_vec();
    for (j, (_, f)) in fractions.iter().enumerate() {
        let y = Polynomial::var(n + r, n + j);
        gens.push(&(&b.pow(f.power) * &y) - &f.numerator.extend_vars(r));
        gens.push(f.monic_relation(n + r, n + j));
    }
    let ideal = saturate(&Ideal::new(n + r, gens), &b, budget)?;
    let weights = base.weights.extended(&fractions.iter().map(|(_, f)| f.new_degree.clone()).collect::<Vec<_>>());
    let original = match &base.original {
        Some(o) => {
            fractions.iter().map(|(_, f)| f.original_degree.clone()).collect::<Option<Vec<_>>>().map(|d| o.extended(&d))
        }
        None => None,
    };
    let ring = GradedPresentation::new(vars, weights, ideal, original, base.b, budget)?;
    if !b_is_nonzerodivisor(&ring, budget)? {
        return Err(Error::Invalid("b is a zero divisor in the assembled ring".into()));
    }
    Ok(ICogrPresentation { ogr: ogr.clone(), base, adjoined: fractions, ring })
}

/// Annihilator quotient, fraction search and assembly.
pub fn compute_icogr(ogr: &GradedPresentation, bounds: &SearchBounds, budget: Budget) -> Result<ICogrPresentation> {
    let base = annihilator_quotient(ogr, budget)?;
    let fractions = find_integral_fractions(&base, bounds, budget)?;
    icogr_presentation(ogr, &fractions, budget)
}

/// Remove `name` using a generator `c*name + h` with `c` constant and `h` free of `name`.
pub fn drop_variable(vars: &VarTable, ideal: &Ideal, name: &str, budget: Budget) -> Result<(VarTable, Ideal)> {
    let v = vars.index(name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
    let n = vars.len();
    let ideal = ideal.canonical(budget)?;
    let value = ideal
        .generators()
        .iter()
        .find_map(|g| {
            let c = g.coefficients_in(v);
            (c.len() == 2 && c[1].is_constant() && !c[1].is_zero()).then(|| c[0].scale(&(-c[1].terms()[0].1.recip())))
        })
        .ok_or_else(|| Error::Invalid(format!("{name} is not eliminable by a linear generator")))?;
    let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let mut images: Vec<Polynomial> = Vec::with_capacity(n);
    for u in 0..n {
        if u == v {
            images.push(Polynomial::zero(n - 1));
        } else {
            images.push(Polynomial::var(n - 1, keep.iter().position(|&k| k == u).unwrap()));
        }
    }
    let value_img = value.substitute(&images, n - 1);
    images[v] = value_img;
    let gens = ideal.generators().iter().map(|g| g.substitute(&images, n - 1)).collect();
    let names: Vec<String> = keep.iter().map(|&u| vars.names()[u].clone()).collect();
    Ok((VarTable::new(names), Ideal::new(n - 1, gens).canonical(budget)?))
}

/// Move `ideal` from `from` to `to` by variable name.
pub fn transport(ideal: &Ideal, from: &VarTable, to: &VarTable) -> Result<Ideal> {
    let images: Vec<Polynomial> = from
        .names()
        .iter()
        .map(|s| {
            to.index(s)
                .map(|i| Polynomial::var(to.len(), i))
                .ok_or_else(|| Error::Invalid(format!("{s} missing from the target ring")))
        })
        .collect::<Result<_>>()?;
    Ok(Ideal::new(to.len(), ideal.generators().iter().map(|g| g.substitute(&images, to.len())).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityWindow {
    pub max_degree: Rational,
    /// Largest original degree sampled when an original grading exists.
    pub max_original: Rational,
}

impl Default for PeriodicityWindow {
    fn default() -> Self {
        PeriodicityWindow { max_degree: int(4), max_original: int(6) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityEntry {
    pub degree: Rational,
    /// Dimensions per sampled original degree (one entry without an original grading).
    pub ogr_dims: Vec<u64>,
    pub icogr_dims: Vec<u64>,
    /// `b: ICogr_n -> ICogr_(n+1)` is bijective on every sampled piece.
    pub b_bijective: bool,
    /// `ogr_n -> (R/√I)_n ⊕ ICogr_n` is onto on every sampled piece.
    pub inclusion_iso: bool,
    /// `dim ogr_n ≤ dim (R/√I)_n + dim ICogr_n` on every sampled piece.
    pub sandwich: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub original_degrees: Option<Vec<Rational>>,
    pub entries: Vec<PeriodicityEntry>,
}

impl PeriodicityReport {
    pub fn periodic(&self) -> bool {
        self.entries.iter().all(|e| e.b_bijective)
    }

    /// First sampled degree from which the inclusion is an isomorphism throughout.
    pub fn iso_from(&self) -> Option<Rational> {
        let last_bad = self.entries.iter().rposition(|e| !e.inclusion_iso);
        match last_bad {
            None => self.entries.first().map(|e| e.degree.clone()),
            Some(i) => self.entries.get(i + 1).map(|e| e.degree.clone()),
        }
    }

    pub fn sandwich(&self) -> bool {
        self.entries.iter().all(|e| e.sandwich)
    }

    /// Degree of the first non-bijective `b` map.
    pub fn first_failure(&self) -> Option<Rational> {
        self.entries.iter().find(|e| !e.b_bijective).map(|e| e.degree.clone())
    }
}

impl fmt::Display for PeriodicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let dims = |v: &[u64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            writeln!(
                f,
                "degree {}: ogr [{}] icogr [{}] b {} inclusion {}",
                format_rational(&e.degree),
                dims(&e.ogr_dims),
                dims(&e.icogr_dims),
                if e.b_bijective { "bijective" } else { "not bijective" },
                if e.inclusion_iso { "iso" } else { "not iso" }
            )?;
        }
        Ok(())
    }
}

struct Sampler<'a> {
    g: &'a GradedPresentation,
    budget: Budget,
}

impl Sampler<'_> {
    fn gradings(&self) -> Vec<&WeightVector> {
        let mut v = vec![&self.g.weights];
        v.extend(self.g.original.as_ref());
        v
    }

    fn targets(&self, degree: &Rational, original: Option<&Rational>) -> Option<Vec<i64>> {
        let mut t = vec![self.g.weights.scale_degree(degree)?];
        if let (Some(o), Some(d)) = (&self.g.original, original) {
            t.push(o.scale_degree(d)?);
        }
        Some(t)
    }

    fn piece(&self, degree: &Rational, original: Option<&Rational>) -> Result<Vec<Monomial>> {
        match self.targets(degree, original) {
            Some(t) => multigraded_standard_monomials(&self.g.ideal, &self.gradings(), &t, self.budget),
            None => Ok(Vec::new()),
        }
    }

    /// `(domain, codomain, rank)` of multiplication by `b` out of a piece.
    fn b_map(&self, degree: &Rational, original: Option<&Rational>) -> Result<(usize, usize, usize)> {
        let g = self.g;
        let source = self.piece(degree, original)?;
        let shifted = original.map(|o| o + g.original.as_ref().map(|w| w.weight(g.b).clone()).unwrap_or_default());
        let target = self.piece(&(degree + int(1)), shifted.as_ref())?;
        let gb = g.ideal.basis(self.budget)?;
        let b = b_poly(g);
        let mut mat = Matrix::zeros(target.len(), source.len());
        for (j, m) in source.iter().enumerate() {
            let image = gb.try_normal_form(&(&b * &Polynomial::monomial(m.clone())), self.budget)?;
            for (t, c) in image.terms() {
                let i = target.iter().position(|x| x == t).expect("image lies in the shifted piece");
                mat.set(i, j, c.clone());
            }
        }
        let rank = if mat.rows == 0 || mat.cols == 0 { 0 } else { mat.rank() };
        Ok((source.len(), target.len(), rank))
    }
}

/// Sample `b`-periodicity of `ICogr R` and the inclusion of `ogr R` into
/// `R/√I ⊕ ICogr R` over the window. `R/√I` is `ogr R` in degree 0.
pub fn verify_periodicity(
    p: &ICogrPresentation,
    window: &PeriodicityWindow,
    budget: Budget,
) -> Result<PeriodicityReport> {
    let ring = Sampler { g: &p.ring, budget };
    let ogr = Sampler { g: &p.ogr, budget };
    let n = p.ring.denominator();
    let top = (&window.max_degree * Rational::from_integer(n.into())).floor().to_integer().to_i64().unwrap_or(0);
    let original_degrees: Option<Vec<Rational>> = match (&p.ring.original, &p.ogr.original) {
        (Some(o), Some(_)) => {
            let step = o.denominator();
            let max =
                (&window.max_original * Rational::from_integer(step.into())).floor().to_integer().to_i64().unwrap_or(0);
            Some((0..=max).map(|s| Rational::new(s.into(), step.into())).collect())
        }
        _ => None,
    };
    let samples: Vec<Option<Rational>> = match &original_degrees {
        Some(v) => v.iter().cloned().map(Some).collect(),
        None => vec![None],
    };
    let degree0: Vec<u64> = samples
        .iter()
        .map(|m| ogr.piece(&Rational::zero(), m.as_ref()).map(|v| v.len() as u64))
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for s in 0..=top {
        let degree = Rational::new(s.into(), n.into());
        let mut e = PeriodicityEntry {
            degree: degree.clone(),
            ogr_dims: Vec::new(),
            icogr_dims: Vec::new(),
            b_bijective: true,
            inclusion_iso: true,
            sandwich: true,
        };
        for (k, m) in samples.iter().enumerate() {
            let o = ogr.piece(&degree, m.as_ref())?.len() as u64;
            let (dom, cod, rank) = ring.b_map(&degree, m.as_ref())?;
            let sum = dom as u64 + if s == 0 { degree0[k] } else { 0 };
            e.b_bijective &= dom == cod && rank == dom;
            e.inclusion_iso &= o == sum;
            e.sandwich &= o <= sum;
            e.ogr_dims.push(o);
            e.icogr_dims.push(dom as u64);
        }
        entries.push(e);
    }
    Ok(PeriodicityReport { original_degrees, entries })
}

/// Number of points of the degree-0 piece of `ICogr R` over the algebraic closure.
///
/// The piece must be finite-dimensional. For linear forms `ℓ_t = Σ t^i x_i`
/// the squarefree part of the minimal polynomial of `ℓ_t` has degree at most
/// the number of points, with equality for all but finitely many `t`.
pub fn component_count_degree0(p: &ICogrPresentation, budget: Budget) -> Result<usize> {
    let sampler = Sampler { g: &p.ring, budget };
    let zero_targets = vec![0i64; sampler.gradings().len()];
    let basis = multigraded_standard_monomials(&p.ring.ideal, &sampler.gradings(), &zero_targets, budget)?;
    let dim = basis.len();
    if dim == 0 {
        return Ok(0);
    }
    let n = p.ring.nvars();
    let zero: Vec<usize> = (0..n).filter(|&v| sampler.gradings().iter().all(|g| g.scaled()[v] == 0)).collect();
    let gb = p.ring.ideal.basis(budget)?;
    let tries = (dim * (dim - 1) / 2) * zero.len().saturating_sub(1) + 1;
    let mut best = 0;
    for t in 1..=tries as i64 {
        let mut l = Polynomial::zero(n);
        let mut c = int(1);
        for &v in &zero {
            l = &l + &Polynomial::var(n, v).scale(&c);
            c *= int(t);
        }
        let mut powers = vec![gb.try_normal_form(&Polynomial::one(n), budget)?];
        let coeffs = loop {
            let next = gb.try_normal_form(&(&l * powers.last().unwrap()), budget)?;
            if let Some(x) = express(&powers, &next) {
                break x;
            }
            powers.push(next);
            if powers.len() > dim + 1 {
                return Err(Error::Invalid("degree-0 piece is larger than its basis".into()));
            }
        };
        let d = coeffs.len() as u32;
        let mut minpoly = Polynomial::var(1, 0).pow(d);
        for (i, x) in coeffs.iter().enumerate() {
            minpoly = &minpoly - &Polynomial::var(1, 0).pow(i as u32).scale(x);
        }
        let sq = squarefree_part(&minpoly)?;
        best = best.max(sq.total_degree() as usize);
        if best == dim {
            break;
        }
    }
    Ok(best)
}
