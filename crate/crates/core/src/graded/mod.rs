//! Associated graded rings `gr R` and `ogr R`, their Hilbert functions and
//! densities, and component checks.

mod reduced;

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::filtration::{RingPresentation, WeightCertificate};
use crate::groebner::{initial_ideal, intersect_all, Budget, Ideal};
use crate::linalg::Matrix;
use crate::poly::{format_rational, Monomial, Polynomial, Rational, VarTable, WeightVector};

pub use reduced::{eliminate_linear, is_radical_component, is_reduced, ReducednessVerdict, Tier};

/// `k[vars]/J` with `J` homogeneous for the filtration weights.
#[derive(Debug, Clone)]
pub struct GradedPresentation {
    pub vars: VarTable,
    pub weights: WeightVector,
    pub ideal: Ideal,
    pub original: Option<WeightVector>,
    pub b: usize,
}

impl GradedPresentation {
    pub fn new(
        vars: VarTable,
        weights: WeightVector,
        ideal: Ideal,
        original: Option<WeightVector>,
        b: usize,
        budget: Budget,
    ) -> Result<Self> {
        let ideal = ideal.canonical(budget)?;
        if !ideal.is_homogeneous(&weights) {
            return Err(Error::Invalid("ideal is not homogeneous for the filtration weights".into()));
        }
        if let Some(o) = &original {
            if !ideal.is_homogeneous(o) {
                return Err(Error::Invalid("ideal is not homogeneous for the original grading".into()));
            }
        }
        Ok(GradedPresentation { vars, weights, ideal, original, b })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn denominator(&self) -> i64 {
        self.weights.denominator()
    }

    pub fn names(&self) -> &[String] {
        self.vars.names()
    }

    /// Same weights and variables, another homogeneous ideal.
    pub fn with_ideal(&self, ideal: Ideal, budget: Budget) -> Result<GradedPresentation> {
        GradedPresentation::new(self.vars.clone(), self.weights.clone(), ideal, self.original.clone(), self.b, budget)
    }

    fn grading(&self, g: Grading) -> Result<&WeightVector> {
        match g {
            Grading::Filtration => Ok(&self.weights),
            Grading::Original => {
                self.original.as_ref().ok_or_else(|| Error::Invalid("no original grading declared".into()))
            }
        }
    }

    /// Largest weight of a generator of the defining ideal.
    pub fn max_generator_weight(&self) -> Rational {
        self.ideal
            .generators()
            .iter()
            .filter_map(|g| g.scaled_weight_range(&self.weights))
            .map(|(lo, _)| self.weights.unscale(lo))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// `gr R` for the `b`-adic filtration: weight 1 on `b`, 0 elsewhere.
pub fn gr_presentation(p: &RingPresentation, budget: Budget) -> Result<GradedPresentation> {
    let b = p.b_var().ok_or_else(|| Error::Invalid("b must be a variable; rewrite the presentation first".into()))?;
    let w = WeightVector::indicator(p.nvars(), b);
    let ideal = initial_ideal(&p.defining, &w, budget)?;
    GradedPresentation::new(p.vars.clone(), w, ideal, p.grading.clone(), b, budget)
}

/// `ogr R` from a certified weight vector.
pub fn ogr_presentation(p: &RingPresentation, cert: &WeightCertificate, budget: Budget) -> Result<GradedPresentation> {
    if !cert.is_certified() {
        return Err(Error::Uncertified);
    }
    GradedPresentation::new(
        p.vars.clone(),
        cert.weights.clone(),
        cert.initial_ideal.clone(),
        p.grading.clone(),
        cert.b,
        budget,
    )
}

/// The flat limit of `V(I)` under the `w`-action; the weighted initial ideal.
pub fn limit_ideal(ideal: &Ideal, w: &WeightVector, budget: Budget) -> Result<Ideal> {
    initial_ideal(ideal, w, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Filtration,
    Original,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grading::Filtration => "filtration",
            Grading::Original => "original",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub grading: Grading,
    pub denominator: i64,
    /// `(degree, dimension)` for every degree in `(1/N)Z ∩ [0, max_degree]`.
    pub entries: Vec<(Rational, u64)>,
    pub max_degree: Rational,
}

impl HilbertTable {
    pub fn dim(&self, degree: &Rational) -> Option<u64> {
        self.entries.iter().find(|(d, _)| d == degree).map(|(_, n)| *n)
    }
}

pub(crate) fn divisible_by_any(m: &Monomial, lms: &[Monomial]) -> bool {
    lms.iter().any(|l| l.divides(m))
}

/// Monomials in `vars` of exact scaled weight `targets[i]` in each grading.
pub(crate) fn exact_weight_monomials(
    gradings: &[&WeightVector],
    vars: &[usize],
    targets: &[i64],
    nvars: usize,
) -> Vec<Monomial> {
    fn go(
        gradings: &[&WeightVector],
        vars: &[usize],
        idx: usize,
        left: &mut [i64],
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if left.iter().any(|&l| l < 0) {
            return;
        }
        if idx == vars.len() {
            if left.iter().all(|&l| l == 0) {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let v = vars[idx];
        let mut e = 0u32;
        while left.iter().all(|&l| l >= 0) {
            cur[v] = e;
            go(gradings, vars, idx + 1, left, cur, out);
            for (k, g) in gradings.iter().enumerate() {
                left[k] -= g.scaled()[v];
            }
            e += 1;
        }
        for (k, g) in gradings.iter().enumerate() {
            left[k] += g.scaled()[v] * e as i64;
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    go(gradings, vars, 0, &mut targets.to_vec(), &mut vec![0; nvars], &mut out);
    out
}

fn format_degree(gradings: &[&WeightVector], targets: &[i64]) -> String {
    let parts: Vec<String> = gradings.iter().zip(targets).map(|(g, &t)| format_rational(&g.unscale(t))).collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        format!("({})", parts.join(", "))
    }
}

/// Standard monomials of the piece of multidegree `targets`.
///
/// Variables of weight 0 in every grading are allowed when each piece stays
/// finite; otherwise an infinite-dimensional error names the degree.
fn graded_piece(ideal: &Ideal, gradings: &[&WeightVector], targets: &[i64], budget: Budget) -> Result<Vec<Monomial>> {
    let n = ideal.nvars();
    let gb = ideal.basis(budget)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let lms = gb.leading_monomials();
    let positive = |v: usize| gradings.iter().any(|g| g.scaled()[v] > 0);
    let pos: Vec<usize> = (0..n).filter(|&v| positive(v)).collect();
    let zero: Vec<usize> = (0..n).filter(|&v| !positive(v)).collect();
    let mut out = Vec::new();
    for u in exact_weight_monomials(gradings, &pos, targets, n) {
        if divisible_by_any(&u, &lms) {
            continue;
        }
        let mut caps = Vec::with_capacity(zero.len());
        for &z in &zero {
            let cap = lms
                .iter()
                .filter(|l| {
                    l.exponents().iter().enumerate().all(|(v, &e)| {
                        if positive(v) {
                            e <= u.exponents()[v]
                        } else {
                            v == z || e == 0
                        }
                    })
                })
                .map(|l| l.exponents()[z])
                .min();
            match cap {
                Some(c) => caps.push(c),
                None => return Err(Error::InfiniteDimensional { degree: format_degree(gradings, targets) }),
            }
        }
        let mut box_pos = vec![0u32; zero.len()];
        loop {
            let mut e = u.exponents().to_vec();
            for (k, &z) in zero.iter().enumerate() {
                e[z] = box_pos[k];
            }
            let m = Monomial::from_exponents(e);
            if !divisible_by_any(&m, &lms) {
                out.push(m);
            }
            let mut k = 0;
            while k < zero.len() {
                box_pos[k] += 1;
                if box_pos[k] < caps[k] {
                    break;
                }
                box_pos[k] = 0;
                k += 1;
            }
            if k == zero.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Standard monomials of `J` of scaled weight `target`.
pub fn standard_monomials(ideal: &Ideal, w: &WeightVector, target: i64, budget: Budget) -> Result<Vec<Monomial>> {
    graded_piece(ideal, &[w], &[target], budget)
}

/// Standard monomials of exact scaled weight `targets[i]` for each grading `gradings[i]`.
pub fn multigraded_standard_monomials(
    ideal: &Ideal,
    gradings: &[&WeightVector],
    targets: &[i64],
    budget: Budget,
) -> Result<Vec<Monomial>> {
    if gradings.len() != targets.len() {
        return Err(Error::Invalid("one target per grading".into()));
    }
    graded_piece(ideal, gradings, targets, budget)
}

/// Dimensions of the graded pieces of degree `0, 1/N, ..., max_degree`.
pub fn hilbert_function(
    g: &GradedPresentation,
    grading: Grading,
    max_degree: &Rational,
    budget: Budget,
) -> Result<HilbertTable> {
    let w = g.grading(grading)?;
    if !g.ideal.is_homogeneous(w) {
        return Err(Error::Invalid(format!("ideal is not homogeneous for the {grading} grading")));
    }
    let n = w.denominator();
    let top = (max_degree * Rational::from_integer(n.into())).floor().to_integer().to_i64().unwrap_or(0);
    let mut entries = Vec::new();
    for s in 0..=top {
        let dim = standard_monomials(&g.ideal, w, s, budget)?.len() as u64;
        entries.push((w.unscale(s), dim));
    }
    Ok(HilbertTable { grading, denominator: n, entries, max_degree: max_degree.clone() })
}

/// `[2 * max generator weight, that + 2)`.
pub fn default_window(g: &GradedPresentation) -> (Rational, Rational) {
    let d0 = g.max_generator_weight() * Rational::from_integer(2.into());
    let d1 = &d0 + Rational::from_integer(2.into());
    (d0, d1)
}

/// Average filtration-graded dimension per unit degree over `[D0, D1)`.
///
/// Requires period-1 agreement of dimensions inside the window.
pub fn graded_density(
    g: &GradedPresentation,
    window: Option<(Rational, Rational)>,
    budget: Budget,
) -> Result<Rational> {
    let (d0, d1) = window.unwrap_or_else(|| default_window(g));
    if d1 <= d0 {
        return Err(Error::Invalid("empty density window".into()));
    }
    let w = &g.weights;
    let n = w.denominator();
    let lo = (&d0 * Rational::from_integer(n.into())).ceil().to_integer().to_i64().unwrap_or(0);
    let hi = (&d1 * Rational::from_integer(n.into())).ceil().to_integer().to_i64().unwrap_or(0);
    let mut dims = Vec::new();
    for s in lo..hi {
        dims.push(standard_monomials(&g.ideal, w, s, budget)?.len() as u64);
    }
    let period = n as usize;
    for k in 0..dims.len().saturating_sub(period) {
        if dims[k] != dims[k + period] {
            return Err(Error::NotStabilized(format!(
                "dimension {} at degree {} but {} at degree {}",
                dims[k],
                format_rational(&w.unscale(lo + k as i64)),
                dims[k + period],
                format_rational(&w.unscale(lo + (k + period) as i64))
            )));
        }
    }
    let total: u64 = dims.iter().sum();
    Ok(Rational::from_integer(total.into()) / (d1 - d0))
}

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub components: Vec<(Ideal, Rational)>,
    pub total_density: Rational,
    /// The candidates intersect to the defining ideal.
    pub verified: bool,
    /// The component densities add up to the total.
    pub additive: bool,
}

pub fn component_report(
    g: &GradedPresentation,
    candidates: &[Ideal],
    window: Option<(Rational, Rational)>,
    budget: Budget,
) -> Result<ComponentReport> {
    if candidates.is_empty() {
        return Err(Error::Invalid("no candidate components".into()));
    }
    let window = window.unwrap_or_else(|| default_window(g));
    for c in candidates {
        if !c.contains_ideal(&g.ideal, budget)? {
            return Err(Error::Invalid("a candidate does not contain the defining ideal".into()));
        }
    }
    let total_density = graded_density(g, Some(window.clone()), budget)?;
    let mut components = Vec::new();
    for c in candidates {
        let sub = g.with_ideal(c.clone(), budget)?;
        components.push((c.clone(), graded_density(&sub, Some(window.clone()), budget)?));
    }
    let verified = intersect_all(candidates, budget)?.equals(&g.ideal, budget)?;
    let sum: Rational = components.iter().map(|(_, d)| d.clone()).sum();
    Ok(ComponentReport { components, additive: sum == total_density, total_density, verified })
}

/// Multiplication by `b` from degree `i` to degree `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMap {
    pub degree: Rational,
    pub domain: usize,
    pub codomain: usize,
    pub rank: usize,
}

impl BMap {
    pub fn onto(&self) -> bool {
        self.rank == self.codomain
    }

    pub fn injective(&self) -> bool {
        self.rank == self.domain
    }
}

pub fn b_map(g: &GradedPresentation, degree: &Rational, budget: Budget) -> Result<BMap> {
    let w = &g.weights;
    let s = w.scale_degree(degree).ok_or_else(|| Error::Invalid("degree outside the weight lattice".into()))?;
    let step = w.scaled()[g.b];
    let source = standard_monomials(&g.ideal, w, s, budget)?;
    let target = standard_monomials(&g.ideal, w, s + step, budget)?;
    let gb = g.ideal.basis(budget)?;
    let bv = Polynomial::var(g.nvars(), g.b);
    let mut mat = Matrix::zeros(target.len(), source.len());
    for (j, m) in source.iter().enumerate() {
        let image = gb.try_normal_form(&(&bv * &Polynomial::monomial(m.clone())), budget)?;
        for (t, c) in image.terms() {
            let i = target.iter().position(|x| x == t).expect("normal form of a homogeneous element is standard");
            mat.set(i, j, c.clone());
        }
    }
    let rank = if mat.rows == 0 || mat.cols == 0 { 0 } else { mat.rank() };
    Ok(BMap { degree: degree.clone(), domain: source.len(), codomain: target.len(), rank })
}

/// `b`-maps out of every degree in `(1/N)Z ∩ [0, max_degree]`.
pub fn b_maps(g: &GradedPresentation, max_degree: &Rational, budget: Budget) -> Result<Vec<BMap>> {
    let n = g.denominator();
    let top = (max_degree * Rational::from_integer(n.into())).floor().to_integer().to_i64().unwrap_or(0);
    (0..=top).map(|s| b_map(g, &g.weights.unscale(s), budget)).collect()
}

#[cfg(test)]
mod tests;
