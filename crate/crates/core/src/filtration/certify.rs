use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_reduced, ReducednessVerdict};
use crate::groebner::{groebner_basis, initial_ideal, is_groebner, Budget, GroebnerBasis, Ideal};
use crate::poly::{format_rational, Monomial, Polynomial, Rational, TermOrder, WeightVector};

use super::{EstimateOptions, Filtration, RingPresentation};

/// Caller-supplied evidence `v^n = s * b^k` in `R`, giving `q̄(v) ≥ k/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWitness {
    pub var: usize,
    pub n: u32,
    pub k: u32,
    pub cofactor: Polynomial,
}

/// Why a variable's weight is a lower bound for its balanced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundEvidence {
    ZeroWeight {
        var: usize,
    },
    Supplied {
        var: usize,
        n: u32,
        k: u32,
    },
    /// `z = v^power` satisfies `z^degree + Σ a_i z^(degree-i) = 0` with `a_i ∈ <b^(level*i)>`,
    /// so `z/b^level` is integral and `q̄(v) ≥ level/power`.
    IntegralDependence {
        var: usize,
        power: u32,
        level: u32,
        degree: u32,
    },
    Estimate {
        var: usize,
        bound: Rational,
    },
}

impl LowerBoundEvidence {
    pub fn var(&self) -> usize {
        match self {
            LowerBoundEvidence::ZeroWeight { var }
            | LowerBoundEvidence::Supplied { var, .. }
            | LowerBoundEvidence::IntegralDependence { var, .. }
            | LowerBoundEvidence::Estimate { var, .. } => *var,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LowerBoundEvidence::ZeroWeight { .. } => "weight 0".into(),
            LowerBoundEvidence::Supplied { n, k, .. } => format!("supplied v^{n} = s*b^{k}"),
            LowerBoundEvidence::IntegralDependence { power, level, degree, .. } => {
                format!("v^{power}/b^{level} integral of degree {degree}")
            }
            LowerBoundEvidence::Estimate { bound, .. } => format!("Samuel ratio {}", format_rational(bound)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateStatus {
    Certified,
    Refuted { witness: Polynomial, exponent: u32 },
    Inconclusive,
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateStatus::Certified => f.write_str("certified"),
            CertificateStatus::Refuted { .. } => f.write_str("refuted"),
            CertificateStatus::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WeightCertificate {
    pub weights: WeightVector,
    pub b: usize,
    pub gb_evidence: GroebnerBasis,
    pub initial_ideal: Ideal,
    pub reduced_evidence: ReducednessVerdict,
    pub status: CertificateStatus,
    pub lower_bounds: Vec<LowerBoundEvidence>,
}

impl WeightCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Degree bound for the nilpotent witness search.
    pub witness_bound: u32,
    /// Largest degree of an integral-dependence relation tried.
    pub dependence_degree: u32,
    pub estimate: EstimateOptions,
    /// Component ideals offered as evidence of reducedness.
    pub candidates: Vec<Ideal>,
    pub witnesses: Vec<PowerWitness>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            witness_bound: 2,
            dependence_degree: 4,
            estimate: EstimateOptions::default(),
            candidates: Vec::new(),
            witnesses: Vec::new(),
        }
    }
}

/// Whether `z/b^level` satisfies a monic equation of degree at most `max_degree`
/// with `i`-th coefficient in `<b^(level*i)>`; returns the least such degree.
pub fn integral_dependence_degree(
    p: &RingPresentation,
    b: &Polynomial,
    z: &Polynomial,
    level: u32,
    max_degree: u32,
    budget: Budget,
) -> Result<Option<u32>> {
    for m in 1..=max_degree {
        let gens = (1..=m).map(|i| &b.pow(level * i) * &z.pow(m - i));
        let ideal = p.defining.with_generators(gens);
        if ideal.contains(&z.pow(m), budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn lower_bound_evidence(
    f: &Filtration<'_>,
    b: usize,
    w: &WeightVector,
    v: usize,
    options: &CertifyOptions,
) -> Result<Option<LowerBoundEvidence>> {
    let p = f.presentation;
    let n = p.nvars();
    let target = w.weight(v);
    if target.is_zero() {
        return Ok(Some(LowerBoundEvidence::ZeroWeight { var: v }));
    }
    let bv = Polynomial::var(n, b);
    let x = Polynomial::var(n, v);
    for s in options.witnesses.iter().filter(|s| s.var == v) {
        let bound = Rational::new(s.k.into(), s.n.max(1).into());
        let rel = &x.pow(s.n) - &(&s.cofactor * &bv.pow(s.k));
        if s.n > 0 && &bound >= target && p.defining.contains(&rel, f.budget)? {
            return Ok(Some(LowerBoundEvidence::Supplied { var: v, n: s.n, k: s.k }));
        }
    }
    let (Some(power), Some(level)) = (target.denom().to_u32(), target.numer().to_u32()) else {
        return Err(Error::Invalid("weight too large".into()));
    };
    if let Some(degree) = integral_dependence_degree(p, &bv, &x.pow(power), level, options.dependence_degree, f.budget)?
    {
        return Ok(Some(LowerBoundEvidence::IntegralDependence { var: v, power, level, degree }));
    }
    let est = f.barq_estimate(&x, &options.estimate)?;
    if est.lower_bound.at_least(target) {
        let bound = match est.lower_bound {
            super::Bound::Finite(r) => r,
            super::Bound::Infinite => target.clone(),
        };
        return Ok(Some(LowerBoundEvidence::Estimate { var: v, bound }));
    }
    Ok(None)
}

/// Test whether `w` computes the balanced filtration.
///
/// Every positive weight must first be confirmed as a lower bound for `q̄` of
/// its variable. The weighted initial ideal is then formed and tested for
/// nilpotents: reduced means certified, a nilpotent witness means refuted.
pub fn certify_weights(
    p: &RingPresentation,
    w: &WeightVector,
    options: &CertifyOptions,
    budget: Budget,
) -> Result<WeightCertificate> {
    let b = p.b_var().ok_or_else(|| Error::Invalid("b must be a variable of the presentation".into()))?;
    let n = p.nvars();
    if w.len() != n {
        return Err(Error::Invalid(format!("{} weights for {} variables", w.len(), n)));
    }
    if !w.weight(b).is_one() {
        return Err(Error::Invalid("the weight of b must be 1".into()));
    }
    debug_assert!(w.weights().iter().all(|x| !x.is_negative()));
    let f = Filtration::new(p, budget);
    let mut lower_bounds = Vec::new();
    let mut missing = Vec::new();
    for v in (0..n).filter(|&v| v != b) {
        match lower_bound_evidence(&f, b, w, v, options)? {
            Some(e) => lower_bounds.push(e),
            None => missing.push(p.names()[v].clone()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::LowerBoundsUnverified(missing));
    }
    let order = TermOrder::Weighted(w.clone());
    let gb = groebner_basis(&p.defining, &order, budget)?;
    let valid = is_groebner(gb.elements(), &order, budget)?;
    let init = initial_ideal(&p.defining, w, budget)?;
    let verdict = is_reduced(&init, options.witness_bound, &options.candidates, budget)?;
    let status = match (&verdict, valid) {
        (ReducednessVerdict::Reduced(_), true) => CertificateStatus::Certified,
        (ReducednessVerdict::NotReduced { witness, exponent }, _) => {
            CertificateStatus::Refuted { witness: witness.clone(), exponent: *exponent }
        }
        _ => CertificateStatus::Inconclusive,
    };
    Ok(WeightCertificate {
        weights: w.clone(),
        b,
        gb_evidence: gb,
        initial_ideal: init,
        reduced_evidence: verdict,
        status,
        lower_bounds,
    })
}

/// Monomials of positive-weight variables with scaled weight at least `s`, minimal under division.
fn minimal_monomials_of_weight(w: &WeightVector, s: i64) -> Vec<Monomial> {
    let n = w.len();
    let pos: Vec<usize> = (0..n).filter(|&v| w.scaled()[v] > 0).collect();
    let mut out = Vec::new();
    fn go(pos: &[usize], idx: usize, cur: &mut Vec<u32>, acc: i64, s: i64, w: &WeightVector, out: &mut Vec<Monomial>) {
        if acc >= s {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        if idx == pos.len() {
            return;
        }
        let v = pos[idx];
        let wv = w.scaled()[v];
        let mut e = 0;
        loop {
            cur[v] = e;
            let a = acc + wv * e as i64;
            go(pos, idx + 1, cur, a, s, w, out);
            if a >= s {
                break;
            }
            e += 1;
        }
        cur[v] = 0;
    }
    go(&pos, 0, &mut vec![0; n], 0, s, w, &mut out);
    let all = out.clone();
    out.retain(|m| !all.iter().any(|o| o != m && o.divides(m)));
    out
}

/// The filtration induced by `w`: the largest `s` with `r ∈ I_R + <monomials of weight ≥ s>`,
/// searched in steps of `1/N` up to `cap`. `None` when `r = 0` in `R` or `r` reaches the cap.
pub fn filtration_value(
    p: &RingPresentation,
    w: &WeightVector,
    r: &Polynomial,
    cap: &Rational,
    budget: Budget,
) -> Result<Option<Rational>> {
    if p.is_zero(r, budget)? {
        return Ok(None);
    }
    let max = w.scale_degree(cap).ok_or_else(|| Error::Invalid("cap not in the weight lattice".into()))?;
    let mut best = 0;
    for s in 1..=max {
        let gens = minimal_monomials_of_weight(w, s).into_iter().map(Polynomial::monomial);
        if p.defining.with_generators(gens).contains(r, budget)? {
            best = s;
        } else {
            return Ok(Some(w.unscale(best)));
        }
    }
    Ok(None)
}
