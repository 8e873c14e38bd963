//! Command dispatch and report rendering.
//!
//! The defining relations of `R` are the ideal named `R` (the zero ideal when
//! absent). The filtration element is the declared `element`; without one, the
//! ideal named `I` is used as the filtration ideal.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::Error;
use crate::filtration::{
    certify_weights, Bound, CertificateStatus, CertifyOptions, EstimateOptions, Filtration, FiltrationIdeal,
    OrderValue, RingPresentation, WeightCertificate,
};
use crate::graded::{
    component_report, default_window, gr_presentation, graded_density, hilbert_function, is_reduced, limit_ideal,
    ogr_presentation, GradedPresentation, Grading, ReducednessVerdict,
};
use crate::groebner::{Budget, Ideal};
use crate::icogr::{
    component_count_degree0, compute_icogr, find_relation, icogr_presentation_named, verify_periodicity,
    ICogrPresentation, PeriodicityWindow, SearchBounds,
};
use crate::poly::{format_rational, int, Polynomial, Rational, VarTable, WeightVector};
use crate::toric::{ogr_complex, LatticePolytope, ToricBarq};

use super::parser::{parse_polynomial, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Q,
    Barq,
    Gr,
    Ogr,
    Certify,
    Hilbert,
    Density,
    Components,
    Icogr,
    Periodicity,
    Toric,
    Limit,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Q,
        Command::Barq,
        Command::Gr,
        Command::Ogr,
        Command::Certify,
        Command::Hilbert,
        Command::Density,
        Command::Components,
        Command::Icogr,
        Command::Periodicity,
        Command::Toric,
        Command::Limit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Q => "q",
            Command::Barq => "barq",
            Command::Gr => "gr",
            Command::Ogr => "ogr",
            Command::Certify => "certify",
            Command::Hilbert => "hilbert",
            Command::Density => "density",
            Command::Components => "components",
            Command::Icogr => "icogr",
            Command::Periodicity => "periodicity",
            Command::Toric => "toric",
            Command::Limit => "limit",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Which graded ring a command looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// `R` itself, graded by the declared grading.
    R,
    Gr,
    Ogr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub cap: u32,
    pub degree_bound: Rational,
    pub power_bound: u32,
    pub relation_degree: u32,
    pub window: Option<(Rational, Rational)>,
    pub denominator_bound: u32,
    pub budget: Budget,
    pub machine: bool,
    /// Elements for `q` and `barq`; every non-`b` variable when empty.
    pub of: Vec<String>,
    pub target: Option<Target>,
    pub grading: Grading,
    /// Largest degree in Hilbert tables and toric dilations.
    pub degree: Option<Rational>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: 16,
            degree_bound: int(2),
            power_bound: 4,
            relation_degree: 4,
            window: None,
            denominator_bound: 6,
            budget: Budget::default(),
            machine: false,
            of: Vec::new(),
            target: None,
            grading: Grading::Filtration,
            degree: None,
        }
    }
}

impl Options {
    fn search_bounds(&self) -> SearchBounds {
        SearchBounds {
            degree_bound: self.degree_bound.clone(),
            power_bound: self.power_bound,
            relation_degree: self.relation_degree,
            ..SearchBounds::default()
        }
    }

    fn estimate(&self) -> EstimateOptions {
        EstimateOptions { cap: self.cap, denominator_bound: self.denominator_bound, ..EstimateOptions::default() }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const REFUTED: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const USAGE: i32 = 3;
}

/// The outcome of one command: human lines, a key-value tree and an exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub fields: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            lines: Vec::new(),
            fields: Vec::new(),
            notes: Vec::new(),
            exit_code: exit::OK,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.fields.push((key.into(), value.into()));
    }

    /// A field that is also shown as `key: value` in the human form.
    fn both(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        self.line(format!("{key}: {value}"));
        self.field(key, value);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn fail(&mut self, code: i32) {
        self.exit_code = self.exit_code.max(code);
    }

    pub fn error(command: &str, code: i32, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        let message = message.into();
        r.line(format!("error: {message}"));
        r.field("error", message);
        r.exit_code = code;
        r
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            out.push_str(&format!("command = {}\n", self.command));
            for (k, v) in &self.fields {
                out.push_str(&format!("{k} = {v}\n"));
            }
            for (i, n) in self.notes.iter().enumerate() {
                out.push_str(&format!("note.{i} = {n}\n"));
            }
            out.push_str(&format!("exit = {}\n", self.exit_code));
        } else {
            out.push_str(&format!("balcone {}\n", self.command));
            for l in &self.lines {
                out.push_str(&format!("  {l}\n"));
            }
            for n in &self.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        out
    }
}

/// Exit status for a module error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_)
        | Error::NotStabilized(_)
        | Error::LowerBoundsUnverified(_)
        | Error::InfiniteDimensional { .. } => exit::INCONCLUSIVE,
        Error::Uncertified => exit::REFUTED,
        Error::Poly(_) | Error::Invalid(_) | Error::OutsidePolytope | Error::DegeneratePolytope(_) => exit::USAGE,
    }
}

struct Usage(String);

enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

type Step<T> = std::result::Result<T, Failure>;

pub fn run_command(s: &Session, cmd: Command, opts: &Options) -> Report {
    let mut r = Report::new(cmd.name());
    let outcome = match cmd {
        Command::Q => cmd_q(s, opts, &mut r),
        Command::Barq => cmd_barq(s, opts, &mut r),
        Command::Gr => cmd_gr(s, opts, &mut r),
        Command::Ogr => cmd_ogr(s, opts, &mut r),
        Command::Certify => cmd_certify(s, opts, &mut r),
        Command::Hilbert => cmd_hilbert(s, opts, &mut r),
        Command::Density => cmd_density(s, opts, &mut r),
        Command::Components => cmd_components(s, opts, &mut r),
        Command::Icogr => cmd_icogr(s, opts, &mut r),
        Command::Periodicity => cmd_periodicity(s, opts, &mut r),
        Command::Toric => cmd_toric(s, opts, &mut r),
        Command::Limit => cmd_limit(s, opts, &mut r),
    };
    match outcome {
        Ok(()) => r,
        Err(Failure::Usage(m)) => {
            let mut e = Report::error(cmd.name(), exit::USAGE, m);
            e.lines.splice(0..0, r.lines);
            e.fields.splice(0..0, r.fields);
            e
        }
        Err(Failure::Module(err)) => {
            let mut e = Report::error(cmd.name(), error_code(&err), err.to_string());
            e.lines.splice(0..0, r.lines);
            e.fields.splice(0..0, r.fields);
            e.notes = r.notes;
            e
        }
    }
}

fn ring(s: &Session) -> Step<&VarTable> {
    s.ring.as_ref().ok_or_else(|| Usage("no ring declared".into()).into())
}

/// `R` as declared, with `b` possibly composite.
pub fn session_presentation(s: &Session, budget: Budget) -> Result<RingPresentation, Error> {
    let vars = s.ring.clone().ok_or_else(|| Error::Invalid("no ring declared".into()))?;
    let n = vars.len();
    let defining = Ideal::new(n, s.ideal("R").map(<[_]>::to_vec).unwrap_or_default());
    let ideal = match (&s.element, s.ideal("I")) {
        (Some((_, b)), _) => FiltrationIdeal::Principal(b.clone()),
        (None, Some([b])) => FiltrationIdeal::Principal(b.clone()),
        (None, Some(gens)) => FiltrationIdeal::Generators(gens.to_vec()),
        (None, None) => return Err(Error::Invalid("no element and no ideal `I` declared".into())),
    };
    let grading = match &s.grading {
        Some(table) => Some(WeightVector::new(
            vars.names()
                .iter()
                .map(|v| {
                    table
                        .iter()
                        .find(|(n, _)| n == v)
                        .map(|(_, d)| d.clone())
                        .ok_or_else(|| Error::Invalid(format!("grading has no degree for `{v}`")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )),
        None => None,
    };
    RingPresentation::with_ideal(vars, defining, ideal, grading, budget)
}

fn presentation(s: &Session, opts: &Options, r: &mut Report) -> Step<RingPresentation> {
    let base = session_presentation(s, opts.budget)?;
    let p = base.with_element_variable(opts.budget)?;
    if p.nvars() > base.nvars() {
        let t = &p.names()[p.nvars() - 1];
        r.note(format!("b is not a variable: adjoined {t} with relation {t} - ({})", base.display(base.b().unwrap())));
    }
    if let (Some((_, b)), Some(i)) = (&s.element, s.ideal("I")) {
        let lhs = Ideal::new(base.nvars(), vec![b.clone()]).sum(&base.defining);
        let rhs = Ideal::new(base.nvars(), i.to_vec()).sum(&base.defining);
        if !lhs.equals(&rhs, opts.budget)? {
            r.note("the declared ideal I differs from <b>; b is used");
        }
    }
    Ok(p)
}

/// Declared weights, with the adjoined `b` variable at weight 1.
fn weights(s: &Session, p: &RingPresentation) -> Step<WeightVector> {
    let table = s.weights.as_ref().ok_or_else(|| Usage("no weights declared".into()))?;
    let b = p.b_var().expect("b is a variable");
    let mut w = Vec::new();
    for (i, v) in p.names().iter().enumerate() {
        match table.iter().find(|(n, _)| n == v) {
            Some((_, x)) => w.push(x.clone()),
            None if i == b => w.push(int(1)),
            None => return Err(Usage(format!("no weight for `{v}`")).into()),
        }
    }
    Ok(WeightVector::new(w))
}

fn lift(f: &Polynomial, nvars: usize) -> Polynomial {
    f.extend_vars(nvars - f.nvars())
}

fn candidates(s: &Session, name: &str, nvars: usize) -> Vec<Ideal> {
    let set = s.candidate_set(name).or_else(|| s.candidates.first().map(|(_, c)| c.as_slice()));
    set.unwrap_or_default()
        .iter()
        .map(|gens| Ideal::new(nvars, gens.iter().map(|g| lift(g, nvars)).collect()))
        .collect()
}

fn show_ideal(ideal: &Ideal, names: &[String], budget: Budget) -> Step<String> {
    let c = ideal.canonical(budget)?;
    let gens: Vec<String> = c.generators().iter().map(|g| g.display(names).to_string()).collect();
    Ok(format!("<{}>", gens.join(", ")))
}

fn show_weights(w: &WeightVector, names: &[String]) -> String {
    names.iter().zip(w.weights()).map(|(n, x)| format!("{n}={}", format_rational(x))).collect::<Vec<_>>().join(" ")
}

fn elements(s: &Session, opts: &Options, p: &RingPresentation) -> Step<Vec<(String, Polynomial)>> {
    let vars = ring(s)?;
    if opts.of.is_empty() {
        let b = p.b_var();
        return Ok(vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != b)
            .map(|(i, n)| (n.clone(), Polynomial::var(vars.len(), i)))
            .collect());
    }
    opts.of
        .iter()
        .map(|t| {
            parse_polynomial(vars, t)
                .map(|f| (f.display(vars.names()).to_string(), f))
                .map_err(|e| Usage(e.to_string()).into())
        })
        .collect()
}

fn cmd_q(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let p = session_presentation(s, opts.budget)?;
    let f = Filtration::new(&p, opts.budget);
    for w in f.warnings() {
        r.note(w);
    }
    for (name, e) in elements(s, opts, &p)? {
        let v = f.adic_order(&e, opts.cap)?;
        r.both(&format!("q({name})"), v.to_string());
        if matches!(v, OrderValue::ExceedsCap(_)) {
            r.fail(exit::INCONCLUSIVE);
        }
    }
    r.note("q(r) is the largest n with r in I_R + I^n, decided by ideal membership");
    Ok(())
}

fn cmd_barq(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let p = session_presentation(s, opts.budget)?;
    let f = Filtration::new(&p, opts.budget);
    for w in f.warnings() {
        r.note(w);
    }
    for (name, e) in elements(s, opts, &p)? {
        let est = f.barq_estimate(&e, &opts.estimate())?;
        let key = format!("barq({name})");
        let ratios: Vec<String> = est
            .entries
            .iter()
            .map(|e| {
                format!("{}:{}", e.n, e.ratio.as_ref().map(format_rational).unwrap_or_else(|| e.order.to_string()))
            })
            .collect();
        r.line(format!("{key} >= {} ({})", est.lower_bound, est.status));
        r.line(format!("  ratios {}", ratios.join(" ")));
        r.field(format!("{key}.lower_bound"), est.lower_bound.to_string());
        r.field(format!("{key}.status"), est.status.to_string());
        r.field(format!("{key}.ratios"), ratios.join(" "));
        if let Bound::Finite(_) = est.lower_bound {
            r.note(format!("{key}: Samuel ratios give a lower bound only"));
        }
    }
    Ok(())
}

fn show_verdict(v: &ReducednessVerdict, names: &[String]) -> String {
    match v {
        ReducednessVerdict::NotReduced { witness, exponent } => {
            format!("not reduced (witness {}, exponent {exponent})", witness.display(names))
        }
        v => v.to_string(),
    }
}

fn describe_graded(g: &GradedPresentation, r: &mut Report, budget: Budget) -> Step<()> {
    r.both("variables", show_weights(&g.weights, g.names()));
    r.both("b", g.names()[g.b].clone());
    r.both("ideal", show_ideal(&g.ideal, g.names(), budget)?);
    Ok(())
}

fn cmd_gr(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let p = presentation(s, opts, r)?;
    let g = gr_presentation(&p, opts.budget)?;
    describe_graded(&g, r, opts.budget)?;
    let v = is_reduced(&g.ideal, 2, &candidates(s, "gr", g.nvars()), opts.budget)?;
    r.both("reduced", show_verdict(&v, g.names()));
    if let ReducednessVerdict::NotReduced { .. } = v {
        r.fail(exit::REFUTED);
    }
    Ok(())
}

fn certificate(s: &Session, opts: &Options, p: &RingPresentation) -> Step<WeightCertificate> {
    let w = weights(s, p)?;
    let options = CertifyOptions {
        estimate: opts.estimate(),
        candidates: candidates(s, "ogr", p.nvars()),
        ..CertifyOptions::default()
    };
    Ok(certify_weights(p, &w, &options, opts.budget)?)
}

fn describe_certificate(cert: &WeightCertificate, p: &RingPresentation, r: &mut Report, budget: Budget) -> Step<()> {
    let names = p.names();
    r.both("weights", show_weights(&cert.weights, names));
    r.both("status", cert.status.to_string());
    r.both("initial_ideal", show_ideal(&cert.initial_ideal, names, budget)?);
    r.both("basis_size", cert.gb_evidence.elements().len().to_string());
    r.both("reducedness", show_verdict(&cert.reduced_evidence, names));
    for lb in &cert.lower_bounds {
        r.both(&format!("lower_bound.{}", names[lb.var()]), lb.describe());
    }
    match &cert.status {
        CertificateStatus::Certified => {}
        CertificateStatus::Refuted { witness, exponent } => {
            r.both("witness", format!("{} (exponent {exponent})", witness.display(names)));
            r.fail(exit::REFUTED);
        }
        CertificateStatus::Inconclusive => r.fail(exit::INCONCLUSIVE),
    }
    Ok(())
}

fn cmd_certify(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let p = presentation(s, opts, r)?;
    let cert = certificate(s, opts, &p)?;
    describe_certificate(&cert, &p, r, opts.budget)
}

/// The certified balanced graded ring, or `None` after reporting why not.
fn ogr(s: &Session, opts: &Options, r: &mut Report) -> Step<Option<GradedPresentation>> {
    let p = presentation(s, opts, r)?;
    let cert = certificate(s, opts, &p)?;
    if !cert.is_certified() {
        describe_certificate(&cert, &p, r, opts.budget)?;
        return Ok(None);
    }
    Ok(Some(ogr_presentation(&p, &cert, opts.budget)?))
}

fn cmd_ogr(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    if let Some(g) = ogr(s, opts, r)? {
        describe_graded(&g, r, opts.budget)?;
    }
    Ok(())
}

fn target(s: &Session, opts: &Options, r: &mut Report) -> Step<Option<GradedPresentation>> {
    let t = opts.target.unwrap_or(if s.weights.is_some() { Target::Ogr } else { Target::Gr });
    r.field("target", format!("{t:?}").to_lowercase());
    match t {
        Target::Gr => {
            let p = presentation(s, opts, r)?;
            Ok(Some(gr_presentation(&p, opts.budget)?))
        }
        Target::Ogr => ogr(s, opts, r),
        Target::R => {
            let p = presentation(s, opts, r)?;
            let w = p.grading.clone().ok_or_else(|| Usage("target R needs a grading".into()))?;
            let b = p.b_var().expect("b is a variable");
            Ok(Some(GradedPresentation::new(p.vars.clone(), w.clone(), p.defining.clone(), Some(w), b, opts.budget)?))
        }
    }
}

fn cmd_hilbert(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let Some(g) = target(s, opts, r)? else { return Ok(()) };
    let max = opts.degree.clone().unwrap_or_else(|| int(4));
    let h = hilbert_function(&g, opts.grading, &max, opts.budget)?;
    r.both("grading", opts.grading.to_string());
    for (d, n) in &h.entries {
        r.both(&format!("dim.{}", format_rational(d)), n.to_string());
    }
    Ok(())
}

fn window(g: &GradedPresentation, opts: &Options, r: &mut Report) -> (Rational, Rational) {
    let w = opts.window.clone().unwrap_or_else(|| default_window(g));
    r.both("window", format!("{} {}", format_rational(&w.0), format_rational(&w.1)));
    w
}

fn cmd_density(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let Some(g) = target(s, opts, r)? else { return Ok(()) };
    let w = window(&g, opts, r);
    let d = graded_density(&g, Some(w), opts.budget)?;
    r.both("density", format_rational(&d));
    Ok(())
}

fn cmd_components(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let Some(g) = target(s, opts, r)? else { return Ok(()) };
    let name = if opts.target == Some(Target::Gr) || s.weights.is_none() { "gr" } else { "ogr" };
    let comps = candidates(s, name, g.nvars());
    if comps.is_empty() {
        return Err(Usage("no candidate components declared".into()).into());
    }
    let w = window(&g, opts, r);
    let rep = component_report(&g, &comps, Some(w), opts.budget)?;
    for (i, (c, d)) in rep.components.iter().enumerate() {
        let gens: Vec<String> = c.generators().iter().map(|f| f.display(g.names()).to_string()).collect();
        r.line(format!("component <{}>: density {}", gens.join(", "), format_rational(d)));
        r.field(format!("component.{i}.ideal"), format!("<{}>", gens.join(", ")));
        r.field(format!("component.{i}.density"), format_rational(d));
    }
    let parts: Vec<String> = rep.components.iter().map(|(_, d)| format_rational(d)).collect();
    r.line(format!("total {} = {}", format_rational(&rep.total_density), parts.join("+")));
    r.field("total", format_rational(&rep.total_density));
    r.both("intersection_verified", rep.verified.to_string());
    r.both("additive", rep.additive.to_string());
    if !rep.verified || !rep.additive {
        r.fail(exit::REFUTED);
    }
    Ok(())
}

fn icogr(s: &Session, opts: &Options, r: &mut Report) -> Step<Option<ICogrPresentation>> {
    let Some(g) = ogr(s, opts, r)? else { return Ok(None) };
    let bounds = opts.search_bounds();
    let p = if s.fractions.is_empty() {
        compute_icogr(&g, &bounds, opts.budget)?
    } else {
        let mut named = Vec::new();
        for f in &s.fractions {
            let num = lift(&f.numerator, g.nvars());
            match find_relation(&g, &num, f.power, &bounds, opts.budget)? {
                Some(rel) => named.push((f.name.clone(), rel)),
                None => {
                    r.both("unresolved", f.name.clone());
                    r.note(format!("no integral relation for {} within the search bounds", f.name));
                    r.fail(exit::INCONCLUSIVE);
                    return Ok(None);
                }
            }
        }
        icogr_presentation_named(&g, named, opts.budget)?
    };
    Ok(Some(p))
}

fn cmd_icogr(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let Some(p) = icogr(s, opts, r)? else { return Ok(()) };
    for (i, (name, f)) in p.adjoined.iter().enumerate() {
        let shown = f.display(p.base.names(), p.base.b, name);
        r.line(format!("fraction {shown}"));
        r.field(format!("fraction.{i}"), shown);
    }
    describe_graded(&p.ring, r, opts.budget)?;
    match component_count_degree0(&p, opts.budget) {
        Ok(n) => r.both("degree0_points", n.to_string()),
        Err(e) if e.is_budget() => r.both("degree0_points", "unknown (budget)"),
        Err(e) => r.both("degree0_points", format!("unknown ({e})")),
    }
    Ok(())
}

fn cmd_periodicity(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let Some(p) = icogr(s, opts, r)? else { return Ok(()) };
    let mut window = PeriodicityWindow::default();
    if let Some((_, hi)) = &opts.window {
        window.max_degree = hi.clone();
    }
    if let Some(d) = &opts.degree {
        window.max_original = d.clone();
    }
    let rep = verify_periodicity(&p, &window, opts.budget)?;
    for l in rep.to_string().lines() {
        r.line(l.to_string());
    }
    for e in &rep.entries {
        let key = format!("degree.{}", format_rational(&e.degree));
        let dims = |v: &[u64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        r.field(format!("{key}.ogr"), dims(&e.ogr_dims));
        r.field(format!("{key}.icogr"), dims(&e.icogr_dims));
        r.field(format!("{key}.b_bijective"), e.b_bijective.to_string());
        r.field(format!("{key}.inclusion_iso"), e.inclusion_iso.to_string());
    }
    r.both("periodic", rep.periodic().to_string());
    r.both("sandwich", rep.sandwich().to_string());
    r.both("iso_from", rep.iso_from().map(|d| format_rational(&d)).unwrap_or_else(|| "none".into()));
    if !rep.periodic() {
        if let Some(d) = rep.first_failure() {
            r.both("first_failure", format_rational(&d));
        }
        r.fail(exit::REFUTED);
    }
    Ok(())
}

fn cmd_toric(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let pts = s.polytope.clone().ok_or_else(|| Usage("no polytope declared".into()))?;
    let bp = s.basepoint.clone().ok_or_else(|| Usage("no basepoint declared".into()))?;
    let poly = LatticePolytope::new(pts)?;
    r.both("dim", poly.dim().to_string());
    for (i, f) in poly.facets.iter().enumerate() {
        let n: Vec<String> = f.normal.iter().map(|x| x.to_string()).collect();
        r.both(&format!("facet.{i}"), format!("({}) . x >= {}", n.join(", "), f.offset));
    }
    let t = ToricBarq::new(poly, bp)?;
    let far: Vec<String> = t.relevant_facets.iter().map(|(i, _)| i.to_string()).collect();
    r.both("far_facets", far.join(" "));
    let k_max = match &opts.degree {
        Some(d) if d.is_integer() && *d > Rational::zero() => {
            d.to_integer().try_into().map_err(|_| Usage("degree too large".into()))?
        }
        Some(_) => return Err(Usage("toric dilations need a positive integer degree".into()).into()),
        None => 1i64,
    };
    for k in 1..=k_max {
        for o in t.polytope.lattice_points(k) {
            let pt: Vec<String> = o.iter().map(|x| x.to_string()).collect();
            r.both(&format!("value.{k}.({})", pt.join(",")), format_rational(&t.value(&o, k)?));
        }
        for (i, c) in ogr_complex(&t, k)?.iter().enumerate() {
            let pts: Vec<String> = c
                .points
                .iter()
                .map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            r.both(&format!("component.{k}.{i}"), format!("facet {}: {}", c.facet, pts.join(" ")));
        }
    }
    Ok(())
}

fn cmd_limit(s: &Session, opts: &Options, r: &mut Report) -> Step<()> {
    let p = presentation(s, opts, r)?;
    let w = weights(s, &p)?;
    let lim = limit_ideal(&p.defining, &w, opts.budget)?;
    r.both("weights", show_weights(&w, p.names()));
    r.both("limit", show_ideal(&lim, p.names(), opts.budget)?);
    Ok(())
}
