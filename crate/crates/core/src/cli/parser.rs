//! The session input language.
//!
//! ```text
//! file       := stmt+
//! stmt       := ring | ideal | element | weights | grading | candidates
//!             | fractions | polytope | basepoint
//! ring       := "ring" "Q" "[" ident ("," ident)* "]" ";"
//! ideal      := "ideal" ident "=" poly ("," poly)* ";"
//! element    := "element" ident "=" poly ";"
//! weights    := "weights" (ident "=" rational ","?)+ ";"
//! grading    := "grading" (ident "=" rational ","?)+ ";"
//! candidates := "candidates" ident "=" "(" poly ("," poly)* ")" ("," "(" ... ")")* ";"
//! fractions  := "fractions" ident "=" poly "/" ident ("^" int)? ("," ...)* ";"
//! polytope   := "polytope" "=" point ("," point)* ";"
//! basepoint  := "basepoint" "=" point ";"
//! point      := "(" int ("," int)* ")"
//! poly       := ("+"|"-")? term (("+"|"-") term)*
//! term       := factor ("*" factor)*
//! factor     := atom ("^" int)?
//! atom       := int | ident | "(" poly ")"
//! rational   := "-"? int ("/" int)?
//! ```
//!
//! Comments run from `#` to the end of the line.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::poly::{format_rational, Polynomial, Rational, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: found {found}, expected {}", expected.join(" or "))]
    Syntax { line: usize, col: usize, found: String, expected: Vec<String> },
    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("{line}:{col}: non-integer exponent")]
    NonIntegerExponent { line: usize, col: usize },
    #[error("{line}:{col}: {message}")]
    Semantic { line: usize, col: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::UnknownIdentifier { line, col, .. }
            | ParseError::NonIntegerExponent { line, col }
            | ParseError::Semantic { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), line: start_line, col: start_col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token { tok: Tok::Ident(word), line: start_line, col: start_col });
            continue;
        }
        if "+-*^/()[],;=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, col });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError::Syntax { line, col, found: format!("`{c}`"), expected: vec!["a token".into()] });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A declared fraction `numerator / element^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionDecl {
    pub name: String,
    pub numerator: Polynomial,
    pub power: u32,
}

/// Everything declared in one input file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Session {
    pub ring: Option<VarTable>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub element: Option<(String, Polynomial)>,
    pub weights: Option<Vec<(String, Rational)>>,
    pub grading: Option<Vec<(String, Rational)>>,
    pub candidates: Vec<(String, Vec<Vec<Polynomial>>)>,
    pub fractions: Vec<FractionDecl>,
    pub polytope: Option<Vec<Vec<i64>>>,
    pub basepoint: Option<Vec<i64>>,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }

    pub fn candidate_set(&self, name: &str) -> Option<&[Vec<Polynomial>]> {
        self.candidates.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_slice())
    }

    /// Render as input text that parses back to an identical session.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let Some(ring) = &self.ring else { return out };
        let names = ring.names();
        out.push_str(&format!("ring Q[{}];\n", names.join(", ")));
        let p = |f: &Polynomial| f.display(names).to_string();
        for (name, gens) in &self.ideals {
            let g: Vec<String> = gens.iter().map(p).collect();
            out.push_str(&format!("ideal {name} = {};\n", g.join(", ")));
        }
        if let Some((name, e)) = &self.element {
            out.push_str(&format!("element {name} = {};\n", p(e)));
        }
        for (kw, table) in [("weights", &self.weights), ("grading", &self.grading)] {
            if let Some(t) = table {
                let parts: Vec<String> = t.iter().map(|(v, r)| format!("{v} = {}", format_rational(r))).collect();
                out.push_str(&format!("{kw} {};\n", parts.join(", ")));
            }
        }
        for (name, comps) in &self.candidates {
            let parts: Vec<String> =
                comps.iter().map(|c| format!("({})", c.iter().map(p).collect::<Vec<_>>().join(", "))).collect();
            out.push_str(&format!("candidates {name} = {};\n", parts.join(", ")));
        }
        if !self.fractions.is_empty() {
            let elem = self.element.as_ref().map(|(n, _)| n.as_str()).unwrap_or("b");
            let parts: Vec<String> = self
                .fractions
                .iter()
                .map(|f| format!("{} = ({}) / {elem}^{}", f.name, p(&f.numerator), f.power))
                .collect();
            out.push_str(&format!("fractions {};\n", parts.join(", ")));
        }
        let point = |v: &Vec<i64>| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        if let Some(poly) = &self.polytope {
            out.push_str(&format!("polytope = {};\n", poly.iter().map(point).collect::<Vec<_>>().join(", ")));
        }
        if let Some(bp) = &self.basepoint {
            out.push_str(&format!("basepoint = {};\n", point(bp)));
        }
        out
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: Option<VarTable>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn semantic(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Semantic { line: t.line, col: t.col, message: message.into() }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.error(&[&format!("`{kw}`")])),
        }
    }

    fn expect_int(&mut self) -> Result<BigInt, ParseError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let n = self.expect_int()?;
        let v = n.to_i64().ok_or_else(|| self.semantic(&t, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let num = self.expect_int()?;
        let den = if self.is_sym('/') {
            self.next();
            let t = self.peek().clone();
            let d = self.expect_int()?;
            if d.is_zero() {
                return Err(self.semantic(&t, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    fn ring(&self, t: &Token) -> Result<&VarTable, ParseError> {
        self.vars.as_ref().ok_or_else(|| self.semantic(t, "no ring declared before this statement"))
    }

    fn poly(&mut self, in_fraction: bool) -> Result<Polynomial, ParseError> {
        let n = self.vars.as_ref().expect("ring checked by caller").len();
        let mut acc = Polynomial::zero(n);
        let mut sign = 1;
        if self.is_sym('-') {
            self.next();
            sign = -1;
        } else if self.is_sym('+') {
            self.next();
        }
        loop {
            let t = self.term(in_fraction)?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            if self.is_sym('+') {
                self.next();
                sign = 1;
            } else if self.is_sym('-') {
                self.next();
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, in_fraction: bool) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor(in_fraction)?;
        while self.is_sym('*') {
            self.next();
            acc = &acc * &self.factor(in_fraction)?;
        }
        Ok(acc)
    }

    fn factor(&mut self, in_fraction: bool) -> Result<Polynomial, ParseError> {
        let base = self.atom(in_fraction)?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.peek().clone();
        let e = match &t.tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                n
            }
            Tok::Sym('(') | Tok::Sym('-') | Tok::Ident(_) => {
                return Err(ParseError::NonIntegerExponent { line: t.line, col: t.col })
            }
            _ => return Err(self.error(&["integer exponent"])),
        };
        if !in_fraction && self.is_sym('/') {
            return Err(ParseError::NonIntegerExponent { line: t.line, col: t.col });
        }
        let e = e.to_u32().ok_or_else(|| self.semantic(&t, "exponent out of range"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self, in_fraction: bool) -> Result<Polynomial, ParseError> {
        let n = self.vars.as_ref().expect("ring").len();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(v) => {
                let v = v.clone();
                self.next();
                Ok(Polynomial::constant(n, Rational::from_integer(v)))
            }
            Tok::Ident(name) => {
                let vars = self.vars.as_ref().expect("ring");
                match vars.index(name) {
                    Some(_) => {
                        let p = vars.var(name);
                        self.next();
                        Ok(p)
                    }
                    None => Err(ParseError::UnknownIdentifier { line: t.line, col: t.col, name: name.clone() }),
                }
            }
            Tok::Sym('(') => {
                self.next();
                let p = self.poly(in_fraction)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => Err(self.error(&["integer", "identifier", "`(`"])),
        }
    }

    fn point(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect_sym('(')?;
        let mut v = vec![self.signed_int()?];
        while self.is_sym(',') {
            self.next();
            v.push(self.signed_int()?);
        }
        self.expect_sym(')')?;
        Ok(v)
    }

    fn assignments(&mut self, kw: &Token) -> Result<Vec<(String, Rational)>, ParseError> {
        let vars = self.ring(kw)?.clone();
        let mut out = Vec::new();
        loop {
            let (name, t) = self.expect_ident()?;
            if vars.index(&name).is_none() {
                return Err(ParseError::UnknownIdentifier { line: t.line, col: t.col, name });
            }
            self.expect_sym('=')?;
            out.push((name, self.rational()?));
            if self.is_sym(',') {
                self.next();
            }
            if self.is_sym(';') {
                self.next();
                return Ok(out);
            }
            if !matches!(self.peek().tok, Tok::Ident(_)) {
                return Err(self.error(&["identifier", "`;`"]));
            }
        }
    }

    fn statement(&mut self, s: &mut Session) -> Result<(), ParseError> {
        let kw = self.peek().clone();
        let Tok::Ident(word) = &kw.tok else {
            return Err(self.error(&["statement keyword"]));
        };
        match word.as_str() {
            "ring" => {
                self.next();
                if self.vars.is_some() {
                    return Err(self.semantic(&kw, "ring declared twice"));
                }
                self.expect_keyword("Q")?;
                self.expect_sym('[')?;
                let mut names = Vec::new();
                loop {
                    let (name, t) = self.expect_ident()?;
                    if names.contains(&name) {
                        return Err(self.semantic(&t, format!("variable `{name}` declared twice")));
                    }
                    names.push(name);
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect_sym(']')?;
                self.expect_sym(';')?;
                let table = VarTable::new(names);
                self.vars = Some(table.clone());
                s.ring = Some(table);
            }
            "ideal" => {
                self.next();
                self.ring(&kw)?;
                let (name, _) = self.expect_ident()?;
                self.expect_sym('=')?;
                let mut gens = vec![self.poly(false)?];
                while self.is_sym(',') {
                    self.next();
                    gens.push(self.poly(false)?);
                }
                self.expect_sym(';')?;
                s.ideals.push((name, gens));
            }
            "element" => {
                self.next();
                self.ring(&kw)?;
                let (name, _) = self.expect_ident()?;
                self.expect_sym('=')?;
                let p = self.poly(false)?;
                self.expect_sym(';')?;
                s.element = Some((name, p));
            }
            "weights" => {
                self.next();
                s.weights = Some(self.assignments(&kw)?);
            }
            "grading" => {
                self.next();
                s.grading = Some(self.assignments(&kw)?);
            }
            "candidates" => {
                self.next();
                self.ring(&kw)?;
                let (name, _) = self.expect_ident()?;
                self.expect_sym('=')?;
                let mut comps = Vec::new();
                loop {
                    self.expect_sym('(')?;
                    let mut gens = vec![self.poly(false)?];
                    while self.is_sym(',') {
                        self.next();
                        gens.push(self.poly(false)?);
                    }
                    self.expect_sym(')')?;
                    comps.push(gens);
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect_sym(';')?;
                s.candidates.push((name, comps));
            }
            "fractions" => {
                self.next();
                self.ring(&kw)?;
                loop {
                    let (name, _) = self.expect_ident()?;
                    self.expect_sym('=')?;
                    let numerator = self.poly(true)?;
                    self.expect_sym('/')?;
                    let (den, t) = self.expect_ident()?;
                    match &s.element {
                        Some((e, _)) if *e == den => {}
                        _ => return Err(self.semantic(&t, format!("denominator `{den}` is not the declared element"))),
                    }
                    let power = if self.is_sym('^') {
                        self.next();
                        let t = self.peek().clone();
                        self.expect_int()?.to_u32().ok_or_else(|| self.semantic(&t, "exponent out of range"))?
                    } else {
                        1
                    };
                    s.fractions.push(FractionDecl { name, numerator, power });
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect_sym(';')?;
            }
            "polytope" => {
                self.next();
                self.expect_sym('=')?;
                let mut pts = vec![self.point()?];
                while self.is_sym(',') {
                    self.next();
                    pts.push(self.point()?);
                }
                self.expect_sym(';')?;
                s.polytope = Some(pts);
            }
            "basepoint" => {
                self.next();
                self.expect_sym('=')?;
                s.basepoint = Some(self.point()?);
                self.expect_sym(';')?;
            }
            _ => {
                return Err(self.error(&[
                    "`ring`",
                    "`ideal`",
                    "`element`",
                    "`weights`",
                    "`grading`",
                    "`candidates`",
                    "`fractions`",
                    "`polytope`",
                    "`basepoint`",
                ]))
            }
        }
        Ok(())
    }
}

pub fn parse_input(text: &str) -> Result<Session, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, vars: None };
    let mut s = Session::default();
    if p.peek().tok == Tok::Eof {
        return Err(p.error(&["statement keyword"]));
    }
    while p.peek().tok != Tok::Eof {
        p.statement(&mut s)?;
    }
    Ok(s)
}

/// Parse one polynomial over the given variable names.
pub fn parse_polynomial(vars: &VarTable, text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, vars: Some(vars.clone()) };
    let f = p.poly(false)?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(f)
}

/// Test and example helper: parse over names, panicking on error.
pub fn poly(names: &[&str], text: &str) -> Polynomial {
    parse_polynomial(&VarTable::new(names.iter().copied()), text).unwrap_or_else(|e| panic!("{text}: {e}"))
}
