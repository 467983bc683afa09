//! Nullstellensatz certificates over the rationals or a prime field.
//!
//! Polynomial syntax: terms joined by ` + `, each term a product of factors
//! joined by ` * `; a factor is a coefficient (`3`, `-1/2`) or a power `x4^2`.
//! The zero polynomial is `0`. Certificate script:
//!
//! ```text
//! field Q
//! g 1 = 1
//! g 2 = 1 * x2
//! g 3 = 1
//! h 1 = 0
//! ```
//!
//! Missing `g i` / `h v` entries are zero.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_index, script_lines, Verdict};
use crate::error::{Error, Result};
use crate::formula::{AtomId, Formula};
use crate::generators::ClauseSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// Integers modulo a prime.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime {
            return Err(Error::pre(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn parse(text: &str) -> Result<Field> {
        match text {
            "Q" => Ok(Field::Rationals),
            _ => {
                let p = text
                    .strip_prefix('F')
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("unknown field '{text}'")))?;
                Field::prime(p)
            }
        }
    }

    fn reduce(&self, c: BigRational) -> Result<BigRational> {
        match self {
            Field::Rationals => Ok(c),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Eval(format!("{c} has no value modulo {p}")));
                }
                let inv = den.modpow(&(&p - 2), &p);
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(AtomId, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub field: Field,
    pub terms: BTreeMap<Monomial, BigRational>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<AtomId, u32> = a.iter().copied().collect();
    for (v, e) in b {
        let x = m.entry(*v).or_insert(0);
        *x = x.saturating_add(*e);
    }
    m.into_iter().collect()
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, c: i64) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(vec![], BigRational::from_integer(c.into()));
        p
    }

    pub fn var(field: Field, v: AtomId) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(vec![(v, 1)], BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![]).is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let c = self.field.reduce(c).expect("integer coefficients always reduce");
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e = self.field.reduce(&*e + c).expect("integer coefficients always reduce");
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(mono_mul(m1, m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        let mut out = Polynomial::zero(self.field);
        for (m, c) in acc {
            out.add_term(m, c);
        }
        out
    }

    /// Value at a 0/1 point.
    pub fn eval_bool(&self, value: impl Fn(AtomId) -> bool) -> BigRational {
        let mut s = BigRational::zero();
        for (m, c) in &self.terms {
            if m.iter().all(|(v, _)| value(*v)) {
                s += c;
            }
        }
        self.field.reduce(s).expect("integer coefficients always reduce")
    }

    pub fn parse(text: &str, field: Field) -> Result<Polynomial> {
        Polynomial::parse_at(text, field, 0)
    }

    fn parse_at(text: &str, field: Field, pos: usize) -> Result<Polynomial> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::parse(pos, "empty polynomial"));
        }
        let mut out = Polynomial::zero(field);
        for term in t.split(" + ") {
            let mut coeff = BigRational::one();
            let mut mono: BTreeMap<AtomId, u32> = BTreeMap::new();
            for factor in term.split('*').map(str::trim) {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (v, e) = match rest.split_once('^') {
                        Some((v, e)) => (v, u32::try_from(parse_index(e, pos, "exponent")?)
                            .map_err(|_| Error::parse(pos, "exponent too large"))?),
                        None => (rest, 1),
                    };
                    let v = parse_index(v, pos, "variable")? as AtomId;
                    if v == 0 || e == 0 {
                        return Err(Error::parse(pos, "variables start at x1; exponents at 1"));
                    }
                    let x = mono.entry(v).or_insert(0);
                    *x = x.saturating_add(e);
                } else {
                    coeff *= parse_rational(factor, pos)?;
                }
            }
            let c = field
                .reduce(coeff)
                .map_err(|e| Error::parse(pos, e.to_string()))?;
            out.add_term(mono.into_iter().collect(), c);
        }
        Ok(out)
    }
}

fn parse_rational(tok: &str, pos: usize) -> Result<BigRational> {
    let bad = || Error::parse(pos, format!("bad coefficient '{tok}'"));
    let int = |s: &str| -> Result<BigInt> {
        let d = s.strip_prefix('-').unwrap_or(s);
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    match tok.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if !d.is_positive() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(tok)?)),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in m {
                if *e == 1 {
                    write!(f, " * x{v}")?;
                } else {
                    write!(f, " * x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `P_φ` for an `L_b` formula; the formula holds at a 0/1 point iff `P_φ` vanishes there.
pub fn formula_to_polynomial(f: &Formula, field: Field) -> Result<Polynomial> {
    let one = Polynomial::constant(field, 1);
    Ok(match f {
        Formula::Top => Polynomial::zero(field),
        Formula::Bot => one,
        Formula::Atom(v) => one.sub(&Polynomial::var(field, *v)),
        Formula::Not(a) => one.sub(&formula_to_polynomial(a, field)?),
        Formula::Or(a, b) => formula_to_polynomial(a, field)?.mul(&formula_to_polynomial(b, field)?),
        Formula::And(a, b) => {
            let (pa, pb) = (formula_to_polynomial(a, field)?, formula_to_polynomial(b, field)?);
            pa.add(&pb).sub(&pa.mul(&pb))
        }
        other => return Err(Error::pre(format!("{other} is not an L_b formula"))),
    })
}

/// `g_i` per input clause and `h_v` per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsCertificate {
    pub field: Field,
    pub g: BTreeMap<usize, Polynomial>,
    pub h: BTreeMap<AtomId, Polynomial>,
}

impl NsCertificate {
    pub fn size(&self) -> u64 {
        self.g.values().chain(self.h.values()).map(|p| p.terms.len() as u64 + 1).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\n", self.field);
        for (i, p) in &self.g {
            let _ = writeln!(s, "g {i} = {p}");
        }
        for (v, p) in &self.h {
            let _ = writeln!(s, "h {v} = {p}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<NsCertificate> {
        let mut lines = script_lines(text);
        let (pos, first) = lines.next().ok_or_else(|| Error::parse(0, "empty certificate"))?;
        let field = first
            .strip_prefix("field ")
            .ok_or_else(|| Error::parse(pos, "expected 'field <Q|Fp>'"))
            .and_then(|f| Field::parse(f.trim()).map_err(|e| Error::parse(pos, e.to_string())))?;
        let mut cert = NsCertificate {
            field,
            g: BTreeMap::new(),
            h: BTreeMap::new(),
        };
        for (pos, line) in lines {
            let (head, poly) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(pos, "line needs '='"))?;
            let t: Vec<&str> = head.split_whitespace().collect();
            if t.len() != 2 {
                return Err(Error::parse(pos, "expected 'g <i> =' or 'h <var> ='"));
            }
            let i = parse_index(t[1], pos, "index")?;
            if i == 0 {
                return Err(Error::parse(pos, "indices start at 1"));
            }
            let p = Polynomial::parse_at(poly, field, pos)?;
            let dup = match t[0] {
                "g" => cert.g.insert(i, p).is_some(),
                "h" => cert.h.insert(i as AtomId, p).is_some(),
                _ => return Err(Error::parse(pos, "expected 'g' or 'h'")),
            };
            if dup {
                return Err(Error::parse(pos, format!("{} {i} given twice", t[0])));
            }
        }
        Ok(cert)
    }
}

/// Checks `Σ P_{⋁C_i} g_i + Σ (x_v² − x_v) h_v = 1` exactly.
pub fn check_ns(inputs: &ClauseSet, cert: &NsCertificate, field: Field) -> Result<Verdict> {
    if cert.field != field {
        return Err(Error::pre(format!("certificate is over {}, expected {field}", cert.field)));
    }
    let (r, s) = (inputs.len(), inputs.num_vars());
    if let Some(i) = cert.g.keys().find(|i| **i > r) {
        return Err(Error::pre(format!("g {i} but only {r} clauses")));
    }
    if let Some(v) = cert.h.keys().find(|v| **v as usize > s) {
        return Err(Error::pre(format!("h {v} but only {s} variables")));
    }
    let mut sum = Polynomial::zero(field);
    for (i, g) in &cert.g {
        let pc = formula_to_polynomial(&inputs.clauses[i - 1].to_formula(), field)?;
        sum = sum.add(&pc.mul(g));
    }
    for (v, h) in &cert.h {
        let x = Polynomial::var(field, *v);
        sum = sum.add(&x.mul(&x).sub(&x).mul(h));
    }
    let size = cert.size();
    let steps = cert.g.len() + cert.h.len();
    Ok(if sum.is_one() {
        Verdict::accept(size, steps)
    } else {
        Verdict::reject(size, steps, 0, "NS", format!("combination is {sum}, not 1"))
    })
}
