//! Cutting Planes refutations over arbitrary-precision integers.
//!
//! Inequality syntax: `1 x1 -1 x2 >= 0`, with `0 >= 1` for no terms.
//! Script lines (each states the derived inequality after the colon):
//!
//! ```text
//! 1 IN 3 : 1 x2 >= 1
//! 2 AXL 4 : 1 x4 >= 0
//! 3 AXU 4 : -1 x4 >= -1
//! 4 ADD 1 2 : 1 x2 1 x4 >= 1
//! 5 MUL 4 2 : 2 x2 2 x4 >= 2
//! 6 DIV 5 2 : 1 x2 1 x4 >= 1
//! ```
//!
//! Division rounds the bound down.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{expect_step, parse_index, script_lines, Verdict};
use crate::error::{Error, Result};
use crate::formula::AtomId;
use crate::generators::{Clause, ClauseSet};

/// `Σ a_i x_i ≥ b`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inequality {
    pub coeffs: BTreeMap<AtomId, BigInt>,
    pub bound: BigInt,
}

impl Inequality {
    pub fn new(coeffs: impl IntoIterator<Item = (AtomId, BigInt)>, bound: BigInt) -> Self {
        let mut out = Inequality {
            coeffs: BTreeMap::new(),
            bound,
        };
        for (v, a) in coeffs {
            *out.coeffs.entry(v).or_default() += a;
        }
        out.coeffs.retain(|_, a| !a.is_zero());
        out
    }

    /// `0 ≥ 1`.
    pub fn contradiction() -> Self {
        Inequality::new([], BigInt::one())
    }

    pub fn is_contradiction(&self) -> bool {
        self.coeffs.is_empty() && self.bound == BigInt::one()
    }

    pub fn add(&self, o: &Inequality) -> Inequality {
        Inequality::new(
            self.coeffs.iter().chain(o.coeffs.iter()).map(|(v, a)| (*v, a.clone())),
            &self.bound + &o.bound,
        )
    }

    pub fn scale(&self, c: &BigInt) -> Inequality {
        Inequality::new(self.coeffs.iter().map(|(v, a)| (*v, a * c)), &self.bound * c)
    }

    /// Division with the bound rounded down; `None` unless `c > 0` divides every coefficient.
    pub fn divide(&self, c: &BigInt) -> Option<Inequality> {
        if !c.is_positive() || self.coeffs.values().any(|a| !a.is_multiple_of(c)) {
            return None;
        }
        Some(Inequality::new(
            self.coeffs.iter().map(|(v, a)| (*v, a / c)),
            self.bound.div_floor(c),
        ))
    }

    /// Whether the 0/1 assignment satisfies the inequality.
    pub fn holds(&self, value: impl Fn(AtomId) -> bool) -> bool {
        let lhs: BigInt = self
            .coeffs
            .iter()
            .filter(|(v, _)| value(**v))
            .map(|(_, a)| a.clone())
            .sum();
        lhs >= self.bound
    }

    pub fn parse(text: &str) -> Result<Inequality> {
        Inequality::parse_at(text, 0)
    }

    fn parse_at(text: &str, pos: usize) -> Result<Inequality> {
        let (lhs, rhs) = text
            .split_once(">=")
            .ok_or_else(|| Error::parse(pos, "inequality needs '>='"))?;
        let bound = parse_int(rhs.trim(), pos)?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let mut coeffs = BTreeMap::new();
        if toks == ["0"] {
            return Ok(Inequality { coeffs, bound });
        }
        if toks.len() % 2 != 0 {
            return Err(Error::parse(pos, "terms are '<coefficient> x<var>' pairs"));
        }
        for pair in toks.chunks(2) {
            let a = parse_int(pair[0], pos)?;
            let v = pair[1]
                .strip_prefix('x')
                .ok_or_else(|| Error::parse(pos, format!("bad variable '{}'", pair[1])))
                .and_then(|t| parse_index(t, pos, "variable"))? as AtomId;
            if v == 0 || a.is_zero() {
                return Err(Error::parse(pos, "zero variable or zero coefficient"));
            }
            if coeffs.insert(v, a).is_some() {
                return Err(Error::parse(pos, format!("variable x{v} repeated")));
            }
        }
        Ok(Inequality { coeffs, bound })
    }
}

fn parse_int(tok: &str, pos: usize) -> Result<BigInt> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
        || (digits.len() > 1 && digits.starts_with('0'))
        || tok == "-0"
    {
        return Err(Error::parse(pos, format!("bad integer '{tok}'")));
    }
    tok.parse().map_err(|_| Error::parse(pos, format!("bad integer '{tok}'")))
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 >= {}", self.bound);
        }
        for (v, a) in &self.coeffs {
            write!(f, "{a} x{v} ")?;
        }
        write!(f, ">= {}", self.bound)
    }
}

/// `I_C`: positive literals minus negative literals, bound `1 − #negatives`.
pub fn clause_to_inequality(c: &Clause) -> Inequality {
    let neg = c.lits().iter().filter(|l| !l.positive).count() as i64;
    Inequality::new(
        c.lits()
            .iter()
            .map(|l| (l.atom, BigInt::from(if l.positive { 1 } else { -1 }))),
        BigInt::from(1 - neg),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CpStep {
    Input(usize),
    AxLower(AtomId),
    AxUpper(AtomId),
    Add(usize, usize),
    Mul(usize, BigInt),
    Div(usize, BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CpRefutation {
    pub lines: Vec<(Inequality, CpStep)>,
}

impl CpRefutation {
    /// Terms plus one per line.
    pub fn size(&self) -> u64 {
        self.lines.iter().map(|(i, _)| i.coeffs.len() as u64 + 1).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, (q, step)) in self.lines.iter().enumerate() {
            let _ = match step {
                CpStep::Input(m) => write!(s, "{} IN {m}", i + 1),
                CpStep::AxLower(v) => write!(s, "{} AXL {v}", i + 1),
                CpStep::AxUpper(v) => write!(s, "{} AXU {v}", i + 1),
                CpStep::Add(j, k) => write!(s, "{} ADD {j} {k}", i + 1),
                CpStep::Mul(j, c) => write!(s, "{} MUL {j} {c}", i + 1),
                CpStep::Div(j, c) => write!(s, "{} DIV {j} {c}", i + 1),
            };
            let _ = writeln!(s, " : {q}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<CpRefutation> {
        let mut lines = Vec::new();
        for (pos, line) in script_lines(text) {
            let (head, ineq) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(pos, "line needs ':'"))?;
            let t: Vec<&str> = head.split_whitespace().collect();
            expect_step(t.first().copied(), lines.len() + 1, pos)?;
            let idx = |k: usize| parse_index(t[k], pos, "index");
            let step = match (t.get(1).copied(), t.len()) {
                (Some("IN"), 3) => CpStep::Input(idx(2)?),
                (Some("AXL"), 3) => CpStep::AxLower(idx(2)? as AtomId),
                (Some("AXU"), 3) => CpStep::AxUpper(idx(2)? as AtomId),
                (Some("ADD"), 4) => CpStep::Add(idx(2)?, idx(3)?),
                (Some("MUL"), 4) => CpStep::Mul(idx(2)?, parse_int(t[3], pos)?),
                (Some("DIV"), 4) => CpStep::Div(idx(2)?, parse_int(t[3], pos)?),
                _ => return Err(Error::parse(pos, "unknown CP step")),
            };
            lines.push((Inequality::parse_at(ineq, pos)?, step));
        }
        Ok(CpRefutation { lines })
    }
}

/// Checks each line; the last line must be `0 ≥ 1`.
pub fn check_cp(inputs: &ClauseSet, r: &CpRefutation) -> Verdict {
    let size = r.size();
    let steps = r.lines.len();
    for (i, (q, step)) in r.lines.iter().enumerate() {
        let n = i + 1;
        let earlier = |j: usize| (j >= 1 && j < n).then(|| &r.lines[j - 1].0);
        let (rule, want): (&str, std::result::Result<Inequality, String>) = match step {
            CpStep::Input(m) => (
                "IN",
                if *m >= 1 && *m <= inputs.len() {
                    Ok(clause_to_inequality(&inputs.clauses[m - 1]))
                } else {
                    Err(format!("no input clause {m}"))
                },
            ),
            CpStep::AxLower(v) => ("AXL", Ok(Inequality::new([(*v, BigInt::one())], BigInt::zero()))),
            CpStep::AxUpper(v) => (
                "AXU",
                Ok(Inequality::new([(*v, -BigInt::one())], -BigInt::one())),
            ),
            CpStep::Add(j, k) => (
                "ADD",
                match (earlier(*j), earlier(*k)) {
                    (Some(a), Some(b)) => Ok(a.add(b)),
                    _ => Err("premises must be earlier lines".into()),
                },
            ),
            CpStep::Mul(j, c) => (
                "MUL",
                match earlier(*j) {
                    None => Err("premise must be an earlier line".into()),
                    Some(_) if c.is_negative() => Err(format!("multiplier {c} is negative")),
                    Some(a) => Ok(a.scale(c)),
                },
            ),
            CpStep::Div(j, c) => (
                "DIV",
                match earlier(*j) {
                    None => Err("premise must be an earlier line".into()),
                    Some(_) if !c.is_positive() => Err(format!("divisor {c} is not positive")),
                    Some(a) => a
                        .divide(c)
                        .ok_or_else(|| format!("{c} does not divide every coefficient")),
                },
            ),
        };
        match want {
            Err(why) => return Verdict::reject(size, steps, n, rule, why),
            Ok(w) if w != *q => {
                return Verdict::reject(size, steps, n, rule, format!("expected {w}, found {q}"))
            }
            Ok(_) => {}
        }
    }
    match r.lines.last() {
        None => Verdict::reject(size, 0, 0, "-", "empty refutation"),
        Some((q, _)) if !q.is_contradiction() => {
            Verdict::reject(size, steps, steps, "-", "last line is not 0 >= 1")
        }
        _ => Verdict::accept(size, steps),
    }
}
