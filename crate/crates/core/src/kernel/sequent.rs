//! Sequent calculi: LK, LJ, LK_n, LK_d and the modal extensions of LK.
//!
//! A proof is an indexed list of nodes; each node names its rule, its premise
//! nodes (earlier indices only) and its conclusion. Principal formulas sit at
//! the right end of the antecedent and the left end of the succedent, as do
//! weakened and contracted formulas. Everything else is moved by explicit
//! exchange steps `Le@k` / `Re@k`, which swap positions `k` and `k+1`.
//!
//! Script format:
//!
//! ```text
//! calculus LK
//! 1 Ax : (atom 1) => (atom 1)
//! 2 Rimp 1 : => (imp (atom 1) (atom 1))
//! ```
//!
//! The last node is the root. Calculus names: `LK LJ LKn LKd@d K D KT K4 KD4
//! S4 GL`, each optionally suffixed by `-` (cut-free), e.g. `LKn-`, `LKd-@2`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use super::{expect_step, parse_index, script_lines, Verdict};
use crate::error::{Error, Result};
use crate::formula::{Formula, Sequent};

/// Base system of a calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    LK,
    LJ,
    LKn,
    /// `LK_d` over `L_b^u` with formula depth at most `d`.
    LKd(usize),
    K,
    D,
    KT,
    K4,
    KD4,
    S4,
    GL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Calculus {
    pub system: System,
    pub cut: bool,
}

impl Calculus {
    pub fn new(system: System, cut: bool) -> Self {
        Calculus { system, cut }
    }

    pub fn is_modal(&self) -> bool {
        matches!(
            self.system,
            System::K | System::D | System::KT | System::K4 | System::KD4 | System::S4 | System::GL
        )
    }

    pub fn single_conclusion(&self) -> bool {
        self.system == System::LJ
    }

    pub fn name(&self) -> String {
        let minus = if self.cut { "" } else { "-" };
        match self.system {
            System::LKd(d) => format!("LKd{minus}@{d}"),
            s => format!("{s:?}{minus}"),
        }
    }

    pub fn parse(text: &str) -> Result<Calculus> {
        let (head, param) = match text.split_once('@') {
            Some((h, p)) => (h, Some(p)),
            None => (text, None),
        };
        let (base, cut) = match head.strip_suffix('-') {
            Some(b) => (b, false),
            None => (head, true),
        };
        let system = match (base, param) {
            ("LK", None) => System::LK,
            ("LJ", None) => System::LJ,
            ("LKn", None) => System::LKn,
            ("LKd", Some(p)) => System::LKd(parse_index(p, 0, "depth bound")?),
            ("K", None) => System::K,
            ("D", None) => System::D,
            ("KT", None) => System::KT,
            ("K4", None) => System::K4,
            ("KD4", None) => System::KD4,
            ("S4", None) => System::S4,
            ("GL", None) => System::GL,
            _ => return Err(Error::parse(0, format!("unknown calculus '{text}'"))),
        };
        Ok(Calculus { system, cut })
    }

    /// Whether the rule belongs to this calculus.
    pub fn allows(&self, rule: Rule) -> bool {
        use Rule as R;
        use System as S;
        match rule {
            R::Le(_) | R::Re(_) | R::Lw | R::Rw | R::Lc | R::Rc | R::Ax | R::AxBot | R::AxTop => true,
            R::Cut => self.cut,
            R::AxNegL | R::AxNegR | R::AxNotTop | R::AxNotBot => self.system == S::LKn,
            R::Land1 | R::Land2 | R::Rand | R::Lor | R::Ror1 | R::Ror2 => {
                !matches!(self.system, S::LKd(_))
            }
            R::Limp | R::Rimp => !matches!(self.system, S::LKd(_) | S::LKn),
            R::Lbigand(_) | R::Rbigand | R::Lbigor | R::Rbigor(_) | R::Lnot | R::Rnot => {
                matches!(self.system, S::LKd(_))
            }
            R::K => matches!(self.system, S::K | S::KT),
            R::D => self.system == S::D,
            R::K4 => self.system == S::K4,
            R::KD4 => self.system == S::KD4,
            R::LS4 => matches!(self.system, S::KT | S::S4),
            R::RS4 => self.system == S::S4,
            R::GL => self.system == S::GL,
        }
    }

    /// Language restriction on every formula of a proof.
    pub fn formula_ok(&self, f: &Formula) -> std::result::Result<(), String> {
        let feat = f.features();
        if feat.ext {
            return Err(format!("extended atom in {f}"));
        }
        match self.system {
            System::LK | System::LJ => {
                if feat.not || feat.big || feat.modal {
                    return Err(format!("{f} is not an L_p formula"));
                }
            }
            System::LKn => {
                if feat.imp || feat.big || feat.modal || !f.is_nnf() {
                    return Err(format!("{f} is not an NNF L_b formula"));
                }
            }
            System::LKd(d) => {
                if feat.imp || feat.binary || feat.modal {
                    return Err(format!("{f} is not an L_b^u formula"));
                }
                if f.depth() > d {
                    return Err(format!("{f} has depth {} > {d}", f.depth()));
                }
            }
            _ => {
                if feat.not || feat.big {
                    return Err(format!("{f} is not an L_□ formula"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Rule names. Parameters are 1-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `φ ⇒ φ`; literals only in `LK_n`.
    Ax,
    AxBot,
    AxTop,
    /// `p, ¬p ⇒`
    AxNegL,
    /// `⇒ p, ¬p`
    AxNegR,
    /// `¬⊤ ⇒`
    AxNotTop,
    /// `⇒ ¬⊥`
    AxNotBot,
    Le(usize),
    Re(usize),
    Lw,
    Rw,
    Lc,
    Rc,
    Cut,
    Land1,
    Land2,
    Rand,
    Lor,
    Ror1,
    Ror2,
    Limp,
    Rimp,
    Lbigand(usize),
    Rbigand,
    Lbigor,
    Rbigor(usize),
    Lnot,
    Rnot,
    K,
    D,
    K4,
    KD4,
    LS4,
    RS4,
    GL,
}

impl Rule {
    pub fn name(&self) -> String {
        match self {
            Rule::Le(k) => format!("Le@{k}"),
            Rule::Re(k) => format!("Re@{k}"),
            Rule::Lbigand(a) => format!("Lbigand@{a}"),
            Rule::Rbigor(a) => format!("Rbigor@{a}"),
            r => format!("{r:?}"),
        }
    }

    pub fn parse(text: &str) -> Result<Rule> {
        let (head, param) = match text.split_once('@') {
            Some((h, p)) => (h, Some(parse_index(p, 0, "rule parameter")?)),
            None => (text, None),
        };
        let bad = || Error::parse(0, format!("unknown rule '{text}'"));
        let rule = match (head, param) {
            ("Le", Some(k)) => Rule::Le(k),
            ("Re", Some(k)) => Rule::Re(k),
            ("Lbigand", Some(a)) => Rule::Lbigand(a),
            ("Rbigor", Some(a)) => Rule::Rbigor(a),
            (_, Some(_)) => return Err(bad()),
            (h, None) => match h {
                "Ax" => Rule::Ax,
                "AxBot" => Rule::AxBot,
                "AxTop" => Rule::AxTop,
                "AxNegL" => Rule::AxNegL,
                "AxNegR" => Rule::AxNegR,
                "AxNotTop" => Rule::AxNotTop,
                "AxNotBot" => Rule::AxNotBot,
                "Lw" => Rule::Lw,
                "Rw" => Rule::Rw,
                "Lc" => Rule::Lc,
                "Rc" => Rule::Rc,
                "Cut" => Rule::Cut,
                "Land1" => Rule::Land1,
                "Land2" => Rule::Land2,
                "Rand" => Rule::Rand,
                "Lor" => Rule::Lor,
                "Ror1" => Rule::Ror1,
                "Ror2" => Rule::Ror2,
                "Limp" => Rule::Limp,
                "Rimp" => Rule::Rimp,
                "Rbigand" => Rule::Rbigand,
                "Lbigor" => Rule::Lbigor,
                "Lnot" => Rule::Lnot,
                "Rnot" => Rule::Rnot,
                "K" => Rule::K,
                "D" => Rule::D,
                "K4" => Rule::K4,
                "KD4" => Rule::KD4,
                "LS4" => Rule::LS4,
                "RS4" => Rule::RS4,
                "GL" => Rule::GL,
                _ => return Err(bad()),
            },
        };
        Ok(rule)
    }

    /// Fixed premise count, or `None` for the big rules whose count follows the formula.
    pub fn arity(&self) -> Option<usize> {
        use Rule as R;
        Some(match self {
            R::Ax | R::AxBot | R::AxTop | R::AxNegL | R::AxNegR | R::AxNotTop | R::AxNotBot => 0,
            R::Cut | R::Rand | R::Lor | R::Limp => 2,
            R::Rbigand | R::Lbigor => return None,
            _ => 1,
        })
    }

    pub fn is_axiom(&self) -> bool {
        self.arity() == Some(0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub rule: Rule,
    /// 0-based indices of earlier nodes.
    pub premises: Vec<usize>,
    pub sequent: Sequent,
}

/// A proof DAG in topological order; the last node is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentProof {
    pub calculus: Calculus,
    pub nodes: Vec<ProofNode>,
}

impl SequentProof {
    pub fn root(&self) -> Option<&Sequent> {
        self.nodes.last().map(|n| &n.sequent)
    }

    /// Total symbols over all node sequents.
    pub fn size(&self) -> u64 {
        self.nodes.iter().fold(0u64, |a, n| a.saturating_add(n.sequent.size()))
    }

    pub fn has_cut(&self) -> bool {
        self.nodes.iter().any(|n| n.rule == Rule::Cut)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("calculus {}\n", self.calculus.name());
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = write!(s, "{} {}", i + 1, n.rule);
            for p in &n.premises {
                let _ = write!(s, " {}", p + 1);
            }
            let _ = writeln!(s, " : {}", n.sequent.to_text());
        }
        s
    }

    pub fn parse(text: &str) -> Result<SequentProof> {
        let mut lines = script_lines(text);
        let (pos, first) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "empty proof script"))?;
        let name = first
            .strip_prefix("calculus ")
            .ok_or_else(|| Error::parse(pos, "expected 'calculus <name>'"))?;
        let calculus = Calculus::parse(name.trim()).map_err(|e| relocate(e, pos))?;
        let mut nodes = Vec::new();
        for (pos, line) in lines {
            let colon = line
                .find(':')
                .ok_or_else(|| Error::parse(pos, "node line needs ':'"))?;
            let mut toks = line[..colon].split_whitespace();
            expect_step(toks.next(), nodes.len() + 1, pos)?;
            let rule = Rule::parse(toks.next().ok_or_else(|| Error::parse(pos, "missing rule"))?)
                .map_err(|e| relocate(e, pos))?;
            let mut premises = Vec::new();
            for t in toks {
                let p = parse_index(t, pos, "premise")?;
                if p == 0 || p > nodes.len() {
                    return Err(Error::parse(pos, format!("premise {p} is not an earlier node")));
                }
                premises.push(p - 1);
            }
            let sequent = Sequent::parse_at(&line[colon + 1..], pos + colon + 1)?;
            nodes.push(ProofNode {
                rule,
                premises,
                sequent,
            });
        }
        Ok(SequentProof { calculus, nodes })
    }
}

fn relocate(e: Error, pos: usize) -> Error {
    match e {
        Error::Parse { pos: p, msg } => Error::parse(pos + p, msg),
        other => other,
    }
}

/// Checks every node against the calculus's rule table.
pub fn check_sequent_proof(p: &SequentProof) -> Verdict {
    let size = p.size();
    let steps = p.nodes.len();
    if p.nodes.is_empty() {
        return Verdict::reject(size, 0, 0, "-", "empty proof");
    }
    for (i, n) in p.nodes.iter().enumerate() {
        if let Err(reason) = check_node(&p.calculus, i, n, &p.nodes) {
            return Verdict::reject(size, steps, i + 1, n.rule.name(), reason);
        }
    }
    Verdict::accept(size, steps)
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn split_last(v: &[Formula]) -> std::result::Result<(&[Formula], &Formula), String> {
    v.split_last()
        .map(|(l, r)| (r, l))
        .ok_or_else(|| "empty antecedent".to_string())
}

fn split_first(v: &[Formula]) -> std::result::Result<(&Formula, &[Formula]), String> {
    v.split_first().ok_or_else(|| "empty succedent".to_string())
}

fn boxes(v: &[Formula]) -> Vec<Formula> {
    v.iter().map(|f| Formula::boxed(f.clone())).collect()
}

fn unbox_all(v: &[Formula]) -> Option<Vec<Formula>> {
    v.iter()
        .map(|f| match f {
            Formula::Box(a) => Some((**a).clone()),
            _ => None,
        })
        .collect()
}

fn same(a: &[Formula], b: &[Formula], what: &str) -> Check {
    ensure(a == b, || format!("{what} does not match the premise"))
}

fn check_node(calc: &Calculus, idx: usize, node: &ProofNode, all: &[ProofNode]) -> Check {
    for &p in &node.premises {
        ensure(p < idx, || format!("premise {} is not an earlier node", p + 1))?;
    }
    let prem: Vec<&Sequent> = node.premises.iter().map(|&p| &all[p].sequent).collect();
    check_step(calc, node.rule, &prem, &node.sequent)
}

/// Checks a single rule instance: premises over conclusion.
pub fn check_step(calc: &Calculus, rule: Rule, prem: &[&Sequent], s: &Sequent) -> Check {
    if !calc.allows(rule) {
        return Err(format!("rule {rule} is not part of {calc}"));
    }
    if let Some(k) = rule.arity() {
        ensure(prem.len() == k, || format!("expected {k} premises, found {}", prem.len()))?;
    } else {
        ensure(!prem.is_empty(), || "expected at least one premise".into())?;
    }
    for f in s.ant.iter().chain(s.suc.iter()) {
        calc.formula_ok(f)?;
    }
    if calc.single_conclusion() {
        ensure(s.suc.len() <= 1, || "more than one formula in the succedent".into())?;
    }
    let lj = calc.single_conclusion();
    use Rule as R;
    match rule {
        R::Ax => {
            ensure(s.ant.len() == 1 && s.suc.len() == 1 && s.ant[0] == s.suc[0], || {
                "axiom must be φ ⇒ φ".into()
            })?;
            if calc.system == System::LKn {
                ensure(s.ant[0].is_literal(), || "LK_n identity axioms are on literals".into())?;
            }
            Ok(())
        }
        R::AxBot => ensure(s.ant == [Formula::Bot] && s.suc.is_empty(), || "expected ⊥ ⇒".into()),
        R::AxTop => ensure(s.ant.is_empty() && s.suc == [Formula::Top], || "expected ⇒ ⊤".into()),
        R::AxNegL => ensure(
            s.suc.is_empty()
                && s.ant.len() == 2
                && s.ant[0].is_atom()
                && s.ant[1] == Formula::not(s.ant[0].clone()),
            || "expected p, ¬p ⇒".into(),
        ),
        R::AxNegR => ensure(
            s.ant.is_empty()
                && s.suc.len() == 2
                && s.suc[0].is_atom()
                && s.suc[1] == Formula::not(s.suc[0].clone()),
            || "expected ⇒ p, ¬p".into(),
        ),
        R::AxNotTop => ensure(s.ant == [Formula::not(Formula::Top)] && s.suc.is_empty(), || {
            "expected ¬⊤ ⇒".into()
        }),
        R::AxNotBot => ensure(s.ant.is_empty() && s.suc == [Formula::not(Formula::Bot)], || {
            "expected ⇒ ¬⊥".into()
        }),
        R::Le(k) | R::Re(k) => {
            let left = matches!(rule, R::Le(_));
            let (pv, sv, pother, sother) = if left {
                (&prem[0].ant, &s.ant, &prem[0].suc, &s.suc)
            } else {
                (&prem[0].suc, &s.suc, &prem[0].ant, &s.ant)
            };
            ensure(k >= 1 && k < pv.len(), || format!("no positions {k} and {} to exchange", k + 1))?;
            let mut sw = pv.clone();
            sw.swap(k - 1, k);
            ensure(&sw == sv, || "exchange result does not match".into())?;
            same(sother, pother, "untouched side")
        }
        R::Lw => {
            let (g, _) = split_last(&s.ant)?;
            same(g, &prem[0].ant, "antecedent")?;
            same(&s.suc, &prem[0].suc, "succedent")
        }
        R::Rw => {
            let (_, d) = split_first(&s.suc)?;
            same(d, &prem[0].suc, "succedent")?;
            same(&s.ant, &prem[0].ant, "antecedent")
        }
        R::Lc => {
            let p = &prem[0].ant;
            ensure(p.len() >= 2 && p[p.len() - 1] == p[p.len() - 2], || {
                "premise antecedent does not end with φ, φ".into()
            })?;
            same(&s.ant, &p[..p.len() - 1], "antecedent")?;
            same(&s.suc, &prem[0].suc, "succedent")
        }
        R::Rc => {
            let p = &prem[0].suc;
            ensure(p.len() >= 2 && p[0] == p[1], || "premise succedent does not start with φ, φ".into())?;
            same(&s.suc, &p[1..], "succedent")?;
            same(&s.ant, &prem[0].ant, "antecedent")
        }
        R::Cut | R::Limp => {
            let (l, r) = (prem[0], prem[1]);
            let (phi, d1) = split_first(&l.suc)?;
            let (g2, last) = split_last(&r.ant)?;
            if lj {
                ensure(d1.is_empty(), || "left premise must have exactly one succedent formula".into())?;
            } else {
                same(d1, &r.suc, "left premise context Δ")?;
            }
            same(&l.ant, g2, "left premise context Γ")?;
            same(&s.suc, &r.suc, "succedent")?;
            if rule == R::Cut {
                ensure(phi == last, || "cut formulas differ".into())?;
                same(&s.ant, g2, "antecedent")
            } else {
                let (g, princ) = split_last(&s.ant)?;
                same(g, g2, "antecedent")?;
                ensure(*princ == Formula::imp(phi.clone(), last.clone()), || {
                    "principal formula is not φ→ψ from the premises".into()
                })
            }
        }
        R::Land1 | R::Land2 | R::LS4 | R::Lnot | R::Lbigand(_) => {
            let p = prem[0];
            let (g, princ) = split_last(&s.ant)?;
            match rule {
                R::Lnot => {
                    let (phi, pd) = split_first(&p.suc)?;
                    same(&s.suc, pd, "succedent")?;
                    same(g, &p.ant, "antecedent")?;
                    ensure(*princ == Formula::not(phi.clone()), || "principal formula is not ¬φ".into())
                }
                _ => {
                    let (pg, sub) = split_last(&p.ant)?;
                    same(&s.suc, &p.suc, "succedent")?;
                    same(g, pg, "antecedent")?;
                    let ok = match (rule, princ) {
                        (R::Land1, Formula::And(a, _)) => **a == *sub,
                        (R::Land2, Formula::And(_, b)) => **b == *sub,
                        (R::LS4, Formula::Box(a)) => **a == *sub,
                        (R::Lbigand(a), Formula::BigAnd(v)) => a >= 1 && a <= v.len() && v[a - 1] == *sub,
                        _ => false,
                    };
                    ensure(ok, || "principal formula does not match the premise".into())
                }
            }
        }
        R::Ror1 | R::Ror2 | R::Rimp | R::Rnot | R::Rbigor(_) => {
            let p = prem[0];
            let (princ, d) = split_first(&s.suc)?;
            match rule {
                R::Rnot => {
                    let (g, phi) = split_last(&p.ant)?;
                    same(&s.ant, g, "antecedent")?;
                    same(d, &p.suc, "succedent")?;
                    ensure(*princ == Formula::not(phi.clone()), || "principal formula is not ¬φ".into())
                }
                R::Rimp => {
                    let (g, phi) = split_last(&p.ant)?;
                    let (psi, pd) = split_first(&p.suc)?;
                    same(&s.ant, g, "antecedent")?;
                    same(d, pd, "succedent")?;
                    ensure(*princ == Formula::imp(phi.clone(), psi.clone()), || {
                        "principal formula is not φ→ψ".into()
                    })
                }
                _ => {
                    let (sub, pd) = split_first(&p.suc)?;
                    same(&s.ant, &p.ant, "antecedent")?;
                    same(d, pd, "succedent")?;
                    let ok = match (rule, princ) {
                        (R::Ror1, Formula::Or(a, _)) => **a == *sub,
                        (R::Ror2, Formula::Or(_, b)) => **b == *sub,
                        (R::Rbigor(a), Formula::BigOr(v)) => a >= 1 && a <= v.len() && v[a - 1] == *sub,
                        _ => false,
                    };
                    ensure(ok, || "principal formula does not match the premise".into())
                }
            }
        }
        R::Rand | R::Rbigand => {
            let (princ, d) = split_first(&s.suc)?;
            let parts: Vec<Formula> = match (rule, princ) {
                (R::Rand, Formula::And(a, b)) => vec![(**a).clone(), (**b).clone()],
                (R::Rbigand, Formula::BigAnd(v)) => v.to_vec(),
                _ => return Err("principal formula has the wrong connective".into()),
            };
            ensure(parts.len() == prem.len(), || "one premise per conjunct is required".into())?;
            for (p, part) in prem.iter().zip(&parts) {
                let (sub, pd) = split_first(&p.suc)?;
                ensure(sub == part, || "premise does not prove the matching conjunct".into())?;
                same(&s.ant, &p.ant, "antecedent")?;
                same(d, pd, "succedent")?;
            }
            Ok(())
        }
        R::Lor | R::Lbigor => {
            let (g, princ) = split_last(&s.ant)?;
            let parts: Vec<Formula> = match (rule, princ) {
                (R::Lor, Formula::Or(a, b)) => vec![(**a).clone(), (**b).clone()],
                (R::Lbigor, Formula::BigOr(v)) => v.to_vec(),
                _ => return Err("principal formula has the wrong connective".into()),
            };
            ensure(parts.len() == prem.len(), || "one premise per disjunct is required".into())?;
            for (p, part) in prem.iter().zip(&parts) {
                let (pg, sub) = split_last(&p.ant)?;
                ensure(sub == part, || "premise does not assume the matching disjunct".into())?;
                same(g, pg, "antecedent")?;
                same(&s.suc, &p.suc, "succedent")?;
            }
            Ok(())
        }
        R::K | R::D => {
            let p = prem[0];
            if rule == R::K {
                ensure(p.suc.len() == 1, || "K premise needs exactly one succedent formula".into())?;
            } else {
                ensure(p.suc.len() <= 1, || "D premise has more than one succedent formula".into())?;
            }
            ensure(s.ant == boxes(&p.ant), || "antecedent is not □Γ".into())?;
            ensure(s.suc == boxes(&p.suc), || "succedent is not □Δ".into())
        }
        R::K4 | R::KD4 => {
            let p = prem[0];
            if rule == R::K4 {
                ensure(p.suc.len() == 1, || "K4 premise needs exactly one succedent formula".into())?;
            } else {
                ensure(p.suc.len() <= 1, || "KD4 premise has more than one succedent formula".into())?;
            }
            let gamma = unbox_all(&s.ant).ok_or_else(|| "antecedent is not □Γ".to_string())?;
            let mut want = s.ant.clone();
            want.extend(gamma);
            ensure(p.ant == want, || "premise antecedent is not □Γ, Γ".into())?;
            ensure(s.suc == boxes(&p.suc), || "succedent is not □Δ".into())
        }
        R::RS4 => {
            let p = prem[0];
            ensure(unbox_all(&s.ant).is_some(), || "antecedent is not □Γ".into())?;
            same(&s.ant, &p.ant, "antecedent")?;
            ensure(p.suc.len() == 1 && s.suc == boxes(&p.suc), || "expected □Γ ⇒ φ over □Γ ⇒ □φ".into())
        }
        R::GL => {
            let p = prem[0];
            let gamma = unbox_all(&s.ant).ok_or_else(|| "antecedent is not □Γ".to_string())?;
            ensure(p.suc.len() == 1 && s.suc == boxes(&p.suc), || "expected ... ⇒ φ over □Γ ⇒ □φ".into())?;
            let mut want = s.ant.clone();
            want.extend(gamma);
            want.push(s.suc[0].clone());
            ensure(p.ant == want, || "premise antecedent is not □Γ, Γ, □φ".into())
        }
    }
}

/// Builds proofs bottom-up, computing each conclusion from its premises.
///
/// Identical steps are shared, so the result is a DAG. Shapes are not checked
/// here; run [`check_sequent_proof`] on the finished proof.
#[derive(Clone, Debug)]
pub struct ProofBuilder {
    calculus: Calculus,
    nodes: Vec<ProofNode>,
    memo: HashMap<(Rule, Vec<usize>, Option<Formula>), usize>,
    axioms: HashMap<(Rule, Sequent), usize>,
}

impl ProofBuilder {
    pub fn new(calculus: Calculus) -> Self {
        ProofBuilder {
            calculus,
            nodes: Vec::new(),
            memo: HashMap::new(),
            axioms: HashMap::new(),
        }
    }

    pub fn sequent(&self, n: usize) -> &Sequent {
        &self.nodes[n].sequent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, rule: Rule, premises: Vec<usize>, key: Option<Formula>, sequent: Sequent) -> usize {
        let k = (rule, premises, key);
        if let Some(&n) = self.memo.get(&k) {
            return n;
        }
        let premises = k.1.clone();
        self.nodes.push(ProofNode {
            rule,
            premises,
            sequent,
        });
        let id = self.nodes.len() - 1;
        self.memo.insert(k, id);
        id
    }

    fn last_ant(&self, n: usize) -> Result<(Vec<Formula>, Formula)> {
        let a = &self.nodes[n].sequent.ant;
        let (l, g) = a.split_last().ok_or_else(|| Error::pre("empty antecedent"))?;
        Ok((g.to_vec(), l.clone()))
    }

    fn first_suc(&self, n: usize) -> Result<(Formula, Vec<Formula>)> {
        let s = &self.nodes[n].sequent.suc;
        let (f, d) = s.split_first().ok_or_else(|| Error::pre("empty succedent"))?;
        Ok((f.clone(), d.to_vec()))
    }

    /// Any axiom with its conclusion given explicitly.
    pub fn axiom(&mut self, rule: Rule, sequent: Sequent) -> usize {
        let key = (rule, sequent);
        if let Some(&n) = self.axioms.get(&key) {
            return n;
        }
        self.nodes.push(ProofNode {
            rule,
            premises: vec![],
            sequent: key.1.clone(),
        });
        self.axioms.insert(key, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Copies the nodes of `p` verbatim; returns the new index of its root.
    pub fn import(&mut self, p: &SequentProof) -> usize {
        let mut map = Vec::with_capacity(p.nodes.len());
        for n in &p.nodes {
            let id = if n.premises.is_empty() {
                self.axiom(n.rule, n.sequent.clone())
            } else {
                let prem = n.premises.iter().map(|&i| map[i]).collect();
                self.push(n.rule, prem, Some(Formula::ext(n.sequent.as_formula())), n.sequent.clone())
            };
            map.push(id);
        }
        map.last().copied().unwrap_or(0)
    }

    pub fn ax(&mut self, f: Formula) -> usize {
        self.axiom(Rule::Ax, Sequent::new(vec![f.clone()], vec![f]))
    }

    pub fn le(&mut self, n: usize, k: usize) -> Result<usize> {
        let mut s = self.nodes[n].sequent.clone();
        if k == 0 || k >= s.ant.len() {
            return Err(Error::pre(format!("cannot exchange antecedent positions {k}, {}", k + 1)));
        }
        s.ant.swap(k - 1, k);
        Ok(self.push(Rule::Le(k), vec![n], None, s))
    }

    pub fn re(&mut self, n: usize, k: usize) -> Result<usize> {
        let mut s = self.nodes[n].sequent.clone();
        if k == 0 || k >= s.suc.len() {
            return Err(Error::pre(format!("cannot exchange succedent positions {k}, {}", k + 1)));
        }
        s.suc.swap(k - 1, k);
        Ok(self.push(Rule::Re(k), vec![n], None, s))
    }

    pub fn lw(&mut self, n: usize, f: Formula) -> usize {
        let mut s = self.nodes[n].sequent.clone();
        s.ant.push(f.clone());
        self.push(Rule::Lw, vec![n], Some(f), s)
    }

    pub fn rw(&mut self, n: usize, f: Formula) -> usize {
        let mut s = self.nodes[n].sequent.clone();
        s.suc.insert(0, f.clone());
        self.push(Rule::Rw, vec![n], Some(f), s)
    }

    pub fn lc(&mut self, n: usize) -> Result<usize> {
        let mut s = self.nodes[n].sequent.clone();
        let l = s.ant.len();
        if l < 2 || s.ant[l - 1] != s.ant[l - 2] {
            return Err(Error::pre("antecedent does not end with a repeated formula"));
        }
        s.ant.pop();
        Ok(self.push(Rule::Lc, vec![n], None, s))
    }

    pub fn rc(&mut self, n: usize) -> Result<usize> {
        let mut s = self.nodes[n].sequent.clone();
        if s.suc.len() < 2 || s.suc[0] != s.suc[1] {
            return Err(Error::pre("succedent does not start with a repeated formula"));
        }
        s.suc.remove(0);
        Ok(self.push(Rule::Rc, vec![n], None, s))
    }

    /// Cut: left premise `Γ ⇒ φ, Δ`, right premise `Γ, φ ⇒ Δ`.
    pub fn cut(&mut self, l: usize, r: usize) -> Result<usize> {
        let (g, _) = self.last_ant(r)?;
        let s = Sequent::new(g, self.nodes[r].sequent.suc.clone());
        Ok(self.push(Rule::Cut, vec![l, r], None, s))
    }

    pub fn land1(&mut self, n: usize, psi: Formula) -> Result<usize> {
        let (mut g, phi) = self.last_ant(n)?;
        g.push(Formula::and(phi, psi.clone()));
        let s = Sequent::new(g, self.nodes[n].sequent.suc.clone());
        Ok(self.push(Rule::Land1, vec![n], Some(psi), s))
    }

    pub fn land2(&mut self, n: usize, phi: Formula) -> Result<usize> {
        let (mut g, psi) = self.last_ant(n)?;
        g.push(Formula::and(phi.clone(), psi));
        let s = Sequent::new(g, self.nodes[n].sequent.suc.clone());
        Ok(self.push(Rule::Land2, vec![n], Some(phi), s))
    }

    pub fn rand(&mut self, l: usize, r: usize) -> Result<usize> {
        let (phi, d) = self.first_suc(l)?;
        let (psi, _) = self.first_suc(r)?;
        let mut suc = vec![Formula::and(phi, psi)];
        suc.extend(d);
        let s = Sequent::new(self.nodes[l].sequent.ant.clone(), suc);
        Ok(self.push(Rule::Rand, vec![l, r], None, s))
    }

    pub fn lor(&mut self, l: usize, r: usize) -> Result<usize> {
        let (mut g, phi) = self.last_ant(l)?;
        let (_, psi) = self.last_ant(r)?;
        g.push(Formula::or(phi, psi));
        let s = Sequent::new(g, self.nodes[l].sequent.suc.clone());
        Ok(self.push(Rule::Lor, vec![l, r], None, s))
    }

    pub fn ror1(&mut self, n: usize, psi: Formula) -> Result<usize> {
        let (phi, d) = self.first_suc(n)?;
        let mut suc = vec![Formula::or(phi, psi.clone())];
        suc.extend(d);
        let s = Sequent::new(self.nodes[n].sequent.ant.clone(), suc);
        Ok(self.push(Rule::Ror1, vec![n], Some(psi), s))
    }

    pub fn ror2(&mut self, n: usize, phi: Formula) -> Result<usize> {
        let (psi, d) = self.first_suc(n)?;
        let mut suc = vec![Formula::or(phi.clone(), psi)];
        suc.extend(d);
        let s = Sequent::new(self.nodes[n].sequent.ant.clone(), suc);
        Ok(self.push(Rule::Ror2, vec![n], Some(phi), s))
    }

    /// `Γ ⇒ φ, Δ` and `Γ, ψ ⇒ Δ` give `Γ, φ→ψ ⇒ Δ`.
    pub fn limp(&mut self, l: usize, r: usize) -> Result<usize> {
        let (phi, _) = self.first_suc(l)?;
        let (mut g, psi) = self.last_ant(r)?;
        g.push(Formula::imp(phi, psi));
        let s = Sequent::new(g, self.nodes[r].sequent.suc.clone());
        Ok(self.push(Rule::Limp, vec![l, r], None, s))
    }

    pub fn rimp(&mut self, n: usize) -> Result<usize> {
        let (g, phi) = self.last_ant(n)?;
        let (psi, d) = self.first_suc(n)?;
        let mut suc = vec![Formula::imp(phi, psi)];
        suc.extend(d);
        Ok(self.push(Rule::Rimp, vec![n], None, Sequent::new(g, suc)))
    }

    pub fn lbigand(&mut self, n: usize, big: Formula, a: usize) -> Result<usize> {
        let (mut g, _) = self.last_ant(n)?;
        g.push(big.clone());
        let s = Sequent::new(g, self.nodes[n].sequent.suc.clone());
        Ok(self.push(Rule::Lbigand(a), vec![n], Some(big), s))
    }

    pub fn rbigand(&mut self, ns: &[usize]) -> Result<usize> {
        let first = *ns.first().ok_or_else(|| Error::pre("no premises"))?;
        let (_, d) = self.first_suc(first)?;
        let parts = ns.iter().map(|&n| self.first_suc(n).map(|x| x.0)).collect::<Result<Vec<_>>>()?;
        let mut suc = vec![Formula::big_and(parts)];
        suc.extend(d);
        let s = Sequent::new(self.nodes[first].sequent.ant.clone(), suc);
        Ok(self.push(Rule::Rbigand, ns.to_vec(), None, s))
    }

    pub fn lbigor(&mut self, ns: &[usize]) -> Result<usize> {
        let first = *ns.first().ok_or_else(|| Error::pre("no premises"))?;
        let (mut g, _) = self.last_ant(first)?;
        let parts = ns.iter().map(|&n| self.last_ant(n).map(|x| x.1)).collect::<Result<Vec<_>>>()?;
        g.push(Formula::big_or(parts));
        let s = Sequent::new(g, self.nodes[first].sequent.suc.clone());
        Ok(self.push(Rule::Lbigor, ns.to_vec(), None, s))
    }

    pub fn rbigor(&mut self, n: usize, big: Formula, a: usize) -> Result<usize> {
        let (_, d) = self.first_suc(n)?;
        let mut suc = vec![big.clone()];
        suc.extend(d);
        let s = Sequent::new(self.nodes[n].sequent.ant.clone(), suc);
        Ok(self.push(Rule::Rbigor(a), vec![n], Some(big), s))
    }

    pub fn lnot(&mut self, n: usize) -> Result<usize> {
        let (phi, d) = self.first_suc(n)?;
        let mut g = self.nodes[n].sequent.ant.clone();
        g.push(Formula::not(phi));
        Ok(self.push(Rule::Lnot, vec![n], None, Sequent::new(g, d)))
    }

    pub fn rnot(&mut self, n: usize) -> Result<usize> {
        let (g, phi) = self.last_ant(n)?;
        let mut suc = vec![Formula::not(phi)];
        suc.extend(self.nodes[n].sequent.suc.iter().cloned());
        Ok(self.push(Rule::Rnot, vec![n], None, Sequent::new(g, suc)))
    }

    /// `K`, `D`: box every formula.
    pub fn box_all(&mut self, n: usize, rule: Rule) -> usize {
        let p = &self.nodes[n].sequent;
        let s = Sequent::new(boxes(&p.ant), boxes(&p.suc));
        self.push(rule, vec![n], None, s)
    }

    /// `K4`, `KD4`: premise `□Γ, Γ ⇒ Δ`, conclusion `□Γ ⇒ □Δ`.
    pub fn box_half(&mut self, n: usize, rule: Rule) -> Result<usize> {
        let p = &self.nodes[n].sequent;
        if p.ant.len() % 2 != 0 {
            return Err(Error::pre("premise antecedent is not □Γ, Γ"));
        }
        let s = Sequent::new(p.ant[..p.ant.len() / 2].to_vec(), boxes(&p.suc));
        Ok(self.push(rule, vec![n], None, s))
    }

    pub fn ls4(&mut self, n: usize) -> Result<usize> {
        let (mut g, phi) = self.last_ant(n)?;
        g.push(Formula::boxed(phi));
        let s = Sequent::new(g, self.nodes[n].sequent.suc.clone());
        Ok(self.push(Rule::LS4, vec![n], None, s))
    }

    pub fn rs4(&mut self, n: usize) -> usize {
        let p = &self.nodes[n].sequent;
        let s = Sequent::new(p.ant.clone(), boxes(&p.suc));
        self.push(Rule::RS4, vec![n], None, s)
    }

    /// Premise `□Γ, Γ, □φ ⇒ φ`, conclusion `□Γ ⇒ □φ`.
    pub fn gl(&mut self, n: usize) -> Result<usize> {
        let p = &self.nodes[n].sequent;
        if p.ant.len() % 2 != 1 {
            return Err(Error::pre("premise antecedent is not □Γ, Γ, □φ"));
        }
        let s = Sequent::new(p.ant[..p.ant.len() / 2].to_vec(), boxes(&p.suc));
        Ok(self.push(Rule::GL, vec![n], None, s))
    }

    /// Keeps the nodes reachable from `root`, renumbered, with `root` last.
    pub fn finish(&self, root: usize) -> SequentProof {
        let mut keep = vec![false; root + 1];
        keep[root] = true;
        for i in (0..=root).rev() {
            if keep[i] {
                for &p in &self.nodes[i].premises {
                    keep[p] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; root + 1];
        let mut nodes = Vec::new();
        for i in 0..=root {
            if keep[i] {
                map[i] = nodes.len();
                let n = &self.nodes[i];
                nodes.push(ProofNode {
                    rule: n.rule,
                    premises: n.premises.iter().map(|&p| map[p]).collect(),
                    sequent: n.sequent.clone(),
                });
            }
        }
        SequentProof {
            calculus: self.calculus,
            nodes,
        }
    }
}
