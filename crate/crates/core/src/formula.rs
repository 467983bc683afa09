//! Formulas over the four propositional languages, their extended-atom
//! variants, sequents and the syntactic predicates used everywhere else.
//!
//! Text syntax (bit-exact round trip):
//! `true false (atom n) (ext f) (not f) (and a b) (or a b) (imp a b) (box f)
//! (bigand f ...) (bigor f ...)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sexpr::{self, Sexp};

pub type AtomId = u32;

// Equality below is structural with a pointer shortcut, so it agrees with the derived hash.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Debug, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Atom(AtomId),
    /// Extended atom `⟨φ⟩`; `⟨□φ⟩` is `Ext(Box(φ))`.
    Ext(Arc<Formula>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    BigAnd(Arc<[Formula]>),
    BigOr(Arc<[Formula]>),
}

fn arc_eq(a: &Arc<Formula>, b: &Arc<Formula>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        use Formula as F;
        match (self, other) {
            (F::Top, F::Top) | (F::Bot, F::Bot) => true,
            (F::Atom(a), F::Atom(b)) => a == b,
            (F::Ext(a), F::Ext(b)) | (F::Not(a), F::Not(b)) | (F::Box(a), F::Box(b)) => {
                arc_eq(a, b)
            }
            (F::And(a, b), F::And(c, d))
            | (F::Or(a, b), F::Or(c, d))
            | (F::Imp(a, b), F::Imp(c, d)) => arc_eq(a, c) && arc_eq(b, d),
            (F::BigAnd(a), F::BigAnd(b)) | (F::BigOr(a), F::BigOr(b)) => {
                Arc::ptr_eq(a, b) || a[..] == b[..]
            }
            _ => false,
        }
    }
}

impl Eq for Formula {}

/// The base languages a formula may live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Language {
    /// `{⊤, ⊥, ∧, ∨, ¬}`
    Lb,
    /// `{⊤, ⊥, ⋀, ⋁, ¬}`
    Lbu,
    /// `{⊤, ⊥, ∧, ∨, →}`
    Lp,
    /// `L_p ∪ {□}`
    Lbox,
}

/// Connectives occurring in a formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Features {
    pub not: bool,
    pub binary: bool,
    pub imp: bool,
    pub big: bool,
    pub modal: bool,
    pub ext: bool,
}

impl Features {
    pub fn fits(&self, lang: Language) -> bool {
        match lang {
            Language::Lb => !self.imp && !self.big && !self.modal,
            Language::Lbu => !self.imp && !self.binary && !self.modal,
            Language::Lp => !self.not && !self.big && !self.modal,
            Language::Lbox => !self.not && !self.big,
        }
    }

    fn merge(&mut self, o: Features) {
        self.not |= o.not;
        self.binary |= o.binary;
        self.imp |= o.imp;
        self.big |= o.big;
        self.modal |= o.modal;
        self.ext |= o.ext;
    }
}

impl Formula {
    pub fn atom(id: AtomId) -> Self {
        Formula::Atom(id)
    }
    pub fn ext(f: Formula) -> Self {
        Formula::Ext(Arc::new(f))
    }
    pub fn not(f: Formula) -> Self {
        Formula::Not(Arc::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Arc::new(a), Arc::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Arc::new(a), Arc::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }
    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Arc::new(f))
    }
    /// `¬φ := φ → ⊥`, the negation of `L_p` and `L_□`.
    pub fn neg(f: Formula) -> Self {
        Formula::imp(f, Formula::Bot)
    }
    /// `⊡φ := □φ ∧ φ`.
    pub fn boxdot(f: Formula) -> Self {
        Formula::and(Formula::boxed(f.clone()), f)
    }

    /// Unbounded conjunction. Panics on an empty child list.
    pub fn big_and(children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "big conjunction needs a child");
        Formula::BigAnd(children.into())
    }

    /// Unbounded disjunction. Panics on an empty child list.
    pub fn big_or(children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "big disjunction needs a child");
        Formula::BigOr(children.into())
    }

    /// Right-nested binary conjunction; `⊤` for an empty list.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        let v: Vec<Formula> = items.into_iter().collect();
        let mut it = v.into_iter().rev();
        match it.next() {
            None => Formula::Top,
            Some(last) => it.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-nested binary disjunction; `⊥` for an empty list.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        let v: Vec<Formula> = items.into_iter().collect();
        let mut it = v.into_iter().rev();
        match it.next() {
            None => Formula::Bot,
            Some(last) => it.fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Atom or extended atom.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Ext(_))
    }

    /// `p` or `¬p` over a plain atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(g) => g.is_atom(),
            _ => false,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => vec![],
            Formula::Not(a) | Formula::Box(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
            Formula::BigAnd(v) | Formula::BigOr(v) => v.iter().collect(),
        }
    }

    pub fn features(&self) -> Features {
        let mut out = Features::default();
        let mut seen = HashSet::new();
        self.features_into(&mut out, &mut seen);
        out
    }

    fn features_into(&self, out: &mut Features, seen: &mut HashSet<*const Formula>) {
        let mut here = Features::default();
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => {}
            Formula::Ext(inner) => {
                here.ext = true;
                // The wrapped formula is part of the atom's name; a boxed name marks
                // the modal extension.
                if matches!(**inner, Formula::Box(_)) {
                    here.modal = true;
                }
            }
            Formula::Not(_) => here.not = true,
            Formula::And(..) | Formula::Or(..) => here.binary = true,
            Formula::Imp(..) => here.imp = true,
            Formula::Box(_) => here.modal = true,
            Formula::BigAnd(_) | Formula::BigOr(_) => here.big = true,
        }
        out.merge(here);
        if let Formula::Ext(_) = self {
            return;
        }
        for c in self.children() {
            if seen.insert(c as *const Formula) {
                c.features_into(out, seen);
            }
        }
    }

    /// Smallest of `L_b, L_b^u, L_p, L_□` containing the formula, if any.
    pub fn language(&self) -> Option<Language> {
        let f = self.features();
        [Language::Lb, Language::Lbu, Language::Lp, Language::Lbox]
            .into_iter()
            .find(|l| f.fits(*l))
    }

    /// `V(φ)`: plain atoms, excluding those hidden inside extended atoms.
    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        self.atoms_into(&mut out, &mut seen);
        out
    }

    pub(crate) fn atoms_into(&self, out: &mut BTreeSet<AtomId>, seen: &mut HashSet<*const Formula>) {
        match self {
            Formula::Atom(a) => {
                out.insert(*a);
            }
            Formula::Ext(_) => {}
            _ => {
                for c in self.children() {
                    if seen.insert(c as *const Formula) {
                        c.atoms_into(out, seen);
                    }
                }
            }
        }
    }

    /// Extended atoms occurring in the formula.
    pub fn ext_atoms(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        self.ext_into(&mut out, &mut seen);
        out
    }

    fn ext_into(&self, out: &mut BTreeSet<Formula>, seen: &mut HashSet<*const Formula>) {
        match self {
            Formula::Ext(_) => {
                out.insert(self.clone());
            }
            _ => {
                for c in self.children() {
                    if seen.insert(c as *const Formula) {
                        c.ext_into(out, seen);
                    }
                }
            }
        }
    }

    /// Number of symbols; an extended atom counts as one.
    pub fn size(&self) -> u64 {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => 1,
            _ => self
                .children()
                .iter()
                .fold(1u64, |acc, c| acc.saturating_add(c.size())),
        }
    }

    /// Count of connectives (everything except atoms and constants).
    pub fn connectives(&self) -> u64 {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => 0,
            _ => self
                .children()
                .iter()
                .fold(1u64, |acc, c| acc.saturating_add(c.connectives())),
        }
    }

    /// `dp(φ)`: atoms and constants 0, negation transparent, every other
    /// connective adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => 0,
            Formula::Not(a) => a.depth(),
            _ => 1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// Classical value under `a`; fails on `□`, extended atoms and unassigned atoms.
    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        Ok(match self {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Atom(p) => a
                .get(*p)
                .ok_or_else(|| Error::Eval(format!("atom {p} is not assigned")))?,
            Formula::Ext(_) => return Err(Error::Eval("extended atom in classical evaluation".into())),
            Formula::Box(_) => return Err(Error::Eval("modal formula in classical evaluation".into())),
            Formula::Not(g) => !g.eval(a)?,
            Formula::And(x, y) => x.eval(a)? & y.eval(a)?,
            Formula::Or(x, y) => x.eval(a)? | y.eval(a)?,
            Formula::Imp(x, y) => !x.eval(a)? | y.eval(a)?,
            Formula::BigAnd(v) => {
                let mut r = true;
                for c in v.iter() {
                    r &= c.eval(a)?;
                }
                r
            }
            Formula::BigOr(v) => {
                let mut r = false;
                for c in v.iter() {
                    r |= c.eval(a)?;
                }
                r
            }
        })
    }

    /// Negation normal form. Implications are rewritten classically, `¬⊤`
    /// and `¬⊥` become `⊥` and `⊤`; extended atoms are left in place.
    pub fn to_nnf(&self) -> Result<Formula> {
        self.nnf(true)
    }

    fn nnf(&self, pos: bool) -> Result<Formula> {
        use Formula as F;
        Ok(match self {
            F::Top => if pos { F::Top } else { F::Bot },
            F::Bot => if pos { F::Bot } else { F::Top },
            F::Atom(_) | F::Ext(_) => {
                if pos {
                    self.clone()
                } else {
                    F::not(self.clone())
                }
            }
            F::Not(g) => g.nnf(!pos)?,
            F::And(a, b) => {
                if pos {
                    F::and(a.nnf(true)?, b.nnf(true)?)
                } else {
                    F::or(a.nnf(false)?, b.nnf(false)?)
                }
            }
            F::Or(a, b) => {
                if pos {
                    F::or(a.nnf(true)?, b.nnf(true)?)
                } else {
                    F::and(a.nnf(false)?, b.nnf(false)?)
                }
            }
            F::Imp(a, b) => {
                if pos {
                    F::or(a.nnf(false)?, b.nnf(true)?)
                } else {
                    F::and(a.nnf(true)?, b.nnf(false)?)
                }
            }
            F::BigAnd(v) => {
                let kids = v.iter().map(|c| c.nnf(pos)).collect::<Result<Vec<_>>>()?;
                if pos {
                    F::big_and(kids)
                } else {
                    F::big_or(kids)
                }
            }
            F::BigOr(v) => {
                let kids = v.iter().map(|c| c.nnf(pos)).collect::<Result<Vec<_>>>()?;
                if pos {
                    F::big_or(kids)
                } else {
                    F::big_and(kids)
                }
            }
            F::Box(_) => return Err(Error::pre("negation normal form of a modal formula")),
        })
    }

    /// Negation only on atoms, `⊤` and `⊥`; no implication and no `□`.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => true,
            Formula::Not(g) => matches!(**g, Formula::Atom(_) | Formula::Top | Formula::Bot | Formula::Ext(_)),
            Formula::Imp(..) | Formula::Box(_) => false,
            _ => self.children().iter().all(|c| c.is_nnf()),
        }
    }

    /// True when `¬p` does not occur in the negation normal form for any `p ∈ set`.
    pub fn is_monotone_in(&self, set: &BTreeSet<AtomId>) -> bool {
        self.polarity_ok(true, set)
    }

    fn polarity_ok(&self, pos: bool, set: &BTreeSet<AtomId>) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Ext(_) => true,
            Formula::Atom(p) => pos || !set.contains(p),
            Formula::Not(g) => g.polarity_ok(!pos, set),
            Formula::Imp(a, b) => a.polarity_ok(!pos, set) && b.polarity_ok(pos, set),
            _ => self.children().iter().all(|c| c.polarity_ok(pos, set)),
        }
    }

    /// Literal reading: contains no negation and no implication.
    pub fn is_monotone(&self) -> bool {
        match self {
            Formula::Not(_) | Formula::Imp(..) => false,
            Formula::Ext(_) => true,
            _ => self.children().iter().all(|c| c.is_monotone()),
        }
    }

    /// The standard substitution `s`: every `⟨φ⟩` becomes `φ`.
    pub fn standard_substitute(&self) -> Formula {
        let mut memo = HashMap::new();
        self.subst_ext(&mut memo)
    }

    fn subst_ext(&self, memo: &mut HashMap<*const Formula, Formula>) -> Formula {
        let key = self as *const Formula;
        if let Some(f) = memo.get(&key) {
            return f.clone();
        }
        let out = match self {
            Formula::Ext(inner) => inner.subst_ext(memo),
            _ => self.map_children(|c| c.subst_ext(memo)),
        };
        memo.insert(key, out.clone());
        out
    }

    /// Rebuilds the node with each child replaced by `f(child)`.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) | Formula::Ext(_) => self.clone(),
            Formula::Not(a) => Formula::not(f(a)),
            Formula::Box(a) => Formula::boxed(f(a)),
            Formula::And(a, b) => Formula::and(f(a), f(b)),
            Formula::Or(a, b) => Formula::or(f(a), f(b)),
            Formula::Imp(a, b) => Formula::imp(f(a), f(b)),
            Formula::BigAnd(v) => Formula::big_and(v.iter().map(&mut f).collect()),
            Formula::BigOr(v) => Formula::big_or(v.iter().map(&mut f).collect()),
        }
    }

    /// Replaces plain atoms according to `map`; unmapped atoms stay.
    pub fn substitute(&self, map: &BTreeMap<AtomId, Formula>) -> Formula {
        match self {
            Formula::Atom(p) => map.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Ext(_) => self.clone(),
            _ => self.map_children(|c| c.substitute(map)),
        }
    }

    /// Rewrites into the implicational language: `¬φ` becomes `φ → ⊥` and big
    /// connectives become right-nested binary ones.
    pub fn to_lp(&self) -> Formula {
        match self {
            Formula::Not(a) => Formula::neg(a.to_lp()),
            Formula::BigAnd(v) => Formula::conj(v.iter().map(|c| c.to_lp())),
            Formula::BigOr(v) => Formula::disj(v.iter().map(|c| c.to_lp())),
            Formula::Ext(_) => self.clone(),
            _ => self.map_children(|c| c.to_lp()),
        }
    }

    /// `⊤`/`⊥` absorption. A big connective left with one child keeps it.
    pub fn fold_constants(&self) -> Formula {
        use Formula as F;
        match self {
            F::Top | F::Bot | F::Atom(_) | F::Ext(_) => self.clone(),
            F::Not(a) => match a.fold_constants() {
                F::Top => F::Bot,
                F::Bot => F::Top,
                g => F::not(g),
            },
            F::Box(a) => F::boxed(a.fold_constants()),
            F::And(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (F::Bot, _) | (_, F::Bot) => F::Bot,
                (F::Top, g) | (g, F::Top) => g,
                (x, y) => F::and(x, y),
            },
            F::Or(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (F::Top, _) | (_, F::Top) => F::Top,
                (F::Bot, g) | (g, F::Bot) => g,
                (x, y) => F::or(x, y),
            },
            F::Imp(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (F::Bot, _) | (_, F::Top) => F::Top,
                (F::Top, g) => g,
                (x, y) => F::imp(x, y),
            },
            F::BigAnd(v) => {
                let mut kids = Vec::new();
                for c in v.iter() {
                    match c.fold_constants() {
                        F::Top => {}
                        F::Bot => return F::Bot,
                        g => kids.push(g),
                    }
                }
                if kids.is_empty() {
                    F::Top
                } else {
                    F::big_and(kids)
                }
            }
            F::BigOr(v) => {
                let mut kids = Vec::new();
                for c in v.iter() {
                    match c.fold_constants() {
                        F::Bot => {}
                        F::Top => return F::Top,
                        g => kids.push(g),
                    }
                }
                if kids.is_empty() {
                    F::Bot
                } else {
                    F::big_or(kids)
                }
            }
        }
    }

    /// Canonical s-expression text.
    pub fn to_sexpr(&self) -> String {
        let mut s = String::new();
        self.write_sexpr(&mut s);
        s
    }

    fn write_sexpr(&self, s: &mut String) {
        use std::fmt::Write;
        match self {
            Formula::Top => s.push_str("true"),
            Formula::Bot => s.push_str("false"),
            Formula::Atom(p) => {
                let _ = write!(s, "(atom {p})");
            }
            _ => {
                let head = match self {
                    Formula::Ext(_) => "ext",
                    Formula::Not(_) => "not",
                    Formula::And(..) => "and",
                    Formula::Or(..) => "or",
                    Formula::Imp(..) => "imp",
                    Formula::Box(_) => "box",
                    Formula::BigAnd(_) => "bigand",
                    Formula::BigOr(_) => "bigor",
                    _ => unreachable!(),
                };
                s.push('(');
                s.push_str(head);
                let kids: Vec<&Formula> = match self {
                    Formula::Ext(a) => vec![a],
                    _ => self.children(),
                };
                for c in kids {
                    s.push(' ');
                    c.write_sexpr(s);
                }
                s.push(')');
            }
        }
    }

    /// Parses the s-expression syntax.
    pub fn parse(text: &str) -> Result<Formula> {
        Formula::from_sexp(&sexpr::parse_one(text)?)
    }

    pub fn from_sexp(e: &Sexp) -> Result<Formula> {
        if let Some(t) = e.token() {
            return match t {
                "true" => Ok(Formula::Top),
                "false" => Ok(Formula::Bot),
                _ => Err(Error::parse(e.pos(), format!("unknown token '{t}'"))),
            };
        }
        let (head, rest) = e
            .head()
            .ok_or_else(|| Error::parse(e.pos(), "expected a connective"))?;
        let arity = |n: usize| -> Result<()> {
            if rest.len() == n {
                Ok(())
            } else {
                Err(Error::parse(
                    e.pos(),
                    format!("'{head}' takes {n} argument(s), got {}", rest.len()),
                ))
            }
        };
        let sub = |i: usize| Formula::from_sexp(&rest[i]);
        match head {
            "atom" => {
                arity(1)?;
                let t = rest[0]
                    .token()
                    .ok_or_else(|| Error::parse(rest[0].pos(), "atom id expected"))?;
                if t.len() > 1 && t.starts_with('0') {
                    return Err(Error::parse(rest[0].pos(), "atom id with leading zero"));
                }
                let id: AtomId = t
                    .parse()
                    .map_err(|_| Error::parse(rest[0].pos(), format!("bad atom id '{t}'")))?;
                if id == 0 {
                    return Err(Error::parse(rest[0].pos(), "atom ids start at 1"));
                }
                Ok(Formula::Atom(id))
            }
            "ext" => {
                arity(1)?;
                Ok(Formula::ext(sub(0)?))
            }
            "not" => {
                arity(1)?;
                Ok(Formula::not(sub(0)?))
            }
            "box" => {
                arity(1)?;
                Ok(Formula::boxed(sub(0)?))
            }
            "and" | "or" | "imp" => {
                arity(2)?;
                let (a, b) = (sub(0)?, sub(1)?);
                Ok(match head {
                    "and" => Formula::and(a, b),
                    "or" => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                })
            }
            "bigand" | "bigor" => {
                if rest.is_empty() {
                    return Err(Error::parse(e.pos(), format!("'{head}' needs at least one child")));
                }
                let kids = rest.iter().map(Formula::from_sexp).collect::<Result<Vec<_>>>()?;
                Ok(if head == "bigand" {
                    Formula::big_and(kids)
                } else {
                    Formula::big_or(kids)
                })
            }
            _ => Err(Error::parse(e.pos(), format!("unknown connective '{head}'"))),
        }
    }
}

impl fmt::Display for Formula {
    /// Human-readable rendering; atoms print as `p<id>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => write!(f, "⊤"),
            Formula::Bot => write!(f, "⊥"),
            Formula::Atom(p) => write!(f, "p{p}"),
            Formula::Ext(a) => write!(f, "⟨{a}⟩"),
            Formula::Not(a) => write!(f, "¬{}", Paren(a)),
            Formula::Box(a) => write!(f, "□{}", Paren(a)),
            Formula::And(a, b) => write!(f, "{} ∧ {}", Paren(a), Paren(b)),
            Formula::Or(a, b) => write!(f, "{} ∨ {}", Paren(a), Paren(b)),
            Formula::Imp(a, b) => write!(f, "{} → {}", Paren(a), Paren(b)),
            Formula::BigAnd(v) | Formula::BigOr(v) => {
                let sym = if matches!(self, Formula::BigAnd(_)) { "⋀" } else { "⋁" };
                write!(f, "{sym}(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Paren<'a>(&'a Formula);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => write!(f, "({})", self.0),
            g => write!(f, "{g}"),
        }
    }
}

/// Total map from atoms to bits over the atoms it covers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<AtomId, bool>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    /// Assigns bit `i` of `bits` to the `i`-th atom of `atoms`.
    pub fn from_bits(atoms: &[AtomId], bits: u64) -> Self {
        Assignment(
            atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (*a, (bits >> i) & 1 == 1))
                .collect(),
        )
    }

    pub fn set(&mut self, atom: AtomId, v: bool) {
        self.0.insert(atom, v);
    }

    pub fn get(&self, atom: AtomId) -> Option<bool> {
        self.0.get(&atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, bool)> + '_ {
        self.0.iter().map(|(a, b)| (*a, *b))
    }
}

impl FromIterator<(AtomId, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (AtomId, bool)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// `Γ ⇒ Δ` over sequences of formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub ant: Vec<Formula>,
    pub suc: Vec<Formula>,
}

impl Sequent {
    pub fn new(ant: Vec<Formula>, suc: Vec<Formula>) -> Self {
        Sequent { ant, suc }
    }

    pub fn is_single_conclusion(&self) -> bool {
        self.suc.len() <= 1
    }

    /// `⋀Γ → ⋁Δ` with binary connectives.
    pub fn as_formula(&self) -> Formula {
        Formula::imp(
            Formula::conj(self.ant.iter().cloned()),
            Formula::disj(self.suc.iter().cloned()),
        )
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        for f in self.ant.iter().chain(self.suc.iter()) {
            f.atoms_into(&mut out, &mut seen);
        }
        out
    }

    /// Symbols in the sequent: formula sizes plus one for the arrow.
    pub fn size(&self) -> u64 {
        self.ant
            .iter()
            .chain(self.suc.iter())
            .fold(1u64, |acc, f| acc.saturating_add(f.size()))
    }

    /// `f1 f2 => g1 g2` with canonical formula text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.ant {
            s.push_str(&f.to_sexpr());
            s.push(' ');
        }
        s.push_str("=>");
        for f in &self.suc {
            s.push(' ');
            s.push_str(&f.to_sexpr());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Sequent> {
        Sequent::parse_at(text, 0)
    }

    pub(crate) fn parse_at(text: &str, offset: usize) -> Result<Sequent> {
        let arrow = text
            .find("=>")
            .ok_or_else(|| Error::parse(offset, "sequent needs '=>'"))?;
        if text[arrow + 2..].contains("=>") {
            return Err(Error::parse(offset + arrow, "sequent has two arrows"));
        }
        let side = |s: &str, off: usize| -> Result<Vec<Formula>> {
            sexpr::parse_all_at(s, off)?
                .iter()
                .map(Formula::from_sexp)
                .collect()
        };
        Ok(Sequent {
            ant: side(&text[..arrow], offset)?,
            suc: side(&text[arrow + 2..], offset + arrow + 2)?,
        })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Formula]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let a = join(&self.ant);
        let s = join(&self.suc);
        match (a.is_empty(), s.is_empty()) {
            (true, true) => write!(f, "⇒"),
            (true, false) => write!(f, "⇒ {s}"),
            (false, true) => write!(f, "{a} ⇒"),
            (false, false) => write!(f, "{a} ⇒ {s}"),
        }
    }
}

/// Structured atom name such as `p_{1,2}` or `q_{3,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomName {
    pub symbol: String,
    pub index: Vec<u32>,
}

impl AtomName {
    pub fn new(symbol: &str, index: &[u32]) -> Self {
        AtomName {
            symbol: symbol.to_string(),
            index: index.to_vec(),
        }
    }
}

impl std::str::FromStr for AtomName {
    type Err = Error;

    /// Reads `sym` or `sym(i,j,...)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("bad atom name '{s}'"));
        let (symbol, rest) = match s.find('(') {
            None => (s, None),
            Some(i) => (&s[..i], Some(&s[i..])),
        };
        if symbol.is_empty() || symbol.contains([')', ',', ' ']) {
            return Err(bad());
        }
        let index = match rest {
            None => Vec::new(),
            Some(r) => {
                let inner = r.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                inner
                    .split(',')
                    .map(|t| {
                        if t.len() > 1 && t.starts_with('0') {
                            return Err(bad());
                        }
                        t.parse::<u32>().map_err(|_| bad())
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(AtomName {
            symbol: symbol.to_string(),
            index,
        })
    }
}

impl fmt::Display for AtomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if !self.index.is_empty() {
            let parts: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Deterministic numbering of structured names: sorted lexicographically,
/// ids `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<AtomName>,
    lookup: HashMap<AtomName, AtomId>,
}

impl AtomTable {
    pub fn from_names(names: impl IntoIterator<Item = AtomName>) -> Self {
        let mut v: Vec<AtomName> = names.into_iter().collect();
        v.sort();
        v.dedup();
        let lookup = v
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as AtomId + 1))
            .collect();
        AtomTable { names: v, lookup }
    }

    /// Keeps the given order: the `i`-th name gets id `i + 1`.
    pub fn from_ordered(names: Vec<AtomName>) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if lookup.insert(n.clone(), i as AtomId + 1).is_some() {
                return Err(Error::malformed(format!("atom name {n} listed twice")));
            }
        }
        Ok(AtomTable { names, lookup })
    }

    /// Appends names not yet present, giving them the next free ids in order.
    pub fn extend(&mut self, names: impl IntoIterator<Item = AtomName>) {
        for n in names {
            if !self.lookup.contains_key(&n) {
                self.names.push(n.clone());
                self.lookup.insert(n, self.names.len() as AtomId);
            }
        }
    }

    pub fn id(&self, name: &AtomName) -> Option<AtomId> {
        self.lookup.get(name).copied()
    }

    /// Id of `symbol(index)`; panics if the name is not in the table.
    pub fn get(&self, symbol: &str, index: &[u32]) -> AtomId {
        self.id(&AtomName::new(symbol, index))
            .unwrap_or_else(|| panic!("atom {symbol}{index:?} not in table"))
    }

    pub fn name(&self, id: AtomId) -> Option<&AtomName> {
        (id as usize).checked_sub(1).and_then(|i| self.names.get(i))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// `(id, name)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (AtomId, &AtomName)> {
        self.names.iter().enumerate().map(|(i, n)| (i as AtomId + 1, n))
    }

    /// Ids whose name has the given symbol.
    pub fn ids_with_symbol(&self, symbol: &str) -> BTreeSet<AtomId> {
        self.iter()
            .filter(|(_, n)| n.symbol == symbol)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Replaces every extended atom by a fresh plain atom so that classical
/// machinery can treat `⟨φ⟩` as an opaque variable.
#[derive(Clone, Debug, Default)]
pub struct ExtAbstraction {
    next: AtomId,
    map: HashMap<Formula, AtomId>,
    back: BTreeMap<AtomId, Formula>,
}

impl ExtAbstraction {
    /// Fresh ids start above every plain atom in `context`.
    pub fn new<'a>(context: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut max = 0;
        for f in context {
            if let Some(m) = f.atoms().iter().next_back() {
                max = max.max(*m);
            }
            for e in f.ext_atoms() {
                if let Formula::Ext(inner) = &e {
                    if let Some(m) = inner.atoms().iter().next_back() {
                        max = max.max(*m);
                    }
                }
            }
        }
        ExtAbstraction {
            next: max + 1,
            map: HashMap::new(),
            back: BTreeMap::new(),
        }
    }

    pub fn atom_for(&mut self, ext: &Formula) -> AtomId {
        if let Some(a) = self.map.get(ext) {
            return *a;
        }
        let a = self.next;
        self.next += 1;
        self.map.insert(ext.clone(), a);
        self.back.insert(a, ext.clone());
        a
    }

    pub fn apply(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Ext(_) => Formula::Atom(self.atom_for(f)),
            _ => f.map_children(|c| self.apply(c)),
        }
    }

    /// The extended atom behind a fresh id.
    pub fn original(&self, a: AtomId) -> Option<&Formula> {
        self.back.get(&a)
    }
}
