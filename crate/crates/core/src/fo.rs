//! A small multi-sorted first-order language with equality over finite
//! domains, compiled to propositional formulas.
//!
//! Grammar:
//!
//! ```text
//! file     := decl* sentence
//! decl     := (rel NAME SORT*)
//! sentence := true | false | (rel NAME term*) | (= term term) | (not s)
//!           | (and s s+) | (or s s+) | (imp s s)
//!           | (forall (VAR SORT)+ s) | (exists (VAR SORT)+ s)
//! term     := VAR | c<k>
//! ```
//!
//! `c<k>` names domain element `k` (1-based). Relation atoms are numbered by
//! `(relation, tuple)` in lexicographic order over every tuple of the
//! interpretation, so ids do not depend on which atoms the sentence uses.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{AtomName, AtomTable, Formula};
use crate::sexpr::{self, Sexp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    True,
    False,
    Rel { name: String, args: Vec<Term> },
    Eq(Term, Term),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Imp(Box<FoFormula>, Box<FoFormula>),
    Forall { var: String, sort: String, body: Box<FoFormula> },
    Exists { var: String, sort: String, body: Box<FoFormula> },
}

/// Relation symbols with their argument sorts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub relations: BTreeMap<String, Vec<String>>,
}

/// A closed, well-sorted sentence together with its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoSentence {
    pub signature: Signature,
    pub body: FoFormula,
}

/// Finite nonempty domain `{1..size}` for every sort.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub sizes: BTreeMap<String, u32>,
}

impl Interpretation {
    pub fn new(sizes: impl IntoIterator<Item = (&'static str, u32)>) -> Self {
        Interpretation {
            sizes: sizes.into_iter().map(|(s, n)| (s.to_string(), n)).collect(),
        }
    }

    pub fn size(&self, sort: &str) -> Result<u32> {
        match self.sizes.get(sort) {
            None => Err(Error::pre(format!("sort '{sort}' has no domain"))),
            Some(0) => Err(Error::pre(format!("sort '{sort}' has an empty domain"))),
            Some(n) => Ok(*n),
        }
    }
}

/// Parses declarations followed by exactly one sentence.
pub fn parse_sentence(text: &str) -> Result<FoSentence> {
    let items = sexpr::parse_all(text)?;
    let (body, decls) = items
        .split_last()
        .ok_or_else(|| Error::parse(text.len(), "no sentence"))?;
    let mut sig = Signature::default();
    for e in decls {
        match e.head() {
            Some(("rel", rest)) if !rest.is_empty() && rest.iter().all(|s| s.token().is_some()) => {
                let name = rest[0].token().unwrap().to_string();
                let sorts = rest[1..]
                    .iter()
                    .map(|s| s.token().unwrap().to_string())
                    .collect();
                if sig.relations.insert(name.clone(), sorts).is_some() {
                    return Err(Error::parse(e.pos(), format!("relation '{name}' declared twice")));
                }
            }
            _ => return Err(Error::parse(e.pos(), "expected (rel NAME SORT*) before the sentence")),
        }
    }
    let mut scope = Vec::new();
    let f = parse_formula(body, &sig, &mut scope)?;
    Ok(FoSentence { signature: sig, body: f })
}

fn parse_term(e: &Sexp, scope: &[(String, String)]) -> Result<(Term, Option<String>)> {
    let t = e
        .token()
        .ok_or_else(|| Error::parse(e.pos(), "expected a term"))?;
    if let Some((_, sort)) = scope.iter().rev().find(|(v, _)| v == t) {
        return Ok((Term::Var(t.to_string()), Some(sort.clone())));
    }
    if let Some(k) = t.strip_prefix('c') {
        if !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) && !k.starts_with('0') {
            let v: u32 = k
                .parse()
                .map_err(|_| Error::parse(e.pos(), format!("constant '{t}' out of range")))?;
            return Ok((Term::Const(v), None));
        }
    }
    Err(Error::parse(e.pos(), format!("unbound variable '{t}'")))
}

fn parse_formula(e: &Sexp, sig: &Signature, scope: &mut Vec<(String, String)>) -> Result<FoFormula> {
    if let Some(t) = e.token() {
        return match t {
            "true" => Ok(FoFormula::True),
            "false" => Ok(FoFormula::False),
            _ => Err(Error::parse(e.pos(), format!("unexpected token '{t}'"))),
        };
    }
    let (head, rest) = e
        .head()
        .ok_or_else(|| Error::parse(e.pos(), "expected a connective"))?;
    match head {
        "rel" => {
            let name = rest
                .first()
                .and_then(|s| s.token())
                .ok_or_else(|| Error::parse(e.pos(), "relation name expected"))?;
            let sorts = sig
                .relations
                .get(name)
                .ok_or_else(|| Error::parse(rest[0].pos(), format!("unknown relation '{name}'")))?;
            if sorts.len() != rest.len() - 1 {
                return Err(Error::parse(
                    e.pos(),
                    format!("relation '{name}' takes {} argument(s), got {}", sorts.len(), rest.len() - 1),
                ));
            }
            let mut args = Vec::new();
            for (a, want) in rest[1..].iter().zip(sorts) {
                let (t, sort) = parse_term(a, scope)?;
                if let Some(s) = sort {
                    if &s != want {
                        return Err(Error::parse(
                            a.pos(),
                            format!("variable of sort '{s}' where '{want}' is expected"),
                        ));
                    }
                }
                args.push(t);
            }
            Ok(FoFormula::Rel {
                name: name.to_string(),
                args,
            })
        }
        "=" => {
            if rest.len() != 2 {
                return Err(Error::parse(e.pos(), "'=' takes two terms"));
            }
            let (a, sa) = parse_term(&rest[0], scope)?;
            let (b, sb) = parse_term(&rest[1], scope)?;
            if let (Some(x), Some(y)) = (&sa, &sb) {
                if x != y {
                    return Err(Error::parse(e.pos(), format!("equality between sorts '{x}' and '{y}'")));
                }
            }
            Ok(FoFormula::Eq(a, b))
        }
        "not" => {
            if rest.len() != 1 {
                return Err(Error::parse(e.pos(), "'not' takes one argument"));
            }
            Ok(FoFormula::Not(Box::new(parse_formula(&rest[0], sig, scope)?)))
        }
        "and" | "or" => {
            if rest.len() < 2 {
                return Err(Error::parse(e.pos(), format!("'{head}' takes at least two arguments")));
            }
            let mut parts = rest
                .iter()
                .map(|r| parse_formula(r, sig, scope))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = parts.pop().unwrap();
            while let Some(f) = parts.pop() {
                acc = if head == "and" {
                    FoFormula::And(Box::new(f), Box::new(acc))
                } else {
                    FoFormula::Or(Box::new(f), Box::new(acc))
                };
            }
            Ok(acc)
        }
        "imp" => {
            if rest.len() != 2 {
                return Err(Error::parse(e.pos(), "'imp' takes two arguments"));
            }
            let a = parse_formula(&rest[0], sig, scope)?;
            let b = parse_formula(&rest[1], sig, scope)?;
            Ok(FoFormula::Imp(Box::new(a), Box::new(b)))
        }
        "forall" | "exists" => {
            if rest.len() < 2 {
                return Err(Error::parse(e.pos(), format!("'{head}' needs a binder and a body")));
            }
            let (body, binders) = rest.split_last().unwrap();
            let mut bound = Vec::new();
            for b in binders {
                let pair = b.list().filter(|l| l.len() == 2);
                let (v, s) = match pair.map(|l| (l[0].token(), l[1].token())) {
                    Some((Some(v), Some(s))) => (v, s),
                    _ => return Err(Error::parse(b.pos(), "binder must be (VAR SORT)")),
                };
                bound.push((v.to_string(), s.to_string()));
            }
            let depth = scope.len();
            scope.extend(bound.iter().cloned());
            let inner = parse_formula(body, sig, scope);
            scope.truncate(depth);
            let mut acc = inner?;
            for (var, sort) in bound.into_iter().rev() {
                let body = Box::new(acc);
                acc = if head == "forall" {
                    FoFormula::Forall { var, sort, body }
                } else {
                    FoFormula::Exists { var, sort, body }
                };
            }
            Ok(acc)
        }
        _ => Err(Error::parse(e.pos(), format!("unknown connective '{head}'"))),
    }
}

impl FoSentence {
    /// Atom table over every `(relation, tuple)` of the interpretation.
    pub fn atom_table(&self, interp: &Interpretation) -> Result<AtomTable> {
        let mut names = Vec::new();
        for (name, sorts) in &self.signature.relations {
            let sizes = sorts
                .iter()
                .map(|s| interp.size(s))
                .collect::<Result<Vec<_>>>()?;
            for_each_tuple(&sizes, |t| names.push(AtomName::new(name, t)));
        }
        Ok(AtomTable::from_names(names))
    }

    /// `⟦s⟧` under `interp`, with the atom table used for numbering.
    pub fn translate(&self, interp: &Interpretation) -> Result<(Formula, AtomTable)> {
        let table = self.atom_table(interp)?;
        let mut env: Vec<(String, u32)> = Vec::new();
        let f = translate_rec(&self.body, self, interp, &table, &mut env)?;
        Ok((f, table))
    }

    /// `⟦s⟧` followed by the canonical simplification used for comparisons:
    /// constant absorption, then negation normal form, then absorption again.
    pub fn translate_folded(&self, interp: &Interpretation) -> Result<(Formula, AtomTable)> {
        let (f, t) = self.translate(interp)?;
        Ok((fold_canonical(&f)?, t))
    }

    /// `⟦s⟧_n` for each `n`, with domain sizes given by `sizes(sort, n)`.
    pub fn family(
        &self,
        sizes: &dyn Fn(&str, u32) -> u32,
        ns: impl IntoIterator<Item = u32>,
        fold: bool,
    ) -> Result<Vec<(u32, Formula, AtomTable)>> {
        let mut sorts: Vec<&String> = self.signature.relations.values().flatten().collect();
        collect_sorts(&self.body, &mut sorts);
        sorts.sort();
        sorts.dedup();
        let mut out = Vec::new();
        for n in ns {
            let interp = Interpretation {
                sizes: sorts.iter().map(|s| ((*s).clone(), sizes(s, n))).collect(),
            };
            let (f, t) = if fold {
                self.translate_folded(&interp)?
            } else {
                self.translate(&interp)?
            };
            out.push((n, f, t));
        }
        Ok(out)
    }
}

/// Constant absorption, negation normal form, absorption.
pub fn fold_canonical(f: &Formula) -> Result<Formula> {
    Ok(f.fold_constants().to_nnf()?.fold_constants())
}

fn collect_sorts<'a>(f: &'a FoFormula, out: &mut Vec<&'a String>) {
    match f {
        FoFormula::Forall { sort, body, .. } | FoFormula::Exists { sort, body, .. } => {
            out.push(sort);
            collect_sorts(body, out);
        }
        FoFormula::Not(a) => collect_sorts(a, out),
        FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Imp(a, b) => {
            collect_sorts(a, out);
            collect_sorts(b, out);
        }
        _ => {}
    }
}

/// Calls `f` on every tuple in `{1..s_1} × … × {1..s_k}` in lexicographic order.
pub fn for_each_tuple(sizes: &[u32], mut f: impl FnMut(&[u32])) {
    if sizes.contains(&0) {
        return;
    }
    let mut t: Vec<u32> = vec![1; sizes.len()];
    loop {
        f(&t);
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if t[i] < sizes[i] {
                t[i] += 1;
                for x in t.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

fn resolve(t: &Term, env: &[(String, u32)]) -> u32 {
    match t {
        Term::Const(k) => *k,
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|(_, k)| *k)
            .expect("parser rejects unbound variables"),
    }
}

fn translate_rec(
    f: &FoFormula,
    s: &FoSentence,
    interp: &Interpretation,
    table: &AtomTable,
    env: &mut Vec<(String, u32)>,
) -> Result<Formula> {
    Ok(match f {
        FoFormula::True => Formula::Top,
        FoFormula::False => Formula::Bot,
        FoFormula::Eq(a, b) => {
            if resolve(a, env) == resolve(b, env) {
                Formula::Top
            } else {
                Formula::Bot
            }
        }
        FoFormula::Rel { name, args } => {
            let sorts = &s.signature.relations[name];
            let tuple: Vec<u32> = args.iter().map(|a| resolve(a, env)).collect();
            for (k, sort) in tuple.iter().zip(sorts) {
                if *k > interp.size(sort)? {
                    return Err(Error::pre(format!("constant c{k} outside the domain of '{sort}'")));
                }
            }
            Formula::Atom(
                table
                    .id(&AtomName::new(name, &tuple))
                    .expect("table covers every tuple"),
            )
        }
        FoFormula::Not(a) => Formula::not(translate_rec(a, s, interp, table, env)?),
        FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Imp(a, b) => {
            let x = translate_rec(a, s, interp, table, env)?;
            let y = translate_rec(b, s, interp, table, env)?;
            match f {
                FoFormula::And(..) => Formula::and(x, y),
                FoFormula::Or(..) => Formula::or(x, y),
                _ => Formula::imp(x, y),
            }
        }
        FoFormula::Forall { var, sort, body } | FoFormula::Exists { var, sort, body } => {
            let n = interp.size(sort)?;
            let mut kids = Vec::with_capacity(n as usize);
            for k in 1..=n {
                env.push((var.clone(), k));
                let r = translate_rec(body, s, interp, table, env);
                env.pop();
                kids.push(r?);
            }
            if matches!(f, FoFormula::Forall { .. }) {
                Formula::BigAnd(Arc::from(kids))
            } else {
                Formula::BigOr(Arc::from(kids))
            }
        }
    })
}
