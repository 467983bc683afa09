//! Implicational Horn formulas and the forward-chaining circuit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::circuit::{Circuit, CircuitBuilder};
use crate::error::{Error, Result};
use crate::formula::Formula;

/// `a`, or `p₁ ∧ … ∧ p_k → a` with `k ≥ 1`. Atoms are plain or extended.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornFormula {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl HornFormula {
    pub fn fact(a: Formula) -> Result<Self> {
        HornFormula::new(vec![], a)
    }

    /// Empty `premises` gives the atom form.
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Result<Self> {
        if let Some(f) = premises.iter().chain([&conclusion]).find(|f| !is_horn_atom(f)) {
            return Err(Error::pre(format!("{f} is not an atom")));
        }
        Ok(HornFormula { premises, conclusion })
    }

    pub fn is_fact(&self) -> bool {
        self.premises.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        if self.premises.is_empty() {
            self.conclusion.clone()
        } else {
            Formula::imp(Formula::conj(self.premises.iter().cloned()), self.conclusion.clone())
        }
    }

    pub fn size(&self) -> u64 {
        self.to_formula().size()
    }
}

impl fmt::Display for HornFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

pub(crate) fn is_horn_atom(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_) | Formula::Ext(_))
}

/// Least model of `gamma` plus the facts `extra`.
pub fn horn_closure<'a>(gamma: &'a [HornFormula], extra: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    let mut known: BTreeSet<Formula> = extra.into_iter().cloned().collect();
    known.extend(gamma.iter().filter(|h| h.is_fact()).map(|h| h.conclusion.clone()));
    loop {
        let mut grew = false;
        for h in gamma {
            if !known.contains(&h.conclusion) && h.premises.iter().all(|p| known.contains(p)) {
                known.insert(h.conclusion.clone());
                grew = true;
            }
        }
        if !grew {
            return known;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    False,
    True,
    Gate(u32),
}

fn or(b: &mut CircuitBuilder, x: Val, y: Val) -> Val {
    match (x, y) {
        (Val::True, _) | (_, Val::True) => Val::True,
        (Val::False, v) | (v, Val::False) => v,
        (Val::Gate(a), Val::Gate(c)) if a == c => x,
        (Val::Gate(a), Val::Gate(c)) => Val::Gate(b.or(a, c)),
    }
}

fn and(b: &mut CircuitBuilder, x: Val, y: Val) -> Val {
    match (x, y) {
        (Val::False, _) | (_, Val::False) => Val::False,
        (Val::True, v) | (v, Val::True) => v,
        (Val::Gate(a), Val::Gate(c)) if a == c => x,
        (Val::Gate(a), Val::Gate(c)) => Val::Gate(b.and(a, c)),
    }
}

fn lower(b: &mut CircuitBuilder, v: Val) -> u32 {
    match v {
        Val::False => b.bot(),
        Val::True => b.top(),
        Val::Gate(g) => g,
    }
}

/// Monotone `C(x₁..x_m)` with `C(ā) = 1` iff `Γ, {pᵢ : aᵢ = 1} ⇒ q` is valid.
///
/// Unrolled forward chaining for `|Γ|+1` rounds; a rule is re-evaluated only
/// in rounds after one of its premises changed.
pub fn horn_circuit(gamma: &[HornFormula], p: &[Formula], q: &Formula) -> Result<Circuit> {
    if let Some(f) = p.iter().chain([q]).find(|f| !is_horn_atom(f)) {
        return Err(Error::pre(format!("{f} is not an atom")));
    }
    let mut b = CircuitBuilder::new(p.len() as u32);
    let mut y: BTreeMap<&Formula, Val> = BTreeMap::new();
    for h in gamma {
        for a in h.premises.iter().chain([&h.conclusion]) {
            y.entry(a).or_insert(Val::False);
        }
        if h.is_fact() {
            y.insert(&h.conclusion, Val::True);
        }
    }
    for (i, a) in p.iter().enumerate() {
        let x = Val::Gate(b.input(i as u32 + 1));
        let cur = y.get(a).copied().unwrap_or(Val::False);
        let v = or(&mut b, cur, x);
        y.insert(a, v);
    }
    let rules: Vec<&HornFormula> = gamma.iter().filter(|h| !h.is_fact()).collect();
    let mut changed: BTreeSet<&Formula> = y.keys().copied().collect();
    for _ in 0..=gamma.len() {
        if changed.is_empty() {
            break;
        }
        let mut next = y.clone();
        for h in &rules {
            if !h.premises.iter().any(|a| changed.contains(a)) {
                continue;
            }
            let mut body = Val::True;
            for a in &h.premises {
                body = and(&mut b, body, y[a]);
            }
            let cur = next[&h.conclusion];
            let v = or(&mut b, cur, body);
            next.insert(&h.conclusion, v);
        }
        changed = next.iter().filter(|(k, v)| y[*k] != **v).map(|(k, _)| *k).collect();
        y = next;
    }
    let out = y.get(q).copied().unwrap_or(Val::False);
    let g = lower(&mut b, out);
    Ok(b.finish(vec![g]))
}
