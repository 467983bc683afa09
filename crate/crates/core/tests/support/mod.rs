//! Oracles and proof constructors shared by the integration tests. Every
//! oracle here is a direct enumeration written independently of the library's
//! bit-sliced evaluator.

#![allow(dead_code)]

use std::collections::BTreeSet;

use feasint::formula::{AtomId, Formula, Sequent};
use feasint::generators::{Clause, ClauseSet, Lit};
use feasint::kernel::{ProofBuilder, Rule};

pub fn a(i: u32) -> Formula {
    Formula::atom(i)
}

pub fn clause(v: &[i64]) -> Clause {
    Clause(v.iter().map(|x| Lit::from_dimacs(*x).unwrap()).collect())
}

/// Classical value of a modality-free formula.
pub fn ev(f: &Formula, v: &dyn Fn(AtomId) -> bool) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(p) => v(*p),
        Formula::Not(g) => !ev(g, v),
        Formula::And(x, y) => ev(x, v) && ev(y, v),
        Formula::Or(x, y) => ev(x, v) || ev(y, v),
        Formula::Imp(x, y) => !ev(x, v) || ev(y, v),
        Formula::BigAnd(xs) => xs.iter().all(|x| ev(x, v)),
        Formula::BigOr(xs) => xs.iter().any(|x| ev(x, v)),
        Formula::Ext(_) | Formula::Box(_) => panic!("no classical value for {f}"),
    }
}

/// `□φ ↦ φ`.
pub fn forget(f: &Formula) -> Formula {
    match f {
        Formula::Box(g) => forget(g),
        _ => f.map_children(forget),
    }
}

/// `□φ ↦ ⊤`.
pub fn collapse(f: &Formula) -> Formula {
    match f {
        Formula::Box(_) => Formula::Top,
        _ => f.map_children(collapse),
    }
}

pub fn tt_valid(f: &Formula) -> bool {
    let atoms: Vec<AtomId> = f.atoms().into_iter().collect();
    assert!(atoms.len() <= 22, "truth table too large");
    let mut slot = vec![0usize; atoms.last().map_or(0, |x| *x as usize) + 1];
    for (i, x) in atoms.iter().enumerate() {
        slot[*x as usize] = i;
    }
    (0..1u64 << atoms.len()).all(|m| ev(f, &|p| m >> slot[p as usize] & 1 == 1))
}

pub fn sequent_valid(s: &Sequent) -> bool {
    tt_valid(&Formula::imp(
        Formula::conj(s.ant.iter().cloned()),
        Formula::disj(s.suc.iter().cloned()),
    ))
}

/// Clause as `(positive mask, negative mask)` over atoms `1..=64`.
fn masks(c: &Clause) -> (u64, u64) {
    c.lits().iter().fold((0, 0), |(p, n), l| {
        let bit = 1u64 << (l.atom - 1);
        if l.positive {
            (p | bit, n)
        } else {
            (p, n | bit)
        }
    })
}

/// Satisfiability by enumerating every assignment to the atoms that occur.
pub fn clauses_sat(clauses: &[&Clause]) -> bool {
    let atoms: BTreeSet<AtomId> = clauses.iter().flat_map(|c| c.atoms()).collect();
    let atoms: Vec<AtomId> = atoms.into_iter().collect();
    assert!(atoms.len() <= 24, "too many atoms for brute force");
    let ms: Vec<(u64, u64)> = clauses.iter().map(|c| masks(c)).collect();
    (0..1u64 << atoms.len()).any(|m| {
        let mut full = 0u64;
        for (i, x) in atoms.iter().enumerate() {
            if m >> i & 1 == 1 {
                full |= 1 << (x - 1);
            }
        }
        ms.iter().all(|(p, n)| full & p != 0 || !full & n != 0)
    })
}

pub fn set_sat(set: &ClauseSet) -> bool {
    clauses_sat(&set.clauses.iter().collect::<Vec<_>>())
}

/// Every clause holds under the full assignment `bits` (bit `i-1` is atom `i`).
pub fn all_hold(clauses: &[(u64, u64)], bits: u64) -> bool {
    clauses.iter().all(|(p, n)| bits & p != 0 || !bits & n != 0)
}

pub fn clause_masks(clauses: &[&Clause]) -> Vec<(u64, u64)> {
    clauses.iter().map(|c| masks(c)).collect()
}

fn remove_one(v: &[Formula], f: &Formula) -> Vec<Formula> {
    let mut out = v.to_vec();
    let i = out.iter().position(|x| x == f).unwrap();
    out.remove(i);
    out
}

/// Rearranges node `n` by exchanges until it concludes `target`, a permutation of it.
pub fn permute(b: &mut ProofBuilder, mut n: usize, target: &Sequent) -> usize {
    for i in 0..target.ant.len() {
        let j = (i..b.sequent(n).ant.len()).find(|&j| b.sequent(n).ant[j] == target.ant[i]).unwrap();
        for k in (i + 1..=j).rev() {
            n = b.le(n, k).unwrap();
        }
    }
    for i in 0..target.suc.len() {
        let j = (i..b.sequent(n).suc.len()).find(|&j| b.sequent(n).suc[j] == target.suc[i]).unwrap();
        for k in (i + 1..=j).rev() {
            n = b.re(n, k).unwrap();
        }
    }
    assert_eq!(b.sequent(n), target);
    n
}

/// Weakens node `n` up to `target` (a super-multiset), then arranges it.
fn weaken_to(b: &mut ProofBuilder, mut n: usize, target: &Sequent) -> usize {
    let mut ant = target.ant.clone();
    for f in &b.sequent(n).ant.clone() {
        ant = remove_one(&ant, f);
    }
    let mut suc = target.suc.clone();
    for f in &b.sequent(n).suc.clone() {
        suc = remove_one(&suc, f);
    }
    for f in ant {
        n = b.lw(n, f);
    }
    for f in suc {
        n = b.rw(n, f);
    }
    permute(b, n, target)
}

fn axiom_for(b: &mut ProofBuilder, s: &Sequent) -> Option<usize> {
    let has_l = |f: &Formula| s.ant.contains(f);
    let has_r = |f: &Formula| s.suc.contains(f);
    let not = |f: &Formula| Formula::not(f.clone());
    if has_l(&Formula::Bot) {
        return Some(b.axiom(Rule::AxBot, Sequent::new(vec![Formula::Bot], vec![])));
    }
    if has_r(&Formula::Top) {
        return Some(b.axiom(Rule::AxTop, Sequent::new(vec![], vec![Formula::Top])));
    }
    if has_l(&not(&Formula::Top)) {
        return Some(b.axiom(Rule::AxNotTop, Sequent::new(vec![not(&Formula::Top)], vec![])));
    }
    if has_r(&not(&Formula::Bot)) {
        return Some(b.axiom(Rule::AxNotBot, Sequent::new(vec![], vec![not(&Formula::Bot)])));
    }
    if let Some(f) = s.ant.iter().find(|f| f.is_literal() && has_r(f)) {
        return Some(b.ax(f.clone()));
    }
    if let Some(p) = s.ant.iter().find(|f| f.is_atom() && has_l(&not(f))) {
        return Some(b.axiom(Rule::AxNegL, Sequent::new(vec![p.clone(), not(p)], vec![])));
    }
    if let Some(p) = s.suc.iter().find(|f| f.is_atom() && has_r(&not(f))) {
        return Some(b.axiom(Rule::AxNegR, Sequent::new(vec![], vec![p.clone(), not(p)])));
    }
    None
}

/// Cut-free `LK_n` proof of `s` (NNF over `∧`, `∨`, literals) by exhaustive
/// decomposition, or `None` when `s` is not valid.
pub fn lkn_prove(b: &mut ProofBuilder, s: &Sequent) -> Option<usize> {
    if let Some(i) = s.ant.iter().position(|f| matches!(f, Formula::And(..) | Formula::Or(..))) {
        let mut g = s.ant.clone();
        let f = g.remove(i);
        let n = match &f {
            Formula::And(x, y) => {
                let mut ant = g.clone();
                ant.extend([(**x).clone(), (**y).clone()]);
                let n = lkn_prove(b, &Sequent::new(ant, s.suc.clone()))?;
                let n = b.land2(n, (**x).clone()).unwrap();
                let len = b.sequent(n).ant.len();
                let n = b.le(n, len - 1).unwrap();
                let n = b.land1(n, (**y).clone()).unwrap();
                b.lc(n).unwrap()
            }
            Formula::Or(x, y) => {
                let mut l = g.clone();
                l.push((**x).clone());
                let mut r = g.clone();
                r.push((**y).clone());
                let nl = lkn_prove(b, &Sequent::new(l, s.suc.clone()))?;
                let nr = lkn_prove(b, &Sequent::new(r, s.suc.clone()))?;
                b.lor(nl, nr).unwrap()
            }
            _ => unreachable!(),
        };
        return Some(permute(b, n, s));
    }
    if let Some(j) = s.suc.iter().position(|f| matches!(f, Formula::And(..) | Formula::Or(..))) {
        let mut d = s.suc.clone();
        let f = d.remove(j);
        let n = match &f {
            Formula::And(x, y) => {
                let mut l = vec![(**x).clone()];
                l.extend(d.iter().cloned());
                let mut r = vec![(**y).clone()];
                r.extend(d.iter().cloned());
                let nl = lkn_prove(b, &Sequent::new(s.ant.clone(), l))?;
                let nr = lkn_prove(b, &Sequent::new(s.ant.clone(), r))?;
                b.rand(nl, nr).unwrap()
            }
            Formula::Or(x, y) => {
                let mut suc = vec![(**x).clone(), (**y).clone()];
                suc.extend(d.iter().cloned());
                let n = lkn_prove(b, &Sequent::new(s.ant.clone(), suc))?;
                let n = b.ror1(n, (**y).clone()).unwrap();
                let n = b.re(n, 1).unwrap();
                let n = b.ror2(n, (**x).clone()).unwrap();
                b.rc(n).unwrap()
            }
            _ => unreachable!(),
        };
        return Some(permute(b, n, s));
    }
    let ax = axiom_for(b, s)?;
    Some(weaken_to(b, ax, s))
}

/// Brute-force graph properties over `n` vertices; `edge(i, j)` with `i < j`, 1-based.
pub fn has_clique(n: u32, k: u32, edge: &dyn Fn(u32, u32) -> bool) -> bool {
    fn go(start: u32, n: u32, k: u32, chosen: &mut Vec<u32>, edge: &dyn Fn(u32, u32) -> bool) -> bool {
        if chosen.len() as u32 == k {
            return true;
        }
        for v in start..=n {
            if chosen.iter().all(|&u| edge(u, v)) {
                chosen.push(v);
                if go(v + 1, n, k, chosen, edge) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(1, n, k, &mut Vec::new(), edge)
}

pub fn colorable(n: u32, l: u32, edge: &dyn Fn(u32, u32) -> bool) -> bool {
    let total = (l as u64).pow(n);
    (0..total).any(|mut code| {
        let mut color = vec![0u64; n as usize + 1];
        for c in color.iter_mut().skip(1) {
            *c = code % l as u64;
            code /= l as u64;
        }
        (1..=n).all(|i| (i + 1..=n).all(|j| !edge(i, j) || color[i as usize] != color[j as usize]))
    })
}

/// Index of edge `{i, j}` (`i < j`) in lexicographic pair order.
pub fn edge_index(n: u32, i: u32, j: u32) -> u32 {
    (1..i).map(|r| n - r).sum::<u32>() + (j - i - 1)
}

/// Truth-table Horn entailment: every model of `Γ` and `facts` over atoms
/// `1..=atoms` makes `q` true.
pub fn horn_entails(gamma: &[feasint::nonclassical::HornFormula], facts: &[u32], q: u32, atoms: u32) -> bool {
    (0..1u64 << atoms).all(|m| {
        let v = |x: &Formula| match x {
            Formula::Atom(i) => m >> (i - 1) & 1 == 1,
            _ => unreachable!(),
        };
        let model = facts.iter().all(|&f| m >> (f - 1) & 1 == 1)
            && gamma.iter().all(|h| !h.premises.iter().all(v) || v(&h.conclusion));
        !model || m >> (q - 1) & 1 == 1
    })
}

pub mod random {
    //! Forward random proof construction for the soundness audits.

    use feasint::formula::{Formula, Sequent};
    use feasint::kernel::{Calculus, ProofBuilder, Rule, SequentProof, System};
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn leaf(rng: &mut StdRng, calc: &Calculus, atoms: u32) -> Formula {
        let p = Formula::atom(rng.gen_range(1..=atoms));
        match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            2 | 3 if calc.system == System::LKn => Formula::not(p),
            _ => p,
        }
    }

    /// A formula in the language of `calc`.
    pub fn formula(rng: &mut StdRng, calc: &Calculus, depth: u32, atoms: u32) -> Formula {
        if depth == 0 || rng.gen_bool(0.4) {
            return leaf(rng, calc, atoms);
        }
        let sub = |rng: &mut StdRng| formula(rng, calc, depth - 1, atoms);
        match calc.system {
            System::LKn => {
                if rng.gen_bool(0.5) {
                    Formula::and(sub(rng), sub(rng))
                } else {
                    Formula::or(sub(rng), sub(rng))
                }
            }
            System::LKd(_) => match rng.gen_range(0..3) {
                0 => Formula::not(sub(rng)),
                1 => Formula::big_and((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
                _ => Formula::big_or((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
            },
            _ => {
                let modal = calc.is_modal();
                match rng.gen_range(0..if modal { 4 } else { 3 }) {
                    0 => Formula::and(sub(rng), sub(rng)),
                    1 => Formula::or(sub(rng), sub(rng)),
                    2 => Formula::imp(sub(rng), sub(rng)),
                    _ => Formula::boxed(sub(rng)),
                }
            }
        }
    }

    fn big_with(rng: &mut StdRng, calc: &Calculus, atoms: u32, f: Formula, and: bool) -> (Formula, usize) {
        let mut parts: Vec<Formula> = (0..rng.gen_range(1..=2)).map(|_| formula(rng, calc, 1, atoms)).collect();
        let at = rng.gen_range(0..=parts.len());
        parts.insert(at, f);
        let big = if and { Formula::big_and(parts) } else { Formula::big_or(parts) };
        (big, at + 1)
    }

    /// Applies `steps` random rule attempts and returns the proof below a random
    /// late node. Steps that do not fit the shape of their premises are skipped;
    /// the result still has to pass the kernel.
    pub fn proof(rng: &mut StdRng, calc: Calculus, steps: usize, atoms: u32) -> SequentProof {
        let mut b = ProofBuilder::new(calc);
        let mut nodes: Vec<usize> = Vec::new();
        let f = |rng: &mut StdRng| formula(rng, &calc, 2, atoms);
        for _ in 0..steps {
            let pick = |rng: &mut StdRng, nodes: &[usize]| nodes.choose(rng).copied();
            let made: Option<usize> = match (rng.gen_range(0..24), pick(rng, &nodes)) {
                (0..=3, _) | (_, None) => {
                    let x = if calc.system == System::LKn { leaf(rng, &calc, atoms) } else { formula(rng, &calc, 1, atoms) };
                    match rng.gen_range(0..6) {
                        0 => Some(b.axiom(Rule::AxTop, Sequent::new(vec![], vec![Formula::Top]))),
                        1 => Some(b.axiom(Rule::AxBot, Sequent::new(vec![Formula::Bot], vec![]))),
                        2 if calc.system == System::LKn => {
                            let p = Formula::atom(rng.gen_range(1..=atoms));
                            let np = Formula::not(p.clone());
                            Some(if rng.gen_bool(0.5) {
                                b.axiom(Rule::AxNegL, Sequent::new(vec![p, np], vec![]))
                            } else {
                                b.axiom(Rule::AxNegR, Sequent::new(vec![], vec![p, np]))
                            })
                        }
                        _ => Some(b.ax(x)),
                    }
                }
                (4, Some(n)) => Some(b.lw(n, f(rng))),
                (5, Some(n)) => Some(b.rw(n, f(rng))),
                (6, Some(n)) => {
                    let len = b.sequent(n).ant.len();
                    (len > 1).then(|| b.le(n, rng.gen_range(1..len)).ok()).flatten()
                }
                (7, Some(n)) => {
                    let len = b.sequent(n).suc.len();
                    (len > 1).then(|| b.re(n, rng.gen_range(1..len)).ok()).flatten()
                }
                (8, Some(n)) => {
                    // Duplicate the last antecedent formula, then contract.
                    let last = b.sequent(n).ant.last().cloned();
                    last.and_then(|x| {
                        let w = b.lw(n, x);
                        b.lc(w).ok()
                    })
                }
                (9, Some(n)) => b.rc(n).ok(),
                (10, Some(n)) => {
                    // Cut against a weakened copy of the same node, or a random partner.
                    let phi = f(rng);
                    let l = b.rw(n, phi.clone());
                    let r = b.lw(n, phi);
                    let r = match pick(rng, &nodes) {
                        Some(m) if rng.gen_bool(0.3) => m,
                        _ => r,
                    };
                    b.cut(l, r).ok()
                }
                (11, Some(n)) => b.land1(n, f(rng)).ok(),
                (12, Some(n)) => b.land2(n, f(rng)).ok(),
                (13, Some(n)) => {
                    let m = if rng.gen_bool(0.5) { n } else { pick(rng, &nodes).unwrap() };
                    b.rand(n, m).ok()
                }
                (14, Some(n)) => {
                    let m = if rng.gen_bool(0.5) { n } else { pick(rng, &nodes).unwrap() };
                    b.lor(n, m).ok()
                }
                (15, Some(n)) => b.ror1(n, f(rng)).ok(),
                (16, Some(n)) => b.ror2(n, f(rng)).ok(),
                (17, Some(n)) => {
                    let l = b.rw(n, f(rng));
                    let r = b.lw(n, f(rng));
                    b.limp(l, r).ok()
                }
                (18, Some(n)) => b.rimp(n).ok(),
                (19, Some(n)) => {
                    if rng.gen_bool(0.5) {
                        b.lnot(n).ok()
                    } else {
                        b.rnot(n).ok()
                    }
                }
                (20, Some(n)) => {
                    let last = b.sequent(n).ant.last().cloned();
                    last.and_then(|x| {
                        let (big, at) = big_with(rng, &calc, atoms, x, true);
                        b.lbigand(n, big, at).ok()
                    })
                }
                (21, Some(n)) => {
                    let first = b.sequent(n).suc.first().cloned();
                    first.and_then(|x| {
                        let (big, at) = big_with(rng, &calc, atoms, x, false);
                        b.rbigor(n, big, at).ok()
                    })
                }
                (22, Some(n)) => {
                    let m = if rng.gen_bool(0.5) { n } else { pick(rng, &nodes).unwrap() };
                    if rng.gen_bool(0.5) {
                        b.rbigand(&[n, m]).ok()
                    } else {
                        b.lbigor(&[n, m]).ok()
                    }
                }
                (_, Some(n)) => match calc.system {
                    System::K | System::KT if rng.gen_bool(0.5) => Some(b.box_all(n, Rule::K)),
                    System::D => Some(b.box_all(n, Rule::D)),
                    System::K4 => b.box_half(n, Rule::K4).ok(),
                    System::KD4 => b.box_half(n, Rule::KD4).ok(),
                    System::KT | System::S4 if rng.gen_bool(0.5) => b.ls4(n).ok(),
                    System::S4 => Some(b.rs4(n)),
                    System::GL => b.gl(n).ok(),
                    _ => None,
                },
            };
            if let Some(n) = made {
                nodes.push(n);
            }
        }
        let tail = nodes.len().saturating_sub(4);
        let root = nodes[rng.gen_range(tail..nodes.len())];
        b.finish(root)
    }

    /// Replaces one formula of one node with a random formula of the language.
    pub fn mutate(rng: &mut StdRng, p: &SequentProof, atoms: u32) -> SequentProof {
        let mut q = p.clone();
        let i = rng.gen_range(0..q.nodes.len());
        let s = &mut q.nodes[i].sequent;
        let fresh = formula(rng, &p.calculus, 2, atoms);
        let total = s.ant.len() + s.suc.len();
        match (total, rng.gen_range(0..3)) {
            (0, _) | (_, 0) => {
                if rng.gen_bool(0.5) {
                    s.ant.push(fresh);
                } else {
                    s.suc.push(fresh);
                }
            }
            (_, 1) => {
                let k = rng.gen_range(0..total);
                if k < s.ant.len() {
                    s.ant.remove(k);
                } else {
                    s.suc.remove(k - s.ant.len());
                }
            }
            _ => {
                let k = rng.gen_range(0..total);
                if k < s.ant.len() {
                    s.ant[k] = fresh;
                } else {
                    let j = k - s.ant.len();
                    s.suc[j] = fresh;
                }
            }
        }
        q
    }
}
