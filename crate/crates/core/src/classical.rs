//! Feasible interpolation for classical systems.
//!
//! * [`maehara_interpolate`] walks a cut-free `LK_n` proof and builds one
//!   circuit gate per (node, partition) pair.
//! * [`simulate_resolution_in_lk`] turns a resolution refutation of split
//!   clauses into a cut-free `LK_n` proof of
//!   `⋁C_i, s∨¬s (s ∈ q̄) ⇒ s∧¬s (s ∈ p̄∪r̄), ⋀¬D_j`.
//! * [`resolution_interpolate`] chains the two and verifies the result against
//!   the original clauses, where the tautologies and contradictions of the
//!   end sequent no longer matter.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::bits::{Limits, Program};
use crate::circuit::{Circuit, CircuitBuilder};
use crate::error::{Error, Result};
use crate::formula::{Assignment, AtomId, Formula, Sequent};
use crate::generators::{Clause, Lit, SplitClauseSet};
use crate::kernel::{
    check_resolution, check_sequent_proof, Calculus, ProofBuilder, ResStep, ResolutionRefutation, Rule,
    SequentProof, System,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    fn parse(tok: &str) -> Option<Side> {
        match tok {
            "1" => Some(Side::One),
            "2" => Some(Side::Two),
            _ => None,
        }
    }

    fn digit(self) -> char {
        match self {
            Side::One => '1',
            Side::Two => '2',
        }
    }
}

/// Side of every antecedent and succedent position of a sequent, plus the
/// designated shared atoms `p̄`.
///
/// Text format: `ant: 1 1 2`, `suc: 2`, and optionally `shared: 3 4`; without
/// a `shared:` line the atoms common to both sides are used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub ant: Vec<Side>,
    pub suc: Vec<Side>,
    pub shared: BTreeSet<AtomId>,
}

fn side_atoms(seq: &Sequent, ant: &[Side], suc: &[Side], side: Side) -> BTreeSet<AtomId> {
    let mut out = BTreeSet::new();
    for (f, s) in seq.ant.iter().zip(ant).chain(seq.suc.iter().zip(suc)) {
        if *s == side {
            out.extend(f.atoms());
        }
    }
    out
}

impl Partition {
    /// Partition whose shared atoms are those occurring on both sides.
    pub fn new(seq: &Sequent, ant: Vec<Side>, suc: Vec<Side>) -> Result<Partition> {
        if ant.len() != seq.ant.len() || suc.len() != seq.suc.len() {
            return Err(Error::pre("partition length does not match the sequent"));
        }
        let one = side_atoms(seq, &ant, &suc, Side::One);
        let two = side_atoms(seq, &ant, &suc, Side::Two);
        let shared = one.intersection(&two).copied().collect();
        Ok(Partition { ant, suc, shared })
    }

    /// Checks lengths and that every atom on both sides is designated shared.
    pub fn check(&self, seq: &Sequent) -> Result<()> {
        if self.ant.len() != seq.ant.len() || self.suc.len() != seq.suc.len() {
            return Err(Error::pre("partition length does not match the sequent"));
        }
        let one = side_atoms(seq, &self.ant, &self.suc, Side::One);
        let two = side_atoms(seq, &self.ant, &self.suc, Side::Two);
        if let Some(a) = one.intersection(&two).find(|a| !self.shared.contains(a)) {
            return Err(Error::pre(format!("atom {a} occurs on both sides but is not shared")));
        }
        Ok(())
    }

    /// `(Γ₁ ⇒ Δ₁)` and `(Γ₂ ⇒ Δ₂)`.
    pub fn halves(&self, seq: &Sequent) -> (Sequent, Sequent) {
        let pick = |fs: &[Formula], ss: &[Side], want: Side| -> Vec<Formula> {
            fs.iter().zip(ss).filter(|(_, s)| **s == want).map(|(f, _)| f.clone()).collect()
        };
        (
            Sequent::new(pick(&seq.ant, &self.ant, Side::One), pick(&seq.suc, &self.suc, Side::One)),
            Sequent::new(pick(&seq.ant, &self.ant, Side::Two), pick(&seq.suc, &self.suc, Side::Two)),
        )
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[Side]| v.iter().map(|s| s.digit().to_string()).collect::<Vec<_>>().join(" ");
        let shared = self.shared.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
        format!("ant: {}\nsuc: {}\nshared: {}\n", join(&self.ant), join(&self.suc), shared)
    }

    pub fn parse(text: &str, seq: &Sequent) -> Result<Partition> {
        let mut ant = None;
        let mut suc = None;
        let mut shared = None;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let pos = offset;
            offset += line.len();
            let l = line.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let (key, rest) = l
                .split_once(':')
                .ok_or_else(|| Error::parse(pos, "expected 'ant:', 'suc:' or 'shared:'"))?;
            let toks = rest.split_whitespace();
            let dup = match key.trim() {
                "ant" | "suc" => {
                    let sides = toks
                        .map(|t| Side::parse(t).ok_or_else(|| Error::parse(pos, format!("bad side '{t}'"))))
                        .collect::<Result<Vec<_>>>()?;
                    if key.trim() == "ant" { ant.replace(sides) } else { suc.replace(sides) }.is_some()
                }
                "shared" => {
                    let atoms = toks
                        .map(|t| match t.parse::<AtomId>() {
                            Ok(a) if a > 0 => Ok(a),
                            _ => Err(Error::parse(pos, format!("bad atom '{t}'"))),
                        })
                        .collect::<Result<BTreeSet<_>>>()?;
                    shared.replace(atoms).is_some()
                }
                k => return Err(Error::parse(pos, format!("unknown key '{k}'"))),
            };
            if dup {
                return Err(Error::parse(pos, format!("'{}' given twice", key.trim())));
            }
        }
        let ant = ant.unwrap_or_default();
        let suc = suc.unwrap_or_default();
        let mut p = Partition::new(seq, ant, suc)?;
        if let Some(s) = shared {
            p.shared = s;
        }
        p.check(seq)?;
        Ok(p)
    }
}

type Sides = (Vec<Side>, Vec<Side>);

/// Craig interpolant of a cut-free `LK_n` proof for the given partition of its end sequent.
///
/// The circuit has one input per atom up to the largest shared atom.
pub fn maehara_interpolate(proof: &SequentProof, part: &Partition) -> Result<Circuit> {
    if proof.calculus.system != System::LKn {
        return Err(Error::pre(format!("expected an LK_n proof, got {}", proof.calculus)));
    }
    if let Some(i) = proof.nodes.iter().position(|n| n.rule == Rule::Cut) {
        return Err(Error::pre(format!("node {} is a cut", i + 1)));
    }
    let v = check_sequent_proof(proof);
    if let Some(r) = v.rejection {
        return Err(Error::pre(format!("proof rejected at node {}: {}", r.step, r.reason)));
    }
    let root = proof.nodes.len() - 1;
    part.check(&proof.nodes[root].sequent)?;

    // Top-down: the partitions each node is needed under.
    let mut inst: Vec<HashMap<Sides, usize>> = vec![HashMap::new(); proof.nodes.len()];
    let mut items: Vec<(usize, Sides, Vec<usize>)> = Vec::new();
    inst[root].insert((part.ant.clone(), part.suc.clone()), 0);
    items.push((root, (part.ant.clone(), part.suc.clone()), vec![]));
    for i in (0..=root).rev() {
        let mut here: Vec<(Sides, usize)> = inst[i].iter().map(|(k, v)| (k.clone(), *v)).collect();
        here.sort_by_key(|x| x.1);
        let node = &proof.nodes[i];
        for ((a, s), id) in here {
            let prem_sides = premise_sides(node.rule, &a, &s)?;
            let mut kids = Vec::with_capacity(node.premises.len());
            for (&p, sides) in node.premises.iter().zip(prem_sides) {
                let next = items.len();
                let k = *inst[p].entry(sides.clone()).or_insert(next);
                if k == next {
                    items.push((p, sides, vec![]));
                }
                kids.push(k);
            }
            items[id].2 = kids;
        }
    }

    // Bottom-up: gates.
    let inputs = part.shared.iter().next_back().copied().unwrap_or(0);
    let mut b = CircuitBuilder::new(inputs);
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&k| items[k].0);
    let mut gate = vec![u32::MAX; items.len()];
    for k in order {
        let (n, (a, s), kids) = &items[k];
        let node = &proof.nodes[*n];
        let g = match node.rule {
            r if r.is_axiom() => axiom_gate(&mut b, r, &node.sequent, a, s)?,
            Rule::Rand => {
                let (x, y) = (gate[kids[0]], gate[kids[1]]);
                if s[0] == Side::One { b.or(x, y) } else { b.and(x, y) }
            }
            Rule::Lor => {
                let (x, y) = (gate[kids[0]], gate[kids[1]]);
                if a[a.len() - 1] == Side::One { b.or(x, y) } else { b.and(x, y) }
            }
            _ => gate[kids[0]],
        };
        gate[k] = g;
    }
    Ok(b.finish(vec![gate[0]]))
}

fn premise_sides(rule: Rule, a: &[Side], s: &[Side]) -> Result<Vec<Sides>> {
    let same = || (a.to_vec(), s.to_vec());
    Ok(match rule {
        r if r.is_axiom() => vec![],
        Rule::Le(k) => {
            let mut x = a.to_vec();
            x.swap(k - 1, k);
            vec![(x, s.to_vec())]
        }
        Rule::Re(k) => {
            let mut x = s.to_vec();
            x.swap(k - 1, k);
            vec![(a.to_vec(), x)]
        }
        Rule::Lw => vec![(a[..a.len() - 1].to_vec(), s.to_vec())],
        Rule::Rw => vec![(a.to_vec(), s[1..].to_vec())],
        Rule::Lc => {
            let mut x = a.to_vec();
            x.push(a[a.len() - 1]);
            vec![(x, s.to_vec())]
        }
        Rule::Rc => {
            let mut x = vec![s[0]];
            x.extend_from_slice(s);
            vec![(a.to_vec(), x)]
        }
        Rule::Land1 | Rule::Land2 | Rule::Ror1 | Rule::Ror2 => vec![same()],
        Rule::Rand | Rule::Lor => vec![same(), same()],
        r => return Err(Error::pre(format!("rule {r} has no interpolation case"))),
    })
}

fn literal_gate(b: &mut CircuitBuilder, f: &Formula, negate: bool) -> Result<u32> {
    let (atom, positive) = match f {
        Formula::Atom(p) => (*p, true),
        Formula::Not(x) => match **x {
            Formula::Atom(p) => (p, false),
            _ => return Err(Error::pre(format!("{f} is not a literal"))),
        },
        _ => return Err(Error::pre(format!("{f} is not a literal"))),
    };
    let x = b.input(atom);
    Ok(if positive != negate { x } else { b.not(x) })
}

fn axiom_gate(b: &mut CircuitBuilder, rule: Rule, seq: &Sequent, a: &[Side], s: &[Side]) -> Result<u32> {
    use Side::{One, Two};
    let sides: Vec<Side> = a.iter().chain(s.iter()).copied().collect();
    if sides.iter().all(|x| *x == One) {
        return Ok(b.bot());
    }
    if sides.iter().all(|x| *x == Two) {
        return Ok(b.top());
    }
    match rule {
        // φ ⇒ φ split across the sides.
        Rule::Ax => literal_gate(b, &seq.ant[0], a[0] == Two),
        // p, ¬p ⇒ : the side-1 literal.
        Rule::AxNegL => {
            let p = &seq.ant[0];
            literal_gate(b, p, a[0] == Two)
        }
        // ⇒ p, ¬p : the negation of the side-1 literal.
        Rule::AxNegR => {
            let p = &seq.suc[0];
            literal_gate(b, p, s[0] == One)
        }
        r => Err(Error::pre(format!("axiom {r} with mixed sides"))),
    }
}

/// Result of [`verify_interpolant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolantCheck {
    pub scope_ok: bool,
    pub pass: bool,
    /// First failing shared assignment and the contract it breaks.
    pub witness: Option<(Assignment, &'static str)>,
}

/// Checks `C` as an interpolant for `φ → ψ`: scope within the common atoms,
/// and for every shared `ā`, `C(ā)=0 ⇒ φ(ā,q̄)` unsatisfiable and
/// `C(ā)=1 ⇒ ψ(ā,r̄)` valid. Each atom group is capped separately.
pub fn verify_interpolant(phi: &Formula, psi: &Formula, c: &Circuit, limits: &Limits) -> Result<InterpolantCheck> {
    if c.outputs().len() != 1 {
        return Err(Error::pre("interpolant circuit needs exactly one output"));
    }
    let (pa, qa) = (phi.atoms(), psi.atoms());
    let shared: Vec<AtomId> = pa.intersection(&qa).copied().collect();
    let left: Vec<AtomId> = pa.iter().copied().filter(|a| !qa.contains(a)).collect();
    let right: Vec<AtomId> = qa.iter().copied().filter(|a| !pa.contains(a)).collect();
    let scope_ok = c.used_inputs().iter().all(|a| shared.contains(a));
    if !scope_ok {
        return Ok(InterpolantCheck {
            scope_ok,
            pass: false,
            witness: None,
        });
    }
    for n in [shared.len(), left.len(), right.len()] {
        if n > limits.atom_cap {
            return Err(Error::CapExceeded {
                what: "brute-force atoms per group",
                limit: limits.atom_cap,
                actual: n,
            });
        }
    }
    let mut w = vec![false; c.inputs() as usize];
    for idx in 0..(1u64 << shared.len()) {
        let a = Assignment::from_bits(&shared, idx);
        for (atom, v) in a.iter() {
            if let Some(slot) = w.get_mut(atom as usize - 1) {
                *slot = v;
            }
        }
        let out = c.eval(&w)?[0];
        let (f, group, want, msg) = if out {
            (psi, &right, false, "C(a)=1 but the right side is falsifiable")
        } else {
            (phi, &left, true, "C(a)=0 but the left side is satisfiable")
        };
        let mut p = Program::new(group.iter().copied());
        for (atom, v) in a.iter() {
            p.fix(atom, v);
        }
        let root = p.formula(f)?;
        if p.find(root, want, limits)?.is_some() {
            return Ok(InterpolantCheck {
                scope_ok,
                pass: false,
                witness: Some((a, msg)),
            });
        }
    }
    Ok(InterpolantCheck {
        scope_ok,
        pass: true,
        witness: None,
    })
}

/// Contracts `(Γ₁ ⇒ Δ₁, I)` and `(I, Γ₂ ⇒ Δ₂)` as an implication check.
pub fn verify_sequent_interpolant(
    seq: &Sequent,
    part: &Partition,
    c: &Circuit,
    limits: &Limits,
) -> Result<InterpolantCheck> {
    let (one, two) = part.halves(seq);
    let phi = Formula::and(
        Formula::conj(one.ant.iter().cloned()),
        Formula::not(Formula::disj(one.suc.iter().cloned())),
    );
    let psi = Formula::imp(Formula::conj(two.ant.iter().cloned()), Formula::disj(two.suc.iter().cloned()));
    let mut check = verify_interpolant(&phi, &psi, c, limits)?;
    check.scope_ok &= c.used_inputs().is_subset(&part.shared);
    check.pass &= check.scope_ok;
    Ok(check)
}

/// Dual literal formula `l̄`.
fn dual(l: Lit) -> Formula {
    l.negate().to_formula()
}

struct Simulation<'a> {
    b: ProofBuilder,
    q: &'a BTreeSet<AtomId>,
    g: Vec<Formula>,
    t: Vec<Formula>,
    k: Vec<Formula>,
    dn: Vec<Formula>,
}

impl Simulation<'_> {
    /// `Γ, d(E^q̄) ⇒ E^{p̄r̄}, Δ` with fixed contexts.
    fn canonical(&self, e: &BTreeSet<Lit>) -> Sequent {
        let mut ant = self.g.clone();
        ant.extend(self.t.iter().cloned());
        let mut suc = Vec::new();
        for l in e {
            if self.q.contains(&l.atom) {
                ant.push(dual(*l));
            } else {
                suc.push(l.to_formula());
            }
        }
        suc.extend(self.k.iter().cloned());
        suc.extend(self.dn.iter().cloned());
        Sequent::new(ant, suc)
    }

    /// Weakening, contraction and exchange until node `n` proves `target`.
    fn reshape(&mut self, n: usize, target: &Sequent) -> Result<usize> {
        let mut n = n;
        // Antecedent: the active end is the right.
        let mut cur = self.b.sequent(n).ant.clone();
        let want = count(&target.ant);
        loop {
            let have = count(&cur);
            let Some(f) = have.iter().find(|(f, c)| **c > want.get(*f).copied().unwrap_or(0)).map(|x| x.0.clone())
            else {
                break;
            };
            let mut pos: Vec<usize> = cur.iter().enumerate().filter(|(_, g)| **g == f).map(|x| x.0).collect();
            let j = pos.pop().expect("two copies");
            let i = pos.pop().expect("two copies");
            let len = cur.len();
            for x in j..len - 1 {
                n = self.b.le(n, x + 1)?;
                cur.swap(x, x + 1);
            }
            for x in i..len - 2 {
                n = self.b.le(n, x + 1)?;
                cur.swap(x, x + 1);
            }
            n = self.b.lc(n)?;
            cur.pop();
        }
        for f in &target.ant {
            if cur.iter().filter(|g| *g == f).count() < want[f] {
                n = self.b.lw(n, f.clone());
                cur.push(f.clone());
            }
        }
        for j in 0..target.ant.len() {
            if cur[j] == target.ant[j] {
                continue;
            }
            let i = (j + 1..cur.len())
                .find(|&i| cur[i] == target.ant[j])
                .ok_or_else(|| Error::malformed("reshape lost a formula"))?;
            for x in (j..i).rev() {
                n = self.b.le(n, x + 1)?;
                cur.swap(x, x + 1);
            }
        }
        // Succedent: the active end is the left.
        let mut cur = self.b.sequent(n).suc.clone();
        let want = count(&target.suc);
        loop {
            let have = count(&cur);
            let Some(f) = have.iter().find(|(f, c)| **c > want.get(*f).copied().unwrap_or(0)).map(|x| x.0.clone())
            else {
                break;
            };
            let pos: Vec<usize> = cur.iter().enumerate().filter(|(_, g)| **g == f).map(|x| x.0).collect();
            let (i, j) = (pos[0], pos[1]);
            for x in (0..i).rev() {
                n = self.b.re(n, x + 1)?;
                cur.swap(x, x + 1);
            }
            for x in (1..j).rev() {
                n = self.b.re(n, x + 1)?;
                cur.swap(x, x + 1);
            }
            n = self.b.rc(n)?;
            cur.remove(0);
        }
        for f in target.suc.iter().rev() {
            if cur.iter().filter(|g| *g == f).count() < want[f] {
                n = self.b.rw(n, f.clone());
                cur.insert(0, f.clone());
            }
        }
        for j in 0..target.suc.len() {
            if cur[j] == target.suc[j] {
                continue;
            }
            let i = (j + 1..cur.len())
                .find(|&i| cur[i] == target.suc[j])
                .ok_or_else(|| Error::malformed("reshape lost a formula"))?;
            for x in (j..i).rev() {
                n = self.b.re(n, x + 1)?;
                cur.swap(x, x + 1);
            }
        }
        debug_assert_eq!(self.b.sequent(n), target);
        Ok(n)
    }

    fn c_leaf(&mut self, c: &Clause, gin: &Formula) -> Result<usize> {
        let e: BTreeSet<Lit> = c.lits().iter().copied().collect();
        let full = self.canonical(&e);
        if c.is_empty() {
            let n = self.b.axiom(Rule::AxBot, Sequent::new(vec![Formula::Bot], vec![]));
            return self.reshape(n, &full);
        }
        // Minimal context first, full context once at the end.
        let mut ctx_ant = Vec::new();
        let mut ctx_suc = Vec::new();
        for l in &e {
            if self.q.contains(&l.atom) {
                ctx_ant.push(dual(*l));
            } else {
                ctx_suc.push(l.to_formula());
            }
        }
        let mut prem = Vec::new();
        for l in c.lits() {
            let leaf = if self.q.contains(&l.atom) {
                let p = Formula::atom(l.atom);
                self.b.axiom(Rule::AxNegL, Sequent::new(vec![p.clone(), Formula::not(p)], vec![]))
            } else {
                self.b.ax(l.to_formula())
            };
            let mut ant = ctx_ant.clone();
            ant.push(l.to_formula());
            prem.push(self.reshape(leaf, &Sequent::new(ant, ctx_suc.clone()))?);
        }
        let mut n = *prem.last().expect("nonempty clause");
        for &p in prem.iter().rev().skip(1) {
            n = self.b.lor(p, n)?;
        }
        debug_assert_eq!(self.b.sequent(n).ant.last(), Some(gin));
        self.reshape(n, &full)
    }

    fn d_leaf(&mut self, d: &Clause) -> Result<usize> {
        let e: BTreeSet<Lit> = d.lits().iter().copied().collect();
        let full = self.canonical(&e);
        if d.is_empty() {
            let n = self.b.axiom(Rule::AxTop, Sequent::new(vec![], vec![Formula::Top]));
            return self.reshape(n, &full);
        }
        let ctx_suc: Vec<Formula> = e.iter().map(|l| l.to_formula()).collect();
        let mut prem = Vec::new();
        for l in d.lits() {
            let p = Formula::atom(l.atom);
            let leaf = self.b.axiom(Rule::AxNegR, Sequent::new(vec![], vec![p.clone(), Formula::not(p)]));
            let mut suc = vec![dual(*l)];
            suc.extend(ctx_suc.iter().cloned());
            prem.push(self.reshape(leaf, &Sequent::new(vec![], suc))?);
        }
        let mut n = *prem.last().expect("nonempty clause");
        for &p in prem.iter().rev().skip(1) {
            n = self.b.rand(p, n)?;
        }
        self.reshape(n, &full)
    }
}

fn count(v: &[Formula]) -> HashMap<Formula, usize> {
    let mut m = HashMap::new();
    for f in v {
        *m.entry(f.clone()).or_insert(0) += 1;
    }
    m
}

/// Cut-free `LK_n` proof simulating a refutation of `{C_i} ∪ {D_j}`.
///
/// The end sequent is `⋁C_i (used), s∨¬s (q̄-pivots) ⇒ s∧¬s (p̄r̄-pivots), ⋀¬D_j (used)`,
/// and every intermediate clause `E` is proved as
/// `Γ, d(E^q̄) ⇒ E^{p̄r̄}, Δ` with these fixed contexts.
pub fn simulate_resolution_in_lk(split: &SplitClauseSet, r: &ResolutionRefutation) -> Result<SequentProof> {
    let v = check_resolution(&split.set, r);
    if let Some(rej) = v.rejection {
        return Err(Error::pre(format!("refutation rejected at step {}: {}", rej.step, rej.reason)));
    }
    let side_of: HashMap<usize, Side> = split
        .c_side
        .iter()
        .map(|i| (*i + 1, Side::One))
        .chain(split.d_side.iter().map(|i| (*i + 1, Side::Two)))
        .collect();
    let c_atoms: BTreeSet<AtomId> = split.c_clauses().iter().flat_map(|c| c.atoms()).collect();
    let shared = split.shared_atoms();
    let q: BTreeSet<AtomId> = c_atoms.difference(&shared).copied().collect();

    let mut used_c = BTreeSet::new();
    let mut used_d = BTreeSet::new();
    let mut t_atoms = BTreeSet::new();
    let mut k_atoms = BTreeSet::new();
    for (_, step) in &r.lines {
        match *step {
            ResStep::Input(m) => match side_of.get(&m) {
                Some(Side::One) => {
                    used_c.insert(m);
                }
                Some(Side::Two) => {
                    used_d.insert(m);
                }
                None => return Err(Error::pre(format!("input clause {m} is on neither side"))),
            },
            ResStep::Resolve(_, _, s) => {
                if q.contains(&s) {
                    t_atoms.insert(s);
                } else {
                    k_atoms.insert(s);
                }
            }
        }
    }
    let clause = |m: usize| &split.set.clauses[m - 1];
    let gin: BTreeMap<usize, Formula> = used_c.iter().map(|&m| (m, clause(m).to_formula())).collect();
    let dn_of = |c: &Clause| Formula::conj(c.lits().iter().map(|l| dual(*l)));
    let mut sim = Simulation {
        b: ProofBuilder::new(Calculus::new(System::LKn, false)),
        q: &q,
        g: gin.values().cloned().collect(),
        t: t_atoms
            .iter()
            .map(|&s| Formula::or(Formula::atom(s), Formula::not(Formula::atom(s))))
            .collect(),
        k: k_atoms
            .iter()
            .map(|&s| Formula::and(Formula::atom(s), Formula::not(Formula::atom(s))))
            .collect(),
        dn: used_d.iter().map(|&m| dn_of(clause(m))).collect(),
    };
    let mut node_of: Vec<usize> = Vec::with_capacity(r.lines.len());
    for (c, step) in &r.lines {
        let e: BTreeSet<Lit> = c.lits().iter().copied().collect();
        let n = match *step {
            ResStep::Input(m) => match side_of[&m] {
                Side::One => sim.c_leaf(clause(m), &gin[&m])?,
                Side::Two => sim.d_leaf(clause(m))?,
            },
            ResStep::Resolve(j, k, s) => {
                let (nj, nk) = (node_of[j - 1], node_of[k - 1]);
                let full = sim.canonical(&e);
                let sp = Formula::atom(s);
                let sn = Formula::not(sp.clone());
                let n = if q.contains(&s) {
                    // E_k has ¬s, so d(E_k) has s; E_j has s, so d(E_j) has ¬s.
                    let mut with_s = full.clone();
                    with_s.ant.push(sp.clone());
                    let mut with_ns = full.clone();
                    with_ns.ant.push(sn.clone());
                    let left = sim.reshape(nk, &with_s)?;
                    let right = sim.reshape(nj, &with_ns)?;
                    sim.b.lor(left, right)?
                } else {
                    let mut with_s = full.clone();
                    with_s.suc.insert(0, sp.clone());
                    let mut with_ns = full.clone();
                    with_ns.suc.insert(0, sn.clone());
                    let left = sim.reshape(nj, &with_s)?;
                    let right = sim.reshape(nk, &with_ns)?;
                    sim.b.rand(left, right)?
                };
                sim.reshape(n, &full)?
            }
        };
        node_of.push(n);
    }
    let root = *node_of.last().expect("accepted refutations are nonempty");
    Ok(sim.b.finish(root))
}

/// Partition of a simulation end sequent: antecedent on side 1, succedent on side 2.
pub fn simulation_partition(proof: &SequentProof, split: &SplitClauseSet) -> Result<Partition> {
    let root = proof.root().ok_or_else(|| Error::pre("empty proof"))?;
    let mut p = Partition::new(root, vec![Side::One; root.ant.len()], vec![Side::Two; root.suc.len()])?;
    p.shared = split.shared_atoms();
    p.check(root)?;
    Ok(p)
}

/// Summary of an interpolation run.
#[derive(Clone, Debug)]
pub struct InterpolantReport {
    pub circuit: Circuit,
    pub monotone: bool,
    pub circuit_size: usize,
    pub proof_size: u64,
    pub proof_nodes: usize,
    pub source_size: u64,
    /// `None` when the brute-force check was skipped for exceeding the cap.
    pub check: Option<InterpolantCheck>,
}

impl InterpolantReport {
    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "circuit_size={}", self.circuit_size);
        let _ = writeln!(s, "monotone={}", self.monotone);
        let _ = writeln!(s, "proof_nodes={}", self.proof_nodes);
        let _ = writeln!(s, "proof_size={}", self.proof_size);
        let _ = writeln!(s, "source_size={}", self.source_size);
        let ratio = if self.proof_size == 0 { 0.0 } else { self.circuit_size as f64 / self.proof_size as f64 };
        let _ = writeln!(s, "circuit_per_proof_symbol={ratio:.4}");
        match &self.check {
            None => {
                let _ = writeln!(s, "verification=SKIPPED");
            }
            Some(c) => {
                let _ = writeln!(s, "scope={}", if c.scope_ok { "PASS" } else { "FAIL" });
                let _ = writeln!(s, "verification={}", if c.pass { "PASS" } else { "FAIL" });
                if let Some((a, why)) = &c.witness {
                    let bits: Vec<String> = a.iter().map(|(k, v)| format!("{k}:{}", v as u8)).collect();
                    let _ = writeln!(s, "witness={}", bits.join(","));
                    let _ = writeln!(s, "witness_reason={why}");
                }
            }
        }
        s
    }
}

/// Simulate, extract, and verify against `⋀C_i → ¬⋀D_j`.
pub fn resolution_interpolate(
    split: &SplitClauseSet,
    r: &ResolutionRefutation,
    limits: &Limits,
) -> Result<InterpolantReport> {
    let proof = simulate_resolution_in_lk(split, r)?;
    let part = simulation_partition(&proof, split)?;
    let circuit = maehara_interpolate(&proof, &part)?;
    let phi = Formula::conj(split.c_clauses().iter().map(|c| c.to_formula()));
    let psi = Formula::not(Formula::conj(split.d_clauses().iter().map(|c| c.to_formula())));
    let check = match verify_interpolant(&phi, &psi, &circuit, limits) {
        Ok(c) => Some(c),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e),
    };
    Ok(InterpolantReport {
        monotone: circuit.is_monotone(),
        circuit_size: circuit.size(),
        proof_size: proof.size(),
        proof_nodes: proof.nodes.len(),
        source_size: r.size(),
        circuit,
        check,
    })
}
