//! Bit-sliced brute-force evaluation. Formulas and circuits compile into one
//! straight-line program over 64-lane words; lane `j` of block `b` is the
//! assignment with index `64·b + j`, bit `i` of the index giving variable `i`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::formula::{Assignment, AtomId, Formula};

/// Resource limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub atom_cap: usize,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            atom_cap: 24,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl Limits {
    pub fn with_cap(atom_cap: usize) -> Self {
        Limits {
            atom_cap,
            ..Limits::default()
        }
    }
}

const LANE_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Const(bool),
    Var(usize),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    ops: Vec<Op>,
    vars: Vec<AtomId>,
    var_index: HashMap<AtomId, usize>,
    fixed: HashMap<AtomId, bool>,
    dedup: HashMap<Op, u32>,
}

impl Program {
    /// Program whose enumeration ranges over exactly `vars`, in this order.
    pub fn new(vars: impl IntoIterator<Item = AtomId>) -> Self {
        let vars: Vec<AtomId> = vars.into_iter().collect();
        let var_index = vars.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        Program {
            ops: Vec::new(),
            vars,
            var_index,
            fixed: HashMap::new(),
            dedup: HashMap::new(),
        }
    }

    /// Treats `atom` as the constant `value` instead of a variable.
    pub fn fix(&mut self, atom: AtomId, value: bool) {
        self.fixed.insert(atom, value);
    }

    pub fn vars(&self) -> &[AtomId] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: Op) -> u32 {
        if let Some(i) = self.dedup.get(&op) {
            return *i;
        }
        let i = self.ops.len() as u32;
        self.ops.push(op);
        self.dedup.insert(op, i);
        i
    }

    pub fn var(&mut self, atom: AtomId) -> Result<u32> {
        if let Some(v) = self.fixed.get(&atom) {
            let v = *v;
            return Ok(self.push(Op::Const(v)));
        }
        let i = *self
            .var_index
            .get(&atom)
            .ok_or_else(|| Error::Eval(format!("atom {atom} is not an enumerated variable")))?;
        Ok(self.push(Op::Var(i)))
    }

    pub fn not(&mut self, a: u32) -> u32 {
        self.push(Op::Not(a))
    }
    pub fn and(&mut self, a: u32, b: u32) -> u32 {
        self.push(Op::And(a, b))
    }
    pub fn or(&mut self, a: u32, b: u32) -> u32 {
        self.push(Op::Or(a, b))
    }
    pub fn imp(&mut self, a: u32, b: u32) -> u32 {
        self.push(Op::Imp(a, b))
    }

    pub fn and_all(&mut self, items: &[u32]) -> u32 {
        match items.split_first() {
            None => self.push(Op::Const(true)),
            Some((first, rest)) => rest.iter().fold(*first, |acc, x| self.and(acc, *x)),
        }
    }

    pub fn or_all(&mut self, items: &[u32]) -> u32 {
        match items.split_first() {
            None => self.push(Op::Const(false)),
            Some((first, rest)) => rest.iter().fold(*first, |acc, x| self.or(acc, *x)),
        }
    }

    /// Compiles a classical formula; shared `Arc` subterms compile once.
    pub fn formula(&mut self, f: &Formula) -> Result<u32> {
        let mut memo = HashMap::new();
        self.formula_memo(f, &mut memo)
    }

    fn formula_memo(&mut self, f: &Formula, memo: &mut HashMap<*const Formula, u32>) -> Result<u32> {
        let key = f as *const Formula;
        if let Some(i) = memo.get(&key) {
            return Ok(*i);
        }
        let out = match f {
            Formula::Top => self.push(Op::Const(true)),
            Formula::Bot => self.push(Op::Const(false)),
            Formula::Atom(a) => self.var(*a)?,
            Formula::Ext(_) => return Err(Error::Eval("extended atom in classical evaluation".into())),
            Formula::Box(_) => return Err(Error::Eval("modal formula in classical evaluation".into())),
            Formula::Not(a) => {
                let x = self.formula_memo(a, memo)?;
                self.not(x)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                let x = self.formula_memo(a, memo)?;
                let y = self.formula_memo(b, memo)?;
                match f {
                    Formula::And(..) => self.and(x, y),
                    Formula::Or(..) => self.or(x, y),
                    _ => self.imp(x, y),
                }
            }
            Formula::BigAnd(v) | Formula::BigOr(v) => {
                let kids = v
                    .iter()
                    .map(|c| self.formula_memo(c, memo))
                    .collect::<Result<Vec<_>>>()?;
                if matches!(f, Formula::BigAnd(_)) {
                    self.and_all(&kids)
                } else {
                    self.or_all(&kids)
                }
            }
        };
        memo.insert(key, out);
        Ok(out)
    }

    /// Compiles the circuit, input `x_i` reading atom `i`. Returns one op per output.
    pub fn circuit(&mut self, c: &Circuit) -> Result<Vec<u32>> {
        self.circuit_with(c, |p, k| p.var(k))
    }

    /// Compiles the circuit with a caller-supplied meaning for each input.
    pub fn circuit_with(
        &mut self,
        c: &Circuit,
        mut input: impl FnMut(&mut Program, u32) -> Result<u32>,
    ) -> Result<Vec<u32>> {
        let mut ids = Vec::with_capacity(c.gates().len());
        for g in c.gates() {
            let op = match *g {
                Gate::Input(k) => input(self, k)?,
                Gate::Top => self.push(Op::Const(true)),
                Gate::Bot => self.push(Op::Const(false)),
                Gate::Not(a) => self.not(ids[a as usize]),
                Gate::And(a, b) => self.and(ids[a as usize], ids[b as usize]),
                Gate::Or(a, b) => self.or(ids[a as usize], ids[b as usize]),
                Gate::Imp(a, b) => self.imp(ids[a as usize], ids[b as usize]),
                Gate::Box(_) => return Err(Error::Eval("modal gate in classical evaluation".into())),
            };
            ids.push(op);
        }
        Ok(c.outputs().iter().map(|o| ids[*o as usize]).collect())
    }

    fn run_block(&self, block: u64, buf: &mut Vec<u64>) {
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Const(b) => {
                    if b {
                        !0
                    } else {
                        0
                    }
                }
                Op::Var(i) => {
                    if i < 6 {
                        LANE_MASKS[i]
                    } else if (block >> (i - 6)) & 1 == 1 {
                        !0
                    } else {
                        0
                    }
                }
                Op::Not(a) => !buf[a as usize],
                Op::And(a, b) => buf[a as usize] & buf[b as usize],
                Op::Or(a, b) => buf[a as usize] | buf[b as usize],
                Op::Imp(a, b) => !buf[a as usize] | buf[b as usize],
            };
            buf.push(v);
        }
    }

    /// Smallest assignment index where `root` evaluates to `want`, or `None`.
    pub fn find(&self, root: u32, want: bool, limits: &Limits) -> Result<Option<u64>> {
        let n = self.vars.len();
        if n > limits.atom_cap {
            return Err(Error::CapExceeded {
                what: "brute-force atoms",
                limit: limits.atom_cap,
                actual: n,
            });
        }
        let lanes: u64 = if n >= 6 { !0 } else { (1u64 << (1u64 << n)) - 1 };
        let blocks: u64 = if n > 6 { 1u64 << (n - 6) } else { 1 };
        let best = AtomicU64::new(u64::MAX);
        let workers = limits.workers.clamp(1, blocks.min(64) as usize);
        let scan = |start: u64| {
            let mut buf = Vec::with_capacity(self.ops.len());
            let mut b = start;
            while b < blocks {
                if b.saturating_mul(64) >= best.load(Ordering::Relaxed) {
                    break;
                }
                self.run_block(b, &mut buf);
                let word = buf[root as usize];
                let hits = if want { word } else { !word } & lanes;
                if hits != 0 {
                    let idx = b * 64 + hits.trailing_zeros() as u64;
                    best.fetch_min(idx, Ordering::Relaxed);
                    break;
                }
                b += workers as u64;
            }
        };
        if workers == 1 {
            scan(0);
        } else {
            std::thread::scope(|s| {
                for w in 0..workers {
                    let scan = &scan;
                    s.spawn(move || scan(w as u64));
                }
            });
        }
        let v = best.load(Ordering::Relaxed);
        Ok(if v == u64::MAX { None } else { Some(v) })
    }

    /// Assignment over the program's variables for an index returned by [`Program::find`].
    pub fn assignment(&self, index: u64) -> Assignment {
        Assignment::from_bits(&self.vars, index)
    }

    /// Values of `roots` under one concrete assignment index.
    pub fn eval_index(&self, roots: &[u32], index: u64) -> Vec<bool> {
        let mut buf = Vec::with_capacity(self.ops.len());
        self.run_block(index / 64, &mut buf);
        let lane = index % 64;
        roots
            .iter()
            .map(|r| (buf[*r as usize] >> lane) & 1 == 1)
            .collect()
    }
}

/// Validity by exhaustive enumeration under `limits`.
pub fn is_valid_with(f: &Formula, limits: &Limits) -> Result<bool> {
    Ok(counterexample(f, limits)?.is_none())
}

/// Satisfiability by exhaustive enumeration under `limits`.
pub fn is_satisfiable_with(f: &Formula, limits: &Limits) -> Result<bool> {
    Ok(model(f, limits)?.is_some())
}

pub fn is_valid(f: &Formula) -> Result<bool> {
    is_valid_with(f, &Limits::default())
}

pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    is_satisfiable_with(f, &Limits::default())
}

/// First falsifying assignment, if any.
pub fn counterexample(f: &Formula, limits: &Limits) -> Result<Option<Assignment>> {
    let mut p = Program::new(f.atoms());
    let root = p.formula(f)?;
    Ok(p.find(root, false, limits)?.map(|i| p.assignment(i)))
}

/// First satisfying assignment, if any.
pub fn model(f: &Formula, limits: &Limits) -> Result<Option<Assignment>> {
    let mut p = Program::new(f.atoms());
    let root = p.formula(f)?;
    Ok(p.find(root, true, limits)?.map(|i| p.assignment(i)))
}

/// Decides validity of `φ(p̄, r̄) → ψ(p̄, s̄)` when `r̄` and `s̄` are disjoint:
/// for every assignment to `shared`, either `φ` is unsatisfiable or `ψ` is
/// valid. Each of the three atom groups is capped separately. Returns the
/// first failing shared assignment.
pub fn split_implication_counterexample(
    phi: &Formula,
    psi: &Formula,
    shared: &[AtomId],
    limits: &Limits,
) -> Result<Option<Assignment>> {
    let sh: std::collections::BTreeSet<AtomId> = shared.iter().copied().collect();
    let left: Vec<AtomId> = phi.atoms().into_iter().filter(|a| !sh.contains(a)).collect();
    let right: Vec<AtomId> = psi.atoms().into_iter().filter(|a| !sh.contains(a)).collect();
    if left.iter().any(|a| right.contains(a)) {
        return Err(Error::pre("private atoms of the two sides overlap"));
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
    for idx in 0..(1u64 << shared.len()) {
        let a = Assignment::from_bits(shared, idx);
        let mut pl = Program::new(left.iter().copied());
        let mut pr = Program::new(right.iter().copied());
        for (atom, v) in a.iter() {
            pl.fix(atom, v);
            pr.fix(atom, v);
        }
        let l = pl.formula(phi)?;
        if pl.find(l, true, limits)?.is_none() {
            continue;
        }
        let r = pr.formula(psi)?;
        if pr.find(r, false, limits)?.is_some() {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn small_validity() {
        assert!(is_valid(&Formula::or(p(1), Formula::not(p(1)))).unwrap());
        assert!(!is_valid(&p(1)).unwrap());
        assert!(is_satisfiable(&p(1)).unwrap());
        let f = Formula::imp(Formula::and(p(1), p(2)), Formula::or(p(1), p(3)));
        assert!(is_valid(&f).unwrap());
        assert!(is_valid(&Formula::Top).unwrap());
        assert!(!is_satisfiable(&Formula::Bot).unwrap());
    }

    #[test]
    fn witness_is_smallest_and_correct() {
        let atoms: Vec<Formula> = (1..=9).map(p).collect();
        let f = Formula::conj(atoms.clone());
        let m = model(&f, &Limits::default()).unwrap().unwrap();
        assert!(f.eval(&m).unwrap());
        let g = Formula::disj(atoms);
        let c = counterexample(&g, &Limits::default()).unwrap().unwrap();
        assert!(!g.eval(&c).unwrap());
    }

    #[test]
    fn agrees_with_eval_on_many_vars() {
        // parity-like formula over 8 atoms; single-threaded and multi-threaded agree
        let f = (2..=8).fold(p(1), |acc, i| {
            Formula::or(
                Formula::and(acc.clone(), Formula::not(p(i))),
                Formula::and(Formula::not(acc), p(i)),
            )
        });
        let one = Limits { atom_cap: 24, workers: 1 };
        let many = Limits { atom_cap: 24, workers: 4 };
        assert_eq!(model(&f, &one).unwrap(), model(&f, &many).unwrap());
        let mut p8 = Program::new(f.atoms());
        let root = p8.formula(&f).unwrap();
        for idx in 0..256u64 {
            let a = p8.assignment(idx);
            assert_eq!(p8.eval_index(&[root], idx)[0], f.eval(&a).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = Formula::disj((1..=30).map(p));
        let err = is_valid_with(&f, &Limits::with_cap(24)).unwrap_err();
        assert!(err.is_cap());
    }
}
