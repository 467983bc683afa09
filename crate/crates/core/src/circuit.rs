//! Multi-output circuits: the carrier of every extracted interpolant.
//!
//! Text format, one gate per line with dense ids in topological order:
//!
//! ```text
//! inputs: 2
//! g0 INPUT 1
//! g1 INPUT 2
//! g2 AND 0 1
//! outputs: 2
//! ```
//!
//! Input `x_i` is read from atom `i`. Size is the gate count, inputs and
//! constants included.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{AtomId, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// `x_k`, with `1 ≤ k ≤ n`.
    Input(u32),
    Top,
    Bot,
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
    Box(u32),
}

impl Gate {
    pub fn preds(&self) -> Vec<u32> {
        match *self {
            Gate::Input(_) | Gate::Top | Gate::Bot => vec![],
            Gate::Not(a) | Gate::Box(a) => vec![a],
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Imp(a, b) => vec![a, b],
        }
    }

    fn map_preds(&self, f: impl Fn(u32) -> u32) -> Gate {
        match *self {
            Gate::Input(_) | Gate::Top | Gate::Bot => *self,
            Gate::Not(a) => Gate::Not(f(a)),
            Gate::Box(a) => Gate::Box(f(a)),
            Gate::And(a, b) => Gate::And(f(a), f(b)),
            Gate::Or(a, b) => Gate::Or(f(a), f(b)),
            Gate::Imp(a, b) => Gate::Imp(f(a), f(b)),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Gate::Input(_) => "INPUT",
            Gate::Top => "TRUE",
            Gate::Bot => "FALSE",
            Gate::Not(_) => "NOT",
            Gate::And(..) => "AND",
            Gate::Or(..) => "OR",
            Gate::Imp(..) => "IMP",
            Gate::Box(_) => "BOX",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    inputs: u32,
    gates: Vec<Gate>,
    outputs: Vec<u32>,
}

impl Circuit {
    /// Validates arities, input range, topological order and output ids.
    pub fn new(inputs: u32, gates: Vec<Gate>, outputs: Vec<u32>) -> Result<Self> {
        for (i, g) in gates.iter().enumerate() {
            if let Gate::Input(k) = g {
                if *k == 0 || *k > inputs {
                    return Err(Error::malformed(format!("g{i}: input x{k} outside 1..={inputs}")));
                }
            }
            for p in g.preds() {
                if p as usize >= i {
                    return Err(Error::malformed(format!(
                        "g{i}: predecessor g{p} is not earlier (cycle or non-topological order)"
                    )));
                }
            }
        }
        for o in &outputs {
            if *o as usize >= gates.len() {
                return Err(Error::malformed(format!("output g{o} does not exist")));
            }
        }
        Ok(Circuit {
            inputs,
            gates,
            outputs,
        })
    }

    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// No negation and no implication gate.
    pub fn is_monotone(&self) -> bool {
        !self
            .gates
            .iter()
            .any(|g| matches!(g, Gate::Not(_) | Gate::Imp(..)))
    }

    pub fn is_modal(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Box(_)))
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    /// Input indices reachable from some output.
    pub fn used_inputs(&self) -> BTreeSet<AtomId> {
        let mut live = vec![false; self.gates.len()];
        for o in &self.outputs {
            live[*o as usize] = true;
        }
        let mut out = BTreeSet::new();
        for i in (0..self.gates.len()).rev() {
            if !live[i] {
                continue;
            }
            if let Gate::Input(k) = self.gates[i] {
                out.insert(k);
            }
            for p in self.gates[i].preds() {
                live[p as usize] = true;
            }
        }
        out
    }

    /// Gate values in topological order, output string in output order.
    pub fn eval(&self, w: &[bool]) -> Result<Vec<bool>> {
        if w.len() != self.inputs as usize {
            return Err(Error::Eval(format!(
                "circuit has {} inputs, got {} bits",
                self.inputs,
                w.len()
            )));
        }
        let mut val: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(k) => w[k as usize - 1],
                Gate::Top => true,
                Gate::Bot => false,
                Gate::Not(a) => !val[a as usize],
                Gate::And(a, b) => val[a as usize] && val[b as usize],
                Gate::Or(a, b) => val[a as usize] || val[b as usize],
                Gate::Imp(a, b) => !val[a as usize] || val[b as usize],
                Gate::Box(_) => return Err(Error::Eval("modal gate in classical evaluation".into())),
            };
            val.push(v);
        }
        Ok(self.outputs.iter().map(|o| val[*o as usize]).collect())
    }

    /// The formula `[C]`; shared gates are duplicated (physically shared via `Arc`).
    pub fn unfold(&self) -> Result<Formula> {
        if self.outputs.len() != 1 {
            return Err(Error::pre(format!(
                "unfold needs a single-output circuit, got {} outputs",
                self.outputs.len()
            )));
        }
        self.unfold_output(0)
    }

    /// `[C]` for the `k`-th output.
    pub fn unfold_output(&self, k: usize) -> Result<Formula> {
        let o = *self
            .outputs
            .get(k)
            .ok_or_else(|| Error::pre(format!("no output {k}")))?;
        let mut forms: Vec<Arc<Formula>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates[..=o as usize] {
            let f = match *g {
                Gate::Input(i) => Formula::Atom(i),
                Gate::Top => Formula::Top,
                Gate::Bot => Formula::Bot,
                Gate::Not(a) => Formula::Not(forms[a as usize].clone()),
                Gate::Box(a) => Formula::Box(forms[a as usize].clone()),
                Gate::And(a, b) => Formula::And(forms[a as usize].clone(), forms[b as usize].clone()),
                Gate::Or(a, b) => Formula::Or(forms[a as usize].clone(), forms[b as usize].clone()),
                Gate::Imp(a, b) => Formula::Imp(forms[a as usize].clone(), forms[b as usize].clone()),
            };
            forms.push(Arc::new(f));
        }
        Ok((*forms[o as usize]).clone())
    }

    /// `C^f`: every `□` gate is erased and its edge continued.
    pub fn project_forgetful(&self) -> Circuit {
        let mut target: Vec<u32> = Vec::with_capacity(self.gates.len());
        let mut gates = Vec::new();
        for g in &self.gates {
            match *g {
                Gate::Box(a) => {
                    let t = target[a as usize];
                    target.push(t);
                }
                _ => {
                    let id = gates.len() as u32;
                    gates.push(g.map_preds(|p| target[p as usize]));
                    target.push(id);
                }
            }
        }
        let outputs = self.outputs.iter().map(|o| target[*o as usize]).collect();
        Circuit {
            inputs: self.inputs,
            gates,
            outputs,
        }
    }

    /// `C^c`: every `□` gate becomes a constant `⊤`.
    pub fn project_collapse(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .map(|g| if matches!(g, Gate::Box(_)) { Gate::Top } else { *g })
            .collect();
        Circuit {
            inputs: self.inputs,
            gates,
            outputs: self.outputs.clone(),
        }
    }

    /// Sub-circuit for a single output.
    pub fn select_output(&self, k: usize) -> Result<Circuit> {
        let o = *self
            .outputs
            .get(k)
            .ok_or_else(|| Error::pre(format!("no output {k}")))?;
        Ok(Circuit {
            inputs: self.inputs,
            gates: self.gates.clone(),
            outputs: vec![o],
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "inputs: {}", self.inputs);
        for (i, g) in self.gates.iter().enumerate() {
            let _ = write!(s, "g{i} {}", g.name());
            match *g {
                Gate::Input(k) => {
                    let _ = write!(s, " {k}");
                }
                _ => {
                    for p in g.preds() {
                        let _ = write!(s, " {p}");
                    }
                }
            }
            s.push('\n');
        }
        s.push_str("outputs:");
        for o in &self.outputs {
            let _ = write!(s, " {o}");
        }
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |line: usize, msg: String| Error::parse(line, format!("line {line}: {msg}"));
        let num = |line: usize, t: &str| -> Result<u32> {
            if t.len() > 1 && t.starts_with('0') {
                return Err(bad(line, format!("leading zero in '{t}'")));
            }
            t.parse::<u32>()
                .map_err(|_| bad(line, format!("expected a number, got '{t}'")))
        };
        let (l0, first) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "empty circuit file"))?;
        let n = match first.strip_prefix("inputs:") {
            Some(rest) => num(l0, rest.trim())?,
            None => return Err(bad(l0, "expected 'inputs: n'".into())),
        };
        let mut gates = Vec::new();
        let mut outputs = None;
        for (ln, l) in lines {
            if outputs.is_some() {
                return Err(bad(ln, "content after outputs line".into()));
            }
            if let Some(rest) = l.strip_prefix("outputs:") {
                outputs = Some(
                    rest.split_whitespace()
                        .map(|t| num(ln, t))
                        .collect::<Result<Vec<_>>>()?,
                );
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let id = toks[0]
                .strip_prefix('g')
                .ok_or_else(|| bad(ln, format!("expected gate id, got '{}'", toks[0])))?;
            let id = num(ln, id)?;
            if id as usize != gates.len() {
                return Err(bad(ln, format!("gate ids must be dense, expected g{}", gates.len())));
            }
            let ty = toks
                .get(1)
                .ok_or_else(|| bad(ln, "missing gate type".into()))?;
            let args = toks[2..]
                .iter()
                .map(|t| num(ln, t))
                .collect::<Result<Vec<_>>>()?;
            let want = match *ty {
                "INPUT" | "NOT" | "BOX" => 1,
                "TRUE" | "FALSE" => 0,
                "AND" | "OR" | "IMP" => 2,
                _ => return Err(bad(ln, format!("unknown gate type '{ty}'"))),
            };
            if args.len() != want {
                return Err(bad(ln, format!("{ty} takes {want} argument(s), got {}", args.len())));
            }
            let g = match *ty {
                "INPUT" => Gate::Input(args[0]),
                "TRUE" => Gate::Top,
                "FALSE" => Gate::Bot,
                "NOT" => Gate::Not(args[0]),
                "BOX" => Gate::Box(args[0]),
                "AND" => Gate::And(args[0], args[1]),
                "OR" => Gate::Or(args[0], args[1]),
                _ => Gate::Imp(args[0], args[1]),
            };
            gates.push(g);
        }
        let outputs = outputs.ok_or_else(|| Error::parse(text.len(), "missing 'outputs:' line"))?;
        Circuit::new(n, gates, outputs)
    }
}

/// Incremental construction with structural sharing of identical gates.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    inputs: u32,
    gates: Vec<Gate>,
    memo: HashMap<Gate, u32>,
}

impl CircuitBuilder {
    pub fn new(inputs: u32) -> Self {
        CircuitBuilder {
            inputs,
            gates: Vec::new(),
            memo: HashMap::new(),
        }
    }

    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&mut self, g: Gate) -> u32 {
        if let Some(i) = self.memo.get(&g) {
            return *i;
        }
        let i = self.gates.len() as u32;
        self.gates.push(g);
        self.memo.insert(g, i);
        i
    }

    pub fn input(&mut self, k: u32) -> u32 {
        assert!(k >= 1 && k <= self.inputs, "input x{k} out of range");
        self.gate(Gate::Input(k))
    }
    pub fn top(&mut self) -> u32 {
        self.gate(Gate::Top)
    }
    pub fn bot(&mut self) -> u32 {
        self.gate(Gate::Bot)
    }
    pub fn not(&mut self, a: u32) -> u32 {
        self.gate(Gate::Not(a))
    }
    pub fn and(&mut self, a: u32, b: u32) -> u32 {
        self.gate(Gate::And(a, b))
    }
    pub fn or(&mut self, a: u32, b: u32) -> u32 {
        self.gate(Gate::Or(a, b))
    }
    pub fn imp(&mut self, a: u32, b: u32) -> u32 {
        self.gate(Gate::Imp(a, b))
    }
    pub fn boxed(&mut self, a: u32) -> u32 {
        self.gate(Gate::Box(a))
    }

    /// Balanced binary conjunction; `⊤` for an empty list.
    pub fn and_all(&mut self, items: &[u32]) -> u32 {
        match items.len() {
            0 => self.top(),
            1 => items[0],
            n => {
                let l = self.and_all(&items[..n / 2]);
                let r = self.and_all(&items[n / 2..]);
                self.and(l, r)
            }
        }
    }

    /// Balanced binary disjunction; `⊥` for an empty list.
    pub fn or_all(&mut self, items: &[u32]) -> u32 {
        match items.len() {
            0 => self.bot(),
            1 => items[0],
            n => {
                let l = self.or_all(&items[..n / 2]);
                let r = self.or_all(&items[n / 2..]);
                self.or(l, r)
            }
        }
    }

    /// Compiles a formula; atom `i` reads input `x_i`, big connectives become
    /// balanced binary trees. Extended atoms are rejected.
    pub fn formula(&mut self, f: &Formula) -> Result<u32> {
        self.formula_with(f, &mut |_, e| {
            Err(Error::pre(format!("extended atom {e} has no circuit input")))
        })
    }

    /// Like [`CircuitBuilder::formula`] with a handler for extended atoms.
    pub fn formula_with(
        &mut self,
        f: &Formula,
        ext: &mut dyn FnMut(&mut CircuitBuilder, &Formula) -> Result<u32>,
    ) -> Result<u32> {
        let mut memo = HashMap::new();
        self.formula_memo(f, ext, &mut memo)
    }

    fn formula_memo(
        &mut self,
        f: &Formula,
        ext: &mut dyn FnMut(&mut CircuitBuilder, &Formula) -> Result<u32>,
        memo: &mut HashMap<*const Formula, u32>,
    ) -> Result<u32> {
        let key = f as *const Formula;
        if let Some(g) = memo.get(&key) {
            return Ok(*g);
        }
        let out = match f {
            Formula::Top => self.top(),
            Formula::Bot => self.bot(),
            Formula::Atom(a) => {
                if *a == 0 || *a > self.inputs {
                    return Err(Error::pre(format!("atom {a} outside inputs 1..={}", self.inputs)));
                }
                self.input(*a)
            }
            Formula::Ext(_) => ext(self, f)?,
            Formula::Not(a) => {
                let x = self.formula_memo(a, ext, memo)?;
                self.not(x)
            }
            Formula::Box(a) => {
                let x = self.formula_memo(a, ext, memo)?;
                self.boxed(x)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                let x = self.formula_memo(a, ext, memo)?;
                let y = self.formula_memo(b, ext, memo)?;
                match f {
                    Formula::And(..) => self.and(x, y),
                    Formula::Or(..) => self.or(x, y),
                    _ => self.imp(x, y),
                }
            }
            Formula::BigAnd(v) | Formula::BigOr(v) => {
                let kids = v
                    .iter()
                    .map(|c| self.formula_memo(c, ext, memo))
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

    /// Copies `c` into this builder, feeding input `x_k` from `inputs[k-1]`.
    pub fn embed(&mut self, c: &Circuit, inputs: &[u32]) -> Result<Vec<u32>> {
        if inputs.len() != c.inputs() as usize {
            return Err(Error::pre(format!(
                "embedding needs {} inputs, got {}",
                c.inputs(),
                inputs.len()
            )));
        }
        let mut ids: Vec<u32> = Vec::with_capacity(c.size());
        for g in c.gates() {
            let id = match *g {
                Gate::Input(k) => inputs[k as usize - 1],
                _ => self.gate(g.map_preds(|p| ids[p as usize])),
            };
            ids.push(id);
        }
        Ok(c.outputs().iter().map(|o| ids[*o as usize]).collect())
    }

    pub fn finish(self, outputs: Vec<u32>) -> Circuit {
        Circuit::new(self.inputs, self.gates, outputs).expect("builder keeps circuits well formed")
    }
}
