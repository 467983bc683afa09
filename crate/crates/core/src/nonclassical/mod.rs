//! Disjunctive interpolation for intuitionistic logic and for `S4` / `GL`.
//!
//! The pipeline for a proof of `⇒ φ → ψ ∨ θ` (modal: `⇒ φ → □ψ ∨ □θ`):
//!
//! 1. obtain a proof of `φ ⇒ ψ ∨ θ`, taking the premise of a final `Rimp`
//!    or otherwise cutting against `φ, φ → χ ⇒ χ`;
//! 2. collect the Horn formulas `Σ` from its right rules (modal rules for
//!    `S4` / `GL`);
//! 3. run [`atomic_pdi`] on `Σ`, the translated `φ` and the atoms `⟨ψ⟩`, `⟨θ⟩`;
//! 4. replace every input `⟨α⟩` of the two circuits by a circuit for `α`.
//!
//! Every result carries the contract checks that were run on it.

pub mod horn;
pub mod ipc;
pub mod kripke;
pub mod translate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

pub use horn::{horn_circuit, horn_closure, HornFormula};
pub use ipc::{ipc_prove, ipc_valid, IpcVerdict, DEFAULT_ORACLE_CAP};
pub use kripke::{countermodel, formula_countermodel, rooted_frames, Countermodel, Frame, FrameClass, SearchResult};
pub use translate::{translate_t, translate_t0, translate_t1};

use crate::bits::{Limits, Program};
use crate::circuit::{Circuit, CircuitBuilder};
use crate::error::{Error, Result};
use crate::formula::{AtomId, ExtAbstraction, Formula, Sequent};
use crate::kernel::{check_sequent_proof, Calculus, ProofBuilder, Rule, SequentProof, System};

/// Which logic the interpolant pair is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Logic {
    Classical,
    Ipc,
    S4,
    GL,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Classical => "classical",
            Logic::Ipc => "IPC",
            Logic::S4 => "S4",
            Logic::GL => "GL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => write!(f, "PASS"),
            Outcome::Fail(w) => write!(f, "FAIL ({w})"),
            Outcome::Skipped(w) => write!(f, "SKIPPED ({w})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractCheck {
    /// e.g. `phi->C|D`.
    pub contract: String,
    /// e.g. `classical`, `ipc-oracle`, `kripke-S4`.
    pub method: String,
    pub outcome: Outcome,
}

/// Bounds for the checks run on extracted pairs.
#[derive(Clone, Debug)]
pub struct CheckLimits {
    pub limits: Limits,
    pub oracle_cap: usize,
    pub kripke_worlds: usize,
    /// Upper bound on `worlds × atoms` in the countermodel search.
    pub kripke_bits: usize,
}

impl Default for CheckLimits {
    fn default() -> Self {
        CheckLimits {
            limits: Limits::default(),
            oracle_cap: DEFAULT_ORACLE_CAP,
            kripke_worlds: 5,
            kripke_bits: 16,
        }
    }
}

/// `(C, D)` with `φ → C ∨ D`, `C → ψ`, `D → θ` (modal: `□ψ`, `□θ`).
#[derive(Clone, Debug)]
pub struct DisjunctiveInterpolant {
    pub logic: Logic,
    /// Input `x_i` of both circuits reads `inputs[i-1]`.
    pub inputs: Vec<Formula>,
    pub c: Circuit,
    pub d: Circuit,
    pub sigma: Vec<HornFormula>,
    pub checks: Vec<ContractCheck>,
}

impl DisjunctiveInterpolant {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn monotone(&self) -> bool {
        self.c.is_monotone() && self.d.is_monotone()
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "logic={}", self.logic);
        let _ = writeln!(s, "c_size={}", self.c.size());
        let _ = writeln!(s, "d_size={}", self.d.size());
        let _ = writeln!(s, "monotone={}", self.monotone());
        let _ = writeln!(s, "sigma_size={}", self.sigma.len());
        for c in &self.checks {
            let _ = writeln!(s, "check.{}.{}={}", c.method, c.contract, c.outcome);
        }
        let _ = writeln!(s, "verification={}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Plain and extended atoms of `f`.
fn atomics(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::Atom(_) | Formula::Ext(_) => {
            out.insert(f.clone());
        }
        _ => {
            for c in f.children() {
                atomics(c, out);
            }
        }
    }
}

/// `C(inputs)` as a formula.
fn apply_circuit(c: &Circuit, inputs: &[Formula]) -> Result<Formula> {
    let map: BTreeMap<AtomId, Formula> =
        inputs.iter().enumerate().map(|(i, f)| (i as AtomId + 1, f.clone())).collect();
    Ok(c.unfold()?.substitute(&map))
}

/// Classical validity with extended atoms read as opaque atoms.
fn classical_check(f: &Formula, limits: &Limits) -> Outcome {
    let mut abs = ExtAbstraction::new([f]);
    let g = abs.apply(f);
    match crate::bits::counterexample(&g, limits) {
        Ok(None) => Outcome::Pass,
        Ok(Some(a)) => {
            let bits: Vec<String> = a.iter().map(|(k, v)| format!("{k}:{}", v as u8)).collect();
            Outcome::Fail(format!("falsified at {}", bits.join(",")))
        }
        Err(e) if e.is_cap() => Outcome::Skipped(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn ipc_check(f: &Formula, cap: usize) -> Outcome {
    let mut abs = ExtAbstraction::new([f]);
    let g = abs.apply(f);
    match ipc_valid(&g, cap) {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail("not intuitionistically provable".into()),
        Err(e) if e.is_cap() => Outcome::Skipped(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check(contract: &str, method: &str, outcome: Outcome) -> ContractCheck {
    ContractCheck {
        contract: contract.into(),
        method: method.into(),
        outcome,
    }
}

/// Monotone `C`, `D` over the atoms of `φ` with `Γ, φ ⇒ C ∨ D`, `Γ, C ⇒ q`, `Γ, D ⇒ r`.
///
/// The precondition `Γ, φ ⇒ q ∨ r` is decided exactly: for Horn `Γ` and
/// monotone `φ` it holds iff every `ā` satisfying `φ` has `q` or `r` in the
/// least model of `Γ ∪ ā`.
pub fn atomic_pdi(
    gamma: &[HornFormula],
    phi: &Formula,
    q: &Formula,
    r: &Formula,
    limits: &Limits,
) -> Result<DisjunctiveInterpolant> {
    let mut set = BTreeSet::new();
    atomics(phi, &mut set);
    let p: Vec<Formula> = set.into_iter().collect();
    if p.len() > limits.atom_cap || p.len() > 63 {
        return Err(Error::CapExceeded {
            what: "atoms of the monotone side",
            limit: limits.atom_cap.min(63),
            actual: p.len(),
        });
    }
    let mut abs = ExtAbstraction::new(p.iter().chain([phi]));
    let plain = abs.apply(phi);
    if !plain.is_monotone() || plain.features().modal {
        return Err(Error::pre(format!("{phi} is not a monotone propositional formula")));
    }
    let ids: Vec<AtomId> = p.iter().map(|f| match abs.apply(f) {
        Formula::Atom(a) => a,
        _ => unreachable!("atomic formulas abstract to atoms"),
    }).collect();
    for idx in 0..(1u64 << p.len()) {
        let a = crate::formula::Assignment::from_bits(&ids, idx);
        if !plain.eval(&a)? {
            continue;
        }
        let facts: Vec<&Formula> = p.iter().zip(&ids).filter(|(_, id)| a.get(**id) == Some(true)).map(|x| x.0).collect();
        let closure = horn_closure(gamma, facts);
        if !closure.contains(q) && !closure.contains(r) {
            return Err(Error::pre("Γ, φ ⇒ q ∨ r is not valid"));
        }
    }
    let c = horn_circuit(gamma, &p, q)?;
    let d = horn_circuit(gamma, &p, r)?;
    let g = Formula::conj(gamma.iter().map(HornFormula::to_formula));
    let (cf, df) = (apply_circuit(&c, &p)?, apply_circuit(&d, &p)?);
    let checks = vec![
        check(
            "gamma,phi->C|D",
            "classical",
            classical_check(&Formula::imp(Formula::and(g.clone(), phi.clone()), Formula::or(cf.clone(), df.clone())), limits),
        ),
        check("gamma,C->q", "classical", classical_check(&Formula::imp(Formula::and(g.clone(), cf), q.clone()), limits)),
        check("gamma,D->r", "classical", classical_check(&Formula::imp(Formula::and(g, df), r.clone()), limits)),
    ];
    Ok(DisjunctiveInterpolant {
        logic: Logic::Classical,
        inputs: p,
        c,
        d,
        sigma: gamma.to_vec(),
        checks,
    })
}

fn dedup(v: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|f| seen.insert(f.clone())).collect()
}

fn require_accepted(p: &SequentProof) -> Result<()> {
    if p.nodes.is_empty() {
        return Err(Error::pre("empty proof"));
    }
    if let Some(r) = check_sequent_proof(p).rejection {
        return Err(Error::pre(format!("proof rejected at node {}: {}", r.step, r.reason)));
    }
    Ok(())
}

/// Per-node `Σ` as sets of entry indices; `local` gives a node's own entry
/// and whether it replaces the premises' entries.
fn collect_sigma(
    p: &SequentProof,
    local: impl Fn(&crate::kernel::ProofNode) -> Result<Option<(HornFormula, bool)>>,
) -> Result<Vec<HornFormula>> {
    let mut entries: Vec<HornFormula> = Vec::new();
    let mut index: BTreeMap<HornFormula, usize> = BTreeMap::new();
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(p.nodes.len());
    for node in &p.nodes {
        let own = local(node)?;
        let mut s = BTreeSet::new();
        if !matches!(own, Some((_, true))) {
            for &q in &node.premises {
                s.extend(sets[q].iter().copied());
            }
        }
        if let Some((h, _)) = own {
            let next = entries.len();
            let id = *index.entry(h.clone()).or_insert(next);
            if id == next {
                entries.push(h);
            }
            s.insert(id);
        }
        sets.push(s);
    }
    let root = sets.last().cloned().unwrap_or_default();
    Ok(root.into_iter().map(|i| entries[i].clone()).collect())
}

/// `Σ_π` for an `LJ` proof: every right rule with conclusion `Γ ⇒ χ` adds
/// `⋀⟨γ⟩ → ⟨χ⟩` (the bare atom `⟨χ⟩` when `Γ` is empty), and `⇒ ⊤` adds `⟨⊤⟩`.
pub fn extract_sigma_lj(p: &SequentProof) -> Result<Vec<HornFormula>> {
    if p.calculus.system != System::LJ {
        return Err(Error::pre(format!("expected an LJ proof, got {}", p.calculus)));
    }
    require_accepted(p)?;
    collect_sigma(p, |n| {
        Ok(match n.rule {
            Rule::Rand | Rule::Ror1 | Rule::Ror2 | Rule::Rimp => {
                let prem = dedup(n.sequent.ant.iter().map(|g| Formula::ext(g.clone())));
                Some((HornFormula::new(prem, Formula::ext(n.sequent.suc[0].clone()))?, false))
            }
            Rule::AxTop => Some((HornFormula::fact(Formula::ext(Formula::Top))?, false)),
            _ => None,
        })
    })
}

/// `Σ_π` for an `S4` or `GL` proof: the `RS4` and `GL` rules with conclusion
/// `□Γ ⇒ □φ` add `⋀⟨□γ⟩ → ⟨□φ⟩`; for `GL` this entry replaces the premise's `Σ`.
pub fn extract_sigma_modal(p: &SequentProof) -> Result<Vec<HornFormula>> {
    let gl = match p.calculus.system {
        System::S4 => false,
        System::GL => true,
        _ => return Err(Error::pre(format!("expected an S4 or GL proof, got {}", p.calculus))),
    };
    require_accepted(p)?;
    collect_sigma(p, |n| {
        Ok(match n.rule {
            Rule::RS4 | Rule::GL => {
                let prem = dedup(n.sequent.ant.iter().map(|g| Formula::ext(g.clone())));
                Some((HornFormula::new(prem, Formula::ext(n.sequent.suc[0].clone()))?, gl))
            }
            _ => None,
        })
    })
}

/// Splits `⇒ φ → χ` and derives `φ ⇒ χ`.
fn antecedent_form(p: &SequentProof) -> Result<(Formula, Formula, SequentProof)> {
    let root = p.root().ok_or_else(|| Error::pre("empty proof"))?;
    let (phi, chi) = match (root.ant.as_slice(), root.suc.as_slice()) {
        ([], [Formula::Imp(a, b)]) => ((**a).clone(), (**b).clone()),
        _ => return Err(Error::pre("end sequent is not ⇒ φ → χ")),
    };
    let want = Sequent::new(vec![phi.clone()], vec![chi.clone()]);
    let last = p.nodes.last().expect("nonempty");
    if last.rule == Rule::Rimp && p.nodes[last.premises[0]].sequent == want {
        let mut b = ProofBuilder::new(p.calculus);
        let _ = b.import(p);
        let sub = b.finish(last.premises[0]);
        return Ok((phi, chi, sub));
    }
    let mut b = ProofBuilder::new(Calculus::new(p.calculus.system, true));
    let whole = b.import(p);
    let left = b.lw(whole, phi.clone());
    let ax_phi = b.ax(phi.clone());
    let ax_chi = b.ax(chi.clone());
    let w = b.lw(ax_chi, phi.clone());
    let right = b.le(w, 1)?;
    let mp = b.limp(ax_phi, right)?;
    let root = b.cut(left, mp)?;
    let out = b.finish(root);
    require_accepted(&out)?;
    Ok((phi, chi, out))
}

/// Replaces every input `⟨α⟩` by a circuit for `α` and plain atoms by themselves.
fn standard_substitution(c: &Circuit, inputs: &[Formula], n: u32) -> Result<Circuit> {
    let mut b = CircuitBuilder::new(n);
    let mut ins = Vec::with_capacity(inputs.len());
    for f in inputs {
        let g = match f {
            Formula::Ext(inner) => b.formula(inner)?,
            Formula::Atom(a) => b.input(*a),
            other => return Err(Error::pre(format!("{other} is not an atom"))),
        };
        ins.push(g);
    }
    let out = b.embed(c, &ins)?;
    Ok(b.finish(out))
}

fn max_atom<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> u32 {
    fs.into_iter().filter_map(|f| f.atoms().iter().next_back().copied()).max().unwrap_or(0)
}

/// Circuit computing `φ → C ∨ D`, `C → ψ'` or `D → θ'` over `n` inputs.
fn contract_circuit(n: u32, lhs: Lhs<'_>, rhs: &Formula) -> Result<Circuit> {
    let mut b = CircuitBuilder::new(n);
    let ins: Vec<u32> = (1..=n).map(|k| b.input(k)).collect();
    let l = match lhs {
        Lhs::Formula(f, c, d) => {
            let x = b.formula(f)?;
            let cc = b.embed(c, &ins)?[0];
            let dd = b.embed(d, &ins)?[0];
            let y = b.or(cc, dd);
            let g = b.imp(x, y);
            return Ok(b.finish(vec![g]));
        }
        Lhs::Circuit(c) => b.embed(c, &ins)?[0],
    };
    let r = b.formula(rhs)?;
    let g = b.imp(l, r);
    Ok(b.finish(vec![g]))
}

enum Lhs<'a> {
    Formula(&'a Formula, &'a Circuit, &'a Circuit),
    Circuit(&'a Circuit),
}

fn circuit_valid(c: &Circuit, limits: &Limits) -> Outcome {
    let mut p = Program::new(1..=c.inputs());
    let root = match p.circuit(c) {
        Ok(r) => r[0],
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match p.find(root, false, limits) {
        Ok(None) => Outcome::Pass,
        Ok(Some(i)) => {
            let bits: Vec<String> = p.assignment(i).iter().map(|(k, v)| format!("{k}:{}", v as u8)).collect();
            Outcome::Fail(format!("falsified at {}", bits.join(",")))
        }
        Err(e) if e.is_cap() => Outcome::Skipped(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// Monotone PDI for `LJ`: from a proof of `⇒ φ → ψ ∨ θ` with monotone `φ`,
/// circuits `C`, `D` over the atoms of `φ` with `φ → C ∨ D`, `C → ψ`, `D → θ`.
pub fn lj_pdi(p: &SequentProof, lim: &CheckLimits) -> Result<DisjunctiveInterpolant> {
    if p.calculus.system != System::LJ {
        return Err(Error::pre(format!("expected an LJ proof, got {}", p.calculus)));
    }
    require_accepted(p)?;
    let (phi, chi, sub) = antecedent_form(p)?;
    let (psi, theta) = match &chi {
        Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
        _ => return Err(Error::pre("succedent is not ψ ∨ θ")),
    };
    if !phi.is_monotone() {
        return Err(Error::pre(format!("{phi} is not monotone")));
    }
    let sigma = extract_sigma_lj(&sub)?;
    let phi_t = translate_t(&phi);
    let atomic = atomic_pdi(&sigma, &phi_t, &Formula::ext(psi.clone()), &Formula::ext(theta.clone()), &lim.limits)?;
    let n = max_atom([&phi, &psi, &theta]);
    let c = standard_substitution(&atomic.c, &atomic.inputs, n)?;
    let d = standard_substitution(&atomic.d, &atomic.inputs, n)?;

    let mut checks: Vec<ContractCheck> = atomic.checks;
    let g = Formula::conj(sigma.iter().map(HornFormula::to_formula));
    let preserved = Formula::imp(Formula::and(g.clone(), phi_t.clone()), translate_t(&chi));
    checks.push(check("sigma,phi^t->chi^t", "classical", classical_check(&preserved, &lim.limits)));
    checks.push(check("sigma,phi^t->chi^t", "ipc-oracle", ipc_check(&preserved, lim.oracle_cap)));
    let sound = sigma
        .iter()
        .map(|h| ipc_check(&h.to_formula().standard_substitute(), lim.oracle_cap))
        .find(|o| *o != Outcome::Pass)
        .unwrap_or(Outcome::Pass);
    checks.push(check("sigma^s", "ipc-oracle", sound));

    checks.extend(check_contracts(Logic::Ipc, &phi, &psi, &theta, &c, &d, lim)?);
    Ok(DisjunctiveInterpolant {
        logic: Logic::Ipc,
        inputs: (1..=n).map(Formula::atom).collect(),
        c,
        d,
        sigma,
        checks,
    })
}

/// Monotone MDI for `S4` (translation `t₁`) and `GL` (translation `t₀`):
/// from a proof of `⇒ φ → □ψ ∨ □θ` with monotone `φ`, `L_□`-circuits with
/// `φ → C ∨ D`, `C → □ψ`, `D → □θ`.
pub fn modal_mdi(p: &SequentProof, lim: &CheckLimits) -> Result<DisjunctiveInterpolant> {
    let (logic, class) = match p.calculus.system {
        System::S4 => (Logic::S4, FrameClass::S4),
        System::GL => (Logic::GL, FrameClass::GL),
        _ => return Err(Error::pre(format!("expected an S4 or GL proof, got {}", p.calculus))),
    };
    require_accepted(p)?;
    let (phi, chi, sub) = antecedent_form(p)?;
    let (bpsi, btheta) = match &chi {
        Formula::Or(a, b) if matches!(**a, Formula::Box(_)) && matches!(**b, Formula::Box(_)) => {
            ((**a).clone(), (**b).clone())
        }
        _ => return Err(Error::pre("succedent is not □ψ ∨ □θ")),
    };
    if !phi.is_monotone() {
        return Err(Error::pre(format!("{phi} is not monotone")));
    }
    let sigma = extract_sigma_modal(&sub)?;
    let tr = |f: &Formula| if logic == Logic::S4 { translate_t1(f) } else { translate_t0(f) };
    let phi_t = tr(&phi);
    let atomic = atomic_pdi(&sigma, &phi_t, &Formula::ext(bpsi.clone()), &Formula::ext(btheta.clone()), &lim.limits)?;
    let n = max_atom([&phi, &bpsi, &btheta]);
    let c = standard_substitution(&atomic.c, &atomic.inputs, n)?;
    let d = standard_substitution(&atomic.d, &atomic.inputs, n)?;

    let mut checks: Vec<ContractCheck> = atomic.checks;
    let g = Formula::conj(sigma.iter().map(HornFormula::to_formula));
    let preserved = Formula::imp(Formula::and(g, phi_t), tr(&chi));
    checks.push(check("sigma,phi^t->chi^t", "classical", classical_check(&preserved, &lim.limits)));
    let kripke_name = format!("kripke-{logic}");
    let mut sound = Outcome::Pass;
    for h in &sigma {
        let f = h.to_formula().standard_substitute();
        let mut b = CircuitBuilder::new(max_atom([&f]));
        let out = b.formula(&f)?;
        let o = kripke_outcome(&b.finish(vec![out]), class, lim);
        if o != Outcome::Pass {
            sound = o;
            break;
        }
    }
    checks.push(check("sigma^s", &kripke_name, sound));

    checks.extend(check_contracts(logic, &phi, &bpsi, &btheta, &c, &d, lim)?);
    Ok(DisjunctiveInterpolant {
        logic,
        inputs: (1..=n).map(Formula::atom).collect(),
        c,
        d,
        sigma,
        checks,
    })
}

/// The logic and `(φ, ψ, θ)` of a proof of `⇒ φ → ψ ∨ θ` (modal: `⇒ φ → □ψ ∨ □θ`,
/// returned with the boxes).
pub fn pdi_target(p: &SequentProof) -> Result<(Logic, Formula, Formula, Formula)> {
    let logic = match p.calculus.system {
        System::LJ => Logic::Ipc,
        System::S4 => Logic::S4,
        System::GL => Logic::GL,
        _ => return Err(Error::pre(format!("no disjunctive interpolation for {}", p.calculus))),
    };
    let root = p.root().ok_or_else(|| Error::pre("empty proof"))?;
    match (root.ant.as_slice(), root.suc.as_slice()) {
        ([], [Formula::Imp(phi, chi)]) => match &**chi {
            Formula::Or(l, r) => Ok((logic, (**phi).clone(), (**l).clone(), (**r).clone())),
            _ => Err(Error::pre("succedent is not a disjunction")),
        },
        _ => Err(Error::pre("end sequent is not ⇒ φ → χ")),
    }
}

/// Checks `φ → [C] ∨ [D]`, `[C] → left`, `[D] → right` for a pair over
/// plain atoms, where `x_i` reads atom `i`.
///
/// Propositional logics get a truth-table check and the IPC oracle (when
/// `logic` is [`Logic::Ipc`]); `S4` and `GL` get the forgetful or collapse
/// projection and the bounded countermodel search.
pub fn check_contracts(
    logic: Logic,
    phi: &Formula,
    left: &Formula,
    right: &Formula,
    c: &Circuit,
    d: &Circuit,
    lim: &CheckLimits,
) -> Result<Vec<ContractCheck>> {
    let n = max_atom([phi, left, right]).max(c.inputs()).max(d.inputs());
    let (c, d) = (widen(c, n)?, widen(d, n)?);
    let mut checks = Vec::new();
    match logic {
        Logic::Classical | Logic::Ipc => {
            let cf = c.unfold()?;
            let df = d.unfold()?;
            let contracts = [
                ("phi->C|D", Formula::imp(phi.clone(), Formula::or(cf.clone(), df.clone()))),
                ("C->psi", Formula::imp(cf, left.clone())),
                ("D->theta", Formula::imp(df, right.clone())),
            ];
            for (name, f) in &contracts {
                checks.push(check(name, "classical", classical_check(f, &lim.limits)));
                if logic == Logic::Ipc {
                    checks.push(check(name, "ipc-oracle", ipc_check(f, lim.oracle_cap)));
                }
            }
        }
        Logic::S4 | Logic::GL => {
            let class = if logic == Logic::S4 { FrameClass::S4 } else { FrameClass::GL };
            let method = format!("kripke-{logic}");
            let contracts = [
                ("phi->C|D", contract_circuit(n, Lhs::Formula(phi, &c, &d), &Formula::Top)?),
                ("C->box_psi", contract_circuit(n, Lhs::Circuit(&c), left)?),
                ("D->box_theta", contract_circuit(n, Lhs::Circuit(&d), right)?),
            ];
            for (name, k) in &contracts {
                let (proj, pname) = match logic {
                    Logic::S4 => (k.project_forgetful(), "forgetful"),
                    _ => (k.project_collapse(), "collapse"),
                };
                checks.push(check(name, pname, circuit_valid(&proj, &lim.limits)));
                checks.push(check(name, &method, kripke_outcome(k, class, lim)));
            }
        }
    }
    Ok(checks)
}

/// The same circuit read over `n ≥ c.inputs()` inputs.
fn widen(c: &Circuit, n: u32) -> Result<Circuit> {
    if c.inputs() == n {
        return Ok(c.clone());
    }
    let mut b = CircuitBuilder::new(n);
    let ins: Vec<u32> = (1..=c.inputs()).map(|k| b.input(k)).collect();
    let out = b.embed(c, &ins)?;
    Ok(b.finish(out))
}

fn kripke_outcome(c: &Circuit, class: FrameClass, lim: &CheckLimits) -> Outcome {
    match countermodel(c, class, lim.kripke_worlds, lim.kripke_bits) {
        Ok(SearchResult { countermodel: Some(m), .. }) => Outcome::Fail(format!("countermodel {m}")),
        Ok(SearchResult { worlds: 0, .. }) => Outcome::Skipped("too many atoms for the countermodel search".into()),
        Ok(SearchResult { worlds, .. }) if worlds < lim.kripke_worlds => {
            Outcome::Skipped(format!("searched only up to {worlds} worlds"))
        }
        Ok(_) => Outcome::Pass,
        Err(e) => Outcome::Fail(e.to_string()),
    }
}
