//! Hard instance families: pigeonhole, clique, coloring, the clique-color
//! tautology and its intuitionistic and modal lifts. Clause sets serialize to
//! DIMACS with a comment header naming every variable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write;

use crate::bits::{self, Limits};
use crate::error::{Error, Result};
use crate::formula::{AtomId, AtomName, AtomTable, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub atom: AtomId,
    pub positive: bool,
}

impl Lit {
    pub fn pos(atom: AtomId) -> Self {
        Lit { atom, positive: true }
    }
    pub fn neg(atom: AtomId) -> Self {
        Lit {
            atom,
            positive: false,
        }
    }
    pub fn negate(self) -> Self {
        Lit {
            atom: self.atom,
            positive: !self.positive,
        }
    }
    pub fn from_dimacs(v: i64) -> Result<Self> {
        if v == 0 || v.unsigned_abs() > AtomId::MAX as u64 {
            return Err(Error::malformed(format!("bad literal {v}")));
        }
        Ok(Lit {
            atom: v.unsigned_abs() as AtomId,
            positive: v > 0,
        })
    }
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.atom as i64
        } else {
            -(self.atom as i64)
        }
    }
    /// `p` or `¬p`.
    pub fn to_formula(self) -> Formula {
        if self.positive {
            Formula::atom(self.atom)
        } else {
            Formula::not(Formula::atom(self.atom))
        }
    }
    /// `p` or `p → ⊥`.
    pub fn to_formula_lp(self) -> Formula {
        if self.positive {
            Formula::atom(self.atom)
        } else {
            Formula::neg(Formula::atom(self.atom))
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A finite sequence of literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Clause(pub Vec<Lit>);

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Self {
        Clause(lits)
    }

    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.contains(&l)
    }

    /// Contains some `p` together with `¬p`.
    pub fn is_tautological(&self) -> bool {
        self.0.iter().any(|l| self.0.contains(&l.negate()))
    }

    /// Sorted, duplicate-free copy.
    pub fn normalized(&self) -> Clause {
        let set: BTreeSet<Lit> = self.0.iter().copied().collect();
        Clause(set.into_iter().collect())
    }

    /// Equality as literal sets.
    pub fn same_set(&self, other: &Clause) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        self.0.iter().map(|l| l.atom).collect()
    }

    /// `⋁` of the literals, right-nested; `⊥` for the empty clause.
    pub fn to_formula(&self) -> Formula {
        Formula::disj(self.0.iter().map(|l| l.to_formula()))
    }

    pub fn to_formula_lp(&self) -> Formula {
        Formula::disj(self.0.iter().map(|l| l.to_formula_lp()))
    }

    pub fn eval_bits(&self, value: impl Fn(AtomId) -> bool) -> bool {
        self.0.iter().any(|l| value(l.atom) == l.positive)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Clauses over a named atom table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
    pub table: AtomTable,
}

impl ClauseSet {
    pub fn new(clauses: Vec<Clause>, table: AtomTable) -> Self {
        ClauseSet { clauses, table }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        self.clauses.iter().flat_map(|c| c.atoms()).collect()
    }

    /// Number of variables: the table size, or the largest atom when unnamed.
    pub fn num_vars(&self) -> usize {
        let max = self.atoms().into_iter().next_back().unwrap_or(0) as usize;
        max.max(self.table.len())
    }

    /// `⋀` of the clause disjunctions (binary, right-nested).
    pub fn to_formula(&self) -> Formula {
        Formula::conj(self.clauses.iter().map(|c| c.to_formula()))
    }

    pub fn to_formula_lp(&self) -> Formula {
        Formula::conj(self.clauses.iter().map(|c| c.to_formula_lp()))
    }

    /// Clauses at the given indices, sharing the table.
    pub fn subset(&self, idx: &[usize]) -> ClauseSet {
        ClauseSet {
            clauses: idx.iter().map(|i| self.clauses[*i].clone()).collect(),
            table: self.table.clone(),
        }
    }

    pub fn to_dimacs(&self, header: &str) -> String {
        let mut s = String::new();
        for line in header.lines() {
            let _ = writeln!(s, "c {line}");
        }
        for (id, name) in self.table.iter() {
            let _ = writeln!(s, "c atom {id} {name}");
        }
        let _ = writeln!(s, "p cnf {} {}", self.num_vars(), self.clauses.len());
        for c in &self.clauses {
            for l in c.lits() {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }

    /// Reads DIMACS CNF. `c atom <id> <name>` comments rebuild the atom table.
    pub fn parse_dimacs(text: &str) -> Result<ClauseSet> {
        let mut names: BTreeMap<AtomId, AtomName> = BTreeMap::new();
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let pos = offset;
            offset += line.len();
            let l = line.trim();
            if l.is_empty() || l == "%" {
                continue;
            }
            if let Some(c) = l.strip_prefix('c') {
                let mut it = c.split_whitespace();
                if it.next() == Some("atom") {
                    let id = it
                        .next()
                        .and_then(|t| t.parse::<AtomId>().ok())
                        .filter(|i| *i > 0)
                        .ok_or_else(|| Error::parse(pos, "bad atom comment"))?;
                    let name: AtomName = it
                        .next()
                        .ok_or_else(|| Error::parse(pos, "atom comment without a name"))?
                        .parse()
                        .map_err(|_| Error::parse(pos, "bad atom name"))?;
                    if names.insert(id, name).is_some() {
                        return Err(Error::parse(pos, format!("atom {id} named twice")));
                    }
                }
                continue;
            }
            if let Some(p) = l.strip_prefix("p ") {
                if header.is_some() {
                    return Err(Error::parse(pos, "second problem line"));
                }
                let t: Vec<&str> = p.split_whitespace().collect();
                if t.len() != 3 || t[0] != "cnf" {
                    return Err(Error::parse(pos, "expected 'p cnf <vars> <clauses>'"));
                }
                let v = t[1].parse().map_err(|_| Error::parse(pos, "bad variable count"))?;
                let c = t[2].parse().map_err(|_| Error::parse(pos, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let (nv, _) = header.ok_or_else(|| Error::parse(pos, "clause before the problem line"))?;
            for tok in l.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("bad literal '{tok}'")))?;
                if v == 0 {
                    clauses.push(Clause(std::mem::take(&mut cur)));
                } else {
                    let lit = Lit::from_dimacs(v).map_err(|_| Error::parse(pos, "bad literal"))?;
                    if lit.atom as usize > nv {
                        return Err(Error::parse(pos, format!("variable {} exceeds declared {nv}", lit.atom)));
                    }
                    cur.push(lit);
                }
            }
        }
        let (nv, nc) = header.ok_or_else(|| Error::parse(0, "missing problem line"))?;
        if !cur.is_empty() {
            return Err(Error::parse(text.len(), "last clause is not terminated by 0"));
        }
        if clauses.len() != nc {
            return Err(Error::parse(
                text.len(),
                format!("declared {nc} clauses, found {}", clauses.len()),
            ));
        }
        let table = if names.is_empty() {
            AtomTable::default()
        } else {
            let expected: Vec<AtomId> = (1..=names.len() as AtomId).collect();
            if names.keys().copied().collect::<Vec<_>>() != expected || names.len() != nv {
                return Err(Error::parse(0, "atom comments must name exactly 1..=vars"));
            }
            AtomTable::from_ordered(names.into_values().collect())?
        };
        Ok(ClauseSet { clauses, table })
    }
}

/// Clause set split into a `C`-side and a `D`-side by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitClauseSet {
    pub set: ClauseSet,
    pub c_side: Vec<usize>,
    pub d_side: Vec<usize>,
}

impl SplitClauseSet {
    pub fn c_clauses(&self) -> Vec<&Clause> {
        self.c_side.iter().map(|i| &self.set.clauses[*i]).collect()
    }

    pub fn d_clauses(&self) -> Vec<&Clause> {
        self.d_side.iter().map(|i| &self.set.clauses[*i]).collect()
    }

    /// Atoms occurring on both sides.
    pub fn shared_atoms(&self) -> BTreeSet<AtomId> {
        let c: BTreeSet<AtomId> = self.c_clauses().iter().flat_map(|c| c.atoms()).collect();
        let d: BTreeSet<AtomId> = self.d_clauses().iter().flat_map(|c| c.atoms()).collect();
        c.intersection(&d).copied().collect()
    }

    /// Partition file text: `C i j ...` and `D k ...` with 1-based clause indices.
    pub fn partition_text(&self) -> String {
        let line = |tag: &str, v: &[usize]| {
            let mut s = tag.to_string();
            for i in v {
                let _ = write!(s, " {}", i + 1);
            }
            s
        };
        format!("{}\n{}\n", line("C", &self.c_side), line("D", &self.d_side))
    }

    pub fn parse_partition(set: ClauseSet, text: &str) -> Result<SplitClauseSet> {
        let mut c = None;
        let mut d = None;
        for (ln, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let mut it = l.split_whitespace();
            let tag = it.next().unwrap();
            let idx = it
                .map(|t| match t.parse::<usize>() {
                    Ok(i) if i >= 1 && i <= set.len() => Ok(i - 1),
                    _ => Err(Error::parse(ln + 1, format!("line {}: bad clause index '{t}'", ln + 1))),
                })
                .collect::<Result<Vec<_>>>()?;
            let slot = match tag {
                "C" => &mut c,
                "D" => &mut d,
                _ => return Err(Error::parse(ln + 1, format!("line {}: expected C or D", ln + 1))),
            };
            if slot.replace(idx).is_some() {
                return Err(Error::parse(ln + 1, format!("line {}: side listed twice", ln + 1)));
            }
        }
        let c_side = c.unwrap_or_default();
        let d_side = d.unwrap_or_default();
        let mut seen = vec![false; set.len()];
        for i in c_side.iter().chain(d_side.iter()) {
            if std::mem::replace(&mut seen[*i], true) {
                return Err(Error::malformed(format!("clause {} is on both sides or repeated", i + 1)));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::malformed("every clause must be assigned a side"));
        }
        Ok(SplitClauseSet { set, c_side, d_side })
    }
}

fn pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
}

/// `PHP^m_n`: functionality, injectivity, then totality.
pub fn php(m: u32, n: u32) -> Result<ClauseSet> {
    if m == 0 || n == 0 {
        return Err(Error::pre("php needs at least one pigeon and one hole"));
    }
    let mut names = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            names.push(AtomName::new("p", &[i, j]));
        }
    }
    let t = AtomTable::from_names(names);
    let p = |i: u32, j: u32| t.get("p", &[i, j]);
    let mut cl = Vec::new();
    for i in 1..=m {
        for (j1, j2) in pairs(n) {
            cl.push(Clause(vec![Lit::neg(p(i, j1)), Lit::neg(p(i, j2))]));
        }
    }
    for (i1, i2) in pairs(m) {
        for j in 1..=n {
            cl.push(Clause(vec![Lit::neg(p(i1, j)), Lit::neg(p(i2, j))]));
        }
    }
    for i in 1..=m {
        cl.push(Clause((1..=n).map(|j| Lit::pos(p(i, j))).collect()));
    }
    Ok(ClauseSet::new(cl, t))
}

/// `m·C(n,2) + n·C(m,2) + m`.
pub fn php_clause_count(m: u64, n: u64) -> u64 {
    m * (n * n.saturating_sub(1) / 2) + n * (m * m.saturating_sub(1) / 2) + m
}

/// `PHP^{m(n)}_n` for each `n`, with `m` supplied by the caller.
pub fn php_family(m: &dyn Fn(u32) -> u32, ns: impl IntoIterator<Item = u32>) -> Result<Vec<ClauseSet>> {
    ns.into_iter().map(|n| php(m(n), n)).collect()
}

fn graph_names(n: u32) -> Vec<AtomName> {
    pairs(n).map(|(a, b)| AtomName::new("p", &[a, b])).collect()
}

fn clique_names(n: u32, k: u32) -> Vec<AtomName> {
    let mut v = Vec::new();
    for u in 1..=k {
        for i in 1..=n {
            v.push(AtomName::new("q", &[u, i]));
        }
    }
    v
}

fn color_names(n: u32, l: u32) -> Vec<AtomName> {
    let mut v = Vec::new();
    for i in 1..=n {
        for a in 1..=l {
            v.push(AtomName::new("r", &[i, a]));
        }
    }
    v
}

fn edge(t: &AtomTable, a: u32, b: u32) -> AtomId {
    t.get("p", &[a.min(b), a.max(b)])
}

fn clique_into(t: &AtomTable, n: u32, k: u32, out: &mut Vec<Clause>) {
    let q = |u: u32, i: u32| t.get("q", &[u, i]);
    for u in 1..=k {
        out.push(Clause((1..=n).map(|i| Lit::pos(q(u, i))).collect()));
    }
    for u in 1..=k {
        for (i1, i2) in pairs(n) {
            out.push(Clause(vec![Lit::neg(q(u, i1)), Lit::neg(q(u, i2))]));
        }
    }
    for (u1, u2) in pairs(k) {
        for i in 1..=n {
            out.push(Clause(vec![Lit::neg(q(u1, i)), Lit::neg(q(u2, i))]));
        }
    }
    for (u1, u2) in pairs(k) {
        for i1 in 1..=n {
            for i2 in 1..=n {
                if i1 != i2 {
                    out.push(Clause(vec![
                        Lit::neg(q(u1, i1)),
                        Lit::neg(q(u2, i2)),
                        Lit::pos(edge(t, i1, i2)),
                    ]));
                }
            }
        }
    }
}

fn color_into(t: &AtomTable, n: u32, l: u32, out: &mut Vec<Clause>) {
    let r = |i: u32, a: u32| t.get("r", &[i, a]);
    for i in 1..=n {
        out.push(Clause((1..=l).map(|a| Lit::pos(r(i, a))).collect()));
    }
    for i in 1..=n {
        for (a1, a2) in pairs(l) {
            out.push(Clause(vec![Lit::neg(r(i, a1)), Lit::neg(r(i, a2))]));
        }
    }
    for (i1, i2) in pairs(n) {
        for a in 1..=l {
            out.push(Clause(vec![
                Lit::neg(r(i1, a)),
                Lit::neg(r(i2, a)),
                Lit::neg(edge(t, i1, i2)),
            ]));
        }
    }
}

fn check_range(what: &str, x: u32, n: u32) -> Result<()> {
    if x == 0 || x > n {
        return Err(Error::pre(format!("{what} must satisfy 1 <= {what} <= n")));
    }
    Ok(())
}

/// `Clique_{k,n}(p̄, q̄)`.
pub fn clique_clauses(n: u32, k: u32) -> Result<ClauseSet> {
    check_range("k", k, n)?;
    let t = AtomTable::from_names(graph_names(n).into_iter().chain(clique_names(n, k)));
    let mut cl = Vec::new();
    clique_into(&t, n, k, &mut cl);
    Ok(ClauseSet::new(cl, t))
}

/// `Color_{l,n}(p̄, r̄)`.
pub fn color_clauses(n: u32, l: u32) -> Result<ClauseSet> {
    check_range("l", l, n)?;
    let t = AtomTable::from_names(graph_names(n).into_iter().chain(color_names(n, l)));
    let mut cl = Vec::new();
    color_into(&t, n, l, &mut cl);
    Ok(ClauseSet::new(cl, t))
}

/// Both families over one table: clique clauses on the `C`-side, color
/// clauses on the `D`-side.
pub fn clique_color_clauses(n: u32, k: u32, l: u32) -> Result<SplitClauseSet> {
    check_range("k", k, n)?;
    check_range("l", l, n)?;
    if l >= k {
        return Err(Error::pre(format!("need l < k, got k={k}, l={l}")));
    }
    let t = AtomTable::from_names(
        graph_names(n)
            .into_iter()
            .chain(clique_names(n, k))
            .chain(color_names(n, l)),
    );
    let mut cl = Vec::new();
    clique_into(&t, n, k, &mut cl);
    let nc = cl.len();
    color_into(&t, n, l, &mut cl);
    let total = cl.len();
    Ok(SplitClauseSet {
        set: ClauseSet::new(cl, t),
        c_side: (0..nc).collect(),
        d_side: (nc..total).collect(),
    })
}

/// Edge atoms `p_{i₁i₂}` of an `n`-vertex graph table, in id order.
pub fn edge_atoms(table: &AtomTable) -> Vec<AtomId> {
    table.ids_with_symbol("p").into_iter().collect()
}

/// `⋀Clique → ¬⋀Color` over `L_p`, with `¬φ` written `φ → ⊥`.
pub fn clique_color_tautology(n: u32, k: u32, l: u32) -> Result<(Formula, AtomTable)> {
    let s = clique_color_clauses(n, k, l)?;
    let cl = Formula::conj(s.c_clauses().iter().map(|c| c.to_formula_lp()));
    let co = Formula::conj(s.d_clauses().iter().map(|c| c.to_formula_lp()));
    Ok((Formula::imp(cl, Formula::neg(co)), s.set.table))
}

/// `k = ⌊n^{2/3}⌋`, `l = ⌊n^{2/3−2ε}⌋`; instances with `l ≥ k` or `l = 0` are refused.
pub fn epsilon_params(n: u32, eps: f64) -> Result<(u32, u32)> {
    if !(eps > 0.0 && eps < 1.0 / 3.0) {
        return Err(Error::pre("epsilon must lie strictly between 0 and 1/3"));
    }
    // largest k with k³ ≤ n²
    let n2 = (n as u64) * (n as u64);
    let mut k = 0u32;
    while ((k as u64) + 1).pow(3) <= n2 {
        k += 1;
    }
    let l = ((n as f64).powf(2.0 / 3.0 - 2.0 * eps) + 1e-9).floor() as u32;
    if l == 0 || l >= k {
        return Err(Error::pre(format!(
            "degenerate instance at n={n}: k={k}, l={l} (need 1 <= l < k)"
        )));
    }
    Ok((k, l))
}

/// Which lift of the classical implication to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// `⋀(pᵢ ∨ ¬pᵢ)` premise over the shared atoms.
    Plain,
    /// `⋀(pᵢ ∨ qᵢ)` premise with fresh `q̄` and the `¬p̄` substitution.
    Monotone,
}

/// A lifted formula with the fresh atoms it introduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub formula: Formula,
    pub shared: Vec<AtomId>,
    /// `(pᵢ, qᵢ)` for the monotone mode.
    pub fresh: Vec<(AtomId, AtomId)>,
}

fn lift_common(
    phi: &Formula,
    psi: &Formula,
    shared: Option<&[AtomId]>,
    mode: LiftMode,
    limits: &Limits,
) -> Result<(Formula, Formula, Vec<AtomId>, Vec<(AtomId, AtomId)>)> {
    if phi.features().modal || psi.features().modal || phi.features().ext || psi.features().ext {
        return Err(Error::pre("lift inputs must be classical propositional formulas"));
    }
    let shared: Vec<AtomId> = match shared {
        Some(s) => s.to_vec(),
        None => phi.atoms().intersection(&psi.atoms()).copied().collect(),
    };
    if bits::split_implication_counterexample(phi, psi, &shared, limits)?.is_some() {
        return Err(Error::pre("the implication is not classically valid"));
    }
    let sh: BTreeSet<AtomId> = shared.iter().copied().collect();
    let mut fresh = Vec::new();
    let (phi2, psi2) = match mode {
        LiftMode::Plain => (phi.to_lp(), psi.to_lp()),
        LiftMode::Monotone => {
            if !phi.is_monotone_in(&sh) && !psi.is_monotone_in(&sh) {
                return Err(Error::pre("neither side is monotone in the shared atoms"));
            }
            let mut next = phi
                .atoms()
                .into_iter()
                .chain(psi.atoms())
                .chain(shared.iter().copied())
                .max()
                .unwrap_or(0)
                + 1;
            let mut neg_map = BTreeMap::new();
            let mut q_map = BTreeMap::new();
            for p in &shared {
                fresh.push((*p, next));
                neg_map.insert(*p, Formula::neg(Formula::atom(*p)));
                q_map.insert(*p, Formula::atom(next));
                next += 1;
            }
            (phi.to_lp().substitute(&neg_map), psi.to_lp().substitute(&q_map))
        }
    };
    Ok((phi2, psi2, shared, fresh))
}

/// `¬¬ψ`, written `¬χ` when `ψ = ¬χ` (the two are intuitionistically equivalent).
fn double_neg(psi: Formula) -> Formula {
    match &psi {
        Formula::Imp(a, b) if **b == Formula::Bot => Formula::neg((**a).clone()),
        _ => Formula::neg(Formula::neg(psi)),
    }
}

/// `⋀(pᵢ ∨ ¬pᵢ) → (¬φ ∨ ¬¬ψ)`, or in monotone mode
/// `⋀(pᵢ ∨ qᵢ) → (¬φ(¬p̄, r̄) ∨ ¬¬ψ(q̄, s̄))`.
pub fn lift_intuitionistic(
    phi: &Formula,
    psi: &Formula,
    shared: Option<&[AtomId]>,
    mode: LiftMode,
    limits: &Limits,
) -> Result<Lift> {
    let (phi2, psi2, shared, fresh) = lift_common(phi, psi, shared, mode, limits)?;
    let premise = premise(&shared, &fresh, mode, false);
    let formula = Formula::imp(premise, Formula::or(Formula::neg(phi2), double_neg(psi2)));
    Ok(Lift {
        formula,
        shared,
        fresh,
    })
}

/// `⋀(□pᵢ ∨ □¬pᵢ) → (□¬φ ∨ □ψ)`, or in monotone mode
/// `⋀(□pᵢ ∨ □qᵢ) → (□¬φ(¬p̄, r̄) ∨ □ψ(q̄, s̄))`.
pub fn lift_modal(
    phi: &Formula,
    psi: &Formula,
    shared: Option<&[AtomId]>,
    mode: LiftMode,
    limits: &Limits,
) -> Result<Lift> {
    let (phi2, psi2, shared, fresh) = lift_common(phi, psi, shared, mode, limits)?;
    let premise = premise(&shared, &fresh, mode, true);
    let formula = Formula::imp(
        premise,
        Formula::or(Formula::boxed(Formula::neg(phi2)), Formula::boxed(psi2)),
    );
    Ok(Lift {
        formula,
        shared,
        fresh,
    })
}

fn premise(shared: &[AtomId], fresh: &[(AtomId, AtomId)], mode: LiftMode, modal: bool) -> Formula {
    let wrap = |f: Formula| if modal { Formula::boxed(f) } else { f };
    Formula::conj(shared.iter().enumerate().map(|(i, p)| {
        let left = wrap(Formula::atom(*p));
        let right = match mode {
            LiftMode::Plain => wrap(Formula::neg(Formula::atom(*p))),
            LiftMode::Monotone => wrap(Formula::atom(fresh[i].1)),
        };
        Formula::or(left, right)
    }))
}

/// Clique-color lift with the fresh copies named `p'(i,j)`: returns the
/// formula and the extended table.
pub fn clique_color_lift(n: u32, k: u32, l: u32, modal: bool, limits: &Limits) -> Result<(Lift, AtomTable)> {
    let s = clique_color_clauses(n, k, l)?;
    let phi = Formula::conj(s.c_clauses().iter().map(|c| c.to_formula_lp()));
    let psi = Formula::neg(Formula::conj(s.d_clauses().iter().map(|c| c.to_formula_lp())));
    let shared = edge_atoms(&s.set.table);
    let lift = if modal {
        lift_modal(&phi, &psi, Some(&shared), LiftMode::Monotone, limits)?
    } else {
        lift_intuitionistic(&phi, &psi, Some(&shared), LiftMode::Monotone, limits)?
    };
    let mut table = s.set.table.clone();
    let first = table.len() as AtomId + 1;
    let names: Vec<AtomName> = lift
        .fresh
        .iter()
        .map(|(p, _)| {
            let name = table.name(*p).expect("edge atom is named");
            AtomName::new(&format!("{}'", name.symbol), &name.index)
        })
        .collect();
    table.extend(names);
    debug_assert!(lift.fresh.first().is_none_or(|(_, q)| *q == first));
    Ok((lift, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn php_counts() {
        assert_eq!(php(3, 2).unwrap().len(), 12);
        assert_eq!(php_clause_count(3, 2), 12);
        assert!(php(0, 2).is_err());
    }

    #[test]
    fn php_2_1_shape() {
        let s = php(2, 1).unwrap();
        let p11 = s.table.get("p", &[1, 1]);
        let p21 = s.table.get("p", &[2, 1]);
        assert_eq!(
            s.clauses,
            vec![
                Clause(vec![Lit::neg(p11), Lit::neg(p21)]),
                Clause(vec![Lit::pos(p11)]),
                Clause(vec![Lit::pos(p21)]),
            ]
        );
    }

    #[test]
    fn clique_3_2_groups() {
        assert_eq!(clique_clauses(3, 2).unwrap().len(), 2 + 6 + 3 + 6);
        assert!(clique_clauses(3, 4).is_err());
    }

    #[test]
    fn color_2_1_shape() {
        let s = color_clauses(2, 1).unwrap();
        let t = &s.table;
        let (r11, r21, p12) = (t.get("r", &[1, 1]), t.get("r", &[2, 1]), t.get("p", &[1, 2]));
        assert_eq!(
            s.clauses,
            vec![
                Clause(vec![Lit::pos(r11)]),
                Clause(vec![Lit::pos(r21)]),
                Clause(vec![Lit::neg(r11), Lit::neg(r21), Lit::neg(p12)]),
            ]
        );
    }

    #[test]
    fn dimacs_round_trip() {
        let s = clique_color_clauses(3, 2, 1).unwrap().set;
        let text = s.to_dimacs("clique-color n=3 k=2 l=1");
        let back = ClauseSet::parse_dimacs(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_dimacs("clique-color n=3 k=2 l=1"), text);
    }

    #[test]
    fn dimacs_errors() {
        assert!(ClauseSet::parse_dimacs("1 0\n").is_err());
        assert!(ClauseSet::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(ClauseSet::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(ClauseSet::parse_dimacs("p cnf 1 1\n1\n").is_err());
    }

    #[test]
    fn tautology_rejects_l_ge_k() {
        assert!(clique_color_tautology(3, 2, 2).is_err());
        assert!(clique_color_tautology(3, 2, 1).is_ok());
    }

    #[test]
    fn epsilon_sugar() {
        assert!(epsilon_params(8, 0.1).is_err() || epsilon_params(8, 0.1).unwrap().1 < 4);
        let (k, l) = epsilon_params(27, 0.1).unwrap();
        assert_eq!(k, 9);
        assert!(l < k);
        assert_eq!(epsilon_params(3, 0.1).unwrap(), (2, 1));
        assert!(epsilon_params(2, 0.1).is_err());
        assert!(epsilon_params(27, 0.5).is_err());
    }

    #[test]
    fn lift_shapes() {
        let p = Formula::atom(1);
        let l = lift_intuitionistic(&p, &p, None, LiftMode::Plain, &Limits::default()).unwrap();
        let expect = Formula::imp(
            Formula::or(p.clone(), Formula::neg(p.clone())),
            Formula::or(Formula::neg(p.clone()), Formula::neg(Formula::neg(p.clone()))),
        );
        assert_eq!(l.formula, expect);
        let m = lift_modal(&p, &p, None, LiftMode::Plain, &Limits::default()).unwrap();
        let expect = Formula::imp(
            Formula::or(Formula::boxed(p.clone()), Formula::boxed(Formula::neg(p.clone()))),
            Formula::or(Formula::boxed(Formula::neg(p.clone())), Formula::boxed(p.clone())),
        );
        assert_eq!(m.formula, expect);
        let q = Formula::atom(2);
        assert!(lift_intuitionistic(&p, &q, None, LiftMode::Plain, &Limits::default()).is_err());
    }
}
