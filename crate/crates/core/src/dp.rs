//! Bounded Davis–Putnam variable elimination producing resolution refutations.
//!
//! Plumbing for exercising the interpolation pipeline without an external
//! solver. Variables are eliminated greedily by the product of their positive
//! and negative occurrence counts, with an optional set eliminated first.
//! Tautologies and subsumed clauses are dropped as they appear.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::AtomId;
use crate::generators::{Clause, ClauseSet, Lit, SplitClauseSet};
use crate::kernel::{ResStep, ResolutionRefutation};

#[derive(Clone, Debug)]
pub struct DpOptions {
    /// Variables eliminated before all others.
    pub first: BTreeSet<AtomId>,
    /// Cap on derived clauses.
    pub max_clauses: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            first: BTreeSet::new(),
            max_clauses: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
struct Line {
    lits: Vec<Lit>,
    step: ResStep,
}

fn subsumes(a: &[Lit], b: &[Lit]) -> bool {
    a.len() <= b.len() && a.iter().all(|l| b.binary_search(l).is_ok())
}

/// Refutes `set`, or reports it satisfiable (`Ok(None)`).
pub fn dp_refute(set: &ClauseSet, opts: &DpOptions) -> Result<Option<ResolutionRefutation>> {
    let mut lines: Vec<Line> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut seen: HashMap<Vec<Lit>, usize> = HashMap::new();
    for (i, c) in set.clauses.iter().enumerate() {
        let n = c.normalized();
        if n.is_tautological() || seen.contains_key(&n.0) {
            continue;
        }
        seen.insert(n.0.clone(), lines.len());
        lines.push(Line {
            lits: n.0,
            step: ResStep::Input(i + 1),
        });
        if lines.last().is_some_and(|l| l.lits.is_empty()) {
            return Ok(Some(trim(&lines, lines.len() - 1)));
        }
        active.push(lines.len() - 1);
    }
    active = reduce(&lines, active);
    let mut vars: BTreeSet<AtomId> = set.atoms();
    while !vars.is_empty() {
        let count = |v: AtomId, pos: bool| {
            active
                .iter()
                .filter(|&&i| lines[i].lits.contains(&Lit { atom: v, positive: pos }))
                .count()
        };
        let pool: Vec<AtomId> = {
            let f: Vec<AtomId> = vars.iter().copied().filter(|v| opts.first.contains(v)).collect();
            if f.is_empty() {
                vars.iter().copied().collect()
            } else {
                f
            }
        };
        let v = pool
            .into_iter()
            .min_by_key(|&v| (count(v, true) * count(v, false), count(v, true) + count(v, false), v))
            .expect("pool is nonempty");
        vars.remove(&v);
        let (pos, neg): (Vec<usize>, Vec<usize>) = {
            let p = active.iter().copied().filter(|&i| lines[i].lits.contains(&Lit::pos(v))).collect();
            let n = active.iter().copied().filter(|&i| lines[i].lits.contains(&Lit::neg(v))).collect();
            (p, n)
        };
        let mut next: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&i| !lines[i].lits.iter().any(|l| l.atom == v))
            .collect();
        for &a in &pos {
            for &b in &neg {
                let mut r: Vec<Lit> = lines[a]
                    .lits
                    .iter()
                    .chain(lines[b].lits.iter())
                    .copied()
                    .filter(|l| l.atom != v)
                    .collect();
                r.sort();
                r.dedup();
                if Clause(r.clone()).is_tautological() {
                    continue;
                }
                if next.iter().any(|&i| subsumes(&lines[i].lits, &r)) {
                    continue;
                }
                if lines.len() >= opts.max_clauses {
                    return Err(Error::CapExceeded {
                        what: "Davis-Putnam derived clauses",
                        limit: opts.max_clauses,
                        actual: lines.len() + 1,
                    });
                }
                lines.push(Line {
                    lits: r,
                    step: ResStep::Resolve(a + 1, b + 1, v),
                });
                let id = lines.len() - 1;
                if lines[id].lits.is_empty() {
                    return Ok(Some(trim(&lines, id)));
                }
                next.retain(|&i| !subsumes(&lines[id].lits, &lines[i].lits));
                next.push(id);
            }
        }
        active = next;
    }
    Ok(None)
}

fn reduce(lines: &[Line], active: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut sorted = active;
    sorted.sort_by_key(|&i| lines[i].lits.len());
    for i in sorted {
        if !out.iter().any(|&j| subsumes(&lines[j].lits, &lines[i].lits)) {
            out.push(i);
        }
    }
    out.sort();
    out
}

/// Keeps the lines the empty clause depends on, renumbered.
fn trim(lines: &[Line], root: usize) -> ResolutionRefutation {
    let mut keep = vec![false; root + 1];
    keep[root] = true;
    for i in (0..=root).rev() {
        if keep[i] {
            if let ResStep::Resolve(a, b, _) = lines[i].step {
                keep[a - 1] = true;
                keep[b - 1] = true;
            }
        }
    }
    let mut map = vec![0usize; root + 1];
    let mut out = ResolutionRefutation::default();
    for i in 0..=root {
        if !keep[i] {
            continue;
        }
        let step = match lines[i].step {
            ResStep::Resolve(a, b, v) => ResStep::Resolve(map[a - 1], map[b - 1], v),
            s => s,
        };
        out.lines.push((Clause(lines[i].lits.clone()), step));
        map[i] = out.lines.len();
    }
    out
}

/// Refutes a split set eliminating the atoms private to one side first, the
/// order that keeps the derived clauses shallow for clique-color instances.
pub fn dp_refute_split(split: &SplitClauseSet, max_clauses: usize) -> Result<Option<ResolutionRefutation>> {
    let shared = split.shared_atoms();
    let first = split.set.atoms().difference(&shared).copied().collect();
    dp_refute(&split.set, &DpOptions { first, max_clauses })
}
