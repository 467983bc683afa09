//! Resolution refutations.
//!
//! Script format, one line per clause, literals in DIMACS notation:
//!
//! ```text
//! 1 IN 1 : 1 -2
//! 2 IN 2 : -1
//! 3 RES 1 2 1 : -2
//! 4 IN 3 : 2
//! 5 RES 4 3 2 :
//! ```
//!
//! `IN m` cites input clause `m`; `RES j k p` resolves line `j` (containing
//! `p`) with line `k` (containing `¬p`).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{expect_step, parse_index, script_lines, Verdict};
use crate::error::{Error, Result};
use crate::formula::AtomId;
use crate::generators::{Clause, ClauseSet, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResStep {
    /// 1-based input clause index.
    Input(usize),
    /// 1-based line indices and the pivot atom.
    Resolve(usize, usize, AtomId),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResolutionRefutation {
    pub lines: Vec<(Clause, ResStep)>,
}

impl ResolutionRefutation {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Literal occurrences plus one per line.
    pub fn size(&self) -> u64 {
        self.lines.iter().map(|(c, _)| c.len() as u64 + 1).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, (c, j)) in self.lines.iter().enumerate() {
            let _ = match j {
                ResStep::Input(m) => write!(s, "{} IN {m} :", i + 1),
                ResStep::Resolve(a, b, p) => write!(s, "{} RES {a} {b} {p} :", i + 1),
            };
            for l in c.lits() {
                let _ = write!(s, " {l}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<ResolutionRefutation> {
        let mut lines = Vec::new();
        for (pos, line) in script_lines(text) {
            let (head, lits) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(pos, "line needs ':'"))?;
            let t: Vec<&str> = head.split_whitespace().collect();
            expect_step(t.first().copied(), lines.len() + 1, pos)?;
            let step = match (t.get(1).copied(), t.len()) {
                (Some("IN"), 3) => ResStep::Input(parse_index(t[2], pos, "input index")?),
                (Some("RES"), 5) => ResStep::Resolve(
                    parse_index(t[2], pos, "line index")?,
                    parse_index(t[3], pos, "line index")?,
                    parse_index(t[4], pos, "pivot")? as AtomId,
                ),
                _ => return Err(Error::parse(pos, "expected 'i IN m' or 'i RES j k p'")),
            };
            let clause = lits
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::parse(pos, format!("bad literal '{tok}'")))
                        .and_then(|v| Lit::from_dimacs(v).map_err(|_| Error::parse(pos, "bad literal")))
                })
                .collect::<Result<Vec<_>>>()?;
            lines.push((Clause(clause), step));
        }
        Ok(ResolutionRefutation { lines })
    }
}

fn set(c: &Clause) -> BTreeSet<Lit> {
    c.lits().iter().copied().collect()
}

/// Checks each line in order; rejections carry the 1-based line number.
pub fn check_resolution(inputs: &ClauseSet, r: &ResolutionRefutation) -> Verdict {
    let size = r.size();
    let steps = r.len();
    for (i, (clause, step)) in r.lines.iter().enumerate() {
        let n = i + 1;
        let fail = |rule: &str, why: String| Verdict::reject(size, steps, n, rule, why);
        match *step {
            ResStep::Input(m) => {
                if m == 0 || m > inputs.len() {
                    return fail("IN", format!("no input clause {m}"));
                }
                if set(clause) != set(&inputs.clauses[m - 1]) {
                    return fail("IN", format!("clause differs from input clause {m}"));
                }
            }
            ResStep::Resolve(j, k, p) => {
                if j == 0 || j >= n || k == 0 || k >= n {
                    return fail("RES", "premises must be earlier lines".into());
                }
                let (cj, ck) = (set(&r.lines[j - 1].0), set(&r.lines[k - 1].0));
                if !cj.contains(&Lit::pos(p)) {
                    return fail("RES", format!("line {j} does not contain {p}"));
                }
                if !ck.contains(&Lit::neg(p)) {
                    return fail("RES", format!("line {k} does not contain -{p}"));
                }
                let mut want: BTreeSet<Lit> = cj.into_iter().filter(|l| *l != Lit::pos(p)).collect();
                want.extend(ck.into_iter().filter(|l| *l != Lit::neg(p)));
                if set(clause) != want {
                    return fail("RES", "clause is not the resolvent".into());
                }
            }
        }
    }
    match r.lines.last() {
        None => Verdict::reject(size, 0, 0, "-", "empty refutation"),
        Some((c, _)) if !c.is_empty() => {
            Verdict::reject(size, steps, steps, "-", "last clause is not empty")
        }
        _ => Verdict::accept(size, steps),
    }
}
