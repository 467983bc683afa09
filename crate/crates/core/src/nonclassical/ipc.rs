//! Decision procedure for intuitionistic propositional logic.
//!
//! Backward search in the contraction-free calculus G4ip: invertible rules
//! are applied eagerly, then right disjunction and the left rule for nested
//! implications are tried. Antecedents are sets, which is harmless because
//! contraction is admissible, and every visited sequent is memoized.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::{Formula, Sequent};

/// Default bound on connectives in the input sequent.
pub const DEFAULT_ORACLE_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpcVerdict {
    Provable,
    Unprovable,
}

impl IpcVerdict {
    pub fn is_provable(self) -> bool {
        self == IpcVerdict::Provable
    }
}

/// Decides `Γ ⇒ Δ` for `|Δ| ≤ 1`. Extended atoms are opaque atoms.
pub fn ipc_prove(s: &Sequent, cap: usize) -> Result<IpcVerdict> {
    if s.suc.len() > 1 {
        return Err(Error::pre("intuitionistic sequents have at most one succedent formula"));
    }
    let size: u64 = s.ant.iter().chain(&s.suc).map(Formula::connectives).sum();
    if size as usize > cap {
        return Err(Error::CapExceeded {
            what: "oracle connectives",
            limit: cap,
            actual: size as usize,
        });
    }
    let norm = |f: &Formula| -> Result<Formula> {
        if f.features().modal {
            return Err(Error::pre(format!("{f} is modal")));
        }
        Ok(f.to_lp())
    };
    let ant = s.ant.iter().map(norm).collect::<Result<BTreeSet<_>>>()?;
    let goal = match s.suc.first() {
        Some(f) => norm(f)?,
        None => Formula::Bot,
    };
    let mut memo = HashMap::new();
    Ok(if prove(ant, goal, &mut memo) {
        IpcVerdict::Provable
    } else {
        IpcVerdict::Unprovable
    })
}

/// `⇒ f`.
pub fn ipc_valid(f: &Formula, cap: usize) -> Result<bool> {
    Ok(ipc_prove(&Sequent::new(vec![], vec![f.clone()]), cap)?.is_provable())
}

type Memo = HashMap<(BTreeSet<Formula>, Formula), bool>;

fn atomic(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_) | Formula::Ext(_))
}

fn with(ant: &BTreeSet<Formula>, drop: &Formula, add: &[Formula]) -> BTreeSet<Formula> {
    let mut out = ant.clone();
    out.remove(drop);
    out.extend(add.iter().cloned());
    out
}

fn prove(ant: BTreeSet<Formula>, goal: Formula, memo: &mut Memo) -> bool {
    let key = (ant, goal);
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let r = search(&key.0, &key.1, memo);
    memo.insert(key, r);
    r
}

fn search(ant: &BTreeSet<Formula>, goal: &Formula, memo: &mut Memo) -> bool {
    if ant.contains(&Formula::Bot) || *goal == Formula::Top || (atomic(goal) && ant.contains(goal)) {
        return true;
    }
    // Invertible left rules.
    for f in ant {
        match f {
            Formula::Top => return prove(with(ant, f, &[]), goal.clone(), memo),
            Formula::And(a, b) => return prove(with(ant, f, &[(**a).clone(), (**b).clone()]), goal.clone(), memo),
            Formula::Or(a, b) => {
                return prove(with(ant, f, &[(**a).clone()]), goal.clone(), memo)
                    && prove(with(ant, f, &[(**b).clone()]), goal.clone(), memo)
            }
            Formula::Imp(c, b) => match &**c {
                Formula::Bot => return prove(with(ant, f, &[]), goal.clone(), memo),
                Formula::Top => return prove(with(ant, f, &[(**b).clone()]), goal.clone(), memo),
                x if atomic(x) && ant.contains(x) => {
                    return prove(with(ant, f, &[(**b).clone()]), goal.clone(), memo)
                }
                Formula::And(c1, c2) => {
                    let g = Formula::imp((**c1).clone(), Formula::imp((**c2).clone(), (**b).clone()));
                    return prove(with(ant, f, &[g]), goal.clone(), memo);
                }
                Formula::Or(c1, c2) => {
                    let g1 = Formula::imp((**c1).clone(), (**b).clone());
                    let g2 = Formula::imp((**c2).clone(), (**b).clone());
                    return prove(with(ant, f, &[g1, g2]), goal.clone(), memo);
                }
                _ => {}
            },
            _ => {}
        }
    }
    // Invertible right rules.
    match goal {
        Formula::And(a, b) => {
            return prove(ant.clone(), (**a).clone(), memo) && prove(ant.clone(), (**b).clone(), memo)
        }
        Formula::Imp(a, b) => {
            let mut next = ant.clone();
            next.insert((**a).clone());
            return prove(next, (**b).clone(), memo);
        }
        _ => {}
    }
    if let Formula::Or(a, b) = goal {
        if prove(ant.clone(), (**a).clone(), memo) || prove(ant.clone(), (**b).clone(), memo) {
            return true;
        }
    }
    for f in ant {
        if let Formula::Imp(c, b) = f {
            if let Formula::Imp(_, d) = &**c {
                let left = with(ant, f, &[Formula::imp((**d).clone(), (**b).clone())]);
                if prove(left, (**c).clone(), memo) && prove(with(ant, f, &[(**b).clone()]), goal.clone(), memo) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn classic_cases() {
        let cap = DEFAULT_ORACLE_CAP;
        assert!(ipc_valid(&Formula::imp(p(1), p(1)), cap).unwrap());
        let lem = Formula::or(p(1), Formula::neg(p(1)));
        assert!(!ipc_valid(&lem, cap).unwrap());
        assert!(ipc_valid(&Formula::neg(Formula::neg(lem)), cap).unwrap());
        let peirce = Formula::imp(Formula::imp(Formula::imp(p(1), p(2)), p(1)), p(1));
        assert!(!ipc_valid(&peirce, cap).unwrap());
        assert!(ipc_valid(&Formula::neg(Formula::neg(peirce)), cap).unwrap());
    }
}
