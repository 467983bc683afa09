//! Proof objects and rule-by-rule checkers.
//!
//! Every checker is pure and returns a [`Verdict`]: either acceptance with
//! the proof size, or the first offending step with the violated condition.
//! Script steps are numbered from 1 in every text format.

pub mod cp;
pub mod ns;
pub mod resolution;
pub mod sequent;

use std::fmt;

pub use cp::{check_cp, clause_to_inequality, CpRefutation, CpStep, Inequality};
pub use ns::{check_ns, formula_to_polynomial, Field, NsCertificate, Polynomial};
pub use resolution::{check_resolution, ResStep, ResolutionRefutation};
pub use sequent::{
    check_sequent_proof, check_step, Calculus, ProofBuilder, ProofNode, Rule, SequentProof, System,
};

/// Why a step was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// 1-based step (node / line) number; 0 for whole-object failures.
    pub step: usize,
    pub rule: String,
    pub reason: String,
}

/// Outcome of a checker run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Total symbols over all sequents or lines.
    pub size: u64,
    pub steps: usize,
    pub rejection: Option<Rejection>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.rejection.is_none()
    }

    pub(crate) fn accept(size: u64, steps: usize) -> Self {
        Verdict {
            size,
            steps,
            rejection: None,
        }
    }

    pub(crate) fn reject(size: u64, steps: usize, step: usize, rule: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict {
            size,
            steps,
            rejection: Some(Rejection {
                step,
                rule: rule.into(),
                reason: reason.into(),
            }),
        }
    }

    /// `key=value` lines.
    pub fn report(&self) -> String {
        let mut s = format!(
            "verdict={}\nsize={}\nsteps={}\n",
            if self.accepted() { "ACCEPT" } else { "REJECT" },
            self.size,
            self.steps
        );
        if let Some(r) = &self.rejection {
            s.push_str(&format!("step={}\nrule={}\nreason={}\n", r.step, r.rule, r.reason));
        }
        s
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rejection {
            None => write!(f, "ACCEPT (size {}, {} steps)", self.size, self.steps),
            Some(r) => write!(f, "REJECT at step {} ({}): {}", r.step, r.rule, r.reason),
        }
    }
}

/// Splits a script into (byte offset, trimmed line) pairs, skipping blanks and `#` comments.
pub(crate) fn script_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').filter_map(move |line| {
        let pos = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("");
        let lead = body.len() - body.trim_start().len();
        let t = body.trim();
        (!t.is_empty()).then_some((pos + lead, t))
    })
}

/// Parses a decimal without sign or leading zeros.
pub(crate) fn parse_index(tok: &str, pos: usize, what: &str) -> crate::Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(crate::Error::parse(pos, format!("bad {what} '{tok}'")));
    }
    tok.parse()
        .map_err(|_| crate::Error::parse(pos, format!("{what} '{tok}' out of range")))
}

/// Checks that step numbers run 1, 2, 3, ...
pub(crate) fn expect_step(tok: Option<&str>, want: usize, pos: usize) -> crate::Result<()> {
    let t = tok.ok_or_else(|| crate::Error::parse(pos, "missing step number"))?;
    let got = parse_index(t, pos, "step number")?;
    if got != want {
        return Err(crate::Error::parse(pos, format!("expected step {want}, found {got}")));
    }
    Ok(())
}
