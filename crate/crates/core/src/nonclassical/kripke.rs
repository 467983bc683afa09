//! Bounded Kripke countermodel search.
//!
//! A formula refuted somewhere is refuted at the root of the generated
//! submodel, so only rooted frames are enumerated, one per isomorphism class
//! under permutations fixing the root. Valuations are evaluated 64 at a time.

use std::fmt;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::formula::{AtomId, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameClass {
    /// Reflexive and transitive; `□` read modally.
    S4,
    /// Transitive and irreflexive (finite, hence conversely well-founded).
    GL,
    /// Reflexive and transitive with persistent valuations; `→` read intuitionistically.
    Intuitionistic,
}

/// `rel[w]` is the successor bitmask of world `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub rel: Vec<u32>,
}

impl Frame {
    pub fn worlds(&self) -> usize {
        self.rel.len()
    }

    pub fn sees(&self, w: usize, v: usize) -> bool {
        self.rel[w] >> v & 1 == 1
    }

    fn code(&self, perm: &[usize]) -> Vec<u32> {
        let n = self.worlds();
        let mut out = vec![0u32; n];
        for w in 0..n {
            for v in 0..n {
                if self.sees(w, v) {
                    out[perm[w]] |= 1 << perm[v];
                }
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// Rooted frames of the class with exactly `n ≥ 1` worlds, up to isomorphism.
pub fn rooted_frames(class: FrameClass, n: usize) -> Vec<Frame> {
    assert!((1..=6).contains(&n), "frame size out of range");
    let reflexive = class != FrameClass::GL;
    let mut free = Vec::new();
    for w in 1..n {
        for v in 1..n {
            if w != v {
                free.push((w, v));
            }
        }
        if reflexive {
            free.push((w, 0));
        }
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << free.len()) {
        let mut rel = vec![0u32; n];
        for v in 1..n {
            rel[0] |= 1 << v;
        }
        if reflexive {
            for (w, r) in rel.iter_mut().enumerate() {
                *r |= 1 << w;
            }
        }
        for (i, (w, v)) in free.iter().enumerate() {
            if bits >> i & 1 == 1 {
                rel[*w] |= 1 << v;
            }
        }
        let f = Frame { rel };
        let transitive = (0..n).all(|w| (0..n).filter(|&v| f.sees(w, v)).all(|v| f.rel[v] & !f.rel[w] == 0));
        if !transitive {
            continue;
        }
        if class == FrameClass::GL && (0..n).any(|w| f.sees(w, w)) {
            continue;
        }
        let code = f.code(&perms[0]);
        if perms.iter().all(|p| f.code(p) >= code) {
            out.push(f);
        }
    }
    out
}

/// A refuting model: the formula fails at world 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub frame: Frame,
    /// `(atom, worlds where it holds)` as a bitmask.
    pub valuation: Vec<(AtomId, u32)>,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.frame.worlds();
        write!(f, "worlds={n} R={{")?;
        let mut first = true;
        for w in 0..n {
            for v in 0..n {
                if self.frame.sees(w, v) {
                    write!(f, "{}{w}{v}", if first { "" } else { "," })?;
                    first = false;
                }
            }
        }
        write!(f, "}}")?;
        for (a, m) in &self.valuation {
            let ws: Vec<String> = (0..n).filter(|w| m >> w & 1 == 1).map(|w| w.to_string()).collect();
            write!(f, " x{a}@{{{}}}", ws.join(","))?;
        }
        Ok(())
    }
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub countermodel: Option<Countermodel>,
    /// Largest frame size searched completely.
    pub worlds: usize,
}

const LANES: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Searches frames of `1..=max_worlds` worlds for a model where output 0 of
/// `c` fails at the root. Frame sizes whose valuation space exceeds
/// `2^max_bits` are skipped and reported through [`SearchResult::worlds`].
pub fn countermodel(c: &Circuit, class: FrameClass, max_worlds: usize, max_bits: usize) -> Result<SearchResult> {
    if c.outputs().len() != 1 {
        return Err(Error::pre("countermodel search needs one output"));
    }
    if class == FrameClass::Intuitionistic && c.is_modal() {
        return Err(Error::pre("modal gate in an intuitionistic search"));
    }
    let atoms: Vec<AtomId> = c.used_inputs().into_iter().collect();
    let k = atoms.len();
    let mut slot = vec![usize::MAX; c.inputs() as usize + 1];
    for (i, a) in atoms.iter().enumerate() {
        slot[*a as usize] = i;
    }
    let mut searched = 0;
    for n in 1..=max_worlds {
        let bits = n * k;
        if bits > max_bits {
            break;
        }
        for frame in rooted_frames(class, n) {
            if let Some(val) = refute_on(c, class, &frame, &slot, k) {
                let valuation = atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let m = (0..n).filter(|w| val >> (w * k + i) & 1 == 1).fold(0u32, |m, w| m | 1 << w);
                        (*a, m)
                    })
                    .collect();
                return Ok(SearchResult {
                    countermodel: Some(Countermodel { frame, valuation }),
                    worlds: n,
                });
            }
        }
        searched = n;
    }
    Ok(SearchResult {
        countermodel: None,
        worlds: searched,
    })
}

/// Bit `w*k + i` of a valuation index says whether atom `i` holds at `w`.
fn refute_on(c: &Circuit, class: FrameClass, frame: &Frame, slot: &[usize], k: usize) -> Option<u64> {
    let n = frame.worlds();
    let bits = n * k;
    let total: u64 = 1 << bits;
    let lane_count = total.min(64);
    let lane_mask = if lane_count == 64 { !0 } else { (1u64 << lane_count) - 1 };
    let succ: Vec<Vec<usize>> = (0..n).map(|w| (0..n).filter(|&v| frame.sees(w, v)).collect()).collect();
    let mut vals: Vec<Vec<u64>> = vec![vec![0; n]; c.gates().len()];
    let blocks = total.div_ceil(64);
    for block in 0..blocks {
        let var = |b: usize| -> u64 {
            if b < 6 {
                LANES[b]
            } else if (block >> (b - 6)) & 1 == 1 {
                !0
            } else {
                0
            }
        };
        let mut live = lane_mask;
        if class == FrameClass::Intuitionistic {
            for i in 0..k {
                for w in 0..n {
                    for &v in &succ[w] {
                        live &= !var(w * k + i) | var(v * k + i);
                    }
                }
            }
            if live == 0 {
                continue;
            }
        }
        for (g, gate) in c.gates().iter().enumerate() {
            for w in 0..n {
                let v = match *gate {
                    Gate::Input(a) => match slot[a as usize] {
                        usize::MAX => 0,
                        i => var(w * k + i),
                    },
                    Gate::Top => !0,
                    Gate::Bot => 0,
                    Gate::And(a, b) => vals[a as usize][w] & vals[b as usize][w],
                    Gate::Or(a, b) => vals[a as usize][w] | vals[b as usize][w],
                    Gate::Not(a) if class == FrameClass::Intuitionistic => {
                        succ[w].iter().fold(!0, |m, &u| m & !vals[a as usize][u])
                    }
                    Gate::Not(a) => !vals[a as usize][w],
                    Gate::Imp(a, b) if class == FrameClass::Intuitionistic => succ[w]
                        .iter()
                        .fold(!0, |m, &u| m & (!vals[a as usize][u] | vals[b as usize][u])),
                    Gate::Imp(a, b) => !vals[a as usize][w] | vals[b as usize][w],
                    Gate::Box(a) => succ[w].iter().fold(!0, |m, &u| m & vals[a as usize][u]),
                };
                vals[g][w] = v;
            }
        }
        let root = vals[c.outputs()[0] as usize][0];
        let bad = !root & live;
        if bad != 0 {
            return Some(block * 64 + bad.trailing_zeros() as u64);
        }
    }
    None
}

/// Convenience wrapper for a single formula over plain atoms.
pub fn formula_countermodel(f: &Formula, class: FrameClass, max_worlds: usize, max_bits: usize) -> Result<SearchResult> {
    let inputs = f.atoms().iter().next_back().copied().unwrap_or(0);
    let mut b = crate::circuit::CircuitBuilder::new(inputs);
    let g = b.formula(f)?;
    countermodel(&b.finish(vec![g]), class, max_worlds, max_bits)
}
