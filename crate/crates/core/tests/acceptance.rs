//! Acceptance run: one PASS/FAIL line per criterion, each against its own
//! time budget. Pass a criterion number to run only that one.

mod support;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use feasint::circuit::Circuit;
use feasint::classical::{
    maehara_interpolate, resolution_interpolate, simulate_resolution_in_lk, simulation_partition,
    verify_sequent_interpolant, Partition, Side,
};
use feasint::dp::{dp_refute, dp_refute_split, DpOptions};
use feasint::fo::{parse_sentence, Interpretation};
use feasint::formula::{AtomId, AtomTable, Formula, Sequent};
use feasint::generators::{
    clique_color_clauses, clique_color_tautology, edge_atoms, php, php_clause_count, Clause, ClauseSet, Lit,
    SplitClauseSet,
};
use feasint::kernel::{
    check_cp, check_ns, check_resolution, check_sequent_proof, clause_to_inequality, Calculus, CpRefutation,
    CpStep, Field, Inequality, NsCertificate, Polynomial, ProofBuilder, ResStep, ResolutionRefutation, Rule,
    SequentProof, System, Verdict,
};
use feasint::nonclassical::{
    formula_countermodel, horn_circuit, ipc_valid, lj_pdi, modal_mdi, pdi_target, CheckLimits, FrameClass,
    HornFormula, Logic, Outcome as CheckOutcome, DEFAULT_ORACLE_CAP,
};
use feasint::Limits;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use support::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($t:tt)*) => {
        if !$c {
            return Err(format!($($t)*));
        }
    };
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn main() {
    let criteria: [(usize, &str, u64, fn() -> Outcome); 10] = [
        (1, "worked examples", 1, c1),
        (2, "pigeonhole", 10, c2),
        (3, "clique-color disjointness", 60, c3),
        (4, "Maehara suite", 30, c4),
        (5, "resolution pipeline", 300, c5),
        (6, "Horn circuit oracle", 60, c6),
        (7, "LJ PDI suite", 120, c7),
        (8, "modal MDI suite", 120, c8),
        (9, "FO translation", 30, c9),
        (10, "soundness audit", 300, c10),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(Ok(d)) if took <= Duration::from_secs(limit) => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; over the time budget")),
            Ok(Err(e)) => (false, e),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n}: {} ({name}; {detail}; {:.2}s of {limit}s)",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn small_set() -> ClauseSet {
    ClauseSet::new(vec![clause(&[1, -2]), clause(&[-1]), clause(&[2])], AtomTable::default())
}

fn rejected_at(v: &Verdict, step: usize) -> bool {
    v.rejection.as_ref().is_some_and(|r| r.step == step)
}

fn c1() -> Outcome {
    let set = small_set();

    let res = "1 IN 1 : 1 -2\n2 IN 2 : -1\n3 RES 1 2 1 : -2\n4 IN 3 : 2\n5 RES 4 3 2 :\n";
    let r = ResolutionRefutation::parse(res).map_err(err)?;
    ensure!(r.to_text() == res, "resolution script does not round-trip");
    ensure!(check_resolution(&set, &r).accepted(), "resolution refutation rejected");
    let bad = ResolutionRefutation::parse(&res.replace("3 RES 1 2 1", "3 RES 1 2 2")).map_err(err)?;
    ensure!(rejected_at(&check_resolution(&set, &bad), 3), "wrong pivot not rejected at step 3");

    let cp = "1 IN 3 : 1 x2 >= 1\n2 IN 1 : 1 x1 -1 x2 >= 0\n3 IN 2 : -1 x1 >= 0\n4 ADD 2 3 : -1 x2 >= 0\n5 ADD 1 4 : 0 >= 1\n";
    let r = CpRefutation::parse(cp).map_err(err)?;
    ensure!(r.to_text() == cp, "CP script does not round-trip");
    ensure!(check_cp(&set, &r).accepted(), "CP derivation rejected");
    let bad = CpRefutation::parse(&cp.replace("4 ADD 2 3 : -1 x2 >= 0", "4 ADD 2 3 : -1 x2 >= 1")).map_err(err)?;
    ensure!(rejected_at(&check_cp(&set, &bad), 4), "wrong sum not rejected at step 4");

    let ns = "field Q\ng 1 = 1\ng 2 = 1 * x2\ng 3 = 1\n";
    let cert = NsCertificate::parse(ns).map_err(err)?;
    ensure!(cert.to_text() == ns, "NS certificate does not round-trip");
    ensure!(check_ns(&set, &cert, Field::Rationals).map_err(err)?.accepted(), "NS certificate rejected");
    let bad = NsCertificate::parse(&ns.replace("g 2 = 1 * x2", "g 2 = 1")).map_err(err)?;
    // The identity is a single check, reported as step 0.
    ensure!(
        rejected_at(&check_ns(&set, &bad, Field::Rationals).map_err(err)?, 0),
        "wrong NS certificate not rejected"
    );
    Ok("3 accepted, 3 mutants rejected at the right step".into())
}

fn c2() -> Outcome {
    let choose2 = |x: u64| x * x.saturating_sub(1) / 2;
    for m in 1..=4u32 {
        for n in 1..=4u32 {
            let set = php(m, n).map_err(err)?;
            let (mm, nn) = (m as u64, n as u64);
            let want = mm * choose2(nn) + nn * choose2(mm) + mm;
            ensure!(set.len() as u64 == want, "php({m},{n}) has {} clauses, want {want}", set.len());
            ensure!(php_clause_count(mm, nn) == want, "php_clause_count({m},{n})");
            ensure!(set_sat(&set) == (m <= n), "php({m},{n}) satisfiability");
        }
    }
    Ok("16 instances".into())
}

/// Every function `{1..k} → {1..n}` as a mask over `var(u, f(u))`.
fn function_masks(k: u32, n: u32, var: &dyn Fn(u32, u32) -> AtomId) -> Vec<u64> {
    let total = (n as u64).pow(k);
    (0..total)
        .map(|mut code| {
            let mut m = 0u64;
            for u in 1..=k {
                m |= 1 << (var(u, (code % n as u64) as u32 + 1) - 1);
                code /= n as u64;
            }
            m
        })
        .collect()
}

/// Each clause with a positive literal outside `edges` must be one of the
/// `groups` (all-positive, one per block). Shrinking a model then keeps it a
/// model as long as one atom per block stays true, so enumerating functions
/// covers every satisfying assignment.
fn shrinkable(clauses: &[&Clause], edges: &BTreeSet<AtomId>, groups: &[BTreeSet<AtomId>]) -> bool {
    clauses.iter().all(|c| {
        let pos_non_edge = c.lits().iter().any(|l| l.positive && !edges.contains(&l.atom));
        !pos_non_edge || (c.lits().iter().all(|l| l.positive) && groups.contains(&c.atoms()))
    })
}

fn c3() -> Outcome {
    let (mut instances, mut graphs, mut tautologies) = (0, 0u64, 0);
    for n in 2..=5u32 {
        for k in 2..=n {
            for l in 1..k {
                let s = clique_color_clauses(n, k, l).map_err(err)?;
                let t = &s.set.table;
                let q = |u: u32, i: u32| t.get("q", &[u, i]);
                let r = |i: u32, a: u32| t.get("r", &[i, a]);
                let edge = |i: u32, j: u32| t.get("p", &[i, j]);
                let edges: BTreeSet<AtomId> = edge_atoms(t).into_iter().collect();
                let (cl, dl) = (s.c_clauses(), s.d_clauses());
                let q_groups: Vec<BTreeSet<AtomId>> = (1..=k).map(|u| (1..=n).map(|i| q(u, i)).collect()).collect();
                let r_groups: Vec<BTreeSet<AtomId>> = (1..=n).map(|i| (1..=l).map(|a| r(i, a)).collect()).collect();
                ensure!(shrinkable(&cl, &edges, &q_groups), "clique side ({n},{k}) has unexpected positive clauses");
                ensure!(shrinkable(&dl, &edges, &r_groups), "color side ({n},{l}) has unexpected positive clauses");
                let (cm, dm) = (clause_masks(&cl), clause_masks(&dl));
                let cliques = function_masks(k, n, &q);
                let colorings = function_masks(n, l, &|i, a| r(i, a));
                let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
                for g in 0..1u64 << pairs.len() {
                    let present = |i: u32, j: u32| g >> edge_index(n, i, j) & 1 == 1;
                    let gm = pairs
                        .iter()
                        .filter(|(i, j)| present(*i, *j))
                        .fold(0u64, |m, (i, j)| m | 1 << (edge(*i, *j) - 1));
                    let c_sat = cliques.iter().any(|m| all_hold(&cm, gm | m));
                    let d_sat = colorings.iter().any(|m| all_hold(&dm, gm | m));
                    ensure!(!(c_sat && d_sat), "graph {g:#b} satisfies both families at n={n} k={k} l={l}");
                    ensure!(c_sat == has_clique(n, k, &present), "clique side disagrees with graph {g:#b}");
                    ensure!(d_sat == colorable(n, l, &present), "color side disagrees with graph {g:#b}");
                    graphs += 1;
                }
                let (f, _) = clique_color_tautology(n, k, l).map_err(err)?;
                if f.atoms().len() <= 20 {
                    ensure!(tt_valid(&f), "clique_color_tautology({n},{k},{l}) is not valid");
                    tautologies += 1;
                }
                instances += 1;
            }
        }
    }
    Ok(format!(
        "{instances} instances, {graphs} graph checks, {tautologies} tautologies by truth table"
    ))
}

fn lkn() -> ProofBuilder {
    ProofBuilder::new(Calculus::new(System::LKn, false))
}

fn random_partition(rng: &mut StdRng, s: &Sequent) -> Option<Partition> {
    let total = s.ant.len() + s.suc.len();
    if total < 2 {
        return None;
    }
    loop {
        let sides: Vec<Side> = (0..total).map(|_| if rng.gen_bool(0.5) { Side::One } else { Side::Two }).collect();
        if sides.contains(&Side::One) && sides.contains(&Side::Two) {
            let (ant, suc) = sides.split_at(s.ant.len());
            return Partition::new(s, ant.to_vec(), suc.to_vec()).ok();
        }
    }
}

fn random_split(rng: &mut StdRng, atoms: u32) -> SplitClauseSet {
    loop {
        let m = rng.gen_range(atoms as usize..=3 * atoms as usize);
        let clauses: Vec<Clause> = (0..m).map(|_| random_clause(rng, atoms, 3)).collect();
        let set = ClauseSet::new(clauses, AtomTable::default());
        if !set_sat(&set) {
            let mut idx: Vec<usize> = (0..m).collect();
            idx.shuffle(rng);
            let cut = rng.gen_range(1..m);
            let (mut c_side, mut d_side) = (idx[..cut].to_vec(), idx[cut..].to_vec());
            c_side.sort();
            d_side.sort();
            return SplitClauseSet { set, c_side, d_side };
        }
    }
}

fn random_clause(rng: &mut StdRng, atoms: u32, width: usize) -> Clause {
    let mut vars: Vec<u32> = (1..=atoms).collect();
    vars.shuffle(rng);
    let w = rng.gen_range(1..=width.min(atoms as usize));
    Clause(
        vars[..w]
            .iter()
            .map(|&v| if rng.gen_bool(0.5) { Lit::pos(v) } else { Lit::neg(v) })
            .collect(),
    )
}

/// Whether side 1 mentions shared atoms only positively (antecedent) or
/// negatively (succedent).
fn monotone_input(s: &Sequent, part: &Partition) -> bool {
    let (one, _) = part.halves(s);
    one.ant.iter().all(|f| f.is_monotone_in(&part.shared))
        && one.suc.iter().all(|f| Formula::not(f.clone()).is_monotone_in(&part.shared))
}

/// Both contracts by enumeration over every atom of the sequent.
fn interpolant_holds(s: &Sequent, part: &Partition, c: &Circuit) -> bool {
    let (one, two) = part.halves(s);
    let atoms: Vec<AtomId> = s.atoms().into_iter().collect();
    let width = c.inputs() as usize;
    (0..1u64 << atoms.len()).all(|m| {
        let val = |p: AtomId| atoms.iter().position(|x| *x == p).is_some_and(|i| m >> i & 1 == 1);
        let inputs: Vec<bool> = (1..=width as AtomId).map(val).collect();
        let cv = c.eval(&inputs).unwrap()[0];
        let side1 = one.ant.iter().all(|f| ev(f, &val)) && !one.suc.iter().any(|f| ev(f, &val));
        let side2 = !two.ant.iter().all(|f| ev(f, &val)) || two.suc.iter().any(|f| ev(f, &val));
        (!side1 || cv) && (!cv || side2)
    })
}

fn c4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut corpus: Vec<(SequentProof, Partition)> = Vec::new();

    let mut b = lkn();
    let s = Sequent::new(vec![Formula::and(a(1), a(2))], vec![Formula::or(a(1), a(3))]);
    let n = lkn_prove(&mut b, &s).ok_or("p∧q ⇒ p∨r not provable")?;
    corpus.push((b.finish(n), Partition::new(&s, vec![Side::One], vec![Side::Two]).map_err(err)?));

    let calc = Calculus::new(System::LKn, false);
    let mut tries = 0;
    while corpus.len() < 17 {
        tries += 1;
        ensure!(tries < 100_000, "could not sample enough valid sequents");
        let ant: Vec<Formula> = (0..rng.gen_range(1..=3)).map(|_| random::formula(&mut rng, &calc, 2, 5)).collect();
        let suc: Vec<Formula> = (0..rng.gen_range(1..=2)).map(|_| random::formula(&mut rng, &calc, 2, 5)).collect();
        let s = Sequent::new(ant, suc);
        if s.ant.iter().chain(&s.suc).all(|f| f.is_literal()) || !sequent_valid(&s) {
            continue;
        }
        let Some(part) = random_partition(&mut rng, &s) else { continue };
        let mut b = lkn();
        let n = lkn_prove(&mut b, &s).ok_or("valid sequent without a proof")?;
        corpus.push((b.finish(n), part));
    }

    let mut splits = vec![clique_color_clauses(3, 2, 1).map_err(err)?];
    splits.extend((0..4).map(|_| random_split(&mut rng, 6)));
    for split in &splits {
        let r = dp_refute_split(split, 100_000).map_err(err)?.ok_or("split set not refuted")?;
        let proof = simulate_resolution_in_lk(split, &r).map_err(err)?;
        let part = simulation_partition(&proof, split).map_err(err)?;
        corpus.push((proof, part));
    }

    let (mut monotone, mut worst) = (0, 0.0f64);
    for (i, (proof, part)) in corpus.iter().enumerate() {
        let s = proof.root().unwrap();
        ensure!(s.atoms().len() <= 12, "proof {i} has more than 12 atoms");
        ensure!(proof.calculus == calc && !proof.has_cut(), "proof {i} is not cut-free LK_n");
        ensure!(check_sequent_proof(proof).accepted(), "proof {i} rejected by the kernel");
        let c = maehara_interpolate(proof, part).map_err(err)?;
        let chk = verify_sequent_interpolant(s, part, &c, &Limits::default()).map_err(err)?;
        ensure!(chk.scope_ok && chk.pass, "proof {i}: interpolant check failed ({:?})", chk.witness);
        ensure!(c.used_inputs().is_subset(&part.shared), "proof {i}: scope");
        ensure!(interpolant_holds(s, part, &c), "proof {i}: enumeration found a broken contract");
        let ratio = c.size() as f64 / proof.size() as f64;
        worst = worst.max(ratio);
        ensure!(c.size() as u64 <= 4 * proof.size(), "proof {i}: circuit size {} vs proof {}", c.size(), proof.size());
        if monotone_input(s, part) {
            monotone += 1;
            ensure!(c.is_monotone(), "proof {i}: monotone input gave a ¬/→ gate");
        }
    }
    ensure!(monotone >= 5, "only {monotone} monotone cases");
    Ok(format!("{} proofs, {monotone} monotone, max size(C)/|proof| = {worst:.3}", corpus.len()))
}

fn c5() -> Outcome {
    let mut notes = Vec::new();
    for n in [4u32, 5] {
        let split = clique_color_clauses(n, 3, 2).map_err(err)?;
        let r = dp_refute_split(&split, 5_000_000).map_err(err)?.ok_or("no refutation found")?;
        ensure!(check_resolution(&split.set, &r).accepted(), "refutation rejected at n={n}");
        let rep = resolution_interpolate(&split, &r, &Limits::default()).map_err(err)?;
        ensure!(rep.monotone, "circuit at n={n} is not monotone");
        if let Some(chk) = &rep.check {
            ensure!(chk.pass, "library verification failed at n={n}");
        }
        let t = &split.set.table;
        let c = &rep.circuit;
        let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let (mut ones, mut zeros) = (0, 0);
        for g in 0..1u64 << pairs.len() {
            let present = |i: u32, j: u32| g >> edge_index(n, i, j) & 1 == 1;
            let mut inputs = vec![false; c.inputs() as usize];
            for &(i, j) in &pairs {
                let id = t.get("p", &[i, j]) as usize;
                if id <= inputs.len() {
                    inputs[id - 1] = present(i, j);
                }
            }
            let v = c.eval(&inputs).map_err(err)?[0];
            if has_clique(n, 3, &present) {
                ensure!(v, "graph {g:#b} has a triangle but the circuit says 0 (n={n})");
                ones += 1;
            }
            if colorable(n, 2, &present) {
                ensure!(!v, "graph {g:#b} is bipartite but the circuit says 1 (n={n})");
                zeros += 1;
            }
        }
        notes.push(format!("n={n}: size {} over {} graphs ({ones} clique, {zeros} colorable)", c.size(), 1u64 << pairs.len()));
    }
    Ok(notes.join(", "))
}

fn c6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut points = 0u64;
    for case in 0..200 {
        let atoms = rng.gen_range(1..=6u32);
        let gamma: Vec<HornFormula> = (0..rng.gen_range(0..=8))
            .map(|_| {
                let prem: Vec<Formula> = (0..rng.gen_range(0..=3)).map(|_| a(rng.gen_range(1..=atoms))).collect();
                HornFormula::new(prem, a(rng.gen_range(1..=atoms))).unwrap()
            })
            .collect();
        let m = rng.gen_range(0..=atoms);
        let p: Vec<Formula> = (1..=m).map(a).collect();
        let q = rng.gen_range(1..=atoms);
        let c = horn_circuit(&gamma, &p, &a(q)).map_err(err)?;
        ensure!(c.is_monotone(), "case {case}: circuit not monotone");
        for bits in 0..1u64 << m {
            let w: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
            let facts: Vec<u32> = (1..=m).filter(|i| w[*i as usize - 1]).collect();
            let want = horn_entails(&gamma, &facts, q, atoms);
            ensure!(c.eval(&w).map_err(err)?[0] == want, "case {case}: mismatch at {w:?}");
            points += 1;
        }
    }
    Ok(format!("200 cases, {points} inputs, 0 mismatches"))
}

fn lj(cut: bool) -> ProofBuilder {
    ProofBuilder::new(Calculus::new(System::LJ, cut))
}

/// Hand-written `LJ` proofs of `⇒ φ → ψ ∨ θ` with monotone `φ`.
fn lj_corpus() -> Result<Vec<SequentProof>, feasint::Error> {
    let (p, q, r, s) = (a(1), a(2), a(3), a(4));
    let mut out = Vec::new();
    let top = Formula::Top;

    // p → p ∨ q
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.ror1(x, q.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // q → p ∨ q
    let mut b = lj(false);
    let x = b.ax(q.clone());
    let x = b.ror2(x, p.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∧ q → p ∨ q
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.land1(x, q.clone())?;
    let x = b.ror1(x, q.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∧ q → r ∨ q
    let mut b = lj(false);
    let x = b.ax(q.clone());
    let x = b.land2(x, p.clone())?;
    let x = b.ror2(x, r.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∨ q → q ∨ p
    let mut b = lj(false);
    let l = b.ax(p.clone());
    let l = b.ror2(l, q.clone())?;
    let rr = b.ax(q.clone());
    let rr = b.ror1(rr, p.clone())?;
    let x = b.lor(l, rr)?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // (p ∧ q) ∧ r → (p ∧ r) ∨ s
    let mut b = lj(false);
    let pq = Formula::and(p.clone(), q.clone());
    let l = b.ax(p.clone());
    let l = b.land1(l, q.clone())?;
    let l = b.land1(l, r.clone())?;
    let rr = b.ax(r.clone());
    let rr = b.land2(rr, pq)?;
    let x = b.rand(l, rr)?;
    let x = b.ror1(x, s.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∧ (q ∨ r) → (p ∧ q) ∨ (p ∧ r)
    let mut b = lj(false);
    let (pq, pr) = (Formula::and(p.clone(), q.clone()), Formula::and(p.clone(), r.clone()));
    let branch = |b: &mut ProofBuilder, y: &Formula| -> Result<usize, feasint::Error> {
        let l = b.ax(p.clone());
        let l = b.lw(l, y.clone());
        let rr = b.ax(y.clone());
        let rr = b.lw(rr, p.clone());
        let rr = b.le(rr, 1)?;
        b.rand(l, rr)
    };
    let l = branch(&mut b, &q)?;
    let l = b.ror1(l, pr.clone())?;
    let rr = branch(&mut b, &r)?;
    let rr = b.ror2(rr, pq)?;
    let x = b.lor(l, rr)?;
    let x = b.land2(x, p.clone())?;
    let x = b.le(x, 1)?;
    let x = b.land1(x, Formula::or(q.clone(), r.clone()))?;
    let x = b.lc(x)?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p → (q → p) ∨ r
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.lw(x, q.clone());
    let x = b.rimp(x)?;
    let x = b.ror1(x, r.clone())?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → (p → p) ∨ q
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.rimp(x)?;
    let x = b.ror1(x, q.clone())?;
    let x = b.lw(x, top.clone());
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → q ∨ (p → p)
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.rimp(x)?;
    let x = b.ror2(x, q.clone())?;
    let x = b.lw(x, top.clone());
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → ⊤ ∨ p
    let mut b = lj(false);
    let x = b.axiom(Rule::AxTop, Sequent::new(vec![], vec![top.clone()]));
    let x = b.ror1(x, p.clone())?;
    let x = b.lw(x, top.clone());
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → (p → p ∨ q) ∨ r
    let mut b = lj(false);
    let x = b.ax(p.clone());
    let x = b.ror1(x, q.clone())?;
    let x = b.rimp(x)?;
    let x = b.ror1(x, r.clone())?;
    let x = b.lw(x, top.clone());
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p → p ∨ q again, but concluded by a cut on its own conjunction.
    let inner = out[0].clone();
    let mut b = lj(true);
    let x = b.import(&inner);
    let both = b.rand(x, x)?;
    let imp = Formula::imp(p.clone(), Formula::or(p.clone(), q.clone()));
    let ax = b.ax(imp.clone());
    let pick = b.land1(ax, imp)?;
    let x = b.cut(both, pick)?;
    out.push(b.finish(x));
    Ok(out)
}

fn is_pass(checks: &[feasint::nonclassical::ContractCheck], contract: &str, method: &str) -> bool {
    checks.iter().any(|c| c.contract == contract && c.method == method && c.outcome == CheckOutcome::Pass)
}

/// Whether `c` outputs 1 on every input.
fn constant_one(c: &Circuit) -> bool {
    let n = c.inputs() as usize;
    (0..1u64 << n).all(|m| c.eval(&(0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()).unwrap()[0])
}

fn c7() -> Outcome {
    let corpus = lj_corpus().map_err(err)?;
    ensure!(corpus.len() >= 10, "only {} proofs", corpus.len());
    let lim = CheckLimits::default();
    let mut collapses = 0;
    for (i, p) in corpus.iter().enumerate() {
        ensure!(check_sequent_proof(p).accepted(), "proof {i} rejected: {}", check_sequent_proof(p).report());
        let (logic, phi, psi, theta) = pdi_target(p).map_err(err)?;
        ensure!(logic == Logic::Ipc, "proof {i} is not an LJ proof");
        ensure!(phi.is_monotone(), "proof {i}: φ not monotone");
        ensure!(p.root().unwrap().suc[0].connectives() <= 20, "proof {i}: too many connectives");
        let r = lj_pdi(p, &lim).map_err(err)?;
        ensure!(r.passed(), "proof {i}: {}", r.to_kv());
        ensure!(r.monotone(), "proof {i}: pair is not monotone");
        let (cf, df) = (r.c.unfold().map_err(err)?, r.d.unfold().map_err(err)?);
        let contracts = [
            ("phi->C|D", Formula::imp(phi.clone(), Formula::or(cf.clone(), df.clone()))),
            ("C->psi", Formula::imp(cf.clone(), psi.clone())),
            ("D->theta", Formula::imp(df.clone(), theta.clone())),
        ];
        for (name, f) in &contracts {
            ensure!(is_pass(&r.checks, name, "classical"), "proof {i}: {name} classical");
            ensure!(is_pass(&r.checks, name, "ipc-oracle"), "proof {i}: {name} ipc-oracle");
            ensure!(tt_valid(f), "proof {i}: {name} fails the truth table");
            ensure!(ipc_valid(f, DEFAULT_ORACLE_CAP).map_err(err)?, "proof {i}: {name} not IPC-provable");
        }
        if phi == Formula::Top {
            let (c1, d1) = (constant_one(&r.c), constant_one(&r.d));
            ensure!(c1 || d1, "proof {i}: no disjunct collapses for φ = ⊤");
            let side = if c1 { &psi } else { &theta };
            ensure!(ipc_valid(side, DEFAULT_ORACLE_CAP).map_err(err)?, "proof {i}: collapsed disjunct not provable");
            collapses += 1;
        }
    }
    ensure!(collapses >= 2, "only {collapses} φ = ⊤ cases");
    Ok(format!("{} proofs, {collapses} disjunction-property collapses", corpus.len()))
}

fn bx(f: Formula) -> Formula {
    Formula::boxed(f)
}

fn s4_corpus() -> Result<Vec<SequentProof>, feasint::Error> {
    let (p, q, r) = (a(1), a(2), a(3));
    let new = || ProofBuilder::new(Calculus::new(System::S4, false));
    let mut out = Vec::new();

    // □p → □p ∨ □q
    let mut b = new();
    let x = b.ax(bx(p.clone()));
    let x = b.ror1(x, bx(q.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p → □q ∨ □p
    let mut b = new();
    let x = b.ax(bx(p.clone()));
    let x = b.ror2(x, bx(q.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □(p ∧ q) → □p ∨ □r
    let mut b = new();
    let x = b.ax(p.clone());
    let x = b.land1(x, q.clone())?;
    let x = b.ls4(x)?;
    let x = b.rs4(x);
    let x = b.ror1(x, bx(r.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p → □□p ∨ □q
    let mut b = new();
    let x = b.ax(bx(p.clone()));
    let x = b.rs4(x);
    let x = b.ror1(x, bx(q.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p ∧ □q → □(p ∧ q) ∨ □r
    let mut b = new();
    let l = b.ax(p.clone());
    let l = b.ls4(l)?;
    let l = b.lw(l, bx(q.clone()));
    let rr = b.ax(q.clone());
    let rr = b.ls4(rr)?;
    let rr = b.lw(rr, bx(p.clone()));
    let rr = b.le(rr, 1)?;
    let x = b.rand(l, rr)?;
    let x = b.rs4(x);
    let x = b.land2(x, bx(p.clone()))?;
    let x = b.le(x, 1)?;
    let x = b.land1(x, bx(q.clone()))?;
    let x = b.lc(x)?;
    let x = b.ror1(x, bx(r.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p ∨ □q → □q ∨ □p
    let mut b = new();
    let l = b.ax(bx(p.clone()));
    let l = b.ror2(l, bx(q.clone()))?;
    let rr = b.ax(bx(q.clone()));
    let rr = b.ror1(rr, bx(p.clone()))?;
    let x = b.lor(l, rr)?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → □⊤ ∨ □p
    let mut b = new();
    let x = b.axiom(Rule::AxTop, Sequent::new(vec![], vec![Formula::Top]));
    let x = b.rs4(x);
    let x = b.ror1(x, bx(p.clone()))?;
    let x = b.lw(x, Formula::Top);
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∧ □q → □q ∨ □p
    let mut b = new();
    let x = b.ax(bx(q.clone()));
    let x = b.land2(x, p.clone())?;
    let x = b.ror1(x, bx(p.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));
    Ok(out)
}

fn gl_corpus() -> Result<Vec<SequentProof>, feasint::Error> {
    let (p, q, r) = (a(1), a(2), a(3));
    let new = || ProofBuilder::new(Calculus::new(System::GL, false));
    let mut out = Vec::new();

    // □p → □(p ∨ q) ∨ □r
    let mut b = new();
    let x = b.ax(p.clone());
    let x = b.ror1(x, q.clone())?;
    let x = b.lw(x, bx(Formula::or(p.clone(), q.clone())));
    let x = b.lw(x, bx(p.clone()));
    let x = b.le(x, 2)?;
    let x = b.le(x, 1)?;
    let x = b.gl(x)?;
    let x = b.ror1(x, bx(r.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p → □p ∨ □q
    let mut b = new();
    let x = b.ax(bx(p.clone()));
    let x = b.ror1(x, bx(q.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // ⊤ → □⊤ ∨ □p
    let mut b = new();
    let x = b.axiom(Rule::AxTop, Sequent::new(vec![], vec![Formula::Top]));
    let x = b.lw(x, bx(Formula::Top));
    let x = b.gl(x)?;
    let x = b.ror1(x, bx(p.clone()))?;
    let x = b.lw(x, Formula::Top);
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □(p ∧ q) → □q ∨ □r
    let mut b = new();
    let pq = Formula::and(p.clone(), q.clone());
    let x = b.ax(q.clone());
    let x = b.land2(x, p.clone())?;
    let x = b.lw(x, bx(q.clone()));
    let x = b.lw(x, bx(pq));
    let x = b.le(x, 2)?;
    let x = b.le(x, 1)?;
    let x = b.gl(x)?;
    let x = b.ror1(x, bx(r.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p ∨ □q → □q ∨ □p
    let mut b = new();
    let l = b.ax(bx(p.clone()));
    let l = b.ror2(l, bx(q.clone()))?;
    let rr = b.ax(bx(q.clone()));
    let rr = b.ror1(rr, bx(p.clone()))?;
    let x = b.lor(l, rr)?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // □p → □□p ∨ □q
    let mut b = new();
    let x = b.ax(bx(p.clone()));
    let x = b.lw(x, p.clone());
    let x = b.lw(x, bx(bx(p.clone())));
    let x = b.gl(x)?;
    let x = b.ror1(x, bx(q.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));

    // p ∧ □q → □r ∨ □q
    let mut b = new();
    let x = b.ax(bx(q.clone()));
    let x = b.land2(x, p.clone())?;
    let x = b.ror2(x, bx(r.clone()))?;
    let x = b.rimp(x)?;
    out.push(b.finish(x));
    Ok(out)
}

fn c8() -> Outcome {
    let lim = CheckLimits::default();
    let mut counts = Vec::new();
    for (logic, corpus) in [(Logic::S4, s4_corpus().map_err(err)?), (Logic::GL, gl_corpus().map_err(err)?)] {
        ensure!(corpus.len() >= 6, "only {} {logic} proofs", corpus.len());
        let (class, projection, project): (FrameClass, &str, fn(&Formula) -> Formula) = match logic {
            Logic::S4 => (FrameClass::S4, "forgetful", forget),
            _ => (FrameClass::GL, "collapse", collapse),
        };
        let kripke = format!("kripke-{logic}");
        for (i, p) in corpus.iter().enumerate() {
            ensure!(check_sequent_proof(p).accepted(), "{logic} proof {i} rejected: {}", check_sequent_proof(p).report());
            let (_, phi, bpsi, btheta) = pdi_target(p).map_err(err)?;
            ensure!(phi.is_monotone(), "{logic} proof {i}: φ not monotone");
            let r = modal_mdi(p, &lim).map_err(err)?;
            ensure!(r.passed(), "{logic} proof {i}: {}", r.to_kv());
            let (cf, df) = (r.c.unfold().map_err(err)?, r.d.unfold().map_err(err)?);
            let contracts = [
                ("phi->C|D", Formula::imp(phi.clone(), Formula::or(cf.clone(), df.clone()))),
                ("C->box_psi", Formula::imp(cf.clone(), bpsi.clone())),
                ("D->box_theta", Formula::imp(df.clone(), btheta.clone())),
            ];
            for (name, f) in &contracts {
                ensure!(is_pass(&r.checks, name, projection), "{logic} proof {i}: {name} {projection}");
                ensure!(is_pass(&r.checks, name, &kripke), "{logic} proof {i}: {name} {kripke}");
                ensure!(tt_valid(&project(f)), "{logic} proof {i}: {name} fails the {projection} truth table");
                let atoms = f.atoms().len().max(1);
                let search = formula_countermodel(f, class, 5, 5 * atoms).map_err(err)?;
                ensure!(search.worlds == 5, "{logic} proof {i}: search stopped at {} worlds", search.worlds);
                ensure!(search.countermodel.is_none(), "{logic} proof {i}: {name} has a countermodel");
            }
        }
        counts.push(format!("{} {logic}", corpus.len()));
    }
    Ok(format!("{} proofs, no countermodel up to 5 worlds", counts.join(" + ")))
}

fn c9() -> Outcome {
    type Check = fn(&dyn Fn(u32, u32) -> bool, u32, u32) -> bool;
    let sentences: [(&str, &str, Check); 3] = [
        (
            "functional",
            "(rel R s t) (forall (x s) (y1 t) (y2 t) (imp (and (rel R x y1) (rel R x y2)) (= y1 y2)))",
            |r, ds, dt| (1..=ds).all(|x| (1..=dt).filter(|&y| r(x, y)).count() <= 1),
        ),
        (
            "injective",
            "(rel R s t) (forall (x1 s) (x2 s) (y t) (imp (and (rel R x1 y) (rel R x2 y)) (= x1 x2)))",
            |r, ds, dt| (1..=dt).all(|y| (1..=ds).filter(|&x| r(x, y)).count() <= 1),
        ),
        (
            "total",
            "(rel R s t) (forall (x s) (exists (y t) (rel R x y)))",
            |r, ds, dt| (1..=ds).all(|x| (1..=dt).any(|y| r(x, y))),
        ),
    ];
    let mut models = 0u64;
    for (name, text, direct) in sentences {
        let s = parse_sentence(text).map_err(err)?;
        for ds in 1..=3u32 {
            for dt in 1..=3u32 {
                let interp = Interpretation::new([("s", ds), ("t", dt)]);
                let (f, table) = s.translate(&interp).map_err(err)?;
                let (folded, _) = s.translate_folded(&interp).map_err(err)?;
                let cells = ds * dt;
                for ext in 0..1u64 << cells {
                    let rel = |x: u32, y: u32| ext >> ((x - 1) * dt + (y - 1)) & 1 == 1;
                    let mut holds: HashMap<AtomId, bool> = HashMap::new();
                    for x in 1..=ds {
                        for y in 1..=dt {
                            holds.insert(table.get("R", &[x, y]), rel(x, y));
                        }
                    }
                    let val = |p: AtomId| holds[&p];
                    let want = direct(&rel, ds, dt);
                    ensure!(ev(&f, &val) == want, "{name} on |s|={ds}, |t|={dt}, R={ext:#b}");
                    ensure!(ev(&folded, &val) == want, "{name} (folded) on |s|={ds}, |t|={dt}, R={ext:#b}");
                    models += 1;
                }
            }
        }
    }
    Ok(format!("3 sentences, {models} finite structures"))
}

/// Audit tally.
#[derive(Default)]
struct Audit {
    accepted: usize,
    mutants_accepted: usize,
    mutants_rejected: usize,
}

impl Audit {
    fn mutant(&mut self, accepted: bool) {
        if accepted {
            self.mutants_accepted += 1;
        } else {
            self.mutants_rejected += 1;
        }
    }
}

fn random_set(rng: &mut StdRng, atoms: u32, width: usize) -> ClauseSet {
    let m = rng.gen_range(atoms as usize..=4 * atoms as usize);
    ClauseSet::new((0..m).map(|_| random_clause(rng, atoms, width)).collect(), AtomTable::default())
}

/// The set with one literal of one clause flipped.
fn flip_literal(rng: &mut StdRng, set: &ClauseSet) -> ClauseSet {
    let mut clauses = set.clauses.clone();
    let i = rng.gen_range(0..clauses.len());
    if !clauses[i].0.is_empty() {
        let j = rng.gen_range(0..clauses[i].0.len());
        clauses[i].0[j] = clauses[i].0[j].negate();
    }
    ClauseSet::new(clauses, set.table.clone())
}

fn audit_resolution(rng: &mut StdRng, audit: &mut Audit) -> Result<usize, String> {
    let mut found = 0;
    while found < 200 {
        let atoms = rng.gen_range(3..=6);
        let set = random_set(rng, atoms, 3);
        let Some(r) = dp_refute(&set, &DpOptions::default()).map_err(err)? else { continue };
        ensure!(check_resolution(&set, &r).accepted(), "DP refutation rejected");
        ensure!(!set_sat(&set), "accepted resolution refutation of a satisfiable set");
        found += 1;
        for _ in 0..3 {
            let (set2, r2) = if rng.gen_bool(0.5) {
                (flip_literal(rng, &set), r.clone())
            } else {
                let mut r2 = r.clone();
                let i = rng.gen_range(0..r2.lines.len());
                let (c, step) = &mut r2.lines[i];
                match (step, rng.gen_range(0..3)) {
                    (ResStep::Resolve(_, _, s), 0) => *s = rng.gen_range(1..=atoms),
                    (ResStep::Resolve(j, k, _), 1) => std::mem::swap(j, k),
                    (_, _) if !c.0.is_empty() => {
                        let j = rng.gen_range(0..c.0.len());
                        c.0.remove(j);
                    }
                    _ => c.0.push(Lit::pos(rng.gen_range(1..=atoms))),
                }
                (set.clone(), r2)
            };
            let ok = check_resolution(&set2, &r2).accepted();
            ensure!(!ok || !set_sat(&set2), "mutated resolution refutation certifies a satisfiable set");
            audit.mutant(ok);
        }
    }
    Ok(found)
}

/// A cutting-planes refutation mirroring unit propagation, with sound
/// axiom, multiplication and division lines mixed in.
fn unit_cp(rng: &mut StdRng, set: &ClauseSet, atoms: u32) -> Option<CpRefutation> {
    let mut lines: Vec<(Inequality, CpStep)> = Vec::new();
    let mut unit: BTreeMap<Lit, usize> = BTreeMap::new();
    let noise = |rng: &mut StdRng, lines: &mut Vec<(Inequality, CpStep)>| {
        if lines.is_empty() || rng.gen_bool(0.6) {
            return;
        }
        let v = rng.gen_range(1..=atoms);
        let j = rng.gen_range(1..=lines.len());
        let line = match rng.gen_range(0..4) {
            0 => (Inequality::new([(v, BigInt::from(1))], BigInt::from(0)), CpStep::AxLower(v)),
            1 => (Inequality::new([(v, BigInt::from(-1))], BigInt::from(-1)), CpStep::AxUpper(v)),
            2 => {
                let c = BigInt::from(rng.gen_range(0..=3));
                (lines[j - 1].0.scale(&c), CpStep::Mul(j, c))
            }
            _ => {
                let two = BigInt::from(2);
                let doubled = lines[j - 1].0.scale(&two);
                lines.push((doubled.clone(), CpStep::Mul(j, two.clone())));
                (doubled.divide(&two).unwrap(), CpStep::Div(lines.len(), two))
            }
        };
        lines.push(line);
    };
    loop {
        let mut progress = false;
        for (ci, c) in set.clauses.iter().enumerate() {
            if c.lits().iter().any(|l| unit.contains_key(l)) {
                continue;
            }
            let open: Vec<Lit> = c.lits().iter().copied().filter(|l| !unit.contains_key(&l.negate())).collect();
            if open.len() > 1 {
                continue;
            }
            noise(rng, &mut lines);
            lines.push((clause_to_inequality(c), CpStep::Input(ci + 1)));
            for l in c.lits() {
                if let Some(&u) = unit.get(&l.negate()) {
                    let at = lines.len();
                    let sum = lines[at - 1].0.add(&lines[u - 1].0);
                    lines.push((sum, CpStep::Add(at, u)));
                }
            }
            match open.first() {
                None => return Some(CpRefutation { lines }),
                Some(l) => {
                    unit.insert(*l, lines.len());
                    progress = true;
                }
            }
        }
        if !progress {
            return None;
        }
    }
}

fn audit_cp(rng: &mut StdRng, audit: &mut Audit) -> Result<usize, String> {
    let mut found = 0;
    while found < 150 {
        let atoms = rng.gen_range(2..=6);
        let set = random_set(rng, atoms, 2);
        let Some(r) = unit_cp(rng, &set, atoms) else { continue };
        let v = check_cp(&set, &r);
        ensure!(v.accepted(), "constructed CP refutation rejected: {}\n{}", v.report(), r.to_text());
        ensure!(!set_sat(&set), "accepted CP refutation of a satisfiable set");
        found += 1;
        for _ in 0..3 {
            let (set2, r2) = if rng.gen_bool(0.5) {
                (flip_literal(rng, &set), r.clone())
            } else {
                let mut r2 = r.clone();
                let i = rng.gen_range(0..r2.lines.len());
                let q = &mut r2.lines[i].0;
                if rng.gen_bool(0.5) || q.coeffs.is_empty() {
                    q.bound += BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
                } else {
                    let v = *q.coeffs.keys().next().unwrap();
                    *q.coeffs.get_mut(&v).unwrap() += BigInt::from(1);
                }
                (set.clone(), r2)
            };
            let ok = check_cp(&set2, &r2).accepted();
            ensure!(!ok || !set_sat(&set2), "mutated CP refutation certifies a satisfiable set");
            audit.mutant(ok);
        }
    }
    Ok(found)
}

/// NS certificate for an unsatisfiable set: `g_i` sums the point indicators of
/// the assignments falsifying clause `i` first, and the `h_v` absorb the
/// non-multilinear remainder.
fn ns_certificate(set: &ClauseSet, field: Field) -> Option<NsCertificate> {
    let s = set.num_vars() as u32;
    let one = Polynomial::constant(field, 1);
    let mut g: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for m in 0..1u64 << s {
        let bit = |v: AtomId| m >> (v - 1) & 1 == 1;
        let i = set.clauses.iter().position(|c| !c.eval_bits(bit))?;
        let delta = (1..=s).fold(one.clone(), |acc, v| {
            let x = Polynomial::var(field, v);
            acc.mul(&if bit(v) { x } else { one.sub(&x) })
        });
        let e = g.entry(i + 1).or_insert_with(|| Polynomial::zero(field));
        *e = e.add(&delta);
    }
    let mut rest = Polynomial::constant(field, -1);
    for (i, gi) in &g {
        let pc = feasint::kernel::formula_to_polynomial(&set.clauses[i - 1].to_formula(), field).ok()?;
        rest = rest.add(&pc.mul(gi));
    }
    // rest = Σ (x_v² − x_v)·q_v + multilinear part; the latter must vanish.
    let mut q: BTreeMap<AtomId, Polynomial> = BTreeMap::new();
    while let Some((mono, c)) = rest.terms.iter().find(|(m, _)| m.iter().any(|(_, e)| *e >= 2)).map(|(m, c)| (m.clone(), c.clone())) {
        let &(v, e) = mono.iter().find(|(_, e)| *e >= 2).unwrap();
        let lower = |drop: u32| -> Polynomial {
            let mut p = Polynomial::zero(field);
            let m: Vec<(AtomId, u32)> = mono
                .iter()
                .map(|&(w, k)| if w == v { (w, k - drop) } else { (w, k) })
                .filter(|(_, k)| *k > 0)
                .collect();
            p.terms.insert(m, c.clone());
            p
        };
        let _ = e;
        let qv = q.entry(v).or_insert_with(|| Polynomial::zero(field));
        *qv = qv.add(&lower(2));
        let mut term = Polynomial::zero(field);
        term.terms.insert(mono.clone(), c.clone());
        rest = rest.sub(&term).add(&lower(1));
    }
    if !rest.is_zero() {
        return None;
    }
    Some(NsCertificate {
        field,
        g,
        h: q.into_iter().map(|(v, p)| (v, p.neg())).collect(),
    })
}

fn audit_ns(rng: &mut StdRng, audit: &mut Audit) -> Result<usize, String> {
    let mut found = 0;
    while found < 100 {
        let atoms = rng.gen_range(2..=4);
        let set = random_set(rng, atoms, 2);
        if set_sat(&set) {
            continue;
        }
        let field = if found % 3 == 0 { Field::Prime(5) } else { Field::Rationals };
        let cert = ns_certificate(&set, field).ok_or("could not build an NS certificate")?;
        let v = check_ns(&set, &cert, field).map_err(err)?;
        ensure!(v.accepted(), "constructed NS certificate rejected: {}", v.report());
        found += 1;
        for _ in 0..3 {
            let (set2, cert2) = if rng.gen_bool(0.5) {
                (flip_literal(rng, &set), cert.clone())
            } else {
                let mut c2 = cert.clone();
                let keys: Vec<usize> = c2.g.keys().copied().collect();
                let k = keys[rng.gen_range(0..keys.len())];
                let e = c2.g.get_mut(&k).unwrap();
                *e = e.add(&Polynomial::constant(field, 1));
                (set.clone(), c2)
            };
            let ok = check_ns(&set2, &cert2, field).is_ok_and(|v| v.accepted());
            ensure!(!ok || !set_sat(&set2), "mutated NS certificate certifies a satisfiable set");
            audit.mutant(ok);
        }
    }
    Ok(found)
}

/// Brute-force validity of the end sequent for the calculus's logic.
fn sequent_sound(calc: &Calculus, s: &Sequent) -> Result<bool, String> {
    let f = Formula::imp(Formula::conj(s.ant.iter().cloned()), Formula::disj(s.suc.iter().cloned()));
    let none = |class| -> Result<bool, String> {
        Ok(formula_countermodel(&f, class, 3, 12).map_err(err)?.countermodel.is_none())
    };
    Ok(match calc.system {
        System::LK | System::LKn | System::LKd(_) => tt_valid(&f),
        System::LJ => tt_valid(&f) && none(FrameClass::Intuitionistic)?,
        System::S4 => tt_valid(&forget(&f)) && none(FrameClass::S4)?,
        System::GL => tt_valid(&collapse(&f)) && none(FrameClass::GL)?,
        _ => tt_valid(&forget(&f)),
    })
}

fn audit_sequents(rng: &mut StdRng, audit: &mut Audit) -> Result<usize, String> {
    use System::*;
    let calculi = [
        Calculus::new(LK, true),
        Calculus::new(LK, false),
        Calculus::new(LJ, true),
        Calculus::new(LJ, false),
        Calculus::new(LKn, false),
        Calculus::new(LKn, true),
        Calculus::new(LKd(3), true),
        Calculus::new(K, true),
        Calculus::new(D, true),
        Calculus::new(KT, true),
        Calculus::new(K4, true),
        Calculus::new(KD4, true),
        Calculus::new(S4, true),
        Calculus::new(GL, true),
    ];
    let mut total = 0;
    for calc in calculi {
        let (mut found, mut tries) = (0, 0);
        while found < 40 {
            tries += 1;
            ensure!(tries < 20_000, "too few accepted random {calc} proofs ({found})");
            let p = random::proof(rng, calc, 30, 3);
            if !check_sequent_proof(&p).accepted() {
                continue;
            }
            let root = p.root().unwrap();
            ensure!(sequent_sound(&calc, root)?, "accepted {calc} proof of an invalid sequent:\n{}", p.to_text());
            found += 1;
            for _ in 0..2 {
                let m = random::mutate(rng, &p, 3);
                let ok = check_sequent_proof(&m).accepted();
                ensure!(
                    !ok || sequent_sound(&calc, m.root().unwrap())?,
                    "accepted mutated {calc} proof of an invalid sequent:\n{}",
                    m.to_text()
                );
                audit.mutant(ok);
            }
        }
        total += found;
    }
    Ok(total)
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut audit = Audit::default();
    let res = audit_resolution(&mut rng, &mut audit)?;
    let cp = audit_cp(&mut rng, &mut audit)?;
    let ns = audit_ns(&mut rng, &mut audit)?;
    let seq = audit_sequents(&mut rng, &mut audit)?;
    audit.accepted = res + cp + ns + seq;
    ensure!(audit.accepted >= 1000, "only {} accepted objects", audit.accepted);
    Ok(format!(
        "{} accepted ({res} resolution, {cp} CP, {ns} NS, {seq} sequent) plus {} accepted and {} rejected mutants, all sound",
        audit.accepted, audit.mutants_accepted, audit.mutants_rejected
    ))
}
