//! `feasint`: generate hard instances, check proofs, extract and verify interpolants.
//!
//! Exit codes: 0 accept / pass, 1 reject / fail, 2 usage or input error, 3 cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use feasint::classical::{
    maehara_interpolate, resolution_interpolate, verify_interpolant, verify_sequent_interpolant, InterpolantCheck,
    Partition,
};
use feasint::dp::dp_refute_split;
use feasint::fo::{parse_sentence, Interpretation};
use feasint::formula::{AtomTable, Formula, Sequent};
use feasint::generators::{
    clique_clauses, clique_color_clauses, clique_color_lift, clique_color_tautology, color_clauses, php, ClauseSet,
    SplitClauseSet,
};
use feasint::kernel::{
    check_cp, check_ns, check_resolution, check_sequent_proof, CpRefutation, Field, NsCertificate,
    ResolutionRefutation, SequentProof, Verdict,
};
use feasint::nonclassical::{check_contracts, ipc_prove, lj_pdi, modal_mdi, pdi_target, CheckLimits, Logic, Outcome};
use feasint::{Circuit, Error, Limits};

#[derive(Parser)]
#[command(name = "feasint", version, about = "Proof checkers and feasible interpolation extractors")]
struct Cli {
    /// Worker threads for brute-force verification.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest number of atoms enumerated exhaustively.
    #[arg(long, global = true, default_value_t = 24)]
    atom_cap: usize,
    /// Largest sequent (in connectives) handed to the IPC oracle.
    #[arg(long, global = true, default_value_t = feasint::nonclassical::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Check a proof or refutation.
    #[command(subcommand)]
    Check(Check),
    /// Extract an interpolant and verify it.
    #[command(subcommand)]
    Interp(Interp),
    /// Re-verify emitted interpolant files.
    #[command(subcommand)]
    Verify(Verify),
    /// Decision procedures used as oracles.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Args)]
struct Out {
    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Graph {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Subcommand)]
enum Gen {
    /// Pigeonhole clauses (DIMACS).
    Php {
        #[arg(long)]
        pigeons: u32,
        #[arg(long)]
        holes: u32,
        #[command(flatten)]
        out: Out,
    },
    /// `k`-clique clauses (DIMACS).
    Clique {
        #[command(flatten)]
        g: Graph,
        #[command(flatten)]
        out: Out,
    },
    /// `l`-coloring clauses (DIMACS).
    Color {
        #[command(flatten)]
        g: Graph,
        #[command(flatten)]
        out: Out,
    },
    /// The clique-color tautology, or with `--cnf` the split clause set.
    CliqueColor {
        #[command(flatten)]
        g: Graph,
        /// Emit DIMACS instead of a formula.
        #[arg(long)]
        cnf: bool,
        /// Where to write the C/D partition (with `--cnf`).
        #[arg(long)]
        partition_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Intuitionistic lift of the clique-color implication.
    LiftIpc {
        #[command(flatten)]
        g: Graph,
        #[command(flatten)]
        out: Out,
    },
    /// Modal lift of the clique-color implication.
    LiftModal {
        #[command(flatten)]
        g: Graph,
        #[command(flatten)]
        out: Out,
    },
    /// Propositional translation of a first-order sentence.
    Fo {
        #[arg(long)]
        sentence: PathBuf,
        /// Domain size per sort, `SORT=N`; repeatable.
        #[arg(long = "size", value_parser = parse_size)]
        sizes: Vec<(String, u32)>,
        /// Apply the canonical constant folding.
        #[arg(long)]
        fold: bool,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Check {
    /// A resolution refutation of a DIMACS clause set.
    Resolution {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
    },
    /// A cutting-planes refutation of a DIMACS clause set.
    Cp {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
    },
    /// A Nullstellensatz certificate for a DIMACS clause set.
    Ns {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        /// `Q` or `F<p>`; defaults to the certificate's field.
        #[arg(long)]
        field: Option<String>,
    },
    /// A sequent proof; the calculus is named in the script.
    Sequent {
        #[arg(long)]
        proof: PathBuf,
    },
}

#[derive(Subcommand)]
enum Interp {
    /// Resolution refutation of a split clause set, through the LK simulation.
    Resolution {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Refutation script; found by Davis-Putnam when absent.
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cut-free LK_n proof with a sequent partition.
    Lk {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// LJ proof of ⇒ φ → ψ ∨ θ.
    Lj(PairArgs),
    /// S4 proof of ⇒ φ → □ψ ∨ □θ.
    S4(PairArgs),
    /// GL proof of ⇒ φ → □ψ ∨ □θ.
    Gl(PairArgs),
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    proof: PathBuf,
    #[arg(long)]
    out_c: PathBuf,
    #[arg(long)]
    out_d: PathBuf,
}

#[derive(Subcommand)]
enum Verify {
    /// `φ → C` and `C → ψ` with `C` over the shared atoms.
    Craig {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Interpolant of a split clause set: `⋀C → I` and `I → ¬⋀D`.
    Resolution {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Interpolant of a partitioned end sequent.
    Lk {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Disjunctive interpolant pair for the end sequent of an LJ, S4 or GL proof.
    Pair {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        d: PathBuf,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Intuitionistic provability of a sequent `Γ ⇒ φ`.
    Ipc {
        /// Sequent text; read from `--file` when absent.
        sequent: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn parse_size(s: &str) -> std::result::Result<(String, u32), String> {
    let (k, v) = s.split_once('=').ok_or("expected SORT=N")?;
    let n: u32 = v.parse().map_err(|_| format!("bad size '{v}'"))?;
    Ok((k.to_string(), n))
}

/// Failure categories mapped onto exit codes.
enum Fail {
    Usage(String),
    Cap(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Fail::Cap(e.to_string())
        } else {
            Fail::Usage(e.to_string())
        }
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn read(p: &Path) -> Res<String> {
    fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))
}

fn write(p: &Path, text: &str) -> Res<()> {
    fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))
}

fn emit(out: &Out, text: &str) -> Res<()> {
    match &out.out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn formula_file(header: &str, table: &AtomTable, f: &Formula) -> String {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "; {line}");
    }
    for (id, name) in table.iter() {
        let _ = writeln!(s, "; atom {id} {name}");
    }
    let _ = writeln!(s, "{}", f.to_sexpr());
    s
}

fn graph_kl(g: &Graph) -> Res<(u32, u32)> {
    match (g.k, g.l) {
        (Some(k), Some(l)) => Ok((k, l)),
        _ => Err(Fail::Usage("--k and --l are required".into())),
    }
}

fn need(v: Option<u32>, name: &str) -> Res<u32> {
    v.ok_or_else(|| Fail::Usage(format!("--{name} is required")))
}

fn load_split(cnf: &Path, partition: &Path) -> Res<SplitClauseSet> {
    let set = ClauseSet::parse_dimacs(&read(cnf)?)?;
    Ok(SplitClauseSet::parse_partition(set, &read(partition)?)?)
}

fn verdict_code(v: &Verdict) -> u8 {
    print!("{}", v.report());
    if v.accepted() {
        0
    } else {
        1
    }
}

fn check_report(c: &InterpolantCheck) -> (String, u8) {
    let mut s = format!(
        "scope={}\nverification={}\n",
        if c.scope_ok { "PASS" } else { "FAIL" },
        if c.pass { "PASS" } else { "FAIL" }
    );
    if let Some((a, why)) = &c.witness {
        let bits: Vec<String> = a.iter().map(|(k, v)| format!("{k}:{}", v as u8)).collect();
        let _ = writeln!(s, "witness={}", bits.join(","));
        let _ = writeln!(s, "witness_reason={why}");
    }
    (s, if c.pass { 0 } else { 1 })
}

/// Writes a circuit and checks that it reads back identically.
fn write_circuit(p: &Path, c: &Circuit) -> Res<&'static str> {
    write(p, &c.to_text())?;
    let back = Circuit::parse(&read(p)?)?;
    Ok(if back == *c { "PASS" } else { "FAIL" })
}

fn run(cli: Cli) -> Res<u8> {
    let mut limits = Limits::with_cap(cli.atom_cap);
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Fail::Usage("--workers must be positive".into()));
        }
        limits.workers = w;
    }
    if cli.atom_cap == 0 || cli.oracle_cap == 0 {
        return Err(Fail::Usage("caps must be positive".into()));
    }
    let check_limits = CheckLimits {
        limits,
        oracle_cap: cli.oracle_cap,
        ..CheckLimits::default()
    };
    match cli.cmd {
        Cmd::Gen(g) => gen(g, &limits).map(|_| 0),
        Cmd::Check(c) => check(c),
        Cmd::Interp(i) => interp(i, &limits, &check_limits),
        Cmd::Verify(v) => verify(v, &limits, &check_limits),
        Cmd::Oracle(Oracle::Ipc { sequent, file }) => {
            let text = match (sequent, file) {
                (Some(s), None) => s,
                (None, Some(f)) => read(&f)?,
                _ => return Err(Fail::Usage("give a sequent or --file, not both".into())),
            };
            let s = Sequent::parse(text.trim())?;
            let v = ipc_prove(&s, cli.oracle_cap)?;
            println!("verdict={}", if v.is_provable() { "PROVABLE" } else { "UNPROVABLE" });
            Ok(if v.is_provable() { 0 } else { 1 })
        }
    }
}

fn gen(g: Gen, limits: &Limits) -> Res<()> {
    match g {
        Gen::Php { pigeons, holes, out } => {
            if pigeons == 0 || holes == 0 {
                return Err(Fail::Usage("--pigeons and --holes must be positive".into()));
            }
            let s = php(pigeons, holes)?;
            emit(&out, &s.to_dimacs(&format!("php pigeons={pigeons} holes={holes}")))
        }
        Gen::Clique { g, out } => {
            let k = need(g.k, "k")?;
            let s = clique_clauses(g.n, k)?;
            emit(&out, &s.to_dimacs(&format!("clique n={} k={k}", g.n)))
        }
        Gen::Color { g, out } => {
            let l = need(g.l, "l")?;
            let s = color_clauses(g.n, l)?;
            emit(&out, &s.to_dimacs(&format!("color n={} l={l}", g.n)))
        }
        Gen::CliqueColor { g, cnf, partition_out, out } => {
            let (k, l) = graph_kl(&g)?;
            let header = format!("clique-color n={} k={k} l={l}", g.n);
            if cnf {
                let s = clique_color_clauses(g.n, k, l)?;
                if let Some(p) = partition_out {
                    write(&p, &s.partition_text())?;
                }
                emit(&out, &s.set.to_dimacs(&header))
            } else {
                if partition_out.is_some() {
                    return Err(Fail::Usage("--partition-out needs --cnf".into()));
                }
                let (f, t) = clique_color_tautology(g.n, k, l)?;
                emit(&out, &formula_file(&header, &t, &f))
            }
        }
        Gen::LiftIpc { g, out } => {
            let (k, l) = graph_kl(&g)?;
            let (lift, t) = clique_color_lift(g.n, k, l, false, limits)?;
            emit(&out, &formula_file(&format!("lift-ipc n={} k={k} l={l}", g.n), &t, &lift.formula))
        }
        Gen::LiftModal { g, out } => {
            let (k, l) = graph_kl(&g)?;
            let (lift, t) = clique_color_lift(g.n, k, l, true, limits)?;
            emit(&out, &formula_file(&format!("lift-modal n={} k={k} l={l}", g.n), &t, &lift.formula))
        }
        Gen::Fo { sentence, sizes, fold, out } => {
            let s = parse_sentence(&read(&sentence)?)?;
            let interp = Interpretation {
                sizes: sizes.iter().cloned().collect(),
            };
            let (f, t) = if fold { s.translate_folded(&interp)? } else { s.translate(&interp)? };
            let dims: Vec<String> = interp.sizes.iter().map(|(k, v)| format!("{k}={v}")).collect();
            emit(&out, &formula_file(&format!("fo {} fold={fold}", dims.join(" ")), &t, &f))
        }
    }
}

fn check(c: Check) -> Res<u8> {
    Ok(match c {
        Check::Resolution { cnf, proof } => {
            let set = ClauseSet::parse_dimacs(&read(&cnf)?)?;
            verdict_code(&check_resolution(&set, &ResolutionRefutation::parse(&read(&proof)?)?))
        }
        Check::Cp { cnf, proof } => {
            let set = ClauseSet::parse_dimacs(&read(&cnf)?)?;
            verdict_code(&check_cp(&set, &CpRefutation::parse(&read(&proof)?)?))
        }
        Check::Ns { cnf, proof, field } => {
            let set = ClauseSet::parse_dimacs(&read(&cnf)?)?;
            let cert = NsCertificate::parse(&read(&proof)?)?;
            let field = match field {
                Some(f) => Field::parse(&f)?,
                None => cert.field,
            };
            verdict_code(&check_ns(&set, &cert, field)?)
        }
        Check::Sequent { proof } => verdict_code(&check_sequent_proof(&SequentProof::parse(&read(&proof)?)?)),
    })
}

fn accepted_proof(path: &Path) -> Res<SequentProof> {
    let p = SequentProof::parse(&read(path)?)?;
    let v = check_sequent_proof(&p);
    if !v.accepted() {
        print!("{}", v.report());
        return Err(Fail::Usage("the proof is rejected by the kernel".into()));
    }
    Ok(p)
}

fn interp(i: Interp, limits: &Limits, lim: &CheckLimits) -> Res<u8> {
    match i {
        Interp::Resolution { cnf, partition, proof, out } => {
            let split = load_split(&cnf, &partition)?;
            let r = match proof {
                Some(p) => ResolutionRefutation::parse(&read(&p)?)?,
                None => dp_refute_split(&split, 2_000_000)?
                    .ok_or_else(|| Fail::Usage("the clause set is satisfiable".into()))?,
            };
            let v = check_resolution(&split.set, &r);
            if !v.accepted() {
                print!("{}", v.report());
                return Ok(1);
            }
            let rep = resolution_interpolate(&split, &r, limits)?;
            let rt = write_circuit(&out, &rep.circuit)?;
            print!("{}", rep.to_kv());
            println!("roundtrip={rt}");
            let failed = rep.check.as_ref().is_some_and(|c| !c.pass) || rt != "PASS";
            Ok(u8::from(failed))
        }
        Interp::Lk { proof, partition, out } => {
            let p = accepted_proof(&proof)?;
            let seq = p.root().cloned().unwrap_or_default();
            let part = Partition::parse(&read(&partition)?, &seq)?;
            let c = maehara_interpolate(&p, &part)?;
            let rt = write_circuit(&out, &c)?;
            println!("circuit_size={}", c.size());
            println!("monotone={}", c.is_monotone());
            println!("proof_size={}", p.size());
            let code = match verify_sequent_interpolant(&seq, &part, &c, limits) {
                Ok(chk) => {
                    let (s, code) = check_report(&chk);
                    print!("{s}");
                    code
                }
                Err(e) if e.is_cap() => {
                    println!("verification=SKIPPED");
                    0
                }
                Err(e) => return Err(e.into()),
            };
            println!("roundtrip={rt}");
            Ok(code.max(u8::from(rt != "PASS")))
        }
        Interp::Lj(a) => pair(a, Logic::Ipc, lim),
        Interp::S4(a) => pair(a, Logic::S4, lim),
        Interp::Gl(a) => pair(a, Logic::GL, lim),
    }
}

fn pair(a: PairArgs, logic: Logic, lim: &CheckLimits) -> Res<u8> {
    let p = accepted_proof(&a.proof)?;
    let (found, ..) = pdi_target(&p)?;
    if found != logic {
        return Err(Fail::Usage(format!("the proof is not a {logic} proof")));
    }
    let r = if logic == Logic::Ipc { lj_pdi(&p, lim)? } else { modal_mdi(&p, lim)? };
    let rc = write_circuit(&a.out_c, &r.c)?;
    let rd = write_circuit(&a.out_d, &r.d)?;
    print!("{}", r.to_kv());
    println!("roundtrip={}", if rc == "PASS" && rd == "PASS" { "PASS" } else { "FAIL" });
    Ok(u8::from(!r.passed() || rc != "PASS" || rd != "PASS"))
}

fn verify(v: Verify, limits: &Limits, lim: &CheckLimits) -> Res<u8> {
    let run = |r: feasint::Result<InterpolantCheck>| -> Res<u8> {
        match r {
            Ok(chk) => {
                let (s, code) = check_report(&chk);
                print!("{s}");
                Ok(code)
            }
            Err(e) => Err(e.into()),
        }
    };
    match v {
        Verify::Craig { phi, psi, circuit } => {
            let phi = Formula::parse(&read(&phi)?)?;
            let psi = Formula::parse(&read(&psi)?)?;
            let c = Circuit::parse(&read(&circuit)?)?;
            run(verify_interpolant(&phi, &psi, &c, limits))
        }
        Verify::Resolution { cnf, partition, circuit } => {
            let split = load_split(&cnf, &partition)?;
            let c = Circuit::parse(&read(&circuit)?)?;
            let phi = Formula::conj(split.c_clauses().iter().map(|c| c.to_formula()));
            let psi = Formula::not(Formula::conj(split.d_clauses().iter().map(|c| c.to_formula())));
            run(verify_interpolant(&phi, &psi, &c, limits))
        }
        Verify::Lk { proof, partition, circuit } => {
            let p = SequentProof::parse(&read(&proof)?)?;
            let seq = p.root().cloned().unwrap_or_default();
            let part = Partition::parse(&read(&partition)?, &seq)?;
            let c = Circuit::parse(&read(&circuit)?)?;
            run(verify_sequent_interpolant(&seq, &part, &c, limits))
        }
        Verify::Pair { proof, c, d } => {
            let p = SequentProof::parse(&read(&proof)?)?;
            let (logic, phi, l, r) = pdi_target(&p)?;
            let c = Circuit::parse(&read(&c)?)?;
            let d = Circuit::parse(&read(&d)?)?;
            let phi_atoms = phi.atoms();
            let scope = c.used_inputs().union(&d.used_inputs()).all(|a| phi_atoms.contains(a));
            let monotone = c.is_monotone() && d.is_monotone();
            let checks = check_contracts(logic, &phi, &l, &r, &c, &d, lim)?;
            println!("logic={logic}");
            println!("scope={}", if scope { "PASS" } else { "FAIL" });
            println!("monotone={monotone}");
            let mut failed = !scope;
            for ch in &checks {
                println!("check.{}.{}={}", ch.method, ch.contract, ch.outcome);
                failed |= matches!(ch.outcome, Outcome::Fail(_));
            }
            println!("verification={}", if failed { "FAIL" } else { "PASS" });
            Ok(u8::from(failed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Cap(m)) => {
            eprintln!("cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
