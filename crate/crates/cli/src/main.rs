//! `nia`: command-line front end for the clause-set family, its
//! constructive refutation, the verifier and the saturation oracle.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource-out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mimalloc::MiMalloc;
use nia_core::clause::ClauseSet;
use nia_core::io::{
    export_tptp, read_proof, write_proof, OracleSummary, ProofFormatError, RunReport, Verdict,
};
use nia_core::prover::{saturate, ProverLimits, ProverStatus};
use nia_core::refutation::{check_ordering_properties, refute, verify_proof, verify_trace};
use nia_core::schema::{extract_clause_set, generate_c};
use nia_core::term::Numeral;

#[global_allocator]
static GLOBAL: MiMalloc = MiMalloc;

#[derive(Parser)]
#[command(name = "nia", version, about = "Refutations of the non-injectivity clause sets C(n)")]
struct Cli {
    /// Print the run report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build C(n) and optionally write it as TPTP CNF.
    Generate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        tptp: Option<PathBuf>,
    },
    /// Extract the characteristic clause set from the proof schema and
    /// compare it with C(n).
    Extract {
        #[arg(long)]
        n: u64,
    },
    /// Build the constructive refutation of C(n).
    Refute {
        #[arg(long)]
        n: u64,
        /// Write the proof as JSON.
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Check the proof with the independent verifier.
        #[arg(long)]
        verify: bool,
    },
    /// Check a proof file against C(n).
    Verify {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        n: u64,
        /// Also accept plain binary resolution and factoring steps.
        #[arg(long)]
        relaxed: bool,
    },
    /// Run the saturation prover on C(n).
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 30.0)]
        max_seconds: f64,
        #[arg(long, default_value_t = 200_000)]
        max_clauses: usize,
        /// Write the refutation trace as JSON.
        #[arg(long)]
        proof: Option<PathBuf>,
    },
    /// Input-clause uses in the refutation against the growth law.
    Count {
        #[arg(long)]
        n: u64,
    },
    /// Exhaustively check the properties of the pair ordering on A_n.
    Ordering {
        #[arg(long)]
        n: u64,
    },
}

/// How a command ended, beyond what the report records.
enum Failure {
    Check,
    Usage(String),
    ResourceOut,
}

struct Outcome {
    report: RunReport,
    lines: Vec<String>,
    failure: Option<Failure>,
}

impl Outcome {
    fn new(report: RunReport) -> Self {
        Outcome { report, lines: Vec::new(), failure: None }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn finish(mut self, verdict: Verdict, failure: Option<Failure>) -> Self {
        if verdict.ok {
            self.line(format!("verdict: {}", verdict.status));
        } else {
            let message = verdict.message.clone().unwrap_or_default();
            self.line(format!("verdict: {} ({message})", verdict.status));
        }
        self.report.verdict = verdict;
        self.failure = failure;
        self
    }

    fn check(self, ok: bool, status: &str, message: impl FnOnce() -> String) -> Self {
        if ok {
            self.finish(Verdict::pass(status), None)
        } else {
            self.finish(Verdict::fail(status, message()), Some(Failure::Check))
        }
    }

    fn usage(report: RunReport, message: String) -> Self {
        Outcome::new(report).finish(Verdict::fail("usage", message.clone()), Some(Failure::Usage(message)))
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let mut outcome = run(cli.command, RunReport::new(&args));
    outcome.report.wall_time_ms = Some(started.elapsed().as_millis() as u64);

    if cli.json {
        println!("{}", outcome.report.to_json());
    } else {
        for line in &outcome.lines {
            println!("{line}");
        }
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Check) => ExitCode::from(1),
        Some(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Some(Failure::ResourceOut) => ExitCode::from(3),
    }
}

fn run(command: Command, mut report: RunReport) -> Outcome {
    match command {
        Command::Generate { n, tptp } => {
            let cs = generate_c(Numeral(n));
            report.parameter = Some(n);
            report.clauses = Some(cs.len());
            let mut out = Outcome::new(report);
            for c in cs.iter() {
                out.line(format!("{}: {c}", c.id.as_deref().unwrap_or("?")));
            }
            if let Some(path) = tptp {
                if let Err(e) = std::fs::write(&path, export_tptp(&cs)) {
                    return Outcome::usage(out.report, format!("cannot write {}: {e}", path.display()));
                }
                out.line(format!("wrote {}", path.display()));
            }
            out.finish(Verdict::pass("generated"), None)
        }
        Command::Extract { n } => {
            report.parameter = Some(n);
            let extracted = match extract_clause_set(Numeral(n)) {
                Ok(cs) => cs,
                Err(e) => {
                    let out = Outcome::new(report);
                    return out.check(false, "extraction failed", || e.to_string());
                }
            };
            let generated = generate_c(Numeral(n));
            report.clauses = Some(extracted.len());
            let mut out = Outcome::new(report);
            out.line(format!("extracted {} clauses, C({n}) has {}", extracted.len(), generated.len()));
            for c in extracted.iter() {
                out.line(format!("  {c}"));
            }
            let same = extracted.same_clauses(&generated);
            out.line(format!("match={same}"));
            out.check(same, "agrees with C(n)", || difference(&extracted, &generated))
        }
        Command::Refute { n, proof, verify } => {
            report.parameter = Some(n);
            let p = match refute(n) {
                Ok(p) => p,
                Err(e) => return Outcome::new(report).check(false, "construction failed", || e.to_string()),
            };
            let mut out = Outcome::new(report.with_proof(&p));
            out.line(format!("refutation of C({n}): {} nodes", p.len()));
            if let Some(g) = &out.report.growth {
                out.line(format!("occ(C5)={} recurrenceA({})={}", g.occ, g.m, g.recurrence_a));
            }
            if let Some(path) = proof {
                if let Err(e) = write_proof(&p, &path) {
                    return Outcome::usage(out.report, format!("cannot write {}: {e}", path.display()));
                }
                out.line(format!("wrote {}", path.display()));
            }
            if !verify {
                return out.finish(Verdict::pass("built"), None);
            }
            match verify_proof(&p) {
                Ok(()) => out.check(p.is_refutation(), "verified", || "root is not the empty clause".into()),
                Err(e) => out.check(false, "rejected", || e.to_string()),
            }
        }
        Command::Verify { proof, n, relaxed } => {
            report.parameter = Some(n);
            verify_file(&proof, n, relaxed, report)
        }
        Command::Oracle { n, max_seconds, max_clauses, proof } => {
            report.parameter = Some(n);
            let limits = match ProverLimits::new(max_clauses, max_seconds, None) {
                Ok(l) => l,
                Err(e) => return Outcome::usage(report, e.to_string()),
            };
            let cs = generate_c(Numeral(n));
            report.clauses = Some(cs.len());
            let result = saturate(&cs, &limits);
            let summary = OracleSummary::new(&result);
            let mut out = Outcome::new(report);
            out.line(format!(
                "{}: generated {}, kept {}, subsumed {}, given {}",
                summary.status, summary.generated, summary.kept, summary.subsumed, summary.given
            ));
            for (id, uses) in &summary.input_uses {
                out.line(format!("  uses of {id}: {uses}"));
            }
            out.report.oracle = Some(summary);
            match result.status {
                ProverStatus::Refuted(trace) => {
                    if let Some(path) = proof {
                        if let Err(e) = write_proof(&trace, &path) {
                            return Outcome::usage(
                                out.report,
                                format!("cannot write {}: {e}", path.display()),
                            );
                        }
                        out.line(format!("wrote {}", path.display()));
                    }
                    match verify_trace(&trace) {
                        Ok(()) => out.finish(Verdict::pass("refuted, trace verified"), None),
                        Err(e) => out.check(false, "trace rejected", || e.to_string()),
                    }
                }
                ProverStatus::Saturated => out.check(false, "saturated", || "C(n) is unsatisfiable".into()),
                ProverStatus::ResourceOut(why) => {
                    out.finish(Verdict::fail("resource-out", why), Some(Failure::ResourceOut))
                }
            }
        }
        Command::Count { n } => {
            report.parameter = Some(n);
            let p = match refute(n) {
                Ok(p) => p,
                Err(e) => return Outcome::new(report).check(false, "construction failed", || e.to_string()),
            };
            let mut out = Outcome::new(report.with_proof(&p));
            for (id, uses) in &out.report.occ.clone() {
                out.line(format!("occ({id})={uses}"));
            }
            let Some(g) = out.report.growth.clone() else {
                return out.check(false, "no codomain clause", || "C5 is not an input".into());
            };
            out.line(format!(
                "occ(C5)={} recurrenceA({})={} closedFormA({})={} match={}",
                g.occ, g.m, g.recurrence_a, g.m, g.closed_form_a, g.matches
            ));
            out.check(g.matches, "growth law holds", || "occ(C5) differs from a(n+1)".into())
        }
        Command::Ordering { n } => {
            report.parameter = Some(n);
            let r = check_ordering_properties(n);
            report.ordering = serde_json::to_value(&r).ok();
            let mut out = Outcome::new(report);
            out.lines.extend(r.to_string().lines().map(str::to_string));
            out.check(r.anti_reflexivity.holds && r.anti_symmetry.holds, "strict-order axioms hold", || {
                "anti-reflexivity or anti-symmetry fails".into()
            })
        }
    }
}

fn verify_file(path: &Path, n: u64, relaxed: bool, report: RunReport) -> Outcome {
    let mut p = match read_proof(path) {
        Ok(p) => p,
        Err(ProofFormatError::Io(e)) => {
            return Outcome::usage(report, format!("cannot read {}: {e}", path.display()))
        }
        Err(e) => return Outcome::new(report).check(false, "malformed proof", || e.to_string()),
    };
    // the file's own copy of the inputs is only compared, never trusted
    let expected = generate_c(Numeral(n));
    let inputs_match = p.inputs.same_clauses(&expected);
    p.inputs = expected;
    let mut out = Outcome::new(report.with_proof(&p));
    out.line(format!("{}: {} nodes", path.display(), p.len()));
    if !inputs_match {
        return out.check(false, "rejected", || format!("inputs differ from C({n})"));
    }
    let checked = if relaxed { verify_trace(&p) } else { verify_proof(&p) };
    match checked {
        Ok(()) => out.check(p.is_refutation(), "verified", || "root is not the empty clause".into()),
        Err(e) => out.check(false, "rejected", || e.to_string()),
    }
}

fn difference(a: &ClauseSet, b: &ClauseSet) -> String {
    let (a, b) = (a.canonical_set(), b.canonical_set());
    let only = |x: &std::collections::BTreeSet<_>, y: &std::collections::BTreeSet<_>| {
        x.difference(y).map(ToString::to_string).collect::<Vec<String>>().join("; ")
    };
    format!("only extracted: [{}]; only generated: [{}]", only(&a, &b), only(&b, &a))
}
