//! One PASS/FAIL line per acceptance criterion; exits non-zero on failure.

use std::time::Instant;

use mimalloc::MiMalloc;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nia_core::clause::{Atom, Clause, ClauseSet};
use nia_core::io::{export_tptp, import_tptp, parse_clause};
use nia_core::prover::{saturate, ProverLimits, ProverStatus};
use nia_core::refutation::mutate::{corrupt, Corruption};
use nia_core::refutation::{
    check_ordering_properties, closed_form_a, occ, recurrence_a, refute, verify_proof, verify_trace,
};
use nia_core::schema::{extract_clause_set, generate_c};
use nia_core::term::{Numeral, Term};

#[global_allocator]
static GLOBAL: MiMalloc = MiMalloc;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn read_golden(name: &str) -> Result<Vec<Clause>, String> {
    let text = std::fs::read_to_string(format!("{GOLDEN}/{name}")).map_err(|e| e.to_string())?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (id, clause) = l.split_once(':').ok_or("golden line without id")?;
            let c = parse_clause(clause).map_err(|e| format!("{name}: {e}"))?;
            Ok(c.canonicalize().with_id(id.trim()))
        })
        .collect()
}

fn family() -> Outcome {
    let start = Instant::now();
    ensure(generate_c(Numeral(0)).len() == 3, || "C(0) does not have 3 clauses".into())?;
    for n in 1..=50 {
        let len = generate_c(Numeral(n)).len();
        ensure(len == n as usize + 5, || format!("C({n}) has {len} clauses"))?;
    }
    let elapsed = start.elapsed();
    for n in 0..=2u64 {
        let golden = read_golden(&format!("c{n}.txt"))?;
        let got = generate_c(Numeral(n));
        let same = got.clauses == golden && got.iter().zip(&golden).all(|(g, e)| g.id == e.id);
        ensure(same, || format!("C({n}) differs from its golden file"))?;
    }
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!("counts to n=50 in {elapsed:.2?}; C(0..2) match golden files"))
}

fn extraction() -> Outcome {
    for n in 0..=5 {
        let extracted = extract_clause_set(Numeral(n)).map_err(|e| format!("n={n}: {e}"))?;
        ensure(extracted.same_clauses(&generate_c(Numeral(n))), || format!("n={n}: sets differ"))?;
    }
    Ok("extracted sets equal C(n) for n ≤ 5".into())
}

/// Builds and checks refute(n) for n ≤ 7; returns the C5 uses per n.
fn refutation(uses: &mut Vec<num_bigint::BigUint>) -> Outcome {
    let mut last = None;
    for n in 0..=7u64 {
        let start = Instant::now();
        let p = refute(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(p.is_refutation(), || format!("n={n}: root is not empty"))?;
        verify_proof(&p).map_err(|e| format!("n={n}: {e}"))?;
        let elapsed = start.elapsed();
        uses.push(occ("C5", &p).map_err(|e| e.to_string())?);
        last = Some((p.len(), elapsed));
    }
    let (nodes, elapsed) = last.expect("n=7 ran");
    ensure(elapsed.as_secs_f64() < 60.0, || format!("n=7 took {elapsed:?}"))?;
    Ok(format!("n ≤ 7 verified; n=7: {nodes} nodes in {elapsed:.1?}"))
}

fn growth(uses: &[num_bigint::BigUint]) -> Outcome {
    ensure(uses.len() == 8, || "refutations missing".into())?;
    for (n, u) in uses.iter().enumerate() {
        let a = recurrence_a(n as u64 + 1);
        ensure(*u == a, || format!("n={n}: occ(C5)={u}, a({})={a}", n + 1))?;
    }
    for m in 0..=20 {
        ensure(recurrence_a(m) == closed_form_a(m), || format!("a({m}) differs from closed form"))?;
    }
    ensure(uses[0] == 2u32.into() && uses[3] == 65u32.into(), || "a(1) or a(4) wrong".into())?;
    let list: Vec<String> = uses.iter().map(ToString::to_string).collect();
    Ok(format!("occ(C5) = {}", list.join(", ")))
}

fn oracle() -> Outcome {
    let mut times = Vec::new();
    for n in 0..=3 {
        let start = Instant::now();
        let result = saturate(&generate_c(Numeral(n)), &ProverLimits::default());
        let elapsed = start.elapsed();
        match result.status {
            ProverStatus::Refuted(trace) => verify_trace(&trace).map_err(|e| format!("n={n}: {e}"))?,
            other => return Err(format!("n={n}: {other:?}")),
        }
        ensure(elapsed.as_secs_f64() < 30.0, || format!("n={n} took {elapsed:?}"))?;
        times.push(format!("{elapsed:.1?}"));
    }
    let pred = |name: &str| Atom::new(name, vec![Term::var("x")]).expect("unary atom");
    let without = |id: &str| {
        ClauseSet::from_clauses(
            generate_c(Numeral(3)).iter().filter(|c| c.id.as_deref() != Some(id)).cloned(),
            None,
        )
    };
    let controls = [
        ("{⊢ A(x)}", ClauseSet::from_clauses([Clause::new(vec![], vec![pred("A")])], None)),
        (
            "{⊢ A(x); A(x) ⊢ B(x)}",
            ClauseSet::from_clauses(
                [Clause::new(vec![], vec![pred("A")]), Clause::new(vec![pred("A")], vec![pred("B")])],
                None,
            ),
        ),
        ("C(3) without C1", without("C1")),
        ("C(3) without C5", without("C5")),
    ];
    let limits = ProverLimits::new(200_000, 2.0, None).map_err(|e| e.to_string())?;
    for (name, cs) in &controls {
        let status = saturate(cs, &limits).status;
        ensure(!matches!(status, ProverStatus::Refuted(_)), || format!("refuted satisfiable {name}"))?;
    }
    Ok(format!("C(0..3) refuted in {}; {} controls not refuted", times.join(", "), controls.len()))
}

fn mutations() -> Outcome {
    let p = refute(3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut caught = 0;
    let mut attempts = 0;
    while caught < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || "too few applicable corruptions".into())?;
        let node = rng.gen_range(0..p.len());
        let what = Corruption::ALL[rng.gen_range(0..Corruption::ALL.len())];
        let Some(bad) = corrupt(&p, node, what, rng.gen()) else { continue };
        match verify_proof(&bad) {
            Ok(()) => return Err(format!("{what:?} at node {node} accepted")),
            Err(e) if e.node != node => {
                return Err(format!("{what:?} at node {node} reported at {}", e.node))
            }
            Err(_) => caught += 1,
        }
    }
    Ok(format!("100/100 corruptions of a {}-node proof located", p.len()))
}

fn ordering() -> Outcome {
    let mut notes = Vec::new();
    for n in 0..=6 {
        let r = check_ordering_properties(n);
        ensure(r.anti_reflexivity.holds, || format!("n={n}: anti-reflexivity {}", r.anti_reflexivity))?;
        ensure(r.anti_symmetry.holds, || format!("n={n}: anti-symmetry {}", r.anti_symmetry))?;
        notes.push(format!(
            "n={n} transitivity {} glb {}",
            if r.transitivity.holds { "holds" } else { "fails" },
            if r.glb.holds { "holds" } else { "fails" }
        ));
    }
    Ok(format!("strict-order axioms hold for n ≤ 6; recorded: {}", notes.join("; ")))
}

fn tptp() -> Outcome {
    let golden = std::fs::read_to_string(format!("{GOLDEN}/c3.p")).map_err(|e| e.to_string())?;
    ensure(export_tptp(&generate_c(Numeral(3))) == golden, || "C(3) export differs from golden file".into())?;
    for n in 0..=10 {
        let cs = generate_c(Numeral(n));
        let text = export_tptp(&cs);
        let back = import_tptp(&text).map_err(|e| format!("n={n}: {e}"))?;
        ensure(back.clauses == cs.clauses && export_tptp(&back) == text, || {
            format!("n={n}: round trip differs")
        })?;
    }
    Ok("C(3) export byte-matches golden; round trip exact for n ≤ 10".into())
}

fn main() {
    let mut uses = Vec::new();
    let report = |number: usize, title: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.unwrap_or_else(|e| e);
        println!("criterion {number} [{verdict}] {title}: {detail} ({:.1?})", start.elapsed());
        verdict == "PASS"
    };
    let results = [
        report(1, "clause-set family", &mut family),
        report(2, "extraction agrees with C(n)", &mut extraction),
        report(3, "constructive refutation verifies", &mut || refutation(&mut uses)),
        report(4, "growth law", &mut || growth(&uses)),
        report(5, "oracle agreement", &mut oracle),
        report(6, "mutation suite", &mut mutations),
        report(7, "ordering report", &mut ordering),
        report(8, "TPTP export and import", &mut tptp),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
