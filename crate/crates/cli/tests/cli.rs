use std::path::PathBuf;
use std::process::{Command, Output};

fn nia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nia")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn count_reports_the_growth_law_at_four_codomain_values() {
    let o = nia(&["count", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("occ(C5)=65 recurrenceA(4)=65"), "{text}");
    assert!(text.contains("match=true"), "{text}");
}

#[test]
fn refute_with_verification_succeeds() {
    let o = nia(&["refute", "--n", "0", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn negative_parameter_is_a_usage_error() {
    assert_eq!(nia(&["generate", "--n", "-1"]).status.code(), Some(2));
    assert_eq!(nia(&["refute"]).status.code(), Some(2));
    assert_eq!(nia(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn proofs_written_by_refute_verify_only_against_their_own_instance() {
    let path = scratch("refute-2.json");
    let path_arg = path.to_str().unwrap();
    assert_eq!(nia(&["refute", "--n", "2", "--proof", path_arg]).status.code(), Some(0));
    assert_eq!(nia(&["verify", "--proof", path_arg, "--n", "2"]).status.code(), Some(0));
    assert_eq!(nia(&["verify", "--proof", path_arg, "--n", "1"]).status.code(), Some(1));

    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = scratch("refute-2-tampered.json");
    std::fs::write(&tampered, text.replacen("v0 ≤ v0", "v0 ≤ v1", 1)).unwrap();
    let o = nia(&["verify", "--proof", tampered.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    assert_eq!(nia(&["verify", "--proof", "/no/such/proof.json", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn oracle_traces_need_the_relaxed_checker() {
    let path = scratch("oracle-1.json");
    let path_arg = path.to_str().unwrap();
    let o = nia(&["oracle", "--n", "1", "--proof", path_arg]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("refuted"));
    assert_eq!(nia(&["verify", "--proof", path_arg, "--n", "1", "--relaxed"]).status.code(), Some(0));
}

#[test]
fn oracle_out_of_time_exits_with_resource_code() {
    let o = nia(&["oracle", "--n", "3", "--max-seconds", "0.05"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(nia(&["oracle", "--n", "1", "--max-seconds", "0"]).status.code(), Some(2));
}

#[test]
fn generate_writes_tptp() {
    let path = scratch("c1.p");
    let o = nia(&["generate", "--n", "1", "--tptp", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("cnf(c1, axiom, ( le(X,X) ))."), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("cnf(")).count(), 6);
}

#[test]
fn extract_and_ordering_report_success() {
    let o = nia(&["extract", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match=true"));
    let o = nia(&["ordering", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("anti-symmetry: holds"));
}

#[test]
fn json_reports_are_stable_apart_from_wall_time() {
    let run = || {
        let o = nia(&["--json", "count", "--n", "2"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v["wall_time_ms"].is_u64());
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["growth"]["occ"], "16");
    assert_eq!(a["verdict"]["ok"], true);
}
