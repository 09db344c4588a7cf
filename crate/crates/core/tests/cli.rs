use std::path::Path;
use std::process::Command;

use lcl_core::{Formula, HilbertProof, SimpleType, Term};

fn lcl(args: &[&str], envs: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lcl"));
    cmd.args(args);
    for k in ["LCL_FUEL", "LCL_ARITY", "LCL_DEPTH", "LCL_FORMAT"] {
        cmd.env_remove(k);
    }
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const EXAMPLE: &str = "\
theory 1. m : s -> t
theory 2. n : s
1. m : s -> t ; hyp 1
2. n : s ; hyp 2
3. (m : s -> t) => ((n : s) => (m n : t)) ; Ax4
4. (n : s) => (m n : t) ; MP 3 1
5. m n : t ; MP 4 2
";

#[test]
fn normalize_and_infer() {
    assert_eq!(
        lcl(&["normalize", "S K K x"], &[]),
        (0, "x (2 steps)\n".into())
    );
    assert_eq!(lcl(&["normalize", "x"], &[]), (0, "x (0 steps)\n".into()));
    assert_eq!(lcl(&["normalize", "S I I (S I I)"], &[]).0, 2);
    assert_eq!(lcl(&["normalize", ")"], &[]).0, 3);
    assert_eq!(lcl(&["infer", "", "K"], &[]), (0, "a -> (b -> a)\n".into()));
    assert_eq!(lcl(&["infer", "", "S K K"], &[]), (0, "a -> a\n".into()));
    assert_eq!(lcl(&["infer", "", "x"], &[]).0, 1);
    assert_eq!(lcl(&["infer", "x : ->", "x"], &[]).0, 3);
}

#[test]
fn printed_results_reparse() {
    let (_, out) = lcl(&["normalize", "S (K (S I)) K x y"], &[]);
    let term = out.rsplit_once(" (").unwrap().0;
    assert_eq!(Term::parse(term).unwrap().to_string(), term);
    let (_, out) = lcl(&["infer", "", "S"], &[]);
    let ty = out.trim();
    assert_eq!(SimpleType::parse(ty).unwrap().to_string(), ty);
}

#[test]
fn check_proof_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.proof", EXAMPLE);
    let (code, out) = lcl(&["check-proof", &good], &[]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Accepted"));
    let bad = write(
        dir.path(),
        "bad.proof",
        &EXAMPLE.replace("MP 4 2", "MP 2 4"),
    );
    let (code, out) = lcl(&["check-proof", &bad], &[]);
    assert_eq!(code, 1);
    assert!(out.starts_with("Rejected at line 5"), "{out}");
    let looping = write(
        dir.path(),
        "loop.proof",
        "1. (K (K (K (S K K))) : b -> c -> d -> a -> a) => (K (K (K I)) : b -> c -> d -> a -> a) ; Ax5\n",
    );
    assert_eq!(lcl(&["check-proof", &looping], &[]).0, 2);
    assert_eq!(lcl(&["--arity", "4", "check-proof", &looping], &[]).0, 0);
    let malformed = write(dir.path(), "junk.proof", "1. m : s ; because\n");
    assert_eq!(lcl(&["check-proof", &malformed], &[]).0, 3);
    assert_eq!(lcl(&["check-proof", "/no/such/file"], &[]).0, 3);
}

#[test]
fn flags_win_over_environment() {
    let dir = tempfile::tempdir().unwrap();
    let looping = write(
        dir.path(),
        "loop.proof",
        "1. (K (K (K (S K K))) : b -> c -> d -> a -> a) => (K (K (K I)) : b -> c -> d -> a -> a) ; Ax5\n",
    );
    assert_eq!(lcl(&["check-proof", &looping], &[("LCL_ARITY", "4")]).0, 0);
    assert_eq!(
        lcl(
            &["--arity", "3", "check-proof", &looping],
            &[("LCL_ARITY", "4")]
        )
        .0,
        2
    );
    let (_, out) = lcl(&["infer", "", "I"], &[("LCL_FORMAT", "json")]);
    assert!(out.trim_start().starts_with('{'));
}

#[test]
fn entail_writes_checkable_proofs() {
    let dir = tempfile::tempdir().unwrap();
    let theory = write(dir.path(), "t.txt", "# declarations\nx : s\n");
    let (code, out) = lcl(&["entail", &theory, "K x y : s"], &[]);
    assert_eq!(code, 0);
    let body = out.strip_prefix("# proved\n").unwrap();
    let proof: HilbertProof = body.parse().unwrap();
    assert_eq!(
        proof.conclusion(),
        Some(&Formula::parse("K x y : s").unwrap())
    );
    let path = write(dir.path(), "out.proof", body);
    assert_eq!(lcl(&["check-proof", &path], &[]).0, 0);

    let target = dir.path().join("written.proof");
    let target = target.to_str().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert_eq!(
        lcl(&["entail", &empty, "I : a -> a", "--output", target], &[]).0,
        0
    );
    assert_eq!(lcl(&["check-proof", target], &[]).0, 0);
    assert_eq!(lcl(&["entail", &empty, "x : a"], &[]).0, 1);
    assert_eq!(lcl(&["entail", &empty, "x : "], &[]).0, 3);
}

#[test]
fn model_sat_examples() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "bounds: fuel=10000, arity=3\nx : s\n");
    let empty = write(dir.path(), "e.txt", "");
    let (code, out) = lcl(&["model-sat", &m, "(x : s) => (K x y : s)"], &[]);
    assert_eq!(code, 0);
    assert!(out.starts_with("True"));
    assert_eq!(lcl(&["model-sat", &empty, "x : a"], &[]).0, 1);
    assert_eq!(lcl(&["model-sat", &empty, "I : a -> a"], &[]).0, 0);
    assert_eq!(lcl(&["model-sat", &m, "I : a -> a"], &[]).0, 0);
    assert_eq!(lcl(&["model-sat", &m, "x x : a"], &[]).0, 1);
}

#[test]
fn json_and_text_agree() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.proof", EXAMPLE);
    let theory = write(dir.path(), "t.txt", "x : s\n");
    let model = write(dir.path(), "m.txt", "x : s\n");
    for args in [
        vec!["normalize", "S K K x"],
        vec!["normalize", "S I I (S I I)"],
        vec!["infer", "", "S"],
        vec!["infer", "", "S I I"],
        vec!["check-proof", good.as_str()],
        vec!["entail", theory.as_str(), "K x y : s"],
        vec!["entail", theory.as_str(), "y : s"],
        vec!["model-sat", model.as_str(), "~(x : s)"],
    ] {
        let (text_code, _) = lcl(&args, &[]);
        let mut json_args = vec!["--format", "json"];
        json_args.extend(&args);
        let (json_code, out) = lcl(&json_args, &[]);
        assert_eq!(text_code, json_code, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["verdict"].is_string(), "{out}");
    }
}
