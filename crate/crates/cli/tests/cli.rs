use std::path::Path;
use std::process::{Command, Output};

use boundrank::space::format;

fn boundrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boundrank")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn build(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["models", "build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    let o = boundrank(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    path_str
}

#[test]
fn models_list_shows_constraints() {
    let o = boundrank(&["models", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("WS\tr\tsymmetric"));
    assert!(text.contains("U\t-\talternating\tn = 4, q = 2"));
}

#[test]
fn build_writes_a_reparseable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "ws.space", &["WS", "--n", "5", "--r", "4", "--q", "3"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let space = format::parse(&text).unwrap();
    assert_eq!(space.dim(), 9);
    assert_eq!(format::to_text(&space), text);

    let o = boundrank(&["urk", &path]);
    assert_eq!(stdout(&o), "4\n");
    let o = boundrank(&["invariants", &path]);
    assert!(stdout(&o).starts_with("dim 9\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("common_kernel_dim 0\n"));
}

#[test]
fn model_constraint_violation_is_a_usage_error() {
    let o = boundrank(&["models", "build", "Y1", "--n", "4", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("requires"));
}

#[test]
fn rank_command() {
    let o = boundrank(&["rank", "[[1,1],[1,1]]", "--q", "2"]);
    assert_eq!(stdout(&o), "1\n");
    let o = boundrank(&["rank", "[[1,2],[3,4]]", "--q", "5"]);
    assert_eq!(stdout(&o), "2\n");
    let o = boundrank(&["rank", "[[1,2]]", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn congruent_reports_witness_or_first_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = build(dir.path(), "z2.space", &["Z", "--n", "2", "--r", "2", "--q", "2"]);
    let line = dir.path().join("line.space");
    std::fs::write(
        &line,
        "{\"q\": 2, \"n\": 2, \"ambient\": \"symmetric\", \"base\": [[1,0],[0,0]], \"basis\": [[[1,0],[0,1]]]}",
    )
    .unwrap();
    let o = boundrank(&["congruent", line.to_str().unwrap(), &z2]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("congruent\nwitness [["));

    let y2 = build(dir.path(), "y2.space", &["Y2", "--n", "3", "--q", "2"]);
    let y3 = build(dir.path(), "y3.space", &["Y3", "--n", "3", "--q", "2"]);
    let o = boundrank(&["congruent", &y2, &y3]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not congruent\ninvariant alternating_count\nleft 2\nright 4\n");
}

#[test]
fn search_reports_and_classifies() {
    let o = boundrank(&["search", "--ambient", "sym", "--n", "3", "--r", "2", "--q", "2", "--dim", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("spaces_satisfying 0\n"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = boundrank(&[
        "search", "--ambient", "alt", "--n", "4", "--r", "2", "--q", "2", "--dim", "3", "--classify", "--out",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("classes 3\n"), "{text}");
    assert!(text.contains("model U"), "{text}");

    let o = boundrank(&["search", "--ambient", "full", "--n", "2", "--r", "1", "--q", "2", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2), "--p is required for full");
}

#[test]
fn search_beyond_budget_is_a_capacity_error() {
    let o = boundrank(&[
        "--space-budget", "100", "search", "--ambient", "sym", "--n", "3", "--r", "2", "--q", "2", "--dim", "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("capacity"));
}

#[test]
fn flanders_and_rc_maps() {
    let o = boundrank(&["flanders", "--n", "2", "--p", "2", "--r", "1", "--q", "2", "--dim", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("all_satisfy_a_bullet true"), "{text}");

    let o = boundrank(&["rc-maps", "--ambient", "sym", "--p", "2", "--q", "2"]);
    let text = stdout(&o);
    assert!(text.contains("local 4\nlocal_plus_delta 4\nother 0\n"), "{text}");
    assert_eq!(text.matches("map local").count(), 8);
}

#[test]
fn generation_and_hyperplane_scan() {
    let dir = tempfile::tempdir().unwrap();
    let sym1 = build(dir.path(), "sym1.space", &["sym-pad", "--n", "1", "--r", "1", "--q", "2"]);
    assert_eq!(stdout(&boundrank(&["generation", &sym1, "--r", "0"])), "generated false\n");
    let sym2 = build(dir.path(), "sym2.space", &["sym-pad", "--n", "2", "--r", "2", "--q", "3"]);
    assert_eq!(stdout(&boundrank(&["generation", &sym2, "--r", "1"])), "generated true\n");

    let y3 = build(dir.path(), "y3.space", &["Y3", "--n", "3", "--q", "2"]);
    let o = boundrank(&["hyperplane-scan", &y3]);
    assert_eq!(stdout(&o), "min_dim 1\nhyperplane [0,0,1]\nadapted [0,0,1]\n");
}

#[test]
fn malformed_space_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.space");
    std::fs::write(&bad, "{\"q\": 2, \"n\": 1, \"ambient\": \"symmetric\", \"base\": [[2]], \"basis\": []}").unwrap();
    let o = boundrank(&["urk", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_models_passes() {
    let o = boundrank(&["verify", "models"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_is_stable_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_boundrank"))
            .args(["verify", "lemmas", "--cases", "500", "--spaces", "50"])
            .env("BOUNDRANK_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_changes_random_counts_only() {
    let run = |seed: &str| {
        stdout(&boundrank(&["--seed", seed, "verify", "lemmas", "--cases", "200", "--spaces", "20"]))
    };
    let (a, b) = (run("1"), run("2"));
    assert_ne!(a, b);
    assert_eq!(a.lines().count(), b.lines().count());
}

#[test]
fn bad_thread_setting_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_boundrank"))
        .args(["models", "list"])
        .env("BOUNDRANK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
