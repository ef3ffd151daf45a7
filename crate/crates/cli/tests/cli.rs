use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn g1_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/g1.aut")
}

fn opacity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opacity")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_ei_on_g1() {
    let g1 = g1_path();
    let o = opacity(&["verify-ei", g1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("is enforceable"), "{text}");
    assert!(text.contains("admissible (8): (0,0) (1,1) (4,1) (4,2) (4,4) (5,1) (5,3) (5,5)"), "{text}");
    assert!(o.stderr.is_empty());
}

#[test]
fn verify_eic_on_g1() {
    let g1 = g1_path();
    let g1 = g1.to_str().unwrap();
    let o = opacity(&["verify-eic", g1, "--insert-before", "b,c", "--insert-after", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("admissible (9):"));
    let o = opacity(&["verify-eic", g1, "--insert-before", "a,b,c", "--insert-after", ""]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("uncovered (2): 2 3"), "{}", stdout(&o));
    assert!(o.stderr.is_empty());
}

#[test]
fn check_opacity_on_g1() {
    let o = opacity(&["check-opacity", g1_path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("witness secret: {3} after b"), "{}", stdout(&o));
    assert!(o.stderr.is_empty());
}

#[test]
fn opaque_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "o.aut", "automaton o\nevents a\nstates 0 1\ninitial 0\nsecret 1\ntrans 0 a 1\ntrans 0 a 0\nend\n");
    assert_eq!(opacity(&["check-opacity", &f]).status.code(), Some(0));
    let f = write(
        dir.path(),
        "u.aut",
        "automaton u\nevents a u\nunobservable u\nstates 0 1\ninitial 0\nsecret 1\ntrans 0 u 1\ntrans 1 a 1\ntrans 0 a 0\nend\n",
    );
    let o = opacity(&["check-opacity", &f, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(opacity(&["verify-ei", &f]).status.code(), Some(1));
}

#[test]
fn oracle_check_agrees() {
    let g1 = g1_path();
    let g1 = g1.to_str().unwrap();
    assert_eq!(opacity(&["oracle-check", g1]).status.code(), Some(0));
    assert_eq!(opacity(&["oracle-check", g1, "--eic", "b,c", "a"]).status.code(), Some(0));
    assert_eq!(opacity(&["oracle-check", g1, "--eic", "a,b,c", ""]).status.code(), Some(0));
    let o = opacity(&["oracle-check", g1, "--seed", "11", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["differential"]["random_instances"], 100);
    assert_eq!(v["verdict"], "agree");
}

#[test]
fn errors_exit_one_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["verify-ei".into(), dir.path().join("missing.aut").to_str().unwrap().into()],
        vec!["verify-ei".into()],
        vec!["frobnicate".into()],
        vec![
            "verify-eic".into(),
            g1_path().to_str().unwrap().into(),
            "--insert-before".into(),
            "z".into(),
            "--insert-after".into(),
            "".into(),
        ],
        vec!["verify-ei".into(), write(dir.path(), "bad.aut", "automaton b\nevents a\nstates 0\ninitial 0\ntrans 0 a 7\nend\n")],
        vec![
            "verify-ei".into(),
            write(dir.path(), "nfa.aut", "automaton n\nevents a\nstates 0 1\ninitial 0\ntrans 0 a 0\ntrans 0 a 1\nend\n"),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = opacity(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = opacity(&["verify-ei", &write(dir.path(), "bad2.aut", "automaton b\nevents a\nstates 0\ninitial 0\ntrans 0 a 7\nend\n")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(opacity(&["--help"]).status.code(), Some(0));
    assert_eq!(opacity(&["--version"]).status.code(), Some(0));
}

#[test]
fn dot_output_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ia.dot");
    let o = opacity(&["verify-ei", g1_path().to_str().unwrap(), "--dot", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph \"g1\" {"));
    assert!(dot.contains("style=dashed") && dot.contains("fillcolor=palegreen"));

    let out = dir.path().join("eia.dot");
    let o = opacity(&[
        "verify-eic",
        g1_path().to_str().unwrap(),
        "--insert-before",
        "b,c",
        "--insert-after",
        "a",
        "--dot",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"(4,2_a)\""));
}

#[test]
fn json_reports_are_byte_identical() {
    let g1 = g1_path();
    let g1 = g1.to_str().unwrap();
    for args in [
        vec!["verify-ei", g1, "--json"],
        vec!["verify-eic", g1, "--insert-before", "b,c", "--insert-after", "a", "--json"],
        vec!["check-opacity", g1, "--json"],
    ] {
        let a = opacity(&args);
        let b = opacity(&args);
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["automaton"], "g1");
    }
}
