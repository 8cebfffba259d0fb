use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K2: &str = "2 1\n0 1\n";
const C3: &str = "3 3\n0 1\n1 2\n0 2\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";
const C6: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const TT6: &str = "# two triangles joined by a bridge\n6 7\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n";
const STAR8: &str = "8 7\n0 1\n0 3\n1 2\n3 4\n3 5\n3 6\n3 7\n";

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn adgame(args: &[&str], graph: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adgame"))
        .args(args)
        .arg(graph)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn constructed_profiles_verify() {
    let ws = Workspace::new();
    let cases = [
        ("k2", K2, 1, 1),
        ("k2", K2, 3, 2),
        ("c3", C3, 2, 1),
        ("c3", C3, 2, 2),
        ("c4", C4, 2, 1),
        ("c4", C4, 4, 2),
        ("c6", C6, 3, 1),
        ("c6", C6, 2, 3),
        ("tt6", TT6, 2, 2),
        ("tt6", TT6, 5, 3),
        ("tt6", TT6, 1, 4),
        ("star8", STAR8, 2, 6),
        ("star8", STAR8, 3, 7),
    ];
    for (name, text, alpha, delta) in cases {
        let graph = ws.file(&format!("{name}.graph"), text);
        let (a, d) = (alpha.to_string(), delta.to_string());
        let built = adgame(&["construct-ne", "--alpha", &a, "--delta", &d], &graph);
        assert!(
            built.status.success(),
            "{name} {alpha} {delta}: {}",
            stdout(&built)
        );
        let profile = ws.file("ne.profile", &stdout(&built));
        let checked = adgame(&["verify-ne", "--profile", profile.to_str().unwrap()], &graph);
        let report = stdout(&checked);
        assert!(checked.status.success(), "{name} {alpha} {delta}:\n{report}");
        assert!(report.contains("is_ne true\n") && report.contains("defense_optimal true\n"));
        assert!(!report.contains("violation"));
    }
}

#[test]
fn pure_profiles_verify() {
    let ws = Workspace::new();
    for (name, text, alpha, delta) in [("star8", STAR8, 12, 6), ("tt6", TT6, 6, 3), ("c4", C4, 4, 2)] {
        let graph = ws.file(&format!("{name}.graph"), text);
        let (a, d) = (alpha.to_string(), delta.to_string());
        let built = adgame(&["construct-ne", "--alpha", &a, "--delta", &d, "--pure"], &graph);
        assert!(built.status.success(), "{name}: {}", stdout(&built));
        assert!(stdout(&built).lines().skip(1).all(|l| l.ends_with(" 1/1")));
        let profile = ws.file("pure.profile", &stdout(&built));
        let checked = adgame(&["verify-ne", "--profile", profile.to_str().unwrap()], &graph);
        assert!(checked.status.success(), "{name}:\n{}", stdout(&checked));
    }
}

#[test]
fn outputs_are_deterministic() {
    let ws = Workspace::new();
    let graph = ws.file("tt6.graph", TT6);
    let runs: &[&[&str]] = &[
        &["analyze"],
        &["min-edge-cover"],
        &["fpm"],
        &["reduce"],
        &["partition", "--delta", "2"],
        &["construct-ne", "--alpha", "3", "--delta", "2"],
        &["classify", "--delta", "3"],
    ];
    for args in runs {
        let first = adgame(args, &graph);
        let second = adgame(args, &graph);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn star8_bad_profile_is_rejected() {
    let ws = Workspace::new();
    let graph = ws.file("star8.graph", STAR8);
    let profile = ws.file(
        "bad.profile",
        "2 6\na 1 1/1\na 3 1/1\nd 1 2 1/1\nd 3 4 1/1\nd 3 5 1/1\nd 3 6 1/1\nd 3 7 1/1\nd 0 1 1/1\n",
    );
    let out = adgame(&["verify-ne", "--profile", profile.to_str().unwrap()], &graph);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.starts_with("is_ne false\n"));
    assert!(
        report.contains("violation defender 1 edge 1 2 gain 1/12\n"),
        "{report}"
    );
    assert!(report.contains("edge_cover true\n") && report.contains("vertex_cover true\n"));
}

#[test]
fn none_verdicts() {
    let ws = Workspace::new();
    let star8 = ws.file("star8.graph", STAR8);
    let out = adgame(&["construct-ne", "--alpha", "2", "--delta", "5"], &star8);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NONE many-defenders regime\n");

    let out = adgame(&["fpm"], &star8);
    assert_eq!(
        (out.status.code(), stdout(&out).starts_with("NONE")),
        (Some(1), true)
    );

    let c6 = ws.file("c6.graph", C6);
    let out = adgame(&["partition", "--delta", "2"], &c6);
    assert_eq!(
        (out.status.code(), stdout(&out).starts_with("NONE")),
        (Some(1), true)
    );
    let out = adgame(&["construct-ne", "--alpha", "2", "--delta", "2"], &c6);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("NONE few-defenders regime"));
}

#[test]
fn tt6_splits_into_triangles() {
    let ws = Workspace::new();
    let graph = ws.file("tt6.graph", TT6);
    let out = adgame(&["partition", "--delta", "2"], &graph);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "partite 1\n0 1 1/2\n0 2 1/2\n1 2 1/2\npartite 2\n3 4 1/2\n3 5 1/2\n4 5 1/2\n"
    );
}

#[test]
fn analysis_and_reduction() {
    let ws = Workspace::new();
    let graph = ws.file("tt6.graph", TT6);
    let out = stdout(&adgame(&["analyze"], &graph));
    assert!(out.starts_with("vertices 6\nedges 7\nbeta_prime 3\nperfect_matching true\n"));
    assert!(out.contains("\n2 few\n3 too-many boundary\n4 too-many\n"));

    let out = stdout(&adgame(&["classify", "--delta", "2"], &graph));
    assert!(out.starts_with("regime few\n"));

    // Perfect matching plus the bridge at weight zero; the even cycle-free
    // support is already canonical.
    let fpm = ws.file("m.fpm", "0 1 1/1\n2 3 1/1\n4 5 1/1\n");
    let out = adgame(&["reduce", "--fpm", fpm.to_str().unwrap()], &graph);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1 1/1\n2 3 1/1\n4 5 1/1\n");

    let c4 = ws.file("c4.graph", C4);
    let fpm = ws.file("c4.fpm", "0 1 1/2\n1 2 1/2\n2 3 1/2\n0 3 1/2\n");
    let out = adgame(&["reduce", "--fpm", fpm.to_str().unwrap()], &c4);
    assert!(out.status.success());
    let reduced = stdout(&out);
    assert_eq!(reduced.lines().count(), 2);
    assert!(reduced.lines().all(|l| l.ends_with(" 1/1")));
}

#[test]
fn input_errors_exit_two() {
    let ws = Workspace::new();
    let cases = [
        ("2 1\n0 x\n", "line 2"),
        ("3 2\n0 1\n1 0\n", "line 3"),
        ("2 1\n1 1\n", "self-loop"),
        ("3 1\n0 1\n", "isolated"),
        ("2 2\n0 1\n", "announces 2 edges"),
        ("", "missing header"),
    ];
    for (text, needle) in cases {
        let graph = ws.file("bad.graph", text);
        let out = adgame(&["analyze"], &graph);
        assert_eq!(out.status.code(), Some(2), "{text:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(needle), "{err}");
        assert!(out.stdout.is_empty());
    }

    let graph = ws.file("c3.graph", C3);
    let out = adgame(&["analyze"], &ws.dir.path().join("missing.graph"));
    assert_eq!(out.status.code(), Some(2));

    let profile = ws.file("half.profile", "1 1\na 0 1/2\nd 0 1 1/1\n");
    let out = adgame(&["verify-ne", "--profile", profile.to_str().unwrap()], &graph);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("attacker"));

    let fpm = ws.file("over.fpm", "0 1 1/1\n1 2 1/1\n");
    let out = adgame(&["reduce", "--fpm", fpm.to_str().unwrap()], &graph);
    assert_eq!(out.status.code(), Some(2));

    let big = ws.file(
        "big.graph",
        &format!(
            "18 17\n{}",
            (1..18).map(|v| format!("0 {v}\n")).collect::<String>()
        ),
    );
    let out = adgame(&["partition", "--delta", "2", "--bound", "10"], &big);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bound"));
}
