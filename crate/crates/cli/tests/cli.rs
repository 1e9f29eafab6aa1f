use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn weylcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylcheck")).args(args).output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weylcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn emitted(name: &str) -> PathBuf {
    let out = weylcheck(&["examples", "emit", name]);
    assert!(out.status.success());
    scratch(&format!("{name}.toml"), std::str::from_utf8(&out.stdout).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn emit_is_stable_and_matches_catalog() {
    let a = weylcheck(&["examples", "emit", "gibbons_hawking"]);
    let b = weylcheck(&["examples", "emit", "gibbons_hawking"]);
    assert_eq!(a.stdout, b.stdout);
    let entry = weylcheck::catalog::find("gibbons_hawking").unwrap();
    assert_eq!(a.stdout, entry.config.as_bytes());

    let path = std::env::temp_dir().join(format!("weylcheck-emit-{}.toml", std::process::id()));
    assert!(weylcheck(&["examples", "emit", "gibbons_hawking", "-o", s(&path)]).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    assert_eq!(weylcheck(&["examples", "emit", "no_such"]).status.code(), Some(2));
}

#[test]
fn list_shows_every_entry() {
    let out = String::from_utf8(weylcheck(&["examples", "list"]).stdout).unwrap();
    for e in weylcheck::catalog::catalog() {
        assert!(out.contains(e.name));
    }
}

#[test]
fn check_passes_on_gibbons_hawking() {
    let path = emitted("gibbons_hawking");
    let out = weylcheck(&["check", s(&path), "--task", "morphism", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["verdict"], "pass");
}

#[test]
fn reversed_orientation_fails_twistorial() {
    let path = emitted("gibbons_hawking");
    let out = weylcheck(&["check", s(&path), "--task", "twistorial", "--orientation", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(weylcheck(&["check", s(&path), "--orientation", "2"]).status.code(), Some(2));
}

#[test]
fn unknown_task_exits_two() {
    let path = emitted("euclidean_3");
    let out = weylcheck(&["check", s(&path), "--task", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bogus") && err.contains("twistorial"));
}

#[test]
fn bad_toml_exits_two() {
    let path = scratch("bad.toml", "[chart\ncoords = 1\n");
    assert_eq!(weylcheck(&["check", s(&path)]).status.code(), Some(2));
    let missing = std::env::temp_dir().join("weylcheck-definitely-missing.toml");
    assert_eq!(weylcheck(&["check", s(&missing)]).status.code(), Some(2));
}

#[test]
fn degenerate_metric_exits_three() {
    let text = "[chart]\ncoords = [\"x\", \"y\", \"z\"]\nbox = [[-1, 1], [-1, 1], [-1, 1]]\n\n[metric]\ncomponents = [\"0\", \"0\", \"0\", \"1\", \"0\", \"1\"]\n\n[run]\ntasks = [\"eq13\"]\n";
    let path = scratch("degenerate.toml", text);
    assert_eq!(weylcheck(&["check", s(&path)]).status.code(), Some(3));
}

#[test]
fn jobs_do_not_change_the_report() {
    let path = emitted("hopf_type");
    let one = weylcheck(&["check", s(&path), "--json", "--jobs", "1"]);
    let four = weylcheck(&["check", s(&path), "--json", "--jobs", "4"]);
    assert_eq!(one.status.code(), four.status.code());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn identity_reports_without_failing() {
    let path = emitted("killing_rotation");
    let out = weylcheck(&["identity", "eq42", s(&path), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"][0]["verdict"], "report-only");
}

#[test]
fn tasks_lists_the_registry() {
    let out = String::from_utf8(weylcheck(&["tasks"]).stdout).unwrap();
    assert_eq!(out.lines().count(), weylcheck::runner::TASKS.len());
}
