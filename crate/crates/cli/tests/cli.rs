use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_operadlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn goldens() {
    assert_eq!(stdout(&["tree", "compose", "3((12)4)", "2", "∅"]).trim(), "2(13)");
    assert_eq!(stdout(&["braid", "perm", "321", "2", "12"]).trim(), "4231");
    assert_eq!(stdout(&["braid", "perm", "3214", "2", "213"]).trim(), "532416");
    assert_eq!(stdout(&["pab", "check", "pentagon"]).trim(), "PASS");
    assert_eq!(stdout(&["tree", "decompose", "3(12)"]).trim(), "1(23) 312");
    assert_eq!(stdout(&["ode", "radius", "--radius", "1/2", "--b", "10", &geometric()]).trim(), "5/11");
    let log = stdout(&["expand", "(23)((15)4)", "--log", "3,5", "--order", "3"]);
    assert_eq!(log.trim(), "log(x) - zeta_R - (1/2)·zeta_R^2 - (1/3)·zeta_R^3 + O(deg > 3)");
}

#[test]
fn json_output() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "tree", "parse", "1(2(34))"])).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["alpha_sites"], serde_json::json!(["", "R"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "admissible", "(23)((15)4)"])).unwrap();
    assert_eq!(v["status"], "certified-admissible");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "expand", "1(23)", "(z1-z3)^-1", "--order", "2"])).unwrap();
    assert_eq!(v["order"], 2);
}

#[test]
fn exit_codes() {
    let out = run(&["tree", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--json", "tree", "compose", "(12", "1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_PARSE");
    let out = run(&["tree", "alpha", "(12)3", ""]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_NOT_ALPHA"));
    let out = run(&["admissible", "12", "--radius", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    let resonant = scratch("resonant.json", r#"{"N": 2, "f": [["0"], ["-2"]]}"#);
    let out = run(&["--json", "ode", "solve", &resonant, "--order", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_RESONANCE");
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["--json", "pab", "check", "equivariance", "--instances", "30"],
        vec!["pab", "check", "associativity", "--instances", "30"],
        vec!["--json", "transform", "sigma", "1(2((34)(56)))", "46", "(z1-z4)^-1*(z3-z5)", "--order", "4"],
    ] {
        let a = bin().args(&args).env("OPERADLAB_SEED", "17").output().unwrap();
        let b = bin().args(&args).env("OPERADLAB_SEED", "17").output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn geometric() -> String {
    scratch("geometric.json", r#"{"N": 1, "f": [["0", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "-1"]]}"#)
}

/// Leaf subcommands listed by `--help`, as space-joined paths.
fn listed(prefix: &[&str]) -> Vec<String> {
    let mut args: Vec<&str> = prefix.to_vec();
    args.push("--help");
    let help = stdout(&args);
    let names: Vec<String> = help
        .split("Commands:")
        .nth(1)
        .map(|s| s.split("Options:").next().unwrap_or(""))
        .unwrap_or("")
        .lines()
        .filter_map(|l| l.split_whitespace().next().map(str::to_string))
        .filter(|n| n != "help")
        .collect();
    if names.is_empty() {
        return vec![prefix.join(" ")];
    }
    names
        .iter()
        .flat_map(|n| {
            let mut p = prefix.to_vec();
            p.push(n);
            listed(&p)
        })
        .collect()
}

#[test]
fn every_subcommand_is_exercised() {
    let op = geometric();
    let cand = scratch("candidate.json", r#"[["0", 0, "1"], ["1", 0, "1"], ["2", 0, "1"]]"#);
    let path = scratch("path.json", r#"{"builtin": "gamma_v", "vertex": "", "turns": 1}"#);
    let series = stdout(&["--json", "expand", "(12)3", "(z1-z3)^-1", "--order", "3"]);
    let series = scratch("series.json", &series);
    let calls: Vec<Vec<&str>> = vec![
        vec!["tree", "parse", "((32)5)(41)"],
        vec!["tree", "compose", "12", "2", "12"],
        vec!["tree", "decompose", "21"],
        vec!["tree", "alpha", "1(23)", ""],
        vec!["tree", "sigma", "1(23)", "R"],
        vec!["braid", "equal", "s1 s2 s1", "s2 s1 s2"],
        vec!["braid", "cable", "s1", "1", "s1"],
        vec!["braid", "perm", "21", "1", "21"],
        vec!["pab", "compose", "12 -> 21 : s1", "1", "12 -> 12 : e"],
        vec!["pab", "check", "hexagon"],
        vec!["expand", "(12)3", "(z1-z3)^-1"],
        vec!["degree", "(12)3", "(z1-z2)^2", "L"],
        vec!["admissible", "(12)3", "--radii", "L=1/2"],
        vec!["basepoint", "1(23)"],
        vec!["transform", "sigma", "(12)3", "L", "--series", &series],
        vec!["transform", "alpha", "1(23)", "", "(z1-z3)^-1", "--order", "3"],
        vec!["transform", "twist", "(12)3", "L", "(z1-z2)^-1"],
        vec!["transform", "continue", "12", "(z1-z2)^-1", "--path", &path],
        vec!["ode", "solve", &op],
        vec!["ode", "verify", &op, &cand, "--order", "2"],
        vec!["ode", "radius", &op, "--radius", "9/10"],
    ];
    let singles = ["expand", "degree", "admissible", "basepoint"];
    let covered: BTreeSet<String> =
        calls.iter().map(|c| if singles.contains(&c[0]) { c[0].to_string() } else { format!("{} {}", c[0], c[1]) }).collect();
    for c in &calls {
        stdout(c);
    }
    let listed: BTreeSet<String> = listed(&[]).into_iter().collect();
    assert_eq!(listed, covered);
}
