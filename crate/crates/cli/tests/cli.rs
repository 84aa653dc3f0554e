use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EX1: &str = "multicolor r=3\n# triangles 1,1,2 and 2,2,3\ngraph n=3\n1 1\n2\n\ngraph n=3\n2 2\n3\n";
const RAINBOW: &str = "multicolor r=3\ngraph n=3\n1 2\n3\n";
const CYCLIC: &str = "directed palette=tourn\ngraph n=3\n> <\n>\n";
const TRANSITIVE: &str = "directed palette=tourn\ngraph n=3\n> >\n>\n";

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn edk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edk")).args(args).env_remove("EDK_GUARD_N").output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn chi_of_first_example() {
    let d = Dir::new();
    let p = d.file("ex1.prop", EX1);
    let v = json(&edk(&["chi", "--property", path(&p), "--mode", "weak"]));
    assert_eq!(v["chi"], 2);
    let v = json(&edk(&["spectrum", "--property", path(&p)]));
    assert_eq!(v["tuples"], serde_json::json!([[0, 1, 0], [0, 0, 0]]));
}

#[test]
fn distfn_point_grid_and_max() {
    let d = Dir::new();
    let p = d.file("rainbow.prop", RAINBOW);
    let v = json(&edk(&["distfn", "--property", path(&p), "--p", "1/2,1/4,1/4", "--kmax", "2"]));
    assert_eq!(v["value"], "1/4");
    let out = edk(&["distfn", "--property", path(&p), "--grid", "1/4", "--kmax", "1", "--format", "csv"]);
    assert!(out.status.success());
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rd.headers().unwrap(), vec!["p1", "p2", "p3", "value"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 15);
    let v = json(&edk(&["distfn", "--property", path(&p), "--max", "--kmax", "1"]));
    assert_eq!(v["value"], "1/3");
    let c = d.file("cyc.prop", CYCLIC);
    let v = json(&edk(&["distfn", "--property", path(&c), "--p", "0,1/2", "--kmax", "1"]));
    assert_eq!(v["value"], "1/2");
}

#[test]
fn types_in_text_and_json() {
    let d = Dir::new();
    let c = d.file("cyc.prop", CYCLIC);
    let v = json(&edk(&["types", "--property", path(&c), "--kmax", "2"]));
    let count = v["count"].as_u64().unwrap();
    assert!(count >= 1);
    let out = edk(&["types", "--property", path(&c), "--kmax", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("directed palette=tourn\n"));
    assert_eq!(text.matches("type k=").count() as u64, count);
    let t = d.file("tt.prop", TRANSITIVE);
    let v = json(&edk(&["types", "--property", path(&t), "--kmax", "2"]));
    assert_eq!(v["count"], 0);
    let v = json(&edk(&["chi", "--property", path(&t)]));
    assert_eq!(v["trivial"], true);
}

#[test]
fn sample_oracle_edit_round_trip() {
    let d = Dir::new();
    let p = d.file("rainbow.prop", RAINBOW);
    let out = edk(&["sample", "--n", "6", "--p", "1/3,1/3,1/3", "--seed", "4", "--format", "text"]);
    assert!(out.status.success());
    let g = d.file("g.txt", std::str::from_utf8(&out.stdout).unwrap());
    let exact = json(&edk(&["oracle", "--property", path(&p), "--graph", path(&g)]));
    assert_eq!(exact["member"], true);
    let edits = exact["edits"].as_u64().unwrap();
    for i in ["0", "1", "2"] {
        let v = json(&edk(&["edit", "--property", path(&p), "--graph", path(&g), "--type-index", i, "--seed", "9"]));
        assert_eq!(v["member"], true);
        assert!(v["changes"].as_u64().unwrap() >= edits);
    }
    let v = json(&edk(&[
        "edit",
        "--property",
        path(&p),
        "--graph",
        path(&g),
        "--type-index",
        "0",
        "--seed",
        "9",
        "--trials",
        "5",
    ]));
    assert_eq!(v["changes"].as_array().unwrap().len(), 5);
}

#[test]
fn directed_sample_needs_palette_density() {
    let v = json(&edk(&["sample", "--n", "5", "--p", "0,1/2", "--palette", "tourn", "--seed", "1"]));
    assert!(v["graph"].as_str().unwrap().starts_with("directed palette=tourn\ngraph n=5\n"));
    assert_eq!(
        edk(&["sample", "--n", "5", "--p", "1/2,1/2", "--palette", "tourn", "--seed", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn outputs_do_not_depend_on_workers_or_runs() {
    let d = Dir::new();
    let p = d.file("rainbow.prop", RAINBOW);
    let args = |jobs: &'static str| {
        vec![
            "estimate",
            "--property",
            path(&p),
            "--n",
            "6",
            "--p",
            "1/3,1/3,1/3",
            "--trials",
            "12",
            "--seed",
            "3",
            "--jobs",
            jobs,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let run = |jobs| {
        let a = args(jobs);
        edk(&a.iter().map(String::as_str).collect::<Vec<_>>()).stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
    let v: Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(v["trials"], 12);
    let alg = [
        "estimate",
        "--property",
        path(&p),
        "--n",
        "10",
        "--p",
        "1/3,1/3,1/3",
        "--trials",
        "8",
        "--seed",
        "3",
        "--mode",
        "algorithmic",
    ];
    assert_eq!(edk(&alg).stdout, edk(&alg).stdout);
}

#[test]
fn verify_paper_cases() {
    let out = edk(&["verify-paper", "--case", "example-spectra"]);
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() >= 8);
    let out = edk(&["verify-paper", "--case", "transitive-tourn-trivial", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("case,name,expected,computed,pass\n"));
    assert!(!text.contains(",false\n"));
    assert_eq!(edk(&["verify-paper", "--case", "nope"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let d = Dir::new();
    let missing = d.0.path().join("missing.prop");
    assert_eq!(edk(&["chi", "--property", path(&missing)]).status.code(), Some(2));
    assert_eq!(edk(&["chi", "--bogus"]).status.code(), Some(2));
    assert_eq!(edk(&["frobnicate"]).status.code(), Some(2));
    let bad = d.file("bad.prop", "multicolor r=2\ngraph n=3\n1 3\n1\n");
    let out = edk(&["chi", "--property", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let p = d.file("rainbow.prop", RAINBOW);
    assert_eq!(edk(&["distfn", "--property", path(&p), "--p", "1/2,1/4"]).status.code(), Some(2));
    // well-formed requests the domain refuses
    let out = edk(&["sample", "--n", "12", "--p", "1/3,1/3,1/3", "--seed", "1", "--format", "text"]);
    let g = d.file("g12.txt", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(edk(&["oracle", "--property", path(&p), "--graph", path(&g)]).status.code(), Some(1));
    let t = d.file("tt.prop", TRANSITIVE);
    assert_eq!(edk(&["distfn", "--property", path(&t), "--p", "0,1/2"]).status.code(), Some(1));
}

#[test]
fn guard_override_warns() {
    let d = Dir::new();
    let p = d.file("rainbow.prop", RAINBOW);
    let out = edk(&["sample", "--n", "4", "--p", "1/3,1/3,1/3", "--seed", "1", "--format", "text"]);
    let g = d.file("g.txt", std::str::from_utf8(&out.stdout).unwrap());
    let out = Command::new(env!("CARGO_BIN_EXE_edk"))
        .args(["oracle", "--property", path(&p), "--graph", path(&g)])
        .env("EDK_GUARD_N", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("EDK_GUARD_N"));
}
