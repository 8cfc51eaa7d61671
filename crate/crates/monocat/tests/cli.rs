use std::process::Command;
use std::sync::Arc;

use monocat::formats::{AlgebraSpec, ConflationSpec, ModuleSpec};
use monocat_core::algebra::nilpotent_loop;
use monocat_core::ar::{is_almost_split, ArCandidate};
use monocat_core::exact::is_conflation;
use monocat_core::module::{enumerate_indecomposables, is_indecomposable};
use monocat_core::morph::enumerate_s_indecomposables;
use monocat_core::{Budget, MorphCat, StructureKind, Subcat};
use serde_json::Value;

fn monocat(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_monocat")).args(args).env_remove("MONOCAT_BUDGET_MS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn enumerate_counts() {
    for (alg, objects, count) in
        [("nilpotent:2", "s", 5), ("nilpotent:1", "s", 2), ("nilpotent:3", "gamma", 4), ("nilpotent:3", "modules", 3)]
    {
        let (code, out) = monocat(&["enumerate", "--algebra", alg, "--subcat", "all", "--objects", objects]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["count"], count, "{alg} {objects}");
        assert_eq!(v["items"].as_array().unwrap().len(), count);
    }
}

#[test]
fn verify_examples() {
    let (code, out) = monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "counting"]);
    assert_eq!(code, 0);
    let claim = &json(&out)["claims"][0];
    assert_eq!(claim["s_objects"], 5);
    assert_eq!(claim["gamma_modules"], 1);
    assert_eq!(claim["generators"], 2);

    let (code, out) = monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "classify", "--kind", "all"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let summary = v["claims"].as_array().unwrap().iter().find(|c| c["name"] == "oracle-agreements").unwrap();
    assert_eq!(summary["agreements"], 30);
    assert_eq!(summary["comparisons"], 30);

    let (code, out) = monocat(&["verify", "--algebra", "nilpotent:3", "--suite", "hereditary", "--kind", "cw"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["summary"]["pass"], 10);
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let (code, stdout) =
            monocat(&["verify", "--algebra", "nilpotent:3", "--suite", "psi", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "bogus"]).0, 3);
    assert_eq!(monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "psi", "--p", "6"]).0, 3);
    assert_eq!(monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "psi", "--kind", "exact"]).0, 3);
    assert_eq!(monocat(&["verify", "--algebra", "missing.json", "--suite", "psi"]).0, 3);
    assert_eq!(monocat(&["verify", "--algebra", "nilpotent:2", "--suite", "psi", "--bound", "0"]).0, 3);
    assert_eq!(monocat(&["frobnicate"]).0, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_monocat"))
        .args(["verify", "--algebra", "nilpotent:3", "--suite", "ar"])
        .env("MONOCAT_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn algebra_and_module_files() {
    let dir = tempfile::tempdir().unwrap();
    let alg_path = dir.path().join("lambda.json");
    let (code, _) = monocat(&["dump", "--algebra", "nilpotent:2", "--out", alg_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let spec: AlgebraSpec = serde_json::from_str(&std::fs::read_to_string(&alg_path).unwrap()).unwrap();
    assert_eq!(spec.to_algebra("x").unwrap().dim(), 2);

    let (code, out) = monocat(&["verify", "--algebra", alg_path.to_str().unwrap(), "--suite", "counting"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(monocat(&["verify", "--algebra", alg_path.to_str().unwrap(), "--suite", "counting", "--p", "3"]).0, 3);

    // The whole module category given by its indecomposables as generator files.
    let (_, out) = monocat(&["enumerate", "--algebra", alg_path.to_str().unwrap(), "--objects", "modules"]);
    let mut files = Vec::new();
    for (k, item) in json(&out)["items"].as_array().unwrap().iter().enumerate() {
        let path = dir.path().join(format!("m{k}.json"));
        std::fs::write(&path, item.to_string()).unwrap();
        files.push(path.to_str().unwrap().to_string());
    }
    let subcat = files.join(",");
    let (code, out) =
        monocat(&["enumerate", "--algebra", alg_path.to_str().unwrap(), "--subcat", &subcat, "--objects", "s"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], 5);

    std::fs::write(dir.path().join("bad.json"), r#"{"algebra":"lambda","dims":[1],"action":{"x":[[1]]}}"#).unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(
        monocat(&["enumerate", "--algebra", alg_path.to_str().unwrap(), "--subcat", bad.to_str().unwrap()]).0,
        3
    );
}

#[test]
fn enumerated_modules_parse_back() {
    let (_, out) = monocat(&["enumerate", "--algebra", "nilpotent:3", "--objects", "modules"]);
    let alg = Arc::new(nilpotent_loop(3, 2).unwrap());
    let expected = enumerate_indecomposables(&alg, 3, &Budget::unlimited()).unwrap();
    let items = json(&out)["items"].as_array().unwrap().clone();
    assert_eq!(items.len(), expected.len());
    for item in items {
        let spec: ModuleSpec = serde_json::from_value(item).unwrap();
        let m = spec.to_module(&alg).unwrap();
        assert!(is_indecomposable(&m).unwrap());
    }
}

/// Witnesses in a report rebuild into objects that pass the same check on their own.
#[test]
fn almost_split_witnesses_replay() {
    let (code, out) = monocat(&["verify", "--algebra", "nilpotent:3", "--suite", "ar"]);
    assert_eq!(code, 0);
    let alg = Arc::new(nilpotent_loop(3, 2).unwrap());
    let cat = MorphCat::new(alg.clone()).unwrap();
    let sub = Subcat::all(alg, 3, &Budget::unlimited()).unwrap();
    let universe = enumerate_s_indecomposables(&cat, &sub, 9, &Budget::unlimited()).unwrap();
    let mut replayed = 0;
    for claim in json(&out)["claims"].as_array().unwrap() {
        let name = claim["name"].as_str().unwrap();
        if !name.contains(":almost-split:") {
            continue;
        }
        let kind: StructureKind = claim["kind"].as_str().unwrap().parse().unwrap();
        let spec: ConflationSpec = serde_json::from_value(claim["witness"]["conflation"].clone()).unwrap();
        let conflation = spec.to_conflation(&cat).unwrap();
        assert!(is_conflation(kind, &conflation, &sub).unwrap());
        assert!(is_almost_split(&ArCandidate { conflation, kind }, &universe).unwrap(), "{name}");
        replayed += 1;
    }
    assert!(replayed > 0);
}
