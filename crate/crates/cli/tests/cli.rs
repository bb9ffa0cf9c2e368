use std::fs;
use std::path::PathBuf;

use scf_core::doc::{pcond_to_json, universe_to_json, UniverseDoc};
use scf_core::fixtures::{condition_mutants, universe_mutants};
use scf_harness::catalog;
use scf_harness::inputs::{Counterexample, Inputs, InputsDoc};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = scf_cli::main_with(std::iter::once("scf").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("scf-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_universe_fixture_and_mutant() {
    let (code, out, _) = run(&["validate-universe", &fixture("U1.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("\"axiom\": \"A14\""));
    let m = universe_mutants().into_iter().find(|m| m.name == "remove 32 from Λ").unwrap();
    let path = scratch("no32.json", &universe_to_json(&m.universe.unwrap()));
    let (code, _, err) = run(&["validate-universe", &path]);
    assert_eq!(code, 1);
    assert!(err.contains("A6"), "{err}");
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.json", "{\n  \"config\": 3\n}\n");
    let (code, _, err) = run(&["validate-universe", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["validate-universe", "/nonexistent/u.json"]).0, 2);
    assert_eq!(run(&["check", "P-8.6", "--seed", "1", "--frobnicate"]).0, 2);
    assert_eq!(run(&["check", "P-8.6"]).0, 2);
    assert_eq!(run(&["check", "P-0.0", "--seed", "1"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
    let u = fixture("U1.json");
    assert_eq!(run(&["restrict", "--universe", &u, "--cond", &fixture("p1.json"), "--model", "Z"]).0, 2);
}

#[test]
fn validate_cond_names_the_clause() {
    let (code, out, _) = run(&["validate-cond", "--universe", &fixture("U1.json"), "--cond", &fixture("p1.json")]);
    assert_eq!((code, out.contains("\"valid\": true")), (0, true));
    let (code, _, _) =
        run(&["validate-cond", "--product", "--universe", &fixture("U1.json"), "--cond", &fixture("q1.json")]);
    assert_eq!(code, 0);
    for m in condition_mutants().into_iter().filter(|m| m.universe.countables().len() == 3) {
        let path = scratch("mutant.json", &pcond_to_json(&m.universe, &m.condition));
        let (code, out, err) = run(&["validate-cond", "--universe", &fixture("U1.json"), "--cond", &path]);
        assert_eq!(code, 1, "{}", m.name);
        assert!(out.contains(&format!("\"{}: ", m.expected)), "{}: {out}", m.name);
        assert!(err.contains(&m.expected.to_string()), "{err}");
    }
}

#[test]
fn operations_on_the_fixtures() {
    let u = fixture("U1.json");
    let (code, out, _) = run(&["restrict", "--universe", &u, "--cond", &fixture("p1.json"), "--model", "P"]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(fixture("p1.json")).unwrap());
    let (code, out, _) = run(&["project", "--universe", &u, "--cond", &fixture("q1.json"), "--index", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"sIndex\": 0"));
    assert_eq!(run(&["project", "--universe", &u, "--cond", &fixture("q1.json"), "--index", "1"]).0, 1);
    // the roles of r and w swapped: r is not in D_N
    let (code, _, err) = run(&[
        "amalgamate",
        "--mode",
        "countable",
        "--universe",
        &u,
        "--r",
        &fixture("w.json"),
        "--w",
        &fixture("p1.json"),
        "--model",
        "N",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("D_N"), "{err}");
    let (code, _, _) = run(&[
        "amalgamate",
        "--mode",
        "uncountable",
        "--universe",
        &u,
        "--r",
        &fixture("p1.json"),
        "--w",
        &fixture("w.json"),
        "--model",
        "N",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn generation_is_seeded() {
    let a = run(&["gen-universe", "--seed", "5", "--profile", "tiny"]);
    let b = run(&["gen-universe", "--seed", "5", "--profile", "tiny"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let path = scratch("gen.json", &a.1);
    assert_eq!(run(&["validate-universe", &path]).0, 0);
    let (_, _, stats) = run(&["gen-universe", "--seed", "5", "--stats"]);
    assert!(stats.contains("attempts"));
    assert_eq!(run(&["gen-universe"]).0, 2);
}

#[test]
fn check_and_report() {
    let (code, out, _) = run(&["check", "P-6.15", "--seed", "3", "--trials", "40"]);
    assert_eq!(code, 0);
    assert!(!out.contains("elapsedMs"));
    let (_, timed, _) = run(&["check", "P-6.15", "--seed", "3", "--trials", "40", "--timing"]);
    assert!(timed.contains("elapsedMs"));
    let path = scratch("report.json", &out);
    let (code, table, _) = run(&["report", &path]);
    assert_eq!(code, 0);
    assert!(table.contains("P-6.15") && table.contains("pass"));
    let (code, out, _) = run(&["check", "P-6.15", "--seed", "3", "--trials", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"status\": \"vacuous\""));
    let (code, out, _) = run(&["check", "P-6.15", "--seed", "3", "--trials", "20", "--floor", "100"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"floor\": 100"));
}

#[test]
fn fuzz_all_with_prefix() {
    let (code, out, _) = run(&["fuzz-all", "--seed", "9", "--trials", "30", "--prefix", "P-2.1", "--jobs", "2"]);
    assert_eq!(code, 0);
    let n = catalog::all().iter().filter(|p| p.id.starts_with("P-2.1")).count();
    assert_eq!(out.matches("\"anchor\"").count(), n);
    assert!(out.contains("\"fixtures\""));
    assert_eq!(run(&["fuzz-all", "--seed", "9", "--prefix", "Q"]).0, 2);
}

#[test]
fn replay_of_a_stored_counterexample() {
    let m = universe_mutants().into_iter().find(|m| m.name == "W := 3").unwrap();
    let u = m.universe.unwrap();
    let prop = catalog::find("P-2.17").unwrap();
    let (inputs, message) = u
        .cids()
        .flat_map(|a| u.cids().map(move |b| Inputs { models: vec![a, b], ..Default::default() }))
        .find_map(|x| match (prop.check)(&u, &x) {
            scf_harness::catalog::Verdict::Fail(m) => Some((x, m)),
            _ => None,
        })
        .unwrap();
    let ce = Counterexample {
        property: "P-2.17".into(),
        seed: 0,
        trial: 4,
        message,
        universe: UniverseDoc::of(&u),
        inputs: InputsDoc::of(&u, &inputs),
    };
    let path = scratch("ce.json", &serde_json::to_string(&ce).unwrap());
    let (code, out, _) = run(&["check", "P-2.17", "--seed", "0", "--replay", &path]);
    assert_eq!(code, 1);
    assert!(out.contains("\"verdict\": \"fail\""));
    assert_eq!(run(&["check", "P-2.18", "--seed", "0", "--replay", &path]).0, 2);
}

#[test]
fn list_has_every_property() {
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("\"id\"").count(), catalog::all().len());
}
