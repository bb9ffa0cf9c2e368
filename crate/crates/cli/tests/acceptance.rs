//! Acceptance criteria AC1-AC10, one line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;

use scf_core::doc::{
    pcond_from_json, pcond_to_json, qcond_from_json, qcond_to_json, universe_from_json, universe_to_json,
};
use scf_core::fixtures::{condition_mutants, golden_amalgam, p1, q1, u1, universe_mutants, w_example};
use scf_core::single::{amalg_countable, leq_p, validate_p, Clause};
use scf_core::universe::{validate_universe, Universe};
use scf_harness::enumerate::Bounds;
use scf_harness::gen::{draw_tiny_universe, draw_universe, random_condition, random_q, Rng8};
use scf_harness::oracle::sweep;
use scf_harness::runner::{run_property, RunConfig, Status};

const SEED: u64 = 20_261_017;
const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const AC4_TRIALS: u64 = 1000;
const AC4_HIT_FRACTION: f64 = 0.30;
const AC4_LIMIT: Duration = Duration::from_secs(120);
const AC5_TRIALS: u64 = 500;
const AC5_MIN_HITS: u64 = 100;
const AC6_TRIALS: u64 = 1000;
const AC7_TRIALS: u64 = 500;
const AC8_BOUNDS: Bounds = Bounds { max_models: 2, max_dom: 3, max_g: 1, budget: 2_000_000 };
const AC8_TINY_UNIVERSES: usize = 24;
const AC8_LIMIT: Duration = Duration::from_secs(600);
const AC9_GENERATED: usize = 100;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn ac1() -> Verdict {
    let t = Instant::now();
    let r = validate_universe(&u1());
    ensure(r.entries.len() == 14 && r.all_pass(), || format!("U1 fails {:?}", r.failed()))?;
    let ms = universe_mutants();
    ensure(ms.len() >= 8, || format!("only {} mutants", ms.len()))?;
    for m in &ms {
        let u = m.universe.as_ref().map_err(|e| format!("{}: {e}", m.name))?;
        let got = validate_universe(u).failed();
        ensure(got == m.expected, || format!("{}: expected {:?}, got {:?}", m.name, m.expected, got))?;
    }
    let el = t.elapsed();
    ensure(el < FIXTURE_LIMIT, || format!("took {el:?}"))?;
    Ok(format!("U1 passes A1-A14; {} mutants rejected as predicted; {el:?}", ms.len()))
}

fn ac2() -> Verdict {
    let t = Instant::now();
    let u = u1();
    let v = validate_p(&u, &p1(&u)).map_err(|e| e.to_string())?;
    ensure(v.is_empty(), || format!("p1 violates {v:?}"))?;
    let ms = condition_mutants();
    ensure(ms.len() == 7, || format!("{} mutants", ms.len()))?;
    for m in &ms {
        let got: BTreeSet<Clause> =
            validate_p(&m.universe, &m.condition).map_err(|e| e.to_string())?.iter().map(|c| c.clause).collect();
        ensure(got == BTreeSet::from([m.expected]), || format!("{}: expected {}, got {got:?}", m.name, m.expected))?;
    }
    let el = t.elapsed();
    ensure(el < FIXTURE_LIMIT, || format!("took {el:?}"))?;
    Ok(format!("p1 passes; 7 mutants fail exactly C1..C7; {el:?}"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn scf(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_scf")).args(args).env_clear().output().expect("run scf");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn ac3() -> Verdict {
    let u = u1();
    let n = u.cid("N").map_err(|e| e.to_string())?;
    let (r, w) = (p1(&u), w_example(&u));
    let out = amalg_countable(&u, &w, &r, n).map_err(|e| e.to_string())?;
    let golden = pcond_to_json(&u, &golden_amalgam(&u));
    ensure(pcond_to_json(&u, &out) == golden, || "amalgam differs from the hand computation".into())?;
    let v = validate_p(&u, &out).map_err(|e| e.to_string())?;
    ensure(v.is_empty(), || format!("amalgam violates {v:?}"))?;
    ensure(leq_p(&out, &r) && leq_p(&out, &w), || "amalgam is not below both inputs".into())?;
    let on_disk = std::fs::read_to_string(fixture("amalgam.json")).map_err(|e| e.to_string())?;
    ensure(on_disk == golden, || "fixtures/amalgam.json is stale".into())?;
    let path = |s| fixture(s).display().to_string();
    let (code, stdout) = scf(&[
        "amalgamate",
        "--mode",
        "countable",
        "--universe",
        &path("U1.json"),
        "--r",
        &path("p1.json"),
        "--w",
        &path("w.json"),
        "--model",
        "N",
    ]);
    ensure(code == 0 && stdout == golden.as_bytes(), || format!("CLI amalgamate exit {code} or output differs"))?;
    Ok("w ⊕_N p1 equals the golden document (library and CLI), is valid and below both inputs".into())
}

/// Runs properties and checks failures and premise hits.
fn suite(ids: &[&str], trials: u64, min_hits: u64) -> Result<(String, Duration), String> {
    let t = Instant::now();
    let mut parts = Vec::new();
    for id in ids {
        let cfg = RunConfig { jobs: jobs(), ..RunConfig::new(SEED, trials) };
        let o = run_property(id, &cfg).map_err(|e| e.to_string())?;
        ensure(o.trials == trials && o.failures == 0, || {
            format!("{id}: {} failures; first: {:?}", o.failures, o.first_counterexample.as_ref().map(|c| &c.message))
        })?;
        ensure(o.premise_hits >= min_hits, || format!("{id}: {} premise hits < {min_hits}", o.premise_hits))?;
        ensure(o.status == Status::Pass, || format!("{id}: status {:?}", o.status))?;
        parts.push(format!("{id} {}/{}", o.premise_hits, o.trials));
    }
    Ok((parts.join(", "), t.elapsed()))
}

fn ac4() -> Verdict {
    let min = (AC4_HIT_FRACTION * AC4_TRIALS as f64).ceil() as u64;
    let (s, el) = suite(&["P-6.15", "P-7.19", "P-11.16", "P-11.18"], AC4_TRIALS, min)?;
    ensure(el < AC4_LIMIT, || format!("took {el:?}"))?;
    Ok(format!("{s}; {el:.1?}"))
}

fn ac5() -> Verdict {
    let (s, el) = suite(&["P-8.6", "P-12.6"], AC5_TRIALS, AC5_MIN_HITS)?;
    Ok(format!("{s}; {el:.1?}"))
}

fn ac6() -> Verdict {
    let (s, el) = suite(&["P-3.5", "P-3.8", "P-10.13"], AC6_TRIALS, 1)?;
    Ok(format!("{s}; {el:.1?}"))
}

fn ac7() -> Verdict {
    let (s, el) = suite(&["P-8.1", "P-12.1", "P-8.4", "P-11.17", "P-12.4"], AC7_TRIALS, 1)?;
    Ok(format!("{s}; {el:.1?}"))
}

fn ac8() -> Verdict {
    let t = Instant::now();
    let mut rng = Rng8::seed_from_u64(SEED);
    let mut universes: Vec<Universe> = vec![u1()];
    universes.extend((0..AC8_TINY_UNIVERSES).map(|_| draw_tiny_universe(&mut rng)));
    let (mut cands, mut conds, mut pairs, mut restr, mut rem, mut lemmas) = (0, 0, 0, 0, 0, 0);
    for (i, u) in universes.iter().enumerate() {
        ensure(u.countables().len() <= 3, || format!("universe {i} has {} countables", u.countables().len()))?;
        let s = sweep(u, AC8_BOUNDS, usize::MAX).map_err(|e| format!("universe {i}: {e}"))?;
        ensure(s.disagreements.is_empty(), || format!("universe {i}: {}", s.disagreements[0]))?;
        cands += s.candidates;
        conds += s.conditions;
        pairs += s.order_queries;
        restr += s.restriction_queries;
        rem += s.remainder_queries;
        lemmas += s.lemma_checks;
    }
    let el = t.elapsed();
    ensure(el < AC8_LIMIT, || format!("took {el:?}"))?;
    Ok(format!(
        "{} universes: {cands} candidates, {conds} conditions, {pairs} order, {restr} restriction, {rem} r*/s* queries, {lemmas} lemma checks agree; {el:.1?}",
        universes.len()
    ))
}

fn ac9() -> Verdict {
    let u = u1();
    let su = universe_to_json(&u);
    let sp = pcond_to_json(&u, &p1(&u));
    let sq = qcond_to_json(&u, &q1(&u));
    ensure(universe_to_json(&universe_from_json(&su).map_err(|e| e.to_string())?) == su, || "U1".into())?;
    ensure(pcond_to_json(&u, &pcond_from_json(&u, &sp).map_err(|e| e.to_string())?) == sp, || "p1".into())?;
    ensure(qcond_to_json(&u, &qcond_from_json(&u, &sq).map_err(|e| e.to_string())?) == sq, || "q1".into())?;
    for (name, file, text) in [("U1", "U1.json", &su), ("p1", "p1.json", &sp), ("q1", "q1.json", &sq)] {
        let disk = std::fs::read_to_string(fixture(file)).map_err(|e| e.to_string())?;
        ensure(&disk == text, || format!("fixtures/{file} differs from {name}"))?;
    }
    let mut rng = Rng8::seed_from_u64(SEED);
    let mut n = 0;
    while n < AC9_GENERATED {
        let g = draw_universe(&mut rng);
        let s = universe_to_json(&g);
        let back = universe_from_json(&s).map_err(|e| e.to_string())?;
        ensure(universe_to_json(&back) == s, || format!("generated universe {n}"))?;
        n += 1;
        if let Some(p) = random_condition(&g, &mut rng, None) {
            let s = pcond_to_json(&g, &p);
            ensure(pcond_to_json(&back, &pcond_from_json(&back, &s).map_err(|e| e.to_string())?) == s, || {
                format!("generated condition {n}")
            })?;
            n += 1;
        }
        if let Some(q) = random_q(&g, &mut rng, None) {
            let s = qcond_to_json(&g, &q);
            ensure(qcond_to_json(&back, &qcond_from_json(&back, &s).map_err(|e| e.to_string())?) == s, || {
                format!("generated product condition {n}")
            })?;
            n += 1;
        }
    }
    Ok(format!("U1, p1, q1 and {n} generated documents round-trip byte-exactly"))
}

fn ac10() -> Verdict {
    let runs = [("P-8.6", "500", ["1", "1", "3"]), ("P-12.6", "300", ["1", "2", "4"])];
    for (id, trials, jobs) in runs {
        let mut outputs = Vec::new();
        for j in jobs {
            let (code, out) = scf(&["check", id, "--seed", "7", "--trials", trials, "--jobs", j]);
            ensure(code == 0, || format!("{id} --jobs {j}: exit {code}"))?;
            outputs.push(out);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{id}: reports differ"))?;
    }
    Ok("check reports are byte-identical across repeats and --jobs 1/2/3/4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC")).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match v {
            Ok(msg) => println!("{name:<5} pass  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name:<5} FAIL  {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
