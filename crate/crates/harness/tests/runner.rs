use scf_core::doc::UniverseDoc;
use scf_core::fixtures::{golden_amalgam, p1, set, u1, universe_mutants};
use scf_core::single::{in_dq, is_condition, restrict_uncountable, PCondition};
use scf_core::universe::{Container, Universe};
use scf_harness::catalog::{self, Case, Property, Verdict};
use scf_harness::gen::Rng8;
use scf_harness::inputs::{Counterexample, Inputs, InputsDoc};
use scf_harness::runner::{replay, run, run_property, HarnessError, RunConfig, Status};
use scf_harness::shrink::{deletions, shrink};

/// A restriction to an uncountable model that loses `g`.
fn broken_restriction(u: &Universe, p: &PCondition, q: scf_core::universe::UId) -> PCondition {
    let mut r = restrict_uncountable(u, p, q).unwrap();
    r.g.clear();
    r
}

fn check_broken(u: &Universe, x: &Inputs) -> Verdict {
    let Container::U(q) = x.containers[0] else { return Verdict::Vacuous("not uncountable".into()) };
    let p = &x.conds[0];
    if !is_condition(u, p) || !in_dq(u, p, q) {
        return Verdict::Vacuous("premise".into());
    }
    if broken_restriction(u, p, q) == restrict_uncountable(u, p, q).unwrap() {
        Verdict::Pass
    } else {
        Verdict::Fail("restriction lost g".into())
    }
}

fn case_of(u: Universe, p: PCondition) -> Case {
    let q = u.uid("P").unwrap();
    Case { inputs: Inputs { containers: vec![Container::U(q)], conds: vec![p], ..Default::default() }, universe: u }
}

/// `p1` with four ordinals in its one `g` value.
fn padded_case() -> Case {
    let u = u1();
    let mut p = p1(&u);
    let (&(k, x), _) = p.g.iter().next().unwrap();
    p.set_g(k, x, set(&[14, 15, 17, 19]));
    assert!(is_condition(&u, &p));
    case_of(u, p)
}

fn gen_padded(_: &mut Rng8) -> Option<Case> {
    Some(padded_case())
}

const BROKEN: Property = Property { id: "broken", anchor: "", floor: 0.5, gen: gen_padded, check: check_broken };

fn size(p: &PCondition) -> usize {
    p.a.len() as usize
        + p.f.len()
        + p.f.values().map(Vec::len).sum::<usize>()
        + p.g.values().map(|v| v.len() as usize).sum::<usize>()
}

#[test]
fn shrinking_a_padded_counterexample() {
    let case = padded_case();
    assert!(matches!(check_broken(&case.universe, &case.inputs), Verdict::Fail(_)));
    let (small, msg) = shrink(&BROKEN, case.clone(), "padded".into());
    assert_eq!(msg, "restriction lost g");
    assert!(matches!(check_broken(&small.universe, &small.inputs), Verdict::Fail(_)));
    assert!(size(&small.inputs.conds[0]) < size(&case.inputs.conds[0]));
    assert_eq!(small.inputs.conds[0].g.values().map(|v| v.len()).sum::<u32>(), 1);
    for d in deletions(&small.inputs) {
        assert!(!matches!(check_broken(&small.universe, &d), Verdict::Fail(_)));
    }
    let (again, _) = shrink(&BROKEN, small.clone(), msg);
    assert_eq!(again.inputs, small.inputs);
}

#[test]
fn minimal_counterexamples_are_unchanged() {
    // every single deletion of the golden amalgam breaks a clause of the definition
    let u = u1();
    let case = case_of(u.clone(), golden_amalgam(&u));
    assert!(matches!(check_broken(&case.universe, &case.inputs), Verdict::Fail(_)));
    let (small, _) = shrink(&BROKEN, case.clone(), "m".into());
    assert_eq!(small.inputs, case.inputs);
}

#[test]
fn broken_property_run_reports_a_shrunk_counterexample() {
    let cfg = RunConfig::new(1, 20);
    let out = run(&BROKEN, &cfg).unwrap();
    assert_eq!(out.status, Status::Fail);
    assert_eq!(out.failures, 20);
    let ce = out.first_counterexample.unwrap();
    assert_eq!(ce.trial, 0);
    let u = ce.universe.clone().build().unwrap();
    assert_eq!(ce.inputs.clone().build(&u).unwrap().conds[0].g.values().map(|v| v.len()).sum::<u32>(), 1);
    let unshrunk = run(&BROKEN, &RunConfig { shrink: false, ..cfg }).unwrap();
    assert_eq!(unshrunk.first_counterexample.unwrap().inputs.conds.len(), 1);
}

#[test]
fn unknown_and_vacuous_runs() {
    let cfg = RunConfig::new(3, 0);
    assert!(matches!(run_property("P-99.9", &cfg), Err(HarnessError::UnknownProperty(_))));
    let out = run_property("P-6.15", &cfg).unwrap();
    assert_eq!((out.trials, out.premise_hits, out.status), (0, 0, Status::Vacuous));
    assert!(matches!(out.into_result(), Err(HarnessError::VacuousRun { .. })));
    let out = run_property("P-6.15", &RunConfig { floor: Some(10_000), ..RunConfig::new(3, 20) }).unwrap();
    assert_eq!(out.status, Status::Vacuous);
}

#[test]
fn runs_are_deterministic_across_jobs() {
    for id in ["P-6.15", "P-12.6", "P-3.5"] {
        let a = run_property(id, &RunConfig::new(11, 60)).unwrap();
        let b = run_property(id, &RunConfig { jobs: 4, ..RunConfig::new(11, 60) }).unwrap();
        assert_eq!(a, b, "{id}");
        assert_eq!(a.status, Status::Pass, "{id}");
        let c = run_property(id, &RunConfig::new(12, 60)).unwrap();
        assert_eq!(c.status, Status::Pass, "{id}");
    }
}

#[test]
fn replay_reproduces_a_failure_on_a_defective_universe() {
    // W := 3 breaks the trichotomy axiom, so the 2.17 check must fail on some pair.
    let m = universe_mutants().into_iter().find(|m| m.name == "W := 3").unwrap();
    let u = m.universe.unwrap();
    let prop = catalog::find("P-2.17").unwrap();
    let mut found = None;
    for a in u.cids() {
        for b in u.cids() {
            let inputs = Inputs { models: vec![a, b], ..Default::default() };
            if let Verdict::Fail(msg) = (prop.check)(&u, &inputs) {
                found.get_or_insert((inputs, msg));
            }
        }
    }
    let (inputs, message) = found.expect("a failing pair");
    let ce = Counterexample {
        property: "P-2.17".into(),
        seed: 0,
        trial: 0,
        message: message.clone(),
        universe: UniverseDoc::of(&u),
        inputs: InputsDoc::of(&u, &inputs),
    };
    let text = serde_json::to_string(&ce).unwrap();
    let back: Counterexample = serde_json::from_str(&text).unwrap();
    assert_eq!(replay(&back).unwrap(), Verdict::Fail(message));
}

#[test]
fn catalog_ids_are_unique_and_anchored() {
    let all = catalog::all();
    let mut ids: Vec<&str> = all.iter().map(|p| p.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), all.len());
    for p in &all {
        assert!(p.id.starts_with("P-"));
        assert!(!p.anchor.is_empty());
        assert!(p.floor > 0.0 && p.floor <= 1.0);
    }
}
