use std::collections::BTreeSet;

use scf_core::doc::{pcond_from_json, pcond_to_json, qcond_from_json, qcond_to_json};
use scf_core::fixtures::{condition_mutants, golden_amalgam, p1, q1, u1, w_example};
use scf_core::product::{is_q_condition, project_coordinate, restrict_q};
use scf_core::single::{amalg_countable, is_condition, leq_p, restrict_countable, validate_p, Clause, PCondition};

#[test]
fn mutants_fail_exactly_their_clause() {
    let ms = condition_mutants();
    assert_eq!(ms.len(), 7);
    let mut seen = BTreeSet::new();
    for m in &ms {
        let v = validate_p(&m.universe, &m.condition).unwrap();
        let clauses: BTreeSet<Clause> = v.iter().map(|c| c.clause).collect();
        assert_eq!(clauses, BTreeSet::from([m.expected]), "{}", m.name);
        seen.insert(m.expected);
    }
    assert_eq!(seen.len(), 7);
}

#[test]
fn golden_amalgam_is_reproduced() {
    let u = u1();
    let n = u.cid("N").unwrap();
    let r = p1(&u);
    let w = w_example(&u);
    let out = amalg_countable(&u, &w, &r, n).unwrap();
    assert_eq!(pcond_to_json(&u, &out), pcond_to_json(&u, &golden_amalgam(&u)));
    assert!(is_condition(&u, &out));
    assert!(leq_p(&out, &r));
    assert!(leq_p(&out, &w));
    assert!(leq_p(&w, &restrict_countable(&u, &r, n).unwrap()));
}

#[test]
fn documents_round_trip() {
    let u = u1();
    for p in [p1(&u), w_example(&u), golden_amalgam(&u), PCondition::empty(Some(1))] {
        let s = pcond_to_json(&u, &p);
        let back = pcond_from_json(&u, &s).unwrap();
        assert_eq!(back, p);
        assert_eq!(pcond_to_json(&u, &back), s);
    }
    let q = q1(&u);
    assert!(is_q_condition(&u, &q));
    let s = qcond_to_json(&u, &q);
    assert_eq!(qcond_to_json(&u, &qcond_from_json(&u, &s).unwrap()), s);
}

#[test]
fn product_fixture_facts() {
    let u = u1();
    let q = q1(&u);
    let p = u.uid("P").unwrap();
    assert_eq!(restrict_q(&u, &q, scf_core::universe::Container::U(p)).unwrap(), q);
    let mut p1s0 = p1(&u);
    p1s0.s_index = Some(0);
    assert_eq!(project_coordinate(&q, 0).unwrap(), p1s0);
}

#[test]
fn malformed_documents_are_rejected() {
    let u = u1();
    assert!(pcond_from_json(&u, "{").is_err());
    assert!(pcond_from_json(&u, r#"{"aSet":["Z"],"fMap":[],"gMap":[],"sIndex":null}"#).is_err());
    assert!(pcond_from_json(&u, r#"{"aSet":[],"fMap":[],"gMap":[],"sIndex":null,"extra":1}"#).is_err());
}
