use super::*;
use crate::fixtures::{golden_amalgam, p1, set, u1, w_example};

fn n(u: &Universe) -> CId {
    u.cid("N").unwrap()
}

#[test]
fn p1_and_empty_are_conditions() {
    let u = u1();
    assert_eq!(validate_p(&u, &p1(&u)).unwrap(), vec![]);
    assert_eq!(validate_p(&u, &PCondition::empty(None)).unwrap(), vec![]);
}

#[test]
fn low_g_value_breaks_c4() {
    let u = u1();
    let mut p = p1(&u);
    let n20 = u.trace(n(&u)).below(20);
    p.set_g(n20, DomainElement::OrdS(20), set(&[13]));
    let v = validate_p(&u, &p).unwrap();
    assert_eq!(v.iter().map(|c| c.clause).collect::<Vec<_>>(), vec![Clause::C4]);
}

#[test]
fn order_examples() {
    let u = u1();
    let p = p1(&u);
    assert!(leq_p(&p, &p));
    assert!(leq_p(&p, &PCondition::empty(None)));
    let mut weaker = p.clone();
    weaker.g.clear();
    assert!(leq_p(&p, &weaker));
    assert!(!leq_p(&weaker, &p));
}

#[test]
fn extend_ordinals_example() {
    let u = u1();
    let mut base = PCondition::empty(None);
    base.a = CSet::singleton(n(&u));
    let q = extend_ordinals(&u, &base, set(&[20])).unwrap();
    let n20 = u.trace(n(&u)).below(20);
    assert_eq!(q.chain(DomainElement::OrdS(20)), &[n20]);
    assert_eq!(q.chain(DomainElement::Set(n20)), &[] as &[OrdSet]);
    assert!(q.g.is_empty());
    assert_eq!(q.a, base.a);
    assert!(is_condition(&u, &q) && leq_p(&q, &base));
    assert_eq!(extend_ordinals(&u, &q, OrdSet::EMPTY).unwrap(), q);
    assert!(matches!(extend_ordinals(&u, &q, set(&[20])), Err(CondError::DomainClash(_))));
}

#[test]
fn saturate_is_fixed_on_p1() {
    let u = u1();
    let p = p1(&u);
    assert_eq!(saturate_g(&u, &p), p);
}

#[test]
fn adjoin_model_example() {
    let u = u1();
    let w = w_example(&u);
    let q = adjoin_model(&u, &w, n(&u)).unwrap();
    let m20 = set(&[0, 1, 2, 13]);
    let n20 = u.trace(n(&u)).below(20);
    assert_eq!(q.a, w.a.with(n(&u)));
    assert_eq!(q.chain(DomainElement::OrdS(20)), &[m20, n20]);
    assert_eq!(q.chain(DomainElement::Set(n20)), &[m20]);
    assert!(q.g_of(n20, DomainElement::OrdS(20)).is_empty());
    assert!(is_condition(&u, &q) && leq_p(&q, &w));
    let e = adjoin_model(&u, &PCondition::empty(None), n(&u)).unwrap();
    assert_eq!(e.a, CSet::singleton(n(&u)));
    assert!(e.f.is_empty());
    assert!(matches!(adjoin_model(&u, &p1(&u), n(&u)), Err(CondError::NotInModel(_))));
}

#[test]
fn closures_and_dense_classes() {
    let u = u1();
    let p = p1(&u);
    let pp = u.uid("P").unwrap();
    assert_eq!(close_under_q(&u, &p, pp).unwrap(), p);
    assert_eq!(close_under_n(&u, &p, n(&u)).unwrap(), p);
    assert!(in_dn(&u, &p, n(&u)));
    assert!(in_dq(&u, &p, pp));
    assert!(!in_dn(&u, &PCondition::empty(None), n(&u)));
}

#[test]
fn restrictions() {
    let u = u1();
    let p = p1(&u);
    let pp = u.uid("P").unwrap();
    assert_eq!(restrict_uncountable(&u, &p, pp).unwrap(), p);
    let r = restrict_countable(&u, &p, n(&u)).unwrap();
    let mut want = PCondition::empty(None);
    want.f.insert(DomainElement::OrdS(20), vec![]);
    assert_eq!(r, want);
    assert!(leq_p(&p, &r));
    assert!(cond_in(&u, &r, Container::C(n(&u))));
}

#[test]
fn golden_countable_amalgam() {
    let u = u1();
    let (out, cases) = amalg_countable_traced(&u, &w_example(&u), &p1(&u), n(&u)).unwrap();
    assert_eq!(out, golden_amalgam(&u));
    let n20 = u.trace(n(&u)).below(20);
    assert_eq!(cases[&DomainElement::OrdS(20)], 2);
    assert_eq!(cases[&DomainElement::Set(set(&[0, 1, 2, 13]))], 1);
    assert_eq!(cases[&DomainElement::Set(n20)], 4);
    assert!(is_condition(&u, &out));
    assert!(leq_p(&out, &w_example(&u)) && leq_p(&out, &p1(&u)));
}

#[test]
fn minimal_w_amalgams() {
    let u = u1();
    let p = p1(&u);
    let w = restrict_countable(&u, &p, n(&u)).unwrap();
    let out = amalg_countable(&u, &w, &p, n(&u)).unwrap();
    assert!(is_condition(&u, &out) && leq_p(&out, &p));
    let pp = u.uid("P").unwrap();
    let wq = restrict_uncountable(&u, &p, pp).unwrap();
    let out = amalg_uncountable(&u, &wq, &p, pp).unwrap();
    assert_eq!(out, p);
}

#[test]
fn amalgam_rejects_w_outside_model() {
    let u = u1();
    let p = p1(&u);
    assert!(matches!(amalg_countable(&u, &p, &p, n(&u)), Err(CondError::PreconditionFailed(_))));
}
