//! The bundled running-example universe and conditions.

use std::collections::BTreeSet;

use crate::ordset::OrdSet;
use crate::product::QCondition;
use crate::single::{Clause, DomainElement, PCondition};
use crate::universe::{
    AxiomId, CSet, CountableModel, IdxSet, UncountableModel, Universe, UniverseConfig, UniverseError,
};

pub fn set(xs: &[u32]) -> OrdSet {
    xs.iter().copied().collect()
}

fn ids(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn u1_config() -> UniverseConfig {
    UniverseConfig {
        size: 40,
        omega1_cut: 10,
        lambda_set: set(&[12, 20, 28, 32, 36]),
        stationary_family: vec![set(&[20]), set(&[28])],
        lambda_star: 2,
    }
}

pub fn u1_countables() -> Vec<CountableModel> {
    let both: IdxSet = [0, 1].into_iter().collect();
    let m2 = set(&[0, 1, 2, 13, 20, 21, 28, 29]);
    vec![
        CountableModel {
            id: "M0".into(),
            trace: set(&[0, 1, 2, 13, 20, 21]),
            index_set: both,
            set_family: BTreeSet::new(),
            model_family: BTreeSet::new(),
            simple: false,
        },
        CountableModel {
            id: "M2".into(),
            trace: m2,
            index_set: both,
            set_family: BTreeSet::new(),
            model_family: BTreeSet::new(),
            simple: false,
        },
        CountableModel {
            id: "N".into(),
            trace: set(&[0, 1, 2, 3, 4, 5, 6, 13, 14, 20, 21, 22, 28, 29, 30]),
            index_set: both,
            set_family: m2.initial_segments().collect(),
            model_family: ids(&["M0", "M2"]),
            simple: true,
        },
    ]
}

pub fn u1_uncountables() -> Vec<UncountableModel> {
    vec![UncountableModel {
        id: "P".into(),
        cut: 36,
        index_set: [0, 1].into_iter().collect(),
        model_family: ids(&["M0", "M2", "N"]),
        simple: true,
    }]
}

/// The running-example universe.
pub fn u1() -> Universe {
    Universe::new(u1_config(), u1_countables(), u1_uncountables()).expect("fixture within capacity")
}

/// The running example with one more model `X`, incomparable with `N`.
pub fn u1x() -> Universe {
    let mut cs = u1_countables();
    cs.push(CountableModel {
        id: "X".into(),
        trace: set(&[0, 1, 2, 3, 4, 13, 14]),
        index_set: [0, 1].into_iter().collect(),
        set_family: BTreeSet::new(),
        model_family: BTreeSet::new(),
        simple: false,
    });
    let mut us = u1_uncountables();
    us[0].model_family.insert("X".into());
    Universe::new(u1_config(), cs, us).expect("fixture within capacity")
}

fn cset(u: &Universe, names: &[&str]) -> CSet {
    names.iter().map(|n| u.cid(n).expect("fixture model")).fold(CSet::default(), CSet::with)
}

/// `p1 = (f: {20 -> [N∩20], N∩20 -> []}, g: {(N∩20, 20) -> {15}}, A: {N})` over the union of `S`.
pub fn p1(u: &Universe) -> PCondition {
    let n20 = u.trace(u.cid("N").expect("fixture model")).below(20);
    let mut p = PCondition::empty(None);
    p.f.insert(DomainElement::OrdS(20), vec![n20]);
    p.f.insert(DomainElement::Set(n20), vec![]);
    p.set_g(n20, DomainElement::OrdS(20), set(&[15]));
    p.a = cset(u, &["N"]);
    p
}

/// `w = (f: {20 -> [M0∩20], M0∩20 -> []}, g: {}, A: {M0})`, a condition in `N` below `p1 ↾ N`.
pub fn w_example(u: &Universe) -> PCondition {
    let m20 = u.trace(u.cid("M0").expect("fixture model")).below(20);
    let mut w = PCondition::empty(None);
    w.f.insert(DomainElement::OrdS(20), vec![m20]);
    w.f.insert(DomainElement::Set(m20), vec![]);
    w.a = cset(u, &["M0"]);
    w
}

/// The amalgam `w ⊕_N p1` computed by hand.
pub fn golden_amalgam(u: &Universe) -> PCondition {
    let m20 = set(&[0, 1, 2, 13]);
    let n20 = u.trace(u.cid("N").expect("fixture model")).below(20);
    let mut p = PCondition::empty(None);
    p.f.insert(DomainElement::OrdS(20), vec![m20, n20]);
    p.f.insert(DomainElement::Set(m20), vec![]);
    p.f.insert(DomainElement::Set(n20), vec![m20]);
    p.set_g(n20, DomainElement::OrdS(20), set(&[15]));
    p.a = cset(u, &["M0", "N"]);
    p
}

/// `q1 = (F: {0 -> p1 over S_0}, A: {N})`.
pub fn q1(u: &Universe) -> QCondition {
    let mut p = p1(u);
    p.s_index = Some(0);
    let mut q = QCondition::default();
    q.big_f.insert(0, p);
    q.a = cset(u, &["N"]);
    q
}

/// A one-field edit of the fixture universe and the axioms it breaks.
pub struct UniverseMutant {
    pub name: &'static str,
    pub expected: Vec<AxiomId>,
    pub universe: Result<Universe, UniverseError>,
}

type Parts = (UniverseConfig, Vec<CountableModel>, Vec<UncountableModel>);

fn mutant(name: &'static str, expected: &[AxiomId], edit: impl FnOnce(&mut Parts)) -> UniverseMutant {
    let mut parts = (u1_config(), u1_countables(), u1_uncountables());
    edit(&mut parts);
    let (c, cs, us) = parts;
    UniverseMutant { name, expected: expected.to_vec(), universe: Universe::new(c, cs, us) }
}

/// Single-field mutants of `U1`. Countables are indexed `M0, M2, N`.
pub fn universe_mutants() -> Vec<UniverseMutant> {
    use AxiomId::*;
    vec![
        mutant("remove 32 from Λ", &[A6], |(c, _, _)| c.lambda_set.remove(32)),
        mutant("remove 28 from Λ", &[A1], |(c, _, _)| c.lambda_set.remove(28)),
        mutant("clear setFamily(N)", &[A8, A10], |(_, cs, _)| cs[2].set_family.clear()),
        mutant("S_1 := S_0", &[A14], |(c, _, _)| c.stationary_family[1] = set(&[20])),
        mutant("λ* := 1", &[A1], |(c, _, _)| c.lambda_star = 1),
        mutant("W := 3", &[A7, A8, A11], |(c, _, _)| c.omega1_cut = 3),
        mutant("remove 30 from trace(N)", &[A7], |(_, cs, _)| cs[2].trace.remove(30)),
        mutant("remove 21 from trace(M2)", &[A8, A10], |(_, cs, _)| cs[1].trace.remove(21)),
        mutant("remove M0 from modelFamily(N)", &[A10], |(_, cs, _)| {
            cs[2].model_family.remove("M0");
        }),
        mutant("remove N from modelFamily(P)", &[A10], |(_, _, us)| {
            us[0].model_family.remove("N");
        }),
        mutant("cut(P) := 22", &[A6, A8, A9, A10], |(_, _, us)| us[0].cut = 22),
    ]
}

/// A condition breaking exactly one clause.
pub struct ConditionMutant {
    pub name: &'static str,
    pub expected: Clause,
    pub universe: Universe,
    pub condition: PCondition,
}

/// One mutant of `p1` (or of the golden amalgam, where `p1` is too small) per clause.
pub fn condition_mutants() -> Vec<ConditionMutant> {
    let u = u1();
    let ux = u1x();
    let cid = |s: &str| u.cid(s).expect("fixture model");
    let n20 = u.trace(cid("N")).below(20);
    let m20 = u.trace(cid("M0")).below(20);
    let with = |name, expected, edit: &dyn Fn(&mut PCondition)| {
        let mut p = p1(&u);
        edit(&mut p);
        ConditionMutant { name, expected, universe: u.clone(), condition: p }
    };
    let mut c1 = p1(&ux);
    c1.a.insert(ux.cid("X").expect("fixture model"));
    let mut c5 = golden_amalgam(&u);
    c5.set_g(m20, DomainElement::OrdS(20), set(&[14]));
    let mut c7 = PCondition::empty(None);
    c7.a = cset(&u, &["M0", "M2"]);
    vec![
        ConditionMutant {
            name: "add X, incomparable with N, to A (U1x)",
            expected: Clause::C1,
            universe: ux.clone(),
            condition: c1,
        },
        with("add 12, outside S, to dom f", Clause::C2, &|p| {
            p.f.insert(DomainElement::OrdS(12), vec![]);
        }),
        with("f(N∩20) := [M0∩20] with M0∩20 outside dom f", Clause::C3, &|p| {
            p.f.insert(DomainElement::Set(n20), vec![m20]);
        }),
        with("g(N∩20, 20) := {3}, below sup(N∩20)", Clause::C4, &|p| {
            p.set_g(n20, DomainElement::OrdS(20), set(&[3]));
        }),
        ConditionMutant {
            name: "golden amalgam with g(M0∩20, 20) := {14}",
            expected: Clause::C5,
            universe: u.clone(),
            condition: c5,
        },
        with("add M2 to A without M2∩20 in f(20)", Clause::C6, &|p| p.a.insert(cid("M2"))),
        ConditionMutant {
            name: "empty f with A = {M0, M2}, missing r*(A) = {28}",
            expected: Clause::C7,
            universe: u.clone(),
            condition: c7,
        },
    ]
}
