//! Properties of the product forcing.

use std::collections::BTreeMap;

use rand::Rng;

use scf_core::ordset::OrdinalValue;
use scf_core::product::{
    in_dnq, is_q_condition, leq_q, lower_coordinates, oplus_q, oplus_q_traced, project_coordinate, q_not_in,
    restrict_q, uplus, validate_q, QCondition,
};
use scf_core::single::{is_condition, leq_p, PCondition};
use scf_core::universe::{CId, CSet, Container, IdxSet, UId, Universe};

use super::models::{draw_with, nested_simple, roomy};
use super::{case, claim, must, premise, Case, Property, Verdict};
use crate::gen::{draw_universe, into_dclass, pick, random_q, random_q_with, strengthen_q, walk, Rng8};
use crate::inputs::Inputs;

fn first_q_violation(u: &Universe, p: &QCondition) -> Option<String> {
    match validate_q(u, p) {
        Ok(v) => v.first().map(|c| c.to_string()),
        Err(e) => Some(e.to_string()),
    }
}

fn q_leq_witness(q: &QCondition, p: &QCondition) -> String {
    if !p.a.is_subset(q.a) {
        return "A_p ⊄ A_q".into();
    }
    for (i, cp) in &p.big_f {
        match q.big_f.get(i) {
            None => return format!("index {i} missing"),
            Some(cq) if !leq_p(cq, cp) => return format!("coordinate {i} not below"),
            _ => {}
        }
    }
    String::new()
}

fn describe_q_difference(l: &QCondition, r: &QCondition) -> String {
    if l.a != r.a {
        return "A differs".into();
    }
    if l.dom() != r.dom() {
        return format!(
            "dom F differs: {:?} vs {:?}",
            l.dom().iter().collect::<Vec<_>>(),
            r.dom().iter().collect::<Vec<_>>()
        );
    }
    for (i, c) in &l.big_f {
        if r.big_f.get(i) != Some(c) {
            return format!("coordinate {i}: {}", super::single::describe_difference(c, &r.big_f[i]));
        }
    }
    "sides differ".into()
}

fn steps(rng: &mut Rng8) -> usize {
    rng.gen_range(4..16)
}

fn free_indices(u: &Universe, p: &QCondition) -> Vec<u32> {
    (0..u.config().lambda_star).filter(|&i| !p.dom().contains(i)).collect()
}

fn random_subset(rng: &mut Rng8, xs: &[u32]) -> IdxSet {
    let mut out: IdxSet = xs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if out.is_empty() {
        if let Some(i) = pick(rng, xs) {
            out = [i].into_iter().collect();
        }
    }
    out
}

// Fresh indices, lowering and projection.

fn gen_10_8(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let p = random_q(&u, rng, None)?;
    let k = steps(rng);
    let q = strengthen_q(&u, rng, &p, None, k, true);
    let grown: Vec<u32> = q.dom().diff(p.dom()).iter().collect();
    let x = if grown.is_empty() { random_subset(rng, &free_indices(&u, &p)) } else { random_subset(rng, &grown) };
    case(u, Inputs { qconds: vec![p, q], idx: vec![x], ..Default::default() })
}

fn check_10_8(u: &Universe, x: &Inputs) -> Verdict {
    let (p, q, xs) = (&x.qconds[0], &x.qconds[1], x.idx[0]);
    premise!(is_q_condition(u, p), "p not a condition");
    premise!(!xs.is_empty() && xs.inter(p.dom()).is_empty(), "x not a nonempty set of fresh indices");
    premise!(xs.iter().all(|i| i < u.config().lambda_star), "x not below λ*");
    let r = must!(uplus(u, p, xs), "p ⊎ x");
    claim!(is_q_condition(u, &r), "p ⊎ x not a condition: {}", first_q_violation(u, &r).unwrap_or_default());
    claim!(leq_q(&r, p), "p ⊎ x ≰ p");
    claim!(xs.is_subset(r.dom()), "x ⊄ dom F");
    if is_q_condition(u, q) && leq_q(q, p) && xs.is_subset(q.dom()) {
        claim!(leq_q(q, &r), "q ≤ p with x ⊆ dom F_q but q ≰ p ⊎ x: {}", q_leq_witness(q, &r));
    }
    Verdict::Pass
}

/// Slots: `qconds[0] = p`, `idx[0]` the replaced indices, `conds` their replacements in index order.
fn gen_10_9(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let p = random_q(&u, rng, None)?;
    let chosen = random_subset(rng, &p.dom().iter().collect::<Vec<_>>());
    let mut conds = Vec::new();
    for i in chosen.iter() {
        let cur = p.big_f[&i].clone();
        let n = steps(rng);
        conds.push(walk(&u, rng, cur.clone(), None, n, &|c| leq_p(c, &cur)));
    }
    case(u, Inputs { qconds: vec![p], idx: vec![chosen], conds, ..Default::default() })
}

fn check_10_9(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.qconds[0];
    premise!(is_q_condition(u, p), "p not a condition");
    let chosen: Vec<u32> = x.idx[0].iter().collect();
    premise!(chosen.len() == x.conds.len() && !chosen.is_empty(), "replacement map malformed");
    let repl: BTreeMap<u32, PCondition> = chosen.into_iter().zip(x.conds.iter().cloned()).collect();
    for (i, r) in &repl {
        premise!(p.big_f.get(i).is_some_and(|c| leq_p(r, c)), "replacement at {i} not below");
        premise!(r.s_index == Some(*i) && is_condition(u, r), "replacement at {i} not a condition over S_{i}");
    }
    let r = must!(lower_coordinates(p, &repl), "lowering");
    claim!(is_q_condition(u, &r), "lowered not a condition: {}", first_q_violation(u, &r).unwrap_or_default());
    claim!(leq_q(&r, p), "lowered ≰ p");
    claim!(r.a == p.a && r.dom() == p.dom(), "A or dom F changed");
    Verdict::Pass
}

/// Slots: `qconds = [p, q]` with `q ≤ p`, `ords[0] = i`, `conds[0]` a strengthening of `F_q(i)`.
fn gen_10_11(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let p = random_q(&u, rng, None)?;
    let k = steps(rng);
    let q = strengthen_q(&u, rng, &p, None, k, true);
    let i = pick(rng, &q.dom().iter().collect::<Vec<_>>())?;
    let cur = q.big_f[&i].clone();
    let n = steps(rng);
    let r = walk(&u, rng, cur.clone(), None, n, &|c| leq_p(c, &cur));
    case(u, Inputs { qconds: vec![p, q], ords: vec![OrdinalValue::Fin(i)], conds: vec![r], ..Default::default() })
}

fn check_10_11(u: &Universe, x: &Inputs) -> Verdict {
    let (p, q, i, r) = (&x.qconds[0], &x.qconds[1], x.fin(0), &x.conds[0]);
    premise!(is_q_condition(u, p) && is_q_condition(u, q) && leq_q(q, p), "not q ≤ p");
    premise!(q.dom().contains(i), "i ∉ dom F_q");
    let top = must!(project_coordinate(&QCondition::default(), i), "projection of the maximum");
    claim!(top == PCondition::empty(Some(i)), "maximum does not project to the maximum");
    let pq = must!(project_coordinate(q, i), "π_i(q)");
    if p.dom().contains(i) {
        let pp = must!(project_coordinate(p, i), "π_i(p)");
        claim!(leq_p(&pq, &pp), "π_i(q) ≰ π_i(p)");
    }
    premise!(is_condition(u, r) && leq_p(r, &pq), "r not a condition below π_i(q)");
    let lifted = must!(lower_coordinates(q, &BTreeMap::from([(i, r.clone())])), "lifting r");
    claim!(is_q_condition(u, &lifted), "lift not a condition: {}", first_q_violation(u, &lifted).unwrap_or_default());
    claim!(leq_q(&lifted, q), "lift ≰ q");
    claim!(must!(project_coordinate(&lifted, i), "π_i(lift)") == *r, "lift does not project to r");
    Verdict::Pass
}

// Dense classes and restriction. Slots: `containers[0]` the model, `qconds[0]` in its class.

fn dclass_seed(u: &Universe, rng: &mut Rng8, n: Container) -> Option<QCondition> {
    let must = match n {
        Container::C(c) => CSet::singleton(c),
        Container::U(_) => CSet::EMPTY,
    };
    let q = random_q_with(u, rng, None, must)?;
    into_dclass(u, &q, n)
}

fn simple_containers(u: &Universe) -> Vec<Container> {
    u.cids()
        .filter(|&n| u.cm(n).simple && roomy(u, n))
        .map(Container::C)
        .chain(u.uids().filter(|&p| u.um(p).simple).map(Container::U))
        .collect()
}

fn draw_dclass_q(rng: &mut Rng8) -> Option<(Universe, Container, QCondition)> {
    let (u, n) = draw_with(rng, 6, simple_containers)?;
    let q = dclass_seed(&u, rng, n)?;
    Some((u, n, q))
}

fn gen_dclass(rng: &mut Rng8) -> Option<Case> {
    let (u, n, q) = draw_dclass_q(rng)?;
    case(u, Inputs { containers: vec![n], qconds: vec![q], ..Default::default() })
}

fn gen_dclass_fresh(rng: &mut Rng8) -> Option<Case> {
    let (u, n, q) = draw_dclass_q(rng)?;
    let xs = random_subset(rng, &free_indices(&u, &q));
    case(u, Inputs { containers: vec![n], qconds: vec![q], idx: vec![xs], ..Default::default() })
}

fn class_premise(u: &Universe, q: &QCondition, n: Container) -> Result<(), String> {
    if !u.is_simple(n) {
        return Err("model not simple".into());
    }
    if !is_q_condition(u, q) {
        return Err("not a condition".into());
    }
    if !in_dnq(u, q, n) {
        return Err("not in the dense class".into());
    }
    Ok(())
}

macro_rules! class_input {
    ($u:expr, $q:expr, $n:expr) => {
        if let Err(why) = class_premise($u, $q, $n) {
            return Verdict::Vacuous(why);
        }
    };
}

fn check_11_6(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, xs) = (x.containers[0], &x.qconds[0], x.idx[0]);
    class_input!(u, q, n);
    premise!(!xs.is_empty() && xs.inter(q.dom()).is_empty(), "x not fresh");
    let r = must!(uplus(u, q, xs), "q ⊎ x");
    claim!(
        in_dnq(u, &r, n),
        "q ⊎ x left the dense class: {}",
        scf_core::product::dclass_failure(u, &r, n).unwrap_or_default()
    );
    Verdict::Pass
}

fn check_11_12(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q) = (x.containers[0], &x.qconds[0]);
    class_input!(u, q, n);
    let r = must!(restrict_q(u, q, n), "q ↾ N");
    claim!(is_q_condition(u, &r), "q ↾ N not a condition: {}", first_q_violation(u, &r).unwrap_or_default());
    claim!(q_not_in(u, &r, n).is_none(), "q ↾ N ∉ N: {}", q_not_in(u, &r, n).unwrap_or_default());
    claim!(leq_q(q, &r), "q ≰ q ↾ N: {}", q_leq_witness(q, &r));
    Verdict::Pass
}

/// Part in `ords[0]`; `qconds = [p, q]` with `q ≤ p`.
fn gen_11_13(rng: &mut Rng8) -> Option<Case> {
    let (u, n) = draw_with(rng, 6, simple_containers)?;
    let part = rng.gen_range(1..=2u32);
    let p = if part == 1 { random_q(&u, rng, Some(n))? } else { dclass_seed(&u, rng, n)? };
    let k = steps(rng);
    let q = strengthen_q(&u, rng, &p, None, k, true);
    let q = match n {
        Container::C(c) if !q.a.contains(c) => {
            crate::gen::add_model_q(&u, &q, c, true).filter(|c| is_q_condition(&u, c) && leq_q(c, &p))?
        }
        _ => q,
    };
    let q = into_dclass(&u, &q, n)?;
    case(
        u,
        Inputs { containers: vec![n], ords: vec![OrdinalValue::Fin(part)], qconds: vec![p, q], ..Default::default() },
    )
}

fn check_11_13(u: &Universe, x: &Inputs) -> Verdict {
    let (n, part) = (x.containers[0], x.fin(0));
    let (p, q) = (&x.qconds[0], &x.qconds[1]);
    premise!(is_q_condition(u, p), "p not a condition");
    class_input!(u, q, n);
    premise!(leq_q(q, p), "q ≰ p");
    let qr = must!(restrict_q(u, q, n), "q ↾ N");
    match part {
        1 => {
            premise!(q_not_in(u, p, n).is_none(), "p ∉ N");
            claim!(leq_q(&qr, p), "q ↾ N ≰ p: {}", q_leq_witness(&qr, p));
        }
        2 => {
            premise!(in_dnq(u, p, n), "p not in the dense class");
            let pr = must!(restrict_q(u, p, n), "p ↾ N");
            claim!(leq_q(&qr, &pr), "q ↾ N ≰ p ↾ N: {}", q_leq_witness(&qr, &pr));
        }
        _ => return Verdict::Vacuous("unknown part".into()),
    }
    Verdict::Pass
}

fn check_11_17(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, xs) = (x.containers[0], &x.qconds[0], x.idx[0]);
    class_input!(u, q, n);
    premise!(!xs.is_empty() && xs.inter(q.dom()).is_empty(), "x not fresh");
    let qx = must!(uplus(u, q, xs), "q ⊎ x");
    let lhs = must!(restrict_q(u, &qx, n), "(q ⊎ x) ↾ N");
    let qr = must!(restrict_q(u, q, n), "q ↾ N");
    let rhs = must!(uplus(u, &qr, xs.inter(u.index_set(n))), "(q ↾ N) ⊎ (x ∩ N)");
    claim!(lhs == rhs, "{}", describe_q_difference(&lhs, &rhs));
    Verdict::Pass
}

// Product amalgams. Slots: `containers[0]` the model, `qconds = [q, w]`.

fn gen_amalg_q(rng: &mut Rng8, fresh: bool) -> Option<Case> {
    let (u, n, q) = draw_dclass_q(rng)?;
    let qr = restrict_q(&u, &q, n).ok()?;
    let k = steps(rng);
    let w = strengthen_q(&u, rng, &qr, Some(n), k, fresh);
    case(u, Inputs { containers: vec![n], qconds: vec![q, w], ..Default::default() })
}

fn gen_amalg_plain(rng: &mut Rng8) -> Option<Case> {
    gen_amalg_q(rng, false)
}

fn gen_amalg_fresh(rng: &mut Rng8) -> Option<Case> {
    gen_amalg_q(rng, true)
}

fn amalg_premise(u: &Universe, n: Container, q: &QCondition, w: &QCondition) -> Result<QCondition, String> {
    class_premise(u, q, n)?;
    if !is_q_condition(u, w) {
        return Err("w not a condition".into());
    }
    if let Some(why) = q_not_in(u, w, n) {
        return Err(format!("w not in the model: {why}"));
    }
    let qr = restrict_q(u, q, n).map_err(|e| e.to_string())?;
    if !leq_q(w, &qr) {
        return Err("w ≰ q ↾ N".into());
    }
    Ok(qr)
}

macro_rules! amalg_input {
    ($u:expr, $n:expr, $q:expr, $w:expr) => {
        match amalg_premise($u, $n, $q, $w) {
            Ok(v) => v,
            Err(why) => return Verdict::Vacuous(why),
        }
    };
}

fn check_11_14(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, w) = (x.containers[0], &x.qconds[0], &x.qconds[1]);
    let _ = amalg_input!(u, n, q, w);
    claim!(q.a.inter(u.models_in(n)).is_subset(w.a), "A_q ∩ N ⊄ A_w");
    let inside = q.dom().inter(u.index_set(n));
    claim!(inside.is_subset(w.dom()), "dom F_q ∩ N ⊄ dom F_w");
    for i in inside.iter() {
        let ci = &q.big_f[&i];
        let r = must!(
            match n {
                Container::C(c) => scf_core::single::restrict_countable(u, ci, c),
                Container::U(p) => scf_core::single::restrict_uncountable(u, ci, p),
            },
            "F_q(i) ↾ N"
        );
        claim!(leq_p(&w.big_f[&i], &r), "F_w({i}) ≰ F_q({i}) ↾ N");
    }
    Verdict::Pass
}

fn check_11_16(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, w) = (x.containers[0], &x.qconds[0], &x.qconds[1]);
    let _ = amalg_input!(u, n, q, w);
    premise!(w.dom().is_subset(q.dom()), "dom F_w ⊄ dom F_q");
    let s = must!(oplus_q(u, w, q, n), "w ⊕ q");
    claim!(is_q_condition(u, &s), "w ⊕ q not a condition: {}", first_q_violation(u, &s).unwrap_or_default());
    claim!(leq_q(&s, w), "w ⊕ q ≰ w: {}", q_leq_witness(&s, w));
    claim!(leq_q(&s, q), "w ⊕ q ≰ q: {}", q_leq_witness(&s, q));
    claim!(s.dom() == q.dom(), "dom F ≠ dom F_q");
    Verdict::Pass
}

fn check_11_18(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, w) = (x.containers[0], &x.qconds[0], &x.qconds[1]);
    let _ = amalg_input!(u, n, q, w);
    let xs = w.dom().diff(q.dom());
    premise!(!xs.is_empty(), "dom F_w ⊆ dom F_q");
    let qx = must!(uplus(u, q, xs), "q ⊎ x");
    claim!(in_dnq(u, &qx, n), "q ⊎ x left the dense class");
    let qxr = must!(restrict_q(u, &qx, n), "(q ⊎ x) ↾ N");
    claim!(leq_q(w, &qxr), "w ≰ (q ⊎ x) ↾ N: {}", q_leq_witness(w, &qxr));
    let out = must!(oplus_q_traced(u, w, q, n), "w ⊕ q");
    claim!(out.uplus_indices == xs, "recorded fresh indices differ from dom F_w \\ dom F_q");
    let s = out.condition;
    claim!(is_q_condition(u, &s), "w ⊕ q not a condition: {}", first_q_violation(u, &s).unwrap_or_default());
    claim!(leq_q(&s, w), "w ⊕ q ≰ w: {}", q_leq_witness(&s, w));
    claim!(leq_q(&s, &qx), "w ⊕ q ≰ q ⊎ x: {}", q_leq_witness(&s, &qx));
    claim!(leq_q(&s, q), "w ⊕ q ≰ q: {}", q_leq_witness(&s, q));
    Verdict::Pass
}

/// `qconds = [r, v, w]` with `w ≤ v ≤ r ↾ N`.
fn gen_12_1(rng: &mut Rng8) -> Option<Case> {
    let (u, n, r) = draw_dclass_q(rng)?;
    let rn = restrict_q(&u, &r, n).ok()?;
    let k = steps(rng);
    let v = strengthen_q(&u, rng, &rn, Some(n), k, false);
    let k = steps(rng);
    let w = strengthen_q(&u, rng, &v, Some(n), k, false);
    case(u, Inputs { containers: vec![n], qconds: vec![r, v, w], ..Default::default() })
}

fn check_12_1(u: &Universe, x: &Inputs) -> Verdict {
    let n = x.containers[0];
    let (r, v, w) = (&x.qconds[0], &x.qconds[1], &x.qconds[2]);
    let _ = amalg_input!(u, n, r, v);
    premise!(is_q_condition(u, w) && q_not_in(u, w, n).is_none() && leq_q(w, v), "w not a condition in N below v");
    premise!(w.dom().is_subset(r.dom()), "dom F_w ⊄ dom F_r");
    let wr = must!(oplus_q(u, w, r, n), "w ⊕ r");
    let vr = must!(oplus_q(u, v, r, n), "v ⊕ r");
    claim!(leq_q(&wr, &vr), "w ⊕ r ≰ v ⊕ r: {}", q_leq_witness(&wr, &vr));
    Verdict::Pass
}

// Nested simple models N and P ∈ N. Slots: `models[0] = N`, `bigs[0] = P`, `qconds[0] = p`.

fn joint_class(u: &Universe, p: &QCondition, n: CId, q: UId) -> Option<QCondition> {
    let mut s = p.clone();
    for _ in 0..6 {
        s = into_dclass(u, &s, Container::C(n))?;
        s = into_dclass(u, &s, Container::U(q))?;
        if in_dnq(u, &s, Container::C(n)) {
            return Some(s);
        }
    }
    None
}

fn cut_outside(u: &Universe, q: UId) -> bool {
    let cut = u.um(q).cut;
    u.index_set(Container::U(q)).iter().all(|i| !u.stationary(Some(i)).contains(cut))
}

fn draw_nested_q(rng: &mut Rng8, avoid_cut: bool) -> Option<(Universe, CId, UId, QCondition)> {
    let (u, (n, q)) = draw_with(rng, 10, |u| {
        nested_simple(u).into_iter().filter(|&(n, q)| roomy(u, n) && (!avoid_cut || cut_outside(u, q))).collect()
    })?;
    let p = random_q_with(&u, rng, None, CSet::singleton(n))?;
    let p = joint_class(&u, &p, n, q)?;
    Some((u, n, q, p))
}

fn gen_nested(rng: &mut Rng8) -> Option<Case> {
    let (u, n, q, p) = draw_nested_q(rng, false)?;
    case(u, Inputs { models: vec![n], bigs: vec![q], qconds: vec![p], ..Default::default() })
}

fn gen_12_2(rng: &mut Rng8) -> Option<Case> {
    let (u, (n, q)) = draw_with(rng, 10, nested_simple)?;
    let p = random_q_with(&u, rng, None, CSet::singleton(n))?;
    case(u, Inputs { models: vec![n], bigs: vec![q], qconds: vec![p], ..Default::default() })
}

fn check_12_2(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, p) = (x.models[0], x.bigs[0], &x.qconds[0]);
    premise!(is_q_condition(u, p) && p.a.contains(n), "p not a condition with N ∈ A");
    premise!(u.cm(n).simple && u.um(q).simple, "models not simple");
    let Some(s) = joint_class(u, p, n, q) else {
        return Verdict::Fail("joint closure did not reach D(N) ∩ D(P)".into());
    };
    claim!(is_q_condition(u, &s), "not a condition: {}", first_q_violation(u, &s).unwrap_or_default());
    claim!(leq_q(&s, p), "not below p");
    claim!(in_dnq(u, &s, Container::C(n)) && in_dnq(u, &s, Container::U(q)), "not in D(N) ∩ D(P)");
    Verdict::Pass
}

struct NestedQ<'a> {
    n: Container,
    q: Container,
    nq: Container,
    p: &'a QCondition,
}

fn nested_premise<'a>(u: &Universe, x: &'a Inputs) -> Result<NestedQ<'a>, String> {
    let (n, q, p) = (x.models[0], x.bigs[0], &x.qconds[0]);
    if !(u.cm(n).simple && u.um(q).simple && u.u_in_c(q, n)) {
        return Err("N, P not nested simple models".into());
    }
    let (nc, qc) = (Container::C(n), Container::U(q));
    if !is_q_condition(u, p) || !in_dnq(u, p, nc) || !in_dnq(u, p, qc) {
        return Err("p ∉ D(N) ∩ D(P)".into());
    }
    let nq = u.meet_containers(nc, qc).map_err(|e| e.to_string())?;
    Ok(NestedQ { n: nc, q: qc, nq, p })
}

macro_rules! nested_input {
    ($u:expr, $x:expr) => {
        match nested_premise($u, $x) {
            Ok(v) => v,
            Err(why) => return Verdict::Vacuous(why),
        }
    };
}

fn check_12_3(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let pn = must!(restrict_q(u, c.p, c.n), "p ↾ N");
    let pq = must!(restrict_q(u, c.p, c.q), "p ↾ P");
    claim!(in_dnq(u, &pn, c.q), "p ↾ N ∉ D(P): {}", scf_core::product::dclass_failure(u, &pn, c.q).unwrap_or_default());
    claim!(
        in_dnq(u, &pq, c.nq),
        "p ↾ P ∉ D(N ∩ P): {}",
        scf_core::product::dclass_failure(u, &pq, c.nq).unwrap_or_default()
    );
    Verdict::Pass
}

fn check_12_4(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let pn = must!(restrict_q(u, c.p, c.n), "p ↾ N");
    let pq = must!(restrict_q(u, c.p, c.q), "p ↾ P");
    let lhs = must!(restrict_q(u, &pn, c.q), "(p ↾ N) ↾ P");
    let rhs = must!(restrict_q(u, &pq, c.nq), "(p ↾ P) ↾ (N ∩ P)");
    claim!(lhs == rhs, "{}", describe_q_difference(&lhs, &rhs));
    Verdict::Pass
}

/// Adds `q ∈ N ∩ D(P)` with `q ≤ p ↾ N` and `dom F_q ⊆ dom F_p` as `qconds[1]`.
fn gen_nested_below(rng: &mut Rng8, avoid_cut: bool) -> Option<Case> {
    let (u, n, q, p) = draw_nested_q(rng, avoid_cut)?;
    let (nc, qc) = (Container::C(n), Container::U(q));
    let pn = restrict_q(&u, &p, nc).ok()?;
    let k = steps(rng);
    let w = strengthen_q(&u, rng, &pn, Some(nc), k, false);
    let ok = |c: &QCondition| {
        is_q_condition(&u, c)
            && q_not_in(&u, c, nc).is_none()
            && leq_q(c, &pn)
            && in_dnq(&u, c, qc)
            && c.dom().is_subset(p.dom())
    };
    let below = [into_dclass(&u, &w, qc), Some(w), Some(pn.clone())].into_iter().flatten().find(|c| ok(c))?;
    case(u, Inputs { models: vec![n], bigs: vec![q], qconds: vec![p, below], ..Default::default() })
}

fn gen_12_5(rng: &mut Rng8) -> Option<Case> {
    gen_nested_below(rng, false)
}

fn gen_12_6(rng: &mut Rng8) -> Option<Case> {
    gen_nested_below(rng, true)
}

fn below_premise(u: &Universe, c: &NestedQ<'_>, q: &QCondition) -> Result<(), String> {
    let pn = restrict_q(u, c.p, c.n).map_err(|e| e.to_string())?;
    if !is_q_condition(u, q) || q_not_in(u, q, c.n).is_some() || !in_dnq(u, q, c.q) || !leq_q(q, &pn) {
        return Err("q ∉ N ∩ D(P) or q ≰ p ↾ N".into());
    }
    if !q.dom().is_subset(c.p.dom()) {
        return Err("dom F_q ⊄ dom F_p".into());
    }
    Ok(())
}

fn check_12_5(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let q = &x.qconds[1];
    if let Err(why) = below_premise(u, &c, q) {
        return Verdict::Vacuous(why);
    }
    let s = must!(oplus_q(u, q, c.p, c.n), "q ⊕^N p");
    claim!(in_dnq(u, &s, c.q), "q ⊕^N p ∉ D(P): {}", scf_core::product::dclass_failure(u, &s, c.q).unwrap_or_default());
    let qq = must!(restrict_q(u, q, c.q), "q ↾ P");
    claim!(q_not_in(u, &qq, c.n).is_none() && q_not_in(u, &qq, c.q).is_none(), "q ↾ P ∉ N ∩ P");
    let pq = must!(restrict_q(u, c.p, c.q), "p ↾ P");
    let pqn = must!(restrict_q(u, &pq, c.nq), "(p ↾ P) ↾ (N ∩ P)");
    claim!(leq_q(&qq, &pqn), "q ↾ P ≰ (p ↾ P) ↾ (N ∩ P): {}", q_leq_witness(&qq, &pqn));
    Verdict::Pass
}

fn check_12_6(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let Container::U(pu) = c.q else { unreachable!() };
    premise!(cut_outside(u, pu), "P ∩ κ ∈ S_i for some i ∈ P");
    let q = &x.qconds[1];
    if let Err(why) = below_premise(u, &c, q) {
        return Verdict::Vacuous(why);
    }
    let s = must!(oplus_q(u, q, c.p, c.n), "q ⊕^N p");
    let lhs = must!(restrict_q(u, &s, c.q), "(q ⊕^N p) ↾ P");
    let qq = must!(restrict_q(u, q, c.q), "q ↾ P");
    let pq = must!(restrict_q(u, c.p, c.q), "p ↾ P");
    let rhs = must!(oplus_q(u, &qq, &pq, c.nq), "(q ↾ P) ⊕^(N∩P) (p ↾ P)");
    claim!(lhs == rhs, "{}", describe_q_difference(&lhs, &rhs));
    Verdict::Pass
}

pub(super) fn properties() -> Vec<Property> {
    vec![
        Property {
            id: "P-10.8",
            anchor: "10.8: p ⊎ x ∈ ℚ, p ⊎ x ≤ p, x ⊆ dom F, and q ≤ p with x ⊆ dom F_q ⇒ q ≤ p ⊎ x",
            floor: 0.45,
            gen: gen_10_8,
            check: check_10_8,
        },
        Property {
            id: "P-10.9",
            anchor: "10.9: r(i) ≤ F_p(i) on a subset of dom F_p ⇒ the lowered r ∈ ℚ, r ≤ p, A_r = A_p",
            floor: 0.45,
            gen: gen_10_9,
            check: check_10_9,
        },
        Property {
            id: "P-10.11",
            anchor: "10.11: q ≤ p ⇒ π_i(q) ≤ π_i(p); r ≤ π_i(q) lifts to q' ≤ q with π_i(q') = r",
            floor: 0.55,
            gen: gen_10_11,
            check: check_10_11,
        },
        Property {
            id: "P-11.6",
            anchor: "11.6, 11.10: q ∈ D(N) ⇒ q ⊎ x ∈ D(N), and likewise for D(P)",
            floor: 0.45,
            gen: gen_dclass_fresh,
            check: check_11_6,
        },
        Property {
            id: "P-11.12",
            anchor: "11.12: q ∈ D(N) ⇒ q ↾ N ∈ N ∩ ℚ and q ≤ q ↾ N",
            floor: 0.55,
            gen: gen_dclass,
            check: check_11_12,
        },
        Property {
            id: "P-11.13",
            anchor: "11.13: p ∈ N, q ≤ p ⇒ q ↾ N ≤ p; p, q ∈ D(N), q ≤ p ⇒ q ↾ N ≤ p ↾ N",
            floor: 0.45,
            gen: gen_11_13,
            check: check_11_13,
        },
        Property {
            id: "P-11.14",
            anchor: "11.14: w ≤ q ↾ N ⇒ A_q ∩ N ⊆ A_w, dom F_q ∩ N ⊆ dom F_w, F_w(i) ≤ F_q(i) ↾ N",
            floor: 0.55,
            gen: gen_amalg_fresh,
            check: check_11_14,
        },
        Property {
            id: "P-11.16",
            anchor: "11.16: dom F_w ⊆ dom F_q ⇒ w ⊕^N q ∈ ℚ and w ⊕^N q ≤ w, q",
            floor: 0.55,
            gen: gen_amalg_plain,
            check: check_11_16,
        },
        Property {
            id: "P-11.17",
            anchor: "11.17: (q ⊎ x) ↾ N = (q ↾ N) ⊎ (x ∩ N)",
            floor: 0.45,
            gen: gen_dclass_fresh,
            check: check_11_17,
        },
        Property {
            id: "P-11.18",
            anchor: "11.18: x = dom F_w \\ dom F_q ⇒ w ≤ (q ⊎ x) ↾ N and w ⊕^N q ≤ w, q ⊎ x, q",
            floor: 0.35,
            gen: gen_amalg_fresh,
            check: check_11_18,
        },
        Property {
            id: "P-12.1",
            anchor: "12.1: w ≤ v ≤ r ↾ N in N, dom F_w ⊆ dom F_r ⇒ w ⊕^N r ≤ v ⊕^N r",
            floor: 0.55,
            gen: gen_12_1,
            check: check_12_1,
        },
        Property {
            id: "P-12.2",
            anchor: "12.2: N ∈ A_p ⇒ some s ≤ p lies in D(N) ∩ D(P)",
            floor: 0.55,
            gen: gen_12_2,
            check: check_12_2,
        },
        Property {
            id: "P-12.3",
            anchor: "12.3: p ∈ D(N) ∩ D(P) ⇒ p ↾ N ∈ D(P) and p ↾ P ∈ D(N ∩ P)",
            floor: 0.55,
            gen: gen_nested,
            check: check_12_3,
        },
        Property {
            id: "P-12.4",
            anchor: "12.4: (p ↾ N) ↾ P = (p ↾ P) ↾ (N ∩ P)",
            floor: 0.55,
            gen: gen_nested,
            check: check_12_4,
        },
        Property {
            id: "P-12.5",
            anchor: "12.5: q ⊕^N p ∈ D(P) and q ↾ P ≤ (p ↾ P) ↾ (N ∩ P)",
            floor: 0.55,
            gen: gen_12_5,
            check: check_12_5,
        },
        Property {
            id: "P-12.6",
            anchor: "12.6: P ∩ κ ∉ S_i for i ∈ P ⇒ (q ⊕^N p) ↾ P = (q ↾ P) ⊕^(N∩P) (p ↾ P)",
            floor: 0.55,
            gen: gen_12_6,
            check: check_12_6,
        },
    ]
}
