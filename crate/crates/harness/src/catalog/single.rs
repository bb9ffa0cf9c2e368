//! Properties of single conditions: structure, extension, restriction and amalgamation.

use rand::seq::SliceRandom;
use rand::Rng;

use scf_core::adequacy::{closure_under_countable, closure_under_uncountable, is_adequate, r_star, ModelRel};
use scf_core::ordset::{OrdSet, OrdinalValue};
use scf_core::single::{
    adjoin_model, amalg_countable, amalg_uncountable, close_under_n, close_under_q, cond_in, extend_ordinals, in_dn,
    in_dq, is_condition, leq_p, leq_violations, restrict_countable, restrict_uncountable, saturate_g, validate_p,
    Clause, CondError, DomainElement, PCondition,
};
use scf_core::universe::{CId, CSet, Container, UId, Universe};

use super::models::{draw_with, nested_simple, roomy};
use super::{case, claim, given, must, premise, Case, Property, Verdict};
use crate::gen::{
    condition_with_model, draw_universe, into_dn, into_dn_dq, into_dq, pick, random_adequate, random_condition,
    random_s_index, strengthen_inside, walk, Rng8,
};
use crate::inputs::Inputs;

pub(crate) fn restrict(u: &Universe, p: &PCondition, n: Container) -> Result<PCondition, CondError> {
    match n {
        Container::C(c) => restrict_countable(u, p, c),
        Container::U(q) => restrict_uncountable(u, p, q),
    }
}

pub(crate) fn amalg(u: &Universe, w: &PCondition, big: &PCondition, n: Container) -> Result<PCondition, CondError> {
    match n {
        Container::C(c) => amalg_countable(u, w, big, c),
        Container::U(q) => amalg_uncountable(u, w, big, q),
    }
}

pub(crate) fn in_class(u: &Universe, p: &PCondition, n: Container) -> bool {
    match n {
        Container::C(c) => in_dn(u, p, c),
        Container::U(q) => in_dq(u, p, q),
    }
}

fn first_violation(u: &Universe, p: &PCondition) -> Option<String> {
    match validate_p(u, p) {
        Ok(v) => v.first().map(|c| c.to_string()),
        Err(e) => Some(e.to_string()),
    }
}

fn first_leq_violation(q: &PCondition, p: &PCondition) -> Option<String> {
    leq_violations(q, p).first().map(|c| c.to_string())
}

fn steps(rng: &mut Rng8) -> usize {
    rng.gen_range(4..16)
}

fn cond_case(u: Universe, conds: Vec<PCondition>) -> Option<Case> {
    case(u, Inputs { conds, ..Default::default() })
}

fn gen_cond(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let p = random_condition(&u, rng, None)?;
    cond_case(u, vec![p])
}

// Structure of a single condition.

/// A condition with many side models and few extensions, so that `S \ dom f` meets the models.
fn gen_sparse_cond(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let s = random_s_index(&u, rng);
    let a = random_adequate(&u, rng, None, CSet::EMPTY, 6)?;
    let mut p = PCondition::empty(s);
    p.a = a;
    let need = r_star(&u, a).inter(p.s(&u));
    let p = extend_ordinals(&u, &p, need).ok().filter(|q| is_condition(&u, q))?;
    cond_case(u, vec![p])
}

/// A condition whose side models put at least two cuts into some `f(α)`.
fn gen_chain_cond(rng: &mut Rng8) -> Option<Case> {
    for _ in 0..12 {
        let u = draw_universe(rng);
        let s = u.stationary(None);
        let alphas: Vec<u32> =
            s.iter().filter(|&a| u.cids().filter(|&m| u.trace(m).contains(a)).count() >= 2).collect();
        let Some(a) = pick(rng, &alphas) else { continue };
        let mut ms: Vec<CId> = u.cids().filter(|&m| u.trace(m).contains(a)).collect();
        ms.shuffle(rng);
        let mut set = CSet::EMPTY;
        for m in ms {
            if is_adequate(&u, set.with(m)) {
                set.insert(m);
            }
        }
        let cuts: std::collections::BTreeSet<OrdSet> = set.iter().map(|m| u.trace(m).below(a)).collect();
        if cuts.len() < 2 {
            continue;
        }
        let mut p = PCondition::empty(None);
        p.a = set;
        let need = r_star(&u, set).inter(s).union(OrdSet::singleton(a));
        let Some(p) = extend_ordinals(&u, &p, need).ok().filter(|q| is_condition(&u, q)) else { continue };
        let k = rng.gen_range(0..6);
        let p = walk(&u, rng, p, None, k, &|_| true);
        return cond_case(u, vec![p]);
    }
    None
}

/// A condition grown by a long walk, so that chains have several elements.
fn gen_rich_cond(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let p = random_condition(&u, rng, None)?;
    let k = rng.gen_range(10..30);
    let p = walk(&u, rng, p, None, k, &|_| true);
    cond_case(u, vec![p])
}

fn check_4_3(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    premise!(is_condition(u, p), "p not a condition");
    let s = p.s(u);
    for (&z, c) in &p.f {
        for &k in c {
            let inside = match z {
                DomainElement::OrdS(a) => k.last().is_none_or(|m| m < a),
                DomainElement::Set(t) => k.is_subset(t),
            };
            claim!(inside, "{k} ∈ f({z}) but {k} ⊄ {z}");
        }
        if let DomainElement::Set(t) = z {
            for n in u.cids().filter(|&n| u.mem_set(t, n)) {
                for a in s.iter().filter(|&a| t.last().is_some_and(|m| m < a)) {
                    let na = u.trace(n).below(a);
                    claim!(u.hull_set(t, na), "{t} ∈ {} and {t} ⊆ {a} but {t} ∉ Sk({na})", u.cm(n).id);
                }
            }
        }
        let sup = match z {
            DomainElement::OrdS(a) => Some(a),
            DomainElement::Set(t) => t.last(),
        };
        for q in u.uids() {
            if sup.is_some_and(|m| m < u.um(q).cut) {
                claim!(
                    scf_core::single::elem_in(u, z, Container::U(q)),
                    "{z} below the cut of {} but not in it",
                    u.um(q).id
                );
            }
        }
    }
    Verdict::Pass
}

fn check_4_4(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    premise!(is_condition(u, p), "p not a condition");
    premise!(p.f.values().any(|c| c.len() >= 2), "no chain with two elements");
    for (z, c) in &p.f {
        for &a in c {
            for &b in c {
                claim!(u.hull_set(a, b) == (a.last() < b.last()), "in f({z}): {a} ∈ Sk({b}) disagrees with the sups");
                claim!((a == b) == (a.last() == b.last()), "in f({z}): {a}, {b} have equal sups");
            }
        }
    }
    Verdict::Pass
}

fn cuts_at(u: &Universe, p: &PCondition, a: u32) -> Vec<OrdSet> {
    p.a.iter().filter(|&m| u.trace(m).contains(a)).map(|m| u.trace(m).below(a)).collect()
}

fn check_4_5(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    premise!(is_condition(u, p), "p not a condition");
    let free = p.s(u).diff(p.dom_ords());
    premise!(free.iter().any(|a| !cuts_at(u, p, a).is_empty()), "no α ∈ S \\ dom f inside a model of A");
    for a in free.iter() {
        for t in cuts_at(u, p, a) {
            claim!(!p.in_dom(DomainElement::Set(t)), "M ∩ {a} = {t} ∈ dom f although {a} ∉ dom f");
        }
    }
    Verdict::Pass
}

fn check_4_6(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    premise!(is_condition(u, p), "p not a condition");
    let free: Vec<u32> = p.s(u).diff(p.dom_ords()).iter().collect();
    premise!(free.len() >= 2, "fewer than two ordinals in S \\ dom f");
    for (i, &a) in free.iter().enumerate() {
        let ca = cuts_at(u, p, a);
        for t in &ca {
            claim!(!p.in_dom(DomainElement::Set(*t)), "{t} from {a} lies in dom f");
        }
        for &b in &free[i + 1..] {
            for t in cuts_at(u, p, b) {
                claim!(!ca.contains(&t), "{t} arises from both {a} and {b}");
            }
        }
    }
    Verdict::Pass
}

fn gen_4_8(rng: &mut Rng8) -> Option<Case> {
    let Case { universe: u, inputs } = gen_sparse_cond(rng)?;
    let p = inputs.conds.into_iter().next()?;
    let free: Vec<u32> = p.s(&u).diff(p.dom_ords()).iter().collect();
    let mut xs: Vec<u32> = free.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    if xs.is_empty() {
        xs.extend(pick(rng, &free));
    }
    case(u, Inputs { conds: vec![p], ords: xs.into_iter().map(OrdinalValue::Fin).collect(), ..Default::default() })
}

fn check_4_8(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    let xs: OrdSet = x.ords.iter().filter_map(|o| o.fin()).collect();
    premise!(is_condition(u, p), "p not a condition");
    premise!(!xs.is_empty() && xs.is_subset(p.s(u).diff(p.dom_ords())), "x ⊄ S \\ dom f");
    let q = must!(extend_ordinals(u, p, xs), "p + x");
    claim!(is_condition(u, &q), "p + x not a condition: {}", first_violation(u, &q).unwrap_or_default());
    claim!(leq_p(&q, p), "p + x ≰ p: {}", first_leq_violation(&q, p).unwrap_or_default());
    claim!(xs.is_subset(q.dom_ords()), "x ⊄ dom f");
    Verdict::Pass
}

fn check_4_9(u: &Universe, x: &Inputs) -> Verdict {
    let p = &x.conds[0];
    premise!(is_condition(u, p), "p not a condition");
    let q = saturate_g(u, p);
    claim!(is_condition(u, &q), "saturation not a condition: {}", first_violation(u, &q).unwrap_or_default());
    claim!(leq_p(&q, p), "saturation ≰ p: {}", first_leq_violation(&q, p).unwrap_or_default());
    claim!(q.f == p.f && q.a == p.a, "saturation changed f or A");
    for (&y, c) in &q.f {
        for &xk in c {
            let xe = DomainElement::Set(xk);
            for &k in q.chain(xe) {
                claim!(q.g_of(k, xe).is_subset(q.g_of(k, y)), "g({k}, {xk}) ⊄ g({k}, {y})");
            }
        }
    }
    Verdict::Pass
}

// Density of the closure classes.

fn gen_cond_and_big(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let ps: Vec<UId> = u.uids().collect();
    let q = pick(rng, &ps)?;
    let p = random_condition(&u, rng, None)?;
    case(u, Inputs { bigs: vec![q], conds: vec![p], ..Default::default() })
}

fn check_6_1(u: &Universe, x: &Inputs) -> Verdict {
    let (q, p) = (x.bigs[0], &x.conds[0]);
    premise!(is_condition(u, p), "p not a condition");
    let s = must!(close_under_q(u, p, q), "closure under Q");
    claim!(is_condition(u, &s), "closure not a condition: {}", first_violation(u, &s).unwrap_or_default());
    claim!(leq_p(&s, p), "closure ≰ p");
    claim!(in_dq(u, &s, q), "closure not in D_Q");
    let want = must!(closure_under_uncountable(u, p.a, q), "A ∪ {M ∩ Q}");
    claim!(s.a == want, "A_s differs from A ∪ {{M ∩ Q : M ∈ A}}");
    Verdict::Pass
}

fn gen_7_1(rng: &mut Rng8) -> Option<Case> {
    let (u, n) = draw_with(rng, 4, |u| u.cids().filter(|&n| !u.members(n).is_empty()).collect())?;
    let p = random_condition(&u, rng, Some(Container::C(n)))?;
    case(u, Inputs { models: vec![n], conds: vec![p], ..Default::default() })
}

fn check_7_1(u: &Universe, x: &Inputs) -> Verdict {
    let (n, p) = (x.models[0], &x.conds[0]);
    premise!(is_condition(u, p), "p not a condition");
    premise!(cond_in(u, p, Container::C(n)), "p ∉ N");
    let q = must!(adjoin_model(u, p, n), "adjoining N");
    claim!(is_condition(u, &q), "adjoined not a condition: {}", first_violation(u, &q).unwrap_or_default());
    claim!(leq_p(&q, p), "adjoined ≰ p");
    claim!(q.a.contains(n), "N ∉ A");
    Verdict::Pass
}

fn gen_with_model(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let ns: Vec<CId> = u.cids().collect();
    let n = pick(rng, &ns)?;
    let p = condition_with_model(&u, rng, n)?;
    case(u, Inputs { models: vec![n], conds: vec![p], ..Default::default() })
}

fn check_7_2(u: &Universe, x: &Inputs) -> Verdict {
    let (n, p) = (x.models[0], &x.conds[0]);
    premise!(is_condition(u, p) && p.a.contains(n), "p not a condition with N ∈ A");
    let s = must!(close_under_n(u, p, n), "closure under N");
    claim!(is_condition(u, &s), "closure not a condition: {}", first_violation(u, &s).unwrap_or_default());
    claim!(leq_p(&s, p), "closure ≰ p");
    let want = must!(closure_under_countable(u, p.a, n), "A ∪ {M ∩ N}");
    claim!(s.a == want, "A_s differs from A ∪ {{M ∩ N : M < N}}");
    for m in s.a.iter().filter(|&m| u.relation(m, n) == ModelRel::Less) {
        let mn = must!(u.intersect_countable(m, n), "M ∩ N");
        claim!(s.a.contains(mn), "{} ∩ N ∉ A_s", u.cm(m).id);
    }
    Verdict::Pass
}

fn check_7_4(u: &Universe, x: &Inputs) -> Verdict {
    let (n, p) = (x.models[0], &x.conds[0]);
    premise!(is_condition(u, p) && p.a.contains(n), "p not a condition with N ∈ A");
    let s = must!(close_under_n(u, p, n), "closure under N");
    let s = saturate_g(u, &s);
    claim!(is_condition(u, &s), "not a condition: {}", first_violation(u, &s).unwrap_or_default());
    claim!(leq_p(&s, p), "not below p");
    claim!(in_dn(u, &s, n), "not in D_N: {}", scf_core::single::dn_failure(u, &s, n).unwrap_or_default());
    Verdict::Pass
}

// Restrictions.

/// A simple model and a condition in its dense class.
/// Slots: `containers[0]`, `conds[0]`.
fn draw_dclass(rng: &mut Rng8, countable: bool) -> Option<(Universe, Container, PCondition)> {
    let (u, n) = draw_with(rng, 6, |u| {
        if countable {
            u.cids().filter(|&n| u.cm(n).simple && roomy(u, n)).map(Container::C).collect::<Vec<_>>()
        } else {
            u.uids().filter(|&p| u.um(p).simple).map(Container::U).collect()
        }
    })?;
    let p = match n {
        Container::C(nc) => into_dn(&u, &condition_with_model(&u, rng, nc)?, nc)?,
        Container::U(q) => into_dq(&u, &random_condition(&u, rng, None)?, q)?,
    };
    Some((u, n, p))
}

fn gen_dq(rng: &mut Rng8) -> Option<Case> {
    let (u, n, p) = draw_dclass(rng, false)?;
    case(u, Inputs { containers: vec![n], conds: vec![p], ..Default::default() })
}

fn gen_dn(rng: &mut Rng8) -> Option<Case> {
    let (u, n, p) = draw_dclass(rng, true)?;
    case(u, Inputs { containers: vec![n], conds: vec![p], ..Default::default() })
}

fn in_class_premise(u: &Universe, p: &PCondition, n: Container) -> Result<(), String> {
    if !u.is_simple(n) {
        return Err("model not simple".into());
    }
    if !is_condition(u, p) {
        return Err("not a condition".into());
    }
    if !in_class(u, p, n) {
        return Err("not in the dense class".into());
    }
    Ok(())
}

fn check_restriction(u: &Universe, x: &Inputs) -> Verdict {
    let (n, p) = (x.containers[0], &x.conds[0]);
    if let Err(why) = in_class_premise(u, p, n) {
        return Verdict::Vacuous(why);
    }
    let r = must!(restrict(u, p, n), "restriction");
    claim!(is_condition(u, &r), "restriction not a condition: {}", first_violation(u, &r).unwrap_or_default());
    claim!(cond_in(u, &r, n), "restriction not in the model");
    claim!(leq_p(p, &r), "p ≰ p ↾ N: {}", first_leq_violation(p, &r).unwrap_or_default());
    Verdict::Pass
}

/// Monotonicity of restriction to an uncountable `Q`, part in `ords[0]`:
/// part 1 uses `conds = [p, q]`, parts 2 and 3 use `conds = [upper, lower]`.
fn gen_6_6(rng: &mut Rng8) -> Option<Case> {
    let (u, n) = draw_with(rng, 6, |u| u.uids().filter(|&p| u.um(p).simple).collect::<Vec<_>>())?;
    let qc = Container::U(n);
    let part = rng.gen_range(1..=3u32);
    let conds = match part {
        1 => {
            let p = random_condition(&u, rng, Some(qc))?;
            let k = steps(rng);
            let q = walk(&u, rng, p.clone(), None, k, &|c| leq_p(c, &p));
            vec![p, into_dq(&u, &q, n)?]
        }
        2 => {
            let q = into_dq(&u, &random_condition(&u, rng, None)?, n)?;
            let qr = restrict_uncountable(&u, &q, n).ok()?;
            let k = steps(rng);
            let r = walk(&u, rng, qr.clone(), None, k, &|c| leq_p(c, &qr));
            vec![q, into_dq(&u, &r, n)?]
        }
        _ => {
            let p = into_dq(&u, &random_condition(&u, rng, None)?, n)?;
            let k = steps(rng);
            let q = walk(&u, rng, p.clone(), None, k, &|c| leq_p(c, &p));
            vec![p, into_dq(&u, &q, n)?]
        }
    };
    case(u, Inputs { bigs: vec![n], ords: vec![OrdinalValue::Fin(part)], conds, ..Default::default() })
}

fn check_6_6(u: &Universe, x: &Inputs) -> Verdict {
    let (q, part) = (x.bigs[0], x.fin(0));
    let qc = Container::U(q);
    let (a, b) = (&x.conds[0], &x.conds[1]);
    premise!(u.um(q).simple, "Q not simple");
    premise!(is_condition(u, a) && is_condition(u, b), "inputs not conditions");
    match part {
        1 => {
            premise!(cond_in(u, a, qc) && in_dq(u, b, q) && leq_p(b, a), "premises of part 1 fail");
            let r = must!(restrict_uncountable(u, b, q), "q ↾ Q");
            claim!(leq_p(&r, a), "q ↾ Q ≰ p: {}", first_leq_violation(&r, a).unwrap_or_default());
        }
        2 => {
            premise!(in_dq(u, a, q) && in_dq(u, b, q), "not both in D_Q");
            let ar = must!(restrict_uncountable(u, a, q), "q ↾ Q");
            premise!(leq_p(b, &ar), "r ≰ q ↾ Q");
            let br = must!(restrict_uncountable(u, b, q), "r ↾ Q");
            claim!(leq_p(&br, &ar), "r ↾ Q ≰ q ↾ Q: {}", first_leq_violation(&br, &ar).unwrap_or_default());
        }
        3 => {
            premise!(in_dq(u, a, q) && in_dq(u, b, q) && leq_p(b, a), "premises of part 3 fail");
            let ar = must!(restrict_uncountable(u, a, q), "p ↾ Q");
            let br = must!(restrict_uncountable(u, b, q), "q ↾ Q");
            claim!(leq_p(&br, &ar), "q ↾ Q ≰ p ↾ Q: {}", first_leq_violation(&br, &ar).unwrap_or_default());
        }
        _ => return Verdict::Vacuous("unknown part".into()),
    }
    Verdict::Pass
}

fn gen_7_7(rng: &mut Rng8) -> Option<Case> {
    let (u, n) =
        draw_with(rng, 6, |u| u.cids().filter(|&n| u.cm(n).simple && !u.members(n).is_empty()).collect::<Vec<_>>())?;
    let p = random_condition(&u, rng, Some(Container::C(n)))?;
    let start = adjoin_model(&u, &p, n).ok().filter(|q| is_condition(&u, q))?;
    let k = steps(rng);
    let r = walk(&u, rng, start, None, k, &|c| leq_p(c, &p));
    let r = into_dn(&u, &r, n)?;
    case(u, Inputs { models: vec![n], conds: vec![p, r], ..Default::default() })
}

fn check_7_7(u: &Universe, x: &Inputs) -> Verdict {
    let n = x.models[0];
    let (p, r) = (&x.conds[0], &x.conds[1]);
    premise!(u.cm(n).simple, "N not simple");
    premise!(is_condition(u, p) && is_condition(u, r), "inputs not conditions");
    premise!(cond_in(u, p, Container::C(n)) && in_dn(u, r, n) && leq_p(r, p), "premises fail");
    let rr = must!(restrict_countable(u, r, n), "r ↾ N");
    claim!(leq_p(&rr, p), "r ↾ N ≰ p: {}", first_leq_violation(&rr, p).unwrap_or_default());
    Verdict::Pass
}

// Amalgams. Slots: `containers[0]` the model, `conds = [big, w]`.

fn gen_amalg(rng: &mut Rng8, countable: bool) -> Option<Case> {
    let (u, n, big) = draw_dclass(rng, countable)?;
    let br = restrict(&u, &big, n).ok()?;
    let k = steps(rng);
    let w = strengthen_inside(&u, rng, &br, n, k);
    case(u, Inputs { containers: vec![n], conds: vec![big, w], ..Default::default() })
}

fn gen_amalg_q(rng: &mut Rng8) -> Option<Case> {
    gen_amalg(rng, false)
}

fn gen_amalg_n(rng: &mut Rng8) -> Option<Case> {
    gen_amalg(rng, true)
}

struct AmalgInput<'a> {
    n: Container,
    big: &'a PCondition,
    w: &'a PCondition,
    restricted: PCondition,
}

fn amalg_premise<'a>(u: &Universe, x: &'a Inputs) -> Result<AmalgInput<'a>, String> {
    let n = x.containers[0];
    let (big, w) = (&x.conds[0], &x.conds[1]);
    in_class_premise(u, big, n)?;
    if !is_condition(u, w) || !cond_in(u, w, n) {
        return Err("w not a condition in the model".into());
    }
    let restricted = restrict(u, big, n).map_err(|e| e.to_string())?;
    if !leq_p(w, &restricted) {
        return Err("w not below the restriction".into());
    }
    Ok(AmalgInput { n, big, w, restricted })
}

macro_rules! amalg_input {
    ($u:expr, $x:expr) => {
        match amalg_premise($u, $x) {
            Ok(v) => v,
            Err(why) => return Verdict::Vacuous(why),
        }
    };
}

fn check_containment(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let (n, big, w) = (a.n, a.big, a.w);
    claim!(big.a.inter(u.models_in(n)).is_subset(w.a), "A ∩ N ⊄ A_w");
    for (&y, c) in &big.f {
        if !scf_core::single::elem_in(u, y, n) {
            continue;
        }
        claim!(w.in_dom(y), "{y} ∈ dom f ∩ N but ∉ dom f_w");
        for &k in c.iter().filter(|&&k| u.set_in(n, k)) {
            claim!(w.chain_has(y, k), "{k} ∈ f({y}) ∩ N but ∉ f_w({y})");
        }
    }
    for (&(k, y), &v) in &big.g {
        if u.set_in(n, k) && scf_core::single::elem_in(u, y, n) {
            claim!(v.is_subset(w.g_of(k, y)), "g({k}, {y}) ⊄ g_w({k}, {y})");
        }
    }
    Verdict::Pass
}

fn amalgam_of(u: &Universe, a: &AmalgInput<'_>) -> Result<PCondition, Verdict> {
    amalg(u, a.w, a.big, a.n).map_err(|e| Verdict::Fail(format!("amalgam: {e}")))
}

macro_rules! amalgam {
    ($u:expr, $a:expr) => {
        match amalgam_of($u, &$a) {
            Ok(v) => v,
            Err(v) => return v,
        }
    };
}

fn check_sound(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let s = amalgam!(u, a);
    claim!(is_condition(u, &s), "amalgam not a condition: {}", first_violation(u, &s).unwrap_or_default());
    claim!(leq_p(&s, a.w), "amalgam ≰ w: {}", first_leq_violation(&s, a.w).unwrap_or_default());
    claim!(leq_p(&s, a.big), "amalgam ≰ the large condition: {}", first_leq_violation(&s, a.big).unwrap_or_default());
    Verdict::Pass
}

fn check_components_q(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let s = amalgam!(u, a);
    for (y, c) in &a.w.f {
        claim!(s.chain(*y) == c.as_slice(), "f({y}) differs from f_w({y})");
    }
    for (y, c) in &a.big.f {
        claim!(c.iter().all(|k| s.chain_has(*y, *k)), "f_q({y}) ⊄ f({y})");
    }
    Verdict::Pass
}

fn check_dom_trace(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let s = amalgam!(u, a);
    for &y in s.f.keys() {
        let inside = scf_core::single::elem_in(u, y, a.n);
        claim!(inside == a.w.in_dom(y), "{y}: in the model {inside}, in dom f_w {}", a.w.in_dom(y));
    }
    for (&y, c) in &s.f {
        for &k in c {
            let ke = DomainElement::Set(k);
            if a.w.in_dom(ke) && a.w.in_dom(y) {
                claim!(a.w.chain_has(y, k), "{k} ∈ f({y}) but ∉ f_w({y})");
            }
            if a.big.in_dom(ke) && a.big.in_dom(y) {
                claim!(a.big.chain_has(y, k), "{k} ∈ f({y}) but not in the large condition's f({y})");
            }
        }
    }
    Verdict::Pass
}

fn check_clauses(u: &Universe, x: &Inputs, clauses: &[Clause]) -> Verdict {
    let a = amalg_input!(u, x);
    let s = amalgam!(u, a);
    let v = must!(validate_p(u, &s), "validation");
    if let Some(bad) = v.iter().find(|c| clauses.contains(&c.clause)) {
        return Verdict::Fail(format!("amalgam violates {bad}"));
    }
    Verdict::Pass
}

fn check_c2_c3(u: &Universe, x: &Inputs) -> Verdict {
    check_clauses(u, x, &[Clause::C2, Clause::C3])
}

fn check_c2(u: &Universe, x: &Inputs) -> Verdict {
    check_clauses(u, x, &[Clause::C2])
}

fn check_c3(u: &Universe, x: &Inputs) -> Verdict {
    check_clauses(u, x, &[Clause::C3])
}

fn check_c4(u: &Universe, x: &Inputs) -> Verdict {
    check_clauses(u, x, &[Clause::C4])
}

fn check_components_n(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let s = amalgam!(u, a);
    for (y, c) in a.w.f.iter().chain(&a.big.f) {
        claim!(s.in_dom(*y), "{y} missing from dom f");
        claim!(c.iter().all(|k| s.chain_has(*y, *k)), "chain at {y} not contained in f({y})");
    }
    Verdict::Pass
}

fn new_cuts(u: &Universe, a: &AmalgInput<'_>, n: CId) -> Vec<OrdSet> {
    let s = a.big.s(u);
    let mut out = Vec::new();
    for m in a.big.a.iter().filter(|&m| u.relation(n, m).is_le()) {
        for al in u.trace(m).inter(a.w.dom_ords()).inter(s).diff(a.big.dom_ords()).iter() {
            out.push(u.trace(m).below(al));
        }
    }
    out
}

fn check_7_9(u: &Universe, x: &Inputs) -> Verdict {
    let a = amalg_input!(u, x);
    let Container::C(n) = a.n else {
        return Verdict::Vacuous("model not countable".into());
    };
    let _ = &a.restricted;
    for t in new_cuts(u, &a, n) {
        let te = DomainElement::Set(t);
        claim!(!u.mem_set(t, n), "{t} ∈ N");
        claim!(!a.w.in_dom(te), "{t} ∈ dom f_w");
        claim!(!a.big.in_dom(te), "{t} ∈ dom f_r");
    }
    Verdict::Pass
}

fn check_7_10(u: &Universe, x: &Inputs) -> Verdict {
    let r = &x.conds[0];
    premise!(is_condition(u, r), "r not a condition");
    let on = r.dom_ords().inter(r.s(u));
    premise!(r.a.iter().any(|n| !u.trace(n).inter(on).is_empty()), "no α ∈ dom f ∩ S inside a model of A");
    for n in r.a.iter() {
        let tn = u.trace(n);
        for (&y, c) in &r.f {
            let hits: Vec<u32> = tn
                .inter(on)
                .iter()
                .filter(|&al| {
                    let t = tn.below(al);
                    c.contains(&t) || y == DomainElement::Set(t)
                })
                .collect();
            claim!(hits.len() <= 1, "{} ∩ α ∈ f({y}) ∪ {{{y}}} for α ∈ {hits:?}", u.cm(n).id);
        }
    }
    Verdict::Pass
}

// Monotonicity of the amalgam in w.

fn gen_8_1(rng: &mut Rng8) -> Option<Case> {
    let (u, n, r) = draw_dclass(rng, true)?;
    let rn = restrict(&u, &r, n).ok()?;
    let k = steps(rng);
    let v = strengthen_inside(&u, rng, &rn, n, k);
    let k = steps(rng);
    let w = strengthen_inside(&u, rng, &v, n, k);
    case(u, Inputs { containers: vec![n], conds: vec![r, v, w], ..Default::default() })
}

fn check_8_1(u: &Universe, x: &Inputs) -> Verdict {
    let n = x.containers[0];
    let (r, v, w) = (&x.conds[0], &x.conds[1], &x.conds[2]);
    if let Err(why) = in_class_premise(u, r, n) {
        return Verdict::Vacuous(why);
    }
    let rn = given!(restrict(u, r, n), "r ↾ N");
    premise!(is_condition(u, v) && is_condition(u, w), "v or w not a condition");
    premise!(cond_in(u, v, n) && cond_in(u, w, n), "v or w not in N");
    premise!(leq_p(w, v) && leq_p(v, &rn), "not w ≤ v ≤ r ↾ N");
    let t = must!(amalg(u, w, r, n), "w ⊕ r");
    let s = must!(amalg(u, v, r, n), "v ⊕ r");
    claim!(leq_p(&t, &s), "w ⊕ r ≰ v ⊕ r: {}", first_leq_violation(&t, &s).unwrap_or_default());
    Verdict::Pass
}

// Nested simple models N and Q ∈ N. Slots: `models[0] = N`, `bigs[0] = Q`, `conds[0] = p`.

fn draw_nested(rng: &mut Rng8, avoid_cut: bool) -> Option<(Universe, CId, UId, PCondition)> {
    let (u, (n, q)) = draw_with(rng, 10, |u| {
        nested_simple(u)
            .into_iter()
            .filter(|&(n, q)| roomy(u, n) && (!avoid_cut || !u.stationary(None).contains(u.um(q).cut)))
            .collect()
    })?;
    let p = condition_with_model(&u, rng, n)?;
    let p = into_dn_dq(&u, &p, n, q)?;
    Some((u, n, q, p))
}

fn gen_nested(rng: &mut Rng8) -> Option<Case> {
    let (u, n, q, p) = draw_nested(rng, false)?;
    case(u, Inputs { models: vec![n], bigs: vec![q], conds: vec![p], ..Default::default() })
}

fn gen_8_2(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let ns: Vec<CId> = u.cids().collect();
    let qs: Vec<UId> = u.uids().collect();
    let (n, q) = (pick(rng, &ns)?, pick(rng, &qs)?);
    let p = condition_with_model(&u, rng, n)?;
    case(u, Inputs { models: vec![n], bigs: vec![q], conds: vec![p], ..Default::default() })
}

fn check_8_2(u: &Universe, x: &Inputs) -> Verdict {
    let (n, q, p) = (x.models[0], x.bigs[0], &x.conds[0]);
    premise!(is_condition(u, p) && p.a.contains(n), "p not a condition with N ∈ A");
    let s = must!(close_under_n(u, p, n), "closure under N");
    let s = must!(close_under_q(u, &s, q), "closure under Q");
    let s = saturate_g(u, &s);
    claim!(is_condition(u, &s), "not a condition: {}", first_violation(u, &s).unwrap_or_default());
    claim!(leq_p(&s, p), "not below p");
    claim!(in_dn(u, &s, n), "not in D_N: {}", scf_core::single::dn_failure(u, &s, n).unwrap_or_default());
    claim!(in_dq(u, &s, q), "not in D_Q: {}", scf_core::single::dq_failure(u, &s, q).unwrap_or_default());
    Verdict::Pass
}

struct Nested<'a> {
    n: CId,
    q: UId,
    nq: CId,
    p: &'a PCondition,
}

fn nested_premise<'a>(u: &Universe, x: &'a Inputs) -> Result<Nested<'a>, String> {
    let (n, q, p) = (x.models[0], x.bigs[0], &x.conds[0]);
    if !(u.cm(n).simple && u.um(q).simple && u.u_in_c(q, n)) {
        return Err("N, Q not nested simple models".into());
    }
    if !is_condition(u, p) || !in_dn(u, p, n) || !in_dq(u, p, q) {
        return Err("p ∉ D_N ∩ D_Q".into());
    }
    let nq = u.intersect_uncountable(n, q).map_err(|e| e.to_string())?;
    Ok(Nested { n, q, nq, p })
}

macro_rules! nested_input {
    ($u:expr, $x:expr) => {
        match nested_premise($u, $x) {
            Ok(v) => v,
            Err(why) => return Verdict::Vacuous(why),
        }
    };
}

fn check_8_3(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let pn = must!(restrict_countable(u, c.p, c.n), "p ↾ N");
    let pq = must!(restrict_uncountable(u, c.p, c.q), "p ↾ Q");
    claim!(in_dq(u, &pn, c.q), "p ↾ N ∉ D_Q: {}", scf_core::single::dq_failure(u, &pn, c.q).unwrap_or_default());
    claim!(in_dn(u, &pq, c.nq), "p ↾ Q ∉ D_(N∩Q): {}", scf_core::single::dn_failure(u, &pq, c.nq).unwrap_or_default());
    Verdict::Pass
}

fn check_8_4(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let pn = must!(restrict_countable(u, c.p, c.n), "p ↾ N");
    let pq = must!(restrict_uncountable(u, c.p, c.q), "p ↾ Q");
    let lhs = must!(restrict_uncountable(u, &pn, c.q), "(p ↾ N) ↾ Q");
    let rhs = must!(restrict_countable(u, &pq, c.nq), "(p ↾ Q) ↾ (N ∩ Q)");
    claim!(lhs == rhs, "(p ↾ N) ↾ Q ≠ (p ↾ Q) ↾ (N ∩ Q)");
    Verdict::Pass
}

/// Adds `q ∈ N ∩ D_Q` with `q ≤ p ↾ N` as `conds[1]`.
fn gen_nested_below(rng: &mut Rng8, avoid_cut: bool) -> Option<Case> {
    let (u, n, q, p) = draw_nested(rng, avoid_cut)?;
    let nc = Container::C(n);
    let pn = restrict_countable(&u, &p, n).ok()?;
    let k = steps(rng);
    let w = strengthen_inside(&u, rng, &pn, nc, k);
    let ok = |c: &PCondition| is_condition(&u, c) && cond_in(&u, c, nc) && leq_p(c, &pn) && in_dq(&u, c, q);
    let below = [close_under_q(&u, &w, q).ok(), Some(w), Some(pn.clone())].into_iter().flatten().find(|c| ok(c))?;
    case(u, Inputs { models: vec![n], bigs: vec![q], conds: vec![p, below], ..Default::default() })
}

fn gen_8_5(rng: &mut Rng8) -> Option<Case> {
    gen_nested_below(rng, false)
}

fn gen_8_6(rng: &mut Rng8) -> Option<Case> {
    gen_nested_below(rng, true)
}

fn below_premise(u: &Universe, c: &Nested<'_>, q: &PCondition) -> Result<PCondition, String> {
    let pn = restrict_countable(u, c.p, c.n).map_err(|e| e.to_string())?;
    if !is_condition(u, q) || !cond_in(u, q, Container::C(c.n)) || !in_dq(u, q, c.q) || !leq_p(q, &pn) {
        return Err("q ∉ N ∩ D_Q or q ≰ p ↾ N".into());
    }
    Ok(pn)
}

fn check_8_5(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let q = &x.conds[1];
    if let Err(why) = below_premise(u, &c, q) {
        return Verdict::Vacuous(why);
    }
    let s = must!(amalg_countable(u, q, c.p, c.n), "q ⊕_N p");
    claim!(in_dq(u, &s, c.q), "q ⊕_N p ∉ D_Q: {}", scf_core::single::dq_failure(u, &s, c.q).unwrap_or_default());
    let qq = must!(restrict_uncountable(u, q, c.q), "q ↾ Q");
    claim!(cond_in(u, &qq, Container::C(c.n)) && cond_in(u, &qq, Container::U(c.q)), "q ↾ Q ∉ N ∩ Q");
    let pq = must!(restrict_uncountable(u, c.p, c.q), "p ↾ Q");
    let pqn = must!(restrict_countable(u, &pq, c.nq), "(p ↾ Q) ↾ (N ∩ Q)");
    claim!(leq_p(&qq, &pqn), "q ↾ Q ≰ (p ↾ Q) ↾ (N ∩ Q): {}", first_leq_violation(&qq, &pqn).unwrap_or_default());
    Verdict::Pass
}

fn check_8_6(u: &Universe, x: &Inputs) -> Verdict {
    let c = nested_input!(u, x);
    let q = &x.conds[1];
    premise!(!c.p.s(u).contains(u.um(c.q).cut), "Q ∩ κ ∈ S");
    if let Err(why) = below_premise(u, &c, q) {
        return Verdict::Vacuous(why);
    }
    let s = must!(amalg_countable(u, q, c.p, c.n), "q ⊕_N p");
    let lhs = must!(restrict_uncountable(u, &s, c.q), "(q ⊕_N p) ↾ Q");
    let qq = must!(restrict_uncountable(u, q, c.q), "q ↾ Q");
    let pq = must!(restrict_uncountable(u, c.p, c.q), "p ↾ Q");
    let rhs = must!(amalg_countable(u, &qq, &pq, c.nq), "(q ↾ Q) ⊕_(N∩Q) (p ↾ Q)");
    claim!(lhs == rhs, "{}", describe_difference(&lhs, &rhs));
    Verdict::Pass
}

pub(crate) fn describe_difference(l: &PCondition, r: &PCondition) -> String {
    if l.a != r.a {
        return format!("A differs: {:?} vs {:?}", l.a, r.a);
    }
    for y in l.f.keys().chain(r.f.keys()) {
        if l.f.get(y) != r.f.get(y) {
            return format!("f({y}) differs: {:?} vs {:?}", l.f.get(y), r.f.get(y));
        }
    }
    for k in l.g.keys().chain(r.g.keys()) {
        if l.g.get(k) != r.g.get(k) {
            return format!("g({}, {}) differs", k.0, k.1);
        }
    }
    "sides differ".into()
}

pub(super) fn properties() -> Vec<Property> {
    vec![
        Property {
            id: "P-4.3",
            anchor: "4.3: K ∈ f(x) ⇒ K ⊆ x; x ∈ N, x ⊆ α ∈ S ⇒ x ∈ Sk(N ∩ α); sup x < P ∩ κ ⇒ x ∈ P",
            floor: 0.55,
            gen: gen_cond,
            check: check_4_3,
        },
        Property {
            id: "P-4.4",
            anchor: "4.4: for x, y ∈ f(z), x ∈ Sk(y) ⇔ sup x < sup y",
            floor: 0.5,
            gen: gen_chain_cond,
            check: check_4_4,
        },
        Property {
            id: "P-4.5",
            anchor: "4.5: α ∈ S \\ dom f, α ∈ M ∈ A ⇒ M ∩ α ∉ dom f",
            floor: 0.25,
            gen: gen_sparse_cond,
            check: check_4_5,
        },
        Property {
            id: "P-4.6",
            anchor: "4.6: distinct α, β ∈ S \\ dom f give pairwise disjoint dom f, cuts at α, cuts at β",
            floor: 0.4,
            gen: gen_sparse_cond,
            check: check_4_6,
        },
        Property {
            id: "P-4.8",
            anchor: "4.8: x ⊆ S \\ dom f ⇒ p + x is a condition and p + x ≤ p",
            floor: 0.55,
            gen: gen_4_8,
            check: check_4_8,
        },
        Property {
            id: "P-4.9",
            anchor: "4.9: saturating g gives q ≤ p with f, A unchanged and g(K, x) ⊆ g(K, y) along chains",
            floor: 0.55,
            gen: gen_cond,
            check: check_4_9,
        },
        Property {
            id: "P-6.1",
            anchor: "6.1: some s ≤ q has A_s = A_q ∪ {M ∩ Q : M ∈ A_q}",
            floor: 0.55,
            gen: gen_cond_and_big,
            check: check_6_1,
        },
        Property {
            id: "P-6.5",
            anchor: "6.5: q ∈ D_Q ⇒ q ↾ Q ∈ Q ∩ ℙ and q ≤ q ↾ Q",
            floor: 0.55,
            gen: gen_dq,
            check: check_restriction,
        },
        Property {
            id: "P-6.6",
            anchor: "6.6: restriction to Q is monotone (three parts)",
            floor: 0.55,
            gen: gen_6_6,
            check: check_6_6,
        },
        Property {
            id: "P-6.7",
            anchor: "6.7: w ≤ q ↾ Q ⇒ A_q ∩ Q ⊆ A_w and the f, g of q inside Q are kept by w",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_containment,
        },
        Property {
            id: "P-6.9",
            anchor: "6.9: f_w(x) = f(x) and f_q(x) ⊆ f(x) for f = f_w ⊕_Q f_q",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_components_q,
        },
        Property {
            id: "P-6.10",
            anchor: "6.10: dom f ∩ Q = dom f_w and f adds no new membership among old points",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_dom_trace,
        },
        Property {
            id: "P-6.11",
            anchor: "6.11: f_w ⊕_Q f_q meets the domain, chain and coherence requirements",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_c2_c3,
        },
        Property {
            id: "P-6.13",
            anchor: "6.13: g(K, x) ⊆ x \\ sup K for g = g_w ⊕_Q g_q",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_c4,
        },
        Property {
            id: "P-6.15",
            anchor: "6.15: w ⊕_Q q ∈ ℙ and w ⊕_Q q ≤ w, q",
            floor: 0.55,
            gen: gen_amalg_q,
            check: check_sound,
        },
        Property {
            id: "P-7.1",
            anchor: "7.1: p ∈ N ⇒ some q ≤ p has N ∈ A_q",
            floor: 0.55,
            gen: gen_7_1,
            check: check_7_1,
        },
        Property {
            id: "P-7.2",
            anchor: "7.2: N ∈ A_q ⇒ some s ≤ q is closed under M ↦ M ∩ N for M < N",
            floor: 0.55,
            gen: gen_with_model,
            check: check_7_2,
        },
        Property {
            id: "P-7.4",
            anchor: "7.4: N ∈ A_q ⇒ some s ≤ q lies in D_N",
            floor: 0.55,
            gen: gen_with_model,
            check: check_7_4,
        },
        Property {
            id: "P-7.6",
            anchor: "7.6: r ∈ D_N ⇒ r ↾ N ∈ N ∩ ℙ and r ≤ r ↾ N",
            floor: 0.55,
            gen: gen_dn,
            check: check_restriction,
        },
        Property {
            id: "P-7.7",
            anchor: "7.7: r ∈ D_N, p ∈ N, r ≤ p ⇒ r ↾ N ≤ p",
            floor: 0.55,
            gen: gen_7_7,
            check: check_7_7,
        },
        Property {
            id: "P-7.8",
            anchor: "7.8: w ≤ r ↾ N ⇒ A_r ∩ N ⊆ A_w and the f, g of r inside N are kept by w",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_containment,
        },
        Property {
            id: "P-7.9",
            anchor: "7.9: the new cuts M ∩ α of f_w ⊕_N f_r avoid N, dom f_w and dom f_r",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_7_9,
        },
        Property {
            id: "P-7.10",
            anchor: "7.10: at most one α ∈ dom f ∩ S ∩ N has N ∩ α ∈ f(x) ∪ {x}",
            floor: 0.3,
            gen: gen_rich_cond,
            check: check_7_10,
        },
        Property {
            id: "P-7.12",
            anchor: "7.12: dom f_w ∪ dom f_r ⊆ dom f and both f_w, f_r are contained in f",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_components_n,
        },
        Property {
            id: "P-7.13",
            anchor: "7.13: dom f ∩ N = dom f_w and f adds no new membership among old points",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_dom_trace,
        },
        Property {
            id: "P-7.14",
            anchor: "7.14: f_w ⊕_N f_r has well-formed domain and ∈-chain values",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_c2,
        },
        Property {
            id: "P-7.15",
            anchor: "7.15: f(x) ⊆ dom f and f(K) = f(x) ∩ Sk(K) for f = f_w ⊕_N f_r",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_c3,
        },
        Property {
            id: "P-7.17",
            anchor: "7.17: g(K, x) ⊆ x \\ sup K for g = g_w ⊕_N g_r",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_c4,
        },
        Property {
            id: "P-7.19",
            anchor: "7.19: w ⊕_N r ∈ ℙ and w ⊕_N r ≤ w, r",
            floor: 0.55,
            gen: gen_amalg_n,
            check: check_sound,
        },
        Property {
            id: "P-8.1",
            anchor: "8.1: w ≤ v ≤ r ↾ N in N ⇒ w ⊕_N r ≤ v ⊕_N r",
            floor: 0.55,
            gen: gen_8_1,
            check: check_8_1,
        },
        Property {
            id: "P-8.2",
            anchor: "8.2: N ∈ A_p ⇒ some s ≤ p lies in D_N ∩ D_Q",
            floor: 0.55,
            gen: gen_8_2,
            check: check_8_2,
        },
        Property {
            id: "P-8.3",
            anchor: "8.3: p ∈ D_N ∩ D_Q ⇒ p ↾ N ∈ D_Q and p ↾ Q ∈ D_(N∩Q)",
            floor: 0.55,
            gen: gen_nested,
            check: check_8_3,
        },
        Property {
            id: "P-8.4",
            anchor: "8.4: (p ↾ N) ↾ Q = (p ↾ Q) ↾ (N ∩ Q)",
            floor: 0.55,
            gen: gen_nested,
            check: check_8_4,
        },
        Property {
            id: "P-8.5",
            anchor: "8.5: q ⊕_N p ∈ D_Q and q ↾ Q ≤ (p ↾ Q) ↾ (N ∩ Q)",
            floor: 0.55,
            gen: gen_8_5,
            check: check_8_5,
        },
        Property {
            id: "P-8.6",
            anchor: "8.6: Q ∩ κ ∉ S ⇒ (q ⊕_N p) ↾ Q = (q ↾ Q) ⊕_(N∩Q) (p ↾ Q)",
            floor: 0.55,
            gen: gen_8_6,
            check: check_8_6,
        },
    ]
}
