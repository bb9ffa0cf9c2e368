//! Properties of models, adequate sets and remainder sets.

use rand::Rng;

use scf_core::adequacy::{closure_under_countable, closure_under_uncountable, is_adequate, r_star, s_star, ModelRel};
use scf_core::ordset::{OrdSet, OrdinalValue};
use scf_core::single::in_hull;
use scf_core::single::DomainElement;
use scf_core::universe::{CId, CSet, Container, UId, Universe};

use super::{case, claim, given, premise, Case, Property, Verdict};
use crate::gen::{draw_universe, random_adequate, Rng8};
use crate::inputs::Inputs;

/// Draws universes until `cands` finds an instance, then picks one at random.
pub(crate) fn draw_with<T: Clone>(
    rng: &mut Rng8,
    tries: usize,
    cands: impl Fn(&Universe) -> Vec<T>,
) -> Option<(Universe, T)> {
    for _ in 0..tries {
        let u = draw_universe(rng);
        let c = cands(&u);
        if !c.is_empty() {
            let t = c[rng.gen_range(0..c.len())].clone();
            return Some((u, t));
        }
    }
    None
}

fn pairs(u: &Universe) -> Vec<(CId, CId)> {
    u.cids().flat_map(|m| u.cids().map(move |n| (m, n))).collect()
}

fn rel(u: &Universe, m: CId, n: CId) -> ModelRel {
    u.relation(m, n)
}

/// `min((M ∩ κ) \ β_{K,L})`.
fn rem(u: &Universe, m: CId, k: CId, l: CId) -> Option<u32> {
    u.beta_opt(k, l).and_then(|b| u.trace(m).min_at_or_above(b))
}

fn adequate3(u: &Universe, k: CId, m: CId, n: CId) -> bool {
    is_adequate(u, CSet::singleton(k).with(m).with(n))
}

fn models_case(u: Universe, models: Vec<CId>) -> Option<Case> {
    case(u, Inputs { models, ..Default::default() })
}

// M ≤ N gives M ∩ β = M ∩ N ∩ κ = M ∩ N ∩ β.

fn gen_2_15(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, n)) =
        draw_with(rng, 4, |u| pairs(u).into_iter().filter(|&(m, n)| m != n && rel(u, m, n).is_le()).collect())?;
    models_case(u, vec![m, n])
}

fn check_2_15(u: &Universe, x: &Inputs) -> Verdict {
    let (m, n) = (x.models[0], x.models[1]);
    premise!(rel(u, m, n).is_le(), "M ≰ N");
    let b = given!(u.beta(m, n), "β");
    let lhs = u.trace(m).below(b);
    let mid = u.trace(m).inter(u.trace(n));
    claim!(lhs == mid, "M ∩ β = {lhs} but M ∩ N ∩ κ = {mid}");
    claim!(mid.below(b) == mid, "M ∩ N ∩ κ reaches β = {b}");
    Verdict::Pass
}

// A adequate and A ∈ N give A ∪ {N} adequate.

fn gen_2_16(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let ns: Vec<CId> = u.cids().filter(|&n| !u.members(n).is_empty()).collect();
    let n = crate::gen::pick(rng, &ns)?;
    let a = random_adequate(&u, rng, Some(Container::C(n)), CSet::EMPTY, 4)?;
    case(u, Inputs { models: vec![n], sets: vec![a], ..Default::default() })
}

fn check_2_16(u: &Universe, x: &Inputs) -> Verdict {
    let (n, a) = (x.models[0], x.sets[0]);
    premise!(is_adequate(u, a), "A not adequate");
    premise!(a.is_subset(u.members(n)), "A ⊄ N");
    claim!(is_adequate(u, a.with(n)), "A ∪ {{N}} not adequate");
    Verdict::Pass
}

// For adequate {M, N}: M < N iff δ_M < δ_N, and M ∼ N iff δ_M = δ_N.

fn gen_2_17(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, n)) =
        draw_with(rng, 4, |u| pairs(u).into_iter().filter(|&(m, n)| rel(u, m, n) != ModelRel::Incomparable).collect())?;
    models_case(u, vec![m, n])
}

fn check_2_17(u: &Universe, x: &Inputs) -> Verdict {
    let (m, n) = (x.models[0], x.models[1]);
    let r = rel(u, m, n);
    premise!(r != ModelRel::Incomparable, "{{M, N}} not adequate");
    let (dm, dn) = (u.delta(m), u.delta(n));
    claim!((r == ModelRel::Less) == (dm < dn), "relation {r:?} but δ = {dm}, {dn}");
    claim!((r == ModelRel::Equiv) == (dm == dn), "relation {r:?} but δ = {dm}, {dn}");
    claim!(r.is_le() == (dm <= dn), "relation {r:?} but δ = {dm}, {dn}");
    Verdict::Pass
}

// Order laws on an adequate set.

fn gen_2_18(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let a = random_adequate(&u, rng, None, CSet::EMPTY, 5)?;
    let ms: Vec<CId> = a.iter().collect();
    let three: Vec<CId> = (0..3).filter_map(|_| crate::gen::pick(rng, &ms)).collect();
    if three.len() < 3 {
        return None;
    }
    case(u, Inputs { models: three, sets: vec![a], ..Default::default() })
}

fn check_2_18(u: &Universe, x: &Inputs) -> Verdict {
    let a = x.sets[0];
    premise!(is_adequate(u, a), "A not adequate");
    premise!(x.models.iter().all(|&m| a.contains(m)), "models outside A");
    let ms = &x.models;
    let lt = |p, q| rel(u, p, q) == ModelRel::Less;
    let eq = |p, q| rel(u, p, q) == ModelRel::Equiv;
    let le = |p, q| rel(u, p, q).is_le();
    for &k in ms {
        claim!(!lt(k, k), "{} < itself", u.cm(k).id);
        claim!(eq(k, k), "{} ≁ itself", u.cm(k).id);
        for &m in ms {
            claim!(eq(k, m) == eq(m, k), "∼ not symmetric on {}, {}", u.cm(k).id, u.cm(m).id);
            for &n in ms {
                let id = || format!("{}, {}, {}", u.cm(k).id, u.cm(m).id, u.cm(n).id);
                claim!(!(lt(k, m) && lt(m, n)) || lt(k, n), "< not transitive on {}", id());
                claim!(!(eq(k, m) && eq(m, n)) || eq(k, n), "∼ not transitive on {}", id());
                claim!(!(le(k, m) && le(m, n)) || le(k, n), "≤ not transitive on {}", id());
                claim!(!(eq(k, m) && lt(m, n)) || lt(k, n), "< does not respect ∼ on {}", id());
                claim!(!(lt(k, m) && eq(m, n)) || lt(k, n), "< does not respect ∼ on {}", id());
                claim!(!(eq(k, m) && le(m, n)) || le(k, n), "≤ does not respect ∼ on {}", id());
            }
        }
    }
    Verdict::Pass
}

// Closure under a countable model.

fn gen_2_24(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let a = random_adequate(&u, rng, None, CSet::EMPTY, 5)?;
    let ms: Vec<CId> = a.iter().collect();
    let n = crate::gen::pick(rng, &ms)?;
    case(u, Inputs { models: vec![n], sets: vec![a], ..Default::default() })
}

fn check_2_24(u: &Universe, x: &Inputs) -> Verdict {
    let (n, a) = (x.models[0], x.sets[0]);
    premise!(is_adequate(u, a) && a.contains(n), "A not adequate or N ∉ A");
    let b = match closure_under_countable(u, a, n) {
        Ok(b) => b,
        Err(e) => return Verdict::Fail(format!("closure: {e}")),
    };
    for m in b.iter().filter(|&m| rel(u, m, n) == ModelRel::Less) {
        match u.intersect_countable(m, n) {
            Ok(mn) => claim!(b.contains(mn), "{} ∩ N missing from the closure", u.cm(m).id),
            Err(e) => return Verdict::Fail(format!("{e}")),
        }
    }
    Verdict::Pass
}

// Closure under an uncountable model.

fn gen_2_27(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let a = random_adequate(&u, rng, None, CSet::EMPTY, 5)?;
    let ps: Vec<UId> = u.uids().collect();
    let p = crate::gen::pick(rng, &ps)?;
    case(u, Inputs { bigs: vec![p], sets: vec![a], ..Default::default() })
}

fn check_2_27(u: &Universe, x: &Inputs) -> Verdict {
    let (p, a) = (x.bigs[0], x.sets[0]);
    premise!(is_adequate(u, a), "A not adequate");
    let b = match closure_under_uncountable(u, a, p) {
        Ok(b) => b,
        Err(e) => return Verdict::Fail(format!("closure: {e}")),
    };
    for m in b.iter() {
        match u.intersect_uncountable(m, p) {
            Ok(mp) => claim!(b.contains(mp), "{} ∩ P missing from the closure", u.cm(m).id),
            Err(e) => return Verdict::Fail(format!("{e}")),
        }
    }
    Verdict::Pass
}

/// Draws a closed adequate `A` with the simple model `n` and an adequate
/// `B` with `A ∩ n ⊆ B ⊆ n`. Slots: `containers[0] = n`, `sets = [A, B]`.
fn gen_amalgamable_sets(rng: &mut Rng8, countable: bool) -> Option<Case> {
    let (u, n) = draw_with(rng, 6, |u| {
        let mut v: Vec<Container> = Vec::new();
        if countable {
            v.extend(u.cids().filter(|&n| u.cm(n).simple && !u.members(n).is_empty()).map(Container::C));
        } else {
            v.extend(u.uids().filter(|&p| u.um(p).simple).map(Container::U));
        }
        v
    })?;
    let (a, inside) = match n {
        Container::C(nc) => {
            let a0 = random_adequate(&u, rng, None, CSet::singleton(nc), 4)?;
            (closure_under_countable(&u, a0, nc).ok()?, u.members(nc))
        }
        Container::U(p) => {
            let a0 = random_adequate(&u, rng, None, CSet::EMPTY, 4)?;
            (closure_under_uncountable(&u, a0, p).ok()?, u.u_members(p))
        }
    };
    let b = random_adequate(&u, rng, Some(n), a.inter(inside), 3)?;
    case(u, Inputs { containers: vec![n], sets: vec![a, b], ..Default::default() })
}

fn gen_countable_sets(rng: &mut Rng8) -> Option<Case> {
    gen_amalgamable_sets(rng, true)
}

fn gen_uncountable_sets(rng: &mut Rng8) -> Option<Case> {
    gen_amalgamable_sets(rng, false)
}

fn gen_either_sets(rng: &mut Rng8) -> Option<Case> {
    let c = rng.gen_bool(0.5);
    gen_amalgamable_sets(rng, c)
}

/// Premises shared by the amalgamation-of-sets statements.
fn amalgamable(u: &Universe, x: &Inputs) -> Result<(CSet, CSet), String> {
    let n = x.containers[0];
    let (a, b) = (x.sets[0], x.sets[1]);
    if !u.is_simple(n) {
        return Err("model not simple".into());
    }
    if !is_adequate(u, a) || !is_adequate(u, b) {
        return Err("A or B not adequate".into());
    }
    let closed = match n {
        Container::C(nc) => {
            a.contains(nc)
                && a.iter()
                    .filter(|&m| rel(u, m, nc) == ModelRel::Less)
                    .all(|m| u.intersect_countable(m, nc).is_ok_and(|mn| a.contains(mn)))
        }
        Container::U(p) => a.iter().all(|m| u.intersect_uncountable(m, p).is_ok_and(|mp| a.contains(mp))),
    };
    if !closed {
        return Err("A not closed under the model".into());
    }
    let inside = u.models_in(n);
    if !a.inter(inside).is_subset(b) || !b.is_subset(inside) {
        return Err("not A ∩ N ⊆ B ⊆ N".into());
    }
    Ok((a, b))
}

fn check_union_adequate(u: &Universe, x: &Inputs) -> Verdict {
    let (a, b) = match amalgamable(u, x) {
        Ok(v) => v,
        Err(why) => return Verdict::Vacuous(why),
    };
    claim!(is_adequate(u, a.union(b)), "A ∪ B not adequate");
    Verdict::Pass
}

fn check_r_star_additive(u: &Universe, x: &Inputs) -> Verdict {
    let (a, b) = match amalgamable(u, x) {
        Ok(v) => v,
        Err(why) => return Verdict::Vacuous(why),
    };
    let lhs = r_star(u, a.union(b));
    let rhs = r_star(u, a).union(r_star(u, b));
    claim!(lhs == rhs, "r*(A ∪ B) = {lhs} but r*(A) ∪ r*(B) = {rhs}");
    Verdict::Pass
}

fn check_s_star_additive(u: &Universe, x: &Inputs) -> Verdict {
    let (a, b) = match amalgamable(u, x) {
        Ok(v) => v,
        Err(why) => return Verdict::Vacuous(why),
    };
    let lhs = s_star(u, a.union(b));
    let rhs = s_star(u, a).union(s_star(u, b));
    claim!(lhs == rhs, "s*(A ∪ B) = {lhs:?} but s*(A) ∪ s*(B) = {rhs:?}");
    Verdict::Pass
}

// M < N gives M ∼ M ∩ N.

fn gen_2_26(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, n)) =
        draw_with(rng, 4, |u| pairs(u).into_iter().filter(|&(m, n)| rel(u, m, n) == ModelRel::Less).collect())?;
    models_case(u, vec![m, n])
}

fn check_2_26(u: &Universe, x: &Inputs) -> Verdict {
    let (m, n) = (x.models[0], x.models[1]);
    premise!(rel(u, m, n) == ModelRel::Less, "M ≮ N");
    let mn = match u.intersect_countable(m, n) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("{e}")),
    };
    claim!(rel(u, m, mn) == ModelRel::Equiv, "M and M ∩ N are {:?}", rel(u, m, mn));
    Verdict::Pass
}

// M ∼ M ∩ P.

fn gen_m_p(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, p)) = draw_with(rng, 4, |u| u.cids().flat_map(|m| u.uids().map(move |p| (m, p))).collect())?;
    case(u, Inputs { models: vec![m], bigs: vec![p], ..Default::default() })
}

fn check_2_29(u: &Universe, x: &Inputs) -> Verdict {
    let (m, p) = (x.models[0], x.bigs[0]);
    let mp = match u.intersect_uncountable(m, p) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("{e}")),
    };
    claim!(rel(u, m, mp) == ModelRel::Equiv, "M and M ∩ P are {:?}", rel(u, m, mp));
    Verdict::Pass
}

// N simple and P ∈ N simple give N ∩ P simple.

/// `N` has something a condition inside it can mention: a point of `S` or a member model.
pub(crate) fn roomy(u: &Universe, n: CId) -> bool {
    !u.trace(n).inter(u.stationary(None)).is_empty() || !u.members(n).is_empty()
}

pub(crate) fn nested_simple(u: &Universe) -> Vec<(CId, UId)> {
    u.cids()
        .flat_map(|n| u.uids().map(move |p| (n, p)))
        .filter(|&(n, p)| u.cm(n).simple && u.um(p).simple && u.u_in_c(p, n))
        .collect()
}

fn gen_2_30(rng: &mut Rng8) -> Option<Case> {
    let (u, (n, p)) = draw_with(rng, 8, nested_simple)?;
    case(u, Inputs { models: vec![n], bigs: vec![p], ..Default::default() })
}

fn check_2_30(u: &Universe, x: &Inputs) -> Verdict {
    let (n, p) = (x.models[0], x.bigs[0]);
    premise!(u.cm(n).simple && u.um(p).simple && u.u_in_c(p, n), "premises of the nesting fail");
    let np = match u.intersect_uncountable(n, p) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("{e}")),
    };
    claim!(u.cm(np).simple, "{} not simple", u.cm(np).id);
    Verdict::Pass
}

// Chains of cuts { M ∩ α : M ∈ A, α ∈ M } for α ∈ Λ.

fn gen_cut_chain(rng: &mut Rng8) -> Option<Case> {
    let u = draw_universe(rng);
    let a = random_adequate(&u, rng, None, CSet::EMPTY, 5)?;
    let hits: Vec<u32> = u.lambda().iter().filter(|&l| a.iter().any(|m| u.trace(m).contains(l))).collect();
    let l = crate::gen::pick(rng, &hits).or_else(|| u.lambda().first())?;
    case(u, Inputs { sets: vec![a], ords: vec![OrdinalValue::Fin(l)], ..Default::default() })
}

fn gen_2_32(rng: &mut Rng8) -> Option<Case> {
    for _ in 0..6 {
        let u = draw_universe(rng);
        let a = random_adequate(&u, rng, None, CSet::EMPTY, 8)?;
        let long: Vec<u32> = u.lambda().iter().filter(|&l| cut_chain(&u, a, l).len() >= 2).collect();
        if let Some(l) = crate::gen::pick(rng, &long) {
            return case(u, Inputs { sets: vec![a], ords: vec![OrdinalValue::Fin(l)], ..Default::default() });
        }
    }
    None
}

fn cut_chain(u: &Universe, a: CSet, l: u32) -> Vec<OrdSet> {
    let mut c: Vec<OrdSet> = a.iter().filter(|&m| u.trace(m).contains(l)).map(|m| u.trace(m).below(l)).collect();
    c.sort();
    c.dedup();
    c
}

fn comparable(u: &Universe, x: OrdSet, y: OrdSet) -> bool {
    x == y || u.hull_set(x, y) || u.hull_set(y, x)
}

fn check_2_32(u: &Universe, x: &Inputs) -> Verdict {
    let (a, l) = (x.sets[0], x.fin(0));
    premise!(u.lambda().contains(l), "α ∉ Λ");
    let c = cut_chain(u, a, l);
    premise!(c.len() >= 2, "fewer than two cuts");
    premise!(c.iter().all(|&p| c.iter().all(|&q| comparable(u, p, q))), "not a chain");
    for &p in &c {
        for &q in &c {
            claim!(u.hull_set(p, q) == (p.last() < q.last()), "{p} ∈ Sk({q}) disagrees with the sups");
            claim!((p == q) == (p.last() == q.last()), "{p}, {q} equal sups but differ");
        }
    }
    Verdict::Pass
}

fn check_2_33(u: &Universe, x: &Inputs) -> Verdict {
    let (a, l) = (x.sets[0], x.fin(0));
    premise!(is_adequate(u, a), "A not adequate");
    premise!(u.lambda().contains(l), "α ∉ Λ");
    let c = cut_chain(u, a, l);
    premise!(!c.is_empty(), "no model of A contains α");
    for &p in &c {
        claim!(in_hull(u, p, DomainElement::OrdS(l)), "{p} ∉ Sk(α)");
        for &q in &c {
            claim!(comparable(u, p, q), "{p} and {q} are not ∈-comparable");
        }
    }
    Verdict::Pass
}

// Equal cuts at distinct uncountable heights.

fn gen_3_2(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, n, a, g)) = draw_with(rng, 6, |u| {
        let w = u.config().omega1_cut;
        let mut out = Vec::new();
        for (m, n) in pairs(u) {
            if rel(u, m, n) == ModelRel::Incomparable {
                continue;
            }
            let gammas: Vec<OrdinalValue> =
                u.trace(n).at_or_above(w).iter().map(OrdinalValue::Fin).chain([OrdinalValue::Kappa]).collect();
            for a in u.trace(m).at_or_above(w).iter() {
                for &g in &gammas {
                    if g != OrdinalValue::Fin(a) && u.trace(m).below(a) == g.cut(u.trace(n)) {
                        out.push((m, n, a, g));
                    }
                }
            }
        }
        out
    })?;
    case(u, Inputs { models: vec![m, n], ords: vec![OrdinalValue::Fin(a), g], ..Default::default() })
}

fn check_3_2(u: &Universe, x: &Inputs) -> Verdict {
    let (m, n) = (x.models[0], x.models[1]);
    let (a, g) = (x.fin(0), x.ords[1]);
    let w = u.config().omega1_cut;
    premise!(rel(u, m, n) != ModelRel::Incomparable, "{{M, N}} not adequate");
    premise!(u.trace(m).contains(a) && a >= w, "α ∉ M or countable");
    let g_ok = match g {
        OrdinalValue::Kappa => true,
        OrdinalValue::Fin(gv) => u.trace(n).contains(gv) && gv >= w,
    };
    premise!(g_ok, "γ ∉ N ∪ {{κ}} or countable");
    premise!(g != OrdinalValue::Fin(a), "α = γ");
    premise!(u.trace(m).below(a) == g.cut(u.trace(n)), "M ∩ α ≠ N ∩ γ");
    claim!(rel(u, m, n) == ModelRel::Equiv, "M and N are {:?}", rel(u, m, n));
    let r = rem(u, m, m, n);
    claim!(r == Some(a), "min(M \\ β) = {r:?}, α = {a}");
    Verdict::Pass
}

// Remainder over N equals remainder over M ∩ N.

fn check_3_3(u: &Universe, x: &Inputs) -> Verdict {
    let (m, n) = (x.models[0], x.models[1]);
    premise!(rel(u, m, n) == ModelRel::Less, "M ≮ N");
    let r = rem(u, m, m, n);
    premise!(r.is_some(), "(M ∩ κ) \\ β empty");
    let mn = given!(u.intersect_countable(m, n), "M ∩ N");
    let r2 = rem(u, m, m, mn);
    claim!(r == r2, "remainders {r:?} over N and {r2:?} over M ∩ N");
    Verdict::Pass
}

fn gen_3_3(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, n)) = draw_with(rng, 6, |u| {
        pairs(u).into_iter().filter(|&(m, n)| rel(u, m, n) == ModelRel::Less && rem(u, m, m, n).is_some()).collect()
    })?;
    models_case(u, vec![m, n])
}

// Transfer of remainders below a member of N.

fn gen_3_4(rng: &mut Rng8) -> Option<Case> {
    let (u, (k, m, n)) = draw_with(rng, 8, |u| {
        let mut out = Vec::new();
        for n in u.cids() {
            for m in u.members(n).iter() {
                for k in u.cids().filter(|&k| rel(u, k, m) == ModelRel::Equiv) {
                    if adequate3(u, k, m, n) {
                        out.push((k, m, n));
                    }
                }
            }
        }
        out
    })?;
    models_case(u, vec![k, m, n])
}

fn check_3_4(u: &Universe, x: &Inputs) -> Verdict {
    let (k, m, n) = (x.models[0], x.models[1], x.models[2]);
    premise!(adequate3(u, k, m, n), "{{K, M, N}} not adequate");
    premise!(u.mem_model(m, n), "M ∉ N");
    premise!(rel(u, k, m) == ModelRel::Equiv, "K ≁ M");
    claim!(rel(u, k, n) == ModelRel::Less, "K and N are {:?}", rel(u, k, n));
    let kn = match u.intersect_countable(k, n) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("{e}")),
    };
    claim!(rel(u, m, kn) == ModelRel::Equiv, "M and K ∩ N are {:?}", rel(u, m, kn));
    if let Some(a) = rem(u, m, k, m) {
        let b = rem(u, m, m, kn);
        claim!(b == Some(a), "M-side remainder {a} over K becomes {b:?} over K ∩ N");
    }
    if let Some(a) = rem(u, k, k, m) {
        let b1 = rem(u, kn, kn, m);
        let b2 = rem(u, k, k, kn);
        claim!(b1 == Some(a) || b2 == Some(a), "K-side remainder {a}: got {b1:?} and {b2:?}");
    }
    Verdict::Pass
}

// Remainder above an uncountable cut.

fn check_3_6(u: &Universe, x: &Inputs) -> Verdict {
    let (m, p) = (x.models[0], x.bigs[0]);
    let cut = u.um(p).cut;
    let a = u.trace(m).min_at_or_above(cut);
    premise!(a.is_some(), "(M ∩ κ) \\ (P ∩ κ) empty");
    let mp = given!(u.intersect_uncountable(m, p), "M ∩ P");
    let b = rem(u, m, mp, m);
    claim!(b == a, "min above the cut {a:?}, remainder over M ∩ P {b:?}");
    Verdict::Pass
}

fn gen_3_6(rng: &mut Rng8) -> Option<Case> {
    let (u, (m, p)) = draw_with(rng, 6, |u| {
        u.cids()
            .flat_map(|m| u.uids().map(move |p| (m, p)))
            .filter(|&(m, p)| u.trace(m).min_at_or_above(u.um(p).cut).is_some())
            .collect()
    })?;
    case(u, Inputs { models: vec![m], bigs: vec![p], ..Default::default() })
}

fn gen_3_7(rng: &mut Rng8) -> Option<Case> {
    let (u, (k, m, p)) = draw_with(rng, 8, |u| {
        let mut out = Vec::new();
        for p in u.uids() {
            for m in u.u_members(p).iter() {
                for k in u.cids().filter(|&k| rel(u, k, m) == ModelRel::Equiv) {
                    out.push((k, m, p));
                }
            }
        }
        out
    })?;
    case(u, Inputs { models: vec![k, m], bigs: vec![p], ..Default::default() })
}

fn check_3_7(u: &Universe, x: &Inputs) -> Verdict {
    let (k, m, p) = (x.models[0], x.models[1], x.bigs[0]);
    premise!(u.c_in_u(m, p), "M ∉ P");
    premise!(rel(u, k, m) == ModelRel::Equiv, "K ≁ M");
    let kp = match u.intersect_uncountable(k, p) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("{e}")),
    };
    claim!(rel(u, kp, m) == ModelRel::Equiv, "K ∩ P and M are {:?}", rel(u, kp, m));
    if let Some(a) = rem(u, m, k, m) {
        let b = rem(u, m, m, kp);
        claim!(b == Some(a), "M-side remainder {a} over K becomes {b:?} over K ∩ P");
    }
    if let Some(a) = rem(u, k, k, m) {
        let b1 = rem(u, kp, kp, m);
        let b2 = rem(u, k, kp, k);
        claim!(b1 == Some(a) || b2 == Some(a), "K-side remainder {a}: got {b1:?} and {b2:?}");
    }
    Verdict::Pass
}

pub(super) fn properties() -> Vec<Property> {
    vec![
        Property {
            id: "P-2.15",
            anchor: "2.15: M ≤ N ⇒ M ∩ β_{M,N} = M ∩ N ∩ κ = M ∩ N ∩ β_{M,N}",
            floor: 0.55,
            gen: gen_2_15,
            check: check_2_15,
        },
        Property {
            id: "P-2.16",
            anchor: "2.16: A adequate, A ∈ N ⇒ A ∪ {N} adequate",
            floor: 0.4,
            gen: gen_2_16,
            check: check_2_16,
        },
        Property {
            id: "P-2.17",
            anchor: "2.17: {M, N} adequate ⇒ (M < N ⇔ M ∩ ω₁ < N ∩ ω₁) and (M ∼ N ⇔ M ∩ ω₁ = N ∩ ω₁)",
            floor: 0.55,
            gen: gen_2_17,
            check: check_2_17,
        },
        Property {
            id: "P-2.18",
            anchor: "2.18: on adequate A, < is a strict order, ∼ an equivalence, ≤ transitive, and both respect ∼",
            floor: 0.55,
            gen: gen_2_18,
            check: check_2_18,
        },
        Property {
            id: "P-2.24",
            anchor: "2.24: N ∈ A adequate ⇒ A ∪ {M ∩ N : M ∈ A, M < N} adequate and closed",
            floor: 0.55,
            gen: gen_2_24,
            check: check_2_24,
        },
        Property {
            id: "P-2.25",
            anchor: "2.25: A closed under simple N ∈ A, A ∩ N ⊆ B ⊆ N ⇒ A ∪ B adequate",
            floor: 0.55,
            gen: gen_countable_sets,
            check: check_union_adequate,
        },
        Property {
            id: "P-2.26", anchor: "2.26: M < N ⇒ M ∼ M ∩ N", floor: 0.55, gen: gen_2_26, check: check_2_26
        },
        Property {
            id: "P-2.27",
            anchor: "2.27: A adequate ⇒ A ∪ {M ∩ P : M ∈ A} adequate and closed",
            floor: 0.55,
            gen: gen_2_27,
            check: check_2_27,
        },
        Property {
            id: "P-2.28",
            anchor: "2.28: A closed under simple P, A ∩ P ⊆ B ⊆ P ⇒ A ∪ B adequate",
            floor: 0.55,
            gen: gen_uncountable_sets,
            check: check_union_adequate,
        },
        Property { id: "P-2.29", anchor: "2.29: M ∼ M ∩ P", floor: 0.55, gen: gen_m_p, check: check_2_29 },
        Property {
            id: "P-2.30",
            anchor: "2.30: N simple, P ∈ N simple ⇒ N ∩ P simple",
            floor: 0.55,
            gen: gen_2_30,
            check: check_2_30,
        },
        Property {
            id: "P-2.32",
            anchor: "2.32: in an ∈-chain of cuts, x ∈ Sk(y) ⇔ sup x < sup y, and x = y ⇔ sup x = sup y",
            floor: 0.2,
            gen: gen_2_32,
            check: check_2_32,
        },
        Property {
            id: "P-2.33",
            anchor: "2.33: {M ∩ α : M ∈ A, α ∈ M} is a finite ∈-chain inside Sk(α)",
            floor: 0.45,
            gen: gen_cut_chain,
            check: check_2_33,
        },
        Property {
            id: "P-3.2",
            anchor: "3.2: M ∩ α = N ∩ γ with α ≠ γ uncountable ⇒ M ∼ N and α = min((M ∩ κ) \\ β_{M,N})",
            floor: 0.55,
            gen: gen_3_2,
            check: check_3_2,
        },
        Property {
            id: "P-3.3",
            anchor: "3.3: M < N ⇒ min((M ∩ κ) \\ β_{M,N}) = min((M ∩ κ) \\ β_{M,M∩N})",
            floor: 0.55,
            gen: gen_3_3,
            check: check_3_3,
        },
        Property {
            id: "P-3.4",
            anchor: "3.4: {K, M, N} adequate, M ∈ N, K ∼ M ⇒ K < N, M ∼ K ∩ N, and remainders transfer to K ∩ N",
            floor: 0.55,
            gen: gen_3_4,
            check: check_3_4,
        },
        Property {
            id: "P-3.5",
            anchor: "3.5: r*(A ∪ B) = r*(A) ∪ r*(B) over a simple countable N",
            floor: 0.55,
            gen: gen_countable_sets,
            check: check_r_star_additive,
        },
        Property {
            id: "P-3.6",
            anchor: "3.6: min((M ∩ κ) \\ (P ∩ κ)) = min((M ∩ κ) \\ β_{M∩P,M})",
            floor: 0.55,
            gen: gen_3_6,
            check: check_3_6,
        },
        Property {
            id: "P-3.7",
            anchor: "3.7: M ∈ P, K ∼ M ⇒ K ∩ P ∼ M, and remainders transfer to K ∩ P",
            floor: 0.55,
            gen: gen_3_7,
            check: check_3_7,
        },
        Property {
            id: "P-3.8",
            anchor: "3.8: r*(A ∪ B) = r*(A) ∪ r*(B) over a simple uncountable P",
            floor: 0.55,
            gen: gen_uncountable_sets,
            check: check_r_star_additive,
        },
        Property {
            id: "P-10.13",
            anchor: "10.13: s*(A ∪ B) = s*(A) ∪ s*(B) over a simple N ∈ X ∪ Y",
            floor: 0.55,
            gen: gen_either_sets,
            check: check_s_star_additive,
        },
    ]
}
