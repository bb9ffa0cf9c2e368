//! Seeded generators for universes, adequate sets and conditions.
//!
//! Conditions are grown by a random walk of small strengthening moves. A move
//! is kept only when the result is still a condition, stays inside the
//! optional scope model, and passes the caller's filter. Premises such as
//! `w ≤ r ↾ N` are met constructively by starting the walk at `r ↾ N`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use scf_core::adequacy::{closure_under_countable, closure_under_uncountable, is_adequate, r_star, s_star};
use scf_core::fixtures;
use scf_core::ordset::OrdSet;
use scf_core::product::{in_dnq, is_q_condition, leq_q, q_not_in, uplus, QCondition};
use scf_core::single::{
    adjoin_model, close_under_n, close_under_q, cond_in, extend_ordinals, in_dn, in_dq, in_hull, is_condition, leq_p,
    normalize_chain, saturate_g, DomainElement, PCondition,
};
use scf_core::universe::{generate_universe, CId, CSet, Container, GenParams, IdxSet, UId, Universe};

pub type Rng8 = ChaCha8Rng;

/// The generator settings random universes are drawn from.
pub fn profiles() -> [GenParams; 3] {
    let wide = GenParams { lambda_star: 3, base_models: 4, density: 0.35, max_models: 16, ..GenParams::default() };
    [GenParams::default(), wide, GenParams::tiny()]
}

/// A generated universe, or the fixture universe once in a while.
pub fn draw_universe(rng: &mut Rng8) -> Universe {
    if rng.gen_ratio(1, 12) {
        return fixtures::u1();
    }
    let ps = profiles();
    let weights = [6, 3, 1];
    for _ in 0..8 {
        let k = pick_weighted(rng, &weights);
        if let Ok(g) = generate_universe(rng.gen(), &ps[k]) {
            return g.universe;
        }
    }
    fixtures::u1()
}

/// A universe satisfying `pred`, drawing at most `tries` of them.
pub fn draw_universe_where(rng: &mut Rng8, tries: usize, pred: impl Fn(&Universe) -> bool) -> Option<Universe> {
    (0..tries).map(|_| draw_universe(rng)).find(|u| pred(u))
}

/// A small universe for exhaustive work: at most three countable models.
pub fn draw_tiny_universe(rng: &mut Rng8) -> Universe {
    loop {
        if let Ok(g) = generate_universe(rng.gen(), &GenParams::tiny()) {
            if g.universe.countables().len() <= 3 {
                return g.universe;
            }
        }
    }
}

fn pick_weighted(rng: &mut Rng8, w: &[u32]) -> usize {
    let total: u32 = w.iter().sum();
    let mut x = rng.gen_range(0..total);
    for (i, &wi) in w.iter().enumerate() {
        if x < wi {
            return i;
        }
        x -= wi;
    }
    w.len() - 1
}

pub fn pick<T: Copy>(rng: &mut Rng8, xs: &[T]) -> Option<T> {
    xs.choose(rng).copied()
}

pub fn simple_countables(u: &Universe) -> Vec<CId> {
    u.cids().filter(|&n| u.is_simple(Container::C(n))).collect()
}

pub fn simple_uncountables(u: &Universe) -> Vec<UId> {
    u.uids().filter(|&p| u.is_simple(Container::U(p))).collect()
}

fn in_scope_model(u: &Universe, scope: Option<Container>, m: CId) -> bool {
    scope.is_none_or(|n| u.model_in(n, m))
}

fn in_scope_ord(u: &Universe, scope: Option<Container>, a: u32) -> bool {
    scope.is_none_or(|n| u.ord_in(n, a))
}

fn in_scope_cond(u: &Universe, scope: Option<Container>, p: &PCondition) -> bool {
    scope.is_none_or(|n| cond_in(u, p, n))
}

/// An adequate set containing `must`, with up to `extra` further models from the scope.
pub fn random_adequate(
    u: &Universe,
    rng: &mut Rng8,
    scope: Option<Container>,
    must: CSet,
    extra: usize,
) -> Option<CSet> {
    if !is_adequate(u, must) {
        return None;
    }
    let mut pool: Vec<CId> = u.cids().filter(|&m| !must.contains(m) && in_scope_model(u, scope, m)).collect();
    pool.shuffle(rng);
    let mut a = must;
    let mut added = 0;
    for m in pool {
        if added == extra {
            break;
        }
        if rng.gen_bool(0.5) && is_adequate(u, a.with(m)) {
            a.insert(m);
            added += 1;
        }
    }
    Some(a)
}

/// `(∅, ∅, A)` extended by the required remainder points and a random part of `S`.
pub fn base_condition(
    u: &Universe,
    rng: &mut Rng8,
    s_index: Option<u32>,
    a: CSet,
    scope: Option<Container>,
) -> Option<PCondition> {
    let mut p = PCondition::empty(s_index);
    p.a = a;
    let s = p.s(u);
    let need = r_star(u, a).inter(s);
    let extra: OrdSet = s.diff(need).iter().filter(|&x| in_scope_ord(u, scope, x) && rng.gen_bool(0.4)).collect();
    for x in [need.union(extra), need] {
        if let Ok(q) = extend_ordinals(u, &p, x) {
            if is_condition(u, &q) && in_scope_cond(u, scope, &q) {
                return Some(q);
            }
        }
    }
    None
}

fn with_ord(s: OrdSet, x: u32) -> OrdSet {
    let mut t = s;
    t.insert(x);
    t
}

fn add_to_chain(p: &mut PCondition, x: DomainElement, k: OrdSet) {
    let c = p.f.entry(x).or_default();
    if !c.contains(&k) {
        c.push(k);
        normalize_chain(c);
    }
}

/// Remainder points required by the side conditions of `q` but missing from its domain.
fn close_remainders(u: &Universe, q: &PCondition) -> Option<PCondition> {
    let x = r_star(u, q.a).inter(q.s(u)).diff(q.dom_ords());
    extend_ordinals(u, q, x).ok()
}

fn move_extend(u: &Universe, rng: &mut Rng8, p: &PCondition, scope: Option<Container>) -> Option<PCondition> {
    let cand: Vec<u32> = p.s(u).diff(p.dom_ords()).iter().filter(|&a| in_scope_ord(u, scope, a)).collect();
    let a = pick(rng, &cand)?;
    extend_ordinals(u, p, OrdSet::singleton(a)).ok()
}

fn move_add_model(u: &Universe, rng: &mut Rng8, p: &PCondition, scope: Option<Container>) -> Option<PCondition> {
    let cand: Vec<CId> = u.cids().filter(|&m| !p.a.contains(m) && in_scope_model(u, scope, m)).collect();
    let m = pick(rng, &cand)?;
    if cond_in(u, p, Container::C(m)) && rng.gen_bool(0.7) {
        if let Ok(q) = adjoin_model(u, p, m) {
            return close_remainders(u, &q);
        }
    }
    let mut q = p.clone();
    q.a.insert(m);
    let tm = u.trace(m);
    for a in p.dom_ords().inter(p.s(u)).inter(tm).iter() {
        let t = tm.below(a);
        let ae = DomainElement::OrdS(a);
        if q.chain_has(ae, t) {
            continue;
        }
        add_to_chain(&mut q, ae, t);
        let fa = q.chain(ae).to_vec();
        for &l in &fa {
            if l != t && u.hull_set(t, l) {
                add_to_chain(&mut q, DomainElement::Set(l), t);
            }
        }
        let te = DomainElement::Set(t);
        if !q.in_dom(te) {
            let ft: Vec<OrdSet> = fa.iter().copied().filter(|&l| u.hull_set(l, t)).collect();
            q.f.insert(te, ft);
        }
    }
    close_remainders(u, &q)
}

fn move_add_g(u: &Universe, rng: &mut Rng8, p: &PCondition, scope: Option<Container>) -> Option<PCondition> {
    let pairs: Vec<(OrdSet, DomainElement)> = p.f.iter().flat_map(|(&x, c)| c.iter().map(move |&k| (k, x))).collect();
    let (k, x) = pick(rng, &pairs)?;
    let deps: Vec<DomainElement> =
        p.chain(x).iter().filter(|&&l| p.chain_has(DomainElement::Set(l), k)).map(|&l| DomainElement::Set(l)).collect();
    let mut room = x.g_room(k);
    for d in &deps {
        room = room.inter(d.g_room(k));
    }
    let room: Vec<u32> = room.diff(p.g_of(k, x)).iter().filter(|&g| in_scope_ord(u, scope, g)).collect();
    let g = pick(rng, &room)?;
    let mut q = p.clone();
    for y in std::iter::once(x).chain(deps) {
        let v = with_ord(q.g_of(k, y), g);
        q.set_g(k, y, v);
    }
    Some(q)
}

fn move_add_chain(u: &Universe, rng: &mut Rng8, p: &PCondition) -> Option<PCondition> {
    let xs: Vec<DomainElement> = p.f.keys().copied().collect();
    let x = pick(rng, &xs)?;
    let sets: Vec<OrdSet> =
        p.f.keys()
            .filter_map(|y| y.as_set())
            .filter(|&k| DomainElement::Set(k) != x && !p.chain_has(x, k) && in_hull(u, k, x))
            .collect();
    let k = pick(rng, &sets)?;
    let mut q = p.clone();
    let mut targets = vec![x];
    if let Some(t) = x.as_set() {
        targets.extend(p.f.iter().filter(|(_, c)| c.contains(&t)).map(|(&y, _)| y));
    }
    for y in targets {
        let old = p.chain(y).to_vec();
        add_to_chain(&mut q, y, k);
        for l in old {
            if u.hull_set(k, l) {
                add_to_chain(&mut q, DomainElement::Set(l), k);
            }
        }
    }
    Some(q)
}

fn move_close(u: &Universe, rng: &mut Rng8, p: &PCondition) -> Option<PCondition> {
    match rng.gen_range(0..3) {
        0 => Some(saturate_g(u, p)),
        1 => {
            let ns: Vec<CId> = p.a.iter().collect();
            close_under_n(u, p, pick(rng, &ns)?).ok()
        }
        _ => {
            let ps: Vec<UId> = u.uids().collect();
            close_under_q(u, p, pick(rng, &ps)?).ok()
        }
    }
}

/// Strengthens `p` by up to `steps` accepted moves.
pub fn walk(
    u: &Universe,
    rng: &mut Rng8,
    mut p: PCondition,
    scope: Option<Container>,
    steps: usize,
    keep: &dyn Fn(&PCondition) -> bool,
) -> PCondition {
    for _ in 0..steps * 2 {
        let cand = match rng.gen_range(0..10) {
            0..=2 => move_extend(u, rng, &p, scope),
            3..=4 => move_add_model(u, rng, &p, scope),
            5..=6 => move_add_g(u, rng, &p, scope),
            7..=8 => move_add_chain(u, rng, &p),
            _ => move_close(u, rng, &p),
        };
        if let Some(c) = cand {
            if c != p && is_condition(u, &c) && in_scope_cond(u, scope, &c) && keep(&c) {
                p = c;
            }
        }
    }
    p
}

pub fn random_s_index(u: &Universe, rng: &mut Rng8) -> Option<u32> {
    if rng.gen_bool(0.3) {
        Some(rng.gen_range(0..u.config().lambda_star))
    } else {
        None
    }
}

/// A random condition whose side conditions contain `must`.
pub fn random_condition_with(
    u: &Universe,
    rng: &mut Rng8,
    s_index: Option<u32>,
    scope: Option<Container>,
    must: CSet,
) -> Option<PCondition> {
    let a = random_adequate(u, rng, scope, must, 3)?;
    let p = base_condition(u, rng, s_index, a, scope)?;
    let steps = rng.gen_range(0..8);
    Some(walk(u, rng, p, scope, steps, &|_| true))
}

pub fn random_condition(u: &Universe, rng: &mut Rng8, scope: Option<Container>) -> Option<PCondition> {
    let s = random_s_index(u, rng);
    random_condition_with(u, rng, s, scope, CSet::EMPTY)
}

/// A random condition with `N ∈ A`.
pub fn condition_with_model(u: &Universe, rng: &mut Rng8, n: CId) -> Option<PCondition> {
    let s = random_s_index(u, rng);
    random_condition_with(u, rng, s, None, CSet::singleton(n))
}

/// Extends `p` (with `N ∈ A_p`) into `D_N`.
pub fn into_dn(u: &Universe, p: &PCondition, n: CId) -> Option<PCondition> {
    let q = saturate_g(u, &close_under_n(u, p, n).ok()?);
    (in_dn(u, &q, n) && is_condition(u, &q)).then_some(q)
}

pub fn into_dq(u: &Universe, p: &PCondition, q: UId) -> Option<PCondition> {
    let s = close_under_q(u, p, q).ok()?;
    (in_dq(u, &s, q) && is_condition(u, &s)).then_some(s)
}

/// Extends `p` (with `N ∈ A_p`) into `D_N ∩ D_Q` by alternating closures.
pub fn into_dn_dq(u: &Universe, p: &PCondition, n: CId, q: UId) -> Option<PCondition> {
    let mut s = p.clone();
    for _ in 0..6 {
        s = close_under_n(u, &s, n).ok()?;
        s = close_under_q(u, &s, q).ok()?;
        s = saturate_g(u, &s);
        if in_dn(u, &s, n) && in_dq(u, &s, q) {
            return is_condition(u, &s).then_some(s);
        }
    }
    None
}

/// A condition below `base` lying in `scope`, grown from `base` itself.
pub fn strengthen_inside(
    u: &Universe,
    rng: &mut Rng8,
    base: &PCondition,
    scope: Container,
    steps: usize,
) -> PCondition {
    walk(u, rng, base.clone(), Some(scope), steps, &|c| leq_p(c, base))
}

// Product conditions.

fn models_with_index(u: &Universe, a: CSet, i: u32) -> CSet {
    a.iter().filter(|&m| u.cm(m).index_set.contains(i)).collect()
}

fn scope_indices(u: &Universe, scope: Option<Container>) -> IdxSet {
    let all: IdxSet = (0..u.config().lambda_star).collect();
    scope.map_or(all, |n| u.index_set(n).inter(all))
}

/// A random product condition with `must ⊆ A`.
pub fn random_q_with(u: &Universe, rng: &mut Rng8, scope: Option<Container>, must: CSet) -> Option<QCondition> {
    let a = random_adequate(u, rng, scope, must, 3)?;
    let allowed = scope_indices(u, scope);
    let need = s_star(u, a);
    if !need.is_subset(allowed) {
        return None;
    }
    let dom = need.union(allowed.iter().filter(|_| rng.gen_bool(0.5)).collect());
    let mut q = QCondition { big_f: BTreeMap::new(), a };
    for i in dom.iter() {
        let c = random_condition_with(u, rng, Some(i), scope, models_with_index(u, a, i))?;
        q.big_f.insert(i, c);
    }
    (is_q_condition(u, &q) && scope.is_none_or(|n| q_not_in(u, &q, n).is_none())).then_some(q)
}

pub fn random_q(u: &Universe, rng: &mut Rng8, scope: Option<Container>) -> Option<QCondition> {
    random_q_with(u, rng, scope, CSet::EMPTY)
}

/// Extends `q` into `D(N)` or `D(P)`: closes `A`, closes the coordinates
/// inside the model, and adds the indices the closure makes necessary.
pub fn into_dclass(u: &Universe, q: &QCondition, n: Container) -> Option<QCondition> {
    let idx = u.index_set(n);
    let mut s = q.clone();
    for _ in 0..6 {
        s.a = match n {
            Container::C(nc) => closure_under_countable(u, s.a, nc).ok()?,
            Container::U(pu) => closure_under_uncountable(u, s.a, pu).ok()?,
        };
        let missing = s_star(u, s.a).diff(s.dom());
        s = uplus(u, &s, missing).ok()?;
        let mut next = BTreeMap::new();
        for (&i, c) in &s.big_f {
            let mut c = c.clone();
            let need = models_with_index(u, s.a, i).diff(c.a);
            for m in need.iter() {
                c = add_model_to(u, &c, m)?;
            }
            if idx.contains(i) {
                c = match n {
                    Container::C(nc) => into_dn(u, &c, nc)?,
                    Container::U(pu) => into_dq(u, &c, pu)?,
                };
            }
            next.insert(i, c);
        }
        s.big_f = next;
        if in_dnq(u, &s, n) && is_q_condition(u, &s) {
            return Some(s);
        }
    }
    None
}

/// Adds one model to the side conditions of a coordinate, keeping it a condition.
pub fn add_model_to(u: &Universe, p: &PCondition, m: CId) -> Option<PCondition> {
    if p.a.contains(m) {
        return Some(p.clone());
    }
    let mut q = p.clone();
    q.a.insert(m);
    let tm = u.trace(m);
    for a in p.dom_ords().inter(p.s(u)).inter(tm).iter() {
        let t = tm.below(a);
        let ae = DomainElement::OrdS(a);
        add_to_chain(&mut q, ae, t);
        let fa = q.chain(ae).to_vec();
        for &l in &fa {
            if l != t && u.hull_set(t, l) {
                add_to_chain(&mut q, DomainElement::Set(l), t);
            }
        }
        let te = DomainElement::Set(t);
        if !q.in_dom(te) {
            let ft: Vec<OrdSet> = fa.iter().copied().filter(|&l| u.hull_set(l, t)).collect();
            q.f.insert(te, ft);
        }
    }
    let q = close_remainders(u, &q)?;
    is_condition(u, &q).then_some(q)
}

/// A product condition below `base`, grown from `base` and kept inside `scope`
/// when one is given. With `fresh_indices` the walk may add coordinates
/// outside `dom F_base`.
pub fn strengthen_q(
    u: &Universe,
    rng: &mut Rng8,
    base: &QCondition,
    scope: Option<Container>,
    steps: usize,
    fresh_indices: bool,
) -> QCondition {
    let allowed = scope_indices(u, scope);
    let pool = scope.map_or(u.all_countables(), |n| u.models_in(n));
    let mut w = base.clone();
    for _ in 0..steps * 2 {
        let cand = match rng.gen_range(0..6) {
            0..=2 => {
                let dom: Vec<u32> = w.big_f.keys().copied().collect();
                pick(rng, &dom).map(|i| {
                    let mut c = w.clone();
                    let n = rng.gen_range(1..4);
                    let cur = w.big_f[&i].clone();
                    let next = walk(u, rng, cur.clone(), scope, n, &|x| leq_p(x, &cur));
                    c.big_f.insert(i, next);
                    c
                })
            }
            3 if fresh_indices => {
                let free: Vec<u32> = allowed.diff(w.dom()).iter().collect();
                pick(rng, &free).and_then(|i| uplus(u, &w, [i].into_iter().collect()).ok())
            }
            _ => {
                let cand: Vec<CId> = pool.diff(w.a).iter().collect();
                pick(rng, &cand).and_then(|m| add_model_q(u, &w, m, fresh_indices))
            }
        };
        if let Some(c) = cand {
            if c != w && is_q_condition(u, &c) && scope.is_none_or(|n| q_not_in(u, &c, n).is_none()) && leq_q(&c, base)
            {
                w = c;
            }
        }
    }
    w
}

/// Adds `m` to `A` and to the coordinates whose index `m` contains.
pub fn add_model_q(u: &Universe, w: &QCondition, m: CId, fresh_indices: bool) -> Option<QCondition> {
    let mut c = w.clone();
    c.a.insert(m);
    if !is_adequate(u, c.a) {
        return None;
    }
    let missing = s_star(u, c.a).diff(c.dom());
    if !missing.is_empty() {
        if !fresh_indices {
            return None;
        }
        c = uplus(u, &c, missing).ok()?;
    }
    let idx = u.cm(m).index_set;
    let mut next = BTreeMap::new();
    for (&i, ci) in &c.big_f {
        let ci = if idx.contains(i) { add_model_to(u, ci, m)? } else { ci.clone() };
        next.insert(i, ci);
    }
    c.big_f = next;
    Some(c)
}
