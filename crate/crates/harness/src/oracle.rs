//! A direct, unoptimized reading of the definitions, used to cross-check
//! the operators of the core crate on exhaustively enumerated inputs.

use scf_core::adequacy::{r_star as fast_r_star, s_star as fast_s_star, ModelRel};
use scf_core::ordset::OrdSet;
use scf_core::single::{
    in_dn, in_dq, leq_p, restrict_countable, restrict_uncountable, validate_p, DomainElement, PCondition,
};
use scf_core::universe::{CId, CSet, Container, IdxSet, UId, Universe};

use crate::catalog::{self, Verdict};
use crate::enumerate::{enumerate_candidates, subsets, Bounds, EnumError};
use crate::inputs::Inputs;

fn below(t: OrdSet, a: u32) -> OrdSet {
    t.iter().filter(|&x| x < a).collect()
}

fn sup(k: OrdSet) -> u32 {
    k.iter().max().unwrap_or(0)
}

pub fn relation(u: &Universe, m: CId, n: CId) -> ModelRel {
    if m == n {
        return ModelRel::Equiv;
    }
    let Some(b) = u.beta_opt(m, n) else {
        return ModelRel::Incomparable;
    };
    let (tm, tn) = (below(u.trace(m), b), below(u.trace(n), b));
    if tm == tn {
        ModelRel::Equiv
    } else if u.mem_set(tm, n) {
        ModelRel::Less
    } else if u.mem_set(tn, m) {
        ModelRel::Greater
    } else {
        ModelRel::Incomparable
    }
}

pub fn adequate(u: &Universe, a: CSet) -> bool {
    a.iter().all(|m| a.iter().all(|n| relation(u, m, n) != ModelRel::Incomparable))
}

/// `min((M ∩ κ) \ β_{K,M})` for `K ∼ M`.
fn remainder(u: &Universe, k: CId, m: CId) -> Option<u32> {
    if relation(u, k, m) != ModelRel::Equiv {
        return None;
    }
    let b = u.beta_opt(k, m)?;
    u.trace(m).iter().filter(|&x| x >= b).min()
}

pub fn r_star(u: &Universe, a: CSet) -> OrdSet {
    let mut out = OrdSet::EMPTY;
    for k in a.iter() {
        for m in a.iter() {
            if let Some(g) = remainder(u, k, m) {
                out.insert(g);
            }
        }
    }
    out
}

pub fn s_star(u: &Universe, a: CSet) -> IdxSet {
    let mut out = Vec::new();
    for k in a.iter() {
        for m in a.iter() {
            let Some(g) = remainder(u, k, m) else { continue };
            for i in 0..u.config().lambda_star {
                if u.cm(k).index_set.contains(i) && u.cm(m).index_set.contains(i) && u.stationary(Some(i)).contains(g) {
                    out.push(i);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn in_sk(u: &Universe, k: OrdSet, x: DomainElement) -> bool {
    match x {
        DomainElement::OrdS(a) => k.iter().all(|e| e < a),
        DomainElement::Set(t) => u.hull_set(k, t),
    }
}

fn g(p: &PCondition, k: OrdSet, x: DomainElement) -> OrdSet {
    p.g.get(&(k, x)).copied().unwrap_or(OrdSet::EMPTY)
}

fn f(p: &PCondition, x: DomainElement) -> Vec<OrdSet> {
    p.f.get(&x).cloned().unwrap_or_default()
}

/// Whether `p` satisfies every clause of the definition of a condition.
pub fn valid(u: &Universe, p: &PCondition) -> bool {
    let s = u.stationary(p.s_index);
    let dom: Vec<DomainElement> = p.f.keys().copied().collect();
    let dom_ords: Vec<u32> = dom.iter().filter_map(|x| x.as_ord()).collect();
    // C1
    if !adequate(u, p.a) {
        return false;
    }
    // C2
    for &x in &dom {
        let shaped = match x {
            DomainElement::OrdS(a) => s.contains(a),
            DomainElement::Set(t) => p.a.iter().any(|m| {
                u.trace(m) == t
                    || dom_ords.iter().any(|&a| s.contains(a) && u.trace(m).contains(a) && below(u.trace(m), a) == t)
            }),
        };
        if !shaped {
            return false;
        }
        let c = f(p, x);
        for (i, &k) in c.iter().enumerate() {
            if k.is_empty() || !in_sk(u, k, x) {
                return false;
            }
            for (j, &l) in c.iter().enumerate() {
                if i < j && !(sup(k) < sup(l) && u.hull_set(k, l)) {
                    return false;
                }
            }
        }
    }
    // C3
    for &x in &dom {
        for k in f(p, x) {
            let ke = DomainElement::Set(k);
            if !p.f.contains_key(&ke) {
                return false;
            }
            let want: Vec<OrdSet> = f(p, x).into_iter().filter(|&l| u.hull_set(l, k)).collect();
            if f(p, ke) != want {
                return false;
            }
        }
    }
    // C4
    for (&(k, x), &v) in &p.g {
        if v.is_empty() || !f(p, x).contains(&k) {
            return false;
        }
        let ok = v.iter().all(|e| {
            e >= sup(k)
                && match x {
                    DomainElement::OrdS(a) => e < a,
                    DomainElement::Set(t) => t.contains(e),
                }
        });
        if !ok {
            return false;
        }
    }
    // C5
    for &x in &dom {
        for l in f(p, x) {
            for k in f(p, DomainElement::Set(l)) {
                if !g(p, k, x).is_subset(g(p, k, DomainElement::Set(l))) {
                    return false;
                }
            }
        }
    }
    // C6
    for &a in &dom_ords {
        if !s.contains(a) {
            continue;
        }
        for m in p.a.iter() {
            if u.trace(m).contains(a) && !f(p, DomainElement::OrdS(a)).contains(&below(u.trace(m), a)) {
                return false;
            }
        }
    }
    // C7
    r_star(u, p.a).iter().all(|x| !s.contains(x) || dom_ords.contains(&x))
}

/// `q ≤ p`.
pub fn leq(q: &PCondition, p: &PCondition) -> bool {
    if q.s_index != p.s_index || !p.a.iter().all(|m| q.a.contains(m)) {
        return false;
    }
    for (x, c) in &p.f {
        let Some(cq) = q.f.get(x) else { return false };
        if !c.iter().all(|k| cq.contains(k)) {
            return false;
        }
        for k in cq {
            if p.f.contains_key(&DomainElement::Set(*k)) && !c.contains(k) {
                return false;
            }
        }
    }
    p.g.iter().all(|(&(k, x), &v)| v.is_subset(g(q, k, x)))
}

fn elem_in(u: &Universe, x: DomainElement, n: Container) -> bool {
    match x {
        DomainElement::OrdS(a) => u.ord_in(n, a),
        DomainElement::Set(t) => u.set_in(n, t),
    }
}

pub fn in_d_countable(u: &Universe, r: &PCondition, n: CId) -> bool {
    if !r.a.contains(n) {
        return false;
    }
    for m in r.a.iter() {
        if relation(u, m, n) == ModelRel::Less && !u.intersect_countable(m, n).is_ok_and(|mn| r.a.contains(mn)) {
            return false;
        }
    }
    for (&y, c) in &r.f {
        for &x in c {
            for k in f(r, DomainElement::Set(x)) {
                if !g(r, k, DomainElement::Set(x)).is_subset(g(r, k, y)) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn in_d_uncountable(u: &Universe, q: &PCondition, p: UId) -> bool {
    q.a.iter().all(|m| u.intersect_uncountable(m, p).is_ok_and(|mp| q.a.contains(mp)))
}

/// The restriction of `p` to `n`, read off the definition.
pub fn restrict(u: &Universe, p: &PCondition, n: Container) -> PCondition {
    let mut out = PCondition::empty(p.s_index);
    for (&x, c) in &p.f {
        if !elem_in(u, x, n) {
            continue;
        }
        let v = match n {
            Container::C(_) => c.iter().copied().filter(|&k| u.set_in(n, k)).collect(),
            Container::U(_) => c.clone(),
        };
        out.f.insert(x, v);
    }
    for (&(k, x), &v) in &p.g {
        if u.set_in(n, k) && elem_in(u, x, n) {
            out.g.insert((k, x), v);
        }
    }
    out.a = p.a.iter().filter(|&m| u.models_in(n).contains(m)).collect();
    out
}

/// Tallies of one exhaustive sweep over a universe.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sweep {
    pub candidates: usize,
    pub conditions: usize,
    pub order_queries: usize,
    pub restriction_queries: usize,
    pub remainder_queries: usize,
    pub lemma_checks: usize,
    pub disagreements: Vec<String>,
}

/// Compares the core operators against this module on every enumerated
/// candidate, every ordered pair of conditions (up to `max_pairs`), every
/// restriction to a simple model, and every adequate set of size at most
/// `bounds.max_models + 1`; checks the lemmas that quantify over all conditions.
pub fn sweep(u: &Universe, bounds: Bounds, max_pairs: usize) -> Result<Sweep, EnumError> {
    let mut out = Sweep::default();
    let cands = enumerate_candidates(u, None, bounds)?;
    out.candidates = cands.len();
    let mut conds = Vec::new();
    for p in &cands {
        let fast = matches!(validate_p(u, p), Ok(v) if v.is_empty());
        if fast != valid(u, p) {
            out.disagreements.push(format!("validity of {p}: core {fast}"));
        }
        if fast {
            conds.push(p.clone());
        }
    }
    out.conditions = conds.len();

    'pairs: for q in &conds {
        for p in &conds {
            if out.order_queries >= max_pairs {
                break 'pairs;
            }
            out.order_queries += 1;
            if leq_p(q, p) != leq(q, p) {
                out.disagreements.push(format!("order {q} ≤ {p}"));
            }
        }
    }

    let simple_c: Vec<CId> = u.cids().filter(|&n| u.cm(n).simple).collect();
    let simple_u: Vec<UId> = u.uids().filter(|&q| u.um(q).simple).collect();
    for p in &conds {
        for &n in &simple_c {
            let d = in_d_countable(u, p, n);
            if d != in_dn(u, p, n) {
                out.disagreements.push(format!("D_N membership of {p} for {}", u.cm(n).id));
            }
            if d {
                out.restriction_queries += 1;
                if restrict_countable(u, p, n).ok() != Some(restrict(u, p, Container::C(n))) {
                    out.disagreements.push(format!("restriction of {p} to {}", u.cm(n).id));
                }
            }
        }
        for &q in &simple_u {
            let d = in_d_uncountable(u, p, q);
            if d != in_dq(u, p, q) {
                out.disagreements.push(format!("D_Q membership of {p} for {}", u.um(q).id));
            }
            if d {
                out.restriction_queries += 1;
                if restrict_uncountable(u, p, q).ok() != Some(restrict(u, p, Container::U(q))) {
                    out.disagreements.push(format!("restriction of {p} to {}", u.um(q).id));
                }
            }
        }
    }

    let models: Vec<CId> = u.cids().collect();
    for a in subsets(&models, bounds.max_models + 1) {
        let a: CSet = a.into_iter().collect();
        if !adequate(u, a) {
            continue;
        }
        out.remainder_queries += 1;
        if fast_r_star(u, a) != r_star(u, a) || fast_s_star(u, a) != s_star(u, a) {
            out.disagreements.push(format!("r* or s* of {:?}", a.iter().map(|m| &u.cm(m).id).collect::<Vec<_>>()));
        }
    }

    let mut lemma = |id: &str, inputs: Inputs| {
        let prop = catalog::find(id).expect("catalog property");
        out.lemma_checks += 1;
        if let Verdict::Fail(msg) = (prop.check)(u, &inputs) {
            out.disagreements.push(format!("{id}: {msg}"));
        }
    };
    for p in &conds {
        for id in ["P-4.5", "P-4.6", "P-7.10"] {
            lemma(id, Inputs { conds: vec![p.clone()], ..Default::default() });
        }
    }
    for &n in &simple_c {
        let nc = Container::C(n);
        for r in conds.iter().filter(|r| in_d_countable(u, r, n)) {
            let rn = restrict(u, r, nc);
            for w in conds.iter().filter(|w| leq(w, &rn) && scf_core::single::cond_in(u, w, nc)) {
                lemma(
                    "P-7.9",
                    Inputs { containers: vec![nc], conds: vec![r.clone(), w.clone()], ..Default::default() },
                );
            }
        }
    }
    Ok(out)
}
