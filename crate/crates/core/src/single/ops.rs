//! Extension, saturation, closure and restriction of conditions.

use super::{chain_union, cond_not_in, in_hull, validate_p, CondError, DomainElement, PCondition};
use crate::adequacy::ModelRel;
use crate::adequacy::{closure_under_countable, closure_under_uncountable, r_star};
use crate::ordset::OrdSet;
use crate::universe::{CId, CSet, Container, UId, Universe};

/// `p + x`: adds the ordinals `x ⊆ S \ dom f` together with the traces of the models of `A`.
pub fn extend_ordinals(u: &Universe, p: &PCondition, x: OrdSet) -> Result<PCondition, CondError> {
    let s = p.s(u);
    if !x.is_subset(s) {
        return Err(CondError::PreconditionFailed(format!("{} not in S", x.diff(s))));
    }
    let clash = x.inter(p.dom_ords());
    if !clash.is_empty() {
        return Err(CondError::DomainClash(format!("{clash} already in dom f")));
    }
    let mut q = p.clone();
    for a in x.iter() {
        let mut fa: Vec<OrdSet> = p.a.iter().filter(|&m| u.trace(m).contains(a)).map(|m| u.trace(m).below(a)).collect();
        super::normalize_chain(&mut fa);
        for &t in &fa {
            let te = DomainElement::Set(t);
            if q.in_dom(te) {
                return Err(CondError::DomainClash(format!("{t} already in dom f")));
            }
            let ft: Vec<OrdSet> = fa.iter().copied().filter(|&l| u.hull_set(l, t)).collect();
            q.f.insert(te, ft);
        }
        q.f.insert(DomainElement::OrdS(a), fa);
    }
    Ok(q)
}

/// Makes `g` coherent along nested chains while keeping `f` and `A`.
pub fn saturate_g(_u: &Universe, p: &PCondition) -> PCondition {
    let mut q = p.clone();
    q.g.clear();
    for (&y, c) in &p.f {
        for &k in c {
            let mut v = p.g_of(k, y);
            for &l in c {
                let le = DomainElement::Set(l);
                if p.chain_has(le, k) {
                    v = v.union(p.g_of(k, le));
                }
            }
            q.set_g(k, y, v);
        }
    }
    q
}

/// Adds `N` to the side conditions of a condition lying in `N`.
pub fn adjoin_model(u: &Universe, p: &PCondition, n: CId) -> Result<PCondition, CondError> {
    if let Some(why) = cond_not_in(u, p, Container::C(n)) {
        return Err(CondError::NotInModel(why));
    }
    let s = p.s(u);
    let tn = u.trace(n);
    let mut q = p.clone();
    q.a.insert(n);
    for a in p.dom_ords().inter(s).iter() {
        let na = tn.below(a);
        let ne = DomainElement::Set(na);
        if p.in_dom(ne) {
            return Err(CondError::DomainClash(format!("{na} already in dom f")));
        }
        let ae = DomainElement::OrdS(a);
        let old = p.chain(ae).to_vec();
        for &k in &old {
            q.set_g(k, ne, p.g_of(k, ae));
        }
        q.f.insert(ae, chain_union(&old, &[na]));
        q.f.insert(ne, old);
    }
    Ok(q)
}

fn close_with(u: &Universe, q: &PCondition, a: CSet) -> Result<PCondition, CondError> {
    let x = r_star(u, a).inter(q.s(u)).diff(q.dom_ords());
    let mut s = extend_ordinals(u, q, x)?;
    s.a = a;
    Ok(s)
}

/// Extends `q` so that `M ∩ N ∈ A` for every `M < N` in `A`.
pub fn close_under_n(u: &Universe, q: &PCondition, n: CId) -> Result<PCondition, CondError> {
    if !q.a.contains(n) {
        return Err(CondError::PreconditionFailed(format!("{} not in A", u.cm(n).id)));
    }
    let a = closure_under_countable(u, q.a, n)?;
    close_with(u, q, a)
}

/// Extends `q` so that `M ∩ Q ∈ A` for every `M ∈ A`.
pub fn close_under_q(u: &Universe, q: &PCondition, p: UId) -> Result<PCondition, CondError> {
    let a = closure_under_uncountable(u, q.a, p)?;
    close_with(u, q, a)
}

/// Why `r` fails to be in `D_N`, if it does.
pub fn dn_failure(u: &Universe, r: &PCondition, n: CId) -> Option<String> {
    if !r.a.contains(n) {
        return Some(format!("{} not in A", u.cm(n).id));
    }
    for m in r.a.iter() {
        if u.relation(m, n) == ModelRel::Less {
            match u.intersect_countable(m, n) {
                Ok(mn) if r.a.contains(mn) => {}
                _ => return Some(format!("{} ∩ {} not in A", u.cm(m).id, u.cm(n).id)),
            }
        }
    }
    for (&y, c) in &r.f {
        for &x in c {
            let xe = DomainElement::Set(x);
            for &k in r.chain(xe) {
                if !r.g_of(k, xe).is_subset(r.g_of(k, y)) {
                    return Some(format!("g({k}, {x}) not within g({k}, {y})"));
                }
            }
        }
    }
    None
}

pub fn in_dn(u: &Universe, r: &PCondition, n: CId) -> bool {
    dn_failure(u, r, n).is_none()
}

pub fn dq_failure(u: &Universe, q: &PCondition, p: UId) -> Option<String> {
    for m in q.a.iter() {
        match u.intersect_uncountable(m, p) {
            Ok(mp) if q.a.contains(mp) => {}
            _ => return Some(format!("{} ∩ {} not in A", u.cm(m).id, u.um(p).id)),
        }
    }
    None
}

pub fn in_dq(u: &Universe, q: &PCondition, p: UId) -> bool {
    dq_failure(u, q, p).is_none()
}

fn require_valid(u: &Universe, p: &PCondition, what: &str) -> Result<(), CondError> {
    let v = validate_p(u, p)?;
    match v.first() {
        Some(first) => Err(CondError::PreconditionFailed(format!("{what} is not a condition ({first})"))),
        None => Ok(()),
    }
}

pub(crate) fn restrict_unchecked(u: &Universe, r: &PCondition, n: Container) -> PCondition {
    let inside = |x: DomainElement| super::elem_in(u, x, n);
    let mut out = PCondition::empty(r.s_index);
    for (&x, c) in &r.f {
        if inside(x) {
            let v = match n {
                Container::C(_) => c.iter().copied().filter(|&k| u.set_in(n, k)).collect(),
                Container::U(_) => c.clone(),
            };
            out.f.insert(x, v);
        }
    }
    for (&(k, x), &v) in &r.g {
        if u.set_in(n, k) && inside(x) {
            out.g.insert((k, x), v);
        }
    }
    out.a = r.a.inter(u.models_in(n));
    out
}

/// `q ↾ Q`: the part of `q ∈ D_Q` lying in the simple model `Q`.
pub fn restrict_uncountable(u: &Universe, q: &PCondition, p: UId) -> Result<PCondition, CondError> {
    if !u.is_simple(Container::U(p)) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.um(p).id)));
    }
    require_valid(u, q, "q")?;
    if let Some(why) = dq_failure(u, q, p) {
        return Err(CondError::NotInDClass(why));
    }
    Ok(restrict_unchecked(u, q, Container::U(p)))
}

/// `r ↾ N`: the part of `r ∈ D_N` lying in the simple model `N`.
pub fn restrict_countable(u: &Universe, r: &PCondition, n: CId) -> Result<PCondition, CondError> {
    if !u.is_simple(Container::C(n)) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.cm(n).id)));
    }
    require_valid(u, r, "r")?;
    if let Some(why) = dn_failure(u, r, n) {
        return Err(CondError::NotInDClass(why));
    }
    Ok(restrict_unchecked(u, r, Container::C(n)))
}

pub(crate) fn require_condition(u: &Universe, p: &PCondition, what: &str) -> Result<(), CondError> {
    require_valid(u, p, what)
}

pub(crate) fn hull_filter(u: &Universe, c: &[OrdSet], x: DomainElement) -> Vec<OrdSet> {
    c.iter().copied().filter(|&k| in_hull(u, k, x)).collect()
}
