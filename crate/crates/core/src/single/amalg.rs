//! The amalgams `w ⊕_Q q` and `w ⊕_N r`.

use std::collections::BTreeMap;

use super::ops::{dn_failure, dq_failure, hull_filter, require_condition, restrict_unchecked};
use super::{chain_union, cond_not_in, leq_violations, CondError, DomainElement, PCondition};
use crate::ordset::OrdSet;
use crate::universe::{CId, Container, UId, Universe};

/// Which defining case produced each domain element of an amalgam.
pub type CaseMap = BTreeMap<DomainElement, u8>;

fn require_below_restriction(u: &Universe, w: &PCondition, big: &PCondition, n: Container) -> Result<(), CondError> {
    if let Some(why) = cond_not_in(u, w, n) {
        return Err(CondError::PreconditionFailed(format!("w not in the model: {why}")));
    }
    require_condition(u, w, "w")?;
    let res = restrict_unchecked(u, big, n);
    if let Some(v) = leq_violations(w, &res).first() {
        return Err(CondError::PreconditionFailed(format!("w is not below the restriction ({v})")));
    }
    Ok(())
}

/// The amalgamated `g`: `g(K, x)` collects `g_w(K, y) ∪ g_r(K, y)` over `y = x` and all `y` with `x ∈ f(y)`.
fn amalg_g(out: &mut PCondition, w: &PCondition, r: &PCondition) {
    let mut parents: BTreeMap<OrdSet, Vec<DomainElement>> = BTreeMap::new();
    for (&y, c) in &out.f {
        for &l in c {
            parents.entry(l).or_default().push(y);
        }
    }
    let mut g = BTreeMap::new();
    for (&x, c) in &out.f {
        let ys: Vec<DomainElement> =
            std::iter::once(x).chain(x.as_set().and_then(|t| parents.get(&t)).into_iter().flatten().copied()).collect();
        for &k in c {
            let v = ys.iter().fold(OrdSet::EMPTY, |acc, &y| acc.union(w.g_of(k, y)).union(r.g_of(k, y)));
            if !v.is_empty() {
                g.insert((k, x), v);
            }
        }
    }
    out.g = g;
}

fn put(out: &mut PCondition, cases: &mut CaseMap, x: DomainElement, c: Vec<OrdSet>, case: u8) -> Result<(), CondError> {
    if let Some(prev) = cases.insert(x, case) {
        return Err(CondError::AmbiguousCase(format!("{x} matches cases {prev} and {case}")));
    }
    out.f.insert(x, c);
    Ok(())
}

fn largest_inside(u: &Universe, c: &[OrdSet], n: Container) -> Option<OrdSet> {
    c.iter().rev().copied().find(|&k| u.set_in(n, k))
}

/// `w ⊕_Q q` together with the case used for each domain element.
pub fn amalg_uncountable_traced(
    u: &Universe,
    w: &PCondition,
    q: &PCondition,
    p: UId,
) -> Result<(PCondition, CaseMap), CondError> {
    let qc = Container::U(p);
    if !u.is_simple(qc) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.um(p).id)));
    }
    if w.s_index != q.s_index {
        return Err(CondError::PreconditionFailed("conditions over different stationary sets".into()));
    }
    require_condition(u, q, "q")?;
    if let Some(why) = dq_failure(u, q, p) {
        return Err(CondError::PreconditionFailed(format!("q not in D_Q: {why}")));
    }
    require_below_restriction(u, w, q, qc)?;

    let mut out = PCondition::empty(q.s_index);
    let mut cases = CaseMap::new();
    for (&x, c) in &w.f {
        out.f.insert(x, c.clone());
        cases.insert(x, 1);
    }
    for (&x, c) in &q.f {
        if w.in_dom(x) {
            continue;
        }
        if super::elem_in(u, x, qc) {
            return Err(CondError::AmbiguousCase(format!("{x} in dom f_q ∩ Q but not in dom f_w")));
        }
        match largest_inside(u, c, qc) {
            None => {
                out.f.insert(x, c.clone());
                cases.insert(x, 2);
            }
            Some(m) => {
                let me = DomainElement::Set(m);
                if !w.in_dom(me) {
                    return Err(CondError::AmbiguousCase(format!("{m} not in dom f_w")));
                }
                out.f.insert(x, chain_union(c, w.chain(me)));
                cases.insert(x, 3);
            }
        }
    }
    amalg_g(&mut out, w, q);
    out.a = w.a.union(q.a);
    Ok((out, cases))
}

pub fn amalg_uncountable(u: &Universe, w: &PCondition, q: &PCondition, p: UId) -> Result<PCondition, CondError> {
    amalg_uncountable_traced(u, w, q, p).map(|(c, _)| c)
}

/// `w ⊕_N r` together with the case (1 to 7) used for each domain element.
pub fn amalg_countable_traced(
    u: &Universe,
    w: &PCondition,
    r: &PCondition,
    n: CId,
) -> Result<(PCondition, CaseMap), CondError> {
    let nc = Container::C(n);
    if !u.is_simple(nc) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.cm(n).id)));
    }
    if w.s_index != r.s_index {
        return Err(CondError::PreconditionFailed("conditions over different stationary sets".into()));
    }
    require_condition(u, r, "r")?;
    if let Some(why) = dn_failure(u, r, n) {
        return Err(CondError::PreconditionFailed(format!("r not in D_N: {why}")));
    }
    require_below_restriction(u, w, r, nc)?;

    let s = r.s(u);
    let tn = u.trace(n);
    let r_ords = r.dom_ords();
    let above: Vec<CId> = r.a.iter().filter(|&m| u.relation(n, m).is_le()).collect();

    let mut out = PCondition::empty(r.s_index);
    let mut cases = CaseMap::new();
    let mut fresh: BTreeMap<OrdSet, u32> = BTreeMap::new();
    for (&x, c) in &w.f {
        match x {
            DomainElement::Set(_) => put(&mut out, &mut cases, x, c.clone(), 1)?,
            DomainElement::OrdS(a) if r_ords.contains(a) => {
                put(&mut out, &mut cases, x, chain_union(c, r.chain(x)), 2)?;
            }
            DomainElement::OrdS(a) => {
                let mut extra = Vec::new();
                for &m in &above {
                    let tm = u.trace(m);
                    if tm.contains(a) {
                        extra.push(tm.below(a));
                        if fresh.insert(tm.below(a), a).is_some_and(|b| b != a) {
                            return Err(CondError::AmbiguousCase(format!("{} arises from two ordinals", tm.below(a))));
                        }
                    }
                }
                put(&mut out, &mut cases, x, chain_union(c, &extra), 3)?;
            }
        }
    }

    for (&x, c) in &r.f {
        if w.in_dom(x) {
            continue;
        }
        if super::elem_in(u, x, nc) {
            return Err(CondError::AmbiguousCase(format!("{x} in dom f_r ∩ N but not in dom f_w")));
        }
        let anchors: Vec<u32> = r_ords
            .inter(s)
            .inter(tn)
            .iter()
            .filter(|&a| {
                let na = tn.below(a);
                c.contains(&na) || x == DomainElement::Set(na)
            })
            .collect();
        match anchors.as_slice() {
            [a] => {
                let ae = DomainElement::OrdS(*a);
                if !w.in_dom(ae) {
                    return Err(CondError::AmbiguousCase(format!("anchor {a} not in dom f_w")));
                }
                put(&mut out, &mut cases, x, chain_union(w.chain(ae), c), 4)?;
            }
            [] => match largest_inside(u, c, nc) {
                None => put(&mut out, &mut cases, x, c.clone(), 5)?,
                Some(m) => {
                    let me = DomainElement::Set(m);
                    if !w.in_dom(me) {
                        return Err(CondError::AmbiguousCase(format!("{m} not in dom f_w")));
                    }
                    put(&mut out, &mut cases, x, chain_union(c, w.chain(me)), 6)?;
                }
            },
            _ => return Err(CondError::AmbiguousCase(format!("several anchors {anchors:?} for {x}"))),
        }
    }

    for (t, a) in fresh {
        let te = DomainElement::Set(t);
        let fa = out.chain(DomainElement::OrdS(a)).to_vec();
        put(&mut out, &mut cases, te, hull_filter(u, &fa, te), 7)?;
    }

    amalg_g(&mut out, w, r);
    out.a = w.a.union(r.a);
    Ok((out, cases))
}

pub fn amalg_countable(u: &Universe, w: &PCondition, r: &PCondition, n: CId) -> Result<PCondition, CondError> {
    amalg_countable_traced(u, w, r, n).map(|(c, _)| c)
}
