//! Greedy counterexample shrinking by single deletions.

use scf_core::product::QCondition;
use scf_core::single::{DomainElement, PCondition};

use crate::catalog::{Case, Property, Verdict};
use crate::inputs::Inputs;
use crate::runner::evaluate;

fn drop_domain_element(p: &PCondition, x: DomainElement) -> PCondition {
    let mut q = p.clone();
    q.f.remove(&x);
    if let DomainElement::Set(t) = x {
        for c in q.f.values_mut() {
            c.retain(|&k| k != t);
        }
        q.g.retain(|(k, _), _| *k != t);
    }
    q.g.retain(|(_, y), _| *y != x);
    q
}

/// All conditions obtained from `p` by deleting one model, domain element,
/// chain element or `g` ordinal.
pub fn pcond_deletions(p: &PCondition) -> Vec<PCondition> {
    let mut out = Vec::new();
    for m in p.a.iter() {
        let mut q = p.clone();
        q.a.remove(m);
        out.push(q);
    }
    for &x in p.f.keys() {
        out.push(drop_domain_element(p, x));
    }
    for (&x, c) in &p.f {
        for &k in c {
            let mut q = p.clone();
            q.f.get_mut(&x).expect("domain element").retain(|&l| l != k);
            q.g.remove(&(k, x));
            out.push(q);
        }
    }
    for (&(k, x), &v) in &p.g {
        for a in v.iter() {
            let mut q = p.clone();
            let mut w = v;
            w.remove(a);
            q.set_g(k, x, w);
            out.push(q);
        }
    }
    out
}

/// All product conditions obtained from `q` by deleting one model, one
/// index, or one element inside a coordinate.
pub fn qcond_deletions(q: &QCondition) -> Vec<QCondition> {
    let mut out = Vec::new();
    for m in q.a.iter() {
        let mut r = q.clone();
        r.a.remove(m);
        out.push(r);
    }
    for &i in q.big_f.keys() {
        let mut r = q.clone();
        r.big_f.remove(&i);
        out.push(r);
    }
    for (&i, c) in &q.big_f {
        for d in pcond_deletions(c) {
            let mut r = q.clone();
            r.big_f.insert(i, d);
            out.push(r);
        }
    }
    out
}

/// Single deletions applied to the inputs of a trial.
pub fn deletions(x: &Inputs) -> Vec<Inputs> {
    let mut out = Vec::new();
    for (i, p) in x.conds.iter().enumerate() {
        for d in pcond_deletions(p) {
            let mut y = x.clone();
            y.conds[i] = d;
            out.push(y);
        }
    }
    for (i, q) in x.qconds.iter().enumerate() {
        for d in qcond_deletions(q) {
            let mut y = x.clone();
            y.qconds[i] = d;
            out.push(y);
        }
    }
    for (i, s) in x.sets.iter().enumerate() {
        for m in s.iter() {
            let mut y = x.clone();
            y.sets[i] = s.without(m);
            out.push(y);
        }
    }
    for (i, s) in x.idx.iter().enumerate() {
        for j in s.iter() {
            let mut y = x.clone();
            y.idx[i] = s.iter().filter(|&k| k != j).collect();
            out.push(y);
        }
    }
    out
}

/// Repeatedly applies the first single deletion that still fails, until none does.
pub fn shrink(prop: &Property, case: Case, message: String) -> (Case, String) {
    let mut cur = case;
    let mut msg = message;
    'outer: loop {
        for cand in deletions(&cur.inputs) {
            let next = Case { universe: cur.universe.clone(), inputs: cand };
            if let Verdict::Fail(m) = evaluate(prop, &next) {
                cur = next;
                msg = m;
                continue 'outer;
            }
        }
        return (cur, msg);
    }
}
