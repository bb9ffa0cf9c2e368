//! Exhaustive enumeration of small conditions.

use thiserror::Error;

use scf_core::ordset::OrdSet;
use scf_core::single::{is_condition, DomainElement, PCondition};
use scf_core::universe::{CId, CSet, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_models: usize,
    pub max_dom: usize,
    /// Largest size of a `g` value.
    pub max_g: usize,
    /// Largest number of candidates produced before giving up.
    pub budget: usize,
}

impl Bounds {
    pub const ZERO: Bounds = Bounds { max_models: 0, max_dom: 0, max_g: 0, budget: 1 };
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration exceeds the budget of {0} candidates")]
    BudgetExceeded(usize),
}

/// Subsets of `xs` with at most `k` elements, by size and then lexicographically.
pub fn subsets<T: Copy>(xs: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(xs: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..xs.len() {
            cur.push(xs[i]);
            go(xs, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=k.min(xs.len()) {
        go(xs, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Domain elements a condition over `S` can have: the points of `S`, the
/// traces of the countable models and their cuts at points of `S`.
pub fn domain_pool(u: &Universe, s: OrdSet) -> Vec<DomainElement> {
    let mut pool: Vec<DomainElement> = s.iter().map(DomainElement::OrdS).collect();
    for m in u.cids() {
        let tr = u.trace(m);
        pool.push(DomainElement::Set(tr));
        for a in tr.inter(s).iter() {
            pool.push(DomainElement::Set(tr.below(a)));
        }
    }
    pool.sort();
    pool.dedup();
    pool
}

fn sup_key(k: &OrdSet) -> (Option<u32>, OrdSet) {
    (k.last(), *k)
}

/// Every `g` choice for the pairs `(K, x)`: empty or a subset of the room of at most `max_g` ordinals.
fn g_options(x: DomainElement, k: OrdSet, max_g: usize) -> Vec<OrdSet> {
    let room: Vec<u32> = x.g_room(k).iter().collect();
    subsets(&room, max_g).into_iter().map(|v| v.into_iter().collect()).collect()
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for v in c {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All structurally well-formed triples within `bounds`, valid or not, in canonical order:
/// chains are strictly sorted subsets of the set-shaped domain elements and `g` values lie in their room.
pub fn enumerate_candidates(u: &Universe, s_index: Option<u32>, bounds: Bounds) -> Result<Vec<PCondition>, EnumError> {
    let s = u.stationary(s_index);
    let pool = domain_pool(u, s);
    let models: Vec<CId> = u.cids().collect();
    let mut out = Vec::new();
    for a in subsets(&models, bounds.max_models) {
        let a: CSet = a.into_iter().collect();
        for dom in subsets(&pool, bounds.max_dom) {
            let sets: Vec<OrdSet> = dom.iter().filter_map(|x| x.as_set()).collect();
            let chain_choices: Vec<Vec<Vec<OrdSet>>> = dom
                .iter()
                .map(|&x| {
                    let others: Vec<OrdSet> = sets.iter().copied().filter(|&k| DomainElement::Set(k) != x).collect();
                    subsets(&others, others.len())
                        .into_iter()
                        .map(|mut c| {
                            c.sort_by_key(sup_key);
                            c
                        })
                        .collect()
                })
                .collect();
            for chains in product(&chain_choices) {
                let pairs: Vec<(OrdSet, DomainElement)> =
                    dom.iter().zip(&chains).flat_map(|(&x, c)| c.iter().map(move |&k| (k, x))).collect();
                let g_choices: Vec<Vec<OrdSet>> = pairs.iter().map(|&(k, x)| g_options(x, k, bounds.max_g)).collect();
                for gs in product(&g_choices) {
                    let mut p = PCondition::empty(s_index);
                    p.a = a;
                    for (&x, c) in dom.iter().zip(&chains) {
                        p.f.insert(x, c.clone());
                    }
                    for (&(k, x), &v) in pairs.iter().zip(&gs) {
                        p.set_g(k, x, v);
                    }
                    out.push(p);
                    if out.len() > bounds.budget {
                        return Err(EnumError::BudgetExceeded(bounds.budget));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All conditions within `bounds`, in canonical order.
pub fn enumerate_conditions(u: &Universe, s_index: Option<u32>, bounds: Bounds) -> Result<Vec<PCondition>, EnumError> {
    let mut v = enumerate_candidates(u, s_index, bounds)?;
    v.retain(|p| is_condition(u, p));
    Ok(v)
}
