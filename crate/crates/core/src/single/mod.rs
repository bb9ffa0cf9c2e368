//! Conditions of the single forcing over a stationary set `S`.
//!
//! A condition is a triple `(f, g, A)`: `f` maps domain elements (ordinals of
//! `S` and trace sets) to chains of trace sets, `g` assigns finite ordinal sets
//! to pairs `(K, x)` with `K ∈ f(x)`, and `A` is an adequate set of countable
//! models. Absent `g` pairs denote the empty set and are never stored.

mod amalg;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::adequacy::{first_incomparable, r_star};
use crate::ordset::{OrdSet, OrdinalValue};
use crate::universe::{CId, CSet, Container, Universe, UniverseError};

pub use amalg::{amalg_countable, amalg_countable_traced, amalg_uncountable, amalg_uncountable_traced, CaseMap};
pub use ops::{
    adjoin_model, close_under_n, close_under_q, dn_failure, dq_failure, extend_ordinals, in_dn, in_dq,
    restrict_countable, restrict_uncountable, saturate_g,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondError {
    #[error("unknown model id: {0}")]
    UnknownId(String),
    #[error("domain clash: {0}")]
    DomainClash(String),
    #[error("condition not in model: {0}")]
    NotInModel(String),
    #[error("condition not in the required dense class: {0}")]
    NotInDClass(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coordinate {0} missing")]
    CoordinateMissing(u32),
    #[error("no amalgamation case applies: {0}")]
    AmbiguousCase(String),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

/// A member of the domain of `f`: an ordinal of `S` or a trace set.
///
/// Ordinals sort before sets; sets sort by their sorted element lists.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DomainElement {
    OrdS(u32),
    Set(OrdSet),
}

impl DomainElement {
    pub fn as_set(self) -> Option<OrdSet> {
        match self {
            DomainElement::Set(t) => Some(t),
            DomainElement::OrdS(_) => None,
        }
    }

    pub fn as_ord(self) -> Option<u32> {
        match self {
            DomainElement::OrdS(a) => Some(a),
            DomainElement::Set(_) => None,
        }
    }

    /// The ordinals `g(K, x)` may contain: `[sup K, alpha)` or the part of `x` at or above `sup K`.
    pub fn g_room(self, k: OrdSet) -> OrdSet {
        let lo = k.last().unwrap_or(0);
        match self {
            DomainElement::OrdS(a) => OrdSet::range(lo, a),
            DomainElement::Set(t) => t.at_or_above(lo),
        }
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::OrdS(a) => write!(f, "{a}"),
            DomainElement::Set(t) => write!(f, "{t}"),
        }
    }
}

/// `K ∈ Sk(x)`.
pub fn in_hull(u: &Universe, k: OrdSet, x: DomainElement) -> bool {
    match x {
        DomainElement::OrdS(a) => OrdinalValue::Fin(a).cut(k) == k,
        DomainElement::Set(t) => u.hull_set(k, t),
    }
}

/// Membership of a domain element in a model.
pub fn elem_in(u: &Universe, x: DomainElement, n: Container) -> bool {
    match x {
        DomainElement::OrdS(a) => u.ord_in(n, a),
        DomainElement::Set(t) => u.set_in(n, t),
    }
}

/// Sorts a chain by supremum (ties by element list) and drops duplicates.
pub fn normalize_chain(c: &mut Vec<OrdSet>) {
    c.sort_by_key(|k| (k.last(), *k));
    c.dedup();
}

pub fn chain_union(a: &[OrdSet], b: &[OrdSet]) -> Vec<OrdSet> {
    let mut c: Vec<OrdSet> = a.iter().chain(b).copied().collect();
    normalize_chain(&mut c);
    c
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PCondition {
    /// Index of the stationary set; `None` for the union of the family.
    pub s_index: Option<u32>,
    pub f: BTreeMap<DomainElement, Vec<OrdSet>>,
    /// Nonempty values only.
    pub g: BTreeMap<(OrdSet, DomainElement), OrdSet>,
    pub a: CSet,
}

impl PCondition {
    pub fn empty(s_index: Option<u32>) -> PCondition {
        PCondition { s_index, ..Default::default() }
    }

    pub fn s(&self, u: &Universe) -> OrdSet {
        u.stationary(self.s_index)
    }

    pub fn in_dom(&self, x: DomainElement) -> bool {
        self.f.contains_key(&x)
    }

    /// `f(x)`, empty when `x` is outside the domain.
    pub fn chain(&self, x: DomainElement) -> &[OrdSet] {
        self.f.get(&x).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn chain_has(&self, x: DomainElement, k: OrdSet) -> bool {
        self.chain(x).contains(&k)
    }

    /// The ordinals in the domain.
    pub fn dom_ords(&self) -> OrdSet {
        self.f.keys().filter_map(|x| x.as_ord()).collect()
    }

    pub fn g_of(&self, k: OrdSet, x: DomainElement) -> OrdSet {
        self.g.get(&(k, x)).copied().unwrap_or_default()
    }

    pub fn set_g(&mut self, k: OrdSet, x: DomainElement, v: OrdSet) {
        if v.is_empty() {
            self.g.remove(&(k, x));
        } else {
            self.g.insert((k, x), v);
        }
    }

    /// Canonical form: sorted chains, no empty `g` values.
    pub fn normalize(&mut self) {
        for c in self.f.values_mut() {
            normalize_chain(c);
        }
        self.g.retain(|_, v| !v.is_empty());
    }
}

impl fmt::Display for PCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f: {{")?;
        for (i, (x, c)) in self.f.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} -> [")?;
            for (j, k) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}, g: {{")?;
        for (i, ((k, x), v)) in self.g.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({k}, {x}) -> {v}")?;
        }
        write!(f, "}}, A: {:?})", self.a.iter().map(|c| c.0).collect::<Vec<_>>())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Clause {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    OrderA,
    OrderB,
    OrderC,
    OrderD,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::C1 => "C1",
            Clause::C2 => "C2",
            Clause::C3 => "C3",
            Clause::C4 => "C4",
            Clause::C5 => "C5",
            Clause::C6 => "C6",
            Clause::C7 => "C7",
            Clause::OrderA => "a",
            Clause::OrderB => "b",
            Clause::OrderC => "c",
            Clause::OrderD => "d",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ClauseViolation {
    pub clause: Clause,
    pub witness: String,
}

impl fmt::Display for ClauseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.witness)
    }
}

fn cname(u: &Universe, c: CId) -> &str {
    &u.cm(c).id
}

fn check_ids(u: &Universe, a: CSet) -> Result<(), CondError> {
    if !a.is_subset(u.all_countables()) {
        return Err(CondError::UnknownId(format!("model position outside universe in {:#x}", a.0)));
    }
    Ok(())
}

/// All clause violations of `p`, clause by clause in canonical order.
pub fn validate_p(u: &Universe, p: &PCondition) -> Result<Vec<ClauseViolation>, CondError> {
    check_ids(u, p.a)?;
    let s = p.s(u);
    let dom_ords = p.dom_ords();
    let mut out = Vec::new();
    let mut push = |clause, witness: String| out.push(ClauseViolation { clause, witness });

    if let Some((m, n)) = first_incomparable(u, p.a) {
        push(Clause::C1, format!("{} and {} incomparable", cname(u, m), cname(u, n)));
    }

    for (&x, c) in &p.f {
        match x {
            DomainElement::OrdS(a) => {
                if !s.contains(a) {
                    push(Clause::C2, format!("{a} not in S"));
                }
            }
            DomainElement::Set(t) => {
                let shaped = p.a.iter().any(|m| {
                    let tr = u.trace(m);
                    tr == t || tr.inter(dom_ords).inter(s).iter().any(|a| tr.below(a) == t)
                });
                if !shaped {
                    push(Clause::C2, format!("{t} is not M ∩ alpha for M in A"));
                }
            }
        }
        for w in c.windows(2) {
            if w[0].last() >= w[1].last() {
                push(Clause::C2, format!("f({x}) not strictly sorted by sup at {} , {}", w[0], w[1]));
            }
        }
        for (i, &k) in c.iter().enumerate() {
            if k.is_empty() {
                push(Clause::C2, format!("empty set in f({x})"));
                continue;
            }
            if !in_hull(u, k, x) {
                push(Clause::C2, format!("{k} in f({x}) is not in Sk({x})"));
            }
            for &l in &c[i + 1..] {
                if !u.hull_set(k, l) {
                    push(Clause::C2, format!("f({x}) not a chain: {k} not in Sk({l})"));
                }
            }
        }
    }

    for (&x, c) in &p.f {
        for &k in c {
            let kx = DomainElement::Set(k);
            match p.f.get(&kx) {
                None => push(Clause::C3, format!("{k} in f({x}) is not in dom f")),
                Some(fk) => {
                    let want: Vec<OrdSet> = c.iter().copied().filter(|&l| u.hull_set(l, k)).collect();
                    if *fk != want {
                        push(Clause::C3, format!("f({k}) differs from f({x}) ∩ Sk({k})"));
                    }
                }
            }
        }
    }

    for (&(k, x), &v) in &p.g {
        if !p.chain_has(x, k) {
            push(Clause::C4, format!("g({k}, {x}) defined but {k} not in f({x})"));
        } else if !v.is_subset(x.g_room(k)) {
            push(Clause::C4, format!("g({k}, {x}) = {v} not within {x} above sup {k}"));
        }
    }

    for (&x, c) in &p.f {
        for &l in c {
            for &k in p.chain(DomainElement::Set(l)) {
                let gx = p.g_of(k, x);
                let gl = p.g_of(k, DomainElement::Set(l));
                if !gx.is_subset(gl) {
                    push(Clause::C5, format!("g({k}, {x}) = {gx} not within g({k}, {l}) = {gl}"));
                }
            }
        }
    }

    for a in dom_ords.inter(s).iter() {
        for m in p.a.iter() {
            let tr = u.trace(m);
            if tr.contains(a) && !p.chain_has(DomainElement::OrdS(a), tr.below(a)) {
                push(Clause::C6, format!("{} ∩ {a} missing from f({a})", cname(u, m)));
            }
        }
    }

    let missing = r_star(u, p.a).inter(s).diff(dom_ords);
    if !missing.is_empty() {
        push(Clause::C7, format!("remainder points {missing} not in dom f"));
    }

    out.sort();
    Ok(out)
}

pub fn is_condition(u: &Universe, p: &PCondition) -> bool {
    matches!(validate_p(u, p), Ok(v) if v.is_empty())
}

/// Violations of `q ≤ p`.
pub fn leq_violations(q: &PCondition, p: &PCondition) -> Vec<ClauseViolation> {
    let mut out = Vec::new();
    let mut push = |clause, witness: String| out.push(ClauseViolation { clause, witness });
    if q.s_index != p.s_index {
        push(Clause::OrderA, "conditions over different stationary sets".into());
    }
    if !p.a.is_subset(q.a) {
        push(Clause::OrderA, format!("models {:?} dropped", p.a.diff(q.a).iter().map(|c| c.0).collect::<Vec<_>>()));
    }
    for (&x, c) in &p.f {
        match q.f.get(&x) {
            None => push(Clause::OrderB, format!("{x} dropped from dom f")),
            Some(cq) => {
                for k in c {
                    if !cq.contains(k) {
                        push(Clause::OrderB, format!("{k} dropped from f({x})"));
                    }
                }
            }
        }
    }
    for (&(k, x), &v) in &p.g {
        if !v.is_subset(q.g_of(k, x)) {
            push(Clause::OrderC, format!("g({k}, {x}) shrinks"));
        }
    }
    for (&x, cq) in &q.f {
        if !p.in_dom(x) {
            continue;
        }
        for &k in cq {
            if p.in_dom(DomainElement::Set(k)) && !p.chain_has(x, k) {
                push(Clause::OrderD, format!("{k} added to f({x}) though both were in dom f"));
            }
        }
    }
    out.sort();
    out
}

/// `q ≤ p`.
pub fn leq_p(q: &PCondition, p: &PCondition) -> bool {
    leq_violations(q, p).is_empty()
}

/// Why `p` is not a member of the model `n`, if it is not.
pub fn cond_not_in(u: &Universe, p: &PCondition, n: Container) -> Option<String> {
    let name = match n {
        Container::C(c) => u.cm(c).id.clone(),
        Container::U(q) => u.um(q).id.clone(),
    };
    if let Some(m) = p.a.diff(u.models_in(n)).iter().next() {
        return Some(format!("model {} not in {name}", cname(u, m)));
    }
    for (&x, c) in &p.f {
        if !elem_in(u, x, n) {
            return Some(format!("domain element {x} not in {name}"));
        }
        if let Some(k) = c.iter().find(|&&k| !u.set_in(n, k)) {
            return Some(format!("{k} in f({x}) not in {name}"));
        }
    }
    for &(k, x) in p.g.keys() {
        let v = p.g[&(k, x)];
        if let Some(b) = v.iter().find(|&b| !u.ord_in(n, b)) {
            return Some(format!("ordinal {b} of g({k}, {x}) not in {name}"));
        }
    }
    None
}

pub fn cond_in(u: &Universe, p: &PCondition, n: Container) -> bool {
    cond_not_in(u, p, n).is_none()
}

#[cfg(test)]
mod tests;
