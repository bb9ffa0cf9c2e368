//! The product forcing: pairs `(F, A)` where `F` assigns to finitely many
//! indices `i` a condition over the stationary set `S_i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::adequacy::{first_incomparable, s_star};
use crate::single::{
    amalg_countable, amalg_uncountable, cond_not_in, dn_failure, dq_failure, leq_p, restrict_countable,
    restrict_uncountable, validate_p, ClauseViolation, CondError, PCondition,
};
use crate::universe::{CSet, Container, IdxSet, Universe};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QCondition {
    pub big_f: BTreeMap<u32, PCondition>,
    pub a: CSet,
}

impl QCondition {
    pub fn dom(&self) -> IdxSet {
        self.big_f.keys().copied().collect()
    }

    pub fn is_max(&self) -> bool {
        self.big_f.is_empty() && self.a.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QClause {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl fmt::Display for QClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QViolation {
    pub clause: QClause,
    pub index: Option<u32>,
    pub inner: Option<ClauseViolation>,
    pub witness: String,
}

impl fmt::Display for QViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.clause)?;
        if let Some(i) = self.index {
            write!(f, "[{i}]")?;
        }
        write!(f, ": {}", self.witness)?;
        if let Some(v) = &self.inner {
            write!(f, " ({v})")?;
        }
        Ok(())
    }
}

/// `{ M ∈ A : i ∈ M }`.
fn models_with_index(u: &Universe, a: CSet, i: u32) -> CSet {
    a.iter().filter(|&m| u.cm(m).index_set.contains(i)).collect()
}

pub fn validate_q(u: &Universe, p: &QCondition) -> Result<Vec<QViolation>, CondError> {
    if !p.a.is_subset(u.all_countables()) {
        return Err(CondError::UnknownId(format!("model position outside universe in {:#x}", p.a.0)));
    }
    let mut out = Vec::new();
    let v = |clause, index, witness: String| QViolation { clause, index, inner: None, witness };
    if let Some((m, n)) = first_incomparable(u, p.a) {
        out.push(v(QClause::Q1, None, format!("{} and {} incomparable", u.cm(m).id, u.cm(n).id)));
    }
    let lstar = u.config().lambda_star;
    for (&i, c) in &p.big_f {
        if i >= lstar {
            out.push(v(QClause::Q2, Some(i), format!("index {i} not below {lstar}")));
            continue;
        }
        if c.s_index != Some(i) {
            out.push(v(QClause::Q3, Some(i), format!("coordinate tagged {:?}", c.s_index)));
            continue;
        }
        for inner in validate_p(u, c)? {
            out.push(QViolation {
                clause: QClause::Q3,
                index: Some(i),
                inner: Some(inner),
                witness: "coordinate is not a condition".into(),
            });
        }
        let need = models_with_index(u, p.a, i);
        if let Some(m) = need.diff(c.a).iter().next() {
            out.push(v(QClause::Q3, Some(i), format!("{} has index {i} but is missing from A_F({i})", u.cm(m).id)));
        }
    }
    for i in s_star(u, p.a).diff(p.dom()).iter() {
        out.push(v(QClause::Q4, Some(i), format!("remainder in S_{i} but {i} not in dom F")));
    }
    out.sort();
    Ok(out)
}

pub fn is_q_condition(u: &Universe, p: &QCondition) -> bool {
    matches!(validate_q(u, p), Ok(v) if v.is_empty())
}

/// `q ≤ p`.
pub fn leq_q(q: &QCondition, p: &QCondition) -> bool {
    p.a.is_subset(q.a) && p.big_f.iter().all(|(i, cp)| q.big_f.get(i).is_some_and(|cq| leq_p(cq, cp)))
}

/// `p ⊎ x`: adds the fresh indices `x` with coordinates `(∅, ∅, { M ∈ A : i ∈ M })`.
pub fn uplus(u: &Universe, p: &QCondition, x: IdxSet) -> Result<QCondition, CondError> {
    let clash = x.inter(p.dom());
    if !clash.is_empty() {
        return Err(CondError::DomainClash(format!("indices {:?} already in dom F", clash.iter().collect::<Vec<_>>())));
    }
    let mut q = p.clone();
    for i in x.iter() {
        let mut c = PCondition::empty(Some(i));
        c.a = models_with_index(u, p.a, i);
        q.big_f.insert(i, c);
    }
    Ok(q)
}

/// Replaces coordinates by stronger conditions.
pub fn lower_coordinates(p: &QCondition, repl: &BTreeMap<u32, PCondition>) -> Result<QCondition, CondError> {
    let mut q = p.clone();
    for (&i, r) in repl {
        let Some(old) = p.big_f.get(&i) else {
            return Err(CondError::PreconditionFailed(format!("index {i} not in dom F")));
        };
        if !leq_p(r, old) {
            return Err(CondError::PreconditionFailed(format!("replacement at {i} is not below the old coordinate")));
        }
        q.big_f.insert(i, r.clone());
    }
    Ok(q)
}

/// Why `p` is not in `D(N)` (countable `N`) or `D(P)` (uncountable `P`), if it is not.
pub fn dclass_failure(u: &Universe, p: &QCondition, n: Container) -> Option<String> {
    let idx = u.index_set(n);
    match n {
        Container::C(nc) => {
            let mut shell = PCondition::empty(None);
            shell.a = p.a;
            if let Some(why) = dn_failure(u, &shell, nc) {
                return Some(why);
            }
            for (&i, c) in p.big_f.iter().filter(|(i, _)| idx.contains(**i)) {
                if let Some(why) = dn_failure(u, c, nc) {
                    return Some(format!("coordinate {i}: {why}"));
                }
            }
        }
        Container::U(pu) => {
            for m in p.a.iter() {
                match u.intersect_uncountable(m, pu) {
                    Ok(mp) if p.a.contains(mp) => {}
                    _ => return Some(format!("{} ∩ {} not in A", u.cm(m).id, u.um(pu).id)),
                }
            }
            for (&i, c) in p.big_f.iter().filter(|(i, _)| idx.contains(**i)) {
                if let Some(why) = dq_failure(u, c, pu) {
                    return Some(format!("coordinate {i}: {why}"));
                }
            }
        }
    }
    None
}

pub fn in_dnq(u: &Universe, p: &QCondition, n: Container) -> bool {
    dclass_failure(u, p, n).is_none()
}

/// `q ↾ N` for a simple countable or uncountable `N` with `q` in its dense class.
pub fn restrict_q(u: &Universe, q: &QCondition, n: Container) -> Result<QCondition, CondError> {
    if !u.is_simple(n) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.container_id(n))));
    }
    if let Some(why) = dclass_failure(u, q, n) {
        return Err(CondError::NotInDClass(why));
    }
    let idx = u.index_set(n);
    let mut out = QCondition { big_f: BTreeMap::new(), a: q.a.inter(u.models_in(n)) };
    for (&i, c) in q.big_f.iter().filter(|(i, _)| idx.contains(**i)) {
        let r = match n {
            Container::C(nc) => restrict_countable(u, c, nc)?,
            Container::U(pu) => restrict_uncountable(u, c, pu)?,
        };
        out.big_f.insert(i, r);
    }
    Ok(out)
}

/// Why `w` is not a member of `N`, if it is not.
pub fn q_not_in(u: &Universe, w: &QCondition, n: Container) -> Option<String> {
    if let Some(m) = w.a.diff(u.models_in(n)).iter().next() {
        return Some(format!("model {} not in {}", u.cm(m).id, u.container_id(n)));
    }
    let idx = u.index_set(n);
    for (&i, c) in &w.big_f {
        if !idx.contains(i) {
            return Some(format!("index {i} not in {}", u.container_id(n)));
        }
        if let Some(why) = cond_not_in(u, c, n) {
            return Some(format!("coordinate {i}: {why}"));
        }
    }
    None
}

/// Result of `w ⊕^N q`, recording the indices added to `q` beforehand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OplusOutcome {
    pub condition: QCondition,
    pub uplus_indices: IdxSet,
}

/// `w ⊕^N (q ⊎ x)` with `x = dom F_w \ dom F_q`.
pub fn oplus_q_traced(u: &Universe, w: &QCondition, q: &QCondition, n: Container) -> Result<OplusOutcome, CondError> {
    if !u.is_simple(n) {
        return Err(CondError::PreconditionFailed(format!("{} is not simple", u.container_id(n))));
    }
    let qv = validate_q(u, q)?;
    if let Some(v) = qv.first() {
        return Err(CondError::PreconditionFailed(format!("q is not a condition ({v})")));
    }
    if let Some(why) = dclass_failure(u, q, n) {
        return Err(CondError::PreconditionFailed(format!("q not in the dense class: {why}")));
    }
    if let Some(why) = q_not_in(u, w, n) {
        return Err(CondError::PreconditionFailed(format!("w not in the model: {why}")));
    }
    let wv = validate_q(u, w)?;
    if let Some(v) = wv.first() {
        return Err(CondError::PreconditionFailed(format!("w is not a condition ({v})")));
    }
    if !leq_q(w, &restrict_q(u, q, n)?) {
        return Err(CondError::PreconditionFailed("w is not below the restriction".into()));
    }
    let x = w.dom().diff(q.dom());
    let q = uplus(u, q, x)?;
    let mut out = QCondition { big_f: BTreeMap::new(), a: w.a.union(q.a) };
    for (&i, cq) in &q.big_f {
        let c = match w.big_f.get(&i) {
            None => cq.clone(),
            Some(cw) => match n {
                Container::C(nc) => amalg_countable(u, cw, cq, nc)?,
                Container::U(pu) => amalg_uncountable(u, cw, cq, pu)?,
            },
        };
        out.big_f.insert(i, c);
    }
    Ok(OplusOutcome { condition: out, uplus_indices: x })
}

pub fn oplus_q(u: &Universe, w: &QCondition, q: &QCondition, n: Container) -> Result<QCondition, CondError> {
    oplus_q_traced(u, w, q, n).map(|o| o.condition)
}

/// The coordinate `F_q(i)`; the maximum condition projects to the maximum condition of the coordinate.
pub fn project_coordinate(q: &QCondition, i: u32) -> Result<PCondition, CondError> {
    match q.big_f.get(&i) {
        Some(c) => Ok(c.clone()),
        None if q.is_max() => Ok(PCondition::empty(Some(i))),
        None => Err(CondError::CoordinateMissing(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{golden_amalgam, p1, q1, u1, w_example};
    use crate::single::{restrict_countable, saturate_g};

    fn retag(mut p: PCondition, i: u32) -> PCondition {
        p.s_index = Some(i);
        p
    }

    #[test]
    fn validation_examples() {
        let u = u1();
        assert_eq!(validate_q(&u, &q1(&u)).unwrap(), vec![]);
        assert_eq!(validate_q(&u, &QCondition::default()).unwrap(), vec![]);
        let bad = QCondition { big_f: BTreeMap::new(), a: ["M0", "M2"].iter().map(|n| u.cid(n).unwrap()).collect() };
        let v = validate_q(&u, &bad).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].clause, v[0].index), (QClause::Q4, Some(1)));
    }

    #[test]
    fn order_and_uplus() {
        let u = u1();
        let q = q1(&u);
        assert!(leq_q(&q, &q) && leq_q(&q, &QCondition::default()));
        let mut weak = q.clone();
        weak.big_f.get_mut(&0).unwrap().g.clear();
        assert!(leq_q(&q, &weak) && !leq_q(&weak, &q));
        let e = uplus(&u, &q, [1].into_iter().collect()).unwrap();
        assert_eq!(e.big_f[&1].a, q.a);
        assert!(e.big_f[&1].f.is_empty());
        assert_eq!(e.a, q.a);
        assert!(is_q_condition(&u, &e) && leq_q(&e, &q));
        assert_eq!(uplus(&u, &q, IdxSet::default()).unwrap(), q);
    }

    #[test]
    fn lowering_and_projection() {
        let u = u1();
        let q = q1(&u);
        assert_eq!(lower_coordinates(&q, &BTreeMap::new()).unwrap(), q);
        let sat = saturate_g(&u, &q.big_f[&0]);
        let r = lower_coordinates(&q, &[(0, sat)].into_iter().collect()).unwrap();
        assert!(is_q_condition(&u, &r) && leq_q(&r, &q) && r.a == q.a);
        assert_eq!(project_coordinate(&q, 0).unwrap(), retag(p1(&u), 0));
        assert_eq!(project_coordinate(&QCondition::default(), 1).unwrap(), PCondition::empty(Some(1)));
        assert_eq!(project_coordinate(&q, 1), Err(CondError::CoordinateMissing(1)));
    }

    #[test]
    fn classes_and_restrictions() {
        let u = u1();
        let q = q1(&u);
        let n = Container::C(u.cid("N").unwrap());
        let p = Container::U(u.uid("P").unwrap());
        assert!(in_dnq(&u, &q, n));
        assert!(in_dnq(&u, &QCondition::default(), p));
        assert_eq!(restrict_q(&u, &q, p).unwrap(), q);
        let r = restrict_q(&u, &q, n).unwrap();
        let mut c0 = PCondition::empty(Some(0));
        c0.f.insert(crate::single::DomainElement::OrdS(20), vec![]);
        assert_eq!(r, QCondition { big_f: [(0, c0)].into_iter().collect(), a: CSet::default() });
        assert_eq!(restrict_q(&u, &QCondition::default(), p).unwrap(), QCondition::default());
    }

    #[test]
    fn product_amalgam_reduces_to_coordinate() {
        let u = u1();
        let q = q1(&u);
        let nid = u.cid("N").unwrap();
        let n = Container::C(nid);
        let mut w = restrict_q(&u, &q, n).unwrap();
        let w0 = retag(w_example(&u), 0);
        assert!(leq_p(&w0, &restrict_countable(&u, &q.big_f[&0], nid).unwrap()));
        w.big_f.insert(0, w0.clone());
        w.a = w0.a;
        let out = oplus_q_traced(&u, &w, &q, n).unwrap();
        assert!(out.uplus_indices.is_empty());
        assert_eq!(out.condition.big_f[&0], retag(golden_amalgam(&u), 0));
        assert_eq!(out.condition.a, golden_amalgam(&u).a);
        assert!(is_q_condition(&u, &out.condition));
        assert!(leq_q(&out.condition, &w) && leq_q(&out.condition, &q));
    }

    #[test]
    fn minimal_w_product_amalgam() {
        let u = u1();
        let q = q1(&u);
        let n = Container::C(u.cid("N").unwrap());
        let w = restrict_q(&u, &q, n).unwrap();
        let out = oplus_q(&u, &w, &q, n).unwrap();
        assert_eq!(out.a, w.a.union(q.a));
        assert_eq!(out.dom(), q.dom());
        assert!(leq_q(&out, &q));
    }
}
