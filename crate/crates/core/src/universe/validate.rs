//! The axiom ledger A1–A14 checked over every tuple of a finite universe.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CId, CSet, Universe};
use crate::adequacy::ModelRel;
use crate::ordset::{OrdSet, OrdinalValue};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
}

impl AxiomId {
    pub const ALL: [AxiomId; 14] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::A7,
        AxiomId::A8,
        AxiomId::A9,
        AxiomId::A10,
        AxiomId::A11,
        AxiomId::A12,
        AxiomId::A13,
        AxiomId::A14,
    ];
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomEntry {
    pub axiom: AxiomId,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failed(&self) -> Vec<AxiomId> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.axiom).collect()
    }

    pub fn passed(&self, a: AxiomId) -> bool {
        self.entries.iter().any(|e| e.axiom == a && e.passed)
    }
}

type Check = Result<(), String>;
type CheckFn = fn(&Universe) -> Check;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

pub fn validate_universe(u: &Universe) -> AxiomReport {
    validate_with(u, false)
}

/// Like [`validate_universe`] but stops after the first failing axiom.
pub(crate) fn validate_fast(u: &Universe) -> Option<AxiomId> {
    validate_with(u, true).failed().first().copied()
}

fn validate_with(u: &Universe, stop_early: bool) -> AxiomReport {
    let checks: [(AxiomId, CheckFn); 14] = [
        (AxiomId::A1, a1),
        (AxiomId::A2, a2),
        (AxiomId::A3, a3),
        (AxiomId::A4, a4),
        (AxiomId::A5, a5),
        (AxiomId::A6, a6),
        (AxiomId::A7, a7),
        (AxiomId::A8, a8),
        (AxiomId::A9, a9),
        (AxiomId::A10, a10),
        (AxiomId::A11, a11),
        (AxiomId::A12, a12),
        (AxiomId::A13, a13),
        (AxiomId::A14, a14),
    ];
    let mut entries = Vec::with_capacity(14);
    let mut failed = false;
    for (id, check) in checks {
        if stop_early && failed {
            entries.push(AxiomEntry { axiom: id, passed: true, witness: None });
            continue;
        }
        let r = check(u);
        failed |= r.is_err();
        entries.push(AxiomEntry { axiom: id, passed: r.is_ok(), witness: r.err() });
    }
    AxiomReport { entries }
}

fn name(u: &Universe, c: CId) -> &str {
    &u.cm(c).id
}

fn trace_set_shape(u: &Universe, t: OrdSet) -> Check {
    let w = u.config().omega1_cut;
    ensure!(!t.is_empty(), "empty trace set");
    ensure!(t.last().unwrap() < u.config().size, "{t} leaves [0, {})", u.config().size);
    let d = u.delta_of(t);
    ensure!(t.below(w) == OrdSet::range(0, d), "{t} is not an initial segment below {w}");
    Ok(())
}

fn a1(u: &Universe) -> Check {
    let c = u.config();
    ensure!(c.size >= 2, "size {} < 2", c.size);
    ensure!(c.omega1_cut >= 1 && c.omega1_cut < c.size, "omega1Cut {} not in [1, size)", c.omega1_cut);
    ensure!(!c.lambda_set.is_empty(), "lambda is empty");
    ensure!(
        c.lambda_set.is_subset(OrdSet::range(c.omega1_cut, c.size)),
        "lambda {} not inside [{}, {})",
        c.lambda_set,
        c.omega1_cut,
        c.size
    );
    ensure!(c.lambda_star >= 1, "lambdaStar is 0");
    ensure!(
        c.stationary_family.len() == c.lambda_star as usize,
        "{} stationary sets for lambdaStar {}",
        c.stationary_family.len(),
        c.lambda_star
    );
    for (i, s) in c.stationary_family.iter().enumerate() {
        ensure!(s.is_subset(c.lambda_set), "S_{i} = {s} not inside lambda");
    }
    if let Some(d) = u.duplicate_ids().first() {
        return Err(format!("duplicate id {d}"));
    }
    if let Some((a, b)) = u.dangling().first() {
        return Err(format!("{a} refers to unknown model {b}"));
    }
    let idx_range = |s: super::IdxSet| s.iter().all(|i| i < c.lambda_star);
    let mut keys = BTreeSet::new();
    for m in u.countables() {
        trace_set_shape(u, m.trace).map_err(|e| format!("trace of {}: {e}", m.id))?;
        ensure!(idx_range(m.index_set), "indexSet of {} exceeds lambdaStar", m.id);
        for k in &m.set_family {
            trace_set_shape(u, *k).map_err(|e| format!("setFamily of {}: {e}", m.id))?;
        }
        ensure!(keys.insert((m.trace, m.index_set)), "{} repeats the trace and indexSet of another model", m.id);
    }
    for p in u.uncountables() {
        ensure!(p.cut >= c.omega1_cut && p.cut < c.size, "cut {} of {} not in [W, size)", p.cut, p.id);
        ensure!(idx_range(p.index_set), "indexSet of {} exceeds lambdaStar", p.id);
    }
    Ok(())
}

fn a2(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            let b = u.beta_opt(m, n);
            ensure!(b.is_some(), "no comparison point for ({}, {})", name(u, m), name(u, n));
            ensure!(b == u.beta_opt(n, m), "beta not symmetric on ({}, {})", name(u, m), name(u, n));
        }
    }
    Ok(())
}

fn a3(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            let Some(b) = u.beta_opt(m, n) else { continue };
            let common = u.trace(m).inter(u.trace(n));
            ensure!(common.below(b) == common, "common part of ({}, {}) reaches beta {b}", name(u, m), name(u, n));
        }
    }
    Ok(())
}

fn a4(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            let Some(b) = u.beta_opt(m, n) else { continue };
            for l in u.lambda().below(b).iter() {
                let win = OrdSet::range(l, b);
                ensure!(
                    !u.trace(m).is_disjoint(win) && !u.trace(n).is_disjoint(win),
                    "({}, {}) leave a gap [{l}, {b})",
                    name(u, m),
                    name(u, n)
                );
            }
        }
    }
    Ok(())
}

fn a5(u: &Universe) -> Check {
    for k in u.cids() {
        for m in u.cids() {
            if !u.trace(k).is_subset(u.trace(m)) {
                continue;
            }
            for n in u.cids() {
                if let (Some(x), Some(y)) = (u.beta_opt(k, n), u.beta_opt(m, n)) {
                    ensure!(x <= y, "beta({}, {}) > beta({}, {})", name(u, k), name(u, n), name(u, m), name(u, n));
                }
            }
        }
    }
    Ok(())
}

fn a6(u: &Universe) -> Check {
    for p in u.uids() {
        let cut = u.um(p).cut;
        for m in u.u_members(p).iter() {
            for k in u.cids() {
                if let Some(b) = u.beta_opt(k, m) {
                    ensure!(
                        b < cut,
                        "beta({}, {}) = {b} not below cut {cut} of {}",
                        name(u, k),
                        name(u, m),
                        u.um(p).id
                    );
                }
            }
        }
    }
    Ok(())
}

fn a7(u: &Universe) -> Check {
    let lambda = u.lambda();
    for n in u.cids() {
        let m = u.cm(n);
        let dn = u.delta(n);
        for &k in &m.set_family {
            ensure!(k.is_subset(m.trace), "{k} in {} is not inside its trace", m.id);
            ensure!(u.delta_of(k) < dn, "{k} in {} does not lower delta", m.id);
            for s in k.initial_segments() {
                ensure!(u.mem_set(s, n), "{} holds {k} but not its initial segment {s}", m.id);
            }
            let top = k.last().unwrap() + 1;
            ensure!(
                m.trace.contains(top) && !lambda.contains(top),
                "{} holds {k} but not the successor point {top}",
                m.id
            );
            for &(rep, a) in u.reps(k) {
                for &j in &u.cm(rep).set_family {
                    if a.cut(j) == j {
                        ensure!(u.mem_set(j, n), "{} holds {k} but not {j} from its hull", m.id);
                    }
                }
            }
        }
    }
    Ok(())
}

fn a8(u: &Universe) -> Check {
    for n in u.cids() {
        let nm = u.cm(n);
        for m in u.members(n).iter() {
            let mm = u.cm(m);
            ensure!(mm.trace.is_subset(nm.trace), "{} ∈ {} but traces are not nested", mm.id, nm.id);
            ensure!(u.delta(m) < u.delta(n), "{} ∈ {} but delta does not drop", mm.id, nm.id);
            ensure!(mm.index_set.is_subset(nm.index_set), "{} ∈ {} but indexSets are not nested", mm.id, nm.id);
            ensure!(u.mem_set(mm.trace, n), "{} ∈ {} but its trace is not", mm.id, nm.id);
            ensure!(
                mm.set_family.iter().all(|&k| u.mem_set(k, n)),
                "{} ∈ {} but not all of its sets are",
                mm.id,
                nm.id
            );
            ensure!(u.members(m).is_subset(u.members(n)), "{} ∈ {} but not all of its models are", mm.id, nm.id);
            ensure!(
                u.u_members_of_c(m) & !u.u_members_of_c(n) == 0,
                "{} ∈ {} but not all of its uncountable models are",
                mm.id,
                nm.id
            );
        }
        for q in u.uids() {
            if u.u_in_c(q, n) {
                ensure!(nm.trace.contains(u.um(q).cut), "{} ∈ {} but its cut is not", u.um(q).id, nm.id);
            }
        }
    }
    for p in u.uids() {
        let pm = u.um(p);
        for m in u.u_members(p).iter() {
            let mm = u.cm(m);
            ensure!(mm.trace.last().unwrap_or(0) < pm.cut, "{} ∈ {} reaches its cut", mm.id, pm.id);
            ensure!(mm.index_set.is_subset(pm.index_set), "{} ∈ {} but indexSets are not nested", mm.id, pm.id);
            ensure!(u.members(m).is_subset(u.u_members(p)), "{} ∈ {} but not all of its models are", mm.id, pm.id);
        }
    }
    Ok(())
}

fn set_family_of(u: &Universe, c: CId) -> BTreeSet<OrdSet> {
    u.cm(c).set_family.clone()
}

fn a9(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            if n < m || u.relation(m, n) == ModelRel::Incomparable {
                continue;
            }
            let i = u.intersect_countable(m, n).map_err(|e| e.to_string())?;
            let sf: BTreeSet<OrdSet> = set_family_of(u, m).intersection(&u.cm(n).set_family).copied().collect();
            ensure!(
                set_family_of(u, i) == sf,
                "setFamily of {} is not that of {} ∩ {}",
                name(u, i),
                name(u, m),
                name(u, n)
            );
            ensure!(
                u.members(i) == u.members(m).inter(u.members(n))
                    && u.u_members_of_c(i) == u.u_members_of_c(m) & u.u_members_of_c(n),
                "modelFamily of {} is not that of {} ∩ {}",
                name(u, i),
                name(u, m),
                name(u, n)
            );
        }
        for p in u.uids() {
            let cut = u.um(p).cut;
            let i = u.intersect_uncountable(m, p).map_err(|e| e.to_string())?;
            let sf: BTreeSet<OrdSet> = u.cm(m).set_family.iter().filter(|k| k.last().unwrap() < cut).copied().collect();
            ensure!(
                set_family_of(u, i) == sf,
                "setFamily of {} is not that of {} ∩ {}",
                name(u, i),
                name(u, m),
                u.um(p).id
            );
            let below: u64 = u.uids().filter(|&q| u.um(q).cut < cut).fold(0, |a, q| a | 1 << q.0);
            ensure!(
                u.members(i) == u.members(m).inter(u.u_members(p))
                    && u.u_members_of_c(i) == u.u_members_of_c(m) & below,
                "modelFamily of {} is not that of {} ∩ {}",
                name(u, i),
                name(u, m),
                u.um(p).id
            );
        }
    }
    for n in u.cids() {
        for q in u.uids().filter(|&q| u.u_in_c(q, n)) {
            for m in u.members(n).iter() {
                let i = u.intersect_uncountable(m, q).map_err(|e| e.to_string())?;
                ensure!(
                    u.mem_model(i, n),
                    "{} and {} lie in {} but their intersection does not",
                    name(u, m),
                    u.um(q).id,
                    name(u, n)
                );
            }
        }
    }
    // Closure sets built from an adequate triple stay adequate.
    for n in u.cids() {
        for m in u.cids() {
            if u.relation(m, n) != ModelRel::Less {
                continue;
            }
            let mn = u.intersect_countable(m, n).map_err(|e| e.to_string())?;
            for k in u.cids() {
                if u.relation(k, n) == ModelRel::Incomparable || u.relation(k, m) == ModelRel::Incomparable {
                    continue;
                }
                ensure!(
                    u.relation(mn, k) != ModelRel::Incomparable,
                    "{} ∩ {} is incomparable with {}",
                    name(u, m),
                    name(u, n),
                    name(u, k)
                );
                if u.relation(k, n) == ModelRel::Less {
                    let kn = u.intersect_countable(k, n).map_err(|e| e.to_string())?;
                    ensure!(
                        u.relation(mn, kn) != ModelRel::Incomparable,
                        "{} ∩ {} is incomparable with {}",
                        name(u, m),
                        name(u, n),
                        name(u, kn)
                    );
                }
            }
        }
    }
    for p in u.uids() {
        for m in u.cids() {
            let mp = u.intersect_uncountable(m, p).map_err(|e| e.to_string())?;
            for k in u.cids() {
                if u.relation(k, m) == ModelRel::Incomparable {
                    continue;
                }
                let kp = u.intersect_uncountable(k, p).map_err(|e| e.to_string())?;
                ensure!(
                    u.relation(mp, k) != ModelRel::Incomparable && u.relation(mp, kp) != ModelRel::Incomparable,
                    "{} ∩ {} breaks adequacy with {}",
                    name(u, m),
                    u.um(p).id,
                    name(u, k)
                );
            }
        }
    }
    Ok(())
}

fn a10(u: &Universe) -> Check {
    for n in u.cids().filter(|&n| u.cm(n).simple) {
        for m in u.cids() {
            if u.relation(m, n) == ModelRel::Less {
                let i = u.intersect_countable(m, n).map_err(|e| e.to_string())?;
                ensure!(u.mem_model(i, n), "{} is simple but {} ∩ {} is not in it", name(u, n), name(u, m), name(u, n));
            }
        }
        for q in u.uids().filter(|&q| u.u_in_c(q, n) && u.um(q).simple) {
            let i = u.intersect_uncountable(n, q).map_err(|e| e.to_string())?;
            ensure!(u.cm(i).simple, "{} ∩ {} should be simple", name(u, n), u.um(q).id);
        }
    }
    for p in u.uids().filter(|&p| u.um(p).simple) {
        for m in u.cids() {
            let i = u.intersect_uncountable(m, p).map_err(|e| e.to_string())?;
            ensure!(u.c_in_u(i, p), "{} is simple but {} ∩ {} is not in it", u.um(p).id, name(u, m), u.um(p).id);
        }
    }
    // Unions with adequate sets inside a simple model stay adequate; it is
    // enough to test the smallest closed sets around each pair.
    for n in u.cids().filter(|&n| u.cm(n).simple) {
        for a in u.cids() {
            let r = u.relation(a, n);
            if r == ModelRel::Incomparable {
                continue;
            }
            let mut core = CSet::singleton(a).with(n);
            if r == ModelRel::Less {
                core.insert(u.intersect_countable(a, n).map_err(|e| e.to_string())?);
            }
            let inside = core.inter(u.members(n));
            for b in u.members(n).iter() {
                if !adequate_with(u, inside, b) {
                    continue;
                }
                ensure!(
                    u.relation(a, b) != ModelRel::Incomparable,
                    "{} and {} ∈ {} are incomparable",
                    name(u, a),
                    name(u, b),
                    name(u, n)
                );
            }
        }
    }
    for p in u.uids().filter(|&p| u.um(p).simple) {
        for a in u.cids() {
            let ap = u.intersect_uncountable(a, p).map_err(|e| e.to_string())?;
            let inside = CSet::singleton(a).with(ap).inter(u.u_members(p));
            for b in u.u_members(p).iter() {
                if !adequate_with(u, inside, b) {
                    continue;
                }
                ensure!(
                    u.relation(a, b) != ModelRel::Incomparable,
                    "{} and {} ∈ {} are incomparable",
                    name(u, a),
                    name(u, b),
                    u.um(p).id
                );
            }
        }
    }
    Ok(())
}

fn adequate_with(u: &Universe, s: CSet, b: CId) -> bool {
    s.iter().all(|x| u.relation(x, b) != ModelRel::Incomparable)
}

fn a11(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            let (dm, dn) = (u.delta(m), u.delta(n));
            let ok = match u.relation(m, n) {
                ModelRel::Less => dm < dn,
                ModelRel::Equiv => dm == dn,
                ModelRel::Greater => dm > dn,
                ModelRel::Incomparable => true,
            };
            ensure!(ok, "comparison of ({}, {}) disagrees with deltas {dm}, {dn}", name(u, m), name(u, n));
        }
    }
    Ok(())
}

fn cuts(u: &Universe) -> impl Iterator<Item = OrdinalValue> + '_ {
    u.lambda().iter().map(OrdinalValue::Fin).chain([OrdinalValue::Kappa])
}

fn a12(u: &Universe) -> Check {
    for m in u.cids() {
        for a in cuts(u) {
            let t = a.cut(u.trace(m));
            ensure!(a.cut(t) == t, "{} ∩ {a} escapes its cut", name(u, m));
        }
    }
    Ok(())
}

fn a13(u: &Universe) -> Check {
    for m in u.cids() {
        for n in u.cids() {
            for a in u.lambda().iter() {
                let t = u.trace(m).below(a);
                if u.mem_set(t, n) {
                    ensure!(
                        u.hull_set(t, u.trace(n).below(a)),
                        "{} ∩ {a} ∈ {} but not in the hull of {} ∩ {a}",
                        name(u, m),
                        name(u, n),
                        name(u, n)
                    );
                }
            }
        }
    }
    // Hull contents depend only on the set, not on the chosen representation.
    let mut seen = BTreeSet::new();
    for m in u.cids() {
        for a in cuts(u) {
            let t = a.cut(u.trace(m));
            if !seen.insert(t) {
                continue;
            }
            let contents: Vec<BTreeSet<OrdSet>> = u
                .reps(t)
                .iter()
                .map(|&(r, b)| u.cm(r).set_family.iter().filter(|j| b.cut(**j) == **j).copied().collect())
                .collect();
            ensure!(contents.windows(2).all(|w| w[0] == w[1]), "hull of {t} depends on its representation");
        }
    }
    Ok(())
}

fn a14(u: &Universe) -> Check {
    let fam = &u.config().stationary_family;
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            ensure!(fam[i].is_disjoint(fam[j]), "S_{i} and S_{j} meet");
        }
    }
    for m in u.cids() {
        for n in u.cids() {
            if !u.relation(m, n).is_le() {
                continue;
            }
            let Some(b) = u.beta_opt(m, n) else { continue };
            let Some(g) = u.trace(m).min_at_or_above(b) else { continue };
            let common = u.cm(m).index_set.inter(u.cm(n).index_set);
            let hits = common.iter().filter(|&i| fam.get(i as usize).is_some_and(|s| s.contains(g))).count();
            ensure!(hits <= 1, "{g} lies in several S_i for ({}, {})", name(u, m), name(u, n));
        }
    }
    Ok(())
}
