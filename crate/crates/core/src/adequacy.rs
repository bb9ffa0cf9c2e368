//! Comparisons of countable models, adequate sets, and remainder sets.

use serde::{Deserialize, Serialize};

use crate::ordset::{OrdSet, OrdinalValue};
use crate::universe::{CId, CSet, IdxSet, UId, Universe, UniverseError};

/// Outcome of comparing two countable models at their comparison point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ModelRel {
    Less,
    Equiv,
    Greater,
    Incomparable,
}

impl ModelRel {
    pub fn flip(self) -> ModelRel {
        match self {
            ModelRel::Less => ModelRel::Greater,
            ModelRel::Greater => ModelRel::Less,
            r => r,
        }
    }

    /// `M ≤ N`, that is `M < N` or `M ∼ N`.
    pub fn is_le(self) -> bool {
        matches!(self, ModelRel::Less | ModelRel::Equiv)
    }
}

pub(crate) fn compare_uncached(u: &Universe, m: CId, n: CId) -> ModelRel {
    if m == n {
        return ModelRel::Equiv;
    }
    let Some(b) = u.beta_opt(m, n) else {
        return ModelRel::Incomparable;
    };
    let tm = u.trace(m).below(b);
    let tn = u.trace(n).below(b);
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

pub fn compare(u: &Universe, m: CId, n: CId) -> ModelRel {
    u.relation(m, n)
}

pub fn is_adequate(u: &Universe, a: CSet) -> bool {
    first_incomparable(u, a).is_none()
}

/// Some incomparable pair of `a`, if any.
pub fn first_incomparable(u: &Universe, a: CSet) -> Option<(CId, CId)> {
    for m in a.iter() {
        for n in a.iter() {
            if m < n && u.relation(m, n) == ModelRel::Incomparable {
                return Some((m, n));
            }
        }
    }
    None
}

/// `A ∪ { M ∩ N : M ∈ A, M < N }`.
pub fn closure_under_countable(u: &Universe, a: CSet, n: CId) -> Result<CSet, UniverseError> {
    let mut b = a;
    for m in a.iter() {
        if u.relation(m, n) == ModelRel::Less {
            b.insert(u.intersect_countable(m, n)?);
        }
    }
    if !is_adequate(u, b) {
        return Err(UniverseError::NotAdequate);
    }
    Ok(b)
}

/// `A ∪ { M ∩ P : M ∈ A }`.
pub fn closure_under_uncountable(u: &Universe, a: CSet, p: UId) -> Result<CSet, UniverseError> {
    let mut b = a;
    for m in a.iter() {
        b.insert(u.intersect_uncountable(m, p)?);
    }
    if !is_adequate(u, b) {
        return Err(UniverseError::NotAdequate);
    }
    Ok(b)
}

/// Least element of `trace(M)` at or above `beta`.
pub fn min_above(u: &Universe, m: CId, beta: OrdinalValue) -> Option<u32> {
    match beta {
        OrdinalValue::Fin(b) => u.trace(m).min_at_or_above(b),
        OrdinalValue::Kappa => None,
    }
}

/// The remainder point of `M` over `K`, when `K ∼ M` and it exists.
pub fn remainder(u: &Universe, k: CId, m: CId) -> Option<u32> {
    if u.relation(k, m) != ModelRel::Equiv {
        return None;
    }
    let b = u.beta_opt(k, m)?;
    u.trace(m).min_at_or_above(b)
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
    let mut out = IdxSet::default();
    let fam = &u.config().stationary_family;
    for m in a.iter() {
        for n in a.iter() {
            let Some(g) = remainder(u, n, m) else { continue };
            let common = u.cm(m).index_set.inter(u.cm(n).index_set);
            for i in common.iter() {
                if fam.get(i as usize).is_some_and(|s| s.contains(g)) {
                    out.insert(i);
                }
            }
        }
    }
    out
}
