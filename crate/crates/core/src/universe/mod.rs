//! Finite universes of countable and uncountable model traces.
//!
//! A universe fixes the ordinals `[0, size)`, the cut `omega1_cut` standing
//! for the first uncountable ordinal, the set `lambda` of comparison points,
//! the stationary family, and finitely many models with their membership
//! data. Derived relations (comparison points, comparisons, hulls,
//! intersections) are precomputed once at construction.

mod generate;
mod validate;

pub use generate::{generate_universe, GenError, GenParams, GenStats, Generated};
pub use validate::{validate_universe, AxiomEntry, AxiomId, AxiomReport};

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adequacy::{compare_uncached, ModelRel};
use crate::ordset::{OrdSet, OrdinalValue, MAX_SIZE};

/// Maximum number of models of each kind in one universe.
pub const MAX_MODELS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("no comparison point above the common part of {0} and {1}")]
    NoComparisonPoint(String, String),
    #[error("no representation (model, cut) yields the set {0}")]
    NoRepresentation(OrdSet),
    #[error("required intersection model is missing: {0}")]
    NotClosed(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("closure set is not adequate")]
    NotAdequate,
    #[error("unknown model id {0:?}")]
    UnknownId(String),
}

/// A set of indices below `lambda_star`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct IdxSet(pub u64);

impl IdxSet {
    pub fn contains(self, i: u32) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }
    pub fn insert(&mut self, i: u32) {
        assert!(i < 64, "index {i} out of range");
        self.0 |= 1 << i;
    }
    pub fn inter(self, o: IdxSet) -> IdxSet {
        IdxSet(self.0 & o.0)
    }
    pub fn union(self, o: IdxSet) -> IdxSet {
        IdxSet(self.0 | o.0)
    }
    pub fn diff(self, o: IdxSet) -> IdxSet {
        IdxSet(self.0 & !o.0)
    }
    pub fn is_subset(self, o: IdxSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<u32> for IdxSet {
    fn from_iter<I: IntoIterator<Item = u32>>(it: I) -> Self {
        let mut s = IdxSet::default();
        for i in it {
            s.insert(i);
        }
        s
    }
}

impl Serialize for IdxSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IdxSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&i| i >= 64) {
            return Err(serde::de::Error::custom(format!("index {bad} exceeds 63")));
        }
        Ok(v.into_iter().collect())
    }
}

/// A set of countable models of one universe, by position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct CSet(pub u64);

impl CSet {
    pub const EMPTY: CSet = CSet(0);
    pub fn singleton(c: CId) -> CSet {
        CSet(1 << c.0)
    }
    pub fn contains(self, c: CId) -> bool {
        self.0 >> c.0 & 1 == 1
    }
    pub fn insert(&mut self, c: CId) {
        self.0 |= 1 << c.0;
    }
    pub fn remove(&mut self, c: CId) {
        self.0 &= !(1 << c.0);
    }
    pub fn with(self, c: CId) -> CSet {
        CSet(self.0 | 1 << c.0)
    }
    pub fn without(self, c: CId) -> CSet {
        CSet(self.0 & !(1 << c.0))
    }
    pub fn union(self, o: CSet) -> CSet {
        CSet(self.0 | o.0)
    }
    pub fn inter(self, o: CSet) -> CSet {
        CSet(self.0 & o.0)
    }
    pub fn diff(self, o: CSet) -> CSet {
        CSet(self.0 & !o.0)
    }
    pub fn is_subset(self, o: CSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }
    pub fn iter(self) -> impl Iterator<Item = CId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(CId(i as u16))
        })
    }
}

impl FromIterator<CId> for CSet {
    fn from_iter<I: IntoIterator<Item = CId>>(it: I) -> Self {
        let mut s = CSet::EMPTY;
        for c in it {
            s.insert(c);
        }
        s
    }
}

/// Position of a countable model in its universe (positions follow id order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CId(pub u16);

/// Position of an uncountable model in its universe.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UId(pub u16);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ModelRef {
    C(CId),
    U(UId),
}

/// A model that conditions can be restricted to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Container {
    C(CId),
    U(UId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UniverseConfig {
    pub size: u32,
    pub omega1_cut: u32,
    pub lambda_set: OrdSet,
    pub stationary_family: Vec<OrdSet>,
    pub lambda_star: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CountableModel {
    pub id: String,
    pub trace: OrdSet,
    pub index_set: IdxSet,
    pub set_family: BTreeSet<OrdSet>,
    pub model_family: BTreeSet<String>,
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UncountableModel {
    pub id: String,
    pub cut: u32,
    pub index_set: IdxSet,
    pub model_family: BTreeSet<String>,
    pub simple: bool,
}

/// The `M ∩ omega1` ordinal of a trace: the least ordinal below the cut `w`
/// missing from it.
pub fn delta(t: OrdSet, w: u32) -> u32 {
    t.below(w).first_gap()
}

/// The top of a trace set.
pub fn sup_ord(t: OrdSet) -> u32 {
    t.last().expect("trace sets are nonempty")
}

/// Target of a hull query: a cut `[0, alpha)` or a trace set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HullTarget {
    Cut(OrdinalValue),
    Set(OrdSet),
}

/// A finite universe with precomputed relations.
#[derive(Clone)]
pub struct Universe {
    config: UniverseConfig,
    countables: Vec<CountableModel>,
    uncountables: Vec<UncountableModel>,
    ids: HashMap<String, ModelRef>,
    duplicate_ids: Vec<String>,
    dangling: Vec<(String, String)>,
    c_members: Vec<CSet>,
    c_umembers: Vec<u64>,
    u_members: Vec<CSet>,
    set_fam: Vec<HashSet<OrdSet>>,
    beta: Vec<Option<u32>>,
    rel: Vec<ModelRel>,
    by_key: HashMap<(OrdSet, IdxSet), CId>,
    reps: HashMap<OrdSet, Vec<(CId, OrdinalValue)>>,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("config", &self.config)
            .field("countables", &self.countables)
            .field("uncountables", &self.uncountables)
            .finish()
    }
}

impl PartialEq for Universe {
    fn eq(&self, o: &Self) -> bool {
        self.config == o.config && self.countables == o.countables && self.uncountables == o.uncountables
    }
}

impl Eq for Universe {}

impl Universe {
    /// Builds a universe and its derived tables. Models are reordered by id.
    ///
    /// Only capacity limits are hard errors; every other defect is left for
    /// [`validate_universe`] to report.
    pub fn new(
        config: UniverseConfig,
        mut countables: Vec<CountableModel>,
        mut uncountables: Vec<UncountableModel>,
    ) -> Result<Universe, UniverseError> {
        if config.size > MAX_SIZE {
            return Err(UniverseError::Capacity(format!("size {} exceeds {MAX_SIZE}", config.size)));
        }
        if countables.len() > MAX_MODELS || uncountables.len() > MAX_MODELS {
            return Err(UniverseError::Capacity(format!("more than {MAX_MODELS} models of one kind")));
        }
        if config.lambda_star > 64 {
            return Err(UniverseError::Capacity("lambdaStar exceeds 64".into()));
        }
        countables.sort_by(|a, b| a.id.cmp(&b.id));
        uncountables.sort_by(|a, b| a.id.cmp(&b.id));

        let mut ids = HashMap::new();
        let mut duplicate_ids = Vec::new();
        for (i, m) in countables.iter().enumerate() {
            if ids.insert(m.id.clone(), ModelRef::C(CId(i as u16))).is_some() {
                duplicate_ids.push(m.id.clone());
            }
        }
        for (i, p) in uncountables.iter().enumerate() {
            if ids.insert(p.id.clone(), ModelRef::U(UId(i as u16))).is_some() {
                duplicate_ids.push(p.id.clone());
            }
        }

        let mut dangling = Vec::new();
        let mut c_members = Vec::with_capacity(countables.len());
        let mut c_umembers = Vec::with_capacity(countables.len());
        for m in &countables {
            let mut cs = CSet::EMPTY;
            let mut us = 0u64;
            for id in &m.model_family {
                match ids.get(id) {
                    Some(ModelRef::C(c)) => cs.insert(*c),
                    Some(ModelRef::U(u)) => us |= 1 << u.0,
                    None => dangling.push((m.id.clone(), id.clone())),
                }
            }
            c_members.push(cs);
            c_umembers.push(us);
        }
        let mut u_members = Vec::with_capacity(uncountables.len());
        for p in &uncountables {
            let mut cs = CSet::EMPTY;
            for id in &p.model_family {
                match ids.get(id) {
                    Some(ModelRef::C(c)) => cs.insert(*c),
                    _ => dangling.push((p.id.clone(), id.clone())),
                }
            }
            u_members.push(cs);
        }

        let set_fam = countables.iter().map(|m| m.set_family.iter().copied().collect()).collect();
        let n = countables.len();
        let lambda = config.lambda_set;
        let mut beta = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let common = countables[i].trace.inter(countables[j].trace);
                beta[i * n + j] = match common.last() {
                    Some(x) => lambda.next_above(x),
                    None => lambda.first(),
                };
            }
        }
        let mut by_key = HashMap::new();
        for (i, m) in countables.iter().enumerate() {
            by_key.entry((m.trace, m.index_set)).or_insert(CId(i as u16));
        }
        let mut reps: HashMap<OrdSet, Vec<(CId, OrdinalValue)>> = HashMap::new();
        for (i, m) in countables.iter().enumerate() {
            let cuts = lambda.iter().map(OrdinalValue::Fin).chain([OrdinalValue::Kappa]);
            for a in cuts {
                let t = a.cut(m.trace);
                if !t.is_empty() {
                    reps.entry(t).or_default().push((CId(i as u16), a));
                }
            }
        }

        let mut u = Universe {
            config,
            countables,
            uncountables,
            ids,
            duplicate_ids,
            dangling,
            c_members,
            c_umembers,
            u_members,
            set_fam,
            beta,
            rel: Vec::new(),
            by_key,
            reps,
        };
        let mut rel = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rel.push(compare_uncached(&u, CId(i as u16), CId(j as u16)));
            }
        }
        u.rel = rel;
        Ok(u)
    }

    pub fn config(&self) -> &UniverseConfig {
        &self.config
    }

    pub fn countables(&self) -> &[CountableModel] {
        &self.countables
    }

    pub fn uncountables(&self) -> &[UncountableModel] {
        &self.uncountables
    }

    pub fn cids(&self) -> impl Iterator<Item = CId> {
        (0..self.countables.len() as u16).map(CId)
    }

    pub fn uids(&self) -> impl Iterator<Item = UId> {
        (0..self.uncountables.len() as u16).map(UId)
    }

    pub fn all_countables(&self) -> CSet {
        if self.countables.len() == 64 {
            CSet(u64::MAX)
        } else {
            CSet((1u64 << self.countables.len()) - 1)
        }
    }

    pub fn cm(&self, c: CId) -> &CountableModel {
        &self.countables[c.0 as usize]
    }

    pub fn um(&self, p: UId) -> &UncountableModel {
        &self.uncountables[p.0 as usize]
    }

    pub fn lookup(&self, id: &str) -> Option<ModelRef> {
        self.ids.get(id).copied()
    }

    pub fn cid(&self, id: &str) -> Result<CId, UniverseError> {
        match self.lookup(id) {
            Some(ModelRef::C(c)) => Ok(c),
            _ => Err(UniverseError::UnknownId(id.to_string())),
        }
    }

    pub fn uid(&self, id: &str) -> Result<UId, UniverseError> {
        match self.lookup(id) {
            Some(ModelRef::U(p)) => Ok(p),
            _ => Err(UniverseError::UnknownId(id.to_string())),
        }
    }

    pub fn container(&self, id: &str) -> Result<Container, UniverseError> {
        match self.lookup(id) {
            Some(ModelRef::C(c)) => Ok(Container::C(c)),
            Some(ModelRef::U(p)) => Ok(Container::U(p)),
            None => Err(UniverseError::UnknownId(id.to_string())),
        }
    }

    pub fn container_id(&self, n: Container) -> &str {
        match n {
            Container::C(c) => &self.cm(c).id,
            Container::U(p) => &self.um(p).id,
        }
    }

    pub(crate) fn duplicate_ids(&self) -> &[String] {
        &self.duplicate_ids
    }

    pub(crate) fn dangling(&self) -> &[(String, String)] {
        &self.dangling
    }

    pub fn trace(&self, c: CId) -> OrdSet {
        self.cm(c).trace
    }

    pub fn delta(&self, c: CId) -> u32 {
        delta(self.cm(c).trace, self.config.omega1_cut)
    }

    pub fn delta_of(&self, t: OrdSet) -> u32 {
        delta(t, self.config.omega1_cut)
    }

    pub fn lambda(&self) -> OrdSet {
        self.config.lambda_set
    }

    /// The stationary set with index `i`, or the union of all of them.
    pub fn stationary(&self, i: Option<u32>) -> OrdSet {
        match i {
            Some(i) => self.config.stationary_family.get(i as usize).copied().unwrap_or_default(),
            None => self.config.stationary_family.iter().fold(OrdSet::EMPTY, |a, s| a.union(*s)),
        }
    }

    /// Comparison point: least element of lambda above the largest common ordinal.
    pub fn beta(&self, m: CId, n: CId) -> Result<u32, UniverseError> {
        self.beta_opt(m, n)
            .ok_or_else(|| UniverseError::NoComparisonPoint(self.cm(m).id.clone(), self.cm(n).id.clone()))
    }

    pub fn beta_opt(&self, m: CId, n: CId) -> Option<u32> {
        self.beta[m.0 as usize * self.countables.len() + n.0 as usize]
    }

    /// Cached comparison of two countable models.
    pub fn relation(&self, m: CId, n: CId) -> ModelRel {
        self.rel[m.0 as usize * self.countables.len() + n.0 as usize]
    }

    /// `K ∈ N` for a trace set `K`.
    pub fn mem_set(&self, k: OrdSet, n: CId) -> bool {
        self.set_fam[n.0 as usize].contains(&k)
    }

    /// `M ∈ N` for countable models.
    pub fn mem_model(&self, m: CId, n: CId) -> bool {
        self.c_members[n.0 as usize].contains(m)
    }

    pub fn members(&self, n: CId) -> CSet {
        self.c_members[n.0 as usize]
    }

    /// `Q ∈ N` for an uncountable `Q` and a countable `N`.
    pub fn u_in_c(&self, q: UId, n: CId) -> bool {
        self.c_umembers[n.0 as usize] >> q.0 & 1 == 1
    }

    /// `M ∈ P` for a countable `M` and an uncountable `P`.
    pub fn c_in_u(&self, m: CId, p: UId) -> bool {
        self.u_members[p.0 as usize].contains(m)
    }

    pub fn u_members(&self, p: UId) -> CSet {
        self.u_members[p.0 as usize]
    }

    pub(crate) fn u_members_of_c(&self, n: CId) -> u64 {
        self.c_umembers[n.0 as usize]
    }

    /// All representations `(M, alpha)` with `trace(M) ∩ alpha = t`,
    /// alpha ranging over lambda and kappa.
    pub fn reps(&self, t: OrdSet) -> &[(CId, OrdinalValue)] {
        self.reps.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `K ∈ Sk(z)`.
    pub fn hull(&self, k: OrdSet, z: HullTarget) -> Result<bool, UniverseError> {
        match z {
            HullTarget::Cut(a) => Ok(a.cut(k) == k),
            HullTarget::Set(t) => {
                let reps = self.reps(t);
                if reps.is_empty() {
                    return Err(UniverseError::NoRepresentation(t));
                }
                Ok(reps.iter().any(|&(m, a)| a.cut(k) == k && self.mem_set(k, m)))
            }
        }
    }

    /// `K ∈ Sk(t)`, false when `t` has no representation.
    pub fn hull_set(&self, k: OrdSet, t: OrdSet) -> bool {
        self.reps(t).iter().any(|&(m, a)| a.cut(k) == k && self.mem_set(k, m))
    }

    pub fn find_model(&self, trace: OrdSet, idx: IdxSet) -> Option<CId> {
        self.by_key.get(&(trace, idx)).copied()
    }

    /// The model `M ∩ N`.
    pub fn intersect_countable(&self, m: CId, n: CId) -> Result<CId, UniverseError> {
        let t = self.trace(m).inter(self.trace(n));
        let i = self.cm(m).index_set.inter(self.cm(n).index_set);
        self.find_model(t, i).ok_or_else(|| UniverseError::NotClosed(format!("{} ∩ {}", self.cm(m).id, self.cm(n).id)))
    }

    /// The model `M ∩ P`.
    pub fn intersect_uncountable(&self, m: CId, p: UId) -> Result<CId, UniverseError> {
        let t = self.trace(m).below(self.um(p).cut);
        let i = self.cm(m).index_set.inter(self.um(p).index_set);
        self.find_model(t, i).ok_or_else(|| UniverseError::NotClosed(format!("{} ∩ {}", self.cm(m).id, self.um(p).id)))
    }

    /// `M ∩ X` for either kind of container.
    pub fn intersect(&self, m: CId, x: Container) -> Result<CId, UniverseError> {
        match x {
            Container::C(n) => self.intersect_countable(m, n),
            Container::U(p) => self.intersect_uncountable(m, p),
        }
    }

    pub fn is_simple(&self, x: Container) -> bool {
        match x {
            Container::C(n) => self.cm(n).simple,
            Container::U(p) => self.um(p).simple,
        }
    }

    /// Ordinal membership in a model.
    pub fn ord_in(&self, x: Container, a: u32) -> bool {
        match x {
            Container::C(n) => self.trace(n).contains(a),
            Container::U(p) => a < self.um(p).cut,
        }
    }

    /// Trace-set membership in a model.
    pub fn set_in(&self, x: Container, t: OrdSet) -> bool {
        match x {
            Container::C(n) => self.mem_set(t, n),
            Container::U(p) => t.last().is_some_and(|m| m < self.um(p).cut),
        }
    }

    /// Countable-model membership in a model.
    pub fn model_in(&self, x: Container, m: CId) -> bool {
        match x {
            Container::C(n) => self.mem_model(m, n),
            Container::U(p) => self.c_in_u(m, p),
        }
    }

    pub fn models_in(&self, x: Container) -> CSet {
        match x {
            Container::C(n) => self.members(n),
            Container::U(p) => self.u_members(p),
        }
    }

    pub fn index_set(&self, x: Container) -> IdxSet {
        match x {
            Container::C(n) => self.cm(n).index_set,
            Container::U(p) => self.um(p).index_set,
        }
    }

    /// The countable model `N ∩ Q` for `Q` a member of `N`.
    pub fn meet_containers(&self, n: Container, q: Container) -> Result<Container, UniverseError> {
        match (n, q) {
            (Container::C(a), Container::U(p)) | (Container::U(p), Container::C(a)) => {
                self.intersect_uncountable(a, p).map(Container::C)
            }
            (Container::C(a), Container::C(b)) => self.intersect_countable(a, b).map(Container::C),
            (Container::U(_), Container::U(_)) => {
                Err(UniverseError::NotClosed("intersection of two uncountable models".into()))
            }
        }
    }
}
