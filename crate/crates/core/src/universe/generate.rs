//! Seeded generate-and-filter construction of valid universes.
//!
//! Traces are drawn first, with a few shaping moves that produce
//! equivalent, smaller and member pairs. Families are then derived from a
//! single membership rule: a trace set `J` belongs to `N` when `J` is an
//! initial segment of some trace, `J` and `J + 1` lie inside `trace(N)`, and
//! `J` has smaller delta. The result is closed under the intersections the
//! axioms require and finally filtered through the validator.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::validate::validate_fast;
use super::{CountableModel, IdxSet, UncountableModel, Universe, UniverseConfig};
use crate::adequacy::ModelRel;
use crate::ordset::{OrdSet, MAX_SIZE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GenParams {
    pub size: u32,
    pub omega1_cut: u32,
    pub lambda_count: u32,
    pub lambda_star: u32,
    /// Models drawn before shaping moves and intersection closure.
    pub base_models: u32,
    /// Shaping moves applied to existing traces.
    pub shaping_moves: u32,
    pub uncountables: u32,
    /// Probability that an admissible ordinal enters a fresh trace.
    pub density: f64,
    /// Upper bound on countable models after closure.
    pub max_models: u32,
    pub attempts: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            size: 48,
            omega1_cut: 8,
            lambda_count: 6,
            lambda_star: 2,
            base_models: 3,
            shaping_moves: 3,
            uncountables: 2,
            density: 0.3,
            max_models: 14,
            attempts: 400,
        }
    }
}

impl GenParams {
    /// Small universes for exhaustive enumeration.
    pub fn tiny() -> Self {
        GenParams {
            size: 32,
            omega1_cut: 6,
            lambda_count: 4,
            lambda_star: 2,
            base_models: 2,
            shaping_moves: 1,
            uncountables: 1,
            density: 0.3,
            max_models: 3,
            attempts: 2000,
        }
    }

    fn check(&self) -> Result<(), GenError> {
        let ok = self.size <= MAX_SIZE
            && self.omega1_cut >= 2
            && self.lambda_count >= 2
            && self.size >= self.omega1_cut + 3 * self.lambda_count + 2
            && (1..=8).contains(&self.lambda_star)
            && self.max_models as usize <= super::MAX_MODELS
            && (0.0..=1.0).contains(&self.density);
        if ok {
            Ok(())
        } else {
            Err(GenError::BadParams(format!("{self:?}")))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenStats {
    pub attempts: u32,
    pub rejections: BTreeMap<String, u32>,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub universe: Universe,
    pub stats: GenStats,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("no valid universe after {0} attempts")]
    GenerationExhausted(u32),
    #[error("parameters out of range: {0}")]
    BadParams(String),
}

pub fn generate_universe(seed: u64, params: &GenParams) -> Result<Generated, GenError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = GenStats::default();
    for _ in 0..params.attempts {
        stats.attempts += 1;
        match attempt(&mut rng, params) {
            Ok(universe) => return Ok(Generated { universe, stats }),
            Err(reason) => *stats.rejections.entry(reason).or_default() += 1,
        }
    }
    Err(GenError::GenerationExhausted(params.attempts))
}

struct Frame {
    w: u32,
    lambda: OrdSet,
    /// Ordinals a trace may contain.
    allowed: OrdSet,
    cuts: Vec<(u32, IdxSet)>,
}

fn attempt(rng: &mut ChaCha8Rng, p: &GenParams) -> Result<Universe, String> {
    let frame = draw_frame(rng, p);
    let lambda_star = p.lambda_star;
    let mut stationary = vec![OrdSet::EMPTY; lambda_star as usize];
    let top = frame.lambda.last().unwrap();
    for l in frame.lambda.iter().filter(|&l| l != top) {
        if frame.cuts.iter().any(|c| c.0 == l) && rng.gen_bool(0.8) {
            continue;
        }
        if rng.gen_bool(0.6) {
            stationary[rng.gen_range(0..lambda_star) as usize].insert(l);
        }
    }
    let used = stationary.iter().fold(OrdSet::EMPTY, |acc, s| acc.union(*s));
    let mut free: Vec<u32> = frame
        .lambda
        .iter()
        .filter(|&l| l != top && !used.contains(l) && !frame.cuts.iter().any(|c| c.0 == l))
        .collect();
    for s in stationary.iter_mut().filter(|s| s.is_empty()) {
        if free.is_empty() {
            break;
        }
        s.insert(free.swap_remove(rng.gen_range(0..free.len())));
    }

    let full = IdxSet((1u64 << lambda_star) - 1);
    let draw_idx = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.6) {
            full
        } else {
            IdxSet(rng.gen_range(0..=full.0))
        }
    };
    let mut traces: Vec<(OrdSet, IdxSet)> = Vec::new();
    for _ in 0..p.base_models.max(1) {
        let d = 1 + rng.gen_range(0..frame.w - 1);
        let t = fresh_trace(rng, &frame, p.density, d);
        traces.push((t, draw_idx(rng)));
    }
    for _ in 0..p.shaping_moves {
        let (src, idx) = traces[rng.gen_range(0..traces.len())];
        let moved = match rng.gen_range(0..4) {
            0 => equivalent_copy(rng, &frame, p.density, src),
            1 => member_superset(rng, &frame, p.density, src),
            2 => smaller_below(rng, &frame, p.density, src),
            _ => Some(src),
        };
        let Some(t) = moved else { continue };
        let idx = if rng.gen_bool(0.5) { idx } else { draw_idx(rng) };
        if !traces.contains(&(t, idx)) {
            traces.push((t, idx));
        }
    }

    let config = UniverseConfig {
        size: p.size,
        omega1_cut: frame.w,
        lambda_set: frame.lambda,
        stationary_family: stationary,
        lambda_star,
    };
    // Close under the intersections required for comparable pairs.
    loop {
        let u = assemble(&config, &traces, &frame.cuts)?;
        let mut fresh: BTreeSet<(OrdSet, IdxSet)> = BTreeSet::new();
        for m in u.cids() {
            for n in u.cids() {
                if m < n && u.relation(m, n) != ModelRel::Incomparable {
                    fresh.insert((u.trace(m).inter(u.trace(n)), u.cm(m).index_set.inter(u.cm(n).index_set)));
                }
            }
            for q in u.uids() {
                fresh.insert((u.trace(m).below(u.um(q).cut), u.cm(m).index_set.inter(u.um(q).index_set)));
            }
        }
        let known: HashSet<(OrdSet, IdxSet)> = traces.iter().copied().collect();
        let new: Vec<_> = fresh.into_iter().filter(|k| !known.contains(k)).collect();
        if new.is_empty() {
            return match validate_fast(&u) {
                None => Ok(u),
                Some(a) => Err(a.to_string()),
            };
        }
        traces.extend(new);
        if traces.len() > p.max_models as usize {
            return Err("too-many-models".into());
        }
    }
}

fn draw_frame(rng: &mut ChaCha8Rng, p: &GenParams) -> Frame {
    let w = p.omega1_cut;
    let span = p.size - 1 - (w + 2);
    let gap = span / p.lambda_count;
    let mut lambda = OrdSet::EMPTY;
    for k in 0..p.lambda_count {
        let jitter = if gap > 3 { rng.gen_range(0..gap - 2) } else { 0 };
        lambda.insert(w + 2 + k * gap + jitter);
    }
    let top = lambda.last().unwrap();
    let candidates: Vec<u32> = lambda.iter().filter(|&l| Some(l) != lambda.first()).collect();
    let mut cuts: Vec<(u32, IdxSet)> = Vec::new();
    let full = IdxSet((1u64 << p.lambda_star) - 1);
    for _ in 0..p.uncountables {
        let c = candidates[rng.gen_range(0..candidates.len())];
        if cuts.iter().any(|x| x.0 == c) {
            continue;
        }
        let idx = if rng.gen_bool(0.7) { full } else { IdxSet(rng.gen_range(1..=full.0)) };
        cuts.push((c, idx));
    }
    cuts.sort();
    let mut allowed = OrdSet::range(w, top);
    for l in lambda.iter() {
        allowed.remove(l - 1);
    }
    for &(c, _) in &cuts {
        let prev = lambda.below(c).last().unwrap();
        allowed = allowed.diff(OrdSet::range(prev, c));
    }
    Frame { w, lambda, allowed, cuts }
}

fn random_subset(rng: &mut ChaCha8Rng, s: OrdSet, density: f64) -> OrdSet {
    s.iter().filter(|_| rng.gen_bool(density)).collect()
}

fn fresh_trace(rng: &mut ChaCha8Rng, f: &Frame, density: f64, delta: u32) -> OrdSet {
    let mut t = OrdSet::range(0, delta).union(random_subset(rng, f.allowed, density));
    for &(c, _) in &f.cuts {
        if f.allowed.contains(c) && rng.gen_bool(0.4) {
            t.insert(c);
        }
    }
    t
}

/// Agrees with `src` below a comparison point and diverges above it.
fn equivalent_copy(rng: &mut ChaCha8Rng, f: &Frame, density: f64, src: OrdSet) -> Option<OrdSet> {
    let points: Vec<u32> = f.lambda.iter().filter(|&l| !src.at_or_above(l).is_empty()).collect();
    let b = *points.get(rng.gen_range(0..points.len().max(1)))?;
    let above = f.allowed.at_or_above(b).diff(src);
    let mut extra = random_subset(rng, above, density.max(0.3));
    if extra.is_empty() {
        extra = above.first().map(OrdSet::singleton).unwrap_or_default();
    }
    Some(src.below(b).union(extra))
}

/// Contains `src` together with its successor points, and more below `W`.
fn member_superset(rng: &mut ChaCha8Rng, f: &Frame, density: f64, src: OrdSet) -> Option<OrdSet> {
    let d = src.below(f.w).first_gap();
    if d + 1 >= f.w {
        return None;
    }
    let nd = rng.gen_range(d + 1..f.w);
    let lift = src.at_or_above(f.w).union(src.at_or_above(f.w).succ()).inter(f.allowed);
    let extra = random_subset(rng, f.allowed, density / 2.0);
    Some(OrdSet::range(0, nd).union(lift).union(extra))
}

/// Contains an initial part of `src` with successor points and avoids the rest.
fn smaller_below(rng: &mut ChaCha8Rng, f: &Frame, density: f64, src: OrdSet) -> Option<OrdSet> {
    let d = src.below(f.w).first_gap();
    if d + 1 >= f.w {
        return None;
    }
    let nd = rng.gen_range(d + 1..f.w);
    let points: Vec<u32> = f.lambda.iter().collect();
    let b = points[rng.gen_range(0..points.len())];
    let part = src.below(b).at_or_above(f.w);
    let lift = part.union(part.succ()).inter(f.allowed);
    let extra = random_subset(rng, f.allowed.diff(src), density);
    Some(OrdSet::range(0, nd).union(lift).union(extra))
}

/// Builds a universe whose families follow the membership rule.
fn assemble(config: &UniverseConfig, traces: &[(OrdSet, IdxSet)], cuts: &[(u32, IdxSet)]) -> Result<Universe, String> {
    let w = config.omega1_cut;
    let delta = |t: OrdSet| t.below(w).first_gap();
    let segments: BTreeSet<OrdSet> = traces.iter().flat_map(|(t, _)| t.initial_segments()).collect();
    let mut order: Vec<usize> = (0..traces.len()).collect();
    order.sort_by_key(|&i| (delta(traces[i].0), i));
    let name = |i: usize| format!("m{i:02}");
    let uname = |j: usize| format!("p{j}");

    let set_family: Vec<BTreeSet<OrdSet>> = traces
        .iter()
        .map(|&(t, _)| {
            let d = delta(t);
            segments.iter().filter(|j| j.is_subset(t) && j.succ().is_subset(t) && delta(**j) < d).copied().collect()
        })
        .collect();
    let umembers: Vec<BTreeSet<String>> = traces
        .iter()
        .map(|&(t, _)| cuts.iter().enumerate().filter(|(_, c)| t.contains(c.0)).map(|(j, _)| uname(j)).collect())
        .collect();
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); traces.len()];
    for &n in &order {
        let (tn, idx_n) = traces[n];
        let mut found = BTreeSet::new();
        for &m in &order {
            let (tm, idx_m) = traces[m];
            if m == n || delta(tm) >= delta(tn) {
                continue;
            }
            if set_family[n].contains(&tm)
                && idx_m.is_subset(idx_n)
                && members[m].is_subset(&found)
                && umembers[m].is_subset(&umembers[n])
            {
                found.insert(m);
            }
        }
        members[n] = found;
    }
    let countables: Vec<CountableModel> = traces
        .iter()
        .enumerate()
        .map(|(i, &(trace, index_set))| CountableModel {
            id: name(i),
            trace,
            index_set,
            set_family: set_family[i].clone(),
            model_family: members[i].iter().map(|&m| name(m)).chain(umembers[i].iter().cloned()).collect(),
            simple: true,
        })
        .collect();
    let uncountables: Vec<UncountableModel> = cuts
        .iter()
        .enumerate()
        .map(|(j, &(cut, index_set))| UncountableModel {
            id: uname(j),
            cut,
            index_set,
            model_family: traces
                .iter()
                .enumerate()
                .filter(|(_, (t, i))| t.last().unwrap() < cut && i.is_subset(index_set))
                .map(|(m, _)| name(m))
                .collect(),
            simple: true,
        })
        .collect();
    let mut u = Universe::new(config.clone(), countables, uncountables).map_err(|e| e.to_string())?;
    // Flags record whether the defining closure property actually holds.
    let flags: Vec<bool> = u
        .cids()
        .map(|n| {
            u.cids().all(|m| {
                u.relation(m, n) != ModelRel::Less || u.intersect_countable(m, n).is_ok_and(|i| u.mem_model(i, n))
            })
        })
        .collect();
    let uflags: Vec<bool> =
        u.uids().map(|p| u.cids().all(|m| u.intersect_uncountable(m, p).is_ok_and(|i| u.c_in_u(i, p)))).collect();
    if flags.iter().chain(&uflags).any(|f| !f) {
        let (config, mut cs, mut us) = (u.config().clone(), u.countables().to_vec(), u.uncountables().to_vec());
        for (m, f) in cs.iter_mut().zip(&flags) {
            m.simple = *f;
        }
        for (p, f) in us.iter_mut().zip(&uflags) {
            p.simple = *f;
        }
        u = Universe::new(config, cs, us).map_err(|e| e.to_string())?;
    }
    Ok(u)
}
