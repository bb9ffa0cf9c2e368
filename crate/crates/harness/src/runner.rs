//! Runs a catalog property over many seeded trials.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use scf_core::doc::{DocError, UniverseDoc};

use crate::catalog::{self, Case, Property, Verdict};
use crate::gen::Rng8;
use crate::inputs::{Counterexample, InputsDoc};
use crate::shrink::shrink;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown property {0}")]
    UnknownProperty(String),
    #[error("{property}: vacuous run, {hits} premise hits below the floor of {floor}")]
    VacuousRun { property: String, hits: u64, floor: u64 },
    #[error("{property}: {failures} failing trials")]
    PropertyFailed { property: String, failures: u64 },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Doc(#[from] DocError),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: u64,
    pub jobs: usize,
    /// Absolute premise-hit floor; `None` uses the property's fraction of `trials`.
    pub floor: Option<u64>,
    pub timing: bool,
    pub shrink: bool,
}

impl RunConfig {
    pub fn new(seed: u64, trials: u64) -> RunConfig {
        RunConfig { seed, trials, jobs: 1, floor: None, timing: false, shrink: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CheckOutcome {
    pub property: String,
    pub anchor: String,
    pub seed: u64,
    pub trials: u64,
    pub premise_hits: u64,
    pub floor: u64,
    pub failures: u64,
    pub status: Status,
    /// Why trials were vacuous, with counts.
    pub vacuous_reasons: BTreeMap<String, u64>,
    pub first_counterexample: Option<Counterexample>,
    /// Wall-clock milliseconds; present only when timing was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckOutcome {
    pub fn into_result(self) -> Result<CheckOutcome, HarnessError> {
        match self.status {
            Status::Pass => Ok(self),
            Status::Fail => Err(HarnessError::PropertyFailed { property: self.property, failures: self.failures }),
            Status::Vacuous => {
                Err(HarnessError::VacuousRun { property: self.property, hits: self.premise_hits, floor: self.floor })
            }
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The generator stream of one trial; independent of scheduling.
pub fn trial_rng(seed: u64, property: &str, trial: u64) -> Rng8 {
    let mut rng = Rng8::seed_from_u64(seed ^ fnv1a(property.as_bytes()));
    rng.set_stream(trial);
    rng
}

enum Trial {
    Vacuous(String),
    Pass,
    Fail(String, Box<Case>),
}

/// Evaluates a check, turning a panic into a failure.
pub fn evaluate(prop: &Property, case: &Case) -> Verdict {
    match catch_unwind(AssertUnwindSafe(|| (prop.check)(&case.universe, &case.inputs))) {
        Ok(v) => v,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::Fail(format!("panic: {msg}"))
        }
    }
}

fn run_trial(prop: &Property, seed: u64, trial: u64) -> Trial {
    let mut rng = trial_rng(seed, prop.id, trial);
    let Some(case) = (prop.gen)(&mut rng) else {
        return Trial::Vacuous("no instance generated".into());
    };
    match evaluate(prop, &case) {
        Verdict::Vacuous(why) => Trial::Vacuous(why),
        Verdict::Pass => Trial::Pass,
        Verdict::Fail(msg) => Trial::Fail(msg, Box::new(case)),
    }
}

pub fn floor_for(prop: &Property, trials: u64) -> u64 {
    (prop.floor * trials as f64).ceil() as u64
}

pub fn counterexample(prop: &Property, seed: u64, trial: u64, message: String, case: &Case) -> Counterexample {
    Counterexample {
        property: prop.id.to_string(),
        seed,
        trial,
        message,
        universe: UniverseDoc::of(&case.universe),
        inputs: InputsDoc::of(&case.universe, &case.inputs),
    }
}

pub fn run_property(id: &str, cfg: &RunConfig) -> Result<CheckOutcome, HarnessError> {
    let prop = catalog::find(id).ok_or_else(|| HarnessError::UnknownProperty(id.to_string()))?;
    run(&prop, cfg)
}

pub fn run(prop: &Property, cfg: &RunConfig) -> Result<CheckOutcome, HarnessError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let results: Vec<(u64, Trial)> =
        pool.install(|| (0..cfg.trials).into_par_iter().map(|t| (t, run_trial(prop, cfg.seed, t))).collect());

    let mut hits = 0;
    let mut failures = 0;
    let mut reasons = BTreeMap::new();
    let mut first: Option<(u64, String, Box<Case>)> = None;
    for (t, r) in results {
        match r {
            Trial::Vacuous(why) => *reasons.entry(why).or_insert(0) += 1,
            Trial::Pass => hits += 1,
            Trial::Fail(msg, case) => {
                hits += 1;
                failures += 1;
                if first.is_none() {
                    first = Some((t, msg, case));
                }
            }
        }
    }
    let first_counterexample = first.map(|(t, msg, case)| {
        let (case, msg) = if cfg.shrink { shrink(prop, *case, msg) } else { (*case, msg) };
        counterexample(prop, cfg.seed, t, msg, &case)
    });
    let floor = cfg.floor.unwrap_or_else(|| floor_for(prop, cfg.trials));
    let status = if failures > 0 {
        Status::Fail
    } else if hits == 0 || hits < floor {
        Status::Vacuous
    } else {
        Status::Pass
    };
    Ok(CheckOutcome {
        property: prop.id.to_string(),
        anchor: prop.anchor.to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        premise_hits: hits,
        floor,
        failures,
        status,
        vacuous_reasons: reasons,
        first_counterexample,
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Re-runs the check of a stored counterexample.
pub fn replay(ce: &Counterexample) -> Result<Verdict, HarnessError> {
    let prop = catalog::find(&ce.property).ok_or_else(|| HarnessError::UnknownProperty(ce.property.clone()))?;
    let universe = ce.universe.clone().build()?;
    let inputs = ce.inputs.clone().build(&universe)?;
    Ok(evaluate(&prop, &Case { universe, inputs }))
}
