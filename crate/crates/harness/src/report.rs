//! Run reports: outcomes of a suite run with the environment needed to reproduce it.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use scf_core::doc::{canonical, pcond_to_json, qcond_to_json, universe_to_json};
use scf_core::fixtures;
use scf_core::universe::GenParams;

use crate::catalog;
use crate::gen::profiles;
use crate::runner::{run, CheckOutcome, HarnessError, RunConfig, Status};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Environment {
    pub seed: u64,
    pub trials: u64,
    /// Absolute premise-hit floor given on the command line, if any.
    pub floor: Option<u64>,
    /// Generator settings for random universes.
    pub bounds: Vec<GenParams>,
    /// SHA-256 of the canonical documents of the bundled fixtures.
    pub fixtures: BTreeMap<String, String>,
    pub version: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    pub vacuous: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunReport {
    pub environment: Environment,
    pub outcomes: Vec<CheckOutcome>,
    pub summary: Summary,
}

fn sha256(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().fold(String::new(), |mut out, b| {
        let _ = write!(out, "{b:02x}");
        out
    })
}

pub fn fixture_hashes() -> BTreeMap<String, String> {
    let u = fixtures::u1();
    BTreeMap::from([
        ("U1".to_string(), sha256(&universe_to_json(&u))),
        ("p1".to_string(), sha256(&pcond_to_json(&u, &fixtures::p1(&u)))),
        ("q1".to_string(), sha256(&qcond_to_json(&u, &fixtures::q1(&u)))),
    ])
}

impl RunReport {
    pub fn new(cfg: &RunConfig, outcomes: Vec<CheckOutcome>) -> RunReport {
        let mut summary = Summary::default();
        for o in &outcomes {
            match o.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Vacuous => summary.vacuous += 1,
            }
        }
        RunReport {
            environment: Environment {
                seed: cfg.seed,
                trials: cfg.trials,
                floor: cfg.floor,
                bounds: profiles().to_vec(),
                fixtures: fixture_hashes(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            outcomes,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.vacuous == 0
    }

    pub fn to_json(&self) -> String {
        canonical(self)
    }

    pub fn from_json(s: &str) -> Result<RunReport, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Runs every catalog property whose id starts with `prefix`.
pub fn run_all(cfg: &RunConfig, prefix: &str) -> Result<RunReport, HarnessError> {
    let mut outcomes = Vec::new();
    for prop in catalog::all().iter().filter(|p| p.id.starts_with(prefix)) {
        outcomes.push(run(prop, cfg)?);
    }
    Ok(RunReport::new(cfg, outcomes))
}

/// A plain-text table of a report.
pub fn render_table(r: &RunReport) -> String {
    let timed = r.outcomes.iter().any(|o| o.elapsed_ms.is_some());
    let mut head = vec!["property", "status", "trials", "hits", "floor", "failures"];
    if timed {
        head.push("ms");
    }
    let mut rows: Vec<Vec<String>> = vec![head.iter().map(|s| s.to_string()).collect()];
    for o in &r.outcomes {
        let status = match o.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
        };
        let mut row = vec![
            o.property.clone(),
            status.to_string(),
            o.trials.to_string(),
            o.premise_hits.to_string(),
            o.floor.to_string(),
            o.failures.to_string(),
        ];
        if timed {
            row.push(o.elapsed_ms.map(|m| m.to_string()).unwrap_or_default());
        }
        rows.push(row);
    }
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "seed {}  trials {}", r.environment.seed, r.environment.trials);
    for (k, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| if i < 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        if k == 0 {
            let _ = writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
        }
    }
    for o in r.outcomes.iter().filter(|o| o.status != Status::Pass) {
        if let Some(ce) = &o.first_counterexample {
            let _ = writeln!(out, "{} trial {}: {}", o.property, ce.trial, ce.message);
        } else {
            let reasons: Vec<String> = o.vacuous_reasons.iter().map(|(k, v)| format!("{k} ({v})")).collect();
            let _ = writeln!(
                out,
                "{}: {} premise hits, floor {}; {}",
                o.property,
                o.premise_hits,
                o.floor,
                reasons.join(", ")
            );
        }
    }
    let s = r.summary;
    let _ = writeln!(out, "{} pass, {} fail, {} vacuous", s.pass, s.fail, s.vacuous);
    out
}
