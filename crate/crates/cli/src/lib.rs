//! The `scf` command line: document validation, single operations, and the property suite.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scf_core::doc::{
    canonical, pcond_from_json, pcond_to_json, qcond_from_json, qcond_to_json, universe_from_json, universe_to_json,
};
use scf_core::product::{oplus_q, project_coordinate, restrict_q, validate_q, QCondition};
use scf_core::single::{
    amalg_countable, amalg_uncountable, restrict_countable, restrict_uncountable, validate_p, CondError, PCondition,
};
use scf_core::universe::{generate_universe, validate_universe, Container, GenParams, Universe};
use scf_harness::catalog::{self, Verdict};
use scf_harness::gen::profiles;
use scf_harness::inputs::Counterexample;
use scf_harness::report::{render_table, run_all, RunReport};
use scf_harness::runner::{replay, run, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "scf", version, about = "Finite models of forcing with side conditions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a universe document against the axioms A1-A14.
    ValidateUniverse { file: PathBuf },
    /// Generate a random valid universe.
    GenUniverse {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Profile::Default)]
        profile: Profile,
        /// Generator parameters as JSON; overrides --profile.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Print generation statistics to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Check a condition against the clauses of the definition.
    ValidateCond {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        cond: PathBuf,
        /// The condition is a product condition.
        #[arg(long)]
        product: bool,
    },
    /// Restrict a condition to a model.
    Restrict {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        cond: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        product: bool,
    },
    /// Amalgamate `w` with `r` over a model.
    Amalgamate {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        w: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        product: bool,
    },
    /// Read one coordinate of a product condition.
    Project {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        cond: PathBuf,
        #[arg(long)]
        index: u32,
    },
    /// Run one catalog property.
    Check {
        id: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Absolute premise-hit floor, replacing the catalog fraction.
        #[arg(long)]
        floor: Option<u64>,
        /// Replay a stored counterexample or the first one in a report.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        no_shrink: bool,
    },
    /// Run every catalog property.
    FuzzAll {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        floor: Option<u64>,
        /// Only properties whose id starts with this.
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        no_shrink: bool,
    },
    /// Render a JSON run report as a table.
    Report { file: PathBuf },
    /// List the catalog.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Profile {
    Default,
    Wide,
    Tiny,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Countable,
    Uncountable,
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// Well-formed input that fails validation or a property; the output is still printed.
    Failed { output: String, reason: String },
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{ctx}: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(input(path.display()))
}

fn load_universe(path: &Path) -> Result<Universe, Failure> {
    let u = universe_from_json(&read(path)?).map_err(input(path.display()))?;
    let report = validate_universe(&u);
    if !report.all_pass() {
        let failed: Vec<String> = report
            .entries
            .iter()
            .filter(|e| !e.passed)
            .map(|e| format!("{} ({})", e.axiom, e.witness.as_deref().unwrap_or("")))
            .collect();
        return Err(Failure::Input(format!("{}: universe fails {}", path.display(), failed.join(", "))));
    }
    Ok(u)
}

fn load_p(u: &Universe, path: &Path) -> Result<PCondition, Failure> {
    pcond_from_json(u, &read(path)?).map_err(input(path.display()))
}

fn load_q(u: &Universe, path: &Path) -> Result<QCondition, Failure> {
    qcond_from_json(u, &read(path)?).map_err(input(path.display()))
}

fn container(u: &Universe, id: &str) -> Result<Container, Failure> {
    u.container(id).map_err(input("--model"))
}

fn op_failed(e: CondError) -> Failure {
    match e {
        CondError::UnknownId(_) => Failure::Input(e.to_string()),
        _ => Failure::Failed { output: String::new(), reason: e.to_string() },
    }
}

/// Stops with the first violated clause of an input condition.
fn require_valid_p(u: &Universe, p: &PCondition, name: &str) -> Result<(), Failure> {
    let v = validate_p(u, p).map_err(input(name))?;
    match v.first() {
        None => Ok(()),
        Some(c) => Err(Failure::Failed { output: String::new(), reason: format!("{name} violates {c}") }),
    }
}

fn require_valid_q(u: &Universe, q: &QCondition, name: &str) -> Result<(), Failure> {
    let v = validate_q(u, q).map_err(input(name))?;
    match v.first() {
        None => Ok(()),
        Some(c) => Err(Failure::Failed { output: String::new(), reason: format!("{name} violates {c}") }),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ValidationDoc {
    valid: bool,
    violations: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReplayDoc {
    property: String,
    seed: u64,
    trial: u64,
    verdict: String,
    message: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CatalogEntry {
    id: &'static str,
    anchor: &'static str,
    floor: f64,
}

fn report_outcome(r: RunReport) -> Outcome {
    let out = r.to_json();
    if r.all_pass() {
        Ok(out)
    } else {
        let s = r.summary;
        Err(Failure::Failed { output: out, reason: format!("{} failing, {} vacuous", s.fail, s.vacuous) })
    }
}

fn load_counterexample(path: &Path, id: &str) -> Result<Counterexample, Failure> {
    let text = read(path)?;
    if let Ok(ce) = serde_json::from_str::<Counterexample>(&text) {
        return Ok(ce);
    }
    let report = RunReport::from_json(&text).map_err(input(path.display()))?;
    report
        .outcomes
        .into_iter()
        .filter(|o| o.property == id)
        .find_map(|o| o.first_counterexample)
        .ok_or_else(|| Failure::Input(format!("{}: no counterexample for {id}", path.display())))
}

fn execute(cmd: Cmd, err: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::ValidateUniverse { file } => {
            let u = universe_from_json(&read(&file)?).map_err(input(file.display()))?;
            let report = validate_universe(&u);
            let out = canonical(&report);
            if report.all_pass() {
                Ok(out)
            } else {
                let ids: Vec<String> = report.failed().iter().map(|a| a.to_string()).collect();
                Err(Failure::Failed { output: out, reason: format!("axioms failed: {}", ids.join(", ")) })
            }
        }
        Cmd::GenUniverse { seed, profile, params, stats } => {
            let params: GenParams = match params {
                Some(path) => serde_json::from_str(&read(&path)?).map_err(input(path.display()))?,
                None => {
                    let ps = profiles();
                    match profile {
                        Profile::Default => ps[0].clone(),
                        Profile::Wide => ps[1].clone(),
                        Profile::Tiny => ps[2].clone(),
                    }
                }
            };
            let g = generate_universe(seed, &params).map_err(|e| match e {
                scf_core::universe::GenError::BadParams(_) => Failure::Input(e.to_string()),
                _ => Failure::Failed { output: String::new(), reason: e.to_string() },
            })?;
            if stats {
                let _ = err.write_all(canonical(&g.stats).as_bytes());
            }
            Ok(universe_to_json(&g.universe))
        }
        Cmd::ValidateCond { universe, cond, product } => {
            let u = load_universe(&universe)?;
            let violations: Vec<String> = if product {
                let q = load_q(&u, &cond)?;
                validate_q(&u, &q).map_err(input(cond.display()))?.iter().map(|v| v.to_string()).collect()
            } else {
                let p = load_p(&u, &cond)?;
                validate_p(&u, &p).map_err(input(cond.display()))?.iter().map(|v| v.to_string()).collect()
            };
            let doc = ValidationDoc { valid: violations.is_empty(), violations };
            let out = canonical(&doc);
            match doc.violations.first() {
                None => Ok(out),
                Some(first) => Err(Failure::Failed { output: out, reason: first.clone() }),
            }
        }
        Cmd::Restrict { universe, cond, model, product } => {
            let u = load_universe(&universe)?;
            let n = container(&u, &model)?;
            if product {
                let q = load_q(&u, &cond)?;
                require_valid_q(&u, &q, "condition")?;
                Ok(qcond_to_json(&u, &restrict_q(&u, &q, n).map_err(op_failed)?))
            } else {
                let p = load_p(&u, &cond)?;
                require_valid_p(&u, &p, "condition")?;
                let out = match n {
                    Container::C(n) => restrict_countable(&u, &p, n),
                    Container::U(q) => restrict_uncountable(&u, &p, q),
                }
                .map_err(op_failed)?;
                Ok(pcond_to_json(&u, &out))
            }
        }
        Cmd::Amalgamate { mode, universe, r, w, model, product } => {
            let u = load_universe(&universe)?;
            let n = container(&u, &model)?;
            match (mode, n) {
                (Mode::Countable, Container::C(_)) | (Mode::Uncountable, Container::U(_)) => {}
                _ => return Err(Failure::Input(format!("--model {model} does not match --mode"))),
            }
            if product {
                let (qr, qw) = (load_q(&u, &r)?, load_q(&u, &w)?);
                require_valid_q(&u, &qr, "r")?;
                require_valid_q(&u, &qw, "w")?;
                Ok(qcond_to_json(&u, &oplus_q(&u, &qw, &qr, n).map_err(op_failed)?))
            } else {
                let (pr, pw) = (load_p(&u, &r)?, load_p(&u, &w)?);
                require_valid_p(&u, &pr, "r")?;
                require_valid_p(&u, &pw, "w")?;
                let out = match n {
                    Container::C(n) => amalg_countable(&u, &pw, &pr, n),
                    Container::U(q) => amalg_uncountable(&u, &pw, &pr, q),
                }
                .map_err(op_failed)?;
                Ok(pcond_to_json(&u, &out))
            }
        }
        Cmd::Project { universe, cond, index } => {
            let u = load_universe(&universe)?;
            let q = load_q(&u, &cond)?;
            require_valid_q(&u, &q, "condition")?;
            Ok(pcond_to_json(&u, &project_coordinate(&q, index).map_err(op_failed)?))
        }
        Cmd::Check { id, seed, trials, jobs, floor, replay: replay_file, timing, no_shrink } => {
            let prop = catalog::find(&id).ok_or_else(|| Failure::Input(format!("unknown property {id}")))?;
            if let Some(path) = replay_file {
                let ce = load_counterexample(&path, &id)?;
                if ce.property != id {
                    return Err(Failure::Input(format!("{}: counterexample is for {}", path.display(), ce.property)));
                }
                let verdict = replay(&ce).map_err(input(path.display()))?;
                let (name, message) = match &verdict {
                    Verdict::Pass => ("pass", String::new()),
                    Verdict::Vacuous(m) => ("vacuous", m.clone()),
                    Verdict::Fail(m) => ("fail", m.clone()),
                };
                let out = canonical(&ReplayDoc {
                    property: ce.property,
                    seed: ce.seed,
                    trial: ce.trial,
                    verdict: name.into(),
                    message: message.clone(),
                });
                return match verdict {
                    Verdict::Fail(_) => {
                        Err(Failure::Failed { output: out, reason: format!("{id} fails again: {message}") })
                    }
                    _ => Ok(out),
                };
            }
            let cfg = RunConfig { seed, trials, jobs, floor, timing, shrink: !no_shrink };
            let outcome = run(&prop, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
            report_outcome(RunReport::new(&cfg, vec![outcome]))
        }
        Cmd::FuzzAll { seed, trials, jobs, floor, prefix, timing, no_shrink } => {
            let cfg = RunConfig { seed, trials, jobs, floor, timing, shrink: !no_shrink };
            let report = run_all(&cfg, &prefix).map_err(|e| Failure::Input(e.to_string()))?;
            if report.outcomes.is_empty() {
                return Err(Failure::Input(format!("no property id starts with {prefix:?}")));
            }
            report_outcome(report)
        }
        Cmd::Report { file } => {
            let r = RunReport::from_json(&read(&file)?).map_err(input(file.display()))?;
            Ok(render_table(&r))
        }
        Cmd::List => {
            let entries: Vec<CatalogEntry> =
                catalog::all().iter().map(|p| CatalogEntry { id: p.id, anchor: p.anchor, floor: p.floor }).collect();
            Ok(canonical(&entries))
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.cmd, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Failed { output, reason }) => {
            let _ = out.write_all(output.as_bytes());
            let _ = writeln!(err, "failed: {reason}");
            EXIT_FAILED
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
