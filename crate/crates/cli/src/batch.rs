//! Parallel sampling runs: random tables per order, one solver per job, a
//! line-delimited log that doubles as catalog and resume checkpoint.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use triplication::msp::{compile, SolveOutcome, SolverConfig, ValueOrder};
use triplication::{recover_starter, Error, Scenario, ScenarioKind, TriplicationTable};

use crate::exit;

pub const LOG_FILE: &str = "catalog.jsonl";
pub const SUMMARY_FILE: &str = "summary.json";

/// Budget for drawing one random table, separate from the solver budget.
const SAMPLE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioChoice {
    Mod,
    Carry,
    Both,
}

impl ScenarioChoice {
    fn kinds(self) -> Vec<ScenarioKind> {
        match self {
            ScenarioChoice::Mod => vec![ScenarioKind::Mod],
            ScenarioChoice::Carry => vec![ScenarioKind::Carry],
            ScenarioChoice::Both => vec![ScenarioKind::Mod, ScenarioKind::Carry],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchConfig {
    pub orders: Vec<u32>,
    pub samples: usize,
    pub scenario: ScenarioChoice,
    pub seed: u64,
    pub budget: u64,
    /// Shuffle value order with each job's seed.
    #[serde(default)]
    pub shuffle: bool,
    /// Extra tables solved alongside the sampled ones.
    #[serde(default)]
    pub tables: Vec<PathBuf>,
}

impl BatchConfig {
    pub fn check(&self) -> Result<()> {
        if self.samples == 0 && self.tables.is_empty() {
            bail!(Error::InvalidInput("sample count must be at least 1".into()));
        }
        if self.budget == 0 {
            bail!(Error::InvalidInput("budget must be positive".into()));
        }
        if let Some(&m) = self.orders.iter().find(|&&m| m < 5 || m % 2 == 0) {
            bail!(Error::InvalidInput(format!("order {m} cannot be sampled; need odd m >= 5")));
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// JSON config file; replaces the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated orders m.
    #[arg(long, value_delimiter = ',', default_values_t = [7u32, 9, 11])]
    pub orders: Vec<u32>,
    /// Random tables per order.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "mod")]
    pub scenario: ScenarioChoice,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 50_000_000)]
    pub budget: u64,
    #[arg(long)]
    pub shuffle: bool,
    /// Fixed table JSON files to solve as well.
    #[arg(long = "tables", num_args = 1..)]
    pub tables: Vec<PathBuf>,
    /// Worker threads; rayon's default when omitted.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, env = "TRIPLICATION_OUT", default_value = ".")]
    pub out: PathBuf,
}

impl BatchArgs {
    fn config(&self) -> Result<BatchConfig> {
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()));
        }
        Ok(BatchConfig {
            orders: self.orders.clone(),
            samples: self.samples,
            scenario: self.scenario,
            seed: self.seed,
            budget: self.budget,
            shuffle: self.shuffle,
            tables: self.tables.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Source {
    Sample { m: u32, index: usize },
    Fixed { index: usize },
}

#[derive(Debug, Clone)]
struct Job {
    id: String,
    source: Source,
    seed: u64,
    kind: ScenarioKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solution,
    Unsat,
    Aborted,
    Error,
}

/// One line of the log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub job: String,
    pub scenario: ScenarioKind,
    pub m: u32,
    pub seed: u64,
    pub outcome: Outcome,
    pub nodes: u64,
    pub backtracks: u64,
    pub seconds: f64,
    pub table: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starter: Option<Vec<[u32; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Tables with a definite answer.
    pub n: usize,
    /// Tables proven unsatisfiable.
    pub n_empty: usize,
    pub solved: usize,
    pub aborted: usize,
    pub errors: usize,
}

/// Per-order, per-scenario tallies. Fixed tables are grouped under "fixed".
pub type Summary = BTreeMap<String, BTreeMap<String, Tally>>;

/// SplitMix64 step, used to derive independent job seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn job_seed(base: u64, m: u32, index: usize) -> u64 {
    mix(mix(base ^ ((m as u64) << 40)) ^ index as u64)
}

fn plan(cfg: &BatchConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &m in &cfg.orders {
        for index in 0..cfg.samples {
            let seed = job_seed(cfg.seed, m, index);
            for kind in cfg.scenario.kinds() {
                jobs.push(Job {
                    id: format!("m{m}-{index:05}"),
                    source: Source::Sample { m, index },
                    seed,
                    kind,
                });
            }
        }
    }
    for index in 0..cfg.tables.len() {
        for kind in cfg.scenario.kinds() {
            jobs.push(Job {
                id: format!("fixed-{index:03}"),
                source: Source::Fixed { index },
                seed: job_seed(cfg.seed, 0, index),
                kind,
            });
        }
    }
    jobs
}

fn run_job(job: &Job, cfg: &BatchConfig, fixed: &[TriplicationTable]) -> Record {
    let tt = match &job.source {
        Source::Sample { m, .. } => triplication::random_tt(*m, job.seed, SAMPLE_BUDGET),
        Source::Fixed { index } => Ok(fixed[*index].clone()),
    };
    let blank = |m: u32, table: Value, e: String| Record {
        job: job.id.clone(),
        scenario: job.kind,
        m,
        seed: job.seed,
        outcome: Outcome::Error,
        nodes: 0,
        backtracks: 0,
        seconds: 0.0,
        table,
        starter: None,
        error: Some(e),
    };
    let tt = match tt {
        Ok(tt) => tt,
        Err(e) => {
            let m = match job.source {
                Source::Sample { m, .. } => m,
                Source::Fixed { .. } => 0,
            };
            return blank(m, Value::Null, e.to_string());
        }
    };
    let solved = Scenario::new(job.kind, tt.m()).and_then(|sc| {
        let cfg = SolverConfig {
            budget: Some(cfg.budget),
            value_order: if cfg.shuffle { ValueOrder::Shuffled(job.seed) } else { ValueOrder::Fixed },
        };
        let report = compile(&tt, &sc)?.solve_first(&cfg);
        let starter = match &report.outcome {
            SolveOutcome::Solution(ct) => Some(recover_starter(&tt, ct, &sc)?.unordered),
            _ => None,
        };
        Ok((report, starter))
    });
    match solved {
        Ok((report, starter)) => Record {
            job: job.id.clone(),
            scenario: job.kind,
            m: tt.m(),
            seed: job.seed,
            outcome: match report.outcome {
                SolveOutcome::Solution(_) => Outcome::Solution,
                SolveOutcome::Unsatisfiable => Outcome::Unsat,
                SolveOutcome::Aborted => Outcome::Aborted,
            },
            nodes: report.stats.nodes,
            backtracks: report.stats.backtracks,
            seconds: report.stats.elapsed.as_secs_f64(),
            table: tt.to_json_value(),
            starter: starter.map(|s| s.iter().map(|&(x, y)| [x, y]).collect()),
            error: None,
        },
        Err(e) => blank(tt.m(), tt.to_json_value(), e.to_string()),
    }
}

/// Reads a log, skipping a torn final line left by an interrupted run.
pub fn read_log(path: &Path) -> Result<Vec<Record>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(r) = serde_json::from_str::<Record>(&line) {
            out.push(r);
        }
    }
    Ok(out)
}

pub fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary::new();
    for r in records {
        let group = if r.job.starts_with("fixed") { "fixed".to_string() } else { format!("m={}", r.m) };
        let t = s.entry(group).or_default().entry(r.scenario.to_string()).or_default();
        match r.outcome {
            Outcome::Solution => {
                t.n += 1;
                t.solved += 1;
            }
            Outcome::Unsat => {
                t.n += 1;
                t.n_empty += 1;
            }
            Outcome::Aborted => t.aborted += 1,
            Outcome::Error => t.errors += 1,
        }
    }
    s
}

/// Runs (or resumes) a batch in `out` and returns the summary.
pub fn execute(cfg: &BatchConfig, out: &Path, threads: Option<usize>) -> Result<Summary> {
    cfg.check()?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let fixed = cfg
        .tables
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            TriplicationTable::from_json(&text).with_context(|| format!("loading table {}", p.display()))
        })
        .collect::<Result<Vec<_>>>()?;

    let config_path = out.join("config.json");
    if config_path.exists() {
        let prev: BatchConfig = serde_json::from_str(&fs::read_to_string(&config_path)?)
            .with_context(|| format!("parsing {}", config_path.display()))?;
        if &prev != cfg {
            bail!(Error::InvalidInput(format!(
                "{} holds a run with a different configuration",
                out.display()
            )));
        }
    } else {
        fs::write(&config_path, serde_json::to_string_pretty(cfg)? + "\n")?;
    }

    let log_path = out.join(LOG_FILE);
    let done: BTreeSet<(String, ScenarioKind)> =
        read_log(&log_path)?.into_iter().map(|r| (r.job, r.scenario)).collect();
    let todo: Vec<Job> = plan(cfg)
        .into_iter()
        .filter(|j| !done.contains(&(j.id.clone(), j.kind)))
        .collect();

    // A torn last line would glue onto the next record; start on a fresh line.
    let mut file = OpenOptions::new().create(true).append(true).open(&log_path)?;
    if fs::metadata(&log_path)?.len() > 0 && !fs::read(&log_path)?.ends_with(b"\n") {
        file.write_all(b"\n")?;
    }
    let log = Mutex::new(file);

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            b = b.num_threads(n);
        }
        b.build()?
    };
    pool.install(|| {
        todo.par_iter().try_for_each(|job| -> Result<()> {
            let rec = run_job(job, cfg, &fixed);
            let line = serde_json::to_string(&rec)? + "\n";
            let mut f = log.lock().expect("log lock");
            f.write_all(line.as_bytes())?;
            f.flush()?;
            Ok(())
        })
    })?;

    let summary = summarize(&read_log(&log_path)?);
    fs::write(out.join(SUMMARY_FILE), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(summary)
}

pub fn run(args: BatchArgs) -> Result<u8> {
    let cfg = args.config()?;
    let summary = execute(&cfg, &args.out, args.threads)?;
    println!("{:<10} {:<8} {:>6} {:>6} {:>8} {:>8}", "group", "scenario", "N", "N_0", "aborted", "errors");
    let mut code = exit::OK;
    for (group, per) in &summary {
        for (sc, t) in per {
            println!(
                "{group:<10} {sc:<8} {:>6} {:>6} {:>8} {:>8}",
                t.n, t.n_empty, t.aborted, t.errors
            );
            if t.errors > 0 {
                code = exit::INTERNAL;
            }
        }
    }
    println!("log: {}", args.out.join(LOG_FILE).display());
    Ok(code)
}
