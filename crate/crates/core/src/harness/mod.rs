//! Seeded closed-loop simulation against a random environment.
//!
//! At every step the environment picks one event uniformly from the issued
//! control pattern. Batches derive one seed per run from a master seed and
//! aggregate in run order. Sequential and parallel execution agree bit for
//! bit.

pub mod plot;
pub mod random;
pub mod rng;
pub mod surveillance;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::des::EventId;
use crate::error::{Error, Result};
use crate::formula::Letter;
use crate::product::ProductAutomaton;
use crate::ranking::RankingFunction;
use crate::supervisor::{LinearSchedule, Permissiveness, Supervisor, TranscriptRecord};

use rng::{run_seed, SimRng};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimulationConfig {
    pub seed: u64,
    pub a: f64,
    pub b: f64,
    pub max_steps: usize,
    pub runs: usize,
}

impl SimulationConfig {
    pub fn new(a: f64, b: f64) -> Self {
        SimulationConfig {
            seed: 0,
            a,
            b,
            max_steps: DEFAULT_MAX_STEPS,
            runs: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::Config("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one simulated session.
///
/// `ranks`, `levels` and `states` hold one entry per visited product state
/// (`steps + 1`); `pattern_sizes` and `events` hold one entry per step.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub steps: usize,
    pub accepted: bool,
    pub ranks: Vec<u32>,
    pub levels: Vec<f64>,
    pub pattern_sizes: Vec<usize>,
    pub states: Vec<usize>,
    pub events: Vec<EventId>,
}

impl RunRecord {
    /// Labels of the visited plant states, starting with the initial one.
    pub fn label_trace(&self, p: &ProductAutomaton) -> Vec<Letter> {
        self.states.iter().map(|&x| p.label(x)).collect()
    }

    /// Mean control pattern size over the steps of the run, 0 for a run
    /// without steps.
    pub fn mean_pattern_size(&self) -> f64 {
        if self.pattern_sizes.is_empty() {
            0.0
        } else {
            self.pattern_sizes.iter().sum::<usize>() as f64 / self.pattern_sizes.len() as f64
        }
    }
}

/// Simulate one session until the supervisor stops.
pub fn simulate_run(
    p: &ProductAutomaton,
    ranking: &RankingFunction,
    schedule: &dyn Permissiveness,
    seed: u64,
    max_steps: usize,
) -> Result<RunRecord> {
    simulate_run_with_transcript(p, ranking, schedule, seed, max_steps).map(|(r, _)| r)
}

/// Like [`simulate_run`], also returning the per-step transcript.
pub fn simulate_run_with_transcript(
    p: &ProductAutomaton,
    ranking: &RankingFunction,
    schedule: &dyn Permissiveness,
    seed: u64,
    max_steps: usize,
) -> Result<(RunRecord, Vec<TranscriptRecord>)> {
    let sup = Supervisor::new(p, ranking, schedule);
    let mut session = sup.start_session()?;
    let mut rng = SimRng::new(seed);
    let mut record = RunRecord {
        seed,
        steps: 0,
        accepted: false,
        ranks: vec![session.rank()],
        levels: vec![schedule.level(0)],
        pattern_sizes: Vec::new(),
        states: vec![session.state()],
        events: Vec::new(),
    };
    let mut transcript = Vec::new();
    while let Some(pattern) = session.pattern() {
        if record.steps == max_steps {
            return Err(Error::MaxStepsExceeded { seed, max_steps });
        }
        if pattern.is_empty() {
            return Err(Error::EmptyPattern { k: session.step() });
        }
        let e = pattern.events()[rng.below(pattern.len() as u64) as usize];
        transcript.push(session.observe_recorded(e)?);
        record.steps += 1;
        record.pattern_sizes.push(pattern.len());
        record.events.push(e);
        record.states.push(session.state());
        record.ranks.push(session.rank());
        record.levels.push(schedule.level(session.step()));
    }
    record.accepted = true;
    Ok((record, transcript))
}

/// Aggregate statistics of one configuration. Standard deviations are the
/// population form over runs; pattern sizes are first averaged per run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BatchSummary {
    pub a: f64,
    pub b: f64,
    pub runs: usize,
    pub mean_steps: f64,
    pub std_steps: f64,
    pub mean_pattern_size: f64,
    pub std_pattern_size: f64,
    pub accepted_count: usize,
}

impl BatchSummary {
    pub fn from_records(a: f64, b: f64, records: &[RunRecord]) -> Self {
        let steps: Vec<f64> = records.iter().map(|r| r.steps as f64).collect();
        let sizes: Vec<f64> = records.iter().map(RunRecord::mean_pattern_size).collect();
        let (mean_steps, std_steps) = mean_std(&steps);
        let (mean_pattern_size, std_pattern_size) = mean_std(&sizes);
        BatchSummary {
            a,
            b,
            runs: records.len(),
            mean_steps,
            std_steps,
            mean_pattern_size,
            std_pattern_size,
            accepted_count: records.iter().filter(|r| r.accepted).count(),
        }
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Run every configuration `runs` times with linear schedules. Run `i` of
/// each configuration uses seed `run_seed(master_seed, i)`.
pub fn simulate_batch(
    p: &ProductAutomaton,
    ranking: &RankingFunction,
    configs: &[(f64, f64)],
    runs: usize,
    master_seed: u64,
    max_steps: usize,
    parallel: bool,
) -> Result<Vec<BatchSummary>> {
    Ok(
        simulate_batch_records(p, ranking, configs, runs, master_seed, max_steps, parallel)?
            .iter()
            .zip(configs)
            .map(|(records, &(a, b))| BatchSummary::from_records(a, b, records))
            .collect(),
    )
}

/// The records behind [`simulate_batch`], one vector per configuration.
pub fn simulate_batch_records(
    p: &ProductAutomaton,
    ranking: &RankingFunction,
    configs: &[(f64, f64)],
    runs: usize,
    master_seed: u64,
    max_steps: usize,
    parallel: bool,
) -> Result<Vec<Vec<RunRecord>>> {
    SimulationConfig {
        seed: master_seed,
        a: 0.0,
        b: 0.0,
        max_steps,
        runs,
    }
    .validate()?;
    let mut out = Vec::with_capacity(configs.len());
    for &(a, b) in configs {
        let schedule = LinearSchedule::new(a, b, ranking.alpha())?;
        let one = |i: usize| simulate_run(p, ranking, &schedule, run_seed(master_seed, i as u64), max_steps);
        let results: Vec<Result<RunRecord>> = if parallel {
            (0..runs).into_par_iter().map(one).collect()
        } else {
            (0..runs).map(one).collect()
        };
        out.push(results.into_iter().collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// Write transcript records as JSON lines.
pub fn write_transcript<W: Write>(records: &[TranscriptRecord], mut w: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Parse `a,b`.
pub fn parse_perm(text: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((parse_num(a)?, parse_num(b)?)),
        _ => Err(Error::Config(format!("expected `a,b`, got `{text}`"))),
    }
}

/// Parse a sweep such as `b=30;a=-0.25,-0.5,-1,-2` into `(a, b)` pairs,
/// `a` varying slowest.
pub fn parse_sweep(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut a_values = None;
    let mut b_values = None;
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, values) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected `key=values`, got `{part}`")))?;
        let values = values
            .split(',')
            .map(|v| parse_num(v.trim()))
            .collect::<Result<Vec<f64>>>()?;
        let slot = match key.trim() {
            "a" => &mut a_values,
            "b" => &mut b_values,
            other => return Err(Error::Config(format!("unknown sweep key `{other}`"))),
        };
        if slot.replace(values).is_some() {
            return Err(Error::Config(format!("sweep key `{}` given twice", key.trim())));
        }
    }
    let (Some(a_values), Some(b_values)) = (a_values, b_values) else {
        return Err(Error::Config("sweep needs both `a` and `b`".into()));
    };
    Ok(a_values
        .iter()
        .flat_map(|&a| b_values.iter().map(move |&b| (a, b)))
        .collect())
}

fn parse_num(text: &str) -> Result<f64> {
    text.parse::<f64>()
        .map_err(|_| Error::Config(format!("`{text}` is not a number")))
}
