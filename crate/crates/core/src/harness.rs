//! Seeded Monte Carlo experiments for the majority decoder.
//!
//! Trial `i` of a cell draws from `ChaCha8Rng::seed_from_u64(master_seed)` on
//! stream `i`, so estimates do not depend on how trials are spread over
//! threads. The transmitted word is fixed to zero; the channel and the vote
//! commute with translation.

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hamming::BallSampler;
use crate::majority::{verify_radius, MajorityResult};
use crate::probability::{majority_success_lb, Method};

pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `Pr[z = x]` at `n = 28, t = 5`.
    Table1,
    /// `Pr[verify_radius <= e]` at `n = 24, t = 7`.
    Table2,
    /// `Pr[z = x]` when `e_values` is empty, otherwise verifiability per `e`.
    Custom,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::Table1 => "table1",
            ExperimentKind::Table2 => "table2",
            ExperimentKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub t: usize,
    pub e_values: Vec<usize>,
    #[serde(rename = "N")]
    pub channels: Vec<usize>,
    pub samples: u64,
    pub master_seed: u64,
    /// Thread count; `None` uses the global pool. Never affects results.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worker_count: Option<usize>,
}

impl ExperimentConfig {
    pub fn table1(samples: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::Table1,
            n: 28,
            t: 5,
            e_values: vec![],
            channels: vec![11, 21, 31, 41, 101],
            samples,
            master_seed,
            worker_count: None,
        }
    }

    pub fn table2(samples: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::Table2,
            n: 24,
            t: 7,
            e_values: vec![2, 3, 4],
            channels: vec![11, 21, 31, 41],
            samples,
            master_seed,
            worker_count: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::param("samples must be at least 1"));
        }
        if self.n == 0 || self.t > self.n {
            return Err(Error::param(format!("need 0 <= t <= n and n >= 1, got n={}, t={}", self.n, self.t)));
        }
        if self.channels.contains(&0) {
            return Err(Error::param("every N must be at least 1"));
        }
        if self.worker_count == Some(0) {
            return Err(Error::param("worker count must be at least 1"));
        }
        BallSampler::new(self.n, self.t)?;
        match self.kind {
            ExperimentKind::Table1 if !self.e_values.is_empty() => {
                Err(Error::param("table1 measures z = x and takes no e values"))
            }
            ExperimentKind::Table2 if self.e_values.is_empty() => Err(Error::param("table2 needs at least one e")),
            _ => Ok(()),
        }
    }

    /// SHA-256 of the canonical JSON, ignoring `worker_count`.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.worker_count = None;
        let json = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }
}

/// One `(e, N)` estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub kind: ExperimentKind,
    pub n: usize,
    pub t: usize,
    pub e: Option<usize>,
    #[serde(rename = "N")]
    pub channels: usize,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    /// Recursive lower bound on `Pr[z = x]`, only for `z = x` cells.
    pub bound_thm13: Option<f64>,
    /// Closed-form lower bound on `Pr[z = x]`, only for `z = x` cells.
    pub bound_thm14: Option<f64>,
    pub seed: u64,
}

impl Cell {
    /// Distance from `target` in standard errors; a zero standard error
    /// counts as one trial's worth of resolution.
    pub fn z_score(&self, target: f64) -> f64 {
        let floor = 1.0 / self.samples as f64;
        (self.estimate - target).abs() / self.stderr.max(floor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub cells: Vec<Cell>,
}

fn count_successes(samples: u64, seed: u64, trial: impl Fn(&mut ChaCha8Rng) -> bool + Sync) -> u64 {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            trial(&mut rng) as u64
        })
        .sum()
}

/// One-counts per coordinate over `N` uniform-ball errors around zero.
fn vote_counts(sampler: &BallSampler, n: usize, channels: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut ones = vec![0u32; n];
    for _ in 0..channels {
        for i in sampler.sample_error(rng).ones() {
            ones[i - 1] += 1;
        }
    }
    ones
}

fn majority_equal_count(n: usize, t: usize, channels: usize, samples: u64, seed: u64) -> Result<u64> {
    let sampler = BallSampler::new(n, t)?;
    Ok(count_successes(samples, seed, |rng| {
        vote_counts(&sampler, n, channels, rng).iter().all(|&c| 2 * (c as usize) < channels)
    }))
}

fn verifiable_count(n: usize, t: usize, e: usize, channels: usize, samples: u64, seed: u64) -> Result<u64> {
    let sampler = BallSampler::new(n, t)?;
    Ok(count_successes(samples, seed, |rng| {
        let r = MajorityResult::from_one_counts(channels as u32, &vote_counts(&sampler, n, channels, rng));
        verify_radius(&r, t).is_some_and(|k| k <= e)
    }))
}

/// Fraction of trials whose majority word equals the transmitted word; a tie counts as failure.
pub fn mc_majority_equal(n: usize, t: usize, channels: usize, samples: u64, seed: u64) -> Result<f64> {
    check_samples(samples)?;
    Ok(majority_equal_count(n, t, channels, samples, seed)? as f64 / samples as f64)
}

/// Fraction of trials where the verification radius is at most `e`.
pub fn mc_verifiable(n: usize, t: usize, e: usize, channels: usize, samples: u64, seed: u64) -> Result<f64> {
    check_samples(samples)?;
    Ok(verifiable_count(n, t, e, channels, samples, seed)? as f64 / samples as f64)
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::param("samples must be at least 1"));
    }
    Ok(())
}

fn make_cell(cfg: &ExperimentConfig, e: Option<usize>, channels: usize, successes: u64) -> Cell {
    let p = successes as f64 / cfg.samples as f64;
    let bound = |m| {
        if e.is_some() {
            None
        } else {
            majority_success_lb(cfg.n, cfg.t, channels, m).ok()
        }
    };
    Cell {
        kind: cfg.kind,
        n: cfg.n,
        t: cfg.t,
        e,
        channels,
        samples: cfg.samples,
        successes,
        estimate: p,
        stderr: (p * (1.0 - p) / cfg.samples as f64).sqrt(),
        bound_thm13: bound(Method::Recursive),
        bound_thm14: bound(Method::Simple),
        seed: cfg.master_seed,
    }
}

fn run_cells(cfg: &ExperimentConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    // every cell reuses the master seed: common random numbers across N
    if cfg.e_values.is_empty() {
        for &nn in &cfg.channels {
            let s = majority_equal_count(cfg.n, cfg.t, nn, cfg.samples, cfg.master_seed)?;
            cells.push(make_cell(cfg, None, nn, s));
        }
    } else {
        for &nn in &cfg.channels {
            for &e in &cfg.e_values {
                let s = verifiable_count(cfg.n, cfg.t, e, nn, cfg.samples, cfg.master_seed)?;
                cells.push(make_cell(cfg, Some(e), nn, s));
            }
        }
    }
    Ok(cells)
}

pub fn run(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let cells = match config.worker_count {
        None => run_cells(config)?,
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::param(format!("thread pool: {e}")))?
            .install(|| run_cells(config))?,
    };
    Ok(ExperimentResult { config: config.clone(), config_hash: config.hash(), cells })
}

pub const CSV_HEADER: [&str; 11] =
    ["kind", "n", "t", "e", "N", "samples", "estimate", "stderr", "bound_thm13", "bound_thm14", "seed"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv_to<W: Write>(result: &ExperimentResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for c in &result.cells {
        w.write_record([
            c.kind.as_str().to_string(),
            c.n.to_string(),
            c.t.to_string(),
            opt(c.e),
            c.channels.to_string(),
            c.samples.to_string(),
            format!("{:.6}", c.estimate),
            format!("{:.6}", c.stderr),
            opt(c.bound_thm13.map(|b| format!("{b:.6}"))),
            opt(c.bound_thm14.map(|b| format!("{b:.6}"))),
            c.seed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    write_csv_to(result, std::fs::File::create(path)?)
}

pub fn write_json(result: &ExperimentResult, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, result)?;
    writeln!(f)?;
    Ok(())
}
