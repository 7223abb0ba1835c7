//! Experiment harness: seeded trials, success-rate statistics, resumable
//! sweeps and 2-D energy landscape scans.

mod landscape;

pub use landscape::{landscape_scan, GridSpec, Landscape};

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{exact_spectrum, Ansatz, IsingChain, SpectrumLevel, VqeProblem};
use crate::optimize::{
    de_minimize, hybrid_minimize, lbfgs_minimize, spsa_minimize, Crossover, DeConfig, LbfgsConfig,
    Objective, OptResult, ParameterShift, SpsaConfig,
};
use crate::state::Pauli;

/// Success threshold on δ used throughout.
pub const DEFAULT_THRESHOLD: f64 = 1e-2;

/// Optimizer selection with its settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerConfig {
    De(DeConfig),
    Spsa(SpsaConfig),
    Lbfgs(LbfgsConfig),
    Hybrid { de: DeConfig, lbfgs: LbfgsConfig },
}

impl OptimizerConfig {
    /// Short name used in summary tables, e.g. `de-exp-p1`.
    pub fn label(&self) -> String {
        let de_label = |c: &DeConfig| {
            let kind = match c.crossover {
                Crossover::Binomial => "bin",
                Crossover::Exponential => "exp",
            };
            format!("{kind}-p{}", c.population_multiplier)
        };
        match self {
            OptimizerConfig::De(c) => format!("de-{}", de_label(c)),
            OptimizerConfig::Spsa(_) => "spsa".into(),
            OptimizerConfig::Lbfgs(_) => "lbfgs".into(),
            OptimizerConfig::Hybrid { de, .. } => format!("hybrid-{}", de_label(de)),
        }
    }
}

/// One trial's problem and optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSpec {
    pub n: usize,
    pub layers: usize,
    pub include_initial_ry: bool,
    pub coupling: f64,
    pub axis: Pauli,
    pub optimizer: OptimizerConfig,
}

impl TrialSpec {
    pub fn new(n: usize, layers: usize, optimizer: OptimizerConfig) -> Self {
        Self {
            n,
            layers,
            include_initial_ry: true,
            coupling: 1.0,
            axis: Pauli::Y,
            optimizer,
        }
    }

    pub fn problem(&self) -> Result<VqeProblem> {
        let mut ansatz = Ansatz::new(self.n, self.layers);
        ansatz.include_initial_ry = self.include_initial_ry;
        let chain = IsingChain::new(self.n)
            .with_coupling(self.coupling)
            .with_axis(self.axis);
        VqeProblem::new(ansatz, chain)
    }
}

/// Outcome of one optimization run; one JSON line in a record file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRecord {
    pub n: usize,
    pub layers: usize,
    pub seed: u64,
    pub final_energy: f64,
    /// δ = 1 − |E/E₀|.
    pub delta: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Seconds.
    pub wall_time: f64,
    /// Index into the ascending exact spectrum of the closest level.
    pub nearest_level: usize,
}

impl TrialRecord {
    /// Equality ignoring `wall_time`.
    pub fn same_outcome(&self, other: &TrialRecord) -> bool {
        let strip = |r: &TrialRecord| TrialRecord {
            wall_time: 0.0,
            ..r.clone()
        };
        strip(self) == strip(other)
    }
}

/// Index of the level closest to `energy` (lowest index on ties).
pub fn nearest_level(levels: &[SpectrumLevel], energy: f64) -> usize {
    levels
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(best, dist), (i, l)| {
            let d = (l.energy - energy).abs();
            if d < dist {
                (i, d)
            } else {
                (best, dist)
            }
        })
        .0
}

/// Uniform `[-π, π)` start vector for the local optimizers.
pub fn random_start(rng: &mut impl Rng, dimension: usize) -> Vec<f64> {
    use std::f64::consts::PI;
    (0..dimension).map(|_| rng.random_range(-PI..PI)).collect()
}

/// Runs one optimization with `seed`.
///
/// Local optimizers start from a uniform `[-π, π)` vector drawn from `seed`;
/// DE and the hybrid seed their own population from it.
pub fn run_trial(spec: &TrialSpec, seed: u64) -> Result<TrialRecord> {
    let problem = spec.problem()?;
    let levels = exact_spectrum(problem.chain())?;
    let dimension = problem.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let result: OptResult = match &spec.optimizer {
        OptimizerConfig::De(c) => de_minimize(&problem, &DeConfig { seed, ..c.clone() })?,
        OptimizerConfig::Hybrid { de, lbfgs } => hybrid_minimize(
            &problem,
            &ParameterShift(&problem),
            &DeConfig { seed, ..de.clone() },
            lbfgs,
        )?,
        OptimizerConfig::Lbfgs(c) => {
            let x0 = random_start(&mut rng, dimension);
            lbfgs_minimize(&problem, &ParameterShift(&problem), &x0, c)?
        }
        OptimizerConfig::Spsa(c) => {
            let x0 = random_start(&mut rng, dimension);
            let config = SpsaConfig {
                seed: rng.random(),
                ..c.clone()
            };
            spsa_minimize(&problem, &x0, &config)?
        }
    };
    let wall_time = start.elapsed().as_secs_f64();
    Ok(TrialRecord {
        n: spec.n,
        layers: spec.layers,
        seed,
        final_energy: result.best_energy,
        delta: problem.relative_error(result.best_energy),
        iterations: result.iterations,
        evaluations: result.evaluations,
        converged: result.converged,
        wall_time,
        nearest_level: nearest_level(&levels, result.best_energy),
    })
}

/// Success rate of one `(n, layers, optimizer)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessRateSummary {
    pub n: usize,
    pub layers: usize,
    pub optimizer: String,
    pub n_opt: usize,
    pub success_count: usize,
    pub success_rate: f64,
    /// Half-width of the Wilson 95% interval.
    pub ci95: f64,
}

/// Wilson score interval half-width at 95% confidence.
pub fn wilson_half_width(successes: usize, trials: usize) -> f64 {
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

/// Counts `delta <= threshold` over a homogeneous set of records.
pub fn success_rate(
    records: &[TrialRecord],
    threshold: f64,
    optimizer: &str,
) -> Result<SuccessRateSummary> {
    let first = records
        .first()
        .ok_or_else(|| invalid("success rate of an empty record set"))?;
    if records
        .iter()
        .any(|r| r.n != first.n || r.layers != first.layers)
    {
        return Err(invalid("records mix different (n, layers) cells"));
    }
    let success_count = records.iter().filter(|r| r.delta <= threshold).count();
    Ok(SuccessRateSummary {
        n: first.n,
        layers: first.layers,
        optimizer: optimizer.to_string(),
        n_opt: records.len(),
        success_count,
        success_rate: success_count as f64 / records.len() as f64,
        ci95: wilson_half_width(success_count, records.len()),
    })
}

/// A batch of trials over several chain lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub n_range: Vec<usize>,
    pub n_layers: usize,
    pub include_initial_ry: bool,
    pub coupling: f64,
    pub axis: Pauli,
    pub optimizer: OptimizerConfig,
    pub n_opt: usize,
    pub success_threshold: f64,
    /// Trial `i` uses seed `base_seed + i`.
    pub base_seed: u64,
    pub parallel_trials: usize,
}

impl ExperimentSpec {
    pub fn new(n_range: Vec<usize>, n_layers: usize, optimizer: OptimizerConfig) -> Self {
        Self {
            n_range,
            n_layers,
            include_initial_ry: true,
            coupling: 1.0,
            axis: Pauli::Y,
            optimizer,
            n_opt: 20,
            success_threshold: DEFAULT_THRESHOLD,
            base_seed: 0,
            parallel_trials: 1,
        }
    }

    fn trial_spec(&self, n: usize) -> TrialSpec {
        TrialSpec {
            n,
            layers: self.n_layers,
            include_initial_ry: self.include_initial_ry,
            coupling: self.coupling,
            axis: self.axis,
            optimizer: self.optimizer.clone(),
        }
    }

    /// Checks every cell's problem and optimizer settings without running.
    pub fn validate(&self) -> Result<()> {
        if self.n_range.is_empty() {
            return Err(Error::Config("n range is empty".into()));
        }
        if self.parallel_trials == 0 {
            return Err(Error::Config("parallel trials must be at least 1".into()));
        }
        for &n in &self.n_range {
            let problem = self.trial_spec(n).problem()?;
            if let OptimizerConfig::De(de) | OptimizerConfig::Hybrid { de, .. } = &self.optimizer {
                if de.population_size(problem.dimension()) < 4 {
                    return Err(Error::Config(format!(
                        "DE population at n = {n} is below the minimum of 4"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Per-n success rates of `records`.
    pub fn summarize(&self, records: &[TrialRecord]) -> Result<Vec<SuccessRateSummary>> {
        let label = self.optimizer.label();
        self.n_range
            .iter()
            .map(|&n| {
                let cell: Vec<TrialRecord> = records.iter().filter(|r| r.n == n).cloned().collect();
                success_rate(&cell, self.success_threshold, &label)
            })
            .collect()
    }
}

/// Reads a record file, skipping a torn final line.
pub fn read_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let file = File::open(path)?;
    let mut records = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(r) => records.push(r),
            Err(_) => break,
        }
    }
    Ok(records)
}

fn write_records(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Runs every `(n, seed)` trial of `spec` over `parallel_trials` threads.
///
/// With a `record_path`, records are appended one JSON line at a time as
/// trials finish; an existing file is read first and only the missing
/// `(n, seed)` pairs are run. The returned records are sorted by
/// `(n, seed)`.
pub fn sweep(spec: &ExperimentSpec, record_path: Option<&Path>) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let mut done: Vec<TrialRecord> = Vec::new();
    if let Some(path) = record_path {
        if path.exists() {
            let wanted: HashSet<(usize, u64)> = tasks(spec).collect();
            done = read_records(path)?
                .into_iter()
                .filter(|r| r.layers == spec.n_layers && wanted.contains(&(r.n, r.seed)))
                .collect();
        }
        // Rewrite so a torn line from an interrupted run is dropped.
        write_records(path, &done)?;
    }
    let finished: HashSet<(usize, u64)> = done.iter().map(|r| (r.n, r.seed)).collect();
    let pending: Vec<(usize, u64)> = tasks(spec).filter(|t| !finished.contains(t)).collect();

    let writer = match record_path {
        Some(path) => Some(Mutex::new(BufWriter::new(
            OpenOptions::new().append(true).open(path)?,
        ))),
        None => None,
    };
    let run = |&(n, seed): &(usize, u64)| -> Result<TrialRecord> {
        let record = run_trial(&spec.trial_spec(n), seed)?;
        if let Some(w) = &writer {
            let mut w = w.lock().expect("record writer poisoned");
            serde_json::to_writer(&mut *w, &record)?;
            w.write_all(b"\n")?;
            w.flush()?;
        }
        Ok(record)
    };
    let fresh: Vec<TrialRecord> = if spec.parallel_trials > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.parallel_trials)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| pending.par_iter().map(run).collect::<Result<_>>())?
    } else {
        pending.iter().map(run).collect::<Result<_>>()?
    };

    let mut all = done;
    all.extend(fresh);
    all.sort_by_key(|r| (r.n, r.seed));
    Ok(all)
}

fn tasks(spec: &ExperimentSpec) -> impl Iterator<Item = (usize, u64)> + '_ {
    spec.n_range
        .iter()
        .flat_map(move |&n| (0..spec.n_opt as u64).map(move |i| (n, spec.base_seed + i)))
}

pub const SUMMARY_HEADER: &str = "n,layers,optimizer,n_opt,success_count,success_rate,ci95";

/// Summary table as CSV text, header included.
pub fn summary_csv(summaries: &[SuccessRateSummary]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.n, s.layers, s.optimizer, s.n_opt, s.success_count, s.success_rate, s.ci95
        ));
    }
    out
}
