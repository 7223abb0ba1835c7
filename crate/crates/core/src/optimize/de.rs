//! Differential Evolution, best/1 strategy with binomial or exponential
//! crossover.
//!
//! Every generation builds all `P` trial vectors first (consuming the RNG in
//! a fixed order), then evaluates them, then runs greedy selection and only
//! afterwards recomputes the best member. Trial evaluation may therefore run
//! on any number of threads without changing the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::halton::scrambled_halton_population;
use super::{Interval, Objective, OptResult};
use crate::error::{Error, Result};

/// Mutation factor `F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    Constant(f64),
    /// Resampled uniformly from `[lo, hi)` once per generation.
    Dither {
        lo: f64,
        hi: f64,
    },
}

impl Mutation {
    fn sample(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            Mutation::Constant(f) => f,
            Mutation::Dither { lo, hi } if hi > lo => rng.random_range(lo..hi),
            Mutation::Dither { lo, .. } => lo,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Mutation::Constant(f) => (0.0..2.0).contains(&f),
            Mutation::Dither { lo, hi } => 0.0 <= lo && lo <= hi && hi <= 2.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "mutation factor {self:?} must lie in [0, 2)"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossover {
    Binomial,
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeInit {
    /// Scrambled Halton points, scrambling seeded from the run seed.
    Halton,
    /// Independent uniform draws inside the bounds.
    Uniform,
    /// An explicit population, one row per member.
    Given(Vec<Vec<f64>>),
}

/// Mutation strategy. Only `x_best + F(x_r1 - x_r2)` is provided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeStrategy {
    #[default]
    Best1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeConfig {
    /// Population size is `population_multiplier · dimension`.
    pub population_multiplier: usize,
    pub mutation: Mutation,
    pub crossover_rate: f64,
    pub crossover: Crossover,
    pub strategy: DeStrategy,
    pub init: DeInit,
    /// Per-parameter bounds; `None` means `[-π, π]` everywhere.
    pub bounds: Option<Vec<Interval>>,
    pub max_iterations: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub seed: u64,
    /// Threads used to evaluate trial vectors; 1 evaluates inline.
    pub workers: usize,
    pub record_trace: bool,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            population_multiplier: 1,
            mutation: Mutation::Dither { lo: 0.5, hi: 1.0 },
            crossover_rate: 0.7,
            crossover: Crossover::Binomial,
            strategy: DeStrategy::Best1,
            init: DeInit::Halton,
            bounds: None,
            max_iterations: 25_000,
            abs_tol: 0.0,
            rel_tol: 1e-5,
            seed: 0,
            workers: 1,
            record_trace: false,
        }
    }
}

impl DeConfig {
    pub fn population_size(&self, dimension: usize) -> usize {
        self.population_multiplier * dimension
    }

    fn bounds_for(&self, dimension: usize) -> Result<Vec<Interval>> {
        match &self.bounds {
            None => Ok(vec![Interval::angle(); dimension]),
            Some(b) if b.len() == dimension => {
                if b.iter()
                    .all(|iv| iv.lo.is_finite() && iv.hi.is_finite() && iv.lo <= iv.hi)
                {
                    Ok(b.clone())
                } else {
                    Err(Error::Config(
                        "DE bounds must be finite with lo <= hi".into(),
                    ))
                }
            }
            Some(b) => Err(Error::Config(format!(
                "DE bounds have {} entries for {dimension} parameters",
                b.len()
            ))),
        }
    }

    fn validate(&self, dimension: usize) -> Result<()> {
        let p = self.population_size(dimension);
        if p < 4 {
            return Err(Error::Config(format!(
                "DE population {p} is below the minimum of 4"
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Config(format!(
                "crossover rate {} outside [0, 1]",
                self.crossover_rate
            )));
        }
        if self.abs_tol < 0.0 || self.rel_tol < 0.0 {
            return Err(Error::Config("DE tolerances must be non-negative".into()));
        }
        self.mutation.validate()
    }
}

/// Population, energies and RNG of a DE run.
#[derive(Debug, Clone)]
pub struct DeState {
    pub population: Vec<Vec<f64>>,
    pub energies: Vec<f64>,
    pub best_index: usize,
    pub generation: usize,
    pub evaluations: usize,
    pub bounds: Vec<Interval>,
    pub rng: ChaCha8Rng,
}

impl DeState {
    /// Builds and evaluates the initial population described by `config`.
    pub fn initialize(objective: &impl Objective, config: &DeConfig) -> Result<Self> {
        let dimension = objective.dimension();
        config.validate(dimension)?;
        let bounds = config.bounds_for(dimension)?;
        let size = config.population_size(dimension);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let population = match &config.init {
            DeInit::Halton => scrambled_halton_population(dimension, size, &bounds, rng.random()),
            DeInit::Uniform => (0..size)
                .map(|_| {
                    bounds
                        .iter()
                        .map(|iv| iv.lo + iv.width() * rng.random::<f64>())
                        .collect()
                })
                .collect(),
            DeInit::Given(rows) => {
                if rows.len() != size || rows.iter().any(|r| r.len() != dimension) {
                    return Err(Error::Config(format!(
                        "given population must be {size} x {dimension}"
                    )));
                }
                if rows
                    .iter()
                    .any(|r| r.iter().zip(&bounds).any(|(x, iv)| !iv.contains(*x)))
                {
                    return Err(Error::Config("given population violates bounds".into()));
                }
                rows.clone()
            }
        };
        let energies = evaluate_all(objective, &population, config.workers);
        Ok(Self::from_parts(population, energies, bounds, rng))
    }

    /// Assembles a state from an already evaluated population.
    pub fn from_parts(
        population: Vec<Vec<f64>>,
        energies: Vec<f64>,
        bounds: Vec<Interval>,
        rng: ChaCha8Rng,
    ) -> Self {
        assert_eq!(population.len(), energies.len());
        let evaluations = energies.len();
        Self {
            best_index: argmin(&energies),
            population,
            energies,
            generation: 0,
            evaluations,
            bounds,
            rng,
        }
    }

    pub fn size(&self) -> usize {
        self.population.len()
    }

    pub fn best_energy(&self) -> f64 {
        self.energies[self.best_index]
    }

    pub fn best(&self) -> &[f64] {
        &self.population[self.best_index]
    }
}

/// Lowest index of the minimum.
fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best })
}

fn evaluate_all(objective: &impl Objective, xs: &[Vec<f64>], workers: usize) -> Vec<f64> {
    if workers > 1 {
        xs.par_iter().map(|x| objective.evaluate(x)).collect()
    } else {
        xs.iter().map(|x| objective.evaluate(x)).collect()
    }
}

/// `best + F·(r1 − r2)`.
pub fn best1_mutant(best: &[f64], r1: &[f64], r2: &[f64], f: f64) -> Vec<f64> {
    best.iter()
        .zip(r1.iter().zip(r2))
        .map(|(b, (x1, x2))| b + f * (x1 - x2))
        .collect()
}

/// Mutant for `target_index`: `r1 ≠ r2` are drawn from the members other
/// than the best and the target. Out-of-bounds components are resampled
/// uniformly inside their interval.
pub fn de_mutate(state: &mut DeState, target_index: usize, f: f64) -> Vec<f64> {
    let mut candidates: Vec<usize> = (0..state.size())
        .filter(|&i| i != state.best_index && i != target_index)
        .collect();
    let r1 = candidates.swap_remove(state.rng.random_range(0..candidates.len()));
    let r2 = candidates[state.rng.random_range(0..candidates.len())];
    let mut mutant = best1_mutant(
        &state.population[state.best_index],
        &state.population[r1],
        &state.population[r2],
        f,
    );
    for (x, iv) in mutant.iter_mut().zip(&state.bounds) {
        if !iv.contains(*x) {
            *x = iv.lo + iv.width() * state.rng.random::<f64>();
        }
    }
    mutant
}

/// Each component comes from the mutant with probability `c`; one uniformly
/// chosen component always does.
pub fn de_crossover_binomial(
    target: &[f64],
    mutant: &[f64],
    c: f64,
    rng: &mut impl Rng,
) -> Vec<f64> {
    assert_eq!(target.len(), mutant.len());
    let forced = rng.random_range(0..target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(k, (&t, &m))| {
            let take = rng.random::<f64>() < c;
            if take || k == forced {
                m
            } else {
                t
            }
        })
        .collect()
}

/// Copies one contiguous circular run of mutant components starting at a
/// uniform index; the run grows while successive uniform draws are `< c`.
pub fn de_crossover_exponential(
    target: &[f64],
    mutant: &[f64],
    c: f64,
    rng: &mut impl Rng,
) -> Vec<f64> {
    assert_eq!(target.len(), mutant.len());
    let n = target.len();
    let start = rng.random_range(0..n);
    let mut trial = target.to_vec();
    trial[start] = mutant[start];
    for k in 1..n {
        if rng.random::<f64>() >= c {
            break;
        }
        let idx = (start + k) % n;
        trial[idx] = mutant[idx];
    }
    trial
}

/// One generation: mutate, recombine, evaluate, select (strictly better
/// trials replace their target), then update the best member.
pub fn de_step(state: &mut DeState, objective: &impl Objective, config: &DeConfig) {
    let f = config.mutation.sample(&mut state.rng);
    let size = state.size();
    let mut trials = Vec::with_capacity(size);
    for i in 0..size {
        let mutant = de_mutate(state, i, f);
        let trial = match config.crossover {
            Crossover::Binomial => de_crossover_binomial(
                &state.population[i],
                &mutant,
                config.crossover_rate,
                &mut state.rng,
            ),
            Crossover::Exponential => de_crossover_exponential(
                &state.population[i],
                &mutant,
                config.crossover_rate,
                &mut state.rng,
            ),
        };
        trials.push(trial);
    }
    let trial_energies = evaluate_all(objective, &trials, config.workers);
    for (i, (trial, energy)) in trials.into_iter().zip(trial_energies).enumerate() {
        if energy < state.energies[i] {
            state.population[i] = trial;
            state.energies[i] = energy;
        }
    }
    state.best_index = argmin(&state.energies);
    state.generation += 1;
    state.evaluations += size;
}

/// Population standard deviation (divisor `P`) against `t + t'·|mean|`.
pub fn de_converged(energies: &[f64], abs_tol: f64, rel_tol: f64) -> bool {
    assert!(!energies.is_empty());
    let p = energies.len() as f64;
    let mean = energies.iter().sum::<f64>() / p;
    let var = energies.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / p;
    var.sqrt() <= abs_tol + rel_tol * mean.abs()
}

/// Runs DE until the population converges or `max_iterations` generations.
pub fn de_minimize(objective: &impl Objective, config: &DeConfig) -> Result<OptResult> {
    if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| run(objective, config))
    } else {
        run(objective, config)
    }
}

fn run(objective: &impl Objective, config: &DeConfig) -> Result<OptResult> {
    let mut state = DeState::initialize(objective, config)?;
    let mut trace = config.record_trace.then(|| vec![(0, state.best_energy())]);
    let converged = |s: &DeState| de_converged(&s.energies, config.abs_tol, config.rel_tol);
    while !converged(&state) && state.generation < config.max_iterations {
        de_step(&mut state, objective, config);
        if let Some(t) = trace.as_mut() {
            t.push((state.generation, state.best_energy()));
        }
    }
    Ok(OptResult {
        best_params: state.best().to_vec(),
        best_energy: state.best_energy(),
        iterations: state.generation,
        evaluations: state.evaluations,
        converged: converged(&state),
        trace,
    })
}
