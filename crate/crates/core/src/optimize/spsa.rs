//! Simultaneous perturbation stochastic approximation with power-law gains
//! and an automatically calibrated learning rate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Objective, OptResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpsaConfig {
    /// Iteration count; `None` means `150 · dimension`, i.e. `300·(L+1)·n`
    /// for the ansatz.
    pub max_iterations: Option<usize>,
    pub alpha: f64,
    pub gamma: f64,
    /// Stability constant `A`; `None` means `0.1 · max_iterations`.
    pub stability: Option<f64>,
    /// Perturbation size `c`.
    pub perturbation: f64,
    /// Learning rate `a`; `None` calibrates it from `calibration_samples`
    /// gradient probes so the first step moves each parameter by about
    /// `target_first_step`.
    pub learning_rate: Option<f64>,
    pub target_first_step: f64,
    pub calibration_samples: usize,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for SpsaConfig {
    fn default() -> Self {
        Self {
            max_iterations: None,
            alpha: 0.602,
            gamma: 0.101,
            stability: None,
            perturbation: 0.1,
            learning_rate: None,
            target_first_step: 0.1,
            calibration_samples: 25,
            seed: 0,
            record_trace: false,
        }
    }
}

impl SpsaConfig {
    pub fn iterations_for(&self, dimension: usize) -> usize {
        self.max_iterations.unwrap_or(150 * dimension)
    }

    /// `a / (A + k + 1)^α`.
    pub fn step_gain(&self, a: f64, stability: f64, k: usize) -> f64 {
        a / (stability + k as f64 + 1.0).powf(self.alpha)
    }

    /// `c / (k + 1)^γ`.
    pub fn perturbation_gain(&self, k: usize) -> f64 {
        self.perturbation / (k as f64 + 1.0).powf(self.gamma)
    }
}

fn rademacher(rng: &mut impl Rng, dimension: usize) -> Vec<f64> {
    (0..dimension)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

fn perturbed(x: &[f64], delta: &[f64], scale: f64) -> Vec<f64> {
    x.iter()
        .zip(delta)
        .map(|(xi, di)| xi + scale * di)
        .collect()
}

/// Runs SPSA from `x0` for a fixed number of iterations.
///
/// Each iteration costs two evaluations; calibration costs
/// `2 · calibration_samples` more, and the final iterate is evaluated once
/// to report its energy.
pub fn spsa_minimize(
    objective: &(impl Objective + ?Sized),
    x0: &[f64],
    config: &SpsaConfig,
) -> Result<OptResult> {
    let dimension = objective.dimension();
    if x0.len() != dimension {
        return Err(Error::InvalidArgument(format!(
            "x0 has {} entries, objective expects {dimension}",
            x0.len()
        )));
    }
    if x0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("x0 must be finite".into()));
    }
    if config.perturbation <= 0.0 {
        return Err(Error::Config("SPSA perturbation must be positive".into()));
    }
    let iterations = config.iterations_for(dimension);
    let stability = config.stability.unwrap_or(0.1 * iterations as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluations = 0;

    let a = match config.learning_rate {
        Some(a) => a,
        None => {
            let c = config.perturbation;
            let samples = config.calibration_samples.max(1);
            let mut magnitude = 0.0;
            for _ in 0..samples {
                let delta = rademacher(&mut rng, dimension);
                let plus = objective.evaluate(&perturbed(x0, &delta, c));
                let minus = objective.evaluate(&perturbed(x0, &delta, -c));
                evaluations += 2;
                magnitude += (plus - minus).abs() / (2.0 * c);
            }
            magnitude /= samples as f64;
            let scale = (stability + 1.0).powf(config.alpha);
            if magnitude > 0.0 {
                config.target_first_step * scale / magnitude
            } else {
                config.target_first_step * scale
            }
        }
    };

    let mut x = x0.to_vec();
    let mut trace = config.record_trace.then(Vec::new);
    for k in 0..iterations {
        let ck = config.perturbation_gain(k);
        let ak = config.step_gain(a, stability, k);
        let delta = rademacher(&mut rng, dimension);
        let plus = objective.evaluate(&perturbed(&x, &delta, ck));
        let minus = objective.evaluate(&perturbed(&x, &delta, -ck));
        evaluations += 2;
        let diff = (plus - minus) / (2.0 * ck);
        // Δᵢ = ±1, so 1/Δᵢ = Δᵢ.
        x.iter_mut()
            .zip(&delta)
            .for_each(|(xi, di)| *xi -= ak * diff * di);
        if let Some(t) = trace.as_mut() {
            t.push((k + 1, 0.5 * (plus + minus)));
        }
    }

    let best_energy = objective.evaluate(&x);
    evaluations += 1;
    Ok(OptResult {
        best_params: x,
        best_energy,
        iterations,
        evaluations,
        converged: true,
        trace,
    })
}
