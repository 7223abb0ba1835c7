//! Optimizers: Differential Evolution, SPSA, L-BFGS with parameter-shift
//! gradients, and the DE → L-BFGS hybrid.

mod de;
mod gradient;
mod halton;
mod hybrid;
mod lbfgs;
mod spsa;

pub use de::{
    de_converged, de_crossover_binomial, de_crossover_exponential, de_minimize, de_mutate, de_step,
    Crossover, DeConfig, DeInit, DeState, DeStrategy, Mutation,
};
pub use gradient::{central_difference, parameter_shift_gradient, Gradient, ParameterShift};
pub use halton::{halton_population, radical_inverse, scrambled_halton_population};
pub use hybrid::hybrid_minimize;
pub use lbfgs::{lbfgs_minimize, LbfgsConfig};
pub use spsa::{spsa_minimize, SpsaConfig};

use serde::{Deserialize, Serialize};

/// A deterministic scalar function of a real vector.
///
/// `evaluate` is only called with slices of length [`Objective::dimension`].
pub trait Objective: Sync {
    fn dimension(&self) -> usize;
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    dimension: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnObjective<F> {
    pub fn new(dimension: usize, f: F) -> Self {
        Self { dimension, f }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Objective for FnObjective<F> {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// `[-π, π]`.
    pub const fn angle() -> Self {
        Self::new(-std::f64::consts::PI, std::f64::consts::PI)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_energy: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// `(iteration, best energy so far)`, when tracing is enabled.
    pub trace: Option<Vec<(usize, f64)>>,
}
