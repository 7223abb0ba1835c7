use std::f64::consts::FRAC_PI_2;

use super::Objective;

/// Gradient oracle used by L-BFGS.
pub trait Gradient: Sync {
    /// Writes ∇f(x) into `out` and returns the number of objective
    /// evaluations spent.
    fn gradient(&self, x: &[f64], out: &mut [f64]) -> usize;
}

/// Closed-form gradients cost no objective evaluations.
impl<F: Fn(&[f64], &mut [f64]) + Sync> Gradient for F {
    fn gradient(&self, x: &[f64], out: &mut [f64]) -> usize {
        self(x, out);
        0
    }
}

/// Parameter-shift gradient of an objective whose parameters each enter
/// through a single Pauli rotation `exp(-iθP/2)`.
pub struct ParameterShift<'a, O: ?Sized>(pub &'a O);

impl<O: Objective + ?Sized> Gradient for ParameterShift<'_, O> {
    fn gradient(&self, x: &[f64], out: &mut [f64]) -> usize {
        let mut shifted = x.to_vec();
        for (k, g) in out.iter_mut().enumerate() {
            shifted[k] = x[k] + FRAC_PI_2;
            let plus = self.0.evaluate(&shifted);
            shifted[k] = x[k] - FRAC_PI_2;
            let minus = self.0.evaluate(&shifted);
            shifted[k] = x[k];
            *g = 0.5 * (plus - minus);
        }
        2 * x.len()
    }
}

/// `[E(θ + π/2·eₖ) − E(θ − π/2·eₖ)] / 2` for every k.
pub fn parameter_shift_gradient(objective: &(impl Objective + ?Sized), params: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; params.len()];
    ParameterShift(objective).gradient(params, &mut out);
    out
}

/// Central finite differences with step `h`.
pub fn central_difference(
    objective: &(impl Objective + ?Sized),
    params: &[f64],
    h: f64,
) -> Vec<f64> {
    let mut x = params.to_vec();
    (0..params.len())
        .map(|k| {
            x[k] = params[k] + h;
            let plus = objective.evaluate(&x);
            x[k] = params[k] - h;
            let minus = objective.evaluate(&x);
            x[k] = params[k];
            (plus - minus) / (2.0 * h)
        })
        .collect()
}
