//! Unconstrained L-BFGS: two-loop recursion plus a strong-Wolfe line search
//! (bracketing phase followed by cubic-interpolation zoom).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Gradient, Objective, OptResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LbfgsConfig {
    pub memory: usize,
    /// Sufficient-decrease constant.
    pub c1: f64,
    /// Curvature constant.
    pub c2: f64,
    /// Stop when `max|g| < g_tol`.
    pub g_tol: f64,
    /// Stop when `(f_k − f_{k+1}) / max(|f_k|, |f_{k+1}|, 1) <= f_tol`.
    pub f_tol: f64,
    pub max_iterations: usize,
    /// Objective-evaluation cap; `None` means `1000 · dimension`.
    pub max_evaluations: Option<usize>,
    pub max_line_search_steps: usize,
    pub record_trace: bool,
}

impl Default for LbfgsConfig {
    fn default() -> Self {
        Self {
            memory: 10,
            c1: 1e-4,
            c2: 0.9,
            g_tol: 1e-10,
            f_tol: 1e-15,
            max_iterations: 10_000,
            max_evaluations: None,
            max_line_search_steps: 40,
            record_trace: false,
        }
    }
}

impl LbfgsConfig {
    fn validate(&self) -> Result<()> {
        if self.memory == 0 {
            return Err(Error::Config("L-BFGS memory must be positive".into()));
        }
        if !(0.0 < self.c1 && self.c1 < self.c2 && self.c2 < 1.0) {
            return Err(Error::Config(format!(
                "L-BFGS needs 0 < c1 < c2 < 1 (got c1 = {}, c2 = {})",
                self.c1, self.c2
            )));
        }
        Ok(())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// A point with its value and gradient.
#[derive(Clone)]
struct Point {
    x: Vec<f64>,
    f: f64,
    g: Vec<f64>,
}

/// Objective plus gradient with evaluation accounting.
struct Oracle<'a, O: ?Sized, G: ?Sized> {
    objective: &'a O,
    gradient: &'a G,
    evaluations: usize,
    cap: usize,
    /// Evaluations per value-and-gradient call, learned on the first call.
    call_cost: usize,
}

impl<O: Objective + ?Sized, G: Gradient + ?Sized> Oracle<'_, O, G> {
    fn can_afford(&self) -> bool {
        self.evaluations + self.call_cost <= self.cap
    }

    fn eval(&mut self, x: Vec<f64>) -> Point {
        let f = self.objective.evaluate(&x);
        let mut g = vec![0.0; x.len()];
        let cost = 1 + self.gradient.gradient(&x, &mut g);
        self.call_cost = cost;
        self.evaluations += cost;
        Point { x, f, g }
    }
}

/// Search direction `-H g` from the two-loop recursion.
fn two_loop(g: &[f64], pairs: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, rho) in pairs.iter().rev() {
        let a = rho * dot(s, &q);
        q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some((s, y, _)) = pairs.back() {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|qi| *qi *= gamma);
    }
    for ((s, y, rho), a) in pairs.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter_mut().for_each(|qi| *qi = -*qi);
    q
}

/// Minimiser of the cubic through `(a, fa, da)` and `(b, fb, db)`, kept
/// away from the interval ends; bisection when the cubic is unusable.
fn cubic_step(a: f64, fa: f64, da: f64, b: f64, fb: f64, db: f64) -> f64 {
    let (lo, hi) = (a.min(b), a.max(b));
    let margin = 0.1 * (hi - lo);
    let d1 = da + db - 3.0 * (fa - fb) / (a - b);
    let disc = d1 * d1 - da * db;
    if disc >= 0.0 {
        let d2 = (b - a).signum() * disc.sqrt();
        let t = b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
        if t.is_finite() && t >= lo + margin && t <= hi - margin {
            return t;
        }
    }
    0.5 * (a + b)
}

enum Search {
    Found(Point),
    /// No strong-Wolfe point; carries the best sufficient-decrease point.
    Failed(Option<Point>),
}

struct LineSearch<'c> {
    config: &'c LbfgsConfig,
    f0: f64,
    d0: f64,
}

impl LineSearch<'_> {
    fn armijo(&self, alpha: f64, f: f64) -> bool {
        f <= self.f0 + self.config.c1 * alpha * self.d0
    }

    fn curvature(&self, d: f64) -> bool {
        d.abs() <= -self.config.c2 * self.d0
    }

    fn run<O: Objective + ?Sized, G: Gradient + ?Sized>(
        &self,
        oracle: &mut Oracle<'_, O, G>,
        start: &Point,
        dir: &[f64],
        alpha0: f64,
    ) -> Search {
        let at = |alpha: f64| -> Vec<f64> {
            start
                .x
                .iter()
                .zip(dir)
                .map(|(x, d)| x + alpha * d)
                .collect()
        };
        let (mut a_prev, mut f_prev, mut d_prev) = (0.0, self.f0, self.d0);
        let mut p_prev: Option<Point> = None;
        let mut alpha = alpha0;
        for i in 0..self.config.max_line_search_steps {
            if !oracle.can_afford() {
                return Search::Failed(p_prev);
            }
            let p = oracle.eval(at(alpha));
            let dp = dot(&p.g, dir);
            if !p.f.is_finite() {
                alpha = 0.5 * (a_prev + alpha);
                continue;
            }
            if !self.armijo(alpha, p.f) || (i > 0 && p.f >= f_prev) {
                return self.zoom(
                    oracle,
                    &at,
                    dir,
                    (a_prev, f_prev, d_prev, p_prev),
                    (alpha, p.f, dp),
                );
            }
            if self.curvature(dp) {
                return Search::Found(p);
            }
            if dp >= 0.0 {
                let (f, d) = (p.f, dp);
                return self.zoom(
                    oracle,
                    &at,
                    dir,
                    (alpha, f, d, Some(p)),
                    (a_prev, f_prev, d_prev),
                );
            }
            a_prev = alpha;
            f_prev = p.f;
            d_prev = dp;
            p_prev = Some(p);
            alpha *= 2.0;
        }
        Search::Failed(p_prev)
    }

    /// `lo` satisfies sufficient decrease and has the lowest value seen;
    /// the interval between `lo` and `hi` contains a strong-Wolfe point.
    #[allow(clippy::type_complexity)]
    fn zoom<O: Objective + ?Sized, G: Gradient + ?Sized>(
        &self,
        oracle: &mut Oracle<'_, O, G>,
        at: &impl Fn(f64) -> Vec<f64>,
        dir: &[f64],
        lo: (f64, f64, f64, Option<Point>),
        hi: (f64, f64, f64),
    ) -> Search {
        let (mut a_lo, mut f_lo, mut d_lo, mut p_lo) = lo;
        let (mut a_hi, mut f_hi, mut d_hi) = hi;
        for _ in 0..self.config.max_line_search_steps {
            if (a_hi - a_lo).abs() <= 1e-16 * a_lo.abs().max(1.0) || !oracle.can_afford() {
                break;
            }
            let alpha = cubic_step(a_lo, f_lo, d_lo, a_hi, f_hi, d_hi);
            let p = oracle.eval(at(alpha));
            let dp = dot(&p.g, dir);
            if !p.f.is_finite() || !self.armijo(alpha, p.f) || p.f >= f_lo {
                a_hi = alpha;
                f_hi = p.f;
                d_hi = dp;
            } else {
                if self.curvature(dp) {
                    return Search::Found(p);
                }
                if dp * (a_hi - a_lo) >= 0.0 {
                    a_hi = a_lo;
                    f_hi = f_lo;
                    d_hi = d_lo;
                }
                a_lo = alpha;
                f_lo = p.f;
                d_lo = dp;
                p_lo = Some(p);
            }
        }
        Search::Failed(p_lo)
    }
}

/// Minimises `objective` from `x0` using `gradient`.
///
/// Evaluations count every objective call, including those spent inside
/// the gradient oracle. A failed line search ends the run with
/// `converged = false` and the best point found so far.
pub fn lbfgs_minimize(
    objective: &(impl Objective + ?Sized),
    gradient: &(impl Gradient + ?Sized),
    x0: &[f64],
    config: &LbfgsConfig,
) -> Result<OptResult> {
    config.validate()?;
    if x0.len() != objective.dimension() {
        return Err(Error::InvalidArgument(format!(
            "x0 has {} entries, objective expects {}",
            x0.len(),
            objective.dimension()
        )));
    }
    if x0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("x0 must be finite".into()));
    }
    let mut oracle = Oracle {
        objective,
        gradient,
        evaluations: 0,
        cap: config
            .max_evaluations
            .unwrap_or(1000 * objective.dimension()),
        call_cost: 1,
    };
    let mut current = oracle.eval(x0.to_vec());
    let mut trace = config.record_trace.then(|| vec![(0, current.f)]);
    let mut pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(config.memory);
    let mut iterations = 0;
    let mut converged = max_abs(&current.g) < config.g_tol;

    while !converged && iterations < config.max_iterations {
        let mut dir = two_loop(&current.g, &pairs);
        let mut slope = dot(&current.g, &dir);
        if slope >= 0.0 || !slope.is_finite() {
            pairs.clear();
            dir = current.g.iter().map(|g| -g).collect();
            slope = dot(&current.g, &dir);
        }
        let alpha0 = if pairs.is_empty() {
            (1.0 / max_abs(&current.g)).min(1.0)
        } else {
            1.0
        };
        let search = LineSearch {
            config,
            f0: current.f,
            d0: slope,
        };
        let next = match search.run(&mut oracle, &current, &dir, alpha0) {
            Search::Found(p) => p,
            Search::Failed(Some(p)) if p.f < current.f => p,
            Search::Failed(_) => {
                if pairs.is_empty() || !oracle.can_afford() {
                    break;
                }
                // Retry along steepest descent with fresh memory.
                pairs.clear();
                continue;
            }
        };

        let s: Vec<f64> = next.x.iter().zip(&current.x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = next.g.iter().zip(&current.g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if pairs.len() == config.memory {
                pairs.pop_front();
            }
            pairs.push_back((s, y, 1.0 / sy));
        }

        let decrease = (current.f - next.f) / current.f.abs().max(next.f.abs()).max(1.0);
        current = next;
        iterations += 1;
        if let Some(t) = trace.as_mut() {
            t.push((iterations, current.f));
        }
        if max_abs(&current.g) < config.g_tol || decrease <= config.f_tol {
            converged = true;
        } else if !oracle.can_afford() {
            break;
        }
    }

    Ok(OptResult {
        best_params: current.x,
        best_energy: current.f,
        iterations,
        evaluations: oracle.evaluations,
        converged,
        trace,
    })
}
