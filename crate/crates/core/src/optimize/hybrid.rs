use super::{de_minimize, lbfgs_minimize, DeConfig, Gradient, LbfgsConfig, Objective, OptResult};
use crate::error::Result;

/// Differential Evolution followed by an L-BFGS polish of the best member.
///
/// Iterations, evaluations and the trace cover both phases; L-BFGS trace
/// entries are offset by the number of DE generations.
pub fn hybrid_minimize(
    objective: &(impl Objective + ?Sized),
    gradient: &(impl Gradient + ?Sized),
    de_config: &DeConfig,
    lbfgs_config: &LbfgsConfig,
) -> Result<OptResult> {
    let global = de_minimize(&objective, de_config)?;
    let local = lbfgs_minimize(objective, gradient, &global.best_params, lbfgs_config)?;
    let trace = match (global.trace, local.trace) {
        (None, None) => None,
        (g, l) => {
            let mut t = g.unwrap_or_default();
            t.extend(
                l.unwrap_or_default()
                    .into_iter()
                    .map(|(it, e)| (it + global.iterations, e)),
            );
            Some(t)
        }
    };
    Ok(OptResult {
        best_params: local.best_params,
        best_energy: local.best_energy,
        iterations: global.iterations + local.iterations,
        evaluations: global.evaluations + local.evaluations,
        converged: local.converged,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VqeProblem;
    use crate::optimize::{Crossover, ParameterShift};

    #[test]
    fn polish_never_worsens_and_counts_both_phases() {
        let problem = VqeProblem::ising(3, 1).unwrap();
        let de = DeConfig {
            crossover: Crossover::Exponential,
            max_iterations: 200,
            seed: 5,
            record_trace: true,
            ..DeConfig::default()
        };
        let lb = LbfgsConfig {
            record_trace: true,
            ..LbfgsConfig::default()
        };
        let global = de_minimize(&problem, &de).unwrap();
        let r = hybrid_minimize(&problem, &ParameterShift(&problem), &de, &lb).unwrap();
        assert!(r.best_energy <= global.best_energy);
        assert!(r.evaluations > global.evaluations);
        assert!(r.iterations >= global.iterations);
        let trace = r.trace.unwrap();
        assert!(trace.windows(2).all(|w| w[0].0 <= w[1].0));
        assert!(problem.relative_error(r.best_energy) < 1e-8);
    }

    #[test]
    fn converged_start_polishes_quickly() {
        let problem = VqeProblem::ising(3, 1).unwrap();
        let de = DeConfig {
            rel_tol: 0.0,
            abs_tol: 1e-14,
            seed: 2,
            ..DeConfig::default()
        };
        let global = de_minimize(&problem, &de).unwrap();
        let local = lbfgs_minimize(
            &problem,
            &ParameterShift(&problem),
            &global.best_params,
            &LbfgsConfig::default(),
        )
        .unwrap();
        assert!(
            problem.relative_error(global.best_energy) < 1e-12,
            "{}",
            global.best_energy
        );
        assert!(local.iterations <= 2, "{}", local.iterations);
    }
}
