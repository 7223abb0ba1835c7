//! The optimizers work on any `Objective`. Here DE minimizes a shifted
//! Rastrigin function from several seeds (it does not always find the
//! global basin), and L-BFGS polishes the best result with an analytic
//! gradient.

use vqe_de::optimize::{de_minimize, lbfgs_minimize, DeConfig, FnObjective, Interval, LbfgsConfig};

const SHIFT: f64 = 0.5;

fn rastrigin(x: &[f64]) -> f64 {
    use std::f64::consts::TAU;
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| {
                let y = v - SHIFT;
                y * y - 10.0 * (TAU * y).cos()
            })
            .sum::<f64>()
}

fn main() -> vqe_de::Result<()> {
    use std::f64::consts::TAU;
    let dimension = 6;
    let objective = FnObjective::new(dimension, rastrigin);
    let mut best: Option<vqe_de::optimize::OptResult> = None;
    for seed in 0..8 {
        let config = DeConfig {
            population_multiplier: 5,
            bounds: Some(vec![Interval::new(-5.12, 5.12); dimension]),
            seed,
            ..DeConfig::default()
        };
        let run = de_minimize(&objective, &config)?;
        println!(
            "seed {seed}: f = {:.3e} after {} generations",
            run.best_energy, run.iterations
        );
        if best
            .as_ref()
            .is_none_or(|b| run.best_energy < b.best_energy)
        {
            best = Some(run);
        }
    }
    let global = best.expect("at least one seed");
    println!("best DE point: {:.4?}", global.best_params);

    let gradient = |x: &[f64], g: &mut [f64]| {
        for (gi, v) in g.iter_mut().zip(x) {
            let y = v - SHIFT;
            *gi = 2.0 * y + 10.0 * TAU * (TAU * y).sin();
        }
    };
    let local = lbfgs_minimize(
        &objective,
        &gradient,
        &global.best_params,
        &LbfgsConfig::default(),
    )?;
    println!(
        "L-BFGS polish: f = {:.3e} in {} iterations",
        local.best_energy, local.iterations
    );
    Ok(())
}
