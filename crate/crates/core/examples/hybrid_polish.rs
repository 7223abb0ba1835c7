//! DE with exponential crossover followed by an L-BFGS polish from the DE
//! best member, showing the accuracy gained by the local phase.
//!
//! ```text
//! cargo run --release --example hybrid_polish -- [n] [seed]
//! ```

use vqe_de::model::VqeProblem;
use vqe_de::optimize::{
    de_minimize, lbfgs_minimize, Crossover, DeConfig, LbfgsConfig, ParameterShift,
};

fn main() -> vqe_de::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().copied().unwrap_or(6) as usize;
    let seed = args.get(1).copied().unwrap_or(0);

    let problem = VqeProblem::ising(n, 1)?;
    let de = DeConfig {
        crossover: Crossover::Exponential,
        seed,
        ..DeConfig::default()
    };
    let global = de_minimize(&problem, &de)?;
    println!(
        "DE:      delta {:.3e} after {} generations ({} evaluations)",
        problem.relative_error(global.best_energy),
        global.iterations,
        global.evaluations
    );
    let local = lbfgs_minimize(
        &problem,
        &ParameterShift(&problem),
        &global.best_params,
        &LbfgsConfig::default(),
    )?;
    println!(
        "L-BFGS:  delta {:.3e} after {} more iterations ({} evaluations)",
        problem.relative_error(local.best_energy),
        local.iterations,
        local.evaluations
    );
    println!(
        "final energy {:.15} vs exact {}",
        local.best_energy,
        problem.ground_energy()
    );
    Ok(())
}
