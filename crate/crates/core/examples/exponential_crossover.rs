//! DE with exponential crossover (p = 1) on one Ising chain.
//!
//! ```text
//! cargo run --release --example exponential_crossover -- [n] [seed] [max_generations]
//! ```

use std::time::Instant;

use vqe_de::model::VqeProblem;
use vqe_de::optimize::{de_minimize, Crossover, DeConfig, Objective};

fn main() -> vqe_de::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().copied().unwrap_or(6) as usize;
    let seed = args.get(1).copied().unwrap_or(0);
    let max_iterations = args.get(2).copied().unwrap_or(25_000) as usize;

    let problem = VqeProblem::ising(n, 1)?;
    let config = DeConfig {
        crossover: Crossover::Exponential,
        max_iterations,
        seed,
        record_trace: true,
        ..DeConfig::default()
    };
    let start = Instant::now();
    let result = de_minimize(&problem, &config)?;
    let elapsed = start.elapsed().as_secs_f64();

    println!(
        "n = {n}, parameters = {}, population = {}",
        problem.dimension(),
        config.population_size(problem.dimension())
    );
    for (generation, energy) in result.trace.iter().flatten() {
        if generation.is_power_of_two() || *generation == result.iterations {
            println!(
                "generation {generation:>6}  energy {energy:>12.8}  delta {:.3e}",
                problem.relative_error(*energy)
            );
        }
    }
    println!(
        "final delta {:.3e} after {} generations, {} evaluations, converged = {}, {:.1}s ({:.2} us/eval)",
        problem.relative_error(result.best_energy),
        result.iterations,
        result.evaluations,
        result.converged,
        elapsed,
        1e6 * elapsed / result.evaluations as f64
    );
    Ok(())
}
