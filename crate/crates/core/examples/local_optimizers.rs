//! Success rates of L-BFGS (parameter-shift gradients) and SPSA from random
//! starts as the chain grows.
//!
//! ```text
//! cargo run --release --example local_optimizers -- [trials]
//! ```

use vqe_de::bench::{run_trial, success_rate, OptimizerConfig, TrialSpec, DEFAULT_THRESHOLD};
use vqe_de::optimize::{LbfgsConfig, SpsaConfig};

fn main() -> vqe_de::Result<()> {
    let trials: u64 = std::env::args()
        .nth(1)
        .map_or(30, |a| a.parse().expect("trial count"));
    let optimizers = [
        OptimizerConfig::Lbfgs(LbfgsConfig::default()),
        OptimizerConfig::Spsa(SpsaConfig::default()),
    ];
    println!(
        "{:>3} {:>8} {:>6} {:>8} {:>12}",
        "n", "method", "SR", "ci95", "mean evals"
    );
    for n in [3, 4, 6, 8] {
        for optimizer in &optimizers {
            let spec = TrialSpec::new(n, 1, optimizer.clone());
            let records = (0..trials)
                .map(|seed| run_trial(&spec, seed))
                .collect::<vqe_de::Result<Vec<_>>>()?;
            let summary = success_rate(&records, DEFAULT_THRESHOLD, &optimizer.label())?;
            let mean_evals =
                records.iter().map(|r| r.evaluations as f64).sum::<f64>() / records.len() as f64;
            println!(
                "{n:>3} {:>8} {:>6.2} {:>8.3} {:>12.0}",
                summary.optimizer, summary.success_rate, summary.ci95, mean_evals
            );
        }
    }
    Ok(())
}
