//! DE (binomial and exponential crossover, p = 1) against L-BFGS on the same
//! seeds, with the excited level each failed run ends on.
//!
//! ```text
//! cargo run --release --example de_vs_lbfgs -- [n] [trials]
//! ```

use vqe_de::bench::{run_trial, success_rate, OptimizerConfig, TrialSpec, DEFAULT_THRESHOLD};
use vqe_de::model::{exact_spectrum, IsingChain};
use vqe_de::optimize::{Crossover, DeConfig, LbfgsConfig};

fn main() -> vqe_de::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().copied().unwrap_or(8);
    let trials = args.get(1).copied().unwrap_or(10) as u64;
    let levels = exact_spectrum(&IsingChain::new(n))?;

    let de = |crossover| {
        OptimizerConfig::De(DeConfig {
            crossover,
            ..DeConfig::default()
        })
    };
    for optimizer in [
        OptimizerConfig::Lbfgs(LbfgsConfig::default()),
        de(Crossover::Binomial),
        de(Crossover::Exponential),
    ] {
        let spec = TrialSpec::new(n, 1, optimizer.clone());
        let records = (0..trials)
            .map(|seed| run_trial(&spec, seed))
            .collect::<vqe_de::Result<Vec<_>>>()?;
        let s = success_rate(&records, DEFAULT_THRESHOLD, &optimizer.label())?;
        let failures: Vec<String> = records
            .iter()
            .filter(|r| r.delta > DEFAULT_THRESHOLD)
            .map(|r| {
                format!(
                    "{:.4} (level {})",
                    r.final_energy, levels[r.nearest_level].energy
                )
            })
            .collect();
        let evals = records.iter().map(|r| r.evaluations).sum::<usize>() / records.len();
        println!(
            "{:<11} SR {:.2} ± {:.2}, mean evaluations {evals}",
            s.optimizer, s.success_rate, s.ci95
        );
        if !failures.is_empty() {
            println!("            failed runs: {}", failures.join(", "));
        }
    }
    Ok(())
}
