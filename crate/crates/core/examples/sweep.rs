//! A resumable sweep: records stream to a JSON-lines file, a second call
//! only runs the missing seeds, and the summary is printed as CSV.
//!
//! ```text
//! cargo run --release --example sweep -- [records.jsonl]
//! ```

use std::path::PathBuf;

use vqe_de::bench::{read_records, summary_csv, sweep, ExperimentSpec, OptimizerConfig};
use vqe_de::optimize::{Crossover, DeConfig};

fn main() -> vqe_de::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("vqe_de_sweep.jsonl"));

    let de = DeConfig {
        crossover: Crossover::Exponential,
        ..DeConfig::default()
    };
    let mut spec = ExperimentSpec::new(vec![3, 4, 5, 6], 1, OptimizerConfig::De(de));
    spec.n_opt = 5;
    spec.parallel_trials = std::thread::available_parallelism().map_or(1, |p| p.get());

    let first = sweep(&spec, Some(&path))?;
    println!("first pass: {} records in {}", first.len(), path.display());

    // Ask for more seeds; the five already on disk per n are reused.
    spec.n_opt = 8;
    let second = sweep(&spec, Some(&path))?;
    println!(
        "second pass: {} records ({} new)",
        second.len(),
        second.len() - first.len()
    );
    assert_eq!(read_records(&path)?.len(), second.len());

    print!("{}", summary_csv(&spec.summarize(&second)?));
    Ok(())
}
