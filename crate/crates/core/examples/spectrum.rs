//! Exact spectrum of the open Ising chain next to its closed-form
//! degeneracies, plus the ground energy of a few chain lengths.
//!
//! ```text
//! cargo run --example spectrum -- [n]
//! ```

use vqe_de::model::{exact_spectrum, ground_energy, IsingChain};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn main() -> vqe_de::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("chain length"))
        .unwrap_or(5);
    let chain = IsingChain::new(n);
    println!("{:>8} {:>12} {:>16}", "energy", "degeneracy", "2*C(n-1, k)");
    let levels = exact_spectrum(&chain)?;
    for (k, level) in levels.iter().enumerate() {
        println!(
            "{:>8} {:>12} {:>16}",
            level.energy,
            level.degeneracy,
            2 * binomial(n as u64 - 1, k as u64)
        );
    }
    let total: u64 = levels.iter().map(|l| l.degeneracy).sum();
    println!("total states {total} = 2^{n}");

    for m in [3, 6, 10, 14] {
        println!("E0(n = {m}) = {}", ground_energy(&IsingChain::new(m))?);
    }
    Ok(())
}
