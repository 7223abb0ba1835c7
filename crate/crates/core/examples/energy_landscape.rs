//! Two-parameter slice of the energy landscape with the other parameters
//! fixed at random values. Prints a coarse character map and the grid's
//! local minima; pass an output path to write the full CSV grid.
//!
//! ```text
//! cargo run --release --example energy_landscape -- [n] [seed] [out.csv]
//! ```

use vqe_de::bench::{landscape_scan, GridSpec};
use vqe_de::model::VqeProblem;

fn main() -> vqe_de::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(4, |a| a.parse().expect("chain length"));
    let seed: u64 = args.get(1).map_or(0, |a| a.parse().expect("seed"));

    let problem = VqeProblem::ising(n, 1)?;
    // The Ry angles of the first two qubits in the first block.
    let free = (
        problem.ansatz().ry_index(0, 0),
        problem.ansatz().ry_index(0, 1),
    );
    let scan = landscape_scan(&problem, free, GridSpec::default(), seed)?;

    let (lo, hi) = scan
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    println!(
        "energy range on the slice: [{lo:.4}, {hi:.4}], spectrum [{}, {}]",
        -(n as f64 - 1.0),
        n - 1
    );

    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    for a in (0..scan.resolution()).step_by(5) {
        let row: String = (0..scan.resolution())
            .step_by(3)
            .map(|b| {
                let t = (scan.at(a, b) - lo) / (hi - lo).max(1e-12);
                shades[((t * 9.0).round() as usize).min(9)]
            })
            .collect();
        println!("{row}");
    }

    let minima = scan.local_minima();
    println!("{} grid-local minima:", minima.len());
    for (a, b) in minima {
        println!(
            "  theta_i = {:+.3}, theta_j = {:+.3}, energy = {:.6}",
            scan.axis[a],
            scan.axis[b],
            scan.at(a, b)
        );
    }

    if let Some(path) = args.get(2) {
        std::fs::write(path, scan.to_csv())?;
        println!("wrote {path}");
    }
    Ok(())
}
