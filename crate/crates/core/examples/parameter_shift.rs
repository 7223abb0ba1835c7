//! Parameter-shift gradient of the ansatz energy compared with central
//! finite differences at random points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vqe_de::model::VqeProblem;
use vqe_de::optimize::{central_difference, parameter_shift_gradient, Objective};

fn main() -> vqe_de::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, layers) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
        let problem = VqeProblem::ising(n, layers)?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let x: Vec<f64> = (0..problem.dimension())
                .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            let exact = parameter_shift_gradient(&problem, &x);
            let approx = central_difference(&problem, &x, 1e-6);
            let gap = exact
                .iter()
                .zip(&approx)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(gap);
        }
        println!("n = {n}, L = {layers}: max |shift - finite difference| = {worst:.2e}");
    }
    Ok(())
}
