use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use vqe_de::model::{exact_spectrum, IsingChain, VqeProblem};
use vqe_de::optimize::{de_crossover_binomial, de_crossover_exponential, Objective};
use vqe_de::state::{
    apply_gate, apply_pauli_string, inner_product, Gate, PauliString, StateVector,
};

fn state_strategy(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
        "non-zero vector",
        |pairs| {
            let mut amps: Vec<Complex64> = pairs
                .into_iter()
                .map(|(a, b)| Complex64::new(a, b))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                amps.iter_mut().for_each(|a| *a /= norm);
                StateVector::from_amplitudes(amps).unwrap()
            })
        },
    )
}

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        (0..n, -4.0 * PI..4.0 * PI).prop_map(|(target, angle)| Gate::Ry { target, angle }),
        (0..n, -4.0 * PI..4.0 * PI).prop_map(|(target, angle)| Gate::Rz { target, angle }),
        (0..n, 0..n)
            .prop_filter("distinct qubits", |(a, b)| a != b)
            .prop_map(|(control, target)| Gate::Cz { control, target }),
    ]
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n).prop_map(|letters| {
        PauliString::parse(1.0, &letters.into_iter().collect::<String>()).unwrap()
    })
}

fn close(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .all(|(x, y)| (x - y).norm() < tol)
}

proptest! {
    #[test]
    fn gates_preserve_norm(
        (psi, gates) in (2usize..=8).prop_flat_map(|n| (state_strategy(n), prop::collection::vec(gate_strategy(n), 100)))
    ) {
        let mut s = psi;
        for g in &gates {
            s = apply_gate(&s, g).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gate_then_inverse_is_identity(psi in state_strategy(3), gate in gate_strategy(3)) {
        let back = apply_gate(&apply_gate(&psi, &gate).unwrap(), &gate.inverse()).unwrap();
        prop_assert!(close(&back, &psi, 1e-12));
    }

    #[test]
    fn gates_preserve_inner_products(a in state_strategy(3), b in state_strategy(3), gate in gate_strategy(3)) {
        let before = inner_product(&a, &b).unwrap();
        let after = inner_product(&apply_gate(&a, &gate).unwrap(), &apply_gate(&b, &gate).unwrap()).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn pauli_strings_are_involutions(psi in state_strategy(4), p in pauli_strategy(4)) {
        let twice = apply_pauli_string(&apply_pauli_string(&psi, &p).unwrap(), &p).unwrap();
        prop_assert!(close(&twice, &psi, 1e-12));
    }

    #[test]
    fn ansatz_energy_within_spectrum(
        n in 2usize..7,
        layers in 1usize..3,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let problem = VqeProblem::ising(n, layers).unwrap();
        let levels = exact_spectrum(&IsingChain::new(n)).unwrap();
        let (lo, hi) = (levels[0].energy, levels[levels.len() - 1].energy);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..problem.dimension()).map(|_| rng.random_range(-PI..PI)).collect();
        let e = problem.evaluate(&x);
        prop_assert!(e >= lo - 1e-9 && e <= hi + 1e-9);
    }

    #[test]
    fn crossovers_keep_a_mutant_component(dim in 1usize..12, rate in 0.0f64..=1.0, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let target = vec![0.0; dim];
        let mutant = vec![1.0; dim];
        let bin = de_crossover_binomial(&target, &mutant, rate, &mut rng);
        let exp = de_crossover_exponential(&target, &mutant, rate, &mut rng);
        prop_assert!(bin.contains(&1.0));
        prop_assert!(exp.contains(&1.0));
        // Exponential crossover replaces one contiguous (cyclic) segment.
        let boundaries = (0..dim).filter(|&k| exp[k] != exp[(k + 1) % dim]).count();
        prop_assert!(boundaries <= 2);
    }
}
