//! Oracles shared by the integration tests. They are built from dense
//! matrices and share no code with the library's simulator.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn pauli_matrix(letter: char) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let entries = match letter {
        'I' => [c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)],
        'X' => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
        'Y' => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
        'Z' => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        other => panic!("not a Pauli letter: {other}"),
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Kronecker product of single-qubit Paulis, qubit 0 leftmost.
pub fn dense_pauli_string(letters: &str) -> DMatrix<Complex64> {
    letters
        .chars()
        .map(pauli_matrix)
        .reduce(|acc, m| acc.kronecker(&m))
        .expect("non-empty string")
}

/// −J Σ σ_j σ_{j+1} on an open chain, assembled as a dense matrix.
pub fn dense_ising(n: usize, coupling: f64, axis: char) -> DMatrix<Complex64> {
    let dim = 1 << n;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..n - 1 {
        let letters: String = (0..n)
            .map(|q| if q == j || q == j + 1 { axis } else { 'I' })
            .collect();
        h -= dense_pauli_string(&letters) * Complex64::new(coupling, 0.0);
    }
    h
}

/// Distinct eigenvalues (ascending) with multiplicities, from a Hermitian
/// eigendecomposition.
pub fn dense_levels(h: DMatrix<Complex64>) -> Vec<(f64, usize)> {
    let mut values: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let mut levels: Vec<(f64, usize)> = Vec::new();
    for v in values {
        match levels.last_mut() {
            Some((e, count)) if (v - *e).abs() < 1e-6 => *count += 1,
            _ => levels.push((v, 1)),
        }
    }
    levels
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
