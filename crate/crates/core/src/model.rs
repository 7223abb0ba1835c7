//! The zero-field Ising chain, its closed-form spectrum, and the
//! hardware-efficient Ry/Rz + CZ-ladder ansatz.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::optimize::Objective;
use crate::state::{
    apply_2x2, expectation, Gate, Pauli, PauliMasks, PauliString, StateVector, DEFAULT_MAX_QUBITS,
    IMAG_ERROR_TOL,
};

/// Open-boundary Ising chain `H = -J Σ σⱼσⱼ₊₁` with no external field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingChain {
    pub n_sites: usize,
    pub coupling: f64,
    pub pauli_axis: Pauli,
}

impl IsingChain {
    /// Chain with `J = 1` along Y.
    pub fn new(n_sites: usize) -> Self {
        Self {
            n_sites,
            coupling: 1.0,
            pauli_axis: Pauli::Y,
        }
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_axis(mut self, axis: Pauli) -> Self {
        self.pauli_axis = axis;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(invalid(format!("n must be ≥ 2 (got {})", self.n_sites)));
        }
        if self.pauli_axis == Pauli::I {
            return Err(invalid("Ising axis must be X, Y or Z"));
        }
        if !self.coupling.is_finite() {
            return Err(invalid("coupling must be finite"));
        }
        Ok(())
    }
}

/// One bond term `-J σⱼσⱼ₊₁` per nearest-neighbour pair.
pub fn build_hamiltonian(chain: &IsingChain) -> Result<Vec<PauliString>> {
    chain.validate()?;
    let n = chain.n_sites;
    (0..n - 1)
        .map(|j| {
            let mut letters = vec![Pauli::I; n];
            letters[j] = chain.pauli_axis;
            letters[j + 1] = chain.pauli_axis;
            PauliString::new(-chain.coupling, letters)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub energy: f64,
    pub degeneracy: u64,
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form spectrum, ascending in energy.
///
/// The bond terms commute and each has eigenvalues ±|J|; every assignment of
/// bond signs is realised by exactly two spin configurations (a global flip),
/// so level `k` (k unsatisfied bonds) sits at `|J|(2k - (n-1))` with
/// degeneracy `2·C(n-1, k)`.
pub fn exact_spectrum(chain: &IsingChain) -> Result<Vec<SpectrumLevel>> {
    chain.validate()?;
    let bonds = (chain.n_sites - 1) as u64;
    let j = chain.coupling.abs();
    if j == 0.0 {
        return Ok(vec![SpectrumLevel {
            energy: 0.0,
            degeneracy: 1u64 << chain.n_sites,
        }]);
    }
    Ok((0..=bonds)
        .map(|k| SpectrumLevel {
            energy: j * (2.0 * k as f64 - bonds as f64),
            degeneracy: 2 * binomial(bonds, k),
        })
        .collect())
}

/// `-|J|(n - 1)`.
pub fn ground_energy(chain: &IsingChain) -> Result<f64> {
    chain.validate()?;
    Ok(-chain.coupling.abs() * (chain.n_sites - 1) as f64)
}

/// Hardware-efficient ansatz: an optional fixed Ry(π/4) layer, then
/// `n_layers` blocks of [Ry, Rz on every qubit, CZ ladder], then a final
/// Ry, Rz layer.
///
/// Parameters are flattened block by block; inside a block the Ry angles for
/// qubits `0..n` come first, then the Rz angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ansatz {
    pub n_qubits: usize,
    pub n_layers: usize,
    pub include_initial_ry: bool,
}

impl Ansatz {
    pub fn new(n_qubits: usize, n_layers: usize) -> Self {
        Self {
            n_qubits,
            n_layers,
            include_initial_ry: true,
        }
    }

    pub fn without_initial_ry(mut self) -> Self {
        self.include_initial_ry = false;
        self
    }

    /// `2·n·(L + 1)`.
    pub fn parameter_count(&self) -> usize {
        2 * self.n_qubits * (self.n_layers + 1)
    }

    fn validate(&self, params: &[f64]) -> Result<()> {
        if self.n_qubits < 1 || self.n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::Capacity {
                n_qubits: self.n_qubits,
                max_qubits: DEFAULT_MAX_QUBITS,
            });
        }
        if params.len() != self.parameter_count() {
            return Err(invalid(format!(
                "expected {} parameters, got {}",
                self.parameter_count(),
                params.len()
            )));
        }
        Ok(())
    }

    /// Index of the Ry angle of `qubit` in rotation block `block`.
    pub fn ry_index(&self, block: usize, qubit: usize) -> usize {
        block * 2 * self.n_qubits + qubit
    }

    /// Index of the Rz angle of `qubit` in rotation block `block`.
    pub fn rz_index(&self, block: usize, qubit: usize) -> usize {
        block * 2 * self.n_qubits + self.n_qubits + qubit
    }

    /// The full gate sequence, in application order.
    pub fn gates(&self, params: &[f64]) -> Result<Vec<Gate>> {
        self.validate(params)?;
        let n = self.n_qubits;
        let mut gates = Vec::new();
        if self.include_initial_ry {
            gates.extend((0..n).map(|q| Gate::Ry {
                target: q,
                angle: FRAC_PI_4,
            }));
        }
        for block in 0..=self.n_layers {
            gates.extend((0..n).map(|q| Gate::Ry {
                target: q,
                angle: params[self.ry_index(block, q)],
            }));
            gates.extend((0..n).map(|q| Gate::Rz {
                target: q,
                angle: params[self.rz_index(block, q)],
            }));
            if block < self.n_layers {
                gates.extend((0..n.saturating_sub(1)).map(|q| Gate::Cz {
                    control: q,
                    target: q + 1,
                }));
            }
        }
        Ok(gates)
    }

    /// `|ψ(θ)>`.
    ///
    /// The first rotation block acts on `|0…0>` and yields a product state,
    /// which is built directly; later blocks use one fused `Rz·Ry` update
    /// per qubit and each CZ ladder is a single sign pass.
    pub fn prepare_state(&self, params: &[f64]) -> Result<StateVector> {
        self.validate(params)?;
        let mut amps = Vec::with_capacity(1 << self.n_qubits);
        self.fill_window(&self.rotations(params), 0, self.n_qubits, &mut amps);
        StateVector::from_amplitudes(amps)
    }

    fn rotations(&self, params: &[f64]) -> Rotations {
        let n = self.n_qubits;
        let offset = if self.include_initial_ry {
            FRAC_PI_4
        } else {
            0.0
        };
        let first = (0..n)
            .map(|q| {
                let (s, c) = ((params[self.ry_index(0, q)] + offset) / 2.0).sin_cos();
                let phase = Complex64::from_polar(1.0, params[self.rz_index(0, q)] / 2.0);
                [phase.conj() * c, phase * s]
            })
            .collect();
        let later = (1..=self.n_layers)
            .flat_map(|block| (0..n).map(move |q| (block, q)))
            .map(|(block, q)| {
                let (s, c) = (params[self.ry_index(block, q)] / 2.0).sin_cos();
                let phase = Complex64::from_polar(1.0, params[self.rz_index(block, q)] / 2.0);
                [
                    [phase.conj() * c, -phase.conj() * s],
                    [phase * s, phase * c],
                ]
            })
            .collect();
        Rotations { first, later }
    }

    /// Simulates only the sites `lo..hi` (as local qubits `0..hi-lo`) into
    /// `amps`, dropping CZ gates that cross the window edge.
    fn fill_window(&self, rot: &Rotations, lo: usize, hi: usize, amps: &mut Vec<Complex64>) {
        let width = hi - lo;
        amps.clear();
        amps.push(Complex64::new(1.0, 0.0));
        for v in &rot.first[lo..hi] {
            let len = amps.len();
            amps.resize(2 * len, Complex64::new(0.0, 0.0));
            for i in (0..len).rev() {
                let a = amps[i];
                amps[2 * i] = a * v[0];
                amps[2 * i + 1] = a * v[1];
            }
        }
        for block in 1..=self.n_layers {
            cz_ladder(amps);
            let row = &rot.later[(block - 1) * self.n_qubits..block * self.n_qubits];
            for (local, m) in row[lo..hi].iter().enumerate() {
                apply_2x2(amps, width, local, *m);
            }
        }
    }
}

/// Single-qubit factors of one parameter vector.
struct Rotations {
    /// State of each qubit after the first rotation block.
    first: Vec<[Complex64; 2]>,
    /// Fused `Rz·Ry` of blocks `1..=L`, block-major.
    later: Vec<[[Complex64; 2]; 2]>,
}

/// CZ on every nearest-neighbour pair: the sign is the parity of the number
/// of adjacent set bits.
fn cz_ladder(amps: &mut [Complex64]) {
    for (x, a) in amps.iter_mut().enumerate() {
        if (x & (x >> 1)).count_ones() & 1 == 1 {
            *a = -*a;
        }
    }
}

/// `<ψ(θ)|H|ψ(θ)>`.
pub fn energy(ansatz: &Ansatz, chain: &IsingChain, params: &[f64]) -> Result<f64> {
    if ansatz.n_qubits != chain.n_sites {
        return Err(invalid(format!(
            "ansatz has {} qubits but chain has {} sites",
            ansatz.n_qubits, chain.n_sites
        )));
    }
    let state = ansatz.prepare_state(params)?;
    expectation(&state, &build_hamiltonian(chain)?)
}

/// How [`VqeProblem`] evaluates the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Light cone when its windows are smaller than the full register.
    #[default]
    Auto,
    /// One full `2^n` statevector per evaluation.
    Statevector,
    /// One small statevector per bond, restricted to the sites that can
    /// influence it.
    ///
    /// Rotations are local and a CZ ladder only spreads `Z` factors onto
    /// the neighbours of an operator, so a bond `(j, j+1)` observed through
    /// `L` ladders depends on sites `j-L ..= j+1+L` alone.
    LightCone,
}

/// A bond term measured on its causal window.
#[derive(Debug, Clone)]
struct Cone {
    lo: usize,
    hi: usize,
    coefficient: f64,
    masks: PauliMasks,
}

/// Pre-compiled VQE energy, the objective handed to every optimizer.
#[derive(Debug, Clone)]
pub struct VqeProblem {
    ansatz: Ansatz,
    chain: IsingChain,
    terms: Vec<(f64, PauliMasks)>,
    cones: Vec<Cone>,
    use_cones: bool,
    ground_energy: f64,
}

impl VqeProblem {
    pub fn new(ansatz: Ansatz, chain: IsingChain) -> Result<Self> {
        Self::with_backend(ansatz, chain, Backend::Auto)
    }

    pub fn with_backend(ansatz: Ansatz, chain: IsingChain, backend: Backend) -> Result<Self> {
        if ansatz.n_qubits != chain.n_sites {
            return Err(invalid(format!(
                "ansatz has {} qubits but chain has {} sites",
                ansatz.n_qubits, chain.n_sites
            )));
        }
        ansatz.validate(&vec![0.0; ansatz.parameter_count()])?;
        let hamiltonian = build_hamiltonian(&chain)?;
        let n = chain.n_sites;
        let reach = ansatz.n_layers;
        let cones: Vec<Cone> = hamiltonian
            .iter()
            .enumerate()
            .map(|(j, term)| {
                let lo = j.saturating_sub(reach);
                let hi = (j + 2 + reach).min(n);
                let local = PauliString::new(term.coefficient(), term.letters()[lo..hi].to_vec())?;
                Ok(Cone {
                    lo,
                    hi,
                    coefficient: term.coefficient(),
                    masks: local.masks(),
                })
            })
            .collect::<Result<_>>()?;
        let use_cones = match backend {
            Backend::Statevector => false,
            Backend::LightCone => true,
            Backend::Auto => cones.iter().map(|c| 1usize << (c.hi - c.lo)).sum::<usize>() < 1 << n,
        };
        Ok(Self {
            ansatz,
            chain,
            terms: hamiltonian
                .iter()
                .map(|t| (t.coefficient(), t.masks()))
                .collect(),
            cones,
            use_cones,
            ground_energy: ground_energy(&chain)?,
        })
    }

    /// Ising chain of `n` sites (J = 1, Y axis) with an `n_layers` ansatz.
    pub fn ising(n: usize, n_layers: usize) -> Result<Self> {
        Self::new(Ansatz::new(n, n_layers), IsingChain::new(n))
    }

    pub fn ansatz(&self) -> &Ansatz {
        &self.ansatz
    }

    pub fn chain(&self) -> &IsingChain {
        &self.chain
    }

    /// The backend actually in use.
    pub fn backend(&self) -> Backend {
        if self.use_cones {
            Backend::LightCone
        } else {
            Backend::Statevector
        }
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// δ = 1 − |E/E₀|.
    pub fn relative_error(&self, energy: f64) -> f64 {
        1.0 - (energy / self.ground_energy).abs()
    }

    pub fn energy(&self, params: &[f64]) -> Result<f64> {
        self.ansatz.validate(params)?;
        let rot = self.ansatz.rotations(params);
        let mut amps = Vec::new();
        let mut total = Complex64::new(0.0, 0.0);
        if self.use_cones {
            for cone in &self.cones {
                self.ansatz.fill_window(&rot, cone.lo, cone.hi, &mut amps);
                total += cone.masks.expectation(&amps) * cone.coefficient;
            }
        } else {
            self.ansatz
                .fill_window(&rot, 0, self.chain.n_sites, &mut amps);
            for (coefficient, masks) in &self.terms {
                total += masks.expectation(&amps) * *coefficient;
            }
        }
        if total.im.abs() > IMAG_ERROR_TOL {
            return Err(Error::NumericalConsistency { imag: total.im });
        }
        Ok(total.re)
    }
}

impl Objective for VqeProblem {
    fn dimension(&self) -> usize {
        self.ansatz.parameter_count()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.energy(x).expect("VQE energy evaluation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::tests::dense_pauli;
    use crate::state::{apply_gate, inner_product};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn random_params(count: usize, rng: &mut impl Rng) -> Vec<f64> {
        (0..count).map(|_| rng.random_range(-PI..PI)).collect()
    }

    fn letters(term: &PauliString) -> String {
        term.letters().iter().map(|p| p.as_char()).collect()
    }

    type Matrix = Vec<Vec<Complex64>>;

    fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
        let d = a.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        for i in 0..d {
            for k in 0..d {
                if a[i][k] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    /// Dense 2^n x 2^n matrix of one gate, built from Kronecker products.
    fn dense_gate(n: usize, gate: &Gate) -> Matrix {
        let id = |d: usize| -> Matrix {
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| Complex64::new((i == j) as u8 as f64, 0.0))
                        .collect()
                })
                .collect()
        };
        let kron = |a: &Matrix, b: &Matrix| -> Matrix {
            let (da, db) = (a.len(), b.len());
            let mut out = vec![vec![Complex64::new(0.0, 0.0); da * db]; da * db];
            for i in 0..da {
                for j in 0..da {
                    for k in 0..db {
                        for l in 0..db {
                            out[i * db + k][j * db + l] = a[i][j] * b[k][l];
                        }
                    }
                }
            }
            out
        };
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match *gate {
            Gate::Ry { target, angle } | Gate::Rz { target, angle } => {
                let (s, co) = (angle / 2.0).sin_cos();
                let m: Matrix = if matches!(gate, Gate::Ry { .. }) {
                    vec![vec![c(co, 0.0), c(-s, 0.0)], vec![c(s, 0.0), c(co, 0.0)]]
                } else {
                    vec![vec![c(co, -s), c(0.0, 0.0)], vec![c(0.0, 0.0), c(co, s)]]
                };
                let left = id(1 << target);
                let right = id(1 << (n - 1 - target));
                kron(&kron(&left, &m), &right)
            }
            Gate::Cz { control, target } => {
                let mut m = id(1 << n);
                for (x, row) in m.iter_mut().enumerate() {
                    let bits = (x >> (n - 1 - control)) & (x >> (n - 1 - target)) & 1;
                    if bits == 1 {
                        row[x] = c(-1.0, 0.0);
                    }
                }
                m
            }
        }
    }

    fn dense_hamiltonian(chain: &IsingChain) -> Matrix {
        let d = 1usize << chain.n_sites;
        let mut h = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        for term in build_hamiltonian(chain).unwrap() {
            let m = dense_pauli(&term);
            for i in 0..d {
                for j in 0..d {
                    h[i][j] += m[i][j];
                }
            }
        }
        h
    }

    /// Energy by multiplying explicit gate matrices onto |0...0>.
    fn dense_circuit_energy(ansatz: &Ansatz, chain: &IsingChain, params: &[f64]) -> f64 {
        let n = ansatz.n_qubits;
        let d = 1usize << n;
        let mut u: Matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| Complex64::new((i == j) as u8 as f64, 0.0))
                    .collect()
            })
            .collect();
        for gate in ansatz.gates(params).unwrap() {
            u = matmul(&dense_gate(n, &gate), &u);
        }
        let psi: Vec<Complex64> = (0..d).map(|i| u[i][0]).collect();
        let h = dense_hamiltonian(chain);
        let mut e = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                e += psi[i].conj() * h[i][j] * psi[j];
            }
        }
        assert!(e.im.abs() < 1e-12);
        e.re
    }

    #[test]
    fn hamiltonian_layout() {
        let h = build_hamiltonian(&IsingChain::new(2)).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(letters(&h[0]), "YY");
        assert_eq!(h[0].coefficient(), -1.0);

        let h = build_hamiltonian(&IsingChain::new(4)).unwrap();
        let ls: Vec<_> = h.iter().map(letters).collect();
        assert_eq!(ls, ["YYII", "IYYI", "IIYY"]);
        assert!(h.iter().all(|t| t.coefficient() == -1.0));

        let h = build_hamiltonian(&IsingChain::new(3).with_coupling(2.0)).unwrap();
        assert!(h.iter().all(|t| t.coefficient() == -2.0));

        assert!(build_hamiltonian(&IsingChain::new(1)).is_err());
    }

    #[test]
    fn spectrum_five_sites() {
        let levels = exact_spectrum(&IsingChain::new(5)).unwrap();
        let pairs: Vec<_> = levels.iter().map(|l| (l.energy, l.degeneracy)).collect();
        assert_eq!(pairs, [(-4.0, 2), (-2.0, 8), (0.0, 12), (2.0, 8), (4.0, 2)]);
        assert_eq!(levels.iter().map(|l| l.degeneracy).sum::<u64>(), 32);
    }

    #[test]
    fn spectrum_n_minus_one_pattern() {
        for n in 2..=20usize {
            let levels = exact_spectrum(&IsingChain::new(n)).unwrap();
            assert_eq!(levels.len(), n);
            assert_eq!(levels[0].energy, -((n - 1) as f64));
            assert_eq!(levels[0].degeneracy, 2);
            assert_eq!(levels[1].degeneracy, 2 * (n as u64 - 1));
            if n >= 3 {
                assert_eq!(levels[2].degeneracy, (n as u64 - 1) * (n as u64 - 2));
            }
            assert_eq!(levels.iter().map(|l| l.degeneracy).sum::<u64>(), 1 << n);
        }
    }

    #[test]
    fn ground_energies() {
        assert_eq!(ground_energy(&IsingChain::new(3)).unwrap(), -2.0);
        assert_eq!(ground_energy(&IsingChain::new(14)).unwrap(), -13.0);
        assert_eq!(ground_energy(&IsingChain::new(2)).unwrap(), -1.0);
        assert!(ground_energy(&IsingChain::new(0)).is_err());
    }

    #[test]
    fn parameter_counts() {
        assert_eq!(Ansatz::new(3, 1).parameter_count(), 12);
        assert_eq!(Ansatz::new(14, 1).parameter_count(), 56);
        assert_eq!(Ansatz::new(4, 0).parameter_count(), 8);
    }

    #[test]
    fn zero_params_without_initial_layer_is_all_zero() {
        for layers in 0..3 {
            let a = Ansatz::new(3, layers).without_initial_ry();
            let s = a.prepare_state(&vec![0.0; a.parameter_count()]).unwrap();
            assert!((s.amplitudes()[0] - 1.0).norm() < 1e-14);
            assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ry_composes_with_initial_layer() {
        let a = Ansatz::new(2, 0);
        let mut p = vec![0.0; a.parameter_count()];
        for q in 0..2 {
            p[a.ry_index(0, q)] = FRAC_PI_2 - FRAC_PI_4;
        }
        let s = a.prepare_state(&p).unwrap();
        for amp in s.amplitudes() {
            assert!((amp - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn fused_path_matches_gate_by_gate() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, layers, init) in [(1, 0, true), (2, 1, false), (3, 2, true), (5, 3, true)] {
            let mut a = Ansatz::new(n, layers);
            a.include_initial_ry = init;
            let p = random_params(a.parameter_count(), &mut rng);
            let fast = a.prepare_state(&p).unwrap();
            let mut slow = crate::state::zero_state(n).unwrap();
            for g in a.gates(&p).unwrap() {
                slow = apply_gate(&slow, &g).unwrap();
            }
            let overlap = inner_product(&fast, &slow).unwrap();
            assert!((overlap - 1.0).norm() < 1e-12, "n={n} L={layers}");
        }
    }

    #[test]
    fn energy_matches_dense_circuit() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Ansatz::new(3, 1);
        let chain = IsingChain::new(3);
        let problem = VqeProblem::new(a, chain).unwrap();
        for _ in 0..5 {
            let p = random_params(a.parameter_count(), &mut rng);
            let dense = dense_circuit_energy(&a, &chain, &p);
            assert!((energy(&a, &chain, &p).unwrap() - dense).abs() < 1e-10);
            assert!((problem.energy(&p).unwrap() - dense).abs() < 1e-10);
        }
    }

    #[test]
    fn i_product_state_reaches_ground_energy() {
        // Ry(π/2) then Rz(π/2) maps |0> to e^{-iπ/4}|i>.
        for n in 2..=6 {
            let a = Ansatz::new(n, 0).without_initial_ry();
            let mut p = vec![0.0; a.parameter_count()];
            for q in 0..n {
                p[a.ry_index(0, q)] = FRAC_PI_2;
                p[a.rz_index(0, q)] = FRAC_PI_2;
            }
            let e = energy(&a, &IsingChain::new(n), &p).unwrap();
            assert!((e + (n - 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn light_cone_matches_full_statevector() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (n, layers) in [(2, 0), (3, 1), (5, 0), (6, 1), (7, 2), (9, 1), (10, 3)] {
            for axis in [Pauli::X, Pauli::Y, Pauli::Z] {
                let a = Ansatz::new(n, layers);
                let chain = IsingChain::new(n).with_axis(axis).with_coupling(1.3);
                let full = VqeProblem::with_backend(a, chain, Backend::Statevector).unwrap();
                let cone = VqeProblem::with_backend(a, chain, Backend::LightCone).unwrap();
                for _ in 0..10 {
                    let p = random_params(a.parameter_count(), &mut rng);
                    let (e1, e2) = (full.evaluate(&p), cone.evaluate(&p));
                    assert!((e1 - e2).abs() < 1e-12, "n={n} L={layers}: {e1} vs {e2}");
                }
            }
        }
    }

    #[test]
    fn auto_backend_choice() {
        assert_eq!(
            VqeProblem::ising(3, 1).unwrap().backend(),
            Backend::Statevector
        );
        assert_eq!(
            VqeProblem::ising(10, 1).unwrap().backend(),
            Backend::LightCone
        );
        assert_eq!(
            VqeProblem::ising(6, 4).unwrap().backend(),
            Backend::Statevector
        );
    }

    #[test]
    fn energy_bounds_and_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let problem = VqeProblem::ising(4, 1).unwrap();
        for _ in 0..200 {
            let p = random_params(problem.dimension(), &mut rng);
            let e = problem.energy(&p).unwrap();
            assert!((-3.0 - 1e-12..=3.0 + 1e-12).contains(&e));
        }
        assert!(problem.energy(&[0.0; 3]).is_err());
        assert!(energy(&Ansatz::new(3, 1), &IsingChain::new(4), &[0.0; 12]).is_err());
        assert!(VqeProblem::new(Ansatz::new(3, 1), IsingChain::new(4)).is_err());
    }

    #[test]
    fn variational_bound_on_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let problem = VqeProblem::ising(4, 1).unwrap();
        let min = (0..10_000)
            .map(|_| problem.evaluate(&random_params(problem.dimension(), &mut rng)))
            .fold(f64::INFINITY, f64::min);
        assert!(min >= problem.ground_energy() - 1e-9);
    }

    #[test]
    fn energy_is_two_pi_periodic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let problem = VqeProblem::ising(3, 2).unwrap();
        let p = random_params(problem.dimension(), &mut rng);
        let e = problem.evaluate(&p);
        for k in 0..p.len() {
            let mut shifted = p.clone();
            shifted[k] += 2.0 * PI;
            assert!((problem.evaluate(&shifted) - e).abs() < 1e-10);
        }
    }
}
