//! Dense statevector simulation.
//!
//! Amplitudes are indexed by the computational-basis bitstring with qubit 0
//! as the most significant bit, so the first tensor factor of a Pauli string
//! acts on the highest bit of the index. Gates are applied with strided 2x2
//! block updates (single-qubit) or sign flips (CZ); no 2^n x 2^n matrix is
//! ever built.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest register accepted by [`zero_state`]: 2^26 amplitudes is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Imaginary parts above this make [`expectation`] fail.
pub const IMAG_ERROR_TOL: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Bit of the basis index that holds `qubit`.
#[inline]
pub(crate) fn qubit_bit(n_qubits: usize, qubit: usize) -> usize {
    n_qubits - 1 - qubit
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; the length must be a power of two (at least 2).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(invalid(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut state = zero_state(n_qubits)?;
        if index >= state.amplitudes.len() {
            return Err(invalid(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        state.amplitudes[0] = ZERO;
        state.amplitudes[index] = ONE;
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Σ|aᵢ|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Ry { target, angle } => {
                let (s, c) = (angle / 2.0).sin_cos();
                apply_real_2x2(
                    &mut self.amplitudes,
                    self.n_qubits,
                    target,
                    [[c, -s], [s, c]],
                );
            }
            Gate::Rz { target, angle } => {
                let (s, c) = (angle / 2.0).sin_cos();
                apply_diagonal(self, target, Complex64::new(c, -s), Complex64::new(c, s));
            }
            Gate::Cz { control, target } => {
                let mask = (1usize << qubit_bit(self.n_qubits, control))
                    | (1usize << qubit_bit(self.n_qubits, target));
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `|0...0>` on `n_qubits` qubits, bounded by [`DEFAULT_MAX_QUBITS`].
pub fn zero_state(n_qubits: usize) -> Result<StateVector> {
    zero_state_within(n_qubits, DEFAULT_MAX_QUBITS)
}

/// `|0...0>` with an explicit memory budget expressed in qubits.
pub fn zero_state_within(n_qubits: usize, max_qubits: usize) -> Result<StateVector> {
    if n_qubits < 1 || n_qubits > max_qubits {
        return Err(Error::Capacity {
            n_qubits,
            max_qubits,
        });
    }
    let mut amplitudes = vec![ZERO; 1usize << n_qubits];
    amplitudes[0] = ONE;
    Ok(StateVector {
        n_qubits,
        amplitudes,
    })
}

/// The three gate kinds of the hardware-efficient ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    Cz { control: usize, target: usize },
}

impl Gate {
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Ry { target, angle } => Gate::Ry {
                target,
                angle: -angle,
            },
            Gate::Rz { target, angle } => Gate::Rz {
                target,
                angle: -angle,
            },
            cz @ Gate::Cz { .. } => cz,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let check = |q: usize| {
            if q < n_qubits {
                Ok(())
            } else {
                Err(invalid(format!(
                    "qubit index {q} out of range for {n_qubits} qubits"
                )))
            }
        };
        match *self {
            Gate::Ry { target, .. } | Gate::Rz { target, .. } => check(target),
            Gate::Cz { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(invalid("CZ control and target coincide"));
                }
                Ok(())
            }
        }
    }
}

/// Returns `gate` applied to a copy of `state`.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// Real 2x2 block update on `target`.
pub(crate) fn apply_real_2x2(
    amps: &mut [Complex64],
    n_qubits: usize,
    target: usize,
    m: [[f64; 2]; 2],
) {
    let stride = 1usize << qubit_bit(n_qubits, target);
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a0, *a1);
            *a0 = x * m[0][0] + y * m[0][1];
            *a1 = x * m[1][0] + y * m[1][1];
        }
    }
}

/// Complex 2x2 block update on `target`.
pub(crate) fn apply_2x2(
    amps: &mut [Complex64],
    n_qubits: usize,
    target: usize,
    m: [[Complex64; 2]; 2],
) {
    let stride = 1usize << qubit_bit(n_qubits, target);
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a0, *a1);
            *a0 = m[0][0] * x + m[0][1] * y;
            *a1 = m[1][0] * x + m[1][1] * y;
        }
    }
}

fn apply_diagonal(state: &mut StateVector, target: usize, d0: Complex64, d1: Complex64) {
    let stride = 1usize << qubit_bit(state.n_qubits, target);
    for block in state.amplitudes.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        lo.iter_mut().for_each(|a| *a *= d0);
        hi.iter_mut().for_each(|a| *a *= d1);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" => Ok(Pauli::I),
            "X" | "x" => Ok(Pauli::X),
            "Y" | "y" => Ok(Pauli::Y),
            "Z" | "z" => Ok(Pauli::Z),
            other => Err(invalid(format!("unknown Pauli letter {other:?}"))),
        }
    }
}

/// `coefficient · P₀ ⊗ P₁ ⊗ … ⊗ Pₙ₋₁`, with `P₀` acting on qubit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    coefficient: f64,
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(coefficient: f64, letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(invalid("Pauli string needs at least one letter"));
        }
        Ok(Self {
            coefficient,
            letters,
        })
    }

    /// Parses a letter string such as `"YYII"`.
    pub fn parse(coefficient: f64, letters: &str) -> Result<Self> {
        let letters = letters
            .chars()
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<Pauli>>>()?;
        Self::new(coefficient, letters)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    /// Bit masks of the string: `P|x> = i^{n_y} (-1)^{|x & z|} |x ^ flip>`.
    pub(crate) fn masks(&self) -> PauliMasks {
        let n = self.letters.len();
        let mut masks = PauliMasks {
            flip: 0,
            phase: 0,
            n_y: 0,
        };
        for (q, letter) in self.letters.iter().enumerate() {
            let bit = 1usize << qubit_bit(n, q);
            match letter {
                Pauli::I => {}
                Pauli::X => masks.flip |= bit,
                Pauli::Z => masks.phase |= bit,
                Pauli::Y => {
                    masks.flip |= bit;
                    masks.phase |= bit;
                    masks.n_y += 1;
                }
            }
        }
        masks
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}·", self.coefficient)?;
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// Bitmask form of a Pauli string. `Y = iXZ`, so `Y|b> = i(-1)^b |b̄>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PauliMasks {
    pub flip: usize,
    pub phase: usize,
    pub n_y: u32,
}

impl PauliMasks {
    #[inline]
    fn global_phase(&self) -> Complex64 {
        match self.n_y % 4 {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `<ψ|P|ψ>` without the coefficient.
    pub(crate) fn expectation(&self, amps: &[Complex64]) -> Complex64 {
        let mut acc = ZERO;
        if self.flip == 0 {
            for (x, a) in amps.iter().enumerate() {
                let w = a.norm_sqr();
                if (x & self.phase).count_ones() & 1 == 0 {
                    acc.re += w;
                } else {
                    acc.re -= w;
                }
            }
        } else {
            for (x, a) in amps.iter().enumerate() {
                let term = amps[x ^ self.flip].conj() * a;
                if (x & self.phase).count_ones() & 1 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        acc * self.global_phase()
    }
}

fn check_same_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(invalid(format!("qubit count mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// `coefficient · (P₀ ⊗ … ⊗ Pₙ₋₁)|state>`.
pub fn apply_pauli_string(state: &StateVector, term: &PauliString) -> Result<StateVector> {
    check_same_size(state.n_qubits, term.n_qubits())?;
    let masks = term.masks();
    let scale = masks.global_phase() * term.coefficient;
    let src = &state.amplitudes;
    let mut out = vec![ZERO; src.len()];
    for (x, a) in src.iter().enumerate() {
        let sign = if (x & masks.phase).count_ones() & 1 == 0 {
            1.0
        } else {
            -1.0
        };
        out[x ^ masks.flip] = a * scale * sign;
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amplitudes: out,
    })
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    check_same_size(a.n_qubits, b.n_qubits)?;
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// `Σₖ <state|termₖ|state>`; fails if the imaginary part exceeds
/// [`IMAG_ERROR_TOL`].
pub fn expectation(state: &StateVector, terms: &[PauliString]) -> Result<f64> {
    let mut total = ZERO;
    for term in terms {
        check_same_size(state.n_qubits, term.n_qubits())?;
        total += term.masks().expectation(&state.amplitudes) * term.coefficient;
    }
    if total.im.abs() > IMAG_ERROR_TOL {
        return Err(Error::NumericalConsistency { imag: total.im });
    }
    Ok(total.re)
}
