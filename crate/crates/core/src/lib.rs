//! Differential Evolution versus local optimizers for the Variational
//! Quantum Eigensolver on the zero-field 1D Ising chain.
//!
//! The crate is layered bottom-up:
//!
//! * [`state`]: dense statevector simulation (Ry, Rz, CZ, Pauli strings).
//! * [`model`]: the Ising Hamiltonian, its closed-form spectrum and the
//!   hardware-efficient ansatz, compiled into a [`model::VqeProblem`].
//! * [`optimize`]: Differential Evolution, SPSA, L-BFGS with
//!   parameter-shift gradients and the DE → L-BFGS hybrid.
//! * [`bench`]: seeded trial batches, success rates, sweeps and landscape
//!   scans.
//! * [`cli`]: configuration handling and the `vqe-de` command line.

pub mod bench;
pub mod cli;
mod error;
pub mod model;
pub mod optimize;
pub mod state;

pub use error::{Error, Result};
