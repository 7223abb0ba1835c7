//! Gate-level simulation: prepare a state with explicit gates, then measure
//! Pauli strings and the Ising energy.

use std::f64::consts::FRAC_PI_2;

use vqe_de::model::{build_hamiltonian, IsingChain};
use vqe_de::state::{expectation, zero_state, Gate, PauliString};

fn main() -> vqe_de::Result<()> {
    let n = 4;
    let mut state = zero_state(n)?;
    // Ry(π/2) then Rz(π/2) takes |0> to |+i>, the +1 eigenstate of Y, up to
    // a global phase.
    for q in 0..n {
        state.apply(&Gate::Ry {
            target: q,
            angle: FRAC_PI_2,
        })?;
        state.apply(&Gate::Rz {
            target: q,
            angle: FRAC_PI_2,
        })?;
    }
    println!("norm^2 = {:.15}", state.norm_sqr());

    for text in ["YIII", "YYII", "ZIII", "XXXX"] {
        let p = PauliString::parse(1.0, text)?;
        println!("<{text}> = {:+.12}", expectation(&state, &[p])?);
    }

    let chain = IsingChain::new(n);
    let energy = expectation(&state, &build_hamiltonian(&chain)?)?;
    println!(
        "Ising-Y energy of |+i>^{n} = {energy:+.12} (ground energy is {})",
        -(n as f64 - 1.0)
    );

    // A CZ ladder entangles the chain; the energy moves off the ground level.
    for q in 0..n - 1 {
        state.apply(&Gate::Cz {
            control: q,
            target: q + 1,
        })?;
    }
    let energy = expectation(&state, &build_hamiltonian(&chain)?)?;
    println!("after a CZ ladder          = {energy:+.12}");
    Ok(())
}
