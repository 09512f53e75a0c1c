//! The entanglement toolkit on hand-built two-qubit states.

use qedtangle::entanglement::{analyze, partial_transpose};
use qedtangle::linalg::{c, hermitian_eigenvalues, Mat4};
use qedtangle::qstate::BellState;
use qedtangle::{DensityMatrix, InitialState};

fn isotropic(f: f64) -> DensityMatrix {
    let m = BellState::PhiPlus.density().into_matrix() * c(f, 0.0) + Mat4::identity() * c((1.0 - f) / 4.0, 0.0);
    DensityMatrix::new(m).unwrap()
}

fn main() -> qedtangle::Result<()> {
    for b in BellState::ALL {
        let r = analyze(&b.density(), 1e-10)?;
        println!("{b}: N = {:.3}, E_N = {:.3}, S = {:.3}", r.negativity, r.log_negativity, r.entropy);
    }
    // Entangled for f > 1/3.
    for f in [0.2, 1.0 / 3.0, 0.34, 0.6] {
        let r = analyze(&isotropic(f), 1e-10)?;
        println!("isotropic f = {f:.4}: min PT = {:+.5}, entangled = {}", r.min_pt_eigenvalue(), r.entangled);
    }
    let w = InitialState::werner_symmetric();
    println!("werner input PT spectrum {:?}", hermitian_eigenvalues(&partial_transpose(&w.density))?);
    Ok(())
}
