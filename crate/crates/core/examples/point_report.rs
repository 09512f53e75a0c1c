//! One kinematic point through the whole pipeline: Bhabha backscattering
//! at the momentum of maximal logarithmic negativity.

use std::f64::consts::PI;

use qedtangle::amplitudes::pair_of;
use qedtangle::{evaluate_point, Constants, InitialState, ProcessKind};

fn main() -> qedtangle::Result<()> {
    let k = Constants::default();
    let r = evaluate_point(&k, ProcessKind::Bhabha, &InitialState::unpolarized(), 0.32, PI, 1e-10)?;

    println!("s = {:.6} t = {:.6} u = {:.3e} MeV^2", r.kin.s, r.kin.t, r.kin.u);
    println!("amplitude matrix, rows = outgoing, columns = incoming helicities:");
    for i in 0..4 {
        let (a, b) = pair_of(i);
        let row: Vec<String> = (0..4).map(|j| format!("{:9.5}", r.amplitude.entries[(i, j)].norm())).collect();
        println!("  {a:?}{b:?} {}", row.join(" "));
    }
    for ch in &r.amplitude.channels {
        println!("  channel {}: max |M| = {:.5}", ch.name, ch.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let rep = &r.report;
    println!("PT eigenvalues {:?}", rep.pt_eigenvalues);
    println!("E_N = {:.4}, S = {:.4}, purity = {:.4}", rep.log_negativity, rep.entropy, rep.purity);
    println!("closest Bell state (local phases) {} with F = {:.4}", rep.closest_bell_local.0, rep.closest_bell_local.1);
    Ok(())
}
