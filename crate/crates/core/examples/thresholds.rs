//! Entanglement boundaries located by bisection on the smallest
//! partial-transpose eigenvalue.

use std::f64::consts::PI;

use qedtangle::scan::find_threshold;
use qedtangle::{Constants, InitialState, ProcessKind};

fn main() -> qedtangle::Result<()> {
    let k = Constants::default();
    let un = InitialState::unpolarized();
    let (me, mm) = (k.electron_mass, k.muon_mass);

    let p = find_threshold(&k, ProcessKind::Moller, &un, PI / 2.0, (0.5, 2.0))?;
    println!("moller, theta = pi/2:      {p:.6} MeV  (sqrt(sqrt5 + 2) m_e = {:.6})", (5f64.sqrt() + 2.0).sqrt() * me);

    let p = find_threshold(&k, ProcessKind::ElectronMuon, &un, PI, (1.0, 10.0))?;
    println!("electron-muon, theta = pi: {p:.6} MeV  (sqrt(m_e m_mu) / 2 = {:.6})", (me * mm).sqrt() / 2.0);

    for theta in [0.5, PI / 4.0, 1.1] {
        let inner = find_threshold(&k, ProcessKind::Annihilation, &un, theta, (0.2, 0.6))?;
        let outer = find_threshold(&k, ProcessKind::Annihilation, &un, theta, (0.6, 5.0))?;
        println!("annihilation wing, theta = {theta:.3}: separable for {inner:.4} < p < {outer:.4} MeV");
    }

    match find_threshold(&k, ProcessKind::Moller, &un, PI / 2.0, (2.0, 3.0)) {
        Err(e) => println!("bracket without a crossing: {e}"),
        Ok(p) => println!("unexpected crossing at {p}"),
    }
    Ok(())
}
