//! Unpolarized cross sections from the helicity amplitudes against
//! textbook formulas.

use std::f64::consts::PI;

use qedtangle::kinematics::build_kinematics_with;
use qedtangle::oracle::{klein_nishina_dsigma_dt, moller_nonrelativistic};
use qedtangle::scan::{cross_section_check, dsigma_dt};
use qedtangle::{Constants, ProcessKind};

fn main() -> qedtangle::Result<()> {
    let k = Constants::default();
    let m = k.electron_mass;

    let p = 1e-3 * m;
    println!("Moller at p = 1e-3 m_e:");
    for theta in [PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0] {
        let kin = build_kinematics_with(&k, ProcessKind::Moller, p, theta)?;
        let ratio = cross_section_check(&kin)? / moller_nonrelativistic(p, theta, m, k.alpha);
        println!("  theta = {theta:.4}: amplitude / low-energy formula = {ratio:.6}");
    }

    println!("muon pair at 50 GeV, shape relative to 1 + cos^2:");
    let norm = cross_section_check(&build_kinematics_with(&k, ProcessKind::MuonPair, 5e4, PI / 2.0)?)?;
    for theta in [0.3, 0.9, 1.5, 2.4] {
        let kin = build_kinematics_with(&k, ProcessKind::MuonPair, 5e4, theta)?;
        println!("  theta = {theta}: {:.6}", cross_section_check(&kin)? / norm / (1.0 + theta.cos().powi(2)));
    }

    println!("Compton against Klein-Nishina:");
    for (p, theta) in [(0.05, 0.7), (1.0, 2.0), (30.0, 2.9)] {
        let kin = build_kinematics_with(&k, ProcessKind::Compton, p, theta)?;
        let ours = dsigma_dt(&kin)?;
        let kn = klein_nishina_dsigma_dt(kin.s, kin.t, m, k.alpha);
        println!("  p = {p}, theta = {theta}: rel. difference {:.2e}", (ours - kn).abs() / kn);
    }
    Ok(())
}
