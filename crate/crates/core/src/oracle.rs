//! Closed-form spin-summed squared amplitudes from the trace theorems.
//!
//! Everything here depends only on Mandelstam invariants, masses and the
//! coupling, never on spinors, so it can audit the helicity amplitudes.
//! All functions return `sum over all external spins/polarisations |M|^2`
//! (not averaged).

use std::f64::consts::PI;

use crate::kinematics::{KinematicPoint, ProcessKind};

/// Dispatches on the process, reading invariants from the kinematic point.
pub fn spin_summed_squared(kin: &KinematicPoint) -> f64 {
    let k = &kin.constants;
    let (s, t, u) = (kin.s, kin.t, kin.u);
    let (me, mm, e2) = (k.electron_mass, k.muon_mass, k.e_squared());
    match kin.process {
        ProcessKind::Moller => moller(s, t, u, me, e2),
        ProcessKind::MuonPair => muon_pair(s, t, u, me, mm, e2),
        ProcessKind::Annihilation => annihilation(s, t, u, me, e2),
        ProcessKind::Bhabha => bhabha(s, t, u, me, e2),
        ProcessKind::ElectronMuon => electron_muon(s, t, u, me, mm, e2),
        ProcessKind::Compton => compton(s, t, u, me, e2),
    }
}

/// e- e- -> e- e- with electron mass `m`.
pub fn moller(s: f64, t: f64, u: f64, m: f64, e2: f64) -> f64 {
    let m2 = m * m;
    let m4 = m2 * m2;
    let direct = (s * s + u * u - 8.0 * m2 * (s + u) + 24.0 * m4) / (t * t);
    let exchange = (s * s + t * t - 8.0 * m2 * (s + t) + 24.0 * m4) / (u * u);
    let interference = 2.0 * (s - 2.0 * m2) * (s - 6.0 * m2) / (t * u);
    8.0 * e2 * e2 * (direct + exchange + interference)
}

/// e- e+ -> e- e+, obtained from Moller by s <-> u crossing.
pub fn bhabha(s: f64, t: f64, u: f64, m: f64, e2: f64) -> f64 {
    moller(u, t, s, m, e2)
}

/// e- e+ -> mu- mu+ with both masses kept.
pub fn muon_pair(s: f64, t: f64, u: f64, me: f64, mm: f64, e2: f64) -> f64 {
    let sum = me * me + mm * mm;
    8.0 * e2 * e2 * ((t - sum).powi(2) + (u - sum).powi(2) + 2.0 * s * sum) / (s * s)
}

/// e- mu- -> e- mu-, obtained from the muon pair result by s <-> t crossing.
pub fn electron_muon(s: f64, t: f64, u: f64, me: f64, mm: f64, e2: f64) -> f64 {
    muon_pair(t, s, u, me, mm, e2)
}

/// e- e+ -> gamma gamma.
pub fn annihilation(_s: f64, t: f64, u: f64, m: f64, e2: f64) -> f64 {
    let m2 = m * m;
    let pk1 = 0.5 * (m2 - t);
    let pk2 = 0.5 * (m2 - u);
    let inv = 1.0 / pk1 + 1.0 / pk2;
    8.0 * e2 * e2 * (pk2 / pk1 + pk1 / pk2 + 2.0 * m2 * inv - m2 * m2 * inv * inv)
}

/// e- gamma -> e- gamma.
pub fn compton(s: f64, _t: f64, u: f64, m: f64, e2: f64) -> f64 {
    let m2 = m * m;
    let pk = 0.5 * (s - m2);
    let pk_out = 0.5 * (m2 - u);
    let d = 1.0 / pk - 1.0 / pk_out;
    8.0 * e2 * e2 * (pk_out / pk + pk / pk_out + 2.0 * m2 * d + m2 * m2 * d * d)
}

/// Klein-Nishina `d sigma / d t` (MeV^-4) evaluated through the electron
/// rest frame: incident photon energy `omega = (s - m^2) / 2m`, scattered
/// energy `omega' = omega + t / 2m`, and `d t = 2 omega'^2 d cos(theta_lab)`.
pub fn klein_nishina_dsigma_dt(s: f64, t: f64, m: f64, alpha: f64) -> f64 {
    let omega = (s - m * m) / (2.0 * m);
    let omega_out = omega + t / (2.0 * m);
    let cos_lab = 1.0 - m * (1.0 / omega_out - 1.0 / omega);
    let sin2 = 1.0 - cos_lab * cos_lab;
    let ratio = omega_out / omega;
    let dsigma_domega = alpha * alpha / (2.0 * m * m) * ratio * ratio * (ratio + 1.0 / ratio - sin2);
    dsigma_domega * PI / (omega_out * omega_out)
}

/// Nonrelativistic Moller cross section `m^2 alpha^2 (1 + 3 cos^2) / (4 p^4 sin^4)`.
pub fn moller_nonrelativistic(p: f64, theta: f64, m: f64, alpha: f64) -> f64 {
    let sin = theta.sin();
    m * m * alpha * alpha / (4.0 * p.powi(4) * sin.powi(4)) * (1.0 + 3.0 * theta.cos().powi(2))
}
