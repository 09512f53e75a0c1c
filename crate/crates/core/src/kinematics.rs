//! Centre-of-mass kinematics for the six 2 -> 2 processes.
//!
//! Incoming particle 1 moves along `+z`, particle 2 along `-z`, both with
//! three-momentum `p`. Outgoing particle 1 leaves at angle `theta` in the
//! `xz` plane (`phi = 0`), particle 2 back to back with it.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::constants::Constants;
use crate::dirac::FourVector;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProcessKind {
    /// e- e- -> e- e-
    Moller,
    /// e- e+ -> mu- mu+
    MuonPair,
    /// e- e+ -> gamma gamma
    Annihilation,
    /// e- e+ -> e- e+
    Bhabha,
    /// e- mu- -> e- mu-
    ElectronMuon,
    /// e- gamma -> e- gamma
    Compton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Species {
    Fermion,
    Antifermion,
    Photon,
}

/// External leg descriptor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leg {
    pub name: &'static str,
    pub species: Species,
    pub mass: f64,
}

impl ProcessKind {
    pub const ALL: [ProcessKind; 6] = [
        ProcessKind::Moller,
        ProcessKind::MuonPair,
        ProcessKind::Annihilation,
        ProcessKind::Bhabha,
        ProcessKind::ElectronMuon,
        ProcessKind::Compton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProcessKind::Moller => "moller",
            ProcessKind::MuonPair => "muon-pair",
            ProcessKind::Annihilation => "annihilation",
            ProcessKind::Bhabha => "bhabha",
            ProcessKind::ElectronMuon => "electron-muon",
            ProcessKind::Compton => "compton",
        }
    }

    /// Incoming and outgoing legs, in the order (particle 1, particle 2).
    pub fn legs(self, k: &Constants) -> ([Leg; 2], [Leg; 2]) {
        let me = k.electron_mass;
        let mm = k.muon_mass;
        let electron = Leg { name: "e-", species: Species::Fermion, mass: me };
        let positron = Leg { name: "e+", species: Species::Antifermion, mass: me };
        let muon = Leg { name: "mu-", species: Species::Fermion, mass: mm };
        let antimuon = Leg { name: "mu+", species: Species::Antifermion, mass: mm };
        let photon = Leg { name: "gamma", species: Species::Photon, mass: 0.0 };
        match self {
            ProcessKind::Moller => ([electron, electron], [electron, electron]),
            ProcessKind::MuonPair => ([electron, positron], [muon, antimuon]),
            ProcessKind::Annihilation => ([electron, positron], [photon, photon]),
            ProcessKind::Bhabha => ([electron, positron], [electron, positron]),
            ProcessKind::ElectronMuon => ([electron, muon], [electron, muon]),
            ProcessKind::Compton => ([electron, photon], [electron, photon]),
        }
    }

    /// Smallest incoming COM momentum for which the process is open.
    pub fn threshold(self, k: &Constants) -> f64 {
        match self {
            ProcessKind::MuonPair => (k.muon_mass.powi(2) - k.electron_mass.powi(2)).sqrt(),
            _ => 0.0,
        }
    }

    /// Scattering angles (mod 2 pi) on which a propagator diverges, or, for
    /// Compton, where the u-channel denominator vanishes as m -> 0.
    pub fn singular_angles(self) -> &'static [f64] {
        match self {
            ProcessKind::Moller => &[0.0, PI],
            ProcessKind::Bhabha | ProcessKind::ElectronMuon => &[0.0],
            ProcessKind::Compton => &[PI],
            ProcessKind::MuonPair | ProcessKind::Annihilation => &[],
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProcessKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "moller" | "møller" | "eeee" => ProcessKind::Moller,
            "muon-pair" | "muonpair" | "eemm" => ProcessKind::MuonPair,
            "annihilation" | "eegg" => ProcessKind::Annihilation,
            "bhabha" | "epep" => ProcessKind::Bhabha,
            "electron-muon" | "electronmuon" | "emem" => ProcessKind::ElectronMuon,
            "compton" | "egeg" => ProcessKind::Compton,
            _ => return Err(Error::Config(format!("unknown process '{s}'"))),
        })
    }
}

/// A fully specified COM kinematic configuration.
#[derive(Clone, Copy, Debug)]
pub struct KinematicPoint {
    pub process: ProcessKind,
    pub constants: Constants,
    /// Incoming three-momentum magnitude, MeV.
    pub p: f64,
    /// Scattering angle of outgoing particle 1, radians.
    pub theta: f64,
    pub p1: FourVector,
    pub p2: FourVector,
    pub q1: FourVector,
    pub q2: FourVector,
    pub s: f64,
    pub t: f64,
    pub u: f64,
    /// Outgoing three-momentum magnitude, MeV.
    pub q_out: f64,
}

impl KinematicPoint {
    pub fn incoming_legs(&self) -> [Leg; 2] {
        self.process.legs(&self.constants).0
    }

    pub fn outgoing_legs(&self) -> [Leg; 2] {
        self.process.legs(&self.constants).1
    }

    /// Sum of the four external squared masses.
    pub fn mass_sum(&self) -> f64 {
        let (i, o) = self.process.legs(&self.constants);
        i.iter().chain(o.iter()).map(|l| l.mass * l.mass).sum()
    }
}

/// Builds a kinematic point with the default constants.
pub fn build_kinematics(process: ProcessKind, p: f64, theta: f64) -> Result<KinematicPoint> {
    build_kinematics_with(&Constants::default(), process, p, theta)
}

pub fn build_kinematics_with(
    constants: &Constants,
    process: ProcessKind,
    p: f64,
    theta: f64,
) -> Result<KinematicPoint> {
    if !p.is_finite() || !theta.is_finite() {
        return Err(Error::InvalidKinematics(format!("non-finite input p = {p}, theta = {theta}")));
    }
    if p <= 0.0 {
        return Err(Error::InvalidKinematics(format!("p must be positive, got {p}")));
    }
    let min = process.threshold(constants);
    if p < min {
        return Err(Error::BelowThreshold { p, min });
    }

    let ([a, b], [c, d]) = process.legs(constants);
    let e1 = (p * p + a.mass * a.mass).sqrt();
    let e2 = (p * p + b.mass * b.mass).sqrt();
    let p1 = FourVector::new(e1, 0.0, 0.0, p);
    let p2 = FourVector::new(e2, 0.0, 0.0, -p);

    let q_out = if c.mass == a.mass && d.mass == b.mass {
        p
    } else {
        let sqrt_s = e1 + e2;
        let s = sqrt_s * sqrt_s;
        let (m3, m4) = (c.mass * c.mass, d.mass * d.mass);
        let lambda = (s - m3 - m4).powi(2) - 4.0 * m3 * m4;
        // Exactly at threshold rounding can leave a tiny negative value.
        (lambda.max(0.0) / (4.0 * s)).sqrt()
    };

    let (st, ct) = theta.sin_cos();
    let e3 = (q_out * q_out + c.mass * c.mass).sqrt();
    let e4 = (q_out * q_out + d.mass * d.mass).sqrt();
    let q1 = FourVector::new(e3, q_out * st, 0.0, q_out * ct);
    let q2 = FourVector::new(e4, -q_out * st, 0.0, -q_out * ct);

    let (s, t, u) = invariants(&p1, &p2, &q1, &q2);
    Ok(KinematicPoint {
        process,
        constants: *constants,
        p,
        theta,
        p1,
        p2,
        q1,
        q2,
        s,
        t,
        u,
        q_out,
    })
}

fn invariants(p1: &FourVector, p2: &FourVector, q1: &FourVector, q2: &FourVector) -> (f64, f64, f64) {
    ((*p1 + *p2).square(), (*p1 - *q1).square(), (*p1 - *q2).square())
}

/// `(s, t, u) = ((p1 + p2)^2, (p1 - q1)^2, (p1 - q2)^2)`.
pub fn mandelstam(kin: &KinematicPoint) -> (f64, f64, f64) {
    invariants(&kin.p1, &kin.p2, &kin.q1, &kin.q2)
}
