//! Tree-level helicity amplitude matrices `M[out, in]`.
//!
//! Rows and columns run over the two-particle helicity basis
//! `(LL, LR, RL, RR)`; the first label is particle 1, the second particle 2.
//! The amplitudes include `e^2 = 4 pi alpha`, the Feynman-gauge photon
//! propagator `-i g_{mu nu} / q^2` and fermion propagators
//! `i (qslash + m) / (q^2 - m^2)`.

use crate::dirac::{
    current, photon_polarization, slash, slash_complex, u_spinor, v_spinor, ComplexFourVector,
    DiracSpinor, FourVector, Helicity,
};
use crate::error::{Error, Result};
use crate::kinematics::{KinematicPoint, ProcessKind};
use crate::linalg::{c, Mat4, C64};

/// Relative size below which a propagator denominator counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Index of a two-particle helicity state in the `(LL, LR, RL, RR)` basis.
pub fn pair_index(h1: Helicity, h2: Helicity) -> usize {
    2 * h1.index() + h2.index()
}

/// Helicity pair for a basis index.
pub fn pair_of(index: usize) -> (Helicity, Helicity) {
    let h = |i| if i == 0 { Helicity::L } else { Helicity::R };
    (h(index / 2), h(index % 2))
}

#[derive(Clone, Debug)]
pub struct Channel {
    pub name: &'static str,
    pub matrix: Mat4,
}

/// Helicity amplitude matrix at one kinematic point.
#[derive(Clone, Debug)]
pub struct AmplitudeMatrix {
    pub entries: Mat4,
    pub kin: KinematicPoint,
    /// Individual diagrams, relative fermion signs already applied.
    pub channels: Vec<Channel>,
}

impl AmplitudeMatrix {
    fn from_channels(kin: &KinematicPoint, channels: Vec<Channel>) -> Self {
        let entries = channels.iter().fold(Mat4::zeros(), |acc, ch| acc + ch.matrix);
        AmplitudeMatrix { entries, kin: *kin, channels }
    }

    /// `sum |M|^2` over all 16 helicity configurations.
    pub fn spin_summed_squared(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn channel(&self, name: &str) -> Option<&Mat4> {
        self.channels.iter().find(|ch| ch.name == name).map(|ch| &ch.matrix)
    }
}

/// Dispatches on `kin.process`.
pub fn amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    match kin.process {
        ProcessKind::Moller => moller_amplitude(kin),
        ProcessKind::MuonPair => muon_pair_amplitude(kin),
        ProcessKind::Annihilation => annihilation_amplitude(kin),
        ProcessKind::Bhabha => bhabha_amplitude(kin),
        ProcessKind::ElectronMuon => electron_muon_amplitude(kin),
        ProcessKind::Compton => compton_amplitude(kin),
    }
}

fn expect(kin: &KinematicPoint, process: ProcessKind) -> Result<()> {
    if kin.process != process {
        return Err(Error::InvalidKinematics(format!(
            "kinematics built for {}, amplitude requested for {}",
            kin.process, process
        )));
    }
    Ok(())
}

fn guard(kin: &KinematicPoint, denominator: f64, what: &str) -> Result<()> {
    if denominator.abs() < POLE_TOL * kin.s {
        return Err(Error::Divergent(format!(
            "{} pole at p = {}, theta = {} ({what} = {denominator:e})",
            kin.process, kin.p, kin.theta
        )));
    }
    Ok(())
}

type Pair = [DiracSpinor; 2];

fn u_pair(mass: f64, p: FourVector) -> Result<Pair> {
    Ok([u_spinor(mass, p, Helicity::L)?, u_spinor(mass, p, Helicity::R)?])
}

fn v_pair(mass: f64, p: FourVector) -> Result<Pair> {
    Ok([v_spinor(mass, p, Helicity::L)?, v_spinor(mass, p, Helicity::R)?])
}

/// `currents[a][b] = bar(x_a) gamma^mu y_b`.
fn currents(bar: &Pair, ket: &Pair) -> [[ComplexFourVector; 2]; 2] {
    std::array::from_fn(|a| std::array::from_fn(|b| current(&bar[a], &ket[b])))
}

/// Fills a 4x4 matrix from `f(out1, out2, in1, in2)` on helicity indices.
fn fill(mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Mat4 {
    Mat4::from_fn(|row, col| f(row / 2, row % 2, col / 2, col % 2))
}

pub fn moller_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Moller)?;
    guard(kin, kin.t, "t")?;
    guard(kin, kin.u, "u")?;
    let m = kin.constants.electron_mass;
    let e2 = kin.constants.e_squared();
    let (u1, u2) = (u_pair(m, kin.p1)?, u_pair(m, kin.p2)?);
    let (u3, u4) = (u_pair(m, kin.q1)?, u_pair(m, kin.q2)?);
    let j31 = currents(&u3, &u1);
    let j42 = currents(&u4, &u2);
    let j32 = currents(&u3, &u2);
    let j41 = currents(&u4, &u1);
    let t_ch = fill(|r1, r2, s1, s2| j31[r1][s1].dot(&j42[r2][s2]) * (e2 / kin.t));
    let u_ch = fill(|r1, r2, s1, s2| -j32[r1][s2].dot(&j41[r2][s1]) * (e2 / kin.u));
    Ok(AmplitudeMatrix::from_channels(
        kin,
        vec![Channel { name: "t", matrix: t_ch }, Channel { name: "u", matrix: u_ch }],
    ))
}

/// s-channel annihilation into a fermion pair of mass `m_out` (muons or electrons).
fn s_channel(kin: &KinematicPoint, m_in: f64, m_out: f64) -> Result<Mat4> {
    let e2 = kin.constants.e_squared();
    let u1 = u_pair(m_in, kin.p1)?;
    let v2 = v_pair(m_in, kin.p2)?;
    let u3 = u_pair(m_out, kin.q1)?;
    let v4 = v_pair(m_out, kin.q2)?;
    let jin = currents(&v2, &u1);
    let jout = currents(&u3, &v4);
    Ok(fill(|r1, r2, s1, s2| jin[s2][s1].dot(&jout[r1][r2]) * (e2 / kin.s)))
}

pub fn muon_pair_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::MuonPair)?;
    let k = &kin.constants;
    let s_ch = s_channel(kin, k.electron_mass, k.muon_mass)?;
    Ok(AmplitudeMatrix::from_channels(kin, vec![Channel { name: "s", matrix: s_ch }]))
}

pub fn bhabha_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Bhabha)?;
    guard(kin, kin.t, "t")?;
    let m = kin.constants.electron_mass;
    let e2 = kin.constants.e_squared();
    let s_ch = s_channel(kin, m, m)?;
    let u1 = u_pair(m, kin.p1)?;
    let v2 = v_pair(m, kin.p2)?;
    let u3 = u_pair(m, kin.q1)?;
    let v4 = v_pair(m, kin.q2)?;
    let jv = currents(&v2, &v4);
    let ju = currents(&u3, &u1);
    let t_ch = fill(|r1, r2, s1, s2| -jv[s2][r2].dot(&ju[r1][s1]) * (e2 / kin.t));
    Ok(AmplitudeMatrix::from_channels(
        kin,
        vec![Channel { name: "s", matrix: s_ch }, Channel { name: "t", matrix: t_ch }],
    ))
}

pub fn electron_muon_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::ElectronMuon)?;
    guard(kin, kin.t, "t")?;
    let k = &kin.constants;
    let e2 = k.e_squared();
    let (u1, u3) = (u_pair(k.electron_mass, kin.p1)?, u_pair(k.electron_mass, kin.q1)?);
    let (u2, u4) = (u_pair(k.muon_mass, kin.p2)?, u_pair(k.muon_mass, kin.q2)?);
    let je = currents(&u3, &u1);
    let jm = currents(&u4, &u2);
    let t_ch = fill(|r1, r2, s1, s2| jm[r2][s2].dot(&je[r1][s1]) * (e2 / kin.t));
    Ok(AmplitudeMatrix::from_channels(kin, vec![Channel { name: "t", matrix: t_ch }]))
}

/// Outgoing photon wavefunctions `eps*(q, h)` for both helicities.
fn outgoing_photon(q: FourVector) -> Result<[ComplexFourVector; 2]> {
    Ok([
        photon_polarization(q, Helicity::L)?.conj(),
        photon_polarization(q, Helicity::R)?.conj(),
    ])
}

fn incoming_photon(k: FourVector) -> Result<[ComplexFourVector; 2]> {
    Ok([
        photon_polarization(k, Helicity::L)?.components,
        photon_polarization(k, Helicity::R)?.components,
    ])
}

pub fn annihilation_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Annihilation)?;
    let eps1 = outgoing_photon(kin.q1)?;
    let eps2 = outgoing_photon(kin.q2)?;
    annihilation_with_polarizations(kin, &eps1, &eps2)
}

/// Annihilation amplitude with caller-supplied (already conjugated) photon
/// wavefunctions, indexed by helicity. Substituting a photon momentum tests
/// gauge invariance.
pub fn annihilation_with_polarizations(
    kin: &KinematicPoint,
    eps1: &[ComplexFourVector; 2],
    eps2: &[ComplexFourVector; 2],
) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Annihilation)?;
    let m = kin.constants.electron_mass;
    let m2 = m * m;
    guard(kin, kin.t - m2, "t - m^2")?;
    guard(kin, kin.u - m2, "u - m^2")?;
    let e2 = kin.constants.e_squared();
    let u1 = u_pair(m, kin.p1)?;
    let v2 = v_pair(m, kin.p2)?;
    let mass = Mat4::identity() * c(m, 0.0);
    let prop_t = (slash(&(kin.p1 - kin.q1)) + mass) * c(1.0 / (kin.t - m2), 0.0);
    let prop_u = (slash(&(kin.p1 - kin.q2)) + mass) * c(1.0 / (kin.u - m2), 0.0);
    let e1s = eps1.map(|e| slash_complex(&e));
    let e2s = eps2.map(|e| slash_complex(&e));

    let chain = |gamma: &Mat4, s1: usize, s2: usize| -> C64 {
        crate::dirac::sandwich(&v2[s2].bar(), gamma, &u1[s1].components)
    };
    let t_ch = fill(|l1, l2, s1, s2| -chain(&(e2s[l2] * prop_t * e1s[l1]), s1, s2) * e2);
    let u_ch = fill(|l1, l2, s1, s2| -chain(&(e1s[l1] * prop_u * e2s[l2]), s1, s2) * e2);
    Ok(AmplitudeMatrix::from_channels(
        kin,
        vec![Channel { name: "t", matrix: t_ch }, Channel { name: "u", matrix: u_ch }],
    ))
}

pub fn compton_amplitude(kin: &KinematicPoint) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Compton)?;
    let eps_in = incoming_photon(kin.p2)?;
    let eps_out = outgoing_photon(kin.q2)?;
    compton_with_polarizations(kin, &eps_in, &eps_out)
}

/// Compton amplitude with caller-supplied photon wavefunctions: `eps_in` for
/// the incoming photon, `eps_out` (already conjugated) for the outgoing one.
pub fn compton_with_polarizations(
    kin: &KinematicPoint,
    eps_in: &[ComplexFourVector; 2],
    eps_out: &[ComplexFourVector; 2],
) -> Result<AmplitudeMatrix> {
    expect(kin, ProcessKind::Compton)?;
    let m = kin.constants.electron_mass;
    let m2 = m * m;
    guard(kin, kin.s - m2, "s - m^2")?;
    guard(kin, kin.u - m2, "u - m^2")?;
    let e2 = kin.constants.e_squared();
    let u1 = u_pair(m, kin.p1)?;
    let u3 = u_pair(m, kin.q1)?;
    let mass = Mat4::identity() * c(m, 0.0);
    let prop_s = (slash(&(kin.p1 + kin.p2)) + mass) * c(1.0 / (kin.s - m2), 0.0);
    let prop_u = (slash(&(kin.p1 - kin.q2)) + mass) * c(1.0 / (kin.u - m2), 0.0);
    let ein = eps_in.map(|e| slash_complex(&e));
    let eout = eps_out.map(|e| slash_complex(&e));

    let chain = |gamma: &Mat4, r1: usize, s1: usize| -> C64 {
        crate::dirac::sandwich(&u3[r1].bar(), gamma, &u1[s1].components)
    };
    // Basis: in = (electron s1, photon l1), out = (electron r1, photon l2).
    let s_ch = fill(|r1, l2, s1, l1| -chain(&(eout[l2] * prop_s * ein[l1]), r1, s1) * e2);
    let u_ch = fill(|r1, l2, s1, l1| -chain(&(ein[l1] * prop_u * eout[l2]), r1, s1) * e2);
    Ok(AmplitudeMatrix::from_channels(
        kin,
        vec![Channel { name: "s", matrix: s_ch }, Channel { name: "u", matrix: u_ch }],
    ))
}
