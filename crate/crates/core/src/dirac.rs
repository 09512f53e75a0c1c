//! Minkowski vectors, Dirac matrices and helicity wavefunctions.
//!
//! Conventions:
//!
//! * metric `diag(+1, -1, -1, -1)`;
//! * Dirac (standard) representation,
//!   `gamma^0 = diag(1, 1, -1, -1)`, `gamma^i = [[0, sigma_i], [-sigma_i, 0]]`;
//! * two-component helicity spinors for a direction with polar angles
//!   `(theta, phi)`:
//!   `chi_R = (cos(theta/2), e^{i phi} sin(theta/2))`,
//!   `chi_L = (-e^{-i phi} sin(theta/2), cos(theta/2))`.
//!   For `phi = 0` these are exactly `exp(-i sigma_y theta / 2)` applied to the
//!   `+z` spinors, so they remain finite and continuous through `theta = pi`;
//! * `u(p, h) = (sqrt(E+m) chi_h, 2h sqrt(E-m) chi_h)`;
//! * `v(p, h) = (-2h sqrt(E-m) chi_{-h}, sqrt(E+m) chi_{-h})`, labelled by the
//!   physical helicity `h` of the antiparticle;
//! * normalisation `ubar u = 2m`, `vbar v = -2m`;
//! * photon polarisation for a direction `(theta, phi)`:
//!   `eps(h) = -h (e_theta + i h e_phi) / sqrt(2)` with
//!   `e_theta = (cos th cos ph, cos th sin ph, -sin th)`,
//!   `e_phi = (-sin ph, cos ph, 0)`; along `+z` this is `-+(0, 1, +-i, 0)/sqrt(2)`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::linalg::{c, Mat4, Vec4, C64, I, ONE, ZERO};

/// Relative mass-shell violation tolerated for massive momenta.
pub const MASS_SHELL_TOL: f64 = 1e-6;
/// Relative invariant mass tolerated for a photon momentum.
pub const LIGHTLIKE_TOL: f64 = 1e-9;

/// Real Minkowski four-vector `(E, px, py, pz)` in MeV.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const fn new(e: f64, px: f64, py: f64, pz: f64) -> Self {
        FourVector([e, px, py, pz])
    }

    /// On-shell momentum of magnitude `p` along the polar direction `(theta, phi)`.
    pub fn on_shell(mass: f64, p: f64, theta: f64, phi: f64) -> Self {
        let e = (p * p + mass * mass).sqrt();
        FourVector::new(
            e,
            p * theta.sin() * phi.cos(),
            p * theta.sin() * phi.sin(),
            p * theta.cos(),
        )
    }

    pub fn energy(&self) -> f64 {
        self.0[0]
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    pub fn three_norm(&self) -> f64 {
        let v = self.0;
        (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt()
    }

    /// Polar and azimuthal angle of the spatial part.
    ///
    /// Vectors in the `xz` scattering plane (`py = 0`) get the signed in-plane
    /// angle `atan2(px, pz)` in `(-pi, pi]` with `phi = 0`, so wavefunctions
    /// built from them are rotations about `y` of the `+z` ones. The zero
    /// vector maps to `(0, 0)`.
    pub fn angles(&self) -> (f64, f64) {
        let v = self.0.map(|x| x + 0.0);
        if v[2] == 0.0 {
            return (v[1].atan2(v[3]), 0.0);
        }
        let rho = v[1].hypot(v[2]);
        (rho.atan2(v[3]), v[2].atan2(v[1]))
    }

    pub fn to_complex(&self) -> ComplexFourVector {
        ComplexFourVector(self.0.map(|x| c(x, 0.0)))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|x| -x))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, k: f64) -> FourVector {
        FourVector(self.0.map(|x| x * k))
    }
}

/// Complex four-vector with upper indices: currents and polarisation vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexFourVector(pub [C64; 4]);

impl ComplexFourVector {
    /// Bilinear Minkowski product, no conjugation.
    pub fn dot(&self, other: &ComplexFourVector) -> C64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn dot_real(&self, other: &FourVector) -> C64 {
        self.dot(&other.to_complex())
    }

    pub fn conj(&self) -> ComplexFourVector {
        ComplexFourVector(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, k: C64) -> ComplexFourVector {
        ComplexFourVector(self.0.map(|z| z * k))
    }
}

impl Add for ComplexFourVector {
    type Output = ComplexFourVector;
    fn add(self, o: ComplexFourVector) -> ComplexFourVector {
        ComplexFourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

/// Helicity label of a single particle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Helicity {
    L,
    R,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::L, Helicity::R];

    /// +1 for R, -1 for L.
    pub fn sign(self) -> f64 {
        match self {
            Helicity::L => -1.0,
            Helicity::R => 1.0,
        }
    }

    pub fn flip(self) -> Helicity {
        match self {
            Helicity::L => Helicity::R,
            Helicity::R => Helicity::L,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Helicity::L => 0,
            Helicity::R => 1,
        }
    }
}

/// The gamma matrices of the Dirac representation.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    pub gamma: [Mat4; 4],
    pub gamma5: Mat4,
    pub metric: [f64; 4],
}

static GAMMA: LazyLock<GammaBasis> = LazyLock::new(GammaBasis::dirac);

impl GammaBasis {
    /// Shared, lazily built instance.
    pub fn get() -> &'static GammaBasis {
        &GAMMA
    }

    pub fn dirac() -> GammaBasis {
        let sigma: [[[C64; 2]; 2]; 3] = [
            [[ZERO, ONE], [ONE, ZERO]],
            [[ZERO, -I], [I, ZERO]],
            [[ONE, ZERO], [ZERO, -ONE]],
        ];
        let g0 = Mat4::from_diagonal(&Vec4::new(ONE, ONE, -ONE, -ONE));
        let mut gamma = [g0, Mat4::zeros(), Mat4::zeros(), Mat4::zeros()];
        for (k, s) in sigma.iter().enumerate() {
            let g = &mut gamma[k + 1];
            for i in 0..2 {
                for j in 0..2 {
                    g[(i, j + 2)] = s[i][j];
                    g[(i + 2, j)] = -s[i][j];
                }
            }
        }
        let gamma5 = gamma[0] * gamma[1] * gamma[2] * gamma[3] * I;
        GammaBasis {
            gamma,
            gamma5,
            metric: [1.0, -1.0, -1.0, -1.0],
        }
    }
}

/// `gamma^mu v_mu` for a real vector.
pub fn slash(v: &FourVector) -> Mat4 {
    slash_complex(&v.to_complex())
}

/// `gamma^mu v_mu` for a complex vector (e.g. a polarisation vector).
pub fn slash_complex(v: &ComplexFourVector) -> Mat4 {
    let g = GammaBasis::get();
    let mut out = Mat4::zeros();
    for mu in 0..4 {
        out += g.gamma[mu] * (v.0[mu] * g.metric[mu]);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorKind {
    /// Particle wavefunction `u`.
    Particle,
    /// Antiparticle wavefunction `v`.
    Antiparticle,
}

/// Four-component Dirac spinor with its kinematic labels.
#[derive(Clone, Copy, Debug)]
pub struct DiracSpinor {
    pub components: Vec4,
    pub kind: SpinorKind,
    pub helicity: Helicity,
    pub momentum: FourVector,
    pub mass: f64,
}

impl DiracSpinor {
    /// Row spinor `psi^dagger gamma^0` as a column of its entries.
    pub fn bar(&self) -> Vec4 {
        let p = self.components;
        Vec4::new(p[0].conj(), p[1].conj(), -p[2].conj(), -p[3].conj())
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }
}

/// Two-component helicity eigenspinor along `(theta, phi)`.
pub fn two_spinor(theta: f64, phi: f64, h: Helicity) -> [C64; 2] {
    let (ct, st) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    match h {
        Helicity::R => [c(ct, 0.0), C64::from_polar(st, phi)],
        Helicity::L => [-C64::from_polar(st, -phi), c(ct, 0.0)],
    }
}

fn check_on_shell(mass: f64, p: &FourVector) -> Result<()> {
    if !p.is_finite() {
        return Err(Error::InvalidKinematics(format!("non-finite momentum {:?}", p.0)));
    }
    let e = p.energy();
    if e <= 0.0 {
        return Err(Error::InvalidKinematics(format!("non-positive energy {e}")));
    }
    let violation = (p.square() - mass * mass).abs() / (e * e);
    if violation > MASS_SHELL_TOL {
        return Err(Error::InvalidKinematics(format!(
            "off-shell momentum: p^2 = {}, m^2 = {}",
            p.square(),
            mass * mass
        )));
    }
    Ok(())
}

/// `(sqrt(E+m), sqrt(E-m))` with `sqrt(E-m) = |p|/sqrt(E+m)` to avoid cancellation.
fn energy_roots(mass: f64, p: &FourVector) -> (f64, f64) {
    let plus = (p.energy() + mass).sqrt();
    (plus, p.three_norm() / plus)
}

/// Particle spinor `u(p, h)`.
pub fn u_spinor(mass: f64, momentum: FourVector, helicity: Helicity) -> Result<DiracSpinor> {
    check_on_shell(mass, &momentum)?;
    let (theta, phi) = momentum.angles();
    let chi = two_spinor(theta, phi, helicity);
    let (a, b) = energy_roots(mass, &momentum);
    let lower = b * helicity.sign();
    Ok(DiracSpinor {
        components: Vec4::new(chi[0] * a, chi[1] * a, chi[0] * lower, chi[1] * lower),
        kind: SpinorKind::Particle,
        helicity,
        momentum,
        mass,
    })
}

/// Antiparticle spinor `v(p, h)` for physical helicity `h`.
pub fn v_spinor(mass: f64, momentum: FourVector, helicity: Helicity) -> Result<DiracSpinor> {
    check_on_shell(mass, &momentum)?;
    let (theta, phi) = momentum.angles();
    let chi = two_spinor(theta, phi, helicity.flip());
    let (a, b) = energy_roots(mass, &momentum);
    let upper = -b * helicity.sign();
    Ok(DiracSpinor {
        components: Vec4::new(chi[0] * upper, chi[1] * upper, chi[0] * a, chi[1] * a),
        kind: SpinorKind::Antiparticle,
        helicity,
        momentum,
        mass,
    })
}

/// Circular polarisation vector of a photon.
#[derive(Clone, Copy, Debug)]
pub struct PolarizationVector {
    pub components: ComplexFourVector,
    pub helicity: Helicity,
    pub momentum: FourVector,
}

impl PolarizationVector {
    pub fn conj(&self) -> ComplexFourVector {
        self.components.conj()
    }
}

pub fn photon_polarization(momentum: FourVector, helicity: Helicity) -> Result<PolarizationVector> {
    if !momentum.is_finite() || momentum.energy() <= 0.0 {
        return Err(Error::InvalidKinematics(format!("bad photon momentum {:?}", momentum.0)));
    }
    let e = momentum.energy();
    if momentum.square().abs() > LIGHTLIKE_TOL * e * e {
        return Err(Error::InvalidKinematics(format!(
            "photon momentum is not lightlike: k^2 = {}",
            momentum.square()
        )));
    }
    let (theta, phi) = momentum.angles();
    let (ct, st, cp, sp) = (theta.cos(), theta.sin(), phi.cos(), phi.sin());
    let e_theta = [ct * cp, ct * sp, -st];
    let e_phi = [-sp, cp, 0.0];
    let h = helicity.sign();
    let k = -h / std::f64::consts::SQRT_2;
    let mut comps = [ZERO; 4];
    for i in 0..3 {
        comps[i + 1] = c(e_theta[i], h * e_phi[i]) * k;
    }
    Ok(PolarizationVector {
        components: ComplexFourVector(comps),
        helicity,
        momentum,
    })
}

/// `bar_psi Gamma psi` where `bar_psi = bar.components^dagger gamma^0`.
pub fn bilinear(bar: &DiracSpinor, matrix: &Mat4, spinor: &DiracSpinor) -> C64 {
    sandwich(&bar.bar(), matrix, &spinor.components)
}

/// `sum_ij barrow_i M_ij col_j` with `barrow` already conjugated.
pub(crate) fn sandwich(barrow: &Vec4, m: &Mat4, col: &Vec4) -> C64 {
    let mc = m * col;
    barrow.iter().zip(mc.iter()).map(|(a, b)| a * b).sum()
}

/// Vector current `bar_psi gamma^mu psi` (upper index).
pub fn current(bar: &DiracSpinor, spinor: &DiracSpinor) -> ComplexFourVector {
    let g = GammaBasis::get();
    let row = bar.bar();
    ComplexFourVector(std::array::from_fn(|mu| sandwich(&row, &g.gamma[mu], &spinor.components)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius;
    use std::f64::consts::{FRAC_PI_2, PI};

    const M: f64 = 0.510_998_95;

    fn spin_operator_along(theta: f64, phi: f64) -> Mat4 {
        // Sigma . n = diag(sigma . n, sigma . n)
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let s = [
            [c(n[2], 0.0), c(n[0], -n[1])],
            [c(n[0], n[1]), c(-n[2], 0.0)],
        ];
        let mut out = Mat4::zeros();
        for b in [0, 2] {
            for i in 0..2 {
                for j in 0..2 {
                    out[(b + i, b + j)] = s[i][j];
                }
            }
        }
        out
    }

    fn sample_momenta() -> Vec<(f64, FourVector)> {
        let mut v = Vec::new();
        for &(m, p) in &[(M, 0.3), (M, 1e-3), (105.66, 40.0), (M, 5e3)] {
            for &(th, ph) in &[(0.0, 0.0), (0.7, 0.0), (PI, 0.0), (2.1, 1.3), (4.0, 0.0), (1.1, -2.5)] {
                v.push((m, FourVector::on_shell(m, p, th, ph)));
            }
        }
        v
    }

    #[test]
    fn clifford_algebra() {
        let g = GammaBasis::get();
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
                let expect = if mu == nu { Mat4::identity() * c(2.0 * g.metric[mu], 0.0) } else { Mat4::zeros() };
                assert_eq!(anti, expect, "mu={mu} nu={nu}");
            }
        }
        assert_eq!(g.gamma[0].adjoint(), g.gamma[0]);
        for i in 1..4 {
            assert_eq!(g.gamma[i].adjoint(), -g.gamma[i]);
        }
        assert_eq!(g.gamma5 * g.gamma5, Mat4::identity());
    }

    #[test]
    fn slash_identities() {
        let p = FourVector::new(3.0, 0.4, -1.2, 2.0);
        let k = FourVector::new(1.5, -0.3, 0.2, 0.9);
        let ps = slash(&p);
        assert!(frobenius(&(ps * ps - Mat4::identity() * c(p.square(), 0.0))) < 1e-12);
        assert_eq!(slash(&FourVector::default()), Mat4::zeros());
        assert!(frobenius(&(slash(&(p + k)) - ps - slash(&k))) < 1e-14);
    }

    #[test]
    fn u_spinor_invariants() {
        for (m, p) in sample_momenta() {
            let (th, ph) = p.angles();
            for h in Helicity::BOTH {
                let u = u_spinor(m, p, h).unwrap();
                let scale = u.norm();
                let dirac = (slash(&p) - Mat4::identity() * c(m, 0.0)) * u.components;
                assert!(dirac.norm() < 1e-9 * scale.max(1.0));
                let n = bilinear(&u, &Mat4::identity(), &u);
                assert!((n - c(2.0 * m, 0.0)).norm() < 1e-9 * p.energy());
                let j0 = bilinear(&u, &GammaBasis::get().gamma[0], &u);
                assert!((j0 - c(2.0 * p.energy(), 0.0)).norm() < 1e-9 * p.energy());
                if p.three_norm() > 0.0 {
                    let hel = spin_operator_along(th, ph) * u.components;
                    assert!((hel - u.components * c(h.sign(), 0.0)).norm() < 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn v_spinor_invariants() {
        for (m, p) in sample_momenta() {
            let (th, ph) = p.angles();
            for h in Helicity::BOTH {
                let v = v_spinor(m, p, h).unwrap();
                let scale = v.norm();
                let dirac = (slash(&p) + Mat4::identity() * c(m, 0.0)) * v.components;
                assert!(dirac.norm() < 1e-9 * scale.max(1.0));
                let n = bilinear(&v, &Mat4::identity(), &v);
                assert!((n + c(2.0 * m, 0.0)).norm() < 1e-9 * p.energy());
                // Physical helicity h: the spin eigenvalue of v is opposite.
                if p.three_norm() > 0.0 {
                    let hel = spin_operator_along(th, ph) * v.components;
                    assert!((hel + v.components * c(h.sign(), 0.0)).norm() < 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn completeness_relations() {
        for (m, p) in sample_momenta() {
            let mut su = Mat4::zeros();
            let mut sv = Mat4::zeros();
            for h in Helicity::BOTH {
                let u = u_spinor(m, p, h).unwrap();
                let v = v_spinor(m, p, h).unwrap();
                su += u.components * u.bar().transpose();
                sv += v.components * v.bar().transpose();
            }
            let id = Mat4::identity() * c(m, 0.0);
            let tol = 1e-9 * p.energy();
            assert!((su - slash(&p) - id).iter().all(|z| z.norm() < tol));
            assert!((sv - slash(&p) + id).iter().all(|z| z.norm() < tol));
        }
    }

    #[test]
    fn in_plane_spinors_are_rotated_z_spinors() {
        // exp(-i sigma_y theta / 2) acting on the +z helicity spinors.
        for &theta in &[0.3, FRAC_PI_2, 2.5, PI, 3.7, 5.9] {
            let (ct, st) = ((0.5 * theta).cos(), (0.5 * theta).sin());
            let up = [c(1.0, 0.0), ZERO];
            let down = [ZERO, c(1.0, 0.0)];
            let rot = |s: [C64; 2]| [s[0] * ct - s[1] * st, s[0] * st + s[1] * ct];
            assert_eq!(two_spinor(theta, 0.0, Helicity::R), rot(up));
            assert_eq!(two_spinor(theta, 0.0, Helicity::L), rot(down));
        }
    }

    #[test]
    fn massless_limit_u_and_v_align() {
        let m = 1e-8;
        let p = FourVector::on_shell(m, 2.0, 0.0, 0.0);
        for h in Helicity::BOTH {
            let u = u_spinor(m, p, h).unwrap().components;
            let v = v_spinor(m, p, h.flip()).unwrap().components;
            // |<u, v>| = |u||v| up to O(m/E) corrections.
            let overlap = u.dotc(&v).norm();
            assert!((overlap - u.norm() * v.norm()).abs() < 1e-6 * u.norm() * v.norm());
        }
    }

    #[test]
    fn off_shell_rejected() {
        let p = FourVector::new(1.0, 0.0, 0.0, 0.2);
        assert!(matches!(u_spinor(M, p, Helicity::L), Err(Error::InvalidKinematics(_))));
        assert!(matches!(v_spinor(M, p, Helicity::R), Err(Error::InvalidKinematics(_))));
    }

    #[test]
    fn photon_polarization_invariants() {
        let kz = FourVector::new(2.0, 0.0, 0.0, 2.0);
        let r = photon_polarization(kz, Helicity::R).unwrap();
        let l = photon_polarization(kz, Helicity::L).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let close = |a: [C64; 4], b: [C64; 4]| a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-15);
        assert!(close(r.components.0, [ZERO, c(-s, 0.0), c(0.0, -s), ZERO]));
        assert!(close(l.components.0, [ZERO, c(s, 0.0), c(0.0, -s), ZERO]));

        for &(th, ph) in &[(0.0, 0.0), (0.8, 0.0), (PI, 0.0), (2.0, 0.7), (4.4, 0.0)] {
            let k = FourVector::on_shell(0.0, 3.0, th, ph);
            for h in Helicity::BOTH {
                let e = photon_polarization(k, h).unwrap();
                assert!(e.components.dot_real(&k).norm() < 1e-12);
                assert!((e.components.dot(&e.conj()) + ONE).norm() < 1e-12);
                // Conjugation flips helicity up to a phase.
                let other = photon_polarization(k, h.flip()).unwrap();
                let overlap = e.conj().dot(&other.conj()).norm();
                assert!((overlap - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn photon_polarization_matches_explicit_rotation() {
        // R_y(theta) applied to the +z polarisation vectors.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for &theta in &[0.4, 1.9, PI, 5.2] {
            let k = FourVector::on_shell(0.0, 1.0, theta, 0.0);
            for h in Helicity::BOTH {
                let hs = h.sign();
                let ez = [c(-hs * s, 0.0), c(0.0, -s), ZERO];
                let rot = [
                    ez[0] * theta.cos() + ez[2] * theta.sin(),
                    ez[1],
                    -ez[0] * theta.sin() + ez[2] * theta.cos(),
                ];
                let e = photon_polarization(k, h).unwrap().components.0;
                for i in 0..3 {
                    assert!((e[i + 1] - rot[i]).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn massive_photon_rejected() {
        let k = FourVector::new(2.0, 0.0, 0.0, 1.0);
        assert!(photon_polarization(k, Helicity::R).is_err());
    }
}
