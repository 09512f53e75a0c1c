//! Small fixed-size complex linear algebra: 4x4 matrices and a cyclic Jacobi
//! eigensolver for Hermitian input.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative off-diagonal tolerance at which a Jacobi sweep loop stops.
pub const JACOBI_TOL: f64 = 1e-13;
/// Sweep budget before the solver reports non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Largest tolerated anti-Hermitian part, scaled by `max(1, |H|)`.
pub const HERMITICITY_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn frobenius(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Frobenius norm of `H - H^dagger`.
pub fn hermiticity_defect(m: &Mat4) -> f64 {
    frobenius(&(m - m.adjoint()))
}

/// Outer product `|a><b|`.
pub fn outer(a: &Vec4, b: &Vec4) -> Mat4 {
    a * b.adjoint()
}

/// Eigenvalues of a 4x4 Hermitian matrix in ascending order.
///
/// Cyclic Jacobi: every off-diagonal pivot is rotated to zero with a unitary
/// `U = D J`, where `D` removes the pivot phase and `J` is the real Givens
/// rotation of the resulting symmetric 2x2 block. Sweeps continue until the
/// off-diagonal Frobenius norm drops below `JACOBI_TOL * |H|`.
pub fn hermitian_eigenvalues(h: &Mat4) -> Result<[f64; 4]> {
    let norm = frobenius(h);
    let defect = hermiticity_defect(h);
    if !norm.is_finite() {
        return Err(Error::NotHermitian(f64::NAN));
    }
    if defect > HERMITICITY_TOL * norm.max(1.0) {
        return Err(Error::NotHermitian(defect));
    }

    // Work on the Hermitian part so round-off asymmetry cannot accumulate.
    let mut a = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
    }

    let target = JACOBI_TOL * norm;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target || norm == 0.0 {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn off_norm(a: &[[C64; 4]; 4]) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut [[C64; 4]; 4], p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[p][p].re;
    let aqq = a[q][q].re;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    // U = D J with D = diag(.., 1 @p, e^{-i phi} @q, ..).
    let u_pp = c(cs, 0.0);
    let u_pq = c(sn, 0.0);
    let u_qp = -phase.conj() * sn;
    let u_qq = phase.conj() * cs;

    for row in a.iter_mut() {
        let kp = row[p];
        let kq = row[q];
        row[p] = kp * u_pp + kq * u_qp;
        row[q] = kp * u_pq + kq * u_qq;
    }
    for k in 0..4 {
        let pk = a[p][k];
        let qk = a[q][k];
        a[p][k] = u_pp.conj() * pk + u_qp.conj() * qk;
        a[q][k] = u_pq.conj() * pk + u_qq.conj() * qk;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p] = c(a[p][p].re, 0.0);
    a[q][q] = c(a[q][q].re, 0.0);
}
