//! Helicity spinors and currents: checks the Dirac equation and the
//! helicity eigenvalue for an electron, then prints a vector current.

use qedtangle::dirac::{current, slash, u_spinor, v_spinor, FourVector, GammaBasis};
use qedtangle::linalg::{c, Mat4};
use qedtangle::{Constants, Helicity};

fn main() -> qedtangle::Result<()> {
    let m = Constants::default().electron_mass;
    let p = FourVector::on_shell(m, 0.8, 1.1, 0.4);
    let pslash = slash(&p);

    for h in Helicity::BOTH {
        let u = u_spinor(m, p, h)?;
        let v = v_spinor(m, p, h)?;
        let du = (pslash - Mat4::identity() * c(m, 0.0)) * u.components;
        let dv = (pslash + Mat4::identity() * c(m, 0.0)) * v.components;
        println!(
            "{h:?}: |(pslash - m) u| = {:.1e}, |(pslash + m) v| = {:.1e}, ubar u = {:.6} (2m = {:.6})",
            du.norm(),
            dv.norm(),
            (u.bar().transpose() * u.components)[0].re,
            2.0 * m
        );
    }

    let u = u_spinor(m, p, Helicity::L)?;
    let j = current(&u, &u);
    println!("ubar gamma^mu u = {:?}", j.0.map(|z| (z.re * 1e6).round() / 1e6));
    println!("2 p^mu          = {:?}", p.0.map(|x| (2.0 * x * 1e6).round() / 1e6));
    println!("gamma5^2 = 1: {}", (GammaBasis::get().gamma5 * GammaBasis::get().gamma5 - Mat4::identity()).norm() < 1e-15);
    Ok(())
}
