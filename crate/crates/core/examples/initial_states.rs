//! Compton scattering fed with different helicity preparations.

use std::f64::consts::PI;

use qedtangle::scan::{run_scan, Axis, ScanConfig};
use qedtangle::{evaluate_point, Constants, Helicity, InitialState, ProcessKind};

fn main() -> qedtangle::Result<()> {
    let k = Constants::default();
    let inputs = [
        InitialState::unpolarized(),
        InitialState::pure(Helicity::L, Helicity::L),
        InitialState::werner_symmetric(),
        "diag:0.7,0.1,0.1,0.1".parse()?,
    ];
    for init in &inputs {
        let cfg = ScanConfig::new(ProcessKind::Compton, init.clone(), Axis::log(0.01, 100.0, 60), Axis::full_turn(60));
        let res = run_scan(&cfg)?;
        let ent = res.rows.iter().filter(|r| r.is_entangled()).count();
        let best = res.rows.iter().filter_map(|r| r.measures).map(|m| m.log_negativity).fold(0.0, f64::max);
        let r = evaluate_point(&k, ProcessKind::Compton, init, 0.1, 2.0, 1e-10)?;
        println!(
            "{:<22} entangled {ent:>4}/{}  max E_N {best:.4}  at (0.1 MeV, 2 rad): E_N {:.4}",
            init.label(),
            res.rows.len(),
            r.report.log_negativity
        );
    }
    let r = evaluate_point(&k, ProcessKind::Compton, &inputs[2], 1e4, PI - 0.01, 1e-10)?;
    println!("werner input at 10 GeV near backscatter: closest Bell {:?}", r.report.closest_bell_local);
    Ok(())
}
