//! Møller entanglement map over (p, theta): writes CSV plus a gnuplot script
//! into the system temp directory and compares with the analytic region.

use std::path::PathBuf;

use qedtangle::output::{emit_csv, emit_plot_script};
use qedtangle::scan::{run_scan, Axis, ScanConfig};
use qedtangle::{Constants, InitialState, ProcessKind};

fn analytic(p: f64, theta: f64, m: f64) -> bool {
    let c2 = (2.0 * theta).cos();
    if c2 >= -1.0 / 3.0 {
        return false;
    }
    let num = ((c2 - 9.0) * (3.0 * c2 + 1.0)).sqrt() * theta.sin().abs() - 6.0 * c2 - 2.0;
    let den = 28.0 * c2 + (4.0 * theta).cos() + 35.0;
    p < 2.0 * m * (num / den).sqrt()
}

fn main() -> qedtangle::Result<()> {
    let cfg = ScanConfig::new(
        ProcessKind::Moller,
        InitialState::unpolarized(),
        Axis::linear(0.01, 3.0, 120),
        Axis::full_turn(120),
    );
    let res = run_scan(&cfg)?;
    let m = Constants::default().electron_mass;
    let entangled = res.rows.iter().filter(|r| r.is_entangled()).count();
    let mismatched = res.rows.iter().filter(|r| r.is_entangled() != analytic(r.p, r.theta, m)).count();
    println!("{} points, {entangled} entangled, {mismatched} differ from the closed form", res.rows.len());
    println!("symmetry warnings: {}", res.warnings.len());

    let dir = std::env::temp_dir();
    let csv = dir.join("moller_map.csv");
    emit_csv(&res.rows, &csv)?;
    emit_plot_script(&res.rows, &PathBuf::from("moller_map.csv"), &dir.join("moller_map.gp"))?;
    println!("wrote {} (plot with: cd {} && gnuplot -p moller_map.gp)", csv.display(), dir.display());
    Ok(())
}
