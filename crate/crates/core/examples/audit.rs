//! Oracle agreement and symmetry audit for every process.

use qedtangle::config::default_grid;
use qedtangle::scan::{oracle_audit, run_scan, symmetry_partner, Axis, ScanConfig};
use qedtangle::{Constants, InitialState, ProcessKind};

fn main() -> qedtangle::Result<()> {
    let k = Constants::default();
    for process in ProcessKind::ALL {
        let checks = oracle_audit(&k, process, 40)?;
        let worst = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
        print!("{:<14} spin sum vs trace formula: worst {worst:.1e}", process.name());
        if symmetry_partner(process, 0.0).is_some() {
            let (p, _) = default_grid(process);
            let cfg = ScanConfig::new(process, InitialState::unpolarized(), Axis { count: 30, ..p }, Axis::full_turn(30));
            print!(", symmetry violations: {}", run_scan(&cfg)?.warnings.len());
        }
        println!();
    }
    Ok(())
}
