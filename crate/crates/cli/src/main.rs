use std::f64::consts::PI;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qedtangle::config::ScanSettings;
use qedtangle::kinematics::ProcessKind;
use qedtangle::output::{emit_plot_script, write_csv};
use qedtangle::qstate::InitialState;
use qedtangle::scan::{self, cross_section_check, dsigma_dt, find_threshold, run_scan, Axis, ScanConfig};
use qedtangle::{evaluate_point, oracle, Error, Result};

#[derive(Parser)]
#[command(name = "qedtangle", version, about = "Helicity entanglement in tree-level QED scattering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a (p, theta) grid and write CSV rows plus a gnuplot script
    Scan(ScanArgs),
    /// Bisect for the momentum where the output state becomes entangled
    Threshold(ThresholdArgs),
    /// Full report at one kinematic point
    Point(PointArgs),
    /// Unpolarized differential cross section at one point
    Xsec(PointArgs),
    /// Compare spin sums to trace formulas and check angular symmetries
    Audit(AuditArgs),
}

#[derive(Args, Clone, Default)]
struct Common {
    #[arg(long)]
    process: Option<ProcessKind>,
    /// unpolarized | ll | lr | rl | rr | werner | diag:w1,w2,w3,w4
    #[arg(long)]
    initial: Option<String>,
    /// PPT tolerance on the smallest partial-transpose eigenvalue
    #[arg(long)]
    tol: Option<f64>,
    /// Flat key = value file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    p_min: Option<f64>,
    #[arg(long)]
    p_max: Option<f64>,
    #[arg(long)]
    p_steps: Option<usize>,
    /// Logarithmic momentum spacing
    #[arg(long)]
    p_log: bool,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    #[arg(long)]
    theta_steps: Option<usize>,
    /// CSV destination; stdout if absent. A `.gp` script is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0: one per core)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = PI / 2.0)]
    theta: f64,
    /// Lower end of the momentum bracket [MeV]
    #[arg(long)]
    p_min: f64,
    /// Upper end of the momentum bracket [MeV]
    #[arg(long)]
    p_max: f64,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// COM momentum [MeV]
    #[arg(long)]
    p: f64,
    #[arg(long)]
    theta: f64,
}

#[derive(Args)]
struct AuditArgs {
    /// Restrict to one process
    #[arg(long)]
    process: Option<ProcessKind>,
    /// Oracle comparison points per process
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Grid size per axis for the symmetry audit
    #[arg(long, default_value_t = 24)]
    grid: usize,
}

fn settings(common: &Common) -> Result<ScanSettings> {
    let file = match &common.config {
        Some(path) => ScanSettings::load(path)?,
        None => ScanSettings::default(),
    };
    Ok(file.overlay(ScanSettings {
        process: common.process,
        initial: common.initial.clone(),
        tol: common.tol,
        ..Default::default()
    }))
}

/// Process, initial state and tolerance for the single-point commands.
fn point_setup(common: &Common) -> Result<ScanConfig> {
    let s = settings(common)?;
    let process = s.process.ok_or_else(|| Error::Config("no process given".into()))?;
    let initial: InitialState = s.initial.as_deref().unwrap_or("unpolarized").parse()?;
    let mut cfg = ScanConfig::new(process, initial, Axis::linear(1.0, 1.0, 1), Axis::linear(0.0, 0.0, 1));
    if let Some(tol) = s.tol {
        cfg.tol = tol;
    }
    Ok(cfg)
}

fn cmd_scan(a: ScanArgs) -> Result<()> {
    let cli = ScanSettings {
        p_min: a.p_min,
        p_max: a.p_max,
        p_steps: a.p_steps,
        p_log: a.p_log.then_some(true),
        theta_min: a.theta_min,
        theta_max: a.theta_max,
        theta_steps: a.theta_steps,
        out: a.out,
        jobs: a.jobs,
        ..Default::default()
    };
    let cfg = settings(&a.common)?.overlay(cli).into_config()?;
    // Fail on an unwritable destination before spending time on the grid.
    let file = match cfg.out.as_deref() {
        Some(path) => Some(
            std::fs::File::create(path)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    let result = run_scan(&cfg)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    match (&cfg.out, file) {
        (Some(path), Some(f)) => {
            write_csv(&result.rows, io::BufWriter::new(f))?;
            let script = path.with_extension("gp");
            emit_plot_script(&result.rows, Path::new(path.file_name().unwrap_or(path.as_os_str())), &script)?;
            eprintln!("wrote {} and {}", path.display(), script.display());
        }
        _ => write_csv(&result.rows, io::stdout().lock())?,
    }
    let entangled = result.rows.iter().filter(|r| r.is_entangled()).count();
    eprintln!(
        "{} rows, {} entangled, {} symmetry warnings",
        result.rows.len(),
        entangled,
        result.warnings.len()
    );
    Ok(())
}

fn cmd_threshold(a: ThresholdArgs) -> Result<()> {
    let cfg = point_setup(&a.common)?;
    let p = find_threshold(&cfg.constants, cfg.process, &cfg.initial, a.theta, (a.p_min, a.p_max))?;
    println!("{p:.9}");
    Ok(())
}

fn cmd_point(a: PointArgs) -> Result<()> {
    let cfg = point_setup(&a.common)?;
    let r = evaluate_point(&cfg.constants, cfg.process, &cfg.initial, a.p, a.theta, cfg.tol)?;
    let rep = &r.report;
    let mut out = io::stdout().lock();
    writeln!(out, "process        {}", cfg.process)?;
    writeln!(out, "initial        {}", cfg.initial.label())?;
    writeln!(out, "p, theta       {} MeV, {} rad", a.p, a.theta)?;
    writeln!(out, "s, t, u        {:.9e} {:.9e} {:.9e} MeV^2", r.kin.s, r.kin.t, r.kin.u)?;
    writeln!(out, "rho_out (LL, LR, RL, RR)")?;
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| {
                let z = r.rho.matrix()[(i, j)];
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        writeln!(out, "  {}", row.join("  "))?;
    }
    writeln!(out, "PT eigenvalues {:?}", rep.pt_eigenvalues)?;
    writeln!(out, "negativity     {:.12}", rep.negativity)?;
    writeln!(out, "log negativity {:.12}", rep.log_negativity)?;
    writeln!(out, "entropy        {:.12}", rep.entropy)?;
    writeln!(out, "purity         {:.12}", rep.purity)?;
    writeln!(out, "entangled      {}", rep.entangled)?;
    writeln!(out, "switching      {}", rep.switching_potential)?;
    writeln!(out, "closest Bell   {} ({:.9})", rep.closest_bell.0, rep.closest_bell.1)?;
    writeln!(out, "  local phases {} ({:.9})", rep.closest_bell_local.0, rep.closest_bell_local.1)?;
    Ok(())
}

fn cmd_xsec(a: PointArgs) -> Result<()> {
    let cfg = point_setup(&a.common)?;
    let k = cfg.constants;
    let kin = qedtangle::kinematics::build_kinematics_with(&k, cfg.process, a.p, a.theta)?;
    // 1 MeV^-2 = 389.379 microbarn
    let hbarc2_ub = 389.379_372e0;
    let dsdo = cross_section_check(&kin)?;
    println!("dsigma/dOmega  {dsdo:.9e} MeV^-2  ({:.9e} ub/sr)", dsdo * hbarc2_ub);
    if cfg.process == ProcessKind::Compton {
        let ours = dsigma_dt(&kin)?;
        let kn = oracle::klein_nishina_dsigma_dt(kin.s, kin.t, k.electron_mass, k.alpha);
        println!("dsigma/dt      {ours:.9e} MeV^-4");
        println!("klein-nishina  {kn:.9e} MeV^-4  (rel. diff {:.3e})", (ours - kn).abs() / kn);
    }
    if cfg.process == ProcessKind::Moller {
        let nr = oracle::moller_nonrelativistic(a.p, a.theta, k.electron_mass, k.alpha);
        println!("low-energy     {nr:.9e} MeV^-2  (ratio {:.6})", dsdo / nr);
    }
    Ok(())
}

fn cmd_audit(a: AuditArgs) -> Result<bool> {
    let k = qedtangle::Constants::default();
    let processes: Vec<ProcessKind> = a.process.map_or_else(|| ProcessKind::ALL.to_vec(), |p| vec![p]);
    let mut ok = true;
    for process in processes {
        let checks = scan::oracle_audit(&k, process, a.points)?;
        let worst = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
        let pass = worst < 1e-8;
        ok &= pass;
        println!(
            "{:<14} oracle    {} points, worst rel. error {worst:.2e}  {}",
            process.name(),
            checks.len(),
            if pass { "ok" } else { "FAIL" }
        );
        if scan::symmetry_partner(process, 0.0).is_none() {
            continue;
        }
        let (p, _) = qedtangle::config::default_grid(process);
        let cfg = ScanConfig::new(
            process,
            InitialState::unpolarized(),
            Axis { count: a.grid, ..p },
            Axis::full_turn(a.grid),
        );
        let result = run_scan(&cfg)?;
        ok &= result.warnings.is_empty();
        println!(
            "{:<14} symmetry  {} points, {} violations  {}",
            process.name(),
            result.rows.len(),
            result.warnings.len(),
            if result.warnings.is_empty() { "ok" } else { "FAIL" }
        );
        for w in result.warnings.iter().take(5) {
            println!("    {w}");
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(a) => cmd_scan(a).map(|_| true),
        Command::Threshold(a) => cmd_threshold(a).map(|_| true),
        Command::Point(a) => cmd_point(a).map(|_| true),
        Command::Xsec(a) => cmd_xsec(a).map(|_| true),
        Command::Audit(a) => cmd_audit(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
