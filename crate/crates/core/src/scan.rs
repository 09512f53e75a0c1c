//! Grid sweeps, entanglement thresholds and validation checks.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::amplitudes::amplitude;
use crate::constants::Constants;
use crate::entanglement::{analyze_with_threshold, partial_transpose, EntanglementReport, DEFAULT_PPT_TOL};
use crate::error::{Error, Result};
use crate::kinematics::{build_kinematics_with, KinematicPoint, ProcessKind};
use crate::linalg::hermitian_eigenvalues;
use crate::oracle;
use crate::pipeline::output_state;
use crate::qstate::{InitialKind, InitialState};

/// Points closer than this to a singular ray get moved off it.
pub const POLE_NUDGE_TOL: f64 = 1e-9;
/// Largest tolerated measure difference between symmetry partners.
pub const SYMMETRY_TOL: f64 = 1e-8;
/// Relative bracket width at which bisection stops.
pub const THRESHOLD_REL_WIDTH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One grid axis. `closed = false` drops the upper endpoint, which is what
/// a periodic angle wants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
    pub closed: bool,
}

impl Axis {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count, spacing: Spacing::Linear, closed: true }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count, spacing: Spacing::Log, closed: true }
    }

    /// `count` points on `[min, max)`.
    pub fn half_open(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count, spacing: Spacing::Linear, closed: false }
    }

    /// The full turn `[0, 2 pi)`.
    pub fn full_turn(count: usize) -> Self {
        Axis::half_open(0.0, 2.0 * PI, count)
    }

    fn validate(&self, what: &str) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config(format!("{what} range must be finite")));
        }
        if self.count == 0 {
            return Err(Error::Config(format!("{what} needs at least one point")));
        }
        if self.count >= 2 && self.min >= self.max {
            return Err(Error::Config(format!("{what} range needs min < max, got [{}, {}]", self.min, self.max)));
        }
        if self.count == 1 && self.min > self.max {
            return Err(Error::Config(format!("{what} range needs min <= max")));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::Config(format!("log-spaced {what} needs min > 0")));
        }
        Ok(())
    }

    /// Spacing between neighbours in the axis' own variable (log for log axes).
    fn step(&self) -> f64 {
        let intervals = if self.closed { self.count.saturating_sub(1) } else { self.count };
        if intervals == 0 {
            return 0.0;
        }
        match self.spacing {
            Spacing::Linear => (self.max - self.min) / intervals as f64,
            Spacing::Log => (self.max / self.min).ln() / intervals as f64,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.count)
            .map(|i| {
                let last = self.closed && i + 1 == self.count && self.count > 1;
                match (self.spacing, last) {
                    (_, true) => self.max,
                    (Spacing::Linear, false) => self.min + h * i as f64,
                    (Spacing::Log, false) => self.min * (h * i as f64).exp(),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub process: ProcessKind,
    pub initial: InitialState,
    pub p_range: Axis,
    pub theta_range: Axis,
    /// PPT tolerance: entangled iff the smallest PT eigenvalue is below `-tol`.
    pub tol: f64,
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub constants: Constants,
}

impl ScanConfig {
    pub fn new(process: ProcessKind, initial: InitialState, p_range: Axis, theta_range: Axis) -> Self {
        ScanConfig {
            process,
            initial,
            p_range,
            theta_range,
            tol: DEFAULT_PPT_TOL,
            out: None,
            jobs: 0,
            constants: Constants::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.p_range.validate("p")?;
        self.theta_range.validate("theta")?;
        if self.p_range.min <= 0.0 {
            return Err(Error::Config(format!("p_min must be positive, got {}", self.p_range.min)));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol must be a nonnegative number, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// Moved off a singular ray by half a grid step; measures refer to the moved angle.
    Nudged,
    Divergent,
    BelowThreshold,
    /// The filtered outgoing state has zero norm.
    Unfilterable,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Nudged => "nudged",
            RowStatus::Divergent => "divergent",
            RowStatus::BelowThreshold => "below-threshold",
            RowStatus::Unfilterable => "unfilterable",
        }
    }

    pub fn has_measures(self) -> bool {
        matches!(self, RowStatus::Ok | RowStatus::Nudged)
    }
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RowStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ok" => RowStatus::Ok,
            "nudged" => RowStatus::Nudged,
            "divergent" => RowStatus::Divergent,
            "below-threshold" => RowStatus::BelowThreshold,
            "unfilterable" => RowStatus::Unfilterable,
            _ => return Err(Error::Config(format!("unknown row status '{s}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measures {
    pub min_pt_eigenvalue: f64,
    pub negativity: f64,
    pub log_negativity: f64,
    pub entropy: f64,
    pub entangled: bool,
    pub switching: bool,
}

impl From<&EntanglementReport> for Measures {
    fn from(r: &EntanglementReport) -> Self {
        Measures {
            min_pt_eigenvalue: r.min_pt_eigenvalue(),
            negativity: r.negativity,
            log_negativity: r.log_negativity,
            entropy: r.entropy,
            entangled: r.entangled,
            switching: r.switching_potential,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub process: ProcessKind,
    pub initial: String,
    pub p: f64,
    pub theta: f64,
    pub status: RowStatus,
    /// Present exactly when `status.has_measures()`.
    pub measures: Option<Measures>,
}

impl ScanRow {
    pub fn is_entangled(&self) -> bool {
        self.measures.is_some_and(|m| m.entangled)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub warnings: Vec<String>,
}

/// Distance from `theta` to the nearest singular ray, mod 2 pi.
fn pole_distance(process: ProcessKind, theta: f64) -> f64 {
    process
        .singular_angles()
        .iter()
        .map(|a| {
            let d = (theta - a).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Shift a grid angle off a pole by half a step, inward if the outward move
/// would leave the range.
fn nudge(process: ProcessKind, axis: &Axis, theta: f64) -> (f64, bool) {
    if pole_distance(process, theta) > POLE_NUDGE_TOL {
        return (theta, false);
    }
    let half = if axis.count > 1 { 0.5 * axis.step() } else { 1e-6 };
    let up = theta + half;
    let limit_ok = if axis.closed { up <= axis.max } else { up < axis.max };
    (if limit_ok || axis.count == 1 { up } else { theta - half }, true)
}

fn classify(err: Error) -> Result<RowStatus> {
    match err {
        Error::Divergent(_) => Ok(RowStatus::Divergent),
        Error::BelowThreshold { .. } => Ok(RowStatus::BelowThreshold),
        Error::Unfilterable(_) => Ok(RowStatus::Unfilterable),
        other => Err(other),
    }
}

/// Evaluate one grid point into a row, turning expected failures into statuses.
pub fn evaluate_row(cfg: &ScanConfig, p: f64, theta: f64) -> Result<ScanRow> {
    let (theta_eval, nudged) = nudge(cfg.process, &cfg.theta_range, theta);
    let row = |status, measures| ScanRow {
        process: cfg.process,
        initial: cfg.initial.label(),
        p,
        theta: theta_eval,
        status,
        measures,
    };
    let analysed = output_state(&cfg.constants, cfg.process, &cfg.initial, p, theta_eval)
        .and_then(|rho| analyze_with_threshold(&rho, cfg.tol, cfg.constants.alpha_cubed()));
    match analysed {
        Ok(report) => {
            let status = if nudged { RowStatus::Nudged } else { RowStatus::Ok };
            Ok(row(status, Some(Measures::from(&report))))
        }
        Err(e) => Ok(row(classify(e)?, None)),
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

/// Sweep the grid, theta-major: all `p` values for the first angle, then the next.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanResult> {
    cfg.validate()?;
    let ps = cfg.p_range.values();
    let thetas = cfg.theta_range.values();
    let points: Vec<(f64, f64)> = thetas.iter().flat_map(|&t| ps.iter().map(move |&p| (p, t))).collect();

    let rows = with_pool(cfg.jobs, || {
        points
            .par_iter()
            .map(|&(p, t)| evaluate_row(cfg, p, t))
            .collect::<Result<Vec<_>>>()
    })??;
    let warnings = symmetry_audit(cfg, &rows)?;
    Ok(ScanResult { rows, warnings })
}

/// The partner angle under the process' discrete symmetry, if it has one
/// for unpolarized input.
pub fn symmetry_partner(process: ProcessKind, theta: f64) -> Option<f64> {
    match process {
        ProcessKind::Moller | ProcessKind::MuonPair | ProcessKind::Annihilation => Some(theta + PI),
        ProcessKind::Bhabha => Some(-theta),
        ProcessKind::ElectronMuon | ProcessKind::Compton => None,
    }
}

/// Re-evaluate every measured row at its symmetry partner and report
/// measure differences above [`SYMMETRY_TOL`].
pub fn symmetry_audit(cfg: &ScanConfig, rows: &[ScanRow]) -> Result<Vec<String>> {
    if cfg.initial.kind != InitialKind::Unpolarized || symmetry_partner(cfg.process, 0.0).is_none() {
        return Ok(Vec::new());
    }
    let audited = with_pool(cfg.jobs, || {
        rows.par_iter()
            .filter(|r| r.status.has_measures())
            .map(|r| -> Result<Option<String>> {
                let partner = symmetry_partner(cfg.process, r.theta).unwrap_or(r.theta);
                let mirrored = output_state(&cfg.constants, cfg.process, &cfg.initial, r.p, partner)
                    .and_then(|rho| analyze_with_threshold(&rho, cfg.tol, cfg.constants.alpha_cubed()));
                let m = r.measures.expect("measured row");
                let other = match mirrored {
                    Ok(rep) => Measures::from(&rep),
                    Err(e) => {
                        let status = classify(e)?;
                        return Ok(Some(format!(
                            "{}: p = {} MeV, theta = {} rad is {} but its partner {} rad is {}",
                            cfg.process, r.p, r.theta, r.status, partner, status
                        )));
                    }
                };
                let diff = [
                    (m.min_pt_eigenvalue - other.min_pt_eigenvalue).abs(),
                    (m.negativity - other.negativity).abs(),
                    (m.log_negativity - other.log_negativity).abs(),
                    (m.entropy - other.entropy).abs(),
                ]
                .into_iter()
                .fold(0.0, f64::max);
                Ok((diff > SYMMETRY_TOL).then(|| {
                    format!(
                        "{}: symmetry violated by {diff:e} at p = {} MeV, theta = {} rad (partner {} rad)",
                        cfg.process, r.p, r.theta, partner
                    )
                }))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(audited.into_iter().flatten().collect())
}

/// Smallest eigenvalue of the partial transpose of the output state.
pub fn min_pt_eigenvalue(
    constants: &Constants,
    process: ProcessKind,
    initial: &InitialState,
    p: f64,
    theta: f64,
) -> Result<f64> {
    let rho = output_state(constants, process, initial, p, theta)?;
    Ok(hermitian_eigenvalues(&partial_transpose(&rho))?[0])
}

/// Bisect for the momentum where the smallest PT eigenvalue changes sign.
pub fn find_threshold(
    constants: &Constants,
    process: ProcessKind,
    initial: &InitialState,
    theta: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::Config(format!("bad bracket [{lo}, {hi}]")));
    }
    let f = |p| min_pt_eigenvalue(constants, process, initial, p, theta);
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_sign = f_lo.signum();
    while hi - lo > THRESHOLD_REL_WIDTH * 0.5 * (hi + lo) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Spin-averaged `|M|^2`: the spin sum over 4 initial helicity states.
pub fn spin_averaged_squared(kin: &KinematicPoint) -> Result<f64> {
    Ok(amplitude(kin)?.spin_summed_squared() / 4.0)
}

/// COM differential cross section `d sigma / d Omega` in MeV^-2, unpolarized.
/// No identical-particle factor is applied.
pub fn cross_section_check(kin: &KinematicPoint) -> Result<f64> {
    let avg = spin_averaged_squared(kin)?;
    Ok(avg / (64.0 * PI * PI * kin.s) * kin.q_out / kin.p)
}

/// `d sigma / dt` in MeV^-4 from the same spin average.
pub fn dsigma_dt(kin: &KinematicPoint) -> Result<f64> {
    let avg = spin_averaged_squared(kin)?;
    Ok(avg / (64.0 * PI * kin.s * kin.p * kin.p))
}

/// Result of comparing the helicity spin sum to its trace-formula oracle.
#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub process: ProcessKind,
    pub p: f64,
    pub theta: f64,
    pub helicity_sum: f64,
    pub oracle: f64,
    pub rel_error: f64,
}

/// Deterministic quasi-random points (additive golden-ratio sequence) in a
/// band above threshold, away from the singular rays.
pub fn audit_points(process: ProcessKind, constants: &Constants, n: usize) -> Vec<(f64, f64)> {
    let g1 = 0.754_877_666_246_692_7;
    let g2 = 0.569_840_290_998_053_3;
    let p0 = process.threshold(constants).max(1e-3) * 1.01;
    (0..n)
        .map(|i| {
            let a = (0.5 + g1 * i as f64).fract();
            let b = (0.5 + g2 * i as f64).fract();
            let p = p0 * (1e4f64).powf(a);
            (p, 0.05 + b * (2.0 * PI - 0.1))
        })
        .filter(|&(_, t)| pole_distance(process, t) > 0.02)
        .collect()
}

pub fn oracle_audit(constants: &Constants, process: ProcessKind, n: usize) -> Result<Vec<OracleCheck>> {
    audit_points(process, constants, n)
        .into_iter()
        .map(|(p, theta)| {
            let kin = build_kinematics_with(constants, process, p, theta)?;
            let helicity_sum = amplitude(&kin)?.spin_summed_squared();
            let oracle = oracle::spin_summed_squared(&kin);
            let rel_error = (helicity_sum - oracle).abs() / oracle.abs();
            Ok(OracleCheck { process, p, theta, helicity_sum, oracle, rel_error })
        })
        .collect()
}
