//! Flat `key = value` scan configuration files.
//!
//! ```text
//! # Moller low-energy map
//! process = moller
//! initial = unpolarized
//! p_min = 0.01
//! p_max = 3
//! p_steps = 300
//! theta_steps = 300
//! ```
//!
//! Unset keys fall back to the per-process defaults of [`default_grid`].

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::entanglement::DEFAULT_PPT_TOL;
use crate::error::{Error, Result};
use crate::kinematics::ProcessKind;
use crate::qstate::InitialState;
use crate::scan::{Axis, ScanConfig, Spacing};

/// Every field optional so that file values and command-line flags can be
/// layered with [`ScanSettings::overlay`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScanSettings {
    pub process: Option<ProcessKind>,
    pub initial: Option<String>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub p_steps: Option<usize>,
    pub p_log: Option<bool>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub theta_steps: Option<usize>,
    /// Include `theta_max` itself in the grid.
    pub theta_closed: Option<bool>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

fn value<T: FromStr>(key: &str, v: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| Error::Config(format!("line {line}: bad value '{v}' for {key}: {e}")))
}

fn boolean(key: &str, v: &str, line: usize) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("line {line}: {key} expects true or false, got '{v}'"))),
    }
}

impl ScanSettings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = ScanSettings::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {n}: expected key = value, got '{line}'")));
            };
            let (k, v) = (k.trim(), v.trim());
            match k {
                "process" => s.process = Some(v.parse()?),
                "initial" => {
                    InitialState::from_str(v)?;
                    s.initial = Some(v.to_string());
                }
                "p_min" => s.p_min = Some(value(k, v, n)?),
                "p_max" => s.p_max = Some(value(k, v, n)?),
                "p_steps" => s.p_steps = Some(value(k, v, n)?),
                "p_log" => s.p_log = Some(boolean(k, v, n)?),
                "theta_min" => s.theta_min = Some(value(k, v, n)?),
                "theta_max" => s.theta_max = Some(value(k, v, n)?),
                "theta_steps" => s.theta_steps = Some(value(k, v, n)?),
                "theta_closed" => s.theta_closed = Some(boolean(k, v, n)?),
                "tol" => s.tol = Some(value(k, v, n)?),
                "out" => s.out = Some(PathBuf::from(v)),
                "jobs" => s.jobs = Some(value(k, v, n)?),
                _ => return Err(Error::Config(format!("line {n}: unknown key '{k}'"))),
            }
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Field-wise merge; values set in `over` win.
    pub fn overlay(self, over: ScanSettings) -> ScanSettings {
        ScanSettings {
            process: over.process.or(self.process),
            initial: over.initial.or(self.initial),
            p_min: over.p_min.or(self.p_min),
            p_max: over.p_max.or(self.p_max),
            p_steps: over.p_steps.or(self.p_steps),
            p_log: over.p_log.or(self.p_log),
            theta_min: over.theta_min.or(self.theta_min),
            theta_max: over.theta_max.or(self.theta_max),
            theta_steps: over.theta_steps.or(self.theta_steps),
            theta_closed: over.theta_closed.or(self.theta_closed),
            tol: over.tol.or(self.tol),
            out: over.out.or(self.out),
            jobs: over.jobs.or(self.jobs),
        }
    }

    pub fn into_config(self) -> Result<ScanConfig> {
        let process = self.process.ok_or_else(|| Error::Config("no process given".into()))?;
        let initial: InitialState = self.initial.as_deref().unwrap_or("unpolarized").parse()?;
        let (dp, dt) = default_grid(process);
        let p_range = Axis {
            min: self.p_min.unwrap_or(dp.min),
            max: self.p_max.unwrap_or(dp.max),
            count: self.p_steps.unwrap_or(dp.count),
            spacing: match self.p_log {
                Some(true) => Spacing::Log,
                Some(false) => Spacing::Linear,
                None => dp.spacing,
            },
            closed: true,
        };
        let custom_theta = self.theta_min.is_some() || self.theta_max.is_some();
        let theta_range = Axis {
            min: self.theta_min.unwrap_or(dt.min),
            max: self.theta_max.unwrap_or(dt.max),
            count: self.theta_steps.unwrap_or(dt.count),
            spacing: Spacing::Linear,
            closed: self.theta_closed.unwrap_or(custom_theta),
        };
        let mut cfg = ScanConfig::new(process, initial, p_range, theta_range);
        cfg.tol = self.tol.unwrap_or(DEFAULT_PPT_TOL);
        cfg.out = self.out;
        cfg.jobs = self.jobs.unwrap_or(0);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Momentum and angle grids covering each process' interesting region.
pub fn default_grid(process: ProcessKind) -> (Axis, Axis) {
    let theta = Axis::half_open(0.0, 2.0 * PI, 200);
    let p = match process {
        ProcessKind::Moller => Axis::linear(0.01, 3.0, 200),
        ProcessKind::MuonPair => Axis::log(105.7, 1.0e4, 200),
        ProcessKind::Annihilation => Axis::linear(0.01, 2.0, 200),
        ProcessKind::Bhabha => Axis::linear(0.01, 3.0, 200),
        ProcessKind::ElectronMuon => Axis::linear(0.1, 30.0, 200),
        ProcessKind::Compton => Axis::log(0.01, 100.0, 200),
    };
    (p, theta)
}
