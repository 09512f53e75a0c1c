use crate::amplitudes::{amplitude, AmplitudeMatrix};
use crate::constants::Constants;
use crate::entanglement::{analyze_with_threshold, EntanglementReport};
use crate::error::Result;
use crate::kinematics::{build_kinematics_with, KinematicPoint, ProcessKind};
use crate::qstate::{evolve, DensityMatrix, InitialState};

/// Everything computed for a single `(p, theta)` point.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub kin: KinematicPoint,
    pub amplitude: AmplitudeMatrix,
    pub rho: DensityMatrix,
    pub report: EntanglementReport,
}

pub fn evaluate_point(
    constants: &Constants,
    process: ProcessKind,
    initial: &InitialState,
    p: f64,
    theta: f64,
    tol: f64,
) -> Result<PointReport> {
    let kin = build_kinematics_with(constants, process, p, theta)?;
    let amplitude = amplitude(&kin)?;
    let rho = evolve(&amplitude, initial)?;
    let report = analyze_with_threshold(&rho, tol, constants.alpha_cubed())?;
    Ok(PointReport { kin, amplitude, rho, report })
}

/// Output state only; cheaper entry point for scans and root finding.
pub fn output_state(
    constants: &Constants,
    process: ProcessKind,
    initial: &InitialState,
    p: f64,
    theta: f64,
) -> Result<DensityMatrix> {
    let kin = build_kinematics_with(constants, process, p, theta)?;
    evolve(&amplitude(&kin)?, initial)
}
