//! Helicity entanglement generated by tree-level QED 2 -> 2 scattering.
//!
//! The pipeline for one kinematic point:
//!
//! 1. [`kinematics::build_kinematics`] fixes the COM momenta from `(p, theta)`;
//! 2. [`amplitudes::amplitude`] evaluates the 4x4 helicity amplitude matrix;
//! 3. [`qstate::evolve`] sandwiches the initial helicity state and
//!    normalises it (momentum filtering);
//! 4. [`entanglement::analyze`] applies the PPT test and computes negativity,
//!    logarithmic negativity, von Neumann entropy and Bell fidelities.
//!
//! [`pipeline::evaluate_point`] chains the four steps; [`scan`] sweeps grids,
//! locates entanglement thresholds and audits symmetries.

pub mod amplitudes;
pub mod config;
pub mod constants;
pub mod dirac;
pub mod entanglement;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod oracle;
pub mod output;
pub mod pipeline;
pub mod qstate;
pub mod scan;

pub use amplitudes::{amplitude, AmplitudeMatrix};
pub use constants::Constants;
pub use dirac::{FourVector, Helicity};
pub use entanglement::{analyze, EntanglementReport};
pub use error::{Error, Result};
pub use kinematics::{build_kinematics, KinematicPoint, ProcessKind};
pub use pipeline::{evaluate_point, PointReport};
pub use qstate::{evolve, BellState, DensityMatrix, InitialState};
