//! Physical constants in natural units (MeV, hbar = c = 1).

/// Electron mass in MeV.
pub const ELECTRON_MASS: f64 = 0.510_998_95;
/// Muon mass in MeV.
pub const MUON_MASS: f64 = 105.658_375_5;
/// Fine-structure constant.
pub const ALPHA: f64 = 1.0 / 137.035_999_084;

/// Masses and coupling used by every kinematic and amplitude evaluation.
///
/// The defaults are CODATA values; override them to study other leptons or
/// couplings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub electron_mass: f64,
    pub muon_mass: f64,
    pub alpha: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            electron_mass: ELECTRON_MASS,
            muon_mass: MUON_MASS,
            alpha: ALPHA,
        }
    }
}

impl Constants {
    /// Squared electric charge e^2 = 4 pi alpha.
    pub fn e_squared(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.alpha
    }

    /// Order of the first loop correction to density-matrix entries.
    pub fn alpha_cubed(&self) -> f64 {
        self.alpha.powi(3)
    }
}
