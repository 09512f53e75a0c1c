//! Two-qubit helicity density matrices and their evolution through an
//! amplitude matrix followed by momentum filtering.

use std::fmt;
use std::str::FromStr;

use crate::amplitudes::{pair_index, AmplitudeMatrix};
use crate::dirac::Helicity;
use crate::error::{Error, Result};
use crate::linalg::{c, frobenius, hermitian_eigenvalues, hermiticity_defect, outer, Mat4, Vec4, ONE};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
/// `Tr(M rho M^dagger) < UNFILTERABLE_TOL |M|^2` means no flux into the filter.
pub const UNFILTERABLE_TOL: f64 = 1e-30;
pub const WEIGHT_TOL: f64 = 1e-12;

/// Normalised, Hermitian, positive 4x4 matrix over `(LL, LR, RL, RR)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let ev = hermitian_eigenvalues(&m)?;
        if ev[0] < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", ev[0])));
        }
        Ok(DensityMatrix(m))
    }

    /// Symmetrises and normalises a matrix known to be positive semidefinite.
    pub(crate) fn from_positive(m: Mat4) -> Self {
        let h = (m + m.adjoint()) * c(0.5, 0.0);
        let tr = h.trace().re;
        DensityMatrix(h / c(tr, 0.0))
    }

    /// Pure state `|psi><psi|` for an arbitrary (not necessarily normalised) vector.
    pub fn pure(psi: &Vec4) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = psi / c(n, 0.0);
        Ok(DensityMatrix::from_positive(outer(&v, &v)))
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat4::identity() * c(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        hermitian_eigenvalues(&self.0)
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Diagonal weight `<ab|rho|ab>`.
    pub fn population(&self, h1: Helicity, h2: Helicity) -> f64 {
        let i = pair_index(h1, h2);
        self.0[(i, i)].re
    }

    /// Expectation value `<psi|rho|psi>` for a normalised `psi`.
    pub fn expectation(&self, psi: &Vec4) -> f64 {
        (psi.adjoint() * self.0 * psi)[(0, 0)].re
    }

    /// Trace distance `|rho - sigma|_1 / 2`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        let ev = hermitian_eigenvalues(&(self.0 - other.0))?;
        Ok(0.5 * ev.iter().map(|x| x.abs()).sum::<f64>())
    }
}

/// Computational basis vector `|h1 h2>`.
pub fn basis_state(h1: Helicity, h2: Helicity) -> Vec4 {
    let mut v = Vec4::zeros();
    v[pair_index(h1, h2)] = ONE;
    v
}

/// The four Bell states, `phi-+ = (|LL> -+ |RR>)/sqrt2`, `psi-+ = (|LR> -+ |RL>)/sqrt2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus];

    pub fn vector(self) -> Vec4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b, sign) = match self {
            BellState::PhiPlus => (0, 3, 1.0),
            BellState::PhiMinus => (0, 3, -1.0),
            BellState::PsiPlus => (1, 2, 1.0),
            BellState::PsiMinus => (1, 2, -1.0),
        };
        let mut v = Vec4::zeros();
        v[a] = c(s, 0.0);
        v[b] = c(sign * s, 0.0);
        v
    }

    pub fn density(self) -> DensityMatrix {
        let v = self.vector();
        DensityMatrix::from_positive(outer(&v, &v))
    }

    /// Basis indices the state is supported on.
    pub fn support(self) -> (usize, usize) {
        match self {
            BellState::PhiPlus | BellState::PhiMinus => (0, 3),
            BellState::PsiPlus | BellState::PsiMinus => (1, 2),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How an initial state was constructed; also its CLI/CSV label.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialKind {
    Unpolarized,
    Pure(Helicity, Helicity),
    WernerSymmetric,
    Diagonal([f64; 4]),
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialState {
    pub density: DensityMatrix,
    pub kind: InitialKind,
}

impl InitialState {
    /// `1/4` identity: nothing known about the incoming helicities.
    pub fn unpolarized() -> Self {
        InitialState { density: DensityMatrix::maximally_mixed(), kind: InitialKind::Unpolarized }
    }

    pub fn pure(h1: Helicity, h2: Helicity) -> Self {
        let v = basis_state(h1, h2);
        InitialState { density: DensityMatrix::from_positive(outer(&v, &v)), kind: InitialKind::Pure(h1, h2) }
    }

    /// `(|LL><LL| + |psi+><psi+| + |RR><RR|) / 3`.
    pub fn werner_symmetric() -> Self {
        let ll = basis_state(Helicity::L, Helicity::L);
        let rr = basis_state(Helicity::R, Helicity::R);
        let psi = BellState::PsiPlus.vector();
        let m = (outer(&ll, &ll) + outer(&psi, &psi) + outer(&rr, &rr)) / c(3.0, 0.0);
        InitialState { density: DensityMatrix::from_positive(m), kind: InitialKind::WernerSymmetric }
    }

    /// Diagonal mixture with weights over `(LL, LR, RL, RR)`.
    pub fn diagonal(weights: [f64; 4]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidState(format!("weights must be nonnegative, got {weights:?}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidState(format!("weights sum to {sum}, expected 1")));
        }
        let d = Vec4::new(c(weights[0], 0.0), c(weights[1], 0.0), c(weights[2], 0.0), c(weights[3], 0.0));
        Ok(InitialState { density: DensityMatrix(Mat4::from_diagonal(&d)), kind: InitialKind::Diagonal(weights) })
    }

    pub fn custom(density: DensityMatrix) -> Self {
        InitialState { density, kind: InitialKind::Custom }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            InitialKind::Unpolarized => "unpolarized".into(),
            InitialKind::Pure(a, b) => format!("{a:?}{b:?}").to_ascii_lowercase(),
            InitialKind::WernerSymmetric => "werner".into(),
            InitialKind::Diagonal(w) => format!("diag:{},{},{},{}", w[0], w[1], w[2], w[3]),
            InitialKind::Custom => "custom".into(),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;

    /// Accepts `unpolarized | ll | lr | rl | rr | werner | diag:w1,w2,w3,w4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let pure = |a, b| Ok(InitialState::pure(a, b));
        use Helicity::{L, R};
        match s.as_str() {
            "unpolarized" | "unpolarised" => Ok(InitialState::unpolarized()),
            "ll" => pure(L, L),
            "lr" => pure(L, R),
            "rl" => pure(R, L),
            "rr" => pure(R, R),
            "werner" => Ok(InitialState::werner_symmetric()),
            _ => {
                let Some(rest) = s.strip_prefix("diag:") else {
                    return Err(Error::Config(format!("unknown initial state '{s}'")));
                };
                let parts: Vec<f64> = rest
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Config(format!("bad diagonal weights '{rest}': {e}")))?;
                let w: [f64; 4] = parts
                    .try_into()
                    .map_err(|_| Error::Config(format!("expected four weights in '{rest}'")))?;
                InitialState::diagonal(w)
            }
        }
    }
}

/// `rho_out = M rho_in M^dagger / Tr(M rho_in M^dagger)`.
pub fn evolve(m: &AmplitudeMatrix, init: &InitialState) -> Result<DensityMatrix> {
    evolve_matrix(&m.entries, &init.density)
}

pub fn evolve_matrix(m: &Mat4, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidKinematics("amplitude matrix has non-finite entries".into()));
    }
    let out = m * rho.0 * m.adjoint();
    let norm = out.trace().re;
    let scale = frobenius(m).powi(2);
    if !(norm > UNFILTERABLE_TOL * scale) {
        return Err(Error::Unfilterable(norm));
    }
    Ok(DensityMatrix::from_positive(out))
}
