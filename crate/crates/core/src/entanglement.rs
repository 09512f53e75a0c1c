//! Peres-Horodecki test and entanglement/mixedness measures for two qubits.
//!
//! Negativity uses base-2 logarithms (`E_N = log2(2N + 1)`), the von Neumann
//! entropy natural logarithms (maximum `ln 4`).

use crate::constants::ALPHA;
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, Mat4};
use crate::qstate::{BellState, DensityMatrix};

/// Default absolute tolerance for the PPT sign test on unit-trace matrices.
pub const DEFAULT_PPT_TOL: f64 = 1e-10;

/// `(1 (x) T) rho`: entry `((a,b),(c,d))` becomes `((a,d),(c,b))`.
pub fn partial_transpose(rho: &DensityMatrix) -> Mat4 {
    partial_transpose_matrix(rho.matrix())
}

pub fn partial_transpose_matrix(m: &Mat4) -> Mat4 {
    Mat4::from_fn(|row, col| {
        let (a, b) = (row / 2, row % 2);
        let (c, d) = (col / 2, col % 2);
        m[(2 * a + d, 2 * c + b)]
    })
}

/// `<B|rho|B>` for a Bell state.
pub fn bell_fidelity(rho: &DensityMatrix, bell: BellState) -> f64 {
    rho.expectation(&bell.vector())
}

/// `max over alpha, beta` of `<B|U rho U^dagger|B>` with
/// `U = diag(1, e^{i alpha}) (x) diag(1, e^{i beta})`.
///
/// Local phases rotate states inside `span{|B>}` families, so the optimum is
/// `(rho_ii + rho_jj)/2 + |rho_ij|` on the Bell support `(i, j)`; it is the
/// same for both members of a family.
pub fn bell_fidelity_local_phases(rho: &DensityMatrix, bell: BellState) -> f64 {
    let m = rho.matrix();
    let (i, j) = bell.support();
    0.5 * (m[(i, i)].re + m[(j, j)].re) + m[(i, j)].norm()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    /// Eigenvalues of the partial transpose, ascending.
    pub pt_eigenvalues: [f64; 4],
    /// Eigenvalues of the state itself, ascending.
    pub eigenvalues: [f64; 4],
    pub negativity: f64,
    pub log_negativity: f64,
    pub entropy: f64,
    pub purity: f64,
    pub entangled: bool,
    pub switching_potential: bool,
    /// Bell state with the largest raw fidelity.
    pub closest_bell: (BellState, f64),
    /// Best Bell state once local diagonal phases are optimised away.
    pub closest_bell_local: (BellState, f64),
}

impl EntanglementReport {
    pub fn min_pt_eigenvalue(&self) -> f64 {
        self.pt_eigenvalues[0]
    }
}

/// `N = sum (|l| - l) / 2` over the given eigenvalues.
pub fn negativity_from(pt_eigenvalues: &[f64]) -> f64 {
    pt_eigenvalues.iter().map(|l| 0.5 * (l.abs() - l)).sum()
}

/// `-sum nu ln nu` with `0 ln 0 = 0`; round-off negatives count as zero.
pub fn entropy_from(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum::<f64>()
        .max(0.0)
}

/// Full report with the switching threshold `alpha^3`.
pub fn analyze(rho: &DensityMatrix, tol: f64) -> Result<EntanglementReport> {
    analyze_with_threshold(rho, tol, ALPHA.powi(3))
}

pub fn analyze_with_threshold(rho: &DensityMatrix, tol: f64, switching: f64) -> Result<EntanglementReport> {
    let pt_eigenvalues = hermitian_eigenvalues(&partial_transpose(rho))?;
    let eigenvalues = rho.eigenvalues()?;
    let negativity = negativity_from(&pt_eigenvalues);
    let min_pt = pt_eigenvalues[0];

    let pick = |f: &dyn Fn(BellState) -> f64| {
        BellState::ALL
            .iter()
            .map(|&b| (b, f(b)))
            .fold((BellState::PhiPlus, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    };
    let closest_bell = pick(&|b| bell_fidelity(rho, b));
    let local_best = pick(&|b| bell_fidelity_local_phases(rho, b));
    // Report the family member that is closest before phase optimisation.
    let member = if local_best.0.support() == closest_bell.0.support() {
        closest_bell.0
    } else {
        let (a, b) = match local_best.0.support() {
            (0, 3) => (BellState::PhiPlus, BellState::PhiMinus),
            _ => (BellState::PsiPlus, BellState::PsiMinus),
        };
        if bell_fidelity(rho, a) >= bell_fidelity(rho, b) { a } else { b }
    };

    Ok(EntanglementReport {
        pt_eigenvalues,
        eigenvalues,
        negativity,
        log_negativity: (2.0 * negativity + 1.0).log2(),
        entropy: entropy_from(&eigenvalues),
        purity: rho.purity(),
        entangled: min_pt < -tol,
        switching_potential: min_pt.abs() <= switching,
        closest_bell,
        closest_bell_local: (member, local_best.1),
    })
}
