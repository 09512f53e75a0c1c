use thiserror::Error;

/// Errors raised anywhere in the pipeline, from kinematics to file output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid kinematics: {0}")]
    InvalidKinematics(String),

    #[error("below threshold: p = {p} MeV, minimum is {min} MeV")]
    BelowThreshold { p: f64, min: f64 },

    #[error("divergent kinematics: {0}")]
    Divergent(String),

    #[error("unfilterable state: no outgoing flux into the filtered momenta (norm {0:e})")]
    Unfilterable(f64),

    #[error("invalid initial state: {0}")]
    InvalidState(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("no sign change of the minimum PT eigenvalue in [{lo}, {hi}] MeV")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 bad input, 3 numerical failure, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidKinematics(_)
            | Error::BelowThreshold { .. }
            | Error::InvalidState(_)
            | Error::NoSignChange { .. }
            | Error::Config(_) => 2,
            Error::Divergent(_) | Error::Unfilterable(_) | Error::NotHermitian(_) | Error::NoConvergence { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 4,
        }
    }
}
