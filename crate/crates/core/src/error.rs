use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs violate a documented invariant.
    Validation,
    /// Inputs were valid but the computation cannot produce a result.
    Computation,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field}: {reason} (got {value})")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid schedule: {0}")]
    Schedule(String),

    #[error("invalid sweep grid: {0}")]
    Grid(String),

    #[error("horizon mismatch: actual has {actual} periods, counterfactual has {counterfactual}")]
    HorizonMismatch {
        actual: usize,
        counterfactual: usize,
    },

    #[error("demand block is unstable: 1 - c1(1 - tau) - i1 = {denominator} must be positive")]
    Unstable { denominator: f64 },

    #[error("capital annihilated in period {period}: next capital {next_capital}")]
    Annihilated { period: usize, next_capital: f64 },

    #[error("singular {0}")]
    Singular(&'static str),

    #[error(
        "growth is monotone decreasing in the military burden (chi = 0, phi <= 1); \
         maximum sits at m = 0 with g = {g_at_zero}"
    )]
    DegenerateOptimum { g_at_zero: f64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. }
            | Error::Schedule(_)
            | Error::Grid(_)
            | Error::HorizonMismatch { .. } => ErrorKind::Validation,
            Error::Unstable { .. }
            | Error::Annihilated { .. }
            | Error::Singular(_)
            | Error::DegenerateOptimum { .. } => ErrorKind::Computation,
        }
    }

    pub(crate) fn domain(field: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            field,
            value,
            reason,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
