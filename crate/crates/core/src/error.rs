use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("per-mode cutoff n_max = {0} is below the minimum of 2")]
    CutoffTooSmall(usize),

    #[error("invalid mode {0}, expected 1 or 2")]
    InvalidMode(u8),

    #[error("operator dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("validity margin {margin} leaves no basis states at n_max = {n_max}")]
    EmptySubspace { n_max: usize, margin: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("contraction parameter must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),

    #[error("squeeze parameter must be finite and non-negative, got {0}")]
    InvalidSqueeze(f64),

    #[error(
        "cutoff n_max = {n_max} is insufficient for r = {r}: \
         probability beyond the cutoff is {tail:.3e}, limit {limit:.0e}"
    )]
    InsufficientCutoff {
        r: f64,
        n_max: usize,
        tail: f64,
        limit: f64,
    },

    #[error("rapidity must be finite, got {0}")]
    InvalidRapidity(f64),

    #[error("grid half-width {half_width} is below the required {required} for eta = {eta}")]
    GridTooSmall {
        eta: f64,
        half_width: f64,
        required: f64,
    },

    #[error("grid needs at least 2 points per axis, got {0}")]
    GridTooCoarse(usize),

    #[error("failed to write output: {0}")]
    Output(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}
