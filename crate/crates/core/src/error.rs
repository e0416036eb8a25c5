use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (bad parameter, empty grid, ...).
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The junction transfer matrix diverges at a lossless resonance (t = 0).
    #[error(
        "singular transfer matrix at omega = {omega}: the junction is a perfect mirror here; \
         offset omega slightly or use gamma > 0"
    )]
    SingularMatrix { omega: f64 },

    /// The m11 element of a cascade vanished, so no transmitted wave exists.
    #[error("total reflection: m11 = 0, transmission undefined")]
    TotalReflection,

    #[error(
        "SQUID tuning singularity: |cos(pi * flux_ratio)| = {cos_value:.3e} is below {tolerance:.0e}, \
         Josephson inductance diverges"
    )]
    TuningSingularity { cos_value: f64, tolerance: f64 },

    #[error("mirror reflectivity |r| = {abs_r} >= 1 gives an infinite quality factor")]
    InfiniteQuality { abs_r: f64 },

    #[error(
        "unresolved doublet: found {found} transmission peak(s) in [{lo}, {hi}]; \
         try a smaller gamma or a denser grid"
    )]
    UnresolvedDoublet { found: usize, lo: f64, hi: f64 },

    #[error("band {index} not found: {reason}")]
    BandNotFound { index: usize, reason: String },

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no sign change of the function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics (singularities, non-convergence) as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::InvalidParameter { .. })
    }
}
