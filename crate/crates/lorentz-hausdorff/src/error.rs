use space_core::SpaceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HausdorffError {
    #[error("dimension exponent must be positive and finite, got {0}")]
    BadExponent(f64),
    #[error("delta must be positive and finite, got {0}")]
    BadDelta(f64),
    #[error("delta schedule must be strictly decreasing, got {0:?}")]
    BadSchedule(Vec<f64>),
    #[error("space `{0}` has no diamond-cover geometry here; only the flat planar spaces do")]
    UnsupportedSpace(&'static str),
    #[error("region is malformed: {0}")]
    BadRegion(String),
    #[error(
        "no valid cover within budget {budget}: cheapest candidate needs {needed} diamonds \
         and {out_of_domain} candidates left the space domain"
    )]
    NoValidCover {
        budget: usize,
        needed: usize,
        out_of_domain: usize,
    },
    #[error("cover diamond {index} is not a causal pair")]
    NotADiamond { index: usize },
    #[error("cover diamond {index} has d-diameter {diameter} at or above delta {delta}")]
    DiameterExceeded {
        index: usize,
        diameter: f64,
        delta: f64,
    },
    #[error("cover holds {count} degenerate diamonds, over the cap {cap}")]
    TooManyDegenerate { count: usize, cap: usize },
    #[error("cover misses the region sample point ({t}, {x})")]
    CoverageGap { t: f64, x: f64 },
    #[error("region json malformed: {0}")]
    BadJson(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Conformal(#[from] conformal_lorentz::ConformalError),
}
