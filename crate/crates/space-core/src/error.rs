use thiserror::Error;

/// Errors from extended-real arithmetic.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExtRealError {
    #[error("0 * inf is undefined in extended-real arithmetic")]
    ZeroTimesInfinity,
    #[error("scale factor must be finite and nonnegative, got {0}")]
    BadScale(f64),
    #[error("expected a finite value in {context}, got +inf")]
    InfiniteValue { context: String },
}

/// Errors from space construction and point validation.
#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("unknown catalog space `{0}`")]
    UnknownSpace(String),
    #[error("space `{space}` takes no parameters, got `{param}`")]
    UnexpectedParam { space: String, param: String },
    #[error("point has {got} coordinates, space `{space}` is {want}-dimensional")]
    DimensionMismatch {
        space: &'static str,
        want: usize,
        got: usize,
    },
    #[error("point {coords:?} lies outside space `{space}`: {reason}")]
    OutsideDomain {
        space: &'static str,
        coords: Vec<f64>,
        reason: String,
    },
    #[error("points belong to different spaces: `{0}` vs `{1}`")]
    MixedSpaces(&'static str, &'static str),
    #[error("bad space selection JSON: {0}")]
    BadJson(String),
}
