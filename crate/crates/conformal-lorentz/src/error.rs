use space_core::SpaceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConformalError {
    #[error("curve is not causal between parameters {0} and {1}")]
    NotCausal(f64, f64),
    #[error("curve kind must be causal or timelike for conformal variation")]
    WrongCurveKind,
    #[error("strategy {strategy} does not apply: {reason}")]
    BadStrategy { strategy: &'static str, reason: String },
    #[error(
        "sandwich violated: value {value} outside [{lo}, {hi}] from bounds {m} and {big_m} times tau length {tau_len}"
    )]
    SandwichViolated {
        value: f64,
        lo: f64,
        hi: f64,
        m: f64,
        big_m: f64,
        tau_len: f64,
    },
    #[error("approach sequence failed: {0}")]
    ApproachFailed(String),
    #[error("angle computation failed: {0}")]
    AngleFailed(String),
    #[error("factor json malformed: {0}")]
    BadJson(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Curve(#[from] curves::CurveError),
    #[error(transparent)]
    Graph(#[from] discretize::GraphError),
}
