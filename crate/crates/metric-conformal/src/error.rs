use curves::CurveError;
use discretize::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricConformalError {
    #[error("unknown bundle `{0}`")]
    UnknownBundle(String),

    #[error("point belongs to `{got}`, bundle is `{expected}`")]
    WrongSpace {
        expected: &'static str,
        got: &'static str,
    },

    #[error("coordinates {coords:?} lie outside the bundle domain")]
    OutsideDomain { coords: Vec<f64> },

    #[error("expected {expected} coordinates, got {got}")]
    BadDimension { expected: usize, got: usize },

    #[error("strategy `{strategy}` does not apply to bundle `{bundle}`")]
    StrategyInapplicable {
        strategy: &'static str,
        bundle: &'static str,
    },

    #[error("graph net step {0} is not usable here")]
    BadStep(f64),

    #[error("compact-ball oracle is non-monotone near radius {radius}")]
    InconsistentOracle { radius: f64 },

    #[error("eps {eps} must lie strictly between 0 and the factor value {omega_x}")]
    EpsOutOfRange { eps: f64, omega_x: f64 },

    #[error("no certified radius found above the floor {floor}")]
    Inconclusive { floor: f64 },

    #[error("bundle `{0}` is not supported by this operation")]
    UnsupportedBundle(&'static str),

    #[error("Hausdorff exponent must be positive and finite, got {0}")]
    BadExponent(f64),

    #[error("delta schedule must be positive and strictly decreasing, got {0:?}")]
    BadSchedule(Vec<f64>),

    #[error("bad region: {0}")]
    BadRegion(String),

    #[error("quotient window t={t}, h up to {h} leaves the curve domain [{a}, {b}]")]
    BadQuotientWindow { t: f64, h: f64, a: f64, b: f64 },

    #[error("speed schedule must be positive, strictly decreasing, nonempty: {0:?}")]
    BadSpeedSchedule(Vec<f64>),

    #[error(transparent)]
    Curve(#[from] CurveError),

    #[error(transparent)]
    Graph(#[from] GraphError),
}
