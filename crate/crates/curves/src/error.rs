use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("curve domain [{0}, {1}] is empty or reversed")]
    BadDomain(f64, f64),
    #[error("partition must have at least 2 strictly increasing points, got {0:?}")]
    BadPartition(Vec<f64>),
    #[error("partition endpoints [{got_a}, {got_b}] do not match curve domain [{want_a}, {want_b}]")]
    PartitionMismatch {
        want_a: f64,
        want_b: f64,
        got_a: f64,
        got_b: f64,
    },
    #[error("curve is not causal between parameters {0} and {1}")]
    NotCausalBetween(f64, f64),
    #[error("curve belongs to space `{curve}`, operation targets `{space}`")]
    SpaceMismatch {
        curve: &'static str,
        space: &'static str,
    },
    #[error("reparametrization is not strictly increasing near parameter {0}")]
    NonMonotonic(f64),
    #[error("reparametrization endpoints map to [{0}, {1}], expected the curve domain")]
    BadEndpointMap(f64, f64),
    #[error("restriction [{0}, {1}] leaves the curve domain")]
    BadRestriction(f64, f64),
    #[error("waypoints need strictly increasing parameter values")]
    BadWaypoints,
    #[error("bad curve JSON: {0}")]
    BadJson(String),
    #[error("named curve `{name}` is not available on space `{space}`")]
    WrongSpaceForNamed { name: String, space: &'static str },
    #[error(transparent)]
    Space(#[from] space_core::SpaceError),
}
