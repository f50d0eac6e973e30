use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("node, weight, and table lengths disagree: {0}")]
    MismatchedLengths(String),
    #[error("edge ({u}, {v}) does not go forward in index order")]
    EdgeOrder { u: usize, v: usize },
    #[error("edge ({u}, {v}) has no time-separation entry")]
    MissingTau { u: usize, v: usize },
    #[error("node {idx} has non-positive weight {value}")]
    NonPositiveOmega { idx: usize, value: f64 },
    #[error("node index {idx} out of range for {n} nodes")]
    BadIndex { idx: usize, n: usize },
    #[error("sprinkling region rejected: {0}")]
    RegionInvalid(String),
    #[error("brute-force cap exceeded: {reachable} nodes between the endpoints (limit {cap})")]
    SizeCapExceeded { reachable: usize, cap: usize },
    #[error("graph json malformed: {0}")]
    BadJson(String),
}
