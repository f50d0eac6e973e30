#![doc = r#"Conformal rescaling of time separation: weighted variations and
lengths, the solvable conformal time separation with its composition laws,
local ratio control, timelike angles through null-related pairs, and the
superseded product-weight length kept only to replay its failures.

The central objects: for a positive factor `w` and a causal curve, the
weighted variation scores each partition segment by the segment maximum of
`w` times the endpoint time separation, and the conformal length is the
infimum over partitions. The conformal time separation is the supremum of
those lengths over causal curves, computed exactly on the flat planar
spaces for time-dependent factors, and approximately elsewhere.
"#]

mod angles;
mod error;
mod json;
mod length;
pub mod prior;
mod segmax;
mod tau_omega;
mod variation;

pub use angles::{angle_limit, comparison_angle, AngleLimitResult, SIGN_CONVENTION};
pub use error::ConformalError;
pub use json::factor_from_json;
pub use length::{
    conformal_length, conformal_length_composed, CompositionCheck, ConformalLengthResult,
};
pub use segmax::segment_max;
pub use tau_omega::{
    check_reverse_triangle, local_ratio, tau_omega, tau_omega_value, BoundKind, TauOmegaResult,
    TauOmegaStrategy, TauWitness, TriangleReport, TriangleViolation,
};
pub use variation::conformal_variation;
