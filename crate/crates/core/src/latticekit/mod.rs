//! Lattice instances in weighted-row-group form, exact distance evaluation,
//! brute-force CVP/SVP enumeration and the instance file formats.

mod densify;
mod enumerate;
mod format;
mod instance;

pub use densify::{densify, DenseInstance};
pub use enumerate::{solve_cvp_enum, solve_enum, solve_svp_enum, EnumOptions, SolveResult, DEFAULT_ENUM_LIMIT};
pub use format::{
    instance_from_json, instance_to_json, provenance_to_json, read_instance, write_dense, write_instance,
    DENSE_FORMAT, INSTANCE_FORMAT,
};
pub use instance::{
    dist_pow, CoefficientBox, CvpInstance, LatticeInstance, ProblemKind, Provenance, StageRecord, SvpInstance,
    WeightedRowGroup,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("box has {points} points, above the enumeration limit {limit}")]
    LimitExceeded { points: String, limit: u128 },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("{0}")]
    UnsupportedNorm(String),
    #[error("{path}: {msg}")]
    Format { path: String, msg: String },
}
