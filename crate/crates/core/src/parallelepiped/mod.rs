//! Isolating parallelepipeds: gadgets `(V, t*)` whose nonzero `{0,1}`
//! combinations all sit at l_p distance exactly 1 from `t*` while `t*`
//! itself is strictly farther.

mod format;
mod gadget;
mod profile;
mod theory;

pub use format::{figure2, isoped_from_json, isoped_to_json, read_isoped, write_isoped, FIGURE2_JSON, ISOPED_FORMAT};
pub use gadget::{
    assemble_dense, construct_isoped, dense_from_weighted, exact_margin_of, l1_family, pmone_transform,
    profile_weighted_rows, validate_exact, validate_isoped, ExactIsopedReport, GadgetProvenance,
    IsolatingParallelepiped, IsopedReport, WeightedGadgetRow,
};
pub use profile::{
    build_m_matrix, construct_profile, find_tstar, lambda_closed_form_exact, lambda_row_sum, m_matrix_exact,
    m_matrix_float, sign_rows, solve_weights, vertex_norm_pow, vertex_norm_pow_direct, MMatrix, WeightProfile,
    DEFAULT_TSTAR_BUDGET,
};
pub use theory::{expected_leading_coefficient, l2_alternating_sum, leading_coefficient, p2_nogo, NogoReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParallelepipedError {
    #[error("no invertible M_k(p, t*) found for k = {k}, p = {p}")]
    ConstructionFailure { k: usize, p: String },
    #[error("gadget width k = {0} is not supported (need k >= 2)")]
    InvalidWidth(usize),
    #[error("gadgets need a finite norm exponent")]
    InfiniteNorm,
    #[error("M_k(p, t*) is singular")]
    Singular,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("validation failed at vertex {vertex:?}: value {value}")]
    ValidationFailure { vertex: Vec<u8>, value: String },
    #[error("gadget has no exact weighted representation")]
    NoExactForm,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("isoped format error: {0}")]
    Format(String),
}
