//! SAT-side model: formulas, DIMACS I/O, brute-force oracles and the Gap-SAT transforms.

mod dimacs;
mod formula;
mod gap;
mod oracle;
pub mod random;

pub use dimacs::{parse_dimacs, write_cnf, write_dimacs, ParsedDimacs};
pub use formula::{Assignment, Clause, Cnf, GapSatInstance, Literal, WeightedMaxSatInstance};
pub use gap::{garey_3to2, garey_gadget, sparsify_gap, SparsifyOutcome};
pub use oracle::{
    brute_force_maxsat, brute_force_maxsat_limit, eval_assignment, formula_value, sat_count, Evaluation,
    MaxSatResult, DEFAULT_MAXSAT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: tautological clause `{clause} 0`")]
    Tautology { line: usize, clause: String },
    #[error("clause {clause} has {len} literals, allowed width is {width}")]
    Width { clause: usize, len: usize, width: usize },
    #[error("n = {n} exceeds the brute-force limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("invalid clause: {0}")]
    InvalidClause(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}
