//! SAT-family instances compiled to exact CVP/SVP instances.
//!
//! Every instance carries a provenance block with the reduction name, its
//! parameters, the source digest and the coefficient box (`certified_box`)
//! inside which all threshold-meeting vectors provably lie.

mod cvpp;
mod gap;
mod infinity;
mod maxsat;

pub use cvpp::{cvpp_instance, cvpp_preprocess, cvpp_query, CvppPreprocessedLattice, CvppQuery};
pub use gap::{
    chi_round, gap2sat_to_cvp, gap_eth_gamma_pow, gap_eth_pipeline, gapksat_to_cvp1, GammaFactor, GapEthOutput,
    GapReduction,
};
pub use infinity::{ksat_to_cvp_inf, ksat_to_svp_inf};
pub use maxsat::{maxksat_to_cvp_highrank, maxksat_to_cvp_rankn};

use crate::digest::sha256_hex;
use crate::exactnum::{Rational, ExactNumError};
use crate::latticekit::{LatticeError, WeightedRowGroup};
use crate::parallelepiped::ParallelepipedError;
use crate::satkit::{write_cnf, write_dimacs, Clause, Cnf, SatError, WeightedMaxSatInstance};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("gadget mismatch: {0}")]
    GadgetMismatch(String),
    #[error("clause {clause} has {len} literals, allowed width is {width}")]
    Width { clause: usize, len: usize, width: usize },
    #[error("clause {0} is not in the canonical 2-clause set")]
    UnknownClause(String),
    #[error("clause {0} appears twice")]
    DuplicateClause(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("{0}")]
    UnsupportedNorm(String),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Gadget(#[from] ParallelepipedError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Numeric(#[from] ExactNumError),
}

/// Digest of the canonical WCNF text of a Max-SAT source.
pub fn source_digest(inst: &WeightedMaxSatInstance) -> String {
    sha256_hex(write_dimacs(inst, true))
}

pub fn cnf_digest(cnf: &Cnf) -> String {
    sha256_hex(write_cnf(cnf))
}

fn check_width(cnf: &Cnf, width: usize) -> Result<(), ReductionError> {
    match cnf.clauses.iter().enumerate().find(|(_, c)| c.len() > width) {
        Some((i, c)) => Err(ReductionError::Width { clause: i, len: c.len(), width }),
        None => Ok(()),
    }
}

/// Row with `+scale` at positive and `-scale` at negative literal columns
/// (width `len`), and the number of negative literals.
fn literal_row(clause: &Clause, len: usize, scale: &Rational) -> (Vec<Rational>, usize) {
    let mut row = vec![Rational::zero(); len];
    for l in clause.lits() {
        row[l.var - 1] = if l.positive { scale.clone() } else { -scale.clone() };
    }
    (row, clause.num_negative())
}

/// Single-row groups merged by weight, in order of first appearance.
fn push_row(groups: &mut Vec<WeightedRowGroup>, weight: Rational, row: Vec<Rational>, target: Rational) {
    match groups.iter_mut().find(|g| g.weight == weight) {
        Some(g) => {
            g.rows.push(row);
            g.target.push(target);
        }
        None => groups.push(WeightedRowGroup::new(weight, vec![row], vec![target])),
    }
}

fn half() -> Rational {
    Rational::one() / Rational::from_integer(2.into())
}
