//! Max-2-SAT as CVPP: the lattice depends only on `n`, the query only moves
//! the target.
//!
//! Canonical clauses are all 2-clauses over distinct variables, pairs `i < j`
//! in lexicographic order, sign patterns `(+,+), (+,-), (-,+), (-,-)` within a
//! pair; `M = 4 C(n,2)` and indices are 1-based.

use super::{half, literal_row, source_digest, ReductionError};
use crate::exactnum::{format_rational, rat, rational_pow, NormExponent, Rational};
use crate::latticekit::{CvpInstance, LatticeInstance, ProblemKind, Provenance, WeightedRowGroup};
use crate::satkit::{Clause, Literal, WeightedMaxSatInstance};
use num_traits::{One, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
pub struct CvppPreprocessedLattice {
    pub n: usize,
    pub p: u32,
    /// Canonical clauses; `clauses[i]` has index `i + 1`.
    pub clauses: Vec<Clause>,
    index: HashMap<Clause, usize>,
    /// `2^p M`.
    pub alpha: Rational,
    /// Clause rows (weight 1) then identity rows (weight `alpha`); targets are zero.
    pub basis: Vec<WeightedRowGroup>,
}

impl CvppPreprocessedLattice {
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// `N = n + M`.
    pub fn rank(&self) -> usize {
        self.n + self.clauses.len()
    }

    /// 1-based position of the clause in the canonical order.
    pub fn clause_index(&self, c: &Clause) -> Option<usize> {
        self.index.get(&c.normalized()).map(|i| i + 1)
    }
}

pub fn cvpp_preprocess(n: usize, p: u32) -> Result<CvppPreprocessedLattice, ReductionError> {
    if n < 2 {
        return Err(ReductionError::Parameter(format!("CVPP lattice needs n >= 2, got {n}")));
    }
    if p == 0 {
        return Err(ReductionError::Parameter("p must be at least 1".into()));
    }
    let mut clauses = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for (si, sj) in [(true, true), (true, false), (false, true), (false, false)] {
                let c = Clause::new(vec![Literal { var: i, positive: si }, Literal { var: j, positive: sj }])?;
                clauses.push(c);
            }
        }
    }
    let m = clauses.len();
    let big_n = n + m;
    let index = clauses.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let alpha = rational_pow(&rat(2, 1), p) * rat(m as i64, 1);
    let mut rows = Vec::with_capacity(m);
    for (i, c) in clauses.iter().enumerate() {
        let (mut row, _) = literal_row(c, big_n, &Rational::one());
        row[n + i] = Rational::one();
        rows.push(row);
    }
    let clause_group = WeightedRowGroup::new(Rational::one(), rows, vec![Rational::zero(); m]);
    let identity = WeightedRowGroup::scaled_identity(big_n, alpha.clone(), rat(2, 1), Rational::zero());
    Ok(CvppPreprocessedLattice { n, p, clauses, index, alpha, basis: vec![clause_group, identity] })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvppQuery {
    /// Clause-row targets `3/2 - |N_i|` followed by the identity targets.
    pub target: Vec<Rational>,
    pub threshold_pow: Rational,
    /// 1-based canonical indices of the query clauses.
    pub present: Vec<usize>,
}

/// Target and threshold for a unit-weight width-2 query `(Phi, W)`.
///
/// Switch targets are 0 for clauses in `Phi` (forcing the switch off) and 1
/// otherwise; `r^p = (M - m + W)/2^p + (m - W)(3/2)^p + alpha (n + M - m)`.
pub fn cvpp_query(prep: &CvppPreprocessedLattice, inst: &WeightedMaxSatInstance) -> Result<CvppQuery, ReductionError> {
    if inst.num_vars() > prep.n {
        return Err(ReductionError::Parameter(format!(
            "query has {} variables, lattice was built for n = {}",
            inst.num_vars(),
            prep.n
        )));
    }
    if !inst.is_unweighted() {
        return Err(ReductionError::Parameter("CVPP queries take unit clause weights".into()));
    }
    let big_m = prep.num_clauses();
    let mut in_phi = vec![false; big_m];
    let mut present = Vec::with_capacity(inst.clauses().len());
    for c in inst.clauses() {
        let idx = prep.clause_index(c).ok_or_else(|| ReductionError::UnknownClause(c.to_string()))?;
        if in_phi[idx - 1] {
            return Err(ReductionError::DuplicateClause(c.to_string()));
        }
        in_phi[idx - 1] = true;
        present.push(idx);
    }
    let mut target: Vec<Rational> =
        prep.clauses.iter().map(|c| rat(3, 2) - rat(c.num_negative() as i64, 1)).collect();
    target.extend(std::iter::repeat(Rational::one()).take(prep.n));
    target.extend(in_phi.iter().map(|&b| if b { Rational::zero() } else { Rational::one() }));
    let m = present.len() as i64;
    let w = inst.threshold as i64;
    let mm = big_m as i64;
    let threshold_pow = rat(mm - m + w, 1) * rational_pow(&half(), prep.p)
        + rat(m - w, 1) * rational_pow(&rat(3, 2), prep.p)
        + &prep.alpha * rat(prep.n as i64 + mm - m, 1);
    Ok(CvppQuery { target, threshold_pow, present })
}

/// The CVP instance `(B_n, t, r)` for a query.
pub fn cvpp_instance(prep: &CvppPreprocessedLattice, inst: &WeightedMaxSatInstance) -> Result<CvpInstance, ReductionError> {
    let q = cvpp_query(prep, inst)?;
    let mut groups = prep.basis.clone();
    let split = groups[0].rows.len();
    groups[0].target = q.target[..split].to_vec();
    groups[1].target = q.target[split..].to_vec();
    let mut provenance = Provenance::new("cvpp", "max-2-sat to cvpp with a fixed lattice per n")
        .param("p", prep.p)
        .param("n", prep.n)
        .param("M", prep.num_clauses())
        .param("N", prep.rank())
        .param("m", q.present.len())
        .param("W", inst.threshold)
        .param("alpha", format_rational(&prep.alpha))
        .param("clause_indices", q.present.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        .param("certified_box", "0:1");
    provenance.source_sha256 = Some(source_digest(inst));
    let out = LatticeInstance {
        kind: ProblemKind::Cvp,
        norm: NormExponent::Exact(prep.p),
        rank: prep.rank(),
        groups,
        threshold: q.threshold_pow,
        provenance,
    };
    out.validate()?;
    Ok(out)
}
