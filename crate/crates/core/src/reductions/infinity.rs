//! k-SAT to CVP/SVP in the max norm.

use super::{check_width, cnf_digest, literal_row, ReductionError};
use crate::exactnum::{format_rational, rat, NormExponent, Rational};
use crate::latticekit::{CvpInstance, LatticeInstance, ProblemKind, Provenance, SvpInstance, WeightedRowGroup};
use crate::satkit::Cnf;
use num_traits::{One, Zero};

fn check_k(cnf: &Cnf, k: usize) -> Result<(), ReductionError> {
    if k < 2 {
        return Err(ReductionError::Width { clause: 0, len: k, width: 2 });
    }
    check_width(cnf, k)
}

/// Clause rows `+-1` with target `(k+1)/2 - |N_i|`, identity rows `(k-1) e_j`
/// with target `(k-1)/2`, radius `(k-1)/2`.
pub fn ksat_to_cvp_inf(cnf: &Cnf, k: usize) -> Result<CvpInstance, ReductionError> {
    check_k(cnf, k)?;
    let n = cnf.num_vars;
    let ki = k as i64;
    let mut rows = Vec::with_capacity(cnf.clauses.len() + n);
    let mut target = Vec::with_capacity(cnf.clauses.len() + n);
    for c in &cnf.clauses {
        let (row, neg) = literal_row(c, n, &Rational::one());
        rows.push(row);
        target.push(rat(ki + 1, 2) - rat(neg as i64, 1));
    }
    let id = WeightedRowGroup::scaled_identity(n, Rational::one(), rat(ki - 1, 1), rat(ki - 1, 2));
    rows.extend(id.rows);
    target.extend(id.target);
    let r = rat(ki - 1, 2);
    let mut provenance = Provenance::new("inf", "k-sat to cvp in the max norm")
        .param("k", k)
        .param("n", n)
        .param("m", cnf.clauses.len())
        .param("r", format_rational(&r))
        .param("certified_box", "-1:2");
    provenance.source_sha256 = Some(cnf_digest(cnf));
    let out = LatticeInstance {
        kind: ProblemKind::Cvp,
        norm: NormExponent::Infinity,
        rank: n,
        groups: vec![WeightedRowGroup::new(Rational::one(), rows, target)],
        threshold: r,
        provenance,
    };
    out.validate()?;
    Ok(out)
}

/// Homogenized form `[[B, -t], [0, -(k-1)/2]]` of [`ksat_to_cvp_inf`], rank `n + 1`.
/// Threshold-meeting vectors are exactly `+-(a, 1)` for satisfying `a`.
pub fn ksat_to_svp_inf(cnf: &Cnf, k: usize) -> Result<SvpInstance, ReductionError> {
    let cvp = ksat_to_cvp_inf(cnf, k)?;
    let n = cnf.num_vars;
    let g = &cvp.groups[0];
    let mut rows: Vec<Vec<Rational>> = g
        .rows
        .iter()
        .zip(&g.target)
        .map(|(row, t)| {
            let mut r = row.clone();
            r.push(-t.clone());
            r
        })
        .collect();
    let mut corner = vec![Rational::zero(); n + 1];
    corner[n] = -rat(k as i64 - 1, 2);
    rows.push(corner);
    let zeros = vec![Rational::zero(); rows.len()];
    let mut provenance = Provenance::new("svp-inf", "k-sat to svp in the max norm by homogenization")
        .param("k", k)
        .param("n", n)
        .param("m", cnf.clauses.len())
        .param("r", format_rational(&cvp.threshold))
        .param("certified_box", "-2:2");
    provenance.source_sha256 = cvp.provenance.source_sha256.clone();
    let out = LatticeInstance {
        kind: ProblemKind::Svp,
        norm: NormExponent::Infinity,
        rank: n + 1,
        groups: vec![WeightedRowGroup::new(Rational::one(), rows, zeros)],
        threshold: cvp.threshold,
        provenance,
    };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;
    use crate::latticekit::dist_pow;
    use crate::satkit::Clause;

    #[test]
    fn cvp_inf_example() {
        let cnf = Cnf::new(2, vec![Clause::from_dimacs(&[1, -2]).unwrap()]).unwrap();
        let inst = ksat_to_cvp_inf(&cnf, 2).unwrap();
        assert_eq!(inst.threshold, rat(1, 2));
        assert_eq!(dist_pow(&inst, &[1, 1]).unwrap(), Scalar::Exact(rat(1, 2)));
        assert_eq!(dist_pow(&inst, &[0, 1]).unwrap(), Scalar::Exact(rat(3, 2)));
        assert!(ksat_to_cvp_inf(&cnf, 1).is_err());
    }

    #[test]
    fn svp_inf_layout() {
        let cnf = Cnf::new(2, vec![Clause::from_dimacs(&[1, -2]).unwrap()]).unwrap();
        let inst = ksat_to_svp_inf(&cnf, 2).unwrap();
        assert_eq!(inst.rank, 3);
        assert_eq!(dist_pow(&inst, &[1, 1, 1]).unwrap(), Scalar::Exact(rat(1, 2)));
        assert_eq!(dist_pow(&inst, &[-1, -1, -1]).unwrap(), Scalar::Exact(rat(1, 2)));
        assert_eq!(dist_pow(&inst, &[1, 1, 2]).unwrap(), Scalar::Exact(rat(1, 1)));
    }
}
