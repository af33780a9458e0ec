//! Weighted Max-k-SAT to CVP_p: the rank-n gadget reduction and the
//! high-rank variant with unary switch blocks.

use super::{check_width, half, literal_row, push_row, source_digest, ReductionError};
use crate::digest::sha256_hex;
use crate::exactnum::{format_rational, rational_pow, NormExponent, Rational};
use crate::latticekit::{CvpInstance, LatticeInstance, ProblemKind, Provenance, WeightedRowGroup};
use crate::parallelepiped::{exact_margin_of, validate_exact, write_isoped, IsolatingParallelepiped};
use crate::satkit::WeightedMaxSatInstance;
use num_traits::{One, Signed, Zero};

fn int(x: u64) -> Rational {
    Rational::from_integer(x.into())
}

/// Rank-n reduction through an isolating parallelepiped of width `k >= width`.
///
/// Clause `C_i` becomes the gadget's weighted rows restricted to the clause's
/// literal positions, weight `w_i * rho`, with negated columns flipped and the
/// target shifted by their coefficients. The identity group has weight
/// `alpha = W_tot + (W_tot - W) delta`, rows `2 e_j` and target 1; the
/// threshold is `alpha (n + 1)`.
pub fn maxksat_to_cvp_rankn(
    inst: &WeightedMaxSatInstance,
    gadget: &IsolatingParallelepiped,
) -> Result<CvpInstance, ReductionError> {
    let p = gadget
        .p
        .as_exact()
        .ok_or_else(|| ReductionError::UnsupportedNorm(format!("rank-n reduction needs integer p, gadget has p = {}", gadget.p)))?;
    let k = gadget.k;
    check_width(&inst.cnf, k).map_err(|e| match e {
        ReductionError::Width { clause, len, .. } => {
            ReductionError::GadgetMismatch(format!("clause {clause} has {len} literals but the gadget has width {k}"))
        }
        e => e,
    })?;
    let rows = gadget
        .weighted
        .as_ref()
        .ok_or_else(|| ReductionError::GadgetMismatch("gadget has no exact weighted form".into()))?;
    validate_exact(gadget).map_err(|e| ReductionError::GadgetMismatch(format!("gadget fails exact validation: {e}")))?;
    let delta = exact_margin_of(rows, p);
    let n = inst.num_vars();
    let mut groups: Vec<WeightedRowGroup> = Vec::new();
    for (clause, &w) in inst.clauses().iter().zip(&inst.weights) {
        let lits = clause.lits();
        for g in rows {
            let mut row = vec![Rational::zero(); n];
            let mut target = g.target.clone();
            for (s, l) in lits.iter().enumerate() {
                let a = &g.coeffs[s];
                if l.positive {
                    row[l.var - 1] += a;
                } else {
                    row[l.var - 1] -= a;
                    target -= a;
                }
            }
            push_row(&mut groups, int(w) * &g.weight, row, target);
        }
    }
    let w_tot = int(inst.total_weight());
    let w = int(inst.threshold);
    let alpha = &w_tot + (&w_tot - &w) * &delta;
    groups.push(WeightedRowGroup::scaled_identity(n, alpha.clone(), int(2), Rational::one()));
    let threshold = &alpha * int(n as u64 + 1);
    let provenance = Provenance::new("rankn", "max-k-sat to rank-n cvp via isolating parallelepiped")
        .param("p", p)
        .param("k", k)
        .param("n", n)
        .param("m", inst.clauses().len())
        .param("W", inst.threshold)
        .param("W_total", inst.total_weight())
        .param("delta", format_rational(&delta))
        .param("alpha", format_rational(&alpha))
        .param("gadget", gadget.provenance.as_str())
        .param("certified_box", "-1:2");
    let provenance = Provenance {
        gadget_sha256: Some(sha256_hex(write_isoped(gadget))),
        source_sha256: Some(source_digest(inst)),
        ..provenance
    };
    let out = LatticeInstance { kind: ProblemKind::Cvp, norm: NormExponent::Exact(p), rank: n, groups, threshold, provenance };
    out.validate()?;
    Ok(out)
}

/// High-rank reduction: rank `N = n + (k - 2) m` with one `k - 2` switch block
/// per clause, `k = inst.width`.
///
/// Clause row: `+-1` on the clause's literals and `-1` on its switch block,
/// target `3/2 - |N_i|`, weight `w_i`. Identity weight
/// `alpha = W (1/2)^p + (W_tot - W)(3/2)^p`, threshold `alpha (N + 1)`.
pub fn maxksat_to_cvp_highrank(inst: &WeightedMaxSatInstance, p: u32) -> Result<CvpInstance, ReductionError> {
    if p == 0 {
        return Err(ReductionError::Parameter("p must be at least 1".into()));
    }
    let k = inst.width;
    if k < 2 {
        return Err(ReductionError::Width { clause: 0, len: k, width: 2 });
    }
    check_width(&inst.cnf, k)?;
    let n = inst.num_vars();
    let m = inst.clauses().len();
    let sw = k - 2;
    let big_n = n + sw * m;
    let one = Rational::one();
    let mut groups = Vec::new();
    for (i, (clause, &w)) in inst.clauses().iter().zip(&inst.weights).enumerate() {
        let (mut row, neg) = literal_row(clause, big_n, &one);
        for c in &mut row[n + sw * i..n + sw * (i + 1)] {
            *c = -one.clone();
        }
        let target = int(3) * half() - int(neg as u64);
        push_row(&mut groups, int(w), row, target);
    }
    let w_tot = int(inst.total_weight());
    let w = int(inst.threshold);
    let alpha = &w * rational_pow(&half(), p) + (&w_tot - &w) * rational_pow(&(int(3) * half()), p);
    groups.push(WeightedRowGroup::scaled_identity(big_n, alpha.clone(), int(2), one));
    let threshold = &alpha * int(big_n as u64 + 1);
    let mut provenance = Provenance::new("highrank", "max-k-sat to high-rank cvp with unary switch blocks")
        .param("p", p)
        .param("k", k)
        .param("n", n)
        .param("m", m)
        .param("N", big_n)
        .param("W", inst.threshold)
        .param("W_total", inst.total_weight())
        .param("alpha", format_rational(&alpha))
        .param("certified_box", "-1:2");
    provenance.source_sha256 = Some(source_digest(inst));
    debug_assert!(!alpha.is_negative());
    let out = LatticeInstance { kind: ProblemKind::Cvp, norm: NormExponent::Exact(p), rank: big_n, groups, threshold, provenance };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Scalar};
    use crate::latticekit::dist_pow;
    use crate::parallelepiped::l1_family;
    use crate::satkit::{Clause, Cnf};

    fn formula(n: usize, clauses: &[&[i64]]) -> WeightedMaxSatInstance {
        let cs = clauses.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect();
        WeightedMaxSatInstance::unweighted(Cnf::new(n, cs).unwrap())
    }

    fn d(inst: &CvpInstance, z: &[i64]) -> Rational {
        match dist_pow(inst, z).unwrap() {
            Scalar::Exact(r) => r,
            Scalar::Float(_) => unreachable!(),
        }
    }

    #[test]
    fn rankn_one_clause_example() {
        let f = formula(2, &[&[1, 2]]).with_threshold(1).unwrap();
        let inst = maxksat_to_cvp_rankn(&f, &l1_family(2).unwrap()).unwrap();
        assert_eq!(inst.threshold, rat(3, 1));
        assert_eq!(inst.rank, 2);
        assert_eq!(d(&inst, &[1, 0]), rat(3, 1));
        assert_eq!(d(&inst, &[0, 0]), rat(5, 1));
    }

    #[test]
    fn rankn_rejects_wide_clauses() {
        let f = formula(3, &[&[1, 2, 3]]);
        let e = maxksat_to_cvp_rankn(&f, &l1_family(2).unwrap());
        assert!(matches!(e, Err(ReductionError::GadgetMismatch(_))));
    }

    #[test]
    fn highrank_example() {
        let f = formula(2, &[&[1, 2], &[-1, 2]]);
        let inst = maxksat_to_cvp_highrank(&f, 1).unwrap();
        assert_eq!(inst.threshold, rat(3, 1));
        assert_eq!(d(&inst, &[1, 1]), rat(3, 1));
        assert_eq!(d(&inst, &[1, 0]), rat(4, 1));
    }

    #[test]
    fn highrank_switch_block_absorbs_extra_literals() {
        let f = formula(3, &[&[1, 2, 3]]);
        let inst = maxksat_to_cvp_highrank(&f, 3).unwrap();
        assert_eq!(inst.rank, 4);
        let clause_cost = |z: &[i64]| {
            let g = &inst.groups[0];
            let dot: Rational = g.rows[0].iter().zip(z).map(|(a, &x)| a * rat(x, 1)).sum();
            (dot - &g.target[0]).abs()
        };
        assert_eq!(clause_cost(&[1, 1, 1, 1]), rat(1, 2));
        assert_eq!(clause_cost(&[1, 1, 1, 0]), rat(3, 2));
        assert_eq!(clause_cost(&[0, 0, 0, 0]), rat(3, 2));
    }
}
