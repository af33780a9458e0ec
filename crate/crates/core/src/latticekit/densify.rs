//! Plain float basis/target export. Approximate by nature: weights turn into
//! `weight^{1/p}` row scalings.

use super::instance::{LatticeInstance, ProblemKind, Provenance};
use super::LatticeError;
use crate::exactnum::{rational_to_f64, NormExponent};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseInstance {
    pub kind: ProblemKind,
    pub norm: NormExponent,
    pub rank: usize,
    pub rows: Vec<Vec<f64>>,
    pub target: Vec<f64>,
    /// `r` itself, not `r^p`.
    pub threshold: f64,
    pub provenance: Provenance,
}

pub fn densify(inst: &LatticeInstance) -> Result<DenseInstance, LatticeError> {
    let p = match inst.norm {
        NormExponent::Infinity => return Err(LatticeError::UnsupportedNorm("densify needs a finite norm".into())),
        p => p.as_f64(),
    };
    let mut rows = Vec::with_capacity(inst.num_rows());
    let mut target = Vec::with_capacity(inst.num_rows());
    for g in &inst.groups {
        let s = rational_to_f64(&g.weight).powf(1.0 / p);
        for (r, t) in g.rows.iter().zip(&g.target) {
            rows.push(r.iter().map(|x| s * rational_to_f64(x)).collect());
            target.push(s * rational_to_f64(t));
        }
    }
    Ok(DenseInstance {
        kind: inst.kind,
        norm: inst.norm,
        rank: inst.rank,
        rows,
        target,
        threshold: rational_to_f64(&inst.threshold).powf(1.0 / p),
        provenance: inst.provenance.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::latticekit::instance::WeightedRowGroup;

    fn one_row(weight: i64, p: NormExponent) -> LatticeInstance {
        LatticeInstance {
            kind: ProblemKind::Cvp,
            norm: p,
            rank: 1,
            groups: vec![WeightedRowGroup::new(rat(weight, 1), vec![vec![rat(1, 1)]], vec![rat(1, 2)])],
            threshold: rat(8, 1),
            provenance: Provenance::default(),
        }
    }

    #[test]
    fn scaling_examples() {
        let d = densify(&one_row(8, NormExponent::Exact(1))).unwrap();
        assert_eq!(d.rows, vec![vec![8.0]]);
        let d = densify(&one_row(8, NormExponent::Exact(3))).unwrap();
        assert!((d.rows[0][0] - 2.0).abs() < 1e-12);
        assert!((d.threshold - 2.0).abs() < 1e-12);
        let d = densify(&one_row(2, NormExponent::Exact(2))).unwrap();
        assert!((d.rows[0][0] - 2f64.sqrt()).abs() < 1e-12);
        assert!(densify(&one_row(1, NormExponent::Infinity)).is_err());
    }
}
