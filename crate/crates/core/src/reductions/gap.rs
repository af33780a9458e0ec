//! Gap-SAT to gap-CVP: the width-2 reduction for every finite p, the l1
//! variant for k-SAT, and the sparsify / 3-to-2 / width-2 pipeline.

use super::{check_width, cnf_digest, literal_row, ReductionError};
use crate::digest::sha256_hex;
use crate::exactnum::{format_rational, rat, rational_pow, rational_to_f64, NormExponent, Rational};
use crate::latticekit::{write_instance, CvpInstance, LatticeInstance, ProblemKind, Provenance, StageRecord, WeightedRowGroup};
use crate::satkit::{garey_3to2, sparsify_gap, GapSatInstance, SparsifyOutcome};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Approximation factor, kept exact as `gamma^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFactor {
    pub p: u32,
    pub gamma_pow: Rational,
}

impl GammaFactor {
    pub fn gamma(&self) -> f64 {
        rational_to_f64(&self.gamma_pow).powf(1.0 / self.p as f64)
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 1 {
            write!(f, "gamma = {} (~{:.12})", format_rational(&self.gamma_pow), self.gamma())
        } else {
            write!(f, "gamma^{} = {} (gamma ~{:.12})", self.p, format_rational(&self.gamma_pow), self.gamma())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReduction {
    pub instance: CvpInstance,
    pub gamma: GammaFactor,
}

fn three_pow(p: u32) -> Rational {
    rational_pow(&rat(3, 1), p)
}

/// Width-2 Gap-SAT to CVP_p: entries `+-2`, target `3 - 2|N_i|`, weight 1,
/// threshold `eps m + (1 - eps) m 3^p`.
pub fn gap2sat_to_cvp(g: &GapSatInstance, p: u32) -> Result<GapReduction, ReductionError> {
    if p == 0 {
        return Err(ReductionError::Parameter("p must be at least 1".into()));
    }
    check_width(&g.cnf, 2)?;
    let n = g.cnf.num_vars;
    let m = g.cnf.clauses.len();
    let mut rows = Vec::with_capacity(m);
    let mut target = Vec::with_capacity(m);
    for c in &g.cnf.clauses {
        let (row, neg) = literal_row(c, n, &rat(2, 1));
        rows.push(row);
        target.push(rat(3 - 2 * neg as i64, 1));
    }
    let one = Rational::one();
    let t3 = three_pow(p);
    let mr = rat(m as i64, 1);
    let threshold = &g.eps * &mr + (&one - &g.eps) * &mr * &t3;
    let gamma_pow = (&g.delta + (&one - &g.delta) * &t3) / (&g.eps + (&one - &g.eps) * &t3);
    let mut provenance = Provenance::new("gap2", "gap-2-sat to gap-cvp")
        .param("p", p)
        .param("n", n)
        .param("m", m)
        .param("delta", format_rational(&g.delta))
        .param("eps", format_rational(&g.eps))
        .param("gamma_pow", format_rational(&gamma_pow))
        .param("certified_box", "-2:3");
    provenance.source_sha256 = Some(cnf_digest(&g.cnf));
    let instance = LatticeInstance {
        kind: ProblemKind::Cvp,
        norm: NormExponent::Exact(p),
        rank: n,
        groups: vec![WeightedRowGroup::new(one, rows, target)],
        threshold,
        provenance,
    };
    instance.validate()?;
    Ok(GapReduction { instance, gamma: GammaFactor { p, gamma_pow } })
}

/// Coordinates `>= 1` become 1, everything else 0.
pub fn chi_round(z: &[i64]) -> Vec<i64> {
    z.iter().map(|&x| i64::from(x >= 1)).collect()
}

/// Gap-k-SAT to CVP_1 with two rows per clause: both `+-1` on the literals,
/// targets `k - |N_i|` and `1 - |N_i|`. A satisfied clause costs `k - 1`, an
/// unsatisfied one `k + 1`.
pub fn gapksat_to_cvp1(g: &GapSatInstance, k: usize) -> Result<GapReduction, ReductionError> {
    if k < 2 {
        return Err(ReductionError::Parameter(format!("k must be at least 2, got {k}")));
    }
    check_width(&g.cnf, k)?;
    let n = g.cnf.num_vars;
    let m = g.cnf.clauses.len();
    let ki = k as i64;
    let mut rows = Vec::with_capacity(2 * m);
    let mut target = Vec::with_capacity(2 * m);
    for c in &g.cnf.clauses {
        let (row, neg) = literal_row(c, n, &Rational::one());
        let neg = neg as i64;
        rows.push(row.clone());
        target.push(rat(ki - neg, 1));
        rows.push(row);
        target.push(rat(1 - neg, 1));
    }
    let one = Rational::one();
    let (lo, hi) = (rat(ki - 1, 1), rat(ki + 1, 1));
    let mr = rat(m as i64, 1);
    let threshold = &g.eps * &mr * &lo + (&one - &g.eps) * &mr * &hi;
    let gamma_pow = (&g.delta * &lo + (&one - &g.delta) * &hi) / (&g.eps * &lo + (&one - &g.eps) * &hi);
    let mut provenance = Provenance::new("gapk-l1", "gap-k-sat to gap-cvp in l1")
        .param("p", 1)
        .param("k", k)
        .param("n", n)
        .param("m", m)
        .param("delta", format_rational(&g.delta))
        .param("eps", format_rational(&g.eps))
        .param("gamma", format_rational(&gamma_pow))
        .param("certified_box", "-2:3");
    provenance.source_sha256 = Some(cnf_digest(&g.cnf));
    let instance = LatticeInstance {
        kind: ProblemKind::Cvp,
        norm: NormExponent::Exact(1),
        rank: n,
        groups: vec![WeightedRowGroup::new(one, rows, target)],
        threshold,
        provenance,
    };
    instance.validate()?;
    Ok(GapReduction { instance, gamma: GammaFactor { p: 1, gamma_pow } })
}

/// `((6 + delta' + (4 - delta') 3^p) / (7 + 3^{p+1}))`, the pipeline's `gamma^p` for `eps = 1`.
pub fn gap_eth_gamma_pow(delta_prime: &Rational, p: u32) -> Rational {
    let t3 = three_pow(p);
    (rat(6, 1) + delta_prime + (rat(4, 1) - delta_prime) * &t3) / (rat(7, 1) + rat(3, 1) * &t3)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapEthOutput {
    pub instance: CvpInstance,
    pub gamma: GammaFactor,
    pub sparsified: SparsifyOutcome,
    pub two_sat: GapSatInstance,
}

fn stage(name: &str, params: &[(&str, String)], digest: String) -> StageRecord {
    StageRecord {
        name: name.into(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<BTreeMap<_, _>>(),
        output_sha256: digest,
    }
}

/// Sparsify, replace 3-clauses by the ten-clause gadget, then reduce the
/// width-2 instance. Every stage is recorded in the provenance.
pub fn gap_eth_pipeline(
    g: &GapSatInstance,
    delta_prime: &Rational,
    p: u32,
    seed: u64,
) -> Result<GapEthOutput, ReductionError> {
    let sparsified = sparsify_gap(g, delta_prime, seed)?;
    let two_sat = garey_3to2(&sparsified.instance)?;
    let GapReduction { mut instance, gamma } = gap2sat_to_cvp(&two_sat, p)?;
    let stages = vec![
        stage(
            "sparsify",
            &[
                ("delta", format_rational(&g.delta)),
                ("delta_prime", format_rational(delta_prime)),
                ("eps", format_rational(&g.eps)),
                ("alpha", format_rational(&sparsified.alpha)),
                ("keep_probability", format_rational(&sparsified.keep_probability)),
                ("seed", seed.to_string()),
                ("clauses_kept", sparsified.instance.cnf.clauses.len().to_string()),
            ],
            cnf_digest(&sparsified.instance.cnf),
        ),
        stage(
            "garey3to2",
            &[
                ("delta", format_rational(&two_sat.delta)),
                ("eps", format_rational(&two_sat.eps)),
                ("variables", two_sat.cnf.num_vars.to_string()),
                ("clauses", two_sat.cnf.clauses.len().to_string()),
            ],
            cnf_digest(&two_sat.cnf),
        ),
        stage("gap2", &[("p", p.to_string())], sha256_hex(write_instance(&instance))),
    ];
    let mut provenance = Provenance::new("gap-eth", "gap-3-sat to gap-cvp via sparsification and 3-to-2 gadget")
        .param("p", p)
        .param("delta", format_rational(&g.delta))
        .param("delta_prime", format_rational(delta_prime))
        .param("eps", format_rational(&g.eps))
        .param("gamma_pow", format_rational(&gamma.gamma_pow))
        .param("certified_box", "-2:3");
    provenance.source_sha256 = Some(cnf_digest(&g.cnf));
    provenance.seed = Some(seed);
    provenance.stages = stages;
    instance.provenance = provenance;
    Ok(GapEthOutput { instance, gamma, sparsified, two_sat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;
    use crate::latticekit::dist_pow;
    use crate::satkit::{Clause, Cnf};

    fn gap(n: usize, clauses: &[&[i64]], delta: Rational, eps: Rational) -> GapSatInstance {
        let cs = clauses.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect();
        GapSatInstance::new(Cnf::new(n, cs).unwrap(), delta, eps).unwrap()
    }

    fn d(inst: &CvpInstance, z: &[i64]) -> Rational {
        match dist_pow(inst, z).unwrap() {
            Scalar::Exact(r) => r,
            Scalar::Float(_) => unreachable!(),
        }
    }

    #[test]
    fn gap2_four_clause_example() {
        let g = gap(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]], rat(1, 2), rat(3, 4));
        let r = gap2sat_to_cvp(&g, 1).unwrap();
        assert_eq!(r.instance.threshold, rat(6, 1));
        assert_eq!(d(&r.instance, &[1, 1]), rat(6, 1));
    }

    #[test]
    fn gap2_gamma_example() {
        let g = gap(1, &[&[1]], rat(1, 2), rat(1, 1));
        assert_eq!(gap2sat_to_cvp(&g, 1).unwrap().gamma.gamma_pow, rat(2, 1));
        let wide = gap(3, &[&[1, 2, 3]], rat(1, 2), rat(1, 1));
        assert!(matches!(gap2sat_to_cvp(&wide, 1), Err(ReductionError::Width { .. })));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_round(&[-1, 2, 1]), vec![0, 1, 1]);
        assert_eq!(chi_round(&[0, 1, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn l1_single_clause_threshold() {
        let g = gap(3, &[&[1, -2, 3]], rat(0, 1), rat(1, 1));
        let r = gapksat_to_cvp1(&g, 3).unwrap();
        assert_eq!(r.instance.threshold, rat(2, 1));
        assert_eq!(d(&r.instance, &[0, 0, 0]), rat(2, 1));
        assert_eq!(d(&r.instance, &[0, 1, 0]), rat(4, 1));
    }

    #[test]
    fn gap_eth_closed_form() {
        assert_eq!(gap_eth_gamma_pow(&rat(1, 2), 1), rat(17, 16));
        let g = gap(3, &[&[1, 2, 3], &[-1, 2, -3], &[1, -2, 3]], rat(1, 2), rat(1, 1));
        let out = gap_eth_pipeline(&g, &(rat(1, 2) + rat(1, 4)), 3, 7).unwrap();
        assert_eq!(out.gamma.gamma_pow, gap_eth_gamma_pow(&rat(3, 4), 3));
        assert_eq!(out.instance.provenance.stages.len(), 3);
        let again = gap_eth_pipeline(&g, &rat(3, 4), 3, 7).unwrap();
        assert_eq!(write_instance(&out.instance), write_instance(&again.instance));
    }
}
