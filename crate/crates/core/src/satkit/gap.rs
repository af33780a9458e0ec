//! Gap-SAT transforms: clause sparsification and the 3-to-2 clause gadget.

use super::formula::{Clause, Cnf, GapSatInstance, Literal};
use super::SatError;
use crate::exactnum::{rat, Rational};
use crate::rng::SplitMix64;
use num_traits::{One, Zero};

/// The ten clauses replacing `(a | b | c)`, with `d` the fresh variable.
pub fn garey_gadget(a: Literal, b: Literal, c: Literal, d: usize) -> Vec<Clause> {
    let d = Literal::pos(d);
    let cl = |ls: &[Literal]| Clause::new(ls.to_vec()).expect("gadget clauses use distinct variables");
    vec![
        cl(&[a]),
        cl(&[b]),
        cl(&[c]),
        cl(&[d]),
        cl(&[a.negated(), b.negated()]),
        cl(&[a.negated(), c.negated()]),
        cl(&[b.negated(), c.negated()]),
        cl(&[a, d.negated()]),
        cl(&[b, d.negated()]),
        cl(&[c, d.negated()]),
    ]
}

/// Replace every 3-clause by its ten-clause gadget on a fresh variable `x_{n+i}`;
/// the gap parameters become `((6 + delta)/10, (6 + eps)/10)`.
pub fn garey_3to2(g: &GapSatInstance) -> Result<GapSatInstance, SatError> {
    let n = g.cnf.num_vars;
    let mut out = Vec::with_capacity(10 * g.cnf.clauses.len());
    for (i, c) in g.cnf.clauses.iter().enumerate() {
        if c.len() != 3 {
            return Err(SatError::Width { clause: i, len: c.len(), width: 3 });
        }
        let l = c.lits();
        out.extend(garey_gadget(l[0], l[1], l[2], n + i + 1));
    }
    let cnf = Cnf::new(n + g.cnf.clauses.len(), out)?;
    let ten = rat(10, 1);
    let six = rat(6, 1);
    Ok(GapSatInstance { cnf, delta: (&six + &g.delta) / &ten, eps: (&six + &g.eps) / &ten })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparsifyOutcome {
    pub instance: GapSatInstance,
    /// The slack parameter, midpoint of `(0, (delta' - delta)/(delta' + delta))`.
    pub alpha: Rational,
    pub keep_probability: Rational,
    pub seed: u64,
}

/// Keep each clause independently with probability `min{1, 10 n / (delta alpha^2 m)}`.
/// The output promises `(delta', eps)`.
pub fn sparsify_gap(g: &GapSatInstance, delta_prime: &Rational, seed: u64) -> Result<SparsifyOutcome, SatError> {
    let delta = &g.delta;
    if !(delta > &Rational::zero() && delta < delta_prime && delta_prime < &Rational::one()) {
        return Err(SatError::Parameter(format!(
            "need 0 < delta < delta' < 1, got delta = {delta}, delta' = {delta_prime}"
        )));
    }
    // (1 + a) delta / (1 - a) < delta'  <=>  a < (delta' - delta) / (delta' + delta)
    let bound = (delta_prime - delta) / (delta_prime + delta);
    let alpha = bound / rat(2, 1);
    let (n, m) = (g.cnf.num_vars, g.cnf.clauses.len());
    let keep_probability = if m == 0 {
        Rational::one()
    } else {
        let raw = rat(10 * n as i64, m as i64) / (delta * &alpha * &alpha);
        raw.min(Rational::one())
    };
    let mut rng = SplitMix64::new(seed);
    let kept: Vec<Clause> = g
        .cnf
        .clauses
        .iter()
        .filter(|_| rng.bernoulli(&keep_probability))
        .cloned()
        .collect();
    let cnf = Cnf::new(n, kept)?;
    let instance = GapSatInstance { cnf, delta: delta_prime.clone(), eps: g.eps.clone() };
    Ok(SparsifyOutcome { instance, alpha, keep_probability, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satkit::oracle::formula_value;

    fn lit(x: i64) -> Literal {
        Literal::from_dimacs(x).unwrap()
    }

    #[test]
    fn gadget_truth_table() {
        for signs in 0..8 {
            let ls: Vec<Literal> = (0..3)
                .map(|i| if signs >> i & 1 == 1 { lit(i + 1) } else { lit(-(i + 1)) })
                .collect();
            let gadget = garey_gadget(ls[0], ls[1], ls[2], 4);
            for a in 0..8 {
                let base: Vec<bool> = (0..3).map(|i| a >> i & 1 == 1).collect();
                let src = ls.iter().any(|l| l.eval(&base));
                let best = [false, true]
                    .iter()
                    .map(|&d| {
                        let mut full = base.clone();
                        full.push(d);
                        gadget.iter().filter(|c| c.is_satisfied(&full)).count()
                    })
                    .max()
                    .unwrap();
                assert_eq!(best, if src { 7 } else { 6 });
            }
        }
    }

    #[test]
    fn garey_shape() {
        let cnf = Cnf::new(3, vec![Clause::from_dimacs(&[1, -2, 3]).unwrap(), Clause::from_dimacs(&[-1, 2, 3]).unwrap()]).unwrap();
        let g = GapSatInstance::new(cnf, rat(1, 2), rat(1, 1)).unwrap();
        let out = garey_3to2(&g).unwrap();
        assert_eq!(out.cnf.num_vars, 5);
        assert_eq!(out.cnf.clauses.len(), 20);
        assert_eq!(out.delta, rat(13, 20));
        assert_eq!(out.eps, rat(7, 10));
        let bad = GapSatInstance::new(Cnf::new(2, vec![Clause::from_dimacs(&[1, 2]).unwrap()]).unwrap(), rat(1, 2), rat(1, 1)).unwrap();
        assert!(matches!(garey_3to2(&bad), Err(SatError::Width { .. })));
    }

    #[test]
    fn sparsify_clamps_and_is_deterministic() {
        let cnf = Cnf::new(3, vec![Clause::from_dimacs(&[1, -2, 3]).unwrap(); 5]).unwrap();
        let g = GapSatInstance::new(cnf, rat(1, 2), rat(1, 1)).unwrap();
        let o = sparsify_gap(&g, &rat(9, 10), 42).unwrap();
        assert_eq!(o.keep_probability, rat(1, 1));
        assert_eq!(o.instance.cnf, g.cnf);
        assert_eq!(o.alpha, rat(1, 7));
        assert!(sparsify_gap(&g, &rat(1, 2), 1).is_err());
        assert!(sparsify_gap(&g, &rat(1, 1), 1).is_err());
    }

    #[test]
    fn sparsify_subsamples_large_formulas() {
        // n = 2, m = 4000 forces a keep probability below 1.
        let mut rng = SplitMix64::new(5);
        let clauses: Vec<Clause> = (0..4000)
            .map(|_| if rng.coin() { Clause::from_dimacs(&[1, 2]).unwrap() } else { Clause::from_dimacs(&[1, -2]).unwrap() })
            .collect();
        let g = GapSatInstance::new(Cnf::new(2, clauses).unwrap(), rat(1, 2), rat(1, 1)).unwrap();
        let a = sparsify_gap(&g, &rat(9, 10), 7).unwrap();
        let b = sparsify_gap(&g, &rat(9, 10), 7).unwrap();
        assert_eq!(a, b);
        assert!(a.keep_probability < rat(1, 1));
        let kept = a.instance.cnf.clauses.len();
        assert!(kept > 1000 && kept < 3000, "kept {kept}");
        assert_eq!(formula_value(&a.instance.cnf).unwrap(), rat(1, 1));
    }
}
