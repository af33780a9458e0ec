//! Exhaustive Max-SAT oracle over bitmask assignments.

use super::formula::{Clause, Cnf, WeightedMaxSatInstance};
use super::SatError;
use crate::exactnum::Rational;
use rayon::prelude::*;

pub const DEFAULT_MAXSAT_LIMIT: usize = 24;

/// `|S_i(a)|`: how many literal positions of the clause are true under `a`.
pub fn sat_count(clause: &Clause, a: &[bool]) -> usize {
    clause.lits().iter().filter(|l| l.eval(a)).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub m_plus: usize,
    pub weight: u64,
}

pub fn eval_assignment(inst: &WeightedMaxSatInstance, a: &[bool]) -> Evaluation {
    let mut ev = Evaluation { m_plus: 0, weight: 0 };
    for (c, w) in inst.clauses().iter().zip(&inst.weights) {
        if c.is_satisfied(a) {
            ev.m_plus += 1;
            ev.weight += w;
        }
    }
    ev
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxSatResult {
    pub best_weight: u64,
    /// Lexicographically smallest optimal assignment (false < true, `x_1` first).
    pub best_assignment: Vec<bool>,
    pub count_optimal: u64,
    pub count_at_least_w: u64,
    /// Assignments satisfying every clause.
    pub count_satisfying: u64,
    /// Largest number of simultaneously satisfied clauses.
    pub best_m_plus: usize,
    /// `best_m_plus / m` (1 for an empty formula).
    pub val: Rational,
    pub decision: bool,
}

/// Clause as bitmasks; variable `j` sits at bit `n - j` so numeric order is lexicographic order.
#[derive(Clone, Copy)]
struct MaskClause {
    pos: u64,
    neg: u64,
    weight: u64,
}

fn masks(cnf: &Cnf, weights: &[u64]) -> Vec<MaskClause> {
    let n = cnf.num_vars;
    cnf.clauses
        .iter()
        .zip(weights)
        .map(|(c, &w)| {
            let mut mc = MaskClause { pos: 0, neg: 0, weight: w };
            for l in c.lits() {
                let bit = 1u64 << (n - l.var);
                if l.positive {
                    mc.pos |= bit;
                } else {
                    mc.neg |= bit;
                }
            }
            mc
        })
        .collect()
}

#[derive(Clone)]
struct Partial {
    best_weight: u64,
    best_index: u64,
    count_optimal: u64,
    count_at_least_w: u64,
    count_satisfying: u64,
    best_m_plus: usize,
}

impl Partial {
    fn merge(self, later: Partial) -> Partial {
        let (best_weight, best_index, count_optimal) = if later.best_weight > self.best_weight {
            (later.best_weight, later.best_index, later.count_optimal)
        } else if later.best_weight < self.best_weight {
            (self.best_weight, self.best_index, self.count_optimal)
        } else {
            (self.best_weight, self.best_index, self.count_optimal + later.count_optimal)
        };
        Partial {
            best_weight,
            best_index,
            count_optimal,
            count_at_least_w: self.count_at_least_w + later.count_at_least_w,
            count_satisfying: self.count_satisfying + later.count_satisfying,
            best_m_plus: self.best_m_plus.max(later.best_m_plus),
        }
    }
}

fn scan(clauses: &[MaskClause], lo: u64, hi: u64, w: u64) -> Partial {
    let m = clauses.len();
    let mut p = Partial {
        best_weight: 0,
        best_index: lo,
        count_optimal: 0,
        count_at_least_w: 0,
        count_satisfying: 0,
        best_m_plus: 0,
    };
    let mut first = true;
    for x in lo..hi {
        let (mut weight, mut sat) = (0u64, 0usize);
        for c in clauses {
            if (x & c.pos) | (!x & c.neg) != 0 {
                weight += c.weight;
                sat += 1;
            }
        }
        if first || weight > p.best_weight {
            p.best_weight = weight;
            p.best_index = x;
            p.count_optimal = 1;
            first = false;
        } else if weight == p.best_weight {
            p.count_optimal += 1;
        }
        if weight >= w {
            p.count_at_least_w += 1;
        }
        if sat == m {
            p.count_satisfying += 1;
        }
        p.best_m_plus = p.best_m_plus.max(sat);
    }
    p
}

/// Exhaustive search over all `2^n` assignments, `n <= limit` (at most 40).
pub fn brute_force_maxsat_limit(inst: &WeightedMaxSatInstance, limit: usize) -> Result<MaxSatResult, SatError> {
    let n = inst.num_vars();
    let limit = limit.min(40);
    if n > limit {
        return Err(SatError::LimitExceeded { n, limit });
    }
    let clauses = masks(&inst.cnf, &inst.weights);
    let total = 1u64 << n;
    let block = 1u64 << 14;
    let blocks = total.div_ceil(block);
    let w = inst.threshold;
    let merged = (0..blocks)
        .into_par_iter()
        .map(|b| scan(&clauses, b * block, ((b + 1) * block).min(total), w))
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(Partial::merge)
        .expect("at least one block");
    let best_assignment = (1..=n).map(|j| merged.best_index >> (n - j) & 1 == 1).collect();
    let m = inst.clauses().len();
    let val = if m == 0 {
        Rational::from_integer(1.into())
    } else {
        Rational::new((merged.best_m_plus as i64).into(), (m as i64).into())
    };
    Ok(MaxSatResult {
        best_weight: merged.best_weight,
        best_assignment,
        count_optimal: merged.count_optimal,
        count_at_least_w: merged.count_at_least_w,
        count_satisfying: merged.count_satisfying,
        best_m_plus: merged.best_m_plus,
        val,
        decision: merged.best_weight >= w,
    })
}

pub fn brute_force_maxsat(inst: &WeightedMaxSatInstance) -> Result<MaxSatResult, SatError> {
    brute_force_maxsat_limit(inst, DEFAULT_MAXSAT_LIMIT)
}

/// `val` of a plain formula.
pub fn formula_value(cnf: &Cnf) -> Result<Rational, SatError> {
    Ok(brute_force_maxsat(&WeightedMaxSatInstance::unweighted(cnf.clone()))?.val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn cnf(n: usize, cls: &[&[i64]]) -> Cnf {
        Cnf::new(n, cls.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn sat_count_examples() {
        let c = Clause::from_dimacs(&[1, 2]).unwrap();
        assert_eq!(sat_count(&c, &[true, true]), 2);
        let c = Clause::from_dimacs(&[-1, 2]).unwrap();
        assert_eq!(sat_count(&c, &[true, false]), 0);
        let c = Clause::from_dimacs(&[1, -2, 3]).unwrap();
        assert_eq!(sat_count(&c, &[false, false, false]), 1);
    }

    #[test]
    fn eval_examples() {
        let i = WeightedMaxSatInstance::unweighted(cnf(2, &[&[1, 2], &[-1, 2]]));
        assert_eq!(eval_assignment(&i, &[true, true]).m_plus, 2);
        let i = WeightedMaxSatInstance::unweighted(cnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]));
        assert_eq!(eval_assignment(&i, &[true, true]).m_plus, 3);
        let i = WeightedMaxSatInstance::unweighted(cnf(2, &[&[1], &[2]]));
        assert_eq!(eval_assignment(&i, &[false, false]).m_plus, 0);
    }

    #[test]
    fn brute_force_examples() {
        let i = WeightedMaxSatInstance::unweighted(cnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]));
        let r = brute_force_maxsat(&i).unwrap();
        assert_eq!(r.best_weight, 3);
        assert_eq!(r.val, rat(3, 4));
        assert_eq!(r.count_optimal, 4);
        assert_eq!(r.best_assignment, vec![false, false]);
        assert!(!r.decision);

        let i = WeightedMaxSatInstance::unweighted(cnf(1, &[&[1]]));
        let r = brute_force_maxsat(&i).unwrap();
        assert_eq!((r.best_weight, r.count_optimal), (1, 1));
        assert_eq!(r.best_assignment, vec![true]);

        let i = WeightedMaxSatInstance::new(cnf(1, &[&[1], &[-1]]), vec![2, 2], 4, 1).unwrap();
        assert!(!brute_force_maxsat(&i).unwrap().decision);
    }

    #[test]
    fn limit_is_enforced() {
        let i = WeightedMaxSatInstance::unweighted(cnf(30, &[&[1]]));
        assert!(matches!(brute_force_maxsat(&i), Err(SatError::LimitExceeded { .. })));
    }
}
