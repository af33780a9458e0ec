//! Seeded formula generators used by the verification harness and tests.

use super::formula::{Clause, Cnf, Literal};
use crate::rng::SplitMix64;

fn clause_on(rng: &mut SplitMix64, n: usize, len: usize) -> Clause {
    let vars = rng.sample_distinct(n, len);
    let lits = vars
        .into_iter()
        .map(|v| Literal { var: v + 1, positive: rng.coin() })
        .collect();
    Clause::new(lits).expect("distinct variables")
}

/// `m` clauses of exactly `k` distinct variables each.
pub fn random_kcnf(rng: &mut SplitMix64, n: usize, m: usize, k: usize) -> Cnf {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let clauses = (0..m).map(|_| clause_on(rng, n, k)).collect();
    Cnf::new(n, clauses).expect("variables in range")
}

/// Clause lengths uniform in `1..=kmax`.
pub fn random_cnf_upto(rng: &mut SplitMix64, n: usize, m: usize, kmax: usize) -> Cnf {
    assert!(kmax >= 1 && kmax <= n, "need 1 <= kmax <= n");
    let clauses = (0..m)
        .map(|_| {
            let len = rng.range_i64(1, kmax as i64) as usize;
            clause_on(rng, n, len)
        })
        .collect();
    Cnf::new(n, clauses).expect("variables in range")
}

/// Exact-width clauses all satisfied by a hidden assignment.
pub fn planted_kcnf(rng: &mut SplitMix64, n: usize, m: usize, k: usize) -> (Cnf, Vec<bool>) {
    let hidden: Vec<bool> = (0..n).map(|_| rng.coin()).collect();
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let c = clause_on(rng, n, k);
        if c.is_satisfied(&hidden) {
            clauses.push(c);
        }
    }
    (Cnf::new(n, clauses).expect("variables in range"), hidden)
}

/// Weights uniform in `1..=wmax`.
pub fn random_weights(rng: &mut SplitMix64, m: usize, wmax: u64) -> Vec<u64> {
    (0..m).map(|_| 1 + rng.below(wmax)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let mut rng = SplitMix64::new(3);
        let f = random_kcnf(&mut rng, 6, 10, 3);
        assert!(f.clauses.iter().all(|c| c.len() == 3));
        let f = random_cnf_upto(&mut rng, 6, 40, 2);
        assert!(f.clauses.iter().all(|c| c.len() <= 2));
        assert!(f.clauses.iter().any(|c| c.len() == 1));
        let (f, h) = planted_kcnf(&mut rng, 5, 30, 3);
        assert!(f.clauses.iter().all(|c| c.is_satisfied(&h)));
    }
}
