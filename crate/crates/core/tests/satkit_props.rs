use proptest::prelude::*;
use proptest::strategy::ValueTree;
use satlat_core::satkit::{
    brute_force_maxsat, garey_3to2, parse_dimacs, sat_count, write_dimacs, Clause, Cnf, GapSatInstance, Literal,
    WeightedMaxSatInstance,
};
use satlat_core::exactnum::rat;

fn clause(n: usize, max_len: usize) -> impl Strategy<Value = Clause> {
    prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=max_len.min(n))
        .prop_flat_map(|vars| {
            let len = vars.len();
            (Just(vars), prop::collection::vec(any::<bool>(), len))
        })
        .prop_map(|(vars, signs)| {
            Clause::new(vars.into_iter().zip(signs).map(|(var, positive)| Literal { var, positive }).collect()).unwrap()
        })
}

fn weighted(n: usize) -> impl Strategy<Value = WeightedMaxSatInstance> {
    (prop::collection::vec(clause(n, 3), 1..10), prop::collection::vec(1u64..5, 10)).prop_map(move |(cs, ws)| {
        let m = cs.len();
        let cnf = Cnf::new(n, cs).unwrap();
        WeightedMaxSatInstance::new(cnf, ws[..m].to_vec(), 1, 3).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dimacs_round_trip(inst in weighted(6), weighted_form in any::<bool>()) {
        let inst = if weighted_form { inst } else { WeightedMaxSatInstance::unweighted(inst.cnf) };
        let text = write_dimacs(&inst, weighted_form);
        let back = parse_dimacs(&text).unwrap().instance;
        prop_assert_eq!(&back.cnf, &inst.cnf);
        prop_assert_eq!(&back.weights, &inst.weights);
        prop_assert_eq!(write_dimacs(&back, weighted_form), text);
    }

    #[test]
    fn sat_count_matches_satisfaction(c in clause(6, 4), mask in 0u32..64) {
        let a: Vec<bool> = (0..6).map(|j| mask >> j & 1 == 1).collect();
        prop_assert_eq!(c.is_satisfied(&a), sat_count(&c, &a) >= 1);
    }

    #[test]
    fn maxsat_invariant_under_clause_order_and_renaming(inst in weighted(6), seed in any::<u64>()) {
        let best = brute_force_maxsat(&inst).unwrap().best_weight;
        let m = inst.cnf.clauses.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (seed.rotate_left(i as u32 * 7) ^ i as u64, i));
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = (1..=6).collect();
            p.rotate_left((seed % 6) as usize);
            p
        };
        let clauses = order
            .iter()
            .map(|&i| {
                let lits = inst.cnf.clauses[i].lits().iter().map(|l| Literal { var: perm[l.var - 1], positive: l.positive }).collect();
                Clause::new(lits).unwrap()
            })
            .collect();
        let weights = order.iter().map(|&i| inst.weights[i]).collect();
        let moved = WeightedMaxSatInstance::new(Cnf::new(6, clauses).unwrap(), weights, 1, 3).unwrap();
        prop_assert_eq!(brute_force_maxsat(&moved).unwrap().best_weight, best);
    }
}

/// Exhaustive for n <= 4, m <= 4: max over the auxiliary variables of the
/// satisfied gadget clauses is 6m plus the satisfied source clauses.
#[test]
fn garey_value_identity() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (3usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(clause(n, 3).prop_filter("width 3", |c| c.len() == 3), 1..=4)));
    for _ in 0..40 {
        let (n, cs) = strat.new_tree(&mut runner).unwrap().current();
        let m = cs.len();
        let cnf = Cnf::new(n, cs).unwrap();
        let out = garey_3to2(&GapSatInstance::new(cnf.clone(), rat(1, 2), rat(1, 1)).unwrap()).unwrap();
        assert_eq!(out.cnf.num_vars, n + m);
        assert_eq!(out.cnf.clauses.len(), 10 * m);
        for a in 0u32..1 << n {
            let orig: Vec<bool> = (0..n).map(|j| a >> j & 1 == 1).collect();
            let source = cnf.clauses.iter().filter(|c| c.is_satisfied(&orig)).count();
            let best = (0u32..1 << m)
                .map(|d| {
                    let mut full = orig.clone();
                    full.extend((0..m).map(|i| d >> i & 1 == 1));
                    out.cnf.clauses.iter().filter(|c| c.is_satisfied(&full)).count()
                })
                .max()
                .unwrap();
            assert_eq!(best, 6 * m + source);
        }
    }
}
