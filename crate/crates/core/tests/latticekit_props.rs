use proptest::prelude::*;
use proptest::strategy::ValueTree;
use satlat_core::exactnum::{rat, NormExponent, Rational, Scalar};
use satlat_core::latticekit::{
    densify, dist_pow, read_instance, solve_enum, write_instance, CoefficientBox, EnumOptions, LatticeInstance,
    ProblemKind, Provenance, WeightedRowGroup,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

/// Sparse rows so the solver's column reordering kicks in.
fn entry() -> impl Strategy<Value = Rational> {
    prop_oneof![2 => Just(rat(0, 1)), 1 => small_rat()]
}

fn instance(kind: ProblemKind) -> impl Strategy<Value = LatticeInstance> {
    let norm = prop_oneof![
        (1u32..=3).prop_map(NormExponent::Exact),
        Just(NormExponent::Infinity),
    ];
    (2usize..=4, norm, 1usize..=3).prop_flat_map(move |(rank, norm, ngroups)| {
        let group = (1usize..=4).prop_flat_map(move |rows| {
            (
                (1i64..=4, 1i64..=2).prop_map(|(a, b)| rat(a, b)),
                prop::collection::vec(prop::collection::vec(entry(), rank), rows),
                prop::collection::vec(small_rat(), rows),
            )
        });
        (prop::collection::vec(group, ngroups), (0i64..=40, 1i64..=4).prop_map(|(a, b)| rat(a, b))).prop_map(
            move |(groups, threshold)| LatticeInstance {
                kind,
                norm,
                rank,
                groups: groups
                    .into_iter()
                    .map(|(w, rows, t)| {
                        let w = if norm == NormExponent::Infinity { rat(1, 1) } else { w };
                        let t = if kind == ProblemKind::Svp { vec![rat(0, 1); t.len()] } else { t };
                        WeightedRowGroup::new(w, rows, t)
                    })
                    .collect(),
                threshold,
                provenance: Provenance::new("test", "random instance").param("certified_box", "-1:1"),
            },
        )
    })
}

fn any_instance() -> impl Strategy<Value = LatticeInstance> {
    prop_oneof![instance(ProblemKind::Cvp), instance(ProblemKind::Svp)]
}

fn points(bx: &CoefficientBox) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for (l, h) in bx.lo.iter().zip(&bx.hi) {
        out = out.into_iter().flat_map(|p| (*l..=*h).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

fn exact(s: &Scalar) -> Rational {
    s.as_exact().cloned().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn enumeration_matches_brute_force(inst in any_instance(), lo in -2i64..=0, hi in 0i64..=2) {
        let bx = CoefficientBox::uniform(inst.rank, lo, hi);
        let r = solve_enum(&inst, &bx, EnumOptions::default()).unwrap();
        let mut best: Option<(Rational, Vec<i64>)> = None;
        let mut count = 0;
        for z in points(&bx) {
            if inst.kind == ProblemKind::Svp && z.iter().all(|&x| x == 0) {
                continue;
            }
            let v = exact(&dist_pow(&inst, &z).unwrap());
            if v <= inst.threshold {
                count += 1;
            }
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, z));
            }
        }
        prop_assert_eq!(r.count, count);
        prop_assert_eq!(r.yes, count > 0);
        prop_assert_eq!(r.best_value.map(|v| exact(&v)), best.as_ref().map(|b| b.0.clone()));
        prop_assert_eq!(r.witness, best.map(|b| b.1));
    }

    #[test]
    fn enlarging_the_box_is_monotone(inst in any_instance()) {
        let small = solve_enum(&inst, &CoefficientBox::uniform(inst.rank, 0, 1), EnumOptions::default()).unwrap();
        let big = solve_enum(&inst, &CoefficientBox::uniform(inst.rank, -1, 2), EnumOptions::default()).unwrap();
        prop_assert!(big.count >= small.count);
        if let (Some(b), Some(s)) = (&big.best_value, &small.best_value) {
            prop_assert!(exact(b) <= exact(s));
        }
    }

    #[test]
    fn format_round_trip_is_byte_identical(inst in any_instance()) {
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn densify_matches_weighted_cost(inst in instance(ProblemKind::Cvp), z in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(inst.norm.is_finite());
        let z = &z[..inst.rank];
        let d = densify(&inst).unwrap();
        let p = inst.norm.as_f64();
        let dense: f64 = d
            .rows
            .iter()
            .zip(&d.target)
            .map(|(row, t)| (row.iter().zip(z).map(|(a, &b)| a * b as f64).sum::<f64>() - t).abs().powf(p))
            .sum();
        let want = dist_pow(&inst, z).unwrap().to_f64();
        prop_assert!((dense - want).abs() <= 1e-6 * want.abs().max(1.0), "{dense} vs {want}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = any_instance();
    for _ in 0..30 {
        let inst = strat.new_tree(&mut runner).unwrap().current();
        let bx = CoefficientBox::uniform(inst.rank, -2, 2);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| solve_enum(&inst, &bx, EnumOptions::default()).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
