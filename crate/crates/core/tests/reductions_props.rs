use proptest::prelude::*;
use satlat_core::rng::SplitMix64;
use satlat_core::satkit::random::random_cnf_upto;
use satlat_core::satkit::WeightedMaxSatInstance;
use satlat_core::verify::{random_cvpp_sources, verify_instance, ReductionKind, SourceInstance, VerifyOptions};

fn source(n: usize, m: usize, k: usize, seed: u64) -> SourceInstance {
    let cnf = random_cnf_upto(&mut SplitMix64::new(seed), n, m, k.min(n));
    let mut instance = WeightedMaxSatInstance::unweighted(cnf);
    instance.width = instance.width.max(k);
    SourceInstance { name: format!("prop:{seed}"), instance }
}

fn check(reduction: ReductionKind, p: u32, src: &SourceInstance, seed: u64) -> Result<(), TestCaseError> {
    let mut opts = VerifyOptions::new(reduction);
    opts.p = p;
    opts.seed = seed;
    opts.chi_samples = 100;
    let rec = verify_instance(src, &opts, 0).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(rec.passed(), "{}", rec.to_json(false));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rankn_equivalence(n in 2usize..=6, m in 1usize..=10, k in 2usize..=3, p in prop::sample::select(vec![1u32, 3]), seed in any::<u64>()) {
        check(ReductionKind::Rankn, p, &source(n, m, k, seed), seed)?;
    }

    #[test]
    fn highrank_equivalence(n in 2usize..=5, m in 1usize..=5, k in 2usize..=3, p in 1u32..=3, seed in any::<u64>()) {
        check(ReductionKind::Highrank, p, &source(n, m, k, seed), seed)?;
    }

    #[test]
    fn max_norm_equivalence(n in 2usize..=7, m in 1usize..=14, k in 2usize..=4, seed in any::<u64>()) {
        let src = source(n, m, k.min(n), seed);
        check(ReductionKind::Inf, 1, &src, seed)?;
        check(ReductionKind::SvpInf, 1, &src, seed)?;
    }

    #[test]
    fn gap_equivalence(n in 2usize..=6, m in 1usize..=10, p in prop::sample::select(vec![1u32, 3]), seed in any::<u64>()) {
        check(ReductionKind::Gap2, p, &source(n, m, 2, seed), seed)?;
        check(ReductionKind::GapkL1, 1, &source(n, m, 3.min(n), seed), seed)?;
    }

    #[test]
    fn cvpp_equivalence(seed in any::<u64>(), p in 1u32..=2) {
        let src = random_cvpp_sources(3, 1, seed).remove(0);
        check(ReductionKind::Cvpp, p, &src, seed)?;
    }
}
