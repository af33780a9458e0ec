use num_traits::{One, Zero};
use proptest::prelude::*;
use satlat_core::exactnum::{abs_pow_exact, rat, NormExponent, Rational, RationalMatrix, Scalar};
use satlat_core::parallelepiped::{
    build_m_matrix, construct_isoped, l2_alternating_sum, m_matrix_exact, pmone_transform, validate_isoped,
    vertex_norm_pow, vertex_norm_pow_direct, MMatrix, WeightProfile,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| rat(a, b))
}

/// `t*` in `[-k, -k + 2]`.
fn tstar(k: usize) -> impl Strategy<Value = Rational> {
    (0i64..=60).prop_map(move |i| rat(-(k as i64), 1) + rat(i, 30))
}

fn vt(d: usize, k: usize) -> impl Strategy<Value = (RationalMatrix, Vec<Rational>)> {
    (
        prop::collection::vec(prop::collection::vec(small_rat(), k), d).prop_map(RationalMatrix::from_rows),
        prop::collection::vec(small_rat(), d),
    )
}

fn pnorm_pow(v: &[Rational], p: u32) -> Rational {
    v.iter().map(|x| abs_pow_exact(x, p)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn m_rows_have_equal_positive_sums((k, t) in (2usize..=6).prop_flat_map(|k| (Just(k), tstar(k))), p in prop::sample::select(vec![1u32, 3, 5])) {
        let MMatrix::Exact(m) = build_m_matrix(k, NormExponent::Exact(p), &Scalar::Exact(t)).unwrap() else {
            panic!("integer p gives an exact matrix");
        };
        let sums: Vec<Rational> = (0..=k).map(|j| m.row(j).iter().sum()).collect();
        prop_assert!(sums[0] > Rational::zero());
        prop_assert!(sums.iter().all(|s| *s == sums[0]));
    }

    #[test]
    fn vertex_norms_agree_on_both_paths(
        (k, t, alphas) in (2usize..=5).prop_flat_map(|k| (Just(k), tstar(k), prop::collection::vec((0i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b)), k + 1))),
        p in prop::sample::select(vec![1u32, 3, 5]),
    ) {
        let profile = WeightProfile {
            k,
            p: NormExponent::Exact(p),
            alphas: alphas.into_iter().map(Scalar::Exact).collect(),
            t_star: Scalar::Exact(t),
            epsilon: Scalar::Exact(Rational::zero()),
            exact: true,
        };
        for j in 0..=k {
            prop_assert_eq!(vertex_norm_pow(&profile, j).unwrap(), vertex_norm_pow_direct(&profile, j));
        }
    }

    #[test]
    fn pmone_transform_preserves_norms((v, t) in (1usize..=3, 2usize..=4).prop_flat_map(|(d, k)| vt(d, k)), p in 1u32..=4) {
        let k = v.cols();
        let (v2, t2) = pmone_transform(&v, &t);
        for mask in 0..1u32 << k {
            let x: Vec<Rational> = (0..k).map(|i| rat(i64::from(mask >> i & 1), 1)).collect();
            let y: Vec<Rational> = x.iter().map(|xi| xi * rat(2, 1) - Rational::one()).collect();
            let a: Vec<Rational> = v2.mul_vec(&x).unwrap().iter().zip(&t2).map(|(u, s)| u - s).collect();
            let b: Vec<Rational> = v.mul_vec(&y).unwrap().iter().zip(&t).map(|(u, s)| u - s).collect();
            prop_assert_eq!(pnorm_pow(&a, p), pnorm_pow(&b, p));
        }
    }

    #[test]
    fn l2_alternating_sum_vanishes((v, t) in (1usize..=4, 3usize..=5).prop_flat_map(|(d, k)| vt(d, k))) {
        prop_assert!(l2_alternating_sum(&v, &t).is_zero());
    }

    #[test]
    fn p2_matrix_is_singular((k, t) in (3usize..=5).prop_flat_map(|k| (Just(k), tstar(k)))) {
        prop_assert!(m_matrix_exact(k, 2, &t).determinant().unwrap().is_zero());
    }
}

#[test]
fn constructions_validate() {
    for p in [1u32, 3, 5] {
        for k in 2..=5 {
            let g = construct_isoped(k, NormExponent::Exact(p)).unwrap();
            validate_isoped(&g, 1e-9).unwrap();
            let prof = g.profile.as_ref().unwrap();
            let alphas = prof.exact_alphas().unwrap();
            let eps = prof.epsilon.as_exact().unwrap().clone();
            let m_alpha = m_matrix_exact(k, p, prof.t_star.as_exact().unwrap()).mul_vec(&alphas).unwrap();
            assert_eq!(m_alpha[0], Rational::one() + &eps, "(p={p}, k={k})");
            assert!(m_alpha[1..].iter().all(|x| x.is_one()));
            assert!(eps > Rational::zero() && alphas.iter().all(|a| *a >= Rational::zero()));
        }
    }
}
