//! Exact checks on the structure of `det M_k(p, .)` and the l2 obstruction.

use super::gadget::construct_isoped;
use super::profile::m_matrix_exact;
use super::ParallelepipedError;
use crate::exactnum::{rat, NormExponent, Rational, RationalMatrix};
use crate::rng::SplitMix64;
use num_traits::{One, Zero};

/// Top coefficient of `t* -> det M_k(p, t*)` on `[-k, -k+2]`, by exact interpolation
/// through `(k+1)p + 1` equispaced points (the polynomial has degree at most `(k+1)p` there).
pub fn leading_coefficient(k: usize, p: u32) -> Result<Rational, ParallelepipedError> {
    if k < 2 {
        return Err(ParallelepipedError::InvalidWidth(k));
    }
    if p % 2 == 0 {
        return Err(ParallelepipedError::InvalidArgument(format!("p = {p} must be odd")));
    }
    let deg = (k + 1) * p as usize;
    let ts: Vec<Rational> = (0..=deg)
        .map(|i| rat(-(k as i64), 1) + rat(2 * i as i64, deg as i64))
        .collect();
    let vals: Vec<Rational> = ts
        .iter()
        .map(|t| m_matrix_exact(k, p, t).determinant().expect("square"))
        .collect();
    // The top divided difference f[t_0, ..., t_deg] is the leading coefficient.
    let mut top = Rational::zero();
    for (i, ti) in ts.iter().enumerate() {
        let mut den = Rational::one();
        for (j, tj) in ts.iter().enumerate() {
            if i != j {
                den *= ti - tj;
            }
        }
        top += &vals[i] / den;
    }
    Ok(top)
}

/// The value `2^k (2 - 2^k)`.
pub fn expected_leading_coefficient(k: usize) -> Rational {
    let two_k = rat(1i64 << k, 1);
    &two_k * (rat(2, 1) - &two_k)
}

/// `sum_{S subset [k]} (-1)^{|S|} |t - sum_{i in S} v_i|_2^2`, columns of `v` are the `v_i`.
pub fn l2_alternating_sum(v: &RationalMatrix, t: &[Rational]) -> Rational {
    let (d, k) = (v.rows(), v.cols());
    assert_eq!(t.len(), d, "target length must match the row count");
    let mut acc = Rational::zero();
    for s in 0..1usize << k {
        let mut sq = Rational::zero();
        for r in 0..d {
            let mut x = t[r].clone();
            for i in 0..k {
                if s >> i & 1 == 1 {
                    x -= v.get(r, i);
                }
            }
            sq += &x * &x;
        }
        if s.count_ones() % 2 == 0 {
            acc += sq;
        } else {
            acc -= sq;
        }
    }
    acc
}

/// Outcome of the p = 2 falsification checks for one width.
#[derive(Debug, Clone, PartialEq)]
pub struct NogoReport {
    pub k: usize,
    pub det_samples: usize,
    /// Samples with `det M_k(2, t*) = 0` exactly.
    pub det_zero: usize,
    pub construction_failed: bool,
    pub l2_samples: usize,
    pub l2_zero: usize,
}

impl NogoReport {
    pub fn passed(&self) -> bool {
        self.det_zero == self.det_samples && self.construction_failed && self.l2_zero == self.l2_samples
    }
}

fn small_rational(rng: &mut SplitMix64) -> Rational {
    rat(rng.range_i64(-9, 9), rng.range_i64(1, 7))
}

/// Rational `t*` samples in `[-k, -k+2]` must give a singular `M_k(2, t*)`,
/// the construction must fail, and the alternating l2 sum must vanish on random
/// rational `(V, t)` with `d` in `1..=4`.
pub fn p2_nogo(k: usize, det_samples: usize, l2_samples: usize, seed: u64) -> NogoReport {
    let mut rng = SplitMix64::new(seed);
    let mut det_zero = 0;
    for _ in 0..det_samples {
        let den = rng.range_i64(1, 50);
        let num = rng.range_i64(0, den);
        let t = rat(-(k as i64), 1) + rat(2 * num, den);
        if m_matrix_exact(k, 2, &t).determinant().expect("square").is_zero() {
            det_zero += 1;
        }
    }
    let construction_failed = matches!(
        construct_isoped(k, NormExponent::Exact(2)),
        Err(ParallelepipedError::ConstructionFailure { .. })
    );
    let mut l2_zero = 0;
    for _ in 0..l2_samples {
        let d = rng.range_i64(1, 4) as usize;
        let v = RationalMatrix::from_fn(d, k, |_, _| small_rational(&mut rng));
        let t: Vec<Rational> = (0..d).map(|_| small_rational(&mut rng)).collect();
        if l2_alternating_sum(&v, &t).is_zero() {
            l2_zero += 1;
        }
    }
    NogoReport { k, det_samples, det_zero, construction_failed, l2_samples, l2_zero }
}
