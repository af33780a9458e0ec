//! Symmetric weight profiles `(alpha_0..alpha_k, t*)` and the matrix `M_k(p, t*)`
//! that maps a profile to its vertex norms by Hamming weight.

use super::ParallelepipedError;
use crate::exactnum::{
    abs_pow_exact, binom_i, rat, rational_to_f64, FloatMatrix, NormExponent, Rational,
    RationalMatrix, Scalar, DEFAULT_FLOAT_TOL,
};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Grid size for the fallback `t*` scan when `p` is not an odd integer.
pub const DEFAULT_TSTAR_BUDGET: usize = 65;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    pub k: usize,
    pub p: NormExponent,
    pub alphas: Vec<Scalar>,
    pub t_star: Scalar,
    pub epsilon: Scalar,
    /// True iff `p` is an integer and every field is an exact rational.
    pub exact: bool,
}

impl WeightProfile {
    pub fn exact_alphas(&self) -> Option<Vec<Rational>> {
        self.alphas.iter().map(|a| a.as_exact().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MMatrix {
    Exact(RationalMatrix),
    Float(FloatMatrix),
}

fn entry_exact(k: usize, p: u32, t: &Rational, i: usize, j: usize) -> Rational {
    let mut acc = Rational::zero();
    for l in 0..=k {
        let c = binom_i(i as u64, l as i64) * binom_i((k - i) as u64, j as i64 - l as i64);
        if c.is_zero() {
            continue;
        }
        let arg = rat(2 * i as i64 + 2 * j as i64 - k as i64 - 4 * l as i64, 1) - t;
        acc += Rational::from_integer(c) * abs_pow_exact(&arg, p);
    }
    acc
}

fn entry_float(k: usize, p: f64, t: f64, i: usize, j: usize) -> f64 {
    let mut acc = 0.0;
    for l in 0..=k {
        let c = binom_f(i, l as i64) * binom_f(k - i, j as i64 - l as i64);
        if c == 0.0 {
            continue;
        }
        let arg = (2 * i + 2 * j) as f64 - k as f64 - 4.0 * l as f64 - t;
        acc += c * arg.abs().powf(p);
    }
    acc
}

fn binom_f(n: usize, k: i64) -> f64 {
    rational_to_f64(&Rational::from_integer(binom_i(n as u64, k)))
}

pub fn m_matrix_exact(k: usize, p: u32, t_star: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(k + 1, k + 1, |i, j| entry_exact(k, p, t_star, i, j))
}

pub fn m_matrix_float(k: usize, p: f64, t_star: f64) -> FloatMatrix {
    FloatMatrix::from_fn(k + 1, |i, j| entry_float(k, p, t_star, i, j))
}

/// `M_k(p, t*)`; exact whenever `p` is an integer and `t*` is rational.
pub fn build_m_matrix(k: usize, p: NormExponent, t_star: &Scalar) -> Result<MMatrix, ParallelepipedError> {
    match (p, t_star) {
        (NormExponent::Infinity, _) => Err(ParallelepipedError::InfiniteNorm),
        (NormExponent::Exact(p), Scalar::Exact(t)) => Ok(MMatrix::Exact(m_matrix_exact(k, p, t))),
        (p, t) => Ok(MMatrix::Float(m_matrix_float(k, p.as_f64(), t.to_f64()))),
    }
}

/// Closed form of the common row sum: `sum_s C(k,s) |2s - k - t*|^p`.
pub fn lambda_closed_form_exact(k: usize, p: u32, t_star: &Rational) -> Rational {
    (0..=k)
        .map(|s| {
            let arg = rat(2 * s as i64 - k as i64, 1) - t_star;
            Rational::from_integer(binom_i(k as u64, s as i64)) * abs_pow_exact(&arg, p)
        })
        .sum()
}

/// The common row sum `lambda` of `M_k(p, t*)`, cross-checked against row 0.
pub fn lambda_row_sum(k: usize, p: NormExponent, t_star: &Scalar) -> Result<Scalar, ParallelepipedError> {
    match build_m_matrix(k, p, t_star)? {
        MMatrix::Exact(m) => {
            let t = t_star.as_exact().expect("exact matrix implies exact t*");
            let closed = lambda_closed_form_exact(k, p.as_exact().unwrap(), t);
            let row0: Rational = m.row(0).iter().sum();
            if closed != row0 {
                return Err(ParallelepipedError::InternalInconsistency(format!(
                    "row sum {row0} differs from closed form {closed}"
                )));
            }
            Ok(Scalar::Exact(closed))
        }
        MMatrix::Float(m) => {
            let (pf, t) = (p.as_f64(), t_star.to_f64());
            let closed: f64 = (0..=k)
                .map(|s| binom_f(k, s as i64) * ((2 * s) as f64 - k as f64 - t).abs().powf(pf))
                .sum();
            let row0: f64 = (0..=k).map(|j| m.get(0, j)).sum();
            if (closed - row0).abs() > DEFAULT_FLOAT_TOL * closed.abs().max(1.0) {
                return Err(ParallelepipedError::InternalInconsistency(format!(
                    "row sum {row0} differs from closed form {closed}"
                )));
            }
            Ok(Scalar::Float(closed))
        }
    }
}

fn exact_grid(k: usize, steps: usize) -> Vec<Rational> {
    (0..=steps)
        .map(|i| rat(-(k as i64), 1) + rat(2 * i as i64, steps as i64))
        .collect()
}

fn first_nonsingular_exact(k: usize, p: u32, grid: &[Rational]) -> Option<Rational> {
    grid.par_iter()
        .position_first(|t| !m_matrix_exact(k, p, t).determinant().unwrap().is_zero())
        .map(|i| grid[i].clone())
}

/// First grid point of `[-k, -k+2]` at which `M_k(p, t*)` is invertible.
///
/// Odd integer `p` scans the `(k+1)p + 1` equispaced points with exact determinants.
/// Otherwise the `p = 1` winner is tried first, then a grid of `budget` points;
/// even integer `p` keeps exact determinants, real `p` uses a relative float test.
pub fn find_tstar(k: usize, p: NormExponent, budget: usize) -> Result<Scalar, ParallelepipedError> {
    if k < 2 {
        return Err(ParallelepipedError::InvalidWidth(k));
    }
    let fail = || ParallelepipedError::ConstructionFailure { k, p: p.to_string() };
    match p {
        NormExponent::Infinity => Err(ParallelepipedError::InfiniteNorm),
        NormExponent::Exact(pe) if pe % 2 == 1 => {
            let grid = exact_grid(k, (k + 1) * pe as usize);
            first_nonsingular_exact(k, pe, &grid).map(Scalar::Exact).ok_or_else(fail)
        }
        NormExponent::Exact(pe) => {
            let mut grid = vec![p1_winner(k)?];
            grid.extend(exact_grid(k, budget.max(2) - 1));
            first_nonsingular_exact(k, pe, &grid).map(Scalar::Exact).ok_or_else(fail)
        }
        NormExponent::Float(pf) => {
            let mut grid = vec![p1_winner(k)?];
            grid.extend(exact_grid(k, budget.max(2) - 1));
            let pos = grid.par_iter().position_first(|t| {
                !m_matrix_float(k, pf, rational_to_f64(t)).det_is_negligible(DEFAULT_FLOAT_TOL)
            });
            pos.map(|i| Scalar::Exact(grid[i].clone())).ok_or_else(fail)
        }
    }
}

fn p1_winner(k: usize) -> Result<Rational, ParallelepipedError> {
    let grid = exact_grid(k, k + 1);
    first_nonsingular_exact(k, 1, &grid)
        .ok_or(ParallelepipedError::ConstructionFailure { k, p: "1".into() })
}

/// `alpha = 1/lambda + eps * M^{-1} e_0` with `eps = (lambda * |M^{-1} e_0|_inf)^{-1}`.
pub fn solve_weights(k: usize, p: NormExponent, t_star: &Scalar) -> Result<WeightProfile, ParallelepipedError> {
    let lambda = lambda_row_sum(k, p, t_star)?;
    match build_m_matrix(k, p, t_star)? {
        MMatrix::Exact(m) => {
            let lambda = lambda.as_exact().unwrap().clone();
            let mut e0 = vec![Rational::zero(); k + 1];
            e0[0] = Rational::one();
            let x = m.linear_solve(&e0).map_err(|_| ParallelepipedError::Singular)?;
            let xmax = x.iter().map(|v| v.abs()).max().unwrap();
            let eps = (&lambda * xmax).recip();
            let base = lambda.recip();
            let alphas = x.iter().map(|v| Scalar::Exact(&base + &eps * v)).collect();
            Ok(WeightProfile {
                k,
                p,
                alphas,
                t_star: t_star.clone(),
                epsilon: Scalar::Exact(eps),
                exact: true,
            })
        }
        MMatrix::Float(m) => {
            let lambda = lambda.to_f64();
            let mut e0 = vec![0.0; k + 1];
            e0[0] = 1.0;
            let x = m.solve(&e0).ok_or(ParallelepipedError::Singular)?;
            let xmax = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let eps = 1.0 / (lambda * xmax);
            let alphas = x.iter().map(|v| Scalar::Float((1.0 / lambda + eps * v).max(0.0))).collect();
            Ok(WeightProfile {
                k,
                p,
                alphas,
                t_star: Scalar::Float(t_star.to_f64()),
                epsilon: Scalar::Float(eps),
                exact: false,
            })
        }
    }
}

/// `find_tstar` followed by `solve_weights`.
pub fn construct_profile(k: usize, p: NormExponent) -> Result<WeightProfile, ParallelepipedError> {
    if k < 2 {
        return Err(ParallelepipedError::InvalidWidth(k));
    }
    let t = find_tstar(k, p, DEFAULT_TSTAR_BUDGET)?;
    solve_weights(k, p, &t)
}

/// `|Vy - t*|_p^p` for `y` in `{-1,1}^k` with `j` positive entries, read off row `j` of `M alpha`.
pub fn vertex_norm_pow(profile: &WeightProfile, j: usize) -> Result<Scalar, ParallelepipedError> {
    let k = profile.k;
    if j > k {
        return Err(ParallelepipedError::InvalidArgument(format!("Hamming weight {j} exceeds k = {k}")));
    }
    match (profile.exact_alphas(), profile.p, &profile.t_star) {
        (Some(alphas), NormExponent::Exact(p), Scalar::Exact(t)) => {
            let m = m_matrix_exact(k, p, t);
            Ok(Scalar::Exact(m.row(j).iter().zip(&alphas).map(|(a, b)| a * b).sum()))
        }
        _ => {
            let m = m_matrix_float(k, profile.p.as_f64(), profile.t_star.to_f64());
            Ok(Scalar::Float((0..=k).map(|c| m.get(j, c) * profile.alphas[c].to_f64()).sum()))
        }
    }
}

/// The same quantity by summing over all `2^k` sign rows `v`, each weighted by `alpha_{k-|v|}`.
pub fn vertex_norm_pow_direct(profile: &WeightProfile, j: usize) -> Scalar {
    let k = profile.k;
    let y: Vec<i64> = (0..k).map(|s| if s < j { 1 } else { -1 }).collect();
    match (profile.exact_alphas(), profile.p, &profile.t_star) {
        (Some(alphas), NormExponent::Exact(p), Scalar::Exact(t)) => {
            let mut acc = Rational::zero();
            for v in sign_rows(k) {
                let pos = v.iter().filter(|&&s| s > 0).count();
                let dot: i64 = v.iter().zip(&y).map(|(a, b)| a * b).sum();
                acc += &alphas[k - pos] * abs_pow_exact(&(rat(dot, 1) - t), p);
            }
            Scalar::Exact(acc)
        }
        _ => {
            let (pf, t) = (profile.p.as_f64(), profile.t_star.to_f64());
            let mut acc = 0.0;
            for v in sign_rows(k) {
                let pos = v.iter().filter(|&&s| s > 0).count();
                let dot: i64 = v.iter().zip(&y).map(|(a, b)| a * b).sum();
                acc += profile.alphas[k - pos].to_f64() * (dot as f64 - t).abs().powf(pf);
            }
            Scalar::Float(acc)
        }
    }
}

/// All of `{-1,1}^k`, `+1` before `-1` in lexicographic order.
pub fn sign_rows(k: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1usize << k).map(move |r| (0..k).map(|s| if r >> (k - 1 - s) & 1 == 0 { 1 } else { -1 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn m_matrix_examples() {
        let m = m_matrix_exact(2, 1, &rat(-2, 1));
        let want: Vec<Vec<Rational>> =
            [[0, 4, 4], [2, 4, 2], [4, 4, 0]].iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        assert_eq!(m.to_rows(), want);
        let m = m_matrix_exact(2, 1, &rat(-4, 3));
        assert_eq!(m.row(0), &[q("2/3"), q("8/3"), q("10/3")]);
        assert_eq!(m.row(2), &[q("10/3"), q("8/3"), q("2/3")]);
        let m = m_matrix_exact(1, 1, &rat(0, 1));
        assert!(m.to_rows().iter().flatten().all(|x| *x == rat(1, 1)));
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_row_sum(2, NormExponent::Exact(1), &Scalar::Exact(rat(-2, 1))).unwrap();
        assert_eq!(l, Scalar::Exact(rat(8, 1)));
        let l = lambda_row_sum(2, NormExponent::Exact(1), &Scalar::Exact(rat(-4, 3))).unwrap();
        assert_eq!(l, Scalar::Exact(rat(20, 3)));
    }

    #[test]
    fn tstar_examples() {
        let t = find_tstar(2, NormExponent::Exact(1), DEFAULT_TSTAR_BUDGET).unwrap();
        assert_eq!(t, Scalar::Exact(rat(-4, 3)));
        assert!(matches!(
            find_tstar(3, NormExponent::Exact(2), DEFAULT_TSTAR_BUDGET),
            Err(ParallelepipedError::ConstructionFailure { .. })
        ));
        let t = find_tstar(2, NormExponent::Exact(3), DEFAULT_TSTAR_BUDGET).unwrap();
        let t = t.as_exact().unwrap().clone();
        assert!(!m_matrix_exact(2, 3, &t).determinant().unwrap().is_zero());
        assert!(t >= rat(-2, 1) && t <= rat(0, 1));
        assert!(find_tstar(2, NormExponent::Exact(2), DEFAULT_TSTAR_BUDGET).is_ok());
        assert!(find_tstar(3, NormExponent::Float(2.5), DEFAULT_TSTAR_BUDGET).is_ok());
    }

    #[test]
    fn weights_example() {
        let prof = solve_weights(2, NormExponent::Exact(1), &Scalar::Exact(rat(-4, 3))).unwrap();
        let alphas = prof.exact_alphas().unwrap();
        assert_eq!(alphas, vec![q("9/55"), q("21/220"), q("3/10")]);
        assert_eq!(prof.epsilon, Scalar::Exact(q("4/11")));
        assert_eq!(vertex_norm_pow(&prof, 0).unwrap(), Scalar::Exact(q("15/11")));
        assert_eq!(vertex_norm_pow(&prof, 1).unwrap(), Scalar::Exact(rat(1, 1)));
        assert_eq!(vertex_norm_pow(&prof, 2).unwrap(), Scalar::Exact(rat(1, 1)));
        for j in 0..=2 {
            assert_eq!(vertex_norm_pow(&prof, j).unwrap(), vertex_norm_pow_direct(&prof, j));
        }
    }

    #[test]
    fn float_profile_is_consistent() {
        let p = NormExponent::Float(2.5);
        let t = find_tstar(3, p, DEFAULT_TSTAR_BUDGET).unwrap();
        let prof = solve_weights(3, p, &t).unwrap();
        assert!(!prof.exact);
        let eps = prof.epsilon.to_f64();
        assert!(eps > 0.0);
        for j in 0..=3 {
            let want = if j == 0 { 1.0 + eps } else { 1.0 };
            assert!((vertex_norm_pow(&prof, j).unwrap().to_f64() - want).abs() < 1e-9);
            assert!((vertex_norm_pow_direct(&prof, j).to_f64() - want).abs() < 1e-9);
        }
    }
}
