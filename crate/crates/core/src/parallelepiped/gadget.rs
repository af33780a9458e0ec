//! Assembled gadgets: dense `(V, t*)` in the `{0,1}` convention plus, when
//! available, an exact weighted-row form that never takes p-th roots.

use super::profile::{construct_profile, sign_rows, WeightProfile};
use super::ParallelepipedError;
use crate::exactnum::{
    abs_pow_exact, rat, rational_pow, rational_to_f64, NormExponent, Rational, RationalMatrix, Scalar,
};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetProvenance {
    WeightProfile,
    Literal,
    L1Family,
}

impl GadgetProvenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            GadgetProvenance::WeightProfile => "weight-profile",
            GadgetProvenance::Literal => "literal",
            GadgetProvenance::L1Family => "l1-family",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "weight-profile" => Some(GadgetProvenance::WeightProfile),
            "literal" => Some(GadgetProvenance::Literal),
            "l1-family" => Some(GadgetProvenance::L1Family),
            _ => None,
        }
    }
}

/// One row of the exact form: contributes `weight * |<coeffs, x> - target|^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGadgetRow {
    pub weight: Rational,
    pub coeffs: Vec<Rational>,
    pub target: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolatingParallelepiped {
    pub k: usize,
    pub p: NormExponent,
    /// `d* x k`, `{0,1}` convention.
    pub v: Vec<Vec<f64>>,
    pub t: Vec<f64>,
    /// `delta` with `|t*|_p^p = 1 + delta`.
    pub margin: Scalar,
    pub provenance: GadgetProvenance,
    pub profile: Option<WeightProfile>,
    pub weighted: Option<Vec<WeightedGadgetRow>>,
}

impl IsolatingParallelepiped {
    pub fn exact_margin(&self) -> Option<&Rational> {
        self.margin.as_exact()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsopedReport {
    pub max_deviation: f64,
    /// `|t*|_p^p - 1`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactIsopedReport {
    pub margin: Rational,
}

/// `V' = 2V`, `t' = V 1_k + t`: moves a `{-1,1}` gadget to the `{0,1}` convention.
pub fn pmone_transform(v: &RationalMatrix, t: &[Rational]) -> (RationalMatrix, Vec<Rational>) {
    let ones = vec![Rational::one(); v.cols()];
    let shift = v.mul_vec(&ones).expect("ones has v.cols() entries");
    let t2 = shift.iter().zip(t).map(|(a, b)| a + b).collect();
    (v.scale(&rat(2, 1)), t2)
}

/// Exact `{0,1}`-convention rows of a profile: row `2v`, target `<v,1> + t*`, weight `alpha_{k-|v|}`.
pub fn profile_weighted_rows(profile: &WeightProfile) -> Option<Vec<WeightedGadgetRow>> {
    let alphas = profile.exact_alphas()?;
    let t = profile.t_star.as_exact()?;
    let k = profile.k;
    let mut rows = Vec::new();
    for v in sign_rows(k) {
        let pos = v.iter().filter(|&&s| s > 0).count();
        let w = &alphas[k - pos];
        if w.is_zero() {
            continue;
        }
        let sum: i64 = v.iter().sum();
        rows.push(WeightedGadgetRow {
            weight: w.clone(),
            coeffs: v.iter().map(|&s| rat(2 * s, 1)).collect(),
            target: rat(sum, 1) + t,
        });
    }
    Some(rows)
}

/// Dense gadget from a profile. Rows with zero weight are dropped.
pub fn assemble_dense(profile: &WeightProfile) -> IsolatingParallelepiped {
    let k = profile.k;
    let pf = profile.p.as_f64();
    let t = profile.t_star.to_f64();
    let mut v_rows = Vec::new();
    let mut t_rows = Vec::new();
    for v in sign_rows(k) {
        let pos = v.iter().filter(|&&s| s > 0).count();
        let alpha = profile.alphas[k - pos].to_f64();
        if alpha == 0.0 {
            continue;
        }
        let a = alpha.powf(1.0 / pf);
        let sum: i64 = v.iter().sum();
        v_rows.push(v.iter().map(|&s| 2.0 * a * s as f64).collect());
        t_rows.push(a * (sum as f64 + t));
    }
    IsolatingParallelepiped {
        k,
        p: profile.p,
        v: v_rows,
        t: t_rows,
        margin: profile.epsilon.clone(),
        provenance: GadgetProvenance::WeightProfile,
        profile: Some(profile.clone()),
        weighted: profile_weighted_rows(profile),
    }
}

/// `find_tstar`, `solve_weights`, `assemble_dense` in sequence.
pub fn construct_isoped(k: usize, p: NormExponent) -> Result<IsolatingParallelepiped, ParallelepipedError> {
    let profile = construct_profile(k, p)?;
    Ok(assemble_dense(&profile))
}

/// The two-dimensional l1 gadget: every column `(1,1)/(k-1)`, `t* = (k,1)/(k-1)`.
pub fn l1_family(k: usize) -> Result<IsolatingParallelepiped, ParallelepipedError> {
    if k < 2 {
        return Err(ParallelepipedError::InvalidWidth(k));
    }
    let c = rat(1, k as i64 - 1);
    let targets = [rat(k as i64, k as i64 - 1), c.clone()];
    let weighted = targets
        .iter()
        .map(|t| WeightedGadgetRow { weight: Rational::one(), coeffs: vec![c.clone(); k], target: t.clone() })
        .collect();
    let cf = rational_to_f64(&c);
    Ok(IsolatingParallelepiped {
        k,
        p: NormExponent::Exact(1),
        v: vec![vec![cf; k]; 2],
        t: targets.iter().map(rational_to_f64).collect(),
        margin: Scalar::Exact(rat(2, k as i64 - 1)),
        provenance: GadgetProvenance::L1Family,
        profile: None,
        weighted: Some(weighted),
    })
}

fn vertex_bits(x: usize, k: usize) -> Vec<u8> {
    (0..k).map(|s| (x >> s & 1) as u8).collect()
}

fn dense_value(p: &IsolatingParallelepiped, x: &[u8]) -> f64 {
    let pf = p.p.as_f64();
    p.v.iter()
        .zip(&p.t)
        .map(|(row, t)| {
            let dot: f64 = row.iter().zip(x).map(|(a, &b)| a * b as f64).sum();
            (dot - t).abs().powf(pf)
        })
        .sum()
}

/// Float check of every vertex of `{0,1}^k` on the dense coordinates.
pub fn validate_isoped(p: &IsolatingParallelepiped, tol: f64) -> Result<IsopedReport, ParallelepipedError> {
    if !p.p.is_finite() {
        return Err(ParallelepipedError::InfiniteNorm);
    }
    let k = p.k;
    let mut max_dev: f64 = 0.0;
    for x in 1..1usize << k {
        let bits = vertex_bits(x, k);
        let val = dense_value(p, &bits);
        let dev = (val - 1.0).abs();
        if !(dev <= tol) {
            return Err(ParallelepipedError::ValidationFailure { vertex: bits, value: val.to_string() });
        }
        max_dev = max_dev.max(dev);
    }
    let zero = vec![0u8; k];
    let t_pow = dense_value(p, &zero);
    if !(t_pow > 1.0 + tol) {
        return Err(ParallelepipedError::ValidationFailure { vertex: zero, value: t_pow.to_string() });
    }
    Ok(IsopedReport { max_deviation: max_dev, margin: t_pow - 1.0 })
}

fn weighted_value(rows: &[WeightedGadgetRow], p: u32, x: &[u8]) -> Rational {
    rows.iter()
        .map(|r| {
            let dot: Rational = r.coeffs.iter().zip(x).filter(|(_, &b)| b == 1).map(|(c, _)| c).sum();
            &r.weight * abs_pow_exact(&(dot - &r.target), p)
        })
        .sum()
}

/// Exact check on the weighted rows: every nonzero vertex at exactly 1.
pub fn validate_exact(p: &IsolatingParallelepiped) -> Result<ExactIsopedReport, ParallelepipedError> {
    let rows = p.weighted.as_ref().ok_or(ParallelepipedError::NoExactForm)?;
    let pe = p.p.as_exact().ok_or(ParallelepipedError::NoExactForm)?;
    let k = p.k;
    for x in 1..1usize << k {
        let bits = vertex_bits(x, k);
        let val = weighted_value(rows, pe, &bits);
        if !val.is_one() {
            return Err(ParallelepipedError::ValidationFailure { vertex: bits, value: val.to_string() });
        }
    }
    let zero = vec![0u8; k];
    let margin = weighted_value(rows, pe, &zero) - Rational::one();
    if !margin.is_positive() {
        return Err(ParallelepipedError::ValidationFailure { vertex: zero, value: (margin + Rational::one()).to_string() });
    }
    Ok(ExactIsopedReport { margin })
}

/// Dense coordinates reconstructed from weighted rows (scaled by `weight^{1/p}`).
pub fn dense_from_weighted(rows: &[WeightedGadgetRow], p: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut v = Vec::with_capacity(rows.len());
    let mut t = Vec::with_capacity(rows.len());
    for r in rows {
        let s = rational_to_f64(&r.weight).powf(1.0 / p);
        v.push(r.coeffs.iter().map(|c| s * rational_to_f64(c)).collect());
        t.push(s * rational_to_f64(&r.target));
    }
    (v, t)
}

/// `|t*|_p^p - 1` from the exact rows, if there are any.
pub fn exact_margin_of(rows: &[WeightedGadgetRow], p: u32) -> Rational {
    rows.iter()
        .map(|r| &r.weight * rational_pow(&r.target.abs(), p))
        .sum::<Rational>()
        - Rational::one()
}
