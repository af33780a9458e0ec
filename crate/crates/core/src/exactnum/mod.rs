//! Exact rational scalars, norm exponents and fraction-free linear algebra.
//!
//! Everything on the exact path is a [`Rational`] (a `BigRational`, always
//! normalized). Non-integer norm exponents fall back to `f64`; those values
//! are tagged through [`Scalar`] so the two paths never mix silently.

mod float;
mod matrix;
mod rational;

pub use float::{float_det, FloatMatrix, DEFAULT_FLOAT_TOL};
pub use matrix::RationalMatrix;
pub use rational::{
    denominator_lcm, format_rational, parse_rational, rat, rational_from_f64_exact, rational_pow,
    rational_to_f64, Rational,
};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactNumError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the infinity norm has no p-th power; aggregate with max instead")]
    InfiniteExponent,
    #[error("invalid norm exponent `{0}`")]
    InvalidExponent(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

/// The `p` of an l_p norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormExponent {
    /// Integer `p >= 1`; all arithmetic stays exact.
    Exact(u32),
    /// Real `p >= 1`, evaluated in `f64`.
    Float(f64),
    Infinity,
}

impl NormExponent {
    pub fn exact(p: u32) -> Result<Self, ExactNumError> {
        if p == 0 {
            return Err(ExactNumError::InvalidExponent(p.to_string()));
        }
        Ok(NormExponent::Exact(p))
    }

    pub fn float(p: f64) -> Result<Self, ExactNumError> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(ExactNumError::InvalidExponent(p.to_string()));
        }
        Ok(NormExponent::Float(p))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, NormExponent::Infinity)
    }

    pub fn as_exact(&self) -> Option<u32> {
        match self {
            NormExponent::Exact(p) => Some(*p),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            NormExponent::Exact(p) => *p as f64,
            NormExponent::Float(p) => *p,
            NormExponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExponent::Exact(p) => write!(f, "{p}"),
            NormExponent::Float(p) => write!(f, "{p}"),
            NormExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for NormExponent {
    type Err = ExactNumError;

    /// `"3"` is exact, `"2.5"` is float, `"inf"` is the max norm.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(NormExponent::Infinity);
        }
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            let p: u32 = s
                .parse()
                .map_err(|_| ExactNumError::InvalidExponent(s.to_string()))?;
            return NormExponent::exact(p);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| ExactNumError::InvalidExponent(s.to_string()))?;
        NormExponent::float(p)
    }
}

/// A value that is exact when it can be, float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", format_rational(r)),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `|x|^p`. Exact when both `x` and `p` are exact.
pub fn abs_pow(x: &Scalar, p: NormExponent) -> Result<Scalar, ExactNumError> {
    match (x, p) {
        (_, NormExponent::Infinity) => Err(ExactNumError::InfiniteExponent),
        (Scalar::Exact(r), NormExponent::Exact(p)) => Ok(Scalar::Exact(rational_pow(&r.abs(), p))),
        (x, p) => Ok(Scalar::Float(x.to_f64().abs().powf(p.as_f64()))),
    }
}

/// Exact `|x|^p` for integer `p`.
pub fn abs_pow_exact(x: &Rational, p: u32) -> Rational {
    rational_pow(&x.abs(), p)
}

/// Binomial coefficient, zero when `k` is negative, larger than `n`, or not an integer.
pub fn binom(n: u64, k: &Rational) -> BigInt {
    if !k.is_integer() {
        return BigInt::zero();
    }
    match k.to_integer().to_i64() {
        Some(k) => binom_i(n, k),
        None => BigInt::zero(),
    }
}

/// Integer-index binomial with the same zero extension.
pub fn binom_i(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_pow_examples() {
        let x = Scalar::Exact(rat(-3, 2));
        assert_eq!(abs_pow(&x, NormExponent::Exact(3)).unwrap(), Scalar::Exact(rat(27, 8)));
        let z = Scalar::Exact(rat(0, 1));
        assert_eq!(abs_pow(&z, NormExponent::Exact(5)).unwrap(), Scalar::Exact(rat(0, 1)));
        let two = Scalar::Exact(rat(2, 1));
        let v = abs_pow(&two, NormExponent::Float(2.5)).unwrap().to_f64();
        assert!((v - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(abs_pow(&two, NormExponent::Infinity), Err(ExactNumError::InfiniteExponent));
    }

    #[test]
    fn binom_zero_extension() {
        assert_eq!(binom_i(4, 2), BigInt::from(6));
        assert_eq!(binom_i(3, -1), BigInt::zero());
        assert_eq!(binom_i(3, 4), BigInt::zero());
        assert_eq!(binom(2, &rat(1, 2)), BigInt::zero());
        assert_eq!(binom(10, &rat(3, 1)), BigInt::from(120));
    }

    #[test]
    fn norm_exponent_parsing() {
        assert_eq!("3".parse::<NormExponent>().unwrap(), NormExponent::Exact(3));
        assert_eq!("2.5".parse::<NormExponent>().unwrap(), NormExponent::Float(2.5));
        assert_eq!("inf".parse::<NormExponent>().unwrap(), NormExponent::Infinity);
        assert!("0".parse::<NormExponent>().is_err());
        assert!("0.5".parse::<NormExponent>().is_err());
        assert!("x".parse::<NormExponent>().is_err());
    }
}
