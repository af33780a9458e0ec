use super::ExactNumError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `num/den`, or just `num` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Accepts `a/b`, `a`, and finite decimals such as `-0.125` (read exactly).
pub fn parse_rational(s: &str) -> Result<Rational, ExactNumError> {
    let bad = || ExactNumError::BadRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let digits_ok = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int_digits) || !digits_ok(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
            return Err(bad());
        }
        let mut all = String::from(int_digits);
        all.push_str(frac_part);
        let mag: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
        let den = Pow::pow(BigInt::from(10u32), frac_part.len() as u32);
        let r = Rational::new(mag, den);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn rational_pow(x: &Rational, p: u32) -> Rational {
    Pow::pow(x, p)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    // Fall back to a shifted quotient for values whose parts overflow f64.
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// The exact binary value of a finite `f64`.
pub fn rational_from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Least common multiple of the denominators, 1 for an empty input.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
