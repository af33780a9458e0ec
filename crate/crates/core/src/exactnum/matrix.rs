use super::rational::{denominator_lcm, Rational};
use super::ExactNumError;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::Mul;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        RationalMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, ExactNumError> {
        if x.len() != self.cols {
            return Err(ExactNumError::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul_mat(&self, other: &RationalMatrix) -> Result<RationalMatrix, ExactNumError> {
        if self.cols != other.rows {
            return Err(ExactNumError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        Ok(RationalMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|l| self.get(i, l) * other.get(l, j)).sum()
        }))
    }

    /// Scale each row to integers. Returns the integer rows and the per-row factors.
    fn integer_rows(&self, extra: Option<&[Rational]>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut factors = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row: Vec<&Rational> = self.row(i).iter().collect();
            if let Some(b) = extra {
                row.push(&b[i]);
            }
            let l = denominator_lcm(row.iter().copied());
            let ints = row
                .iter()
                .map(|x| (*x * Rational::from_integer(l.clone())).to_integer())
                .collect();
            out.push(ints);
            factors.push(l);
        }
        (out, factors)
    }

    /// Exact determinant by Bareiss elimination on the integer-scaled rows.
    pub fn determinant(&self) -> Result<Rational, ExactNumError> {
        if self.rows != self.cols {
            return Err(ExactNumError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, factors) = self.integer_rows(None);
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let denom: BigInt = factors.iter().product();
        let det = Rational::new(prev, denom);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Exact solution of `self * x = b` by fraction-free elimination on `[A | b]`.
    pub fn linear_solve(&self, b: &[Rational]) -> Result<Vec<Rational>, ExactNumError> {
        if self.rows != self.cols {
            return Err(ExactNumError::NonSquare { rows: self.rows, cols: self.cols });
        }
        if b.len() != self.rows {
            return Err(ExactNumError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let n = self.rows;
        let (mut a, _) = self.integer_rows(Some(b));
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => a.swap(k, r),
                    None => return Err(ExactNumError::SingularMatrix),
                }
            }
            for i in k + 1..n {
                for j in k + 1..=n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n].clone());
            for j in i + 1..n {
                acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
            }
            x[i] = acc / Rational::from_integer(a[i][i].clone());
        }
        Ok(x)
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.mul_mat(rhs).expect("inner dimensions must agree")
    }
}
