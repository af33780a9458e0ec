//! The `f64` path, used only for non-integer exponents.

/// Default absolute tolerance for float comparisons.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    pub n: usize,
    pub entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        FloatMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Product of the row norms; bounds `|det|` from above.
    pub fn hadamard_bound(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).powi(2)).sum::<f64>().sqrt())
            .product()
    }

    /// Whether the determinant is zero relative to the Hadamard bound.
    pub fn det_is_negligible(&self, tol: f64) -> bool {
        let h = self.hadamard_bound();
        h == 0.0 || float_det(self).abs() <= tol * h
    }

    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        let n = self.n;
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut r: Vec<f64> = (0..n).map(|j| self.get(i, j)).collect();
                r.push(b[i]);
                r
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
            if a[piv][k] == 0.0 {
                return None;
            }
            a.swap(k, piv);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..=n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
            x[i] = (a[i][n] - s) / a[i][i];
        }
        Some(x)
    }
}

/// Determinant by partial-pivot Gaussian elimination.
pub fn float_det(m: &FloatMatrix) -> f64 {
    let n = m.n;
    let mut a = m.entries.clone();
    let mut det = 1.0;
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
            .unwrap();
        if a[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let d = a[k * n + k];
        det *= d;
        for i in k + 1..n {
            let f = a[i * n + k] / d;
            for j in k..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    det
}
