use super::LatticeError;
use crate::exactnum::{abs_pow_exact, rational_to_f64, NormExponent, Rational, Scalar};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Cvp,
    Svp,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Cvp => "cvp",
            ProblemKind::Svp => "svp",
        }
    }
}

/// Rows scaled implicitly by `weight^{1/p}`: the group costs
/// `weight * sum_rows |<row, z> - target|^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRowGroup {
    pub weight: Rational,
    pub rows: Vec<Vec<Rational>>,
    pub target: Vec<Rational>,
}

impl WeightedRowGroup {
    pub fn new(weight: Rational, rows: Vec<Vec<Rational>>, target: Vec<Rational>) -> Self {
        WeightedRowGroup { weight, rows, target }
    }

    /// Rows `scale * e_j` for every coordinate, all with the same target.
    pub fn scaled_identity(n: usize, weight: Rational, scale: Rational, target: Rational) -> Self {
        let rows = (0..n)
            .map(|j| {
                let mut r = vec![Rational::zero(); n];
                r[j] = scale.clone();
                r
            })
            .collect();
        WeightedRowGroup { weight, rows, target: vec![target; n] }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StageRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub output_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub reduction: String,
    /// Short label of the construction this instance realizes.
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    pub gadget_sha256: Option<String>,
    pub source_sha256: Option<String>,
    pub seed: Option<u64>,
    pub stages: Vec<StageRecord>,
}

impl Provenance {
    pub fn new(reduction: &str, anchor: &str) -> Self {
        Provenance { reduction: reduction.into(), anchor: anchor.into(), ..Default::default() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }
}

/// CVP or SVP instance in weighted-row-group form.
///
/// For finite norms `threshold` is `r^p`; for the max norm it is `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeInstance {
    pub kind: ProblemKind,
    pub norm: NormExponent,
    pub rank: usize,
    pub groups: Vec<WeightedRowGroup>,
    pub threshold: Rational,
    pub provenance: Provenance,
}

pub type CvpInstance = LatticeInstance;
pub type SvpInstance = LatticeInstance;

/// Integer interval per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl CoefficientBox {
    pub fn uniform(n: usize, lo: i64, hi: i64) -> Self {
        CoefficientBox { lo: vec![lo; n], hi: vec![hi; n] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Number of points, `None` on overflow; 0 if some interval is empty.
    pub fn size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (l, h) in self.lo.iter().zip(&self.hi) {
            if h < l {
                return Some(0);
            }
            acc = acc.checked_mul((*h as i128 - *l as i128 + 1) as u128)?;
        }
        Some(acc)
    }

    pub fn contains_box(&self, other: &CoefficientBox) -> bool {
        self.dim() == other.dim()
            && self.lo.iter().zip(&other.lo).all(|(a, b)| a <= b)
            && self.hi.iter().zip(&other.hi).all(|(a, b)| a >= b)
    }

    /// `a:b` for uniform boxes, else a per-coordinate list.
    pub fn describe(&self) -> String {
        let uniform = self.lo.windows(2).all(|w| w[0] == w[1]) && self.hi.windows(2).all(|w| w[0] == w[1]);
        match (uniform, self.lo.first(), self.hi.first()) {
            (true, Some(l), Some(h)) => format!("{l}:{h}"),
            (true, _, _) => String::new(),
            _ => self.lo.iter().zip(&self.hi).map(|(l, h)| format!("{l}:{h}")).collect::<Vec<_>>().join(","),
        }
    }

    /// Parses `a:b`, uniform over `n` coordinates.
    pub fn parse_uniform(s: &str, n: usize) -> Option<Self> {
        let (a, b) = s.split_once(':')?;
        Some(CoefficientBox::uniform(n, a.trim().parse().ok()?, b.trim().parse().ok()?))
    }
}

impl LatticeInstance {
    pub fn validate(&self) -> Result<(), LatticeError> {
        let bad = |m: String| Err(LatticeError::Invalid(m));
        if self.threshold.is_negative() {
            return bad("negative threshold".into());
        }
        for (g, grp) in self.groups.iter().enumerate() {
            if grp.weight.is_negative() {
                return bad(format!("group {g} has negative weight"));
            }
            if grp.rows.len() != grp.target.len() {
                return bad(format!("group {g}: {} rows but {} targets", grp.rows.len(), grp.target.len()));
            }
            if let Some(r) = grp.rows.iter().position(|r| r.len() != self.rank) {
                return bad(format!("group {g} row {r} has length {} (rank {})", grp.rows[r].len(), self.rank));
            }
            if self.norm == NormExponent::Infinity && !grp.weight.is_one() {
                return bad(format!("group {g}: max-norm groups must have weight 1"));
            }
            if self.kind == ProblemKind::Svp && grp.target.iter().any(|t| !t.is_zero()) {
                return bad(format!("group {g}: SVP targets must be zero"));
            }
        }
        Ok(())
    }

    pub fn num_rows(&self) -> usize {
        self.groups.iter().map(|g| g.rows.len()).sum()
    }

    /// Box recorded by the reduction that built the instance, if any.
    pub fn certified_box(&self) -> Option<CoefficientBox> {
        let s = self.provenance.params.get("certified_box")?;
        CoefficientBox::parse_uniform(s, self.rank)
    }
}

fn residual(row: &[Rational], t: &Rational, z: &[i64]) -> Rational {
    let mut acc = -t.clone();
    for (a, &x) in row.iter().zip(z) {
        if x != 0 && !a.is_zero() {
            acc += a * Rational::from_integer(x.into());
        }
    }
    acc
}

/// `sum_g weight_g sum |<row, z> - t|^p`, or the max over rows for the max norm.
pub fn dist_pow(inst: &LatticeInstance, z: &[i64]) -> Result<Scalar, LatticeError> {
    if z.len() != inst.rank {
        return Err(LatticeError::Dimension { expected: inst.rank, got: z.len() });
    }
    match inst.norm {
        NormExponent::Exact(p) => {
            let mut total = Rational::zero();
            for g in &inst.groups {
                if g.weight.is_zero() {
                    continue;
                }
                let s: Rational = g.rows.iter().zip(&g.target).map(|(r, t)| abs_pow_exact(&residual(r, t, z), p)).sum();
                total += &g.weight * s;
            }
            Ok(Scalar::Exact(total))
        }
        NormExponent::Infinity => {
            let mut best = Rational::zero();
            for g in &inst.groups {
                for (r, t) in g.rows.iter().zip(&g.target) {
                    let v = residual(r, t, z).abs();
                    if v > best {
                        best = v;
                    }
                }
            }
            Ok(Scalar::Exact(best))
        }
        NormExponent::Float(p) => {
            let mut total = 0.0;
            for g in &inst.groups {
                let s: f64 =
                    g.rows.iter().zip(&g.target).map(|(r, t)| rational_to_f64(&residual(r, t, z)).abs().powf(p)).sum();
                total += rational_to_f64(&g.weight) * s;
            }
            Ok(Scalar::Float(total))
        }
    }
}
