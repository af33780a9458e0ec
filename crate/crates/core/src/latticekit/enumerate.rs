//! Exhaustive CVP/SVP over an integer box.
//!
//! Rows and targets are scaled to integers by the lcm `L` of their
//! denominators and weights by the lcm `D` of theirs, so a finite-norm value
//! becomes the integer `sum_g (D w_g) sum |L(<row,z> - t)|^p` compared against
//! `floor(threshold * D * L^p)`. The search is a depth-first walk over the
//! columns, those touching the most rows first. Each row carries a lower bound
//! on its cost from the interval its dot product can still reach; a branch is
//! cut only when the combined bound is above the threshold and no better than
//! the best value so far, which keeps the count exact. When the column order is
//! not the identity, the lexicographically smallest optimal witness is then
//! recovered coordinate by coordinate with first-hit searches.

use super::instance::{CoefficientBox, LatticeInstance, ProblemKind};
use super::LatticeError;
use crate::exactnum::{denominator_lcm, rational_to_f64, NormExponent, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

pub const DEFAULT_ENUM_LIMIT: u128 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest number of box points the solver agrees to visit.
    pub limit: u128,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { limit: DEFAULT_ENUM_LIMIT }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub yes: bool,
    /// `r^p` scale for finite norms, `r` scale for the max norm. `None` if the box has no admissible point.
    pub best_value: Option<Scalar>,
    pub witness: Option<Vec<i64>>,
    /// Box points (nonzero ones for SVP) meeting the threshold.
    pub count: u64,
    pub box_used: CoefficientBox,
}

trait Model: Sync {
    type V: Clone + Send + PartialOrd;
    fn zero(&self) -> Self::V;
    fn cost(&self, row: usize, res: i128) -> Self::V;
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    /// Replace one row's contribution `old` by `new` inside `acc`.
    fn update(&self, acc: Self::V, old: &Self::V, new: &Self::V) -> Self::V;
    fn threshold(&self) -> Self::V;
    fn to_scalar(&self, v: &Self::V) -> Scalar;
}

struct SumI128 {
    weights: Vec<i128>,
    p: u32,
    thr: i128,
    scale: Rational,
}

impl Model for SumI128 {
    type V = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn cost(&self, row: usize, res: i128) -> i128 {
        self.weights[row] * res.abs().pow(self.p)
    }
    fn add(&self, a: i128, b: i128) -> i128 {
        a + b
    }
    fn update(&self, acc: i128, old: &i128, new: &i128) -> i128 {
        acc - old + new
    }
    fn threshold(&self) -> i128 {
        self.thr
    }
    fn to_scalar(&self, v: &i128) -> Scalar {
        Scalar::Exact(Rational::from_integer(BigInt::from(*v)) / &self.scale)
    }
}

struct SumBig {
    weights: Vec<BigInt>,
    p: u32,
    thr: BigInt,
    scale: Rational,
}

impl Model for SumBig {
    type V = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn cost(&self, row: usize, res: i128) -> BigInt {
        &self.weights[row] * Pow::pow(BigInt::from(res.abs()), self.p)
    }
    fn add(&self, a: BigInt, b: BigInt) -> BigInt {
        a + b
    }
    fn update(&self, acc: BigInt, old: &BigInt, new: &BigInt) -> BigInt {
        acc - old + new
    }
    fn threshold(&self) -> BigInt {
        self.thr.clone()
    }
    fn to_scalar(&self, v: &BigInt) -> Scalar {
        Scalar::Exact(Rational::from_integer(v.clone()) / &self.scale)
    }
}

struct MaxI128 {
    thr: i128,
    scale: Rational,
}

impl Model for MaxI128 {
    type V = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn cost(&self, _row: usize, res: i128) -> i128 {
        res.abs()
    }
    fn add(&self, a: i128, b: i128) -> i128 {
        a.max(b)
    }
    fn update(&self, acc: i128, _old: &i128, new: &i128) -> i128 {
        acc.max(*new)
    }
    fn threshold(&self) -> i128 {
        self.thr
    }
    fn to_scalar(&self, v: &i128) -> Scalar {
        Scalar::Exact(Rational::from_integer(BigInt::from(*v)) / &self.scale)
    }
}

struct SumF64 {
    weights: Vec<f64>,
    p: f64,
    inv_scale: f64,
    thr: f64,
}

impl Model for SumF64 {
    type V = f64;
    fn zero(&self) -> f64 {
        0.0
    }
    fn cost(&self, row: usize, res: i128) -> f64 {
        self.weights[row] * (res as f64 * self.inv_scale).abs().powf(self.p)
    }
    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    fn update(&self, acc: f64, old: &f64, new: &f64) -> f64 {
        acc - old + new
    }
    fn threshold(&self) -> f64 {
        self.thr
    }
    fn to_scalar(&self, v: &f64) -> Scalar {
        Scalar::Float(*v)
    }
}

/// Column `j` touches `row` with `coeff`; `rem_lo..=rem_hi` is the range the
/// later columns can still add to that row's dot product.
#[derive(Clone, Copy)]
struct Touch {
    row: usize,
    coeff: i128,
    rem_lo: i128,
    rem_hi: i128,
}

struct Plan {
    n: usize,
    /// Search position -> original column.
    order: Vec<usize>,
    /// `order` is the identity, so leaves arrive in lexicographic order.
    lex: bool,
    lo: Vec<i64>,
    hi: Vec<i64>,
    targets: Vec<i128>,
    col_rows: Vec<Vec<Touch>>,
    root_lo: Vec<i128>,
    root_hi: Vec<i128>,
    svp: bool,
}

struct Flat {
    rows: Vec<Vec<i128>>,
    targets: Vec<i128>,
    group_of: Vec<usize>,
    /// `|<row, z> - t|` bound over the box.
    bounds: Vec<BigInt>,
    l: BigInt,
}

fn flatten(inst: &LatticeInstance, bx: &CoefficientBox) -> Result<Flat, LatticeError> {
    let live: Vec<usize> = (0..inst.groups.len()).filter(|&g| !inst.groups[g].weight.is_zero()).collect();
    let l = denominator_lcm(
        live.iter()
            .flat_map(|&g| inst.groups[g].rows.iter().flatten().chain(inst.groups[g].target.iter())),
    );
    let lr = Rational::from_integer(l.clone());
    let to_int = |x: &Rational| -> Result<i128, LatticeError> {
        (x * &lr)
            .to_integer()
            .to_i128()
            .filter(|v| v.unsigned_abs() < 1u128 << 62)
            .ok_or_else(|| LatticeError::Overflow("scaled coefficient does not fit in 62 bits".into()))
    };
    let reach: Vec<i128> = bx.lo.iter().zip(&bx.hi).map(|(a, b)| (*a as i128).abs().max((*b as i128).abs())).collect();
    let mut flat = Flat { rows: vec![], targets: vec![], group_of: vec![], bounds: vec![], l };
    for &g in &live {
        let grp = &inst.groups[g];
        for (row, t) in grp.rows.iter().zip(&grp.target) {
            let ints = row.iter().map(to_int).collect::<Result<Vec<_>, _>>()?;
            let ti = to_int(t)?;
            let mut b = BigInt::from(ti.abs());
            for (c, r) in ints.iter().zip(&reach) {
                b += BigInt::from(c.abs()) * BigInt::from(*r);
            }
            if b.bits() > 120 {
                return Err(LatticeError::Overflow("row residual exceeds 120 bits over the box".into()));
            }
            flat.rows.push(ints);
            flat.targets.push(ti);
            flat.group_of.push(g);
            flat.bounds.push(b);
        }
    }
    Ok(flat)
}

fn plan(flat: &Flat, bx: &CoefficientBox, svp: bool) -> Plan {
    let n = bx.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| std::cmp::Reverse(flat.rows.iter().filter(|r| r[j] != 0).count()));
    let lex = order.iter().enumerate().all(|(i, &j)| i == j);
    let lo: Vec<i64> = order.iter().map(|&j| bx.lo[j]).collect();
    let hi: Vec<i64> = order.iter().map(|&j| bx.hi[j]).collect();
    let mut col_rows = vec![Vec::new(); n];
    let mut root_lo = Vec::with_capacity(flat.rows.len());
    let mut root_hi = Vec::with_capacity(flat.rows.len());
    for (r, row) in flat.rows.iter().enumerate() {
        let (mut rlo, mut rhi) = (0i128, 0i128);
        for j in (0..n).rev() {
            let c = row[order[j]];
            if c == 0 {
                continue;
            }
            col_rows[j].push(Touch { row: r, coeff: c, rem_lo: rlo, rem_hi: rhi });
            let (a, b) = (c * lo[j] as i128, c * hi[j] as i128);
            rlo += a.min(b);
            rhi += a.max(b);
        }
        root_lo.push(rlo);
        root_hi.push(rhi);
    }
    Plan { n, order, lex, lo, hi, targets: flat.targets.clone(), col_rows, root_lo, root_hi, svp }
}

/// Smallest `|x - t|` over `x` in `[lo, hi]`.
fn gap(lo: i128, hi: i128, t: i128) -> i128 {
    if lo > t {
        lo - t
    } else if hi < t {
        t - hi
    } else {
        0
    }
}

/// `(v, w)` beats `best`: smaller value, ties to the lexicographically smaller witness.
fn improves<V: PartialOrd>(v: &V, w: &[i64], best: &Option<(V, Vec<i64>)>) -> bool {
    match best {
        None => true,
        Some((b, bw)) => v < b || (v == b && w < bw.as_slice()),
    }
}

struct Partial<V> {
    best: Option<(V, Vec<i64>)>,
    count: u64,
}

/// DFS state. `lbs[r]` is a lower bound on row `r`'s cost given the fixed
/// prefix; it is exact once all of the row's columns are fixed, and the running
/// accumulator combines the bounds of all rows.
struct State<'a, M: Model> {
    plan: &'a Plan,
    model: &'a M,
    thr: M::V,
    dots: Vec<i128>,
    lbs: Vec<M::V>,
    saved: Vec<Vec<M::V>>,
    z: Vec<i64>,
    nonzero: usize,
    best: Option<(M::V, Vec<i64>)>,
    count: u64,
    /// Stop at the first leaf within `thr` instead of enumerating.
    first_hit: bool,
    done: bool,
}

impl<'a, M: Model> State<'a, M> {
    fn new(plan: &'a Plan, model: &'a M, thr: M::V, first_hit: bool) -> (Self, M::V) {
        let nrows = plan.targets.len();
        let lbs: Vec<M::V> =
            (0..nrows).map(|r| model.cost(r, gap(plan.root_lo[r], plan.root_hi[r], plan.targets[r]))).collect();
        let mut acc = model.zero();
        for v in &lbs {
            acc = model.add(acc, v.clone());
        }
        let st = State {
            plan,
            model,
            thr,
            dots: vec![0; nrows],
            lbs,
            saved: vec![Vec::new(); plan.n],
            z: vec![0; plan.n],
            nonzero: 0,
            best: None,
            count: 0,
            first_hit,
            done: false,
        };
        (st, acc)
    }

    fn worth_exploring(&self, acc: &M::V) -> bool {
        if self.first_hit {
            return !self.done && *acc <= self.thr;
        }
        *acc <= self.thr
            || match &self.best {
                None => true,
                Some((b, _)) => *acc < *b,
            }
    }

    fn witness(&self) -> Vec<i64> {
        let mut w = vec![0; self.plan.n];
        for (&j, &v) in self.plan.order.iter().zip(&self.z) {
            w[j] = v;
        }
        w
    }

    fn leaf(&mut self, acc: M::V) {
        if self.plan.svp && self.nonzero == 0 {
            return;
        }
        if self.first_hit {
            if acc <= self.thr {
                self.best = Some((acc, self.witness()));
                self.done = true;
            }
            return;
        }
        if acc <= self.thr {
            self.count += 1;
        }
        if self.best.as_ref().is_some_and(|(b, _)| acc > *b || (self.plan.lex && acc == *b)) {
            return;
        }
        let w = self.witness();
        if improves(&acc, &w, &self.best) {
            self.best = Some((acc, w));
        }
    }

    fn row_bound(&self, t: &Touch) -> M::V {
        let d = self.dots[t.row];
        self.model.cost(t.row, gap(d + t.rem_lo, d + t.rem_hi, self.plan.targets[t.row]))
    }

    /// Fix `z_j = v` permanently (prefix handling).
    fn fix(&mut self, j: usize, v: i64, mut acc: M::V) -> M::V {
        let plan = self.plan;
        self.z[j] = v;
        if v != 0 {
            self.nonzero += 1;
        }
        for t in &plan.col_rows[j] {
            self.dots[t.row] += t.coeff * v as i128;
            let new = self.row_bound(t);
            acc = self.model.update(acc, &self.lbs[t.row], &new);
            self.lbs[t.row] = new;
        }
        acc
    }

    fn dfs(&mut self, j: usize, acc: M::V) {
        let plan = self.plan;
        if j == plan.n {
            self.leaf(acc);
            return;
        }
        let (lo, hi) = (plan.lo[j], plan.hi[j]);
        if hi < lo {
            return;
        }
        let touches = &plan.col_rows[j];
        let mut olds = std::mem::take(&mut self.saved[j]);
        olds.clear();
        for t in touches {
            olds.push(self.lbs[t.row].clone());
            self.dots[t.row] += t.coeff * lo as i128;
        }
        let mut last = lo;
        for v in lo..=hi {
            last = v;
            if v > lo {
                for t in touches {
                    self.dots[t.row] += t.coeff;
                }
            }
            self.z[j] = v;
            if v != 0 {
                self.nonzero += 1;
            }
            let mut a = acc.clone();
            for (t, old) in touches.iter().zip(&olds) {
                let new = self.row_bound(t);
                a = self.model.update(a, old, &new);
                self.lbs[t.row] = new;
            }
            if self.worth_exploring(&a) {
                self.dfs(j + 1, a);
            }
            if v != 0 {
                self.nonzero -= 1;
            }
            if self.done {
                break;
            }
        }
        for (t, old) in touches.iter().zip(&olds) {
            self.dots[t.row] -= t.coeff * last as i128;
            self.lbs[t.row] = old.clone();
        }
        self.z[j] = 0;
        self.saved[j] = olds;
    }
}

fn run_prefix<M: Model>(plan: &Plan, model: &M, prefix: &[i64]) -> Partial<M::V> {
    let (mut st, mut acc) = State::new(plan, model, model.threshold(), false);
    for (j, &v) in prefix.iter().enumerate() {
        acc = st.fix(j, v, acc);
    }
    if st.worth_exploring(&acc) {
        st.dfs(prefix.len(), acc);
    }
    Partial { best: st.best, count: st.count }
}

fn prefixes(plan: &Plan) -> Vec<Vec<i64>> {
    let mut s = 0;
    let mut width: u128 = 1;
    while s < plan.n && width < 512 {
        width *= (plan.hi[s] - plan.lo[s] + 1).max(0) as u128;
        s += 1;
    }
    let mut out = Vec::new();
    if width == 0 {
        return out;
    }
    let mut cur: Vec<i64> = plan.lo[..s].to_vec();
    loop {
        out.push(cur.clone());
        let mut j = s;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < plan.hi[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = plan.lo[j];
        }
    }
}

fn search<M: Model>(plan: &Plan, model: &M) -> (Option<(M::V, Vec<i64>)>, u64) {
    let parts: Vec<Partial<M::V>> = prefixes(plan).par_iter().map(|p| run_prefix(plan, model, p)).collect();
    let mut best: Option<(M::V, Vec<i64>)> = None;
    let mut count = 0;
    for part in parts {
        count += part.count;
        if let Some((v, w)) = part.best {
            if improves(&v, &w, &best) {
                best = Some((v, w));
            }
        }
    }
    (best, count)
}

/// Some point of the plan's box with value at most `bound`.
fn first_point<M: Model>(plan: &Plan, model: &M, bound: M::V) -> Option<Vec<i64>> {
    let (mut st, acc) = State::new(plan, model, bound, true);
    if st.worth_exploring(&acc) {
        st.dfs(0, acc);
    }
    st.best.map(|(_, w)| w)
}

/// Lexicographically smallest point attaining the optimum `best`, starting
/// from any optimal `w`: fix coordinates in order, trying smaller values first.
fn lex_smallest<M: Model>(flat: &Flat, bx: &CoefficientBox, svp: bool, model: &M, best: &M::V, mut w: Vec<i64>) -> Vec<i64> {
    let mut sub = bx.clone();
    for i in 0..w.len() {
        for v in bx.lo[i]..w[i] {
            sub.lo[i] = v;
            sub.hi[i] = v;
            if let Some(p) = first_point(&plan(flat, &sub, svp), model, best.clone()) {
                w = p;
                break;
            }
        }
        sub.lo[i] = w[i];
        sub.hi[i] = w[i];
    }
    w
}

fn finish<M: Model>(model: &M, flat: &Flat, bx: &CoefficientBox, svp: bool) -> SolveResult {
    let plan = plan(flat, bx, svp);
    let (best, count) = search(&plan, model);
    let (best_value, witness) = match best {
        Some((v, w)) => {
            let w = if plan.lex { w } else { lex_smallest(flat, bx, svp, model, &v, w) };
            (Some(model.to_scalar(&v)), Some(w))
        }
        None => (None, None),
    };
    SolveResult { yes: count > 0, best_value, witness, count, box_used: bx.clone() }
}

fn solve(inst: &LatticeInstance, bx: &CoefficientBox, opts: EnumOptions, svp: bool) -> Result<SolveResult, LatticeError> {
    inst.validate()?;
    if bx.dim() != inst.rank {
        return Err(LatticeError::Dimension { expected: inst.rank, got: bx.dim() });
    }
    let points = bx.size();
    if points.is_none_or(|p| p > opts.limit) {
        return Err(LatticeError::LimitExceeded {
            points: points.map_or_else(|| "overflow".to_string(), |p| p.to_string()),
            limit: opts.limit,
        });
    }
    let flat = flatten(inst, bx)?;
    let lr = Rational::from_integer(flat.l.clone());
    match inst.norm {
        NormExponent::Infinity => {
            let thr = (&inst.threshold * &lr).floor().to_integer();
            let thr = thr.to_i128().unwrap_or(i128::MAX);
            let model = MaxI128 { thr, scale: lr };
            Ok(finish(&model, &flat, bx, svp))
        }
        NormExponent::Exact(p) => {
            let d = denominator_lcm(inst.groups.iter().map(|g| &g.weight));
            let dr = Rational::from_integer(d.clone());
            let weights: Vec<BigInt> =
                flat.group_of.iter().map(|&g| (&inst.groups[g].weight * &dr).to_integer()).collect();
            let scale = &dr * Pow::pow(&lr, p);
            let thr = (&inst.threshold * &scale).floor().to_integer();
            let mut total = BigInt::zero();
            for (w, b) in weights.iter().zip(&flat.bounds) {
                total += w * Pow::pow(b, p);
            }
            if total.bits() < 120 {
                let model = SumI128 {
                    weights: weights.iter().map(|w| w.to_i128().unwrap()).collect(),
                    p,
                    thr: thr.to_i128().unwrap_or(if thr.is_negative() { -1 } else { i128::MAX }),
                    scale,
                };
                Ok(finish(&model, &flat, bx, svp))
            } else {
                let model = SumBig { weights, p, thr, scale };
                Ok(finish(&model, &flat, bx, svp))
            }
        }
        NormExponent::Float(p) => {
            let weights = flat.group_of.iter().map(|&g| rational_to_f64(&inst.groups[g].weight)).collect();
            let model = SumF64 {
                weights,
                p,
                inv_scale: 1.0 / rational_to_f64(&lr),
                thr: rational_to_f64(&inst.threshold),
            };
            Ok(finish(&model, &flat, bx, svp))
        }
    }
}

/// Minimum of `dist_pow` over the box, its lexicographically smallest witness,
/// and the number of points at or below the threshold.
pub fn solve_cvp_enum(inst: &LatticeInstance, bx: &CoefficientBox, opts: EnumOptions) -> Result<SolveResult, LatticeError> {
    if inst.kind != ProblemKind::Cvp {
        return Err(LatticeError::Invalid("expected a CVP instance".into()));
    }
    solve(inst, bx, opts, false)
}

/// As [`solve_cvp_enum`] with `z = 0` excluded.
pub fn solve_svp_enum(inst: &LatticeInstance, bx: &CoefficientBox, opts: EnumOptions) -> Result<SolveResult, LatticeError> {
    if inst.kind != ProblemKind::Svp {
        return Err(LatticeError::Invalid("expected an SVP instance".into()));
    }
    solve(inst, bx, opts, true)
}

/// Dispatch on the instance kind.
pub fn solve_enum(inst: &LatticeInstance, bx: &CoefficientBox, opts: EnumOptions) -> Result<SolveResult, LatticeError> {
    solve(inst, bx, opts, inst.kind == ProblemKind::Svp)
}
