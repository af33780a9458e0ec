//! Dual-oracle verification: every source instance is decided by the
//! brute-force SAT oracle and, after reduction, by lattice enumeration over the
//! reduction's certified box. Records also carry the exact distance identities,
//! parsimony counts and rounding checks that apply to each reduction.

use crate::digest::sha256_hex;
use crate::exactnum::{format_rational, rat, rational_pow, Rational, Scalar};
use crate::latticekit::{dist_pow, solve_enum, CoefficientBox, EnumOptions, LatticeError, LatticeInstance, SolveResult};
use crate::parallelepiped::{construct_isoped, exact_margin_of, IsolatingParallelepiped, ParallelepipedError};
use crate::reductions::{
    chi_round, cvpp_instance, cvpp_preprocess, gap2sat_to_cvp, gap_eth_pipeline, gapksat_to_cvp1, ksat_to_cvp_inf,
    ksat_to_svp_inf, maxksat_to_cvp_highrank, maxksat_to_cvp_rankn, source_digest, ReductionError,
};
use crate::rng::SplitMix64;
use crate::satkit::random::{random_cnf_upto, random_kcnf};
use crate::satkit::{
    brute_force_maxsat, formula_value, Clause, Cnf, GapSatInstance, Literal, MaxSatResult, SatError,
    WeightedMaxSatInstance,
};
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Rankn,
    Highrank,
    Gap2,
    GapkL1,
    Inf,
    SvpInf,
    Cvpp,
    GapEth,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 8] = [
        ReductionKind::Rankn,
        ReductionKind::Highrank,
        ReductionKind::Gap2,
        ReductionKind::GapkL1,
        ReductionKind::Inf,
        ReductionKind::SvpInf,
        ReductionKind::Cvpp,
        ReductionKind::GapEth,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionKind::Rankn => "rankn",
            ReductionKind::Highrank => "highrank",
            ReductionKind::Gap2 => "gap2",
            ReductionKind::GapkL1 => "gapk-l1",
            ReductionKind::Inf => "inf",
            ReductionKind::SvpInf => "svp-inf",
            ReductionKind::Cvpp => "cvpp",
            ReductionKind::GapEth => "gap-eth",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductionKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ReductionKind::ALL
            .iter()
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown reduction `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Gadget(#[from] ParallelepipedError),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub reduction: ReductionKind,
    pub p: u32,
    /// Declared width; defaults to the longest clause (at least 2).
    pub k: Option<usize>,
    /// Max-SAT threshold; when absent each instance draws `W` from `{best, best + 1}`.
    pub threshold: Option<u64>,
    pub delta: Rational,
    pub eps: Rational,
    pub delta_prime: Rational,
    /// Gadget for `rankn`; built with `construct_isoped(k, p)` when absent.
    pub gadget: Option<IsolatingParallelepiped>,
    pub seed: u64,
    /// Random points per instance for the rounding check.
    pub chi_samples: usize,
    pub enum_limit: u128,
}

impl VerifyOptions {
    pub fn new(reduction: ReductionKind) -> Self {
        VerifyOptions {
            reduction,
            p: 1,
            k: None,
            threshold: None,
            delta: rat(1, 2),
            eps: rat(3, 4),
            delta_prime: rat(3, 4),
            gadget: None,
            seed: 0,
            chi_samples: 1000,
            enum_limit: crate::latticekit::DEFAULT_ENUM_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceInstance {
    pub name: String,
    pub instance: WeightedMaxSatInstance,
}

/// `trials` random formulas, clause widths uniform in `1..=k` (exactly `k` for `gap-eth`).
pub fn random_sources(reduction: ReductionKind, n: usize, m: usize, k: usize, trials: usize, seed: u64) -> Vec<SourceInstance> {
    let mut rng = SplitMix64::new(seed);
    (0..trials)
        .map(|i| {
            let cnf = if reduction == ReductionKind::GapEth {
                random_kcnf(&mut rng, n, m, k)
            } else {
                random_cnf_upto(&mut rng, n, m, k.min(n))
            };
            let mut instance = WeightedMaxSatInstance::unweighted(cnf);
            instance.width = instance.width.max(k);
            SourceInstance { name: format!("random:{seed}:{i}"), instance }
        })
        .collect()
}

/// Random Max-2-SAT queries over the canonical clause set of `n` variables.
pub fn random_cvpp_sources(n: usize, trials: usize, seed: u64) -> Vec<SourceInstance> {
    let mut rng = SplitMix64::new(seed);
    let mut canonical = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for (a, b) in [(true, true), (true, false), (false, true), (false, false)] {
                canonical.push(
                    Clause::new(vec![Literal { var: i, positive: a }, Literal { var: j, positive: b }])
                        .expect("distinct variables"),
                );
            }
        }
    }
    (0..trials)
        .map(|i| {
            let m = 1 + rng.below(canonical.len() as u64) as usize;
            let clauses = rng.sample_distinct(canonical.len(), m).into_iter().map(|c| canonical[c].clone()).collect();
            let cnf = Cnf::new(n, clauses).expect("variables in range");
            SourceInstance { name: format!("cvpp:{seed}:{i}"), instance: WeightedMaxSatInstance::unweighted(cnf) }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct InstanceRecord {
    pub name: String,
    pub source_sha256: String,
    pub reduction: String,
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub threshold_w: Option<u64>,
    pub sat_decision: bool,
    pub lattice_decision: bool,
    pub box_used: String,
    pub lattice_best: Option<String>,
    pub lattice_count: u64,
    /// Expected minimum over the binary cube and the observed one minus it.
    pub expected_min: Option<String>,
    pub residual: Option<String>,
    pub expected_count: Option<u64>,
    pub chi_violations: Option<u64>,
    pub gap_sound: Option<bool>,
    pub gamma_pow: Option<String>,
    pub error: Option<String>,
    pub runtime_ms: f64,
}

impl InstanceRecord {
    pub fn agrees(&self) -> bool {
        self.error.is_none() && self.sat_decision == self.lattice_decision
    }

    pub fn residual_is_zero(&self) -> bool {
        self.residual.as_deref().is_none_or(|r| r == "0")
    }

    pub fn count_ok(&self) -> bool {
        self.expected_count.is_none_or(|c| c == self.lattice_count)
    }

    pub fn passed(&self) -> bool {
        self.agrees()
            && self.residual_is_zero()
            && self.count_ok()
            && self.chi_violations.unwrap_or(0) == 0
            && self.gap_sound.unwrap_or(true)
    }

    pub fn to_json(&self, with_runtime: bool) -> Value {
        let mut o = Map::new();
        o.insert("type".into(), json!("instance"));
        o.insert("name".into(), json!(self.name));
        o.insert("source_sha256".into(), json!(self.source_sha256));
        o.insert("reduction".into(), json!(self.reduction));
        o.insert("n".into(), json!(self.n));
        o.insert("m".into(), json!(self.m));
        o.insert("rank".into(), json!(self.rank));
        o.insert("sat_decision".into(), json!(self.sat_decision));
        o.insert("lattice_decision".into(), json!(self.lattice_decision));
        o.insert("agree".into(), json!(self.agrees()));
        o.insert("box".into(), json!(self.box_used));
        o.insert("lattice_count".into(), json!(self.lattice_count));
        let opt = |o: &mut Map<String, Value>, k: &str, v: Option<Value>| {
            if let Some(v) = v {
                o.insert(k.into(), v);
            }
        };
        opt(&mut o, "W", self.threshold_w.map(|w| json!(w)));
        opt(&mut o, "lattice_best", self.lattice_best.as_ref().map(|v| json!(v)));
        opt(&mut o, "expected_min", self.expected_min.as_ref().map(|v| json!(v)));
        opt(&mut o, "residual", self.residual.as_ref().map(|v| json!(v)));
        opt(&mut o, "expected_count", self.expected_count.map(|v| json!(v)));
        opt(&mut o, "chi_violations", self.chi_violations.map(|v| json!(v)));
        opt(&mut o, "gap_sound", self.gap_sound.map(|v| json!(v)));
        opt(&mut o, "gamma_pow", self.gamma_pow.as_ref().map(|v| json!(v)));
        opt(&mut o, "error", self.error.as_ref().map(|v| json!(v)));
        if with_runtime {
            o.insert("runtime_ms".into(), json!(self.runtime_ms));
        }
        Value::Object(o)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportSummary {
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub nonzero_residuals: usize,
    pub count_mismatches: usize,
    pub chi_violations: u64,
    pub gap_failures: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub reduction: String,
    pub records: Vec<InstanceRecord>,
    pub runtime_ms: f64,
}

impl VerificationReport {
    pub fn summary(&self) -> ReportSummary {
        let mut s = ReportSummary { instances: self.records.len(), ..Default::default() };
        for r in &self.records {
            if r.agrees() {
                s.agreements += 1;
            } else {
                s.disagreements += 1;
            }
            s.nonzero_residuals += usize::from(!r.residual_is_zero());
            s.count_mismatches += usize::from(!r.count_ok());
            s.chi_violations += r.chi_violations.unwrap_or(0);
            s.gap_failures += usize::from(r.gap_sound == Some(false));
            s.errors += usize::from(r.error.is_some());
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(InstanceRecord::passed)
    }

    /// One JSON object per line: the records in input order, then the summary.
    pub fn to_jsonl(&self, with_runtime: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_json(with_runtime).to_string());
            out.push('\n');
        }
        let s = self.summary();
        let mut o = Map::new();
        o.insert("type".into(), json!("summary"));
        o.insert("reduction".into(), json!(self.reduction));
        o.insert("instances".into(), json!(s.instances));
        o.insert("agreements".into(), json!(s.agreements));
        o.insert("disagreements".into(), json!(s.disagreements));
        o.insert("nonzero_residuals".into(), json!(s.nonzero_residuals));
        o.insert("count_mismatches".into(), json!(s.count_mismatches));
        o.insert("chi_violations".into(), json!(s.chi_violations));
        o.insert("gap_failures".into(), json!(s.gap_failures));
        o.insert("errors".into(), json!(s.errors));
        o.insert("passed".into(), json!(self.passed()));
        if with_runtime {
            o.insert("runtime_ms".into(), json!(self.runtime_ms));
        }
        out.push_str(&Value::Object(o).to_string());
        out.push('\n');
        out
    }

    /// Digest of the report without its runtime fields.
    pub fn digest(&self) -> String {
        sha256_hex(self.to_jsonl(false))
    }

    pub fn human_summary(&self) -> String {
        let s = self.summary();
        format!(
            "{}: {}/{} agree, {} disagreements, {} nonzero residuals, {} count mismatches, {} rounding violations, {} gap failures, {} errors -> {}",
            self.reduction,
            s.agreements,
            s.instances,
            s.disagreements,
            s.nonzero_residuals,
            s.count_mismatches,
            s.chi_violations,
            s.gap_failures,
            s.errors,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn exact(s: &Scalar) -> Result<Rational, VerifyError> {
    s.as_exact().cloned().ok_or_else(|| VerifyError::Other("expected an exact value".into()))
}

fn solve_in(inst: &LatticeInstance, bx: &CoefficientBox, limit: u128) -> Result<SolveResult, VerifyError> {
    Ok(solve_enum(inst, bx, EnumOptions { limit })?)
}

fn certified(inst: &LatticeInstance) -> Result<CoefficientBox, VerifyError> {
    inst.certified_box().ok_or_else(|| VerifyError::Other("instance has no certified box".into()))
}

fn best_of(r: &SolveResult) -> Result<Rational, VerifyError> {
    exact(r.best_value.as_ref().ok_or_else(|| VerifyError::Other("empty box".into()))?)
}

fn int(x: u64) -> Rational {
    Rational::from_integer(x.into())
}

/// `{best, best + 1}` capped at the total weight, unless fixed by the options.
fn pick_threshold(src: &WeightedMaxSatInstance, opts: &VerifyOptions, rng: &mut SplitMix64) -> Result<u64, VerifyError> {
    if let Some(w) = opts.threshold {
        return Ok(w.min(src.total_weight()));
    }
    let best = brute_force_maxsat(src)?.best_weight;
    Ok((best + u64::from(rng.coin())).min(src.total_weight()))
}

fn record_base(src: &SourceInstance, opts: &VerifyOptions) -> InstanceRecord {
    InstanceRecord {
        name: src.name.clone(),
        source_sha256: source_digest(&src.instance),
        reduction: opts.reduction.as_str().into(),
        n: src.instance.num_vars(),
        m: src.instance.clauses().len(),
        ..Default::default()
    }
}

fn width_of(src: &WeightedMaxSatInstance, opts: &VerifyOptions) -> usize {
    opts.k.unwrap_or(src.width).max(src.cnf.max_width()).max(2)
}

fn fill_lattice(rec: &mut InstanceRecord, inst: &LatticeInstance, res: &SolveResult) {
    rec.rank = inst.rank;
    rec.lattice_decision = res.yes;
    rec.lattice_count = res.count;
    rec.box_used = res.box_used.describe();
    rec.lattice_best = res.best_value.as_ref().map(|v| v.to_string());
}

fn set_residual(rec: &mut InstanceRecord, observed: &Rational, expected: &Rational) {
    rec.expected_min = Some(format_rational(expected));
    rec.residual = Some(format_rational(&(observed - expected)));
}

fn chi_check(inst: &LatticeInstance, samples: usize, rng: &mut SplitMix64) -> Result<u64, VerifyError> {
    let mut bad = 0;
    for _ in 0..samples {
        let z: Vec<i64> = (0..inst.rank).map(|_| rng.range_i64(-5, 6)).collect();
        let a = exact(&dist_pow(inst, &z)?)?;
        let b = exact(&dist_pow(inst, &chi_round(&z))?)?;
        bad += u64::from(b > a);
    }
    Ok(bad)
}

fn verify_maxsat(src: &SourceInstance, opts: &VerifyOptions, rng: &mut SplitMix64) -> Result<InstanceRecord, VerifyError> {
    let mut rec = record_base(src, opts);
    let w = pick_threshold(&src.instance, opts, rng)?;
    let k = width_of(&src.instance, opts);
    let mut sat_inst = src.instance.clone().with_threshold(w)?;
    sat_inst.width = k;
    let sat = brute_force_maxsat(&sat_inst)?;
    rec.threshold_w = Some(w);
    rec.sat_decision = sat.decision;
    let n = sat_inst.num_vars();
    let w_tot = int(sat_inst.total_weight());
    let best = int(sat.best_weight);
    let (inst, expected) = match opts.reduction {
        ReductionKind::Rankn => {
            let gadget = match &opts.gadget {
                Some(g) => g.clone(),
                None => construct_isoped(k, crate::exactnum::NormExponent::Exact(opts.p))?,
            };
            if gadget.p != crate::exactnum::NormExponent::Exact(opts.p) {
                return Err(VerifyError::Other(format!("gadget has p = {}, verification runs at p = {}", gadget.p, opts.p)));
            }
            let inst = maxksat_to_cvp_rankn(&sat_inst, &gadget)?;
            let rows = gadget.weighted.as_ref().ok_or_else(|| VerifyError::Other("gadget has no exact form".into()))?;
            let delta = exact_margin_of(rows, opts.p);
            let alpha = &w_tot + (&w_tot - int(w)) * &delta;
            let expected = &w_tot + (&w_tot - &best) * &delta + &alpha * int(n as u64);
            rec.expected_count = Some(sat.count_at_least_w);
            (inst, expected)
        }
        ReductionKind::Highrank => {
            let inst = maxksat_to_cvp_highrank(&sat_inst, opts.p)?;
            let h = rational_pow(&rat(1, 2), opts.p);
            let t = rational_pow(&rat(3, 2), opts.p);
            let alpha = int(w) * &h + (&w_tot - int(w)) * &t;
            let expected = &best * &h + (&w_tot - &best) * &t + &alpha * int(inst.rank as u64);
            if k == 2 {
                rec.expected_count = Some(sat.count_at_least_w);
            }
            (inst, expected)
        }
        ReductionKind::Cvpp => {
            let prep = cvpp_preprocess(n.max(2), opts.p)?;
            let inst = cvpp_instance(&prep, &sat_inst)?;
            let m = int(sat_inst.clauses().len() as u64);
            let mm = int(prep.num_clauses() as u64);
            let expected = (&mm - &m + &best) * rational_pow(&rat(1, 2), opts.p)
                + (&m - &best) * rational_pow(&rat(3, 2), opts.p)
                + &prep.alpha * (int(prep.rank() as u64) - &m);
            (inst, expected)
        }
        _ => unreachable!("not a Max-SAT reduction"),
    };
    let res = solve_in(&inst, &certified(&inst)?, opts.enum_limit)?;
    fill_lattice(&mut rec, &inst, &res);
    let binary = if inst.certified_box() == Some(CoefficientBox::uniform(inst.rank, 0, 1)) {
        res.clone()
    } else {
        solve_in(&inst, &CoefficientBox::uniform(inst.rank, 0, 1), opts.enum_limit)?
    };
    set_residual(&mut rec, &best_of(&binary)?, &expected);
    Ok(rec)
}

fn verify_inf(src: &SourceInstance, opts: &VerifyOptions) -> Result<InstanceRecord, VerifyError> {
    let mut rec = record_base(src, opts);
    let k = width_of(&src.instance, opts);
    let cnf = &src.instance.cnf;
    let sat: MaxSatResult = brute_force_maxsat(&WeightedMaxSatInstance::unweighted(cnf.clone()))?;
    rec.sat_decision = sat.count_satisfying > 0;
    let svp = opts.reduction == ReductionKind::SvpInf;
    let inst = if svp { ksat_to_svp_inf(cnf, k)? } else { ksat_to_cvp_inf(cnf, k)? };
    let res = solve_in(&inst, &certified(&inst)?, opts.enum_limit)?;
    fill_lattice(&mut rec, &inst, &res);
    let ki = k as i64;
    let observed = best_of(&res)?;
    if rec.sat_decision {
        set_residual(&mut rec, &observed, &rat(ki - 1, 2));
    } else if !svp {
        set_residual(&mut rec, &observed, &rat(ki + 1, 2));
    } else if observed <= inst.threshold {
        // Only the decision transfers to SVP; the unsatisfiable minimum is not pinned.
        rec.error = Some(format!("unsatisfiable source but a nonzero vector of length {observed}"));
    }
    rec.expected_count = Some(if svp { 2 * sat.count_satisfying } else { sat.count_satisfying });
    Ok(rec)
}

fn gap_instance(src: &SourceInstance, opts: &VerifyOptions) -> Result<GapSatInstance, VerifyError> {
    Ok(GapSatInstance::new(src.instance.cnf.clone(), opts.delta.clone(), opts.eps.clone())?)
}

fn verify_gap(src: &SourceInstance, opts: &VerifyOptions, rng: &mut SplitMix64) -> Result<InstanceRecord, VerifyError> {
    let mut rec = record_base(src, opts);
    let g = gap_instance(src, opts)?;
    let (red, lo, hi) = match opts.reduction {
        ReductionKind::Gap2 => (gap2sat_to_cvp(&g, opts.p)?, Rational::one(), rational_pow(&rat(3, 1), opts.p)),
        _ => {
            let k = width_of(&src.instance, opts);
            (gapksat_to_cvp1(&g, k)?, rat(k as i64 - 1, 1), rat(k as i64 + 1, 1))
        }
    };
    let inst = &red.instance;
    let sat = brute_force_maxsat(&WeightedMaxSatInstance::unweighted(g.cnf.clone()))?;
    let m = g.cnf.clauses.len();
    let val = sat.val.clone();
    rec.sat_decision = val >= g.eps;
    rec.gamma_pow = Some(format_rational(&red.gamma.gamma_pow));
    let res = solve_in(inst, &certified(inst)?, opts.enum_limit)?;
    fill_lattice(&mut rec, inst, &res);
    let binary = solve_in(inst, &CoefficientBox::uniform(inst.rank, 0, 1), opts.enum_limit)?;
    let bmin = best_of(&binary)?;
    let best = int(sat.best_m_plus as u64);
    let expected = &best * &lo + (int(m as u64) - &best) * &hi;
    set_residual(&mut rec, &bmin, &expected);
    if best_of(&res)? != bmin {
        rec.error = Some(format!("box minimum {} differs from binary minimum {}", best_of(&res)?, bmin));
    }
    let sound = if val >= g.eps {
        bmin <= inst.threshold
    } else if val < g.delta {
        bmin > &red.gamma.gamma_pow * &inst.threshold
    } else {
        true
    };
    rec.gap_sound = Some(sound);
    rec.chi_violations = Some(chi_check(inst, opts.chi_samples, rng)?);
    Ok(rec)
}

fn verify_gap_eth(src: &SourceInstance, opts: &VerifyOptions) -> Result<InstanceRecord, VerifyError> {
    let mut rec = record_base(src, opts);
    let g = gap_instance(src, opts)?;
    let out = gap_eth_pipeline(&g, &opts.delta_prime, opts.p, opts.seed)?;
    let inst = &out.instance;
    let two = &out.two_sat;
    let sat = brute_force_maxsat(&WeightedMaxSatInstance::unweighted(two.cnf.clone()))?;
    rec.sat_decision = sat.val >= two.eps;
    rec.gamma_pow = Some(format_rational(&out.gamma.gamma_pow));
    // Rounding dominance puts the box minimum on the cube, so the cube is searched.
    let res = solve_in(inst, &CoefficientBox::uniform(inst.rank, 0, 1), opts.enum_limit)?;
    fill_lattice(&mut rec, inst, &res);
    let best = int(sat.best_m_plus as u64);
    let m = int(two.cnf.clauses.len() as u64);
    let expected = &best + (&m - &best) * rational_pow(&rat(3, 1), opts.p);
    set_residual(&mut rec, &best_of(&res)?, &expected);
    if formula_value(&src.instance.cnf)?.is_one() {
        rec.gap_sound = Some(res.yes);
    }
    Ok(rec)
}

/// Reduce, solve both sides and compare. `index` seeds the per-instance randomness.
pub fn verify_instance(src: &SourceInstance, opts: &VerifyOptions, index: u64) -> Result<InstanceRecord, VerifyError> {
    let mut rng = SplitMix64::new(opts.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    match opts.reduction {
        ReductionKind::Rankn | ReductionKind::Highrank | ReductionKind::Cvpp => verify_maxsat(src, opts, &mut rng),
        ReductionKind::Inf | ReductionKind::SvpInf => verify_inf(src, opts),
        ReductionKind::Gap2 | ReductionKind::GapkL1 => verify_gap(src, opts, &mut rng),
        ReductionKind::GapEth => verify_gap_eth(src, opts),
    }
}

/// Verify every source in parallel; records keep input order. Failures to
/// build or solve become records with an `error` and count as disagreements.
pub fn verify_all(sources: &[SourceInstance], opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let records = sources
        .par_iter()
        .enumerate()
        .map(|(i, src)| {
            let t0 = Instant::now();
            let mut rec = verify_instance(src, opts, i as u64).unwrap_or_else(|e| {
                let mut r = record_base(src, opts);
                r.error = Some(e.to_string());
                r
            });
            rec.runtime_ms = t0.elapsed().as_secs_f64() * 1e3;
            rec
        })
        .collect();
    VerificationReport {
        reduction: opts.reduction.as_str().into(),
        records,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// [`verify_all`] on a dedicated pool of `workers` threads.
pub fn verify_all_with_workers(sources: &[SourceInstance], opts: &VerifyOptions, workers: usize) -> VerificationReport {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(|| verify_all(sources, opts)),
        Err(_) => verify_all(sources, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(reduction: ReductionKind, p: u32, n: usize, m: usize, k: usize, trials: usize) -> VerificationReport {
        let mut opts = VerifyOptions::new(reduction);
        opts.p = p;
        opts.chi_samples = 50;
        let srcs = if reduction == ReductionKind::Cvpp {
            random_cvpp_sources(n, trials, 5)
        } else {
            random_sources(reduction, n, m, k, trials, 5)
        };
        verify_all(&srcs, &opts)
    }

    #[test]
    fn small_runs_pass() {
        for (r, p, n, m, k) in [
            (ReductionKind::Rankn, 1, 4, 6, 2),
            (ReductionKind::Rankn, 3, 4, 5, 3),
            (ReductionKind::Highrank, 2, 4, 3, 3),
            (ReductionKind::Inf, 1, 4, 8, 3),
            (ReductionKind::SvpInf, 1, 4, 8, 3),
            (ReductionKind::Gap2, 1, 4, 6, 2),
            (ReductionKind::GapkL1, 1, 4, 6, 3),
            (ReductionKind::Cvpp, 1, 3, 0, 2),
            (ReductionKind::GapEth, 1, 3, 2, 3),
        ] {
            let rep = run(r, p, n, m, k, 4);
            assert!(rep.passed(), "{}\n{}", rep.human_summary(), rep.to_jsonl(false));
        }
    }

    #[test]
    fn digest_ignores_runtime() {
        let a = run(ReductionKind::Inf, 1, 3, 5, 2, 3);
        let mut b = a.clone();
        for r in &mut b.records {
            r.runtime_ms += 1.0;
        }
        b.runtime_ms += 5.0;
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.to_jsonl(true), b.to_jsonl(true));
    }
}
