//! `satlat`: build gadgets, compile reductions, solve instances and run the
//! dual-oracle verification from the shell.
//!
//! Exit codes: 0 YES / success, 1 NO / failed check, 2 usage or format error,
//! 3 gadget construction failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use satlat_core::exactnum::{format_rational, parse_rational, NormExponent, Rational};
use satlat_core::latticekit::{
    read_instance, solve_enum, write_instance, CoefficientBox, EnumOptions, LatticeInstance, ProblemKind, Provenance,
    DEFAULT_ENUM_LIMIT,
};
use satlat_core::parallelepiped::{
    construct_isoped, expected_leading_coefficient, figure2, l1_family, leading_coefficient, p2_nogo, read_isoped,
    validate_exact, validate_isoped, write_isoped, IsolatingParallelepiped, ParallelepipedError,
};
use satlat_core::reductions::{
    cvpp_instance, cvpp_preprocess, gap2sat_to_cvp, gap_eth_pipeline, gapksat_to_cvp1, ksat_to_cvp_inf, ksat_to_svp_inf,
    maxksat_to_cvp_highrank, maxksat_to_cvp_rankn, ReductionError,
};
use satlat_core::satkit::{
    brute_force_maxsat, garey_3to2, parse_dimacs, sparsify_gap, write_cnf, GapSatInstance, WeightedMaxSatInstance,
};
use satlat_core::verify::{
    random_cvpp_sources, random_sources, verify_all_with_workers, ReductionKind, SourceInstance, VerifyOptions,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const ENUM_LIMIT_ENV: &str = "SATLAT_ENUM_LIMIT";

#[derive(Parser)]
#[command(name = "satlat", version, about = "SAT to lattice CVP/SVP reductions and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isolating parallelepiped gadgets.
    #[command(subcommand)]
    Piped(PipedCmd),
    /// Compile a formula into a lattice instance.
    Reduce(ReduceArgs),
    /// Decide a lattice instance or a Max-SAT instance by enumeration.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Run both oracles over a corpus or random instances.
    Verify(VerifyArgs),
    /// Formula transforms and the Max-SAT oracle.
    #[command(subcommand)]
    Sat(SatCmd),
}

#[derive(Subcommand)]
enum PipedCmd {
    /// Construct a gadget and write it as isoped/1.
    Build {
        #[arg(long)]
        p: String,
        #[arg(long)]
        k: usize,
        /// Use the two-row l1 family instead of the weight profile (p = 1 only).
        #[arg(long)]
        l1: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a gadget file on every vertex.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Leading coefficient of t* -> det M_k(p, t*).
    Lc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
    },
    /// p = 2 falsification suite.
    Nogo {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        l2_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Rankn,
    Highrank,
    Gap2,
    #[value(name = "gapk-l1")]
    GapkL1,
    Inf,
    #[value(name = "svp-inf")]
    SvpInf,
    #[value(name = "cvpp-prep")]
    CvppPrep,
    #[value(name = "cvpp-query")]
    CvppQuery,
    #[value(name = "gap-eth")]
    GapEth,
}

#[derive(Args)]
struct ReduceArgs {
    kind: ReduceKind,
    /// DIMACS CNF/WCNF input (not used by cvpp-prep).
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long = "W")]
    w: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "1/2")]
    delta: String,
    #[arg(long, default_value = "1")]
    eps: String,
    #[arg(long, default_value = "3/4")]
    dprime: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `auto`, `figure2`, `l1:k=K`, or an isoped/1 file.
    #[arg(long, default_value = "auto")]
    gadget: String,
    /// Number of variables for cvpp-prep.
    #[arg(long)]
    n: Option<usize>,
    /// Preprocessed lattice file for cvpp-query.
    #[arg(long)]
    lattice: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SolveCmd {
    Cvp(SolveLatticeArgs),
    Svp(SolveLatticeArgs),
    /// Exhaustive weighted Max-SAT: is some assignment of weight >= W?
    Maxsat {
        input: PathBuf,
        #[arg(long = "W")]
        w: Option<u64>,
    },
}

#[derive(Args)]
struct SolveLatticeArgs {
    instance: PathBuf,
    /// Uniform coefficient box `a:b`; defaults to the instance's certified box.
    #[arg(long = "box", allow_hyphen_values = true)]
    bx: Option<String>,
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    reduction: String,
    /// Directory of DIMACS files (sorted by name).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// `n,m,k,T`: T random formulas with n variables, m clauses, width up to k.
    #[arg(long)]
    random: Option<String>,
    /// Variables for random CVPP queries.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "W")]
    w: Option<u64>,
    #[arg(long, default_value = "1/2")]
    delta: String,
    #[arg(long, default_value = "3/4")]
    eps: String,
    #[arg(long, default_value = "3/4")]
    dprime: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    gadget: Option<String>,
    #[arg(long, default_value_t = 1000)]
    chi_samples: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Line-oriented JSON report destination.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SatCmd {
    /// Clause subsampling of a Gap-3-SAT instance.
    Sparsify {
        input: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        dprime: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace each 3-clause by the ten 2-clause gadget.
    Garey3to2 {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Same as `solve maxsat`.
    Maxsat {
        input: PathBuf,
        #[arg(long = "W")]
        w: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Construction(String),
}

type CmdResult = Result<u8, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn from_gadget_error(e: ParallelepipedError) -> Failure {
    match e {
        ParallelepipedError::ConstructionFailure { .. } => Failure::Construction(e.to_string()),
        e => usage(e),
    }
}

fn from_reduction_error(e: ReductionError) -> Failure {
    match e {
        ReductionError::Gadget(g) => from_gadget_error(g),
        e => usage(e),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn enum_limit() -> Result<u128, Failure> {
    match std::env::var(ENUM_LIMIT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{ENUM_LIMIT_ENV}={v} is not an integer"))),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

fn load_formula(path: &Path) -> Result<WeightedMaxSatInstance, Failure> {
    let parsed = parse_dimacs(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.instance)
}

fn load_gadget(spec: &str, k: usize, p: u32) -> Result<IsolatingParallelepiped, Failure> {
    if spec == "auto" {
        return construct_isoped(k, NormExponent::Exact(p)).map_err(from_gadget_error);
    }
    if spec == "figure2" {
        return Ok(figure2());
    }
    if let Some(w) = spec.strip_prefix("l1:k=") {
        let w: usize = w.parse().map_err(|_| usage(format!("bad gadget spec `{spec}`")))?;
        return l1_family(w).map_err(from_gadget_error);
    }
    read_isoped(&read_text(Path::new(spec))?).map_err(usage)
}

fn run_piped(cmd: PipedCmd) -> CmdResult {
    match cmd {
        PipedCmd::Build { p, k, l1, output } => {
            let p: NormExponent = p.parse().map_err(|e| usage(format!("--p: {e}")))?;
            let g = if l1 {
                if p != NormExponent::Exact(1) {
                    return Err(usage("--l1 requires --p 1"));
                }
                l1_family(k).map_err(from_gadget_error)?
            } else {
                construct_isoped(k, p).map_err(from_gadget_error)?
            };
            emit(&output, &write_isoped(&g))?;
            if output.is_some() {
                println!("built k = {k}, p = {p}, margin = {}", g.margin);
            }
            Ok(0)
        }
        PipedCmd::Check { file, tol } => {
            let g = read_isoped(&read_text(&file)?).map_err(usage)?;
            let mut ok = true;
            match validate_isoped(&g, tol) {
                Ok(r) => println!(
                    "dense: {} nonzero vertices within {:e} of 1 (max deviation {:e}), |t*|^p = {}",
                    (1u64 << g.k) - 1,
                    tol,
                    r.max_deviation,
                    1.0 + r.margin
                ),
                Err(e) => {
                    println!("dense: FAIL {e}");
                    ok = false;
                }
            }
            if g.weighted.is_some() && g.p.as_exact().is_some() {
                match validate_exact(&g) {
                    Ok(r) => {
                        let norm = &r.margin + Rational::from_integer(1.into());
                        println!("exact: all vertices at 1, |t*|^p = {}, margin = {} - 1 = {}", format_rational(&norm), format_rational(&norm), format_rational(&r.margin));
                    }
                    Err(e) => {
                        println!("exact: FAIL {e}");
                        ok = false;
                    }
                }
            }
            println!("{}", if ok { "PASS" } else { "FAIL" });
            Ok(if ok { 0 } else { 1 })
        }
        PipedCmd::Lc { k, p } => {
            let lc = leading_coefficient(k, p).map_err(usage)?;
            let expected = expected_leading_coefficient(k);
            println!("leading coefficient = {} (2^k(2 - 2^k) = {})", format_rational(&lc), format_rational(&expected));
            Ok(if lc == expected { 0 } else { 1 })
        }
        PipedCmd::Nogo { k, samples, l2_samples, seed } => {
            if k < 2 {
                return Err(usage("--k must be at least 2"));
            }
            let r = p2_nogo(k, samples, l2_samples, seed);
            println!("k = {k}: det M_k(2, t*) = 0 at {}/{} sampled t*", r.det_zero, r.det_samples);
            println!("k = {k}: construction at p = 2 {}", if r.construction_failed { "fails" } else { "SUCCEEDED" });
            println!("k = {k}: alternating l2 sum = 0 on {}/{} random (V, t)", r.l2_zero, r.l2_samples);
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            Ok(if r.passed() { 0 } else { 1 })
        }
    }
}

fn input_formula(args: &ReduceArgs) -> Result<WeightedMaxSatInstance, Failure> {
    let path = args.input.as_ref().ok_or_else(|| usage("missing input formula"))?;
    load_formula(path)
}

fn gap_source(args: &ReduceArgs) -> Result<GapSatInstance, Failure> {
    let f = input_formula(args)?;
    GapSatInstance::new(f.cnf, rational_arg("delta", &args.delta)?, rational_arg("eps", &args.eps)?).map_err(usage)
}

fn run_reduce(args: ReduceArgs) -> CmdResult {
    let inst = match args.kind {
        ReduceKind::Rankn | ReduceKind::Highrank => {
            let mut f = input_formula(&args)?;
            if let Some(w) = args.w {
                f = f.with_threshold(w).map_err(usage)?;
            }
            if let Some(k) = args.k {
                f.width = f.width.max(k);
            }
            if matches!(args.kind, ReduceKind::Rankn) {
                let g = load_gadget(&args.gadget, f.width.max(2), args.p)?;
                maxksat_to_cvp_rankn(&f, &g).map_err(from_reduction_error)?
            } else {
                f.width = f.width.max(2);
                maxksat_to_cvp_highrank(&f, args.p).map_err(from_reduction_error)?
            }
        }
        ReduceKind::Gap2 => {
            let r = gap2sat_to_cvp(&gap_source(&args)?, args.p).map_err(from_reduction_error)?;
            eprintln!("{}", r.gamma);
            r.instance
        }
        ReduceKind::GapkL1 => {
            let g = gap_source(&args)?;
            let k = args.k.unwrap_or_else(|| g.cnf.max_width().max(2));
            let r = gapksat_to_cvp1(&g, k).map_err(from_reduction_error)?;
            eprintln!("{}", r.gamma);
            r.instance
        }
        ReduceKind::Inf | ReduceKind::SvpInf => {
            let f = input_formula(&args)?;
            let k = args.k.unwrap_or_else(|| f.cnf.max_width().max(2));
            let inst = if matches!(args.kind, ReduceKind::Inf) {
                ksat_to_cvp_inf(&f.cnf, k)
            } else {
                ksat_to_svp_inf(&f.cnf, k)
            }
            .map_err(from_reduction_error)?;
            eprintln!("r = {}", format_rational(&inst.threshold));
            inst
        }
        ReduceKind::CvppPrep => {
            let n = args.n.ok_or_else(|| usage("cvpp-prep needs --n"))?;
            let prep = cvpp_preprocess(n, args.p).map_err(from_reduction_error)?;
            let mut provenance = Provenance::new("cvpp-prep", "fixed max-2-sat lattice for n variables")
                .param("n", n)
                .param("p", args.p)
                .param("M", prep.num_clauses())
                .param("alpha", format_rational(&prep.alpha));
            provenance.params.insert("certified_box".into(), "0:1".into());
            LatticeInstance {
                kind: ProblemKind::Cvp,
                norm: NormExponent::Exact(args.p),
                rank: prep.rank(),
                groups: prep.basis.clone(),
                threshold: Rational::from_integer(0.into()),
                provenance,
            }
        }
        ReduceKind::CvppQuery => {
            let f = input_formula(&args)?;
            let f = match args.w {
                Some(w) => f.with_threshold(w).map_err(usage)?,
                None => f,
            };
            let (n, p) = match &args.lattice {
                Some(path) => {
                    let lat = read_instance(&read_text(path)?).map_err(usage)?;
                    let get = |key: &str| -> Result<u64, Failure> {
                        lat.provenance
                            .params
                            .get(key)
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| usage(format!("{}: provenance.params.{key} missing", path.display())))
                    };
                    if lat.provenance.reduction != "cvpp-prep" {
                        return Err(usage(format!("{} is not a cvpp-prep lattice", path.display())));
                    }
                    let (n, p) = (get("n")? as usize, get("p")? as u32);
                    let prep = cvpp_preprocess(n, p).map_err(from_reduction_error)?;
                    if prep.basis != lat.groups {
                        return Err(usage(format!("{}: lattice does not match the canonical basis", path.display())));
                    }
                    (n, p)
                }
                None => (args.n.unwrap_or(f.num_vars()).max(2), args.p),
            };
            let prep = cvpp_preprocess(n, p).map_err(from_reduction_error)?;
            cvpp_instance(&prep, &f).map_err(from_reduction_error)?
        }
        ReduceKind::GapEth => {
            let g = gap_source(&args)?;
            let dprime = rational_arg("dprime", &args.dprime)?;
            let out = gap_eth_pipeline(&g, &dprime, args.p, args.seed).map_err(from_reduction_error)?;
            eprintln!("{}", out.gamma);
            for s in &out.instance.provenance.stages {
                eprintln!("stage {}: {}", s.name, s.output_sha256);
            }
            out.instance
        }
    };
    emit(&args.output, &write_instance(&inst))?;
    Ok(0)
}

fn run_solve_lattice(args: SolveLatticeArgs, kind: ProblemKind) -> CmdResult {
    let inst = read_instance(&read_text(&args.instance)?).map_err(usage)?;
    if inst.kind != kind {
        return Err(usage(format!("instance is {}, not {}", inst.kind.as_str(), kind.as_str())));
    }
    let certified = inst.certified_box();
    let bx = match &args.bx {
        Some(s) => CoefficientBox::parse_uniform(s, inst.rank).ok_or_else(|| usage(format!("bad box `{s}`")))?,
        None => certified.clone().ok_or_else(|| usage("instance has no certified box; pass --box a:b"))?,
    };
    if let Some(c) = &certified {
        if !bx.contains_box(c) {
            println!("warning: box {} does not cover the certified box {}; NO is not conclusive", bx.describe(), c.describe());
        }
    }
    let res = solve_enum(&inst, &bx, EnumOptions { limit: enum_limit()? }).map_err(usage)?;
    println!("box: {}", bx.describe());
    match (&res.best_value, &res.witness) {
        (Some(v), Some(w)) => {
            let what = if inst.norm.is_finite() { "best dist^p" } else { "best dist" };
            println!("{what}: {v}");
            println!("witness: {}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        }
        _ => println!("no admissible point in the box"),
    }
    let thr_name = if inst.norm.is_finite() { "threshold r^p" } else { "threshold r" };
    println!("{thr_name}: {}", format_rational(&inst.threshold));
    if args.count {
        println!("count: {}", res.count);
    }
    println!("{}", if res.yes { "YES" } else { "NO" });
    Ok(if res.yes { 0 } else { 1 })
}

fn run_maxsat(input: &Path, w: Option<u64>) -> CmdResult {
    let mut f = load_formula(input)?;
    if let Some(w) = w {
        f = f.with_threshold(w).map_err(usage)?;
    }
    let r = brute_force_maxsat(&f).map_err(usage)?;
    println!("best weight: {}", r.best_weight);
    println!(
        "best assignment: {}",
        r.best_assignment.iter().enumerate().map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) }).collect::<Vec<_>>().join(" ")
    );
    println!("optimal assignments: {}", r.count_optimal);
    println!("assignments with weight >= {}: {}", f.threshold, r.count_at_least_w);
    println!("{}", if r.decision { "YES" } else { "NO" });
    Ok(if r.decision { 0 } else { 1 })
}

fn corpus_sources(dir: &Path) -> Result<Vec<SourceInstance>, Failure> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cnf" || x == "wcnf"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            Ok(SourceInstance {
                name: p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                instance: load_formula(p)?,
            })
        })
        .collect()
}

fn run_verify(args: VerifyArgs) -> CmdResult {
    let reduction: ReductionKind = args.reduction.parse().map_err(usage)?;
    let mut opts = VerifyOptions::new(reduction);
    opts.p = args.p;
    opts.k = args.k;
    opts.threshold = args.w;
    opts.delta = rational_arg("delta", &args.delta)?;
    opts.eps = rational_arg("eps", &args.eps)?;
    opts.delta_prime = rational_arg("dprime", &args.dprime)?;
    opts.seed = args.seed;
    opts.chi_samples = args.chi_samples;
    opts.enum_limit = enum_limit()?;
    if let Some(spec) = &args.gadget {
        let k = args.k.ok_or_else(|| usage("--gadget needs --k"))?;
        let g = load_gadget(spec, k, args.p)?;
        if g.p != NormExponent::Exact(args.p) {
            return Err(usage(format!("--gadget has p = {}, but --p is {}", g.p, args.p)));
        }
        opts.gadget = Some(g);
    }
    let sources = match (&args.corpus, &args.random) {
        (Some(dir), None) => corpus_sources(dir)?,
        (None, Some(spec)) => {
            let parts: Vec<usize> = spec
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| usage(format!("--random: bad number `{x}`"))))
                .collect::<Result<_, _>>()?;
            let [n, m, k, t] = parts[..] else {
                return Err(usage("--random expects n,m,k,T"));
            };
            if k == 0 || k > n {
                return Err(usage("--random needs 1 <= k <= n"));
            }
            if reduction == ReductionKind::Cvpp {
                random_cvpp_sources(n, t, args.seed)
            } else {
                random_sources(reduction, n, m, k, t, args.seed)
            }
        }
        (None, None) if reduction == ReductionKind::Cvpp => {
            let n = args.n.ok_or_else(|| usage("cvpp verification needs --n, --random or --corpus"))?;
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            random_cvpp_sources(n, args.trials, args.seed)
        }
        _ => return Err(usage("pass exactly one of --corpus or --random")),
    };
    let workers = args.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = verify_all_with_workers(&sources, &opts, workers);
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_jsonl(true)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    for r in report.records.iter().filter(|r| !r.passed()) {
        println!("{}", r.to_json(false));
    }
    println!("{}", report.human_summary());
    println!("digest: {}", report.digest());
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_sat(cmd: SatCmd) -> CmdResult {
    match cmd {
        SatCmd::Sparsify { input, delta, dprime, eps, seed, output } => {
            let f = load_formula(&input)?;
            let g = GapSatInstance::new(f.cnf, rational_arg("delta", &delta)?, rational_arg("eps", &eps)?).map_err(usage)?;
            let out = sparsify_gap(&g, &rational_arg("dprime", &dprime)?, seed).map_err(usage)?;
            eprintln!(
                "kept {} of {} clauses (keep probability {}, alpha {})",
                out.instance.cnf.clauses.len(),
                g.cnf.clauses.len(),
                format_rational(&out.keep_probability),
                format_rational(&out.alpha)
            );
            emit(&output, &write_cnf(&out.instance.cnf))?;
            Ok(0)
        }
        SatCmd::Garey3to2 { input, output } => {
            let f = load_formula(&input)?;
            let one = Rational::from_integer(1.into());
            let g = GapSatInstance { cnf: f.cnf, delta: Rational::from_integer(0.into()), eps: one };
            let out = garey_3to2(&g).map_err(usage)?;
            emit(&output, &write_cnf(&out.cnf))?;
            Ok(0)
        }
        SatCmd::Maxsat { input, w } => run_maxsat(&input, w),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Piped(c) => run_piped(c),
        Command::Reduce(a) => run_reduce(a),
        Command::Solve(SolveCmd::Cvp(a)) => run_solve_lattice(a, ProblemKind::Cvp),
        Command::Solve(SolveCmd::Svp(a)) => run_solve_lattice(a, ProblemKind::Svp),
        Command::Solve(SolveCmd::Maxsat { input, w }) => run_maxsat(&input, w),
        Command::Verify(a) => run_verify(a),
        Command::Sat(c) => run_sat(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Construction(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
