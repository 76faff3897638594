//! Batch verifier: builds algebras, runs the check suites and writes a report.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use qfft_core::algebras::{
    build_akl, build_am, build_exterior, classical_limit_suite, flatness_suite, manifest,
    oracle_diff, oracle_equivalence_suite, AlgebraHandle, Reading,
};
use qfft_core::braiding::{projector_ranks, verify_braid_and_skein};
use qfft_core::invariants::{
    fft_suite, generator_invariance_suite, psi, sigma_fixed_dimension, single_copy_suite,
    skew_duality_check, verify_relation_suite, PsiRef,
};
use qfft_core::report::{summarize, Suite, Summary};
use qfft_core::rootdata::GeneratorRef;
use qfft_core::rootdata::{quantum_dimension, Family, LieTypeSpec};
use qfft_core::scalar::Scalar;
use qfft_core::uqaction::{act, invariant_pair_vector};

pub const FUEL_ENV: &str = "QFFT_FUEL";
const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Graded dimensions against the classical counts
    Dims,
    /// Braid relation, minimal polynomial and projectors of Ř
    Braiding,
    /// Commutation relations among the generators of the invariants
    Relations,
    /// Invariance of the quadratic generators and of T
    Invariance,
    /// Invariant dimensions against the span of generator products
    Fft,
    /// Skew (GL_m, GL_n) duality on the quantum exterior algebra
    SkewDuality,
    /// Rewrite rules of the chosen algebra
    DumpPresentation,
    /// Printed cross-factor rules and presented product against the braided tensor product
    OracleDiff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "qfft",
    version,
    about = "Exact checks for braided symmetric algebras and their invariants"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Run the full acceptance matrix
    #[arg(long, global = true)]
    pub grid: bool,
    #[arg(long, global = true)]
    pub family: Option<Family>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Number of tensor factors m in A_m
    #[arg(long, global = true)]
    pub copies: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub l: Option<usize>,
    /// Rows of the quantum exterior algebra
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Columns of the quantum exterior algebra
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Rewrite step budget (overrides QFFT_FUEL)
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    /// Use the cross-factor rules exactly as printed instead of the Ř-derived ones
    #[arg(long, global = true)]
    pub strict_paper: bool,
    /// Also check the extension by σ (orthogonal types)
    #[arg(long, global = true)]
    pub sigma: bool,
    #[serde(skip)]
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    #[serde(skip)]
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub suites: Vec<Suite>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or inconsistent configuration; exit code 2.
    Config(String),
    /// A computation aborted (fuel, unsupported input inside a suite).
    Compute(String),
}

type Jobs = Vec<(
    String,
    Box<dyn Fn() -> Result<Vec<Suite>, CliError> + Send + Sync>,
)>;

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn required<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Config(format!("--{flag} is required for {cmd}")))
}

impl RunConfig {
    fn command_name(&self) -> &'static str {
        match self.command {
            Some(Command::Dims) => "dims",
            Some(Command::Braiding) => "braiding",
            Some(Command::Relations) => "relations",
            Some(Command::Invariance) => "invariance",
            Some(Command::Fft) => "fft",
            Some(Command::SkewDuality) => "skew-duality",
            Some(Command::DumpPresentation) => "dump-presentation",
            Some(Command::OracleDiff) => "oracle-diff",
            None => "grid",
        }
    }

    fn spec(&self) -> Result<LieTypeSpec, CliError> {
        let cmd = self.command_name();
        let family = required(self.family, "family", cmd)?;
        let rank = required(self.rank, "rank", cmd)?;
        LieTypeSpec::new(family, rank).map_err(|e| CliError::Config(format!("--rank: {e}")))
    }

    /// A_{k,l} for GL with --k/--l, Λ_q(m×n) without a family, A_m otherwise.
    fn algebra(&self) -> Result<AlgebraHandle, CliError> {
        let h = if let (None, Some(m), Some(n)) = (self.family, self.m, self.n) {
            build_exterior(m, n).map_err(|e| CliError::Config(e.to_string()))?
        } else {
            let spec = self.spec()?;
            if spec.family == Family::GL && (self.k.is_some() || self.l.is_some()) {
                let cmd = self.command_name();
                let (k, l) = (required(self.k, "k", cmd)?, required(self.l, "l", cmd)?);
                build_akl(spec.rank, k, l).map_err(|e| CliError::Config(e.to_string()))?
            } else {
                let m = self.copies.unwrap_or(1);
                if m == 0 {
                    return Err(CliError::Config("--copies must be at least 1".into()));
                }
                build_am(spec, m, self.strict_paper).map_err(|e| CliError::Config(e.to_string()))?
            }
        };
        Ok(h.with_fuel(self.effective_fuel()))
    }

    fn effective_fuel(&self) -> u64 {
        self.fuel
            .or_else(|| std::env::var(FUEL_ENV).ok().and_then(|s| s.parse().ok()))
            .unwrap_or(DEFAULT_FUEL)
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Ok(s) = std::env::var(FUEL_ENV) {
        if cfg.fuel.is_none() && s.parse::<u64>().is_err() {
            eprintln!("error: {FUEL_ENV}={s:?} is not a step count");
            return 2;
        }
    }
    cfg.fuel = Some(cfg.effective_fuel());
    let report = match execute(&cfg) {
        Ok(r) => r,
        Err(CliError::Config(msg)) | Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render_text(&report),
    };
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    if report.summary.all_pass {
        0
    } else {
        1
    }
}

/// Builds the report for a parsed configuration.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    let jobs = if cfg.grid {
        if cfg.command.is_some() {
            return Err(CliError::Config(
                "--grid cannot be combined with a subcommand".into(),
            ));
        }
        grid_jobs(cfg)
    } else {
        match cfg.command {
            Some(cmd) => command_jobs(cfg, cmd)?,
            None => {
                return Err(CliError::Config(
                    "a subcommand or --grid is required".into(),
                ))
            }
        }
    };
    let mut suites = run_jobs(jobs)?;
    for s in &mut suites {
        s.strip_residuals(cfg.verbose);
    }
    let summary = summarize(&suites);
    Ok(Report {
        config: cfg.clone(),
        suites,
        summary,
    })
}

/// Runs jobs in parallel and keeps their order; aborted computations become failing entries.
fn run_jobs(jobs: Jobs) -> Result<Vec<Suite>, CliError> {
    let results: Vec<(String, Result<Vec<Suite>, CliError>)> = jobs
        .into_par_iter()
        .map(|(name, job)| (name, job()))
        .collect();
    let mut out = Vec::new();
    for (name, r) in results {
        match r {
            Ok(s) => out.extend(s),
            Err(CliError::Compute(msg)) => {
                let mut s = Suite::new(name);
                s.push_residual("computation completed", "", Some(msg));
                out.push(s);
            }
            Err(e @ CliError::Config(_)) => return Err(e),
        }
    }
    Ok(out)
}

fn one(name: &str, f: impl Fn() -> Result<Vec<Suite>, CliError> + Send + Sync + 'static) -> Jobs {
    vec![(name.to_string(), Box::new(f))]
}

fn command_jobs(cfg: &RunConfig, cmd: Command) -> Result<Jobs, CliError> {
    let name = cfg.command_name();
    Ok(match cmd {
        Command::Dims => {
            let h = cfg.algebra()?;
            let d = cfg.max_degree.unwrap_or(4);
            one(name, move || {
                Ok(vec![flatness_suite(&h, d).map_err(compute)?])
            })
        }
        Command::Braiding => {
            let spec = cfg.spec()?;
            one(name, move || Ok(braiding_suites(spec)))
        }
        Command::Relations => {
            let h = cfg.algebra()?;
            check_relations_target(&h)?;
            one(name, move || verify_relation_suite(&h).map_err(compute))
        }
        Command::Invariance => {
            let h = cfg.algebra()?;
            let sigma = cfg.sigma;
            one(name, move || invariance_suites(&h, sigma))
        }
        Command::Fft => {
            let h = cfg.algebra()?;
            let (d, sigma) = (cfg.max_degree.unwrap_or(4), cfg.sigma);
            one(name, move || fft_suites(&h, d, sigma))
        }
        Command::SkewDuality => {
            let (m, n) = (cfg.m.unwrap_or(2), cfg.n.unwrap_or(2));
            if m == 0 || n == 0 {
                return Err(CliError::Config("--m and --n must be at least 1".into()));
            }
            one(name, move || skew_suites(m, n))
        }
        Command::DumpPresentation => {
            let h = cfg.algebra()?;
            one(name, move || Ok(vec![presentation_suite(&h)]))
        }
        Command::OracleDiff => {
            let h = cfg.algebra()?;
            if !matches!(h.kind, qfft_core::algebras::AlgebraKind::Am { .. }) {
                return Err(CliError::Config(
                    "oracle-diff needs --family, --rank and --copies".into(),
                ));
            }
            let d = cfg.max_degree.unwrap_or(3);
            one(name, move || oracle_suites(&h, d))
        }
    })
}

fn check_relations_target(h: &AlgebraHandle) -> Result<(), CliError> {
    use qfft_core::algebras::AlgebraKind;
    match (h.spec.family, h.kind) {
        (Family::GL, AlgebraKind::Akl { .. }) => Ok(()),
        (Family::GL, _) => Err(CliError::Config("relations for GL need --k and --l".into())),
        (_, AlgebraKind::Am { .. }) => Ok(()),
        _ => Err(CliError::Config(
            "relations need --family and --rank".into(),
        )),
    }
}

fn braiding_suites(spec: LieTypeSpec) -> Vec<Suite> {
    let mut s = verify_braid_and_skein(spec);
    let d = spec.dim_v();
    let ranks = projector_ranks(spec);
    let total: usize = ranks.iter().sum();
    s.push(
        "projector ranks add up to dim V^2",
        format!("{spec}: {ranks:?}"),
        total == d * d,
    );
    vec![s]
}

fn invariance_suites(h: &AlgebraHandle, sigma: bool) -> Result<Vec<Suite>, CliError> {
    let mut out = vec![generator_invariance_suite(h).map_err(compute)?];
    let spec = h.spec;
    if spec.family != Family::GL {
        out.push(invariant_pair_vector(spec).map_err(compute)?.1);
        out.push(single_copy_suite(spec).map_err(compute)?);
    }
    if sigma {
        out.push(sigma_suite(h)?);
    }
    Ok(out)
}

/// σ extends U_q(so) to U_q(o); the quadratic generators must stay fixed.
fn sigma_suite(h: &AlgebraHandle) -> Result<Suite, CliError> {
    let mut s = Suite::new(format!("sigma on generators {h}"));
    if !matches!(h.spec.family, Family::B | Family::D) {
        return Err(CliError::Config("--sigma applies to types B and D".into()));
    }
    let m = h.copies();
    for i in 1..=m {
        for j in 1..=m {
            let p = psi(h, PsiRef(i, j)).map_err(compute)?;
            let img = act(h, GeneratorRef::sigma(), &p).map_err(compute)?;
            let r = &img - &p;
            s.push_residual(
                "sigma fixes Psi(i,j)",
                format!("{h} i={i} j={j}"),
                (!r.is_zero()).then(|| h.render(&r)),
            );
        }
    }
    Ok(s)
}

fn fft_suites(h: &AlgebraHandle, d: usize, sigma: bool) -> Result<Vec<Suite>, CliError> {
    let (mut suite, points) = fft_suite(h, d).map_err(compute)?;
    if sigma {
        if !matches!(h.spec.family, Family::B | Family::D) {
            return Err(CliError::Config("--sigma applies to types B and D".into()));
        }
        for p in &points {
            let fixed = sigma_fixed_dimension(h, &p.degree).map_err(compute)?;
            suite.push(
                "sigma-fixed invariants",
                format!(
                    "{h} d={:?}: so-invariants {}, sigma-fixed {fixed}",
                    p.degree, p.invariants
                ),
                fixed <= p.invariants,
            );
        }
    }
    Ok(vec![suite])
}

fn skew_suites(m: usize, n: usize) -> Result<Vec<Suite>, CliError> {
    let ext = build_exterior(m, n).map_err(compute)?;
    let mut out = skew_duality_check(m, n).map_err(compute)?;
    out.push(flatness_suite(&ext, m * n).map_err(compute)?);
    Ok(out)
}

fn presentation_suite(h: &AlgebraHandle) -> Suite {
    let mut s = Suite::new(format!("presentation {h}"));
    for e in manifest(h) {
        s.push(
            e.citation,
            format!("{} -> {}", e.pattern, e.replacement),
            true,
        );
    }
    s
}

/// Oracle equivalence of the chosen system, plus the printed cross rules set
/// against the oracle; a printed rule entry passes when either reading matches.
fn oracle_suites(h: &AlgebraHandle, max_total: usize) -> Result<Vec<Suite>, CliError> {
    let mut out = vec![oracle_equivalence_suite(h, max_total).map_err(compute)?];
    if h.spec.family == Family::GL {
        return Ok(out);
    }
    let printed = oracle_diff(h.spec, Reading::Printed).map_err(compute)?;
    let corrected = oracle_diff(h.spec, Reading::Corrected).map_err(compute)?;
    let mut s = Suite::new(format!("printed cross rules against the oracle {}", h.spec));
    for (p, c) in printed.entries.iter().zip(&corrected.entries) {
        let status = |e: &qfft_core::report::Entry| match &e.residual {
            None => "matches".to_string(),
            Some(r) => format!("differs by {r}"),
        };
        let strict_ok = p.pass;
        s.entries.push(qfft_core::report::Entry {
            citation: p.citation.clone(),
            instance: p.instance.clone(),
            residual: Some(format!(
                "as printed: {}; corrected: {}",
                status(p),
                status(c)
            )),
            pass: if h.strict_paper {
                strict_ok
            } else {
                p.pass || c.pass
            },
        });
    }
    out.push(s);
    Ok(out)
}

/// Suites grouped by acceptance criterion; suite names start with `[criterion N]`.
fn grid_jobs(cfg: &RunConfig) -> Jobs {
    let fuel = cfg.effective_fuel();
    let spec = |f, n| LieTypeSpec::new(f, n).expect("grid specs are valid");
    let am = move |f, n, m| {
        build_am(spec(f, n), m, false)
            .map(|h| h.with_fuel(fuel))
            .map_err(compute)
    };
    let akl = move || {
        build_akl(2, 2, 2)
            .map(|h| h.with_fuel(fuel))
            .map_err(compute)
    };
    let mut jobs: Jobs = Vec::new();
    let mut add =
        |c: usize, name: String, f: Box<dyn Fn() -> Result<Vec<Suite>, CliError> + Send + Sync>| {
            let tag = format!("[criterion {c}] ");
            jobs.push((
                format!("{tag}{name}"),
                Box::new(move || {
                    f().map(|ss| {
                        ss.into_iter()
                            .map(|mut s| {
                                s.name = format!("{tag}{}", s.name);
                                s
                            })
                            .collect()
                    })
                }),
            ));
        };

    use Family::{B, C, D, GL};
    let braid_specs = [
        (D, 2),
        (D, 3),
        (B, 1),
        (B, 2),
        (C, 2),
        (C, 3),
        (GL, 2),
        (GL, 3),
    ];
    for (f, n) in braid_specs {
        add(
            1,
            format!("braiding {f}{n}"),
            Box::new(move || Ok(braiding_suites(spec(f, n)))),
        );
    }
    add(
        1,
        "projector ranks D2".into(),
        Box::new(move || {
            let mut s = Suite::new("projector ranks D2");
            let ranks = projector_ranks(spec(D, 2));
            s.push(
                "ranks of P_s, P_a, P_0",
                format!("D2: {ranks:?}"),
                ranks == [9, 6, 1],
            );
            Ok(vec![s])
        }),
    );

    for (f, n) in [(D, 2), (B, 1), (C, 2)] {
        for m in 1..=2 {
            add(
                2,
                format!("dims {f}{n} m={m}"),
                Box::new(move || Ok(vec![flatness_suite(&am(f, n, m)?, 4).map_err(compute)?])),
            );
        }
    }
    add(
        2,
        "dims M_(2,2)".into(),
        Box::new(move || Ok(vec![flatness_suite(&am(GL, 2, 2)?, 4).map_err(compute)?])),
    );
    add(
        2,
        "dims A_(2,2)".into(),
        Box::new(move || Ok(vec![flatness_suite(&akl()?, 4).map_err(compute)?])),
    );
    for (m, n) in [(2, 2), (2, 3)] {
        add(
            2,
            format!("dims Lambda_q {m}x{n}"),
            Box::new(move || {
                Ok(vec![flatness_suite(
                    &build_exterior(m, n).map_err(compute)?,
                    m * n,
                )
                .map_err(compute)?])
            }),
        );
    }

    for (f, n) in [(D, 2), (B, 1), (C, 2)] {
        add(
            3,
            format!("oracle {f}{n}"),
            Box::new(move || oracle_suites(&am(f, n, 2)?, 3)),
        );
    }
    add(
        3,
        "printed B rules disagree with the oracle".into(),
        Box::new(move || {
            let printed = oracle_diff(spec(B, 1), Reading::Printed).map_err(compute)?;
            let mut s = Suite::new("oracle-diff surfaces the printed B discrepancy");
            let n = printed.failures().count();
            s.push(
                "oracle-diff reports the printed B1 cross-rule defect",
                format!("B1: {n} rules differ"),
                n > 0,
            );
            Ok(vec![s])
        }),
    );

    for (f, n) in [(D, 2), (D, 3), (B, 1), (B, 2), (C, 2), (C, 3)] {
        add(
            4,
            format!("invariance {f}{n}"),
            Box::new(move || {
                let mut out = vec![invariant_pair_vector(spec(f, n)).map_err(compute)?.1];
                if f != C {
                    out.push(single_copy_suite(spec(f, n)).map_err(compute)?);
                }
                Ok(out)
            }),
        );
    }
    for (f, n) in [(D, 2), (B, 1), (C, 2)] {
        add(
            4,
            format!("generator invariance {f}{n}"),
            Box::new(move || {
                Ok(vec![
                    generator_invariance_suite(&am(f, n, 4)?).map_err(compute)?
                ])
            }),
        );
    }
    add(
        4,
        "generator invariance A_(2,2)".into(),
        Box::new(move || Ok(vec![generator_invariance_suite(&akl()?).map_err(compute)?])),
    );

    for (f, n) in [(D, 2), (B, 1), (C, 2)] {
        add(
            5,
            format!("relations {f}{n}"),
            Box::new(move || verify_relation_suite(&am(f, n, 4)?).map_err(compute)),
        );
    }
    add(
        5,
        "relations A_(2,2)".into(),
        Box::new(move || verify_relation_suite(&akl()?).map_err(compute)),
    );

    for (f, n) in [(D, 2), (B, 1), (C, 2)] {
        add(
            6,
            format!("fft {f}{n}"),
            Box::new(move || fft_suites(&am(f, n, 2)?, 4, false)),
        );
    }
    add(
        6,
        "fft A_(2,2)".into(),
        Box::new(move || fft_suites(&akl()?, 4, false)),
    );

    for (m, n) in [(2, 2), (2, 3)] {
        add(
            7,
            format!("skew duality {m}x{n}"),
            Box::new(move || skew_suites(m, n)),
        );
    }

    for (f, n, m) in [
        (D, 2, 2),
        (B, 1, 2),
        (C, 2, 2),
        (GL, 2, 2),
        (D, 2, 4),
        (B, 1, 4),
        (C, 2, 4),
    ] {
        add(
            8,
            format!("classical limit {f}{n} m={m}"),
            Box::new(move || Ok(vec![classical_limit_suite(&am(f, n, m)?)])),
        );
    }
    add(
        8,
        "classical limit A_(2,2)".into(),
        Box::new(move || Ok(vec![classical_limit_suite(&akl()?)])),
    );
    for (m, n) in [(2, 2), (2, 3)] {
        add(
            8,
            format!("classical limit Lambda_q {m}x{n}"),
            Box::new(move || {
                Ok(vec![classical_limit_suite(
                    &build_exterior(m, n).map_err(compute)?,
                )])
            }),
        );
    }
    add(
        8,
        "quantum dimensions".into(),
        Box::new(move || {
            let mut s = Suite::new("quantum dimension at q = 1");
            for (f, n) in braid_specs {
                let sp = spec(f, n);
                let qd = quantum_dimension(sp).map_err(compute)?;
                let lim = qd.classical_limit().map_err(compute)?;
                let ok = Scalar::from_rational(lim) == Scalar::from_int(sp.dim_v() as i64);
                s.push(
                    "classical limit of dim_q V is dim V",
                    format!("{sp}: {qd}"),
                    ok,
                );
            }
            Ok(vec![s])
        }),
    );
    jobs
}

/// Plain-text rendering: one line per entry, residuals indented below failures.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for s in &report.suites {
        let _ = writeln!(out, "== {}", s.name);
        for e in &s.entries {
            let mark = if e.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {} | {}", e.citation, e.instance);
            if let Some(r) = &e.residual {
                let _ = writeln!(out, "     {r}");
            }
        }
    }
    let sm = &report.summary;
    let _ = writeln!(
        out,
        "summary: {}/{} passed, {} failed",
        sm.passed, sm.total, sm.failed
    );
    out
}
