use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clifford_lab_core::context::ModelContext;
use clifford_lab_core::harmonics::{harmonic_space, Family, Grading};
use clifford_lab_core::lie::LieModel;
use clifford_lab_core::report::Report;
use clifford_lab_core::scalar::{Exact, Float, Scalar};
use clifford_lab_core::suites::{self, AlgebraCheck, Suite, SuiteError, Unit};

use crate::catalog;
use crate::manifest::Expect;
use crate::render;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "clifford-lab", version, about = "Exact Clifford-algebra identities and harmonic spaces on almost Hermitian models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model-free sl(2) and bigrading checks on ℝ^{2n}
    Algebra(AlgebraArgs),
    /// Run an identity suite on a manifold
    Verify(VerifyArgs),
    /// Dimensions of invariant harmonic spaces by bidegree
    Diamond(DiamondArgs),
    /// Basic facts about a manifold: dω, N, θ and the gating flags
    Info(InfoArgs),
    /// List the built-in catalog
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Zero threshold in float mode
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write JSON to PATH ("-" for stdout instead of text)
    #[arg(long, value_name = "PATH")]
    pub json: Option<String>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma separated: sl2, structure, correspondence, hodge-aut, bigrading
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Manifold file, or a catalog name
    #[arg(long)]
    pub manifold: String,
    /// hermitian, kaehler, appendix, bochner or laplacian
    #[arg(long)]
    pub suite: String,
    /// Comma separated rationals, e.g. -1,0,1/3
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DiamondArgs {
    #[arg(long)]
    pub manifold: String,
    /// d, delta, delta-bar, eps, delbh, eps-delbh, D, B or B-Bt
    #[arg(long)]
    pub family: String,
    /// pq or rs
    #[arg(long, default_value = "pq")]
    pub grading: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[arg(long)]
    pub manifold: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Outcome {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INPUT }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Algebra(a) => algebra(a),
        Command::Verify(a) => verify(a),
        Command::Diamond(a) => diamond(a),
        Command::Info(a) => info(a),
        Command::Catalog => list_catalog(),
    }
}

/// Rationals `p/q` as reduced `(p, q)` with `q > 0`.
pub fn parse_t_list(s: &str) -> Result<Vec<(i64, i64)>, String> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let (num, den) = match item.split_once('/') {
                Some((a, b)) => (a.trim().parse::<i64>(), b.trim().parse::<i64>()),
                None => (item.parse::<i64>(), Ok(1)),
            };
            match (num, den) {
                (Ok(_), Ok(0)) => Err(format!("zero denominator in t = \"{item}\"")),
                (Ok(a), Ok(b)) => {
                    let g = gcd(a, b).max(1) * b.signum();
                    Ok((a / g, b / g))
                }
                _ => Err(format!("not a rational: t = \"{item}\"")),
            }
        })
        .collect()
}

fn emit(json_target: &Option<String>, text: String, json: String, code: u8) -> Outcome {
    match json_target.as_deref() {
        Some("-") => Outcome { stdout: json, stderr: String::new(), code },
        Some(path) => match std::fs::write(path, json) {
            Ok(()) => Outcome { stdout: text, stderr: String::new(), code },
            Err(e) => Outcome::input_error(format!("{path}: {e}")),
        },
        None => Outcome { stdout: text, stderr: String::new(), code },
    }
}

fn report_outcome(r: &Report, json: &Option<String>) -> Outcome {
    let code = if r.passed() { EXIT_PASS } else { EXIT_FAIL };
    emit(json, render::report_text(r), render::report_json(r), code)
}

fn algebra(a: AlgebraArgs) -> Outcome {
    let mut checks = Vec::new();
    for c in &a.check {
        match AlgebraCheck::parse(c) {
            Some(k) => checks.push(k),
            None => return Outcome::input_error(format!("unknown check \"{c}\"")),
        }
    }
    if checks.is_empty() {
        checks = AlgebraCheck::ALL.to_vec();
    }
    let r = match a.common.mode {
        Mode::Exact => suites::algebra::<Exact>(a.n, &checks),
        Mode::Float => suites::algebra::<Float>(a.n, &checks),
    };
    match r {
        Ok(r) => report_outcome(&r, &a.common.json),
        Err(e) => Outcome::input_error(e),
    }
}

fn load(name: &str) -> Result<LieModel, Outcome> {
    catalog::load(name).map(|(_, m)| m).map_err(Outcome::input_error)
}

fn context<S: Scalar>(model: LieModel, tol: f64) -> Result<ModelContext<S>, Outcome> {
    let tol = if S::EXACT { 0.0 } else { tol };
    ModelContext::new(model, tol).map_err(Outcome::input_error)
}

/// Runs the units on up to `jobs` threads; the result order is the unit order.
pub fn run_units<S: Scalar>(ctx: &ModelContext<S>, units: &[Unit], ts: &[(i64, i64)], jobs: usize) -> Vec<Report> {
    let jobs = jobs.clamp(1, units.len().max(1));
    if jobs == 1 {
        return units.iter().map(|&u| suites::run_unit(ctx, u, ts)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; units.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= units.len() {
                    break;
                }
                let r = suites::run_unit(ctx, units[k], ts);
                slots.lock().expect("worker panicked")[k] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every unit ran")).collect()
}

pub fn verify_report<S: Scalar>(
    model: LieModel,
    suite: Suite,
    ts: &[(i64, i64)],
    tol: f64,
    jobs: usize,
) -> Result<Report, Outcome> {
    let ctx = context::<S>(model, tol)?;
    let units = suites::units(&ctx, suite, ts).map_err(|e| match e {
        SuiteError::NotAlmostKaehler => Outcome::input_error(format!("{}: {e}", ctx.model.name())),
        other => Outcome::input_error(other),
    })?;
    let mut r = Report::new(suite.tag(), ctx.model.name(), S::NAME);
    for part in run_units(&ctx, &units, ts, jobs) {
        r.extend(part);
    }
    Ok(r)
}

fn verify(a: VerifyArgs) -> Outcome {
    let Some(suite) = Suite::parse(&a.suite) else {
        return Outcome::input_error(format!("unknown suite \"{}\"", a.suite));
    };
    let ts = match &a.t {
        Some(s) => match parse_t_list(s) {
            Ok(ts) => ts,
            Err(e) => return Outcome::input_error(e),
        },
        None => suites::default_ts(suite),
    };
    let model = match load(&a.manifold) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let r = match a.common.mode {
        Mode::Exact => verify_report::<Exact>(model, suite, &ts, a.common.tol, a.jobs),
        Mode::Float => verify_report::<Float>(model, suite, &ts, a.common.tol, a.jobs),
    };
    match r {
        Ok(r) => report_outcome(&r, &a.common.json),
        Err(o) => o,
    }
}

pub fn diamond_dims<S: Scalar>(
    model: LieModel,
    family: Family,
    grading: Grading,
    tol: f64,
) -> Result<std::collections::BTreeMap<(i64, i64), usize>, Outcome> {
    let ctx = context::<S>(model, tol)?;
    Ok(harmonic_space(&ctx, family, grading).dims())
}

fn diamond(a: DiamondArgs) -> Outcome {
    let Some(family) = Family::parse(&a.family) else {
        let known: Vec<&str> = Family::ALL.iter().map(|f| f.tag()).collect();
        return Outcome::input_error(format!("unknown family \"{}\" (expected one of {})", a.family, known.join(", ")));
    };
    let Some(grading) = Grading::parse(&a.grading) else {
        return Outcome::input_error(format!("unknown grading \"{}\" (expected pq or rs)", a.grading));
    };
    let model = match load(&a.manifold) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let (name, n) = (model.name().to_string(), model.n() as i64);
    let dims = match a.common.mode {
        Mode::Exact => diamond_dims::<Exact>(model, family, grading, a.common.tol),
        Mode::Float => diamond_dims::<Float>(model, family, grading, a.common.tol),
    };
    match dims {
        Ok(d) => emit(
            &a.common.json,
            render::diamond_text(&name, family, grading, n, &d),
            render::diamond_json(&name, family, grading, &d),
            EXIT_PASS,
        ),
        Err(o) => o,
    }
}

fn info(a: InfoArgs) -> Outcome {
    let (spec, model) = match catalog::load(&a.manifold) {
        Ok(x) => x,
        Err(e) => return Outcome::input_error(e),
    };
    let ctx = match context::<Exact>(model, 0.0) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let labels = ctx.model.labels().to_vec();
    let mut s = String::new();
    let flags = [
        ("almost_kaehler", ctx.almost_kaehler()),
        ("integrable", ctx.integrable()),
        ("kaehler", ctx.kaehler()),
        ("balanced", ctx.balanced()),
    ];
    writeln!(s, "model {} | n = {} | coframe {}", ctx.model.name(), ctx.model.n(), labels.join(" ")).unwrap();
    if let Some(d) = &spec.description {
        writeln!(s, "{d}").unwrap();
    }
    writeln!(s, "ω  = {}", render::form_text(&ctx.forms.omega, &labels)).unwrap();
    writeln!(s, "dω = {}", render::form_text(&ctx.forms.domega, &labels)).unwrap();
    writeln!(s, "θ  = {}", render::form_text(&ctx.forms.theta, &labels)).unwrap();
    let n_zero = ctx.data.nijenhuis.data().iter().all(|x| x.is_zero());
    writeln!(s, "N {} 0", if n_zero { "=" } else { "≠" }).unwrap();
    let Expect { almost_kaehler, integrable, kaehler, balanced } = spec.expect;
    let mut code = EXIT_PASS;
    for ((name, value), expected) in flags.iter().zip([almost_kaehler, integrable, kaehler, balanced]) {
        write!(s, "{name}: {value}").unwrap();
        if let Some(e) = expected {
            if e != *value {
                code = EXIT_FAIL;
                write!(s, "  (file expects {e})").unwrap();
            }
        }
        s.push('\n');
    }
    Outcome { stdout: s, stderr: String::new(), code }
}

fn list_catalog() -> Outcome {
    let mut s = String::new();
    writeln!(s, "catalog {}", catalog::catalog_dir().display()).unwrap();
    for path in catalog::entries() {
        let name = path.file_stem().and_then(|x| x.to_str()).unwrap_or("?").to_string();
        match catalog::load(&path.to_string_lossy()) {
            Ok((spec, m)) => {
                writeln!(s, "{name:<10} n = {}  {}", m.n(), spec.description.unwrap_or_default()).unwrap();
            }
            Err(e) => writeln!(s, "{name:<10} unreadable: {e}").unwrap(),
        }
    }
    Outcome { stdout: s, stderr: String::new(), code: EXIT_PASS }
}
