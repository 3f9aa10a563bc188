//! `cotangent-lab`: cotangent modules, relative differentials and the
//! exact-sequence checks in the set, monoid and ring contexts.
//!
//! Exit codes: 0 when the checked statement holds, 1 when it fails, 2 for
//! usage, parse and precondition errors.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use cotangent_core::beck::{check_theorem1, check_theorem2, check_theorem3, BeckContext};
use cotangent_core::io::{self, MonoidInput, SetInput};
use cotangent_core::monoid::MonoidContext;
use cotangent_core::ring::groebner::GUARD_DEGREE_ENV;
use cotangent_core::ring::RingContext;
use cotangent_core::set::{FinSet, SetContext, SetMap};
use cotangent_core::suite::{self, SuiteConfig};
use serde_json::{json, Value};

use input::RingInput;
use render::Report;

#[derive(Parser)]
#[command(name = "cotangent-lab", version, about = "Cotangent modules and exact-sequence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree limit for Gröbner computations; overrides COTANGENT_GUARD_DEGREE.
    #[arg(long, global = true)]
    guard_degree: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Print Ω of an object, or the relative module Ω_f of a morphism.
    Omega {
        #[arg(long, value_enum)]
        context: Context,
        /// Truncation bound for the monoid N.
        #[arg(long)]
        bound: Option<usize>,
        file: Option<PathBuf>,
    },
    /// Check a theorem on a descriptor and report the verdict.
    Check {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long, value_enum)]
        context: Option<Context>,
        #[arg(long)]
        bound: Option<usize>,
        /// Check every map between sets of size at most N.
        #[arg(long)]
        exhaustive: Option<usize>,
        files: Vec<PathBuf>,
    },
    /// Run the acceptance battery.
    Suite {
        /// A criterion id, a context tag or a criterion name.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Context {
    Set,
    Monoid,
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    FirstSequence,
    Epi,
    BaseChange,
    Ens,
    NatOmega,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(PathBuf, cotangent_core::Error),
    Precondition(String),
    Core(cotangent_core::Error),
}

impl From<cotangent_core::Error> for CliError {
    fn from(e: cotangent_core::Error) -> Self {
        match e {
            cotangent_core::Error::NotAnEpi(m) => CliError::Precondition(m),
            e => CliError::Core(e),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Input(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Largest `--exhaustive` size; 6 already means 6^6 maps for one pair.
const MAX_EXHAUSTIVE: usize = 6;
/// Default truncation bound for `check nat-omega`.
const DEFAULT_NAT_BOUND: usize = 8;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(d) = cli.guard_degree {
        std::env::set_var(GUARD_DEGREE_ENV, d.to_string());
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON")),
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Omega { context, bound, file } => omega(*context, *bound, file.as_deref()),
        Command::Check { theorem, context, bound, exhaustive, files } => {
            check(*theorem, *context, *bound, *exhaustive, files)
        }
        Command::Suite { only } => run_suite(cli.seed, only.clone()),
    }
}

fn omega(context: Context, bound: Option<usize>, file: Option<&std::path::Path>) -> Result<Report, CliError> {
    let need_file = || file.ok_or_else(|| CliError::Usage("missing descriptor file".into()));
    if bound.is_some() && context != Context::Monoid {
        return Err(CliError::Usage("--bound applies to the monoid context".into()));
    }
    match context {
        Context::Set => match input::set(need_file()?)? {
            SetInput::Set(x) => Ok(render::set_omega("omega", &SetContext.omega(&x)?)),
            SetInput::Map(f) => Ok(render::set_omega("omega_rel", &SetContext.omega_rel(&f)?)),
        },
        Context::Monoid => {
            let parsed = match (file, bound) {
                (Some(p), _) => input::monoid(p, bound)?,
                (None, Some(b)) => MonoidInput::Monoid(input::nat(b)?),
                (None, None) => return Err(CliError::Usage("missing descriptor file or --bound".into())),
            };
            match parsed {
                MonoidInput::Monoid(m) => {
                    let nat = match m.nat_bound() {
                        Some(b) => Some(MonoidContext.omega_nat_truncated(b)?),
                        None => None,
                    };
                    Ok(render::monoid_omega("omega", &MonoidContext.omega(&m)?, nat.as_ref()))
                }
                MonoidInput::Hom(f) => Ok(render::monoid_omega("omega_rel", &MonoidContext.omega_rel(&f)?, None)),
            }
        }
        Context::Ring => match input::ring(need_file()?)? {
            RingInput::Algebra(a) => Ok(render::ring_omega("omega", &RingContext.omega(&a)?)),
            RingInput::Hom(f) => Ok(render::ring_omega("omega_rel", &RingContext.omega_rel(&f)?)),
        },
    }
}

fn require_context(theorem: Theorem, context: Option<Context>, default: Option<Context>) -> Result<Context, CliError> {
    context
        .or(default)
        .ok_or_else(|| CliError::Usage(format!("{} needs --context", theorem.to_possible_value().expect("named").get_name())))
}

fn check(
    theorem: Theorem,
    context: Option<Context>,
    bound: Option<usize>,
    exhaustive: Option<usize>,
    files: &[PathBuf],
) -> Result<Report, CliError> {
    if exhaustive.is_some() && theorem != Theorem::Ens {
        return Err(CliError::Usage("--exhaustive applies to the ens check".into()));
    }
    if bound.is_some() && theorem != Theorem::NatOmega {
        return Err(CliError::Usage("--bound applies to the nat-omega check".into()));
    }
    let name = theorem.to_possible_value().expect("named").get_name().to_string();
    let incompatible = |c: Context| CliError::Usage(format!("{name} is not available in the {c:?} context"));
    match theorem {
        Theorem::FirstSequence => {
            let path = input::one(files)?;
            let (ctx, v) = match require_context(theorem, context, None)? {
                Context::Set => ("set", check_theorem1(&SetContext, &set_map(path)?)?),
                Context::Monoid => ("monoid", check_theorem1(&MonoidContext, &monoid_hom(path)?)?),
                Context::Ring => ("ring", check_theorem1(&RingContext, &ring_hom(path)?)?),
            };
            Ok(render::sequence(&name, ctx, &v))
        }
        Theorem::Epi => {
            let path = input::one(files)?;
            let (ctx, v) = match require_context(theorem, context, None)? {
                Context::Set => ("set", check_theorem2(&SetContext, &set_map(path)?)?),
                Context::Monoid => ("monoid", check_theorem2(&MonoidContext, &monoid_hom(path)?)?),
                Context::Ring => ("ring", check_theorem2(&RingContext, &ring_hom(path)?)?),
            };
            Ok(render::epi(&name, ctx, &v))
        }
        Theorem::BaseChange => {
            let (p, q) = input::two(files)?;
            let (ctx, v) = match require_context(theorem, context, None)? {
                Context::Set => ("set", check_theorem3(&SetContext, &set_object(p)?, &set_object(q)?)?),
                Context::Monoid => (
                    "monoid",
                    check_theorem3(&MonoidContext, &monoid_object(p)?, &monoid_object(q)?)?,
                ),
                Context::Ring => ("ring", RingContext.base_change_check(&ring_algebra(p)?, &ring_algebra(q)?)?),
            };
            Ok(render::iso(&name, ctx, &v))
        }
        Theorem::Ens => {
            let c = require_context(theorem, context, Some(Context::Set))?;
            if c != Context::Set {
                return Err(incompatible(c));
            }
            match (exhaustive, files) {
                (Some(n), []) => ens_exhaustive(&name, n),
                (None, [_]) => {
                    let f = set_map(input::one(files)?)?;
                    Ok(render::ens_single(&name, &f, &SetContext.prop_ens_check(&f)?))
                }
                _ => Err(CliError::Usage("ens takes either --exhaustive N or one map file".into())),
            }
        }
        Theorem::NatOmega => {
            let c = require_context(theorem, context, Some(Context::Monoid))?;
            if c != Context::Monoid {
                return Err(incompatible(c));
            }
            if !files.is_empty() {
                return Err(CliError::Usage("nat-omega takes --bound, not a file".into()));
            }
            let b = bound.unwrap_or(DEFAULT_NAT_BOUND);
            input::nat(b + 1)?;
            let at = MonoidContext.omega_nat_truncated(b)?;
            let next = MonoidContext.omega_nat_truncated(b + 1)?;
            Ok(render::nat_omega(&name, &at, &next))
        }
    }
}

fn ens_exhaustive(name: &str, n: usize) -> Result<Report, CliError> {
    if n > MAX_EXHAUSTIVE {
        return Err(CliError::Usage(format!("--exhaustive is limited to {MAX_EXHAUSTIVE}")));
    }
    let mut total = 0u64;
    let mut bad = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            for f in SetMap::all(&FinSet::range(m), &FinSet::range(k)) {
                total += 1;
                let v = SetContext.prop_ens_check(&f)?;
                if !v.consistent() {
                    bad.push((f, v));
                }
            }
        }
    }
    Ok(render::ens_exhaustive(name, n, total, &bad))
}

fn run_suite(seed: u64, only: Option<String>) -> Result<Report, CliError> {
    if let Some(f) = &only {
        if !suite::is_valid_filter(f) {
            return Err(CliError::Usage(format!("--only {f} selects no criterion")));
        }
    }
    let reports = suite::run(&SuiteConfig { seed, only });
    Ok(render::suite(seed, &reports))
}

fn set_map(path: &std::path::Path) -> Result<SetMap, CliError> {
    match input::set(path)? {
        SetInput::Map(f) => Ok(f),
        SetInput::Set(_) => Err(CliError::Usage(format!("{}: expected a map descriptor", path.display()))),
    }
}

fn set_object(path: &std::path::Path) -> Result<FinSet, CliError> {
    match input::set(path)? {
        SetInput::Set(x) => Ok(x),
        SetInput::Map(_) => Err(CliError::Usage(format!("{}: expected a set descriptor", path.display()))),
    }
}

fn monoid_hom(path: &std::path::Path) -> Result<cotangent_core::monoid::MonoidHom, CliError> {
    match input::monoid(path, None)? {
        MonoidInput::Hom(f) => Ok(f),
        MonoidInput::Monoid(_) => Err(CliError::Usage(format!(
            "{}: expected a monoid homomorphism descriptor",
            path.display()
        ))),
    }
}

fn monoid_object(path: &std::path::Path) -> Result<cotangent_core::monoid::FinCommMonoid, CliError> {
    match input::monoid(path, None)? {
        MonoidInput::Monoid(m) => Ok(m),
        MonoidInput::Hom(_) => Err(CliError::Usage(format!("{}: expected a monoid descriptor", path.display()))),
    }
}

fn ring_hom(path: &std::path::Path) -> Result<cotangent_core::ring::AlgebraHom, CliError> {
    match input::ring(path)? {
        RingInput::Hom(f) => Ok(f),
        RingInput::Algebra(_) => Err(CliError::Usage(format!("{}: expected a homomorphism file", path.display()))),
    }
}

fn ring_algebra(path: &std::path::Path) -> Result<cotangent_core::ring::FPAlgebra, CliError> {
    match input::ring(path)? {
        RingInput::Algebra(a) => Ok(a),
        RingInput::Hom(_) => Err(CliError::Usage(format!("{}: expected an algebra file", path.display()))),
    }
}

/// Shared by the renderers: JSON for an integer vector.
pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(io::int_to_json).collect())
}
