//! Argument handling, job execution and the built-in regression suite.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use kummer_core::algebra::numtheory::{factorize, is_prime};
use kummer_core::algebra::{PrimeField, RatFunc, Rationals};
use kummer_core::constfield::{BaseField, CycloField, DEFAULT_BUDGET};
use kummer_core::funcfield::normalize;
use kummer_core::kummer::{combine_coprime, composite_report, EngineOptions, KummerProblem};
use kummer_core::verify::brute_force_report;

use crate::parse::{parse_expression, ParseError, Literal};
use crate::report::{
    oracle_prime_doc, prime_doc, render_text, Document, EngineDoc, OracleDoc, Verdict, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("generator {index} ({text:?}): {source}")]
    Parse { index: usize, text: String, source: ParseError },
    #[error("invalid field {0:?}: expected Q or F(p)")]
    FieldSpec(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kummer_core::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "E_PARSE",
            CliError::FieldSpec(_) => "E_FIELD",
            CliError::Usage(_) => "E_USAGE",
            CliError::Core(e) => e.code(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = compact.strip_prefix("F(").and_then(|s| s.strip_suffix(')'));
        match inner.and_then(|s| s.parse::<u64>().ok()) {
            Some(p) => Ok(FieldSpec::Prime(p)),
            None => Err(CliError::FieldSpec(text.to_string())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::Prime(p) => format!("F({p})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Compute,
    Both,
    OracleOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub field: FieldSpec,
    pub gens: Vec<String>,
    pub n_total: u64,
    pub m: u64,
    pub mode: Mode,
    pub seed: u64,
    pub budget: u128,
    pub timings: bool,
}

#[derive(Parser, Debug)]
#[command(name = "kummer", version, about = "Degrees and Galois groups of Kummer extensions of k(t)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the divisibility engine.
    Compute(JobArgs),
    /// Run the engine and the brute-force oracle and compare them.
    Verify {
        #[command(flatten)]
        job: JobArgs,
        /// Skip the engine and report the oracle alone.
        #[arg(long)]
        oracle_only: bool,
    },
    /// Run the built-in regression examples.
    Selftest,
}

#[derive(Args, Debug)]
pub struct JobArgs {
    /// Q or F(p)
    #[arg(long)]
    pub field: String,
    /// Generator expressions in t; repeat the flag or separate with commas.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub gens: Vec<String>,
    /// Prime ℓ; use with --n instead of --N.
    #[arg(long)]
    pub ell: Option<u64>,
    /// Exponent n, so that N = ℓⁿ.
    #[arg(long)]
    pub n: Option<u32>,
    /// Radical index N.
    #[arg(long = "N")]
    pub n_total: Option<u64>,
    /// Cyclotomic level M, a multiple of N; defaults to N.
    #[arg(long = "M")]
    pub m: Option<u64>,
    /// Seed for the randomized factorization steps.
    #[arg(long, env = "KUMMER_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of exponent vectors enumerated by a single search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
}

impl JobArgs {
    pub fn to_config(&self, mode: Mode) -> Result<JobConfig, CliError> {
        let field = FieldSpec::parse(&self.field)?;
        let n_total = match (self.ell, self.n, self.n_total) {
            (Some(ell), Some(n), None) => {
                if !is_prime(ell) {
                    return Err(CliError::Usage(format!("--ell {ell} is not prime")));
                }
                ell.checked_pow(n).ok_or_else(|| CliError::Usage("ℓⁿ overflows".into()))?
            }
            (None, None, Some(n_total)) => n_total,
            _ => return Err(CliError::Usage("give either --ell and --n, or --N".into())),
        };
        Ok(JobConfig {
            field,
            gens: self.gens.clone(),
            n_total,
            m: self.m.unwrap_or(n_total),
            mode,
            seed: self.seed,
            budget: self.budget,
            timings: self.timings,
        })
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run_in<F: BaseField + Literal>(field: F, cfg: &JobConfig) -> Result<Document, CliError> {
    let gens: Vec<RatFunc<F::Elem>> = cfg
        .gens
        .iter()
        .enumerate()
        .map(|(index, text)| {
            parse_expression(text, &field).map_err(|source| CliError::Parse { index, text: text.clone(), source })
        })
        .collect::<Result<_, _>>()?;
    let problem = KummerProblem::new(field.clone(), cfg.m, cfg.n_total, gens)?;
    let generators = problem
        .generators
        .iter()
        .map(|g| Ok(normalize(&field, g, cfg.seed)?.format(&field, "t")))
        .collect::<Result<Vec<_>, kummer_core::Error>>()?;
    let field_model = field.cyclotomic_extension(cfg.m)?.describe();
    let opts = EngineOptions { seed: cfg.seed, budget: cfg.budget };
    let mut timings = BTreeMap::new();

    let engine = if cfg.mode == Mode::OracleOnly {
        None
    } else {
        let start = Instant::now();
        let report = composite_report(&problem, &opts)?;
        timings.insert("engine".to_string(), elapsed_ms(start));
        Some(EngineDoc {
            degree: report.degree,
            invariant_factors: report.invariant_factors.clone(),
            primes: report.reports.values().map(|r| prime_doc(&field, r)).collect(),
        })
    };

    let oracle = if cfg.mode == Mode::Compute {
        None
    } else {
        let start = Instant::now();
        let mut primes = Vec::new();
        for (ell, n) in factorize(cfg.n_total) {
            let q = brute_force_report(&field, cfg.m, &problem.generators, ell, n, cfg.seed, cfg.budget)?;
            primes.push(oracle_prime_doc(ell, n, &q));
        }
        timings.insert("oracle".to_string(), elapsed_ms(start));
        let parts: Vec<Vec<u128>> = primes.iter().map(|p| p.invariant_factors.clone()).collect();
        Some(OracleDoc {
            degree: primes.iter().map(|p| p.degree).product(),
            invariant_factors: combine_coprime(&parts),
            primes,
        })
    };

    let verdict = match (&engine, &oracle) {
        (Some(e), Some(o)) => {
            let same = e.degree == o.degree
                && e.invariant_factors == o.invariant_factors
                && e.primes.len() == o.primes.len()
                && e.primes.iter().zip(&o.primes).all(|(a, b)| {
                    a.ell == b.ell && a.degree == b.degree && a.invariant_factors == b.invariant_factors
                });
            Some(if same { Verdict::Match } else { Verdict::Mismatch })
        }
        _ => None,
    };

    Ok(Document {
        schema: SCHEMA_VERSION,
        command: match cfg.mode {
            Mode::Compute => "compute",
            Mode::Both | Mode::OracleOnly => "verify",
        }
        .to_string(),
        field: cfg.field.label(),
        m: cfg.m,
        n_total: cfg.n_total,
        seed: cfg.seed,
        budget: cfg.budget,
        generators,
        field_model,
        engine,
        oracle,
        verdict,
        timings_ms: cfg.timings.then_some(timings),
    })
}

/// Runs one job. Mismatches are reported in the document, not as errors.
pub fn run(cfg: &JobConfig) -> Result<Document, CliError> {
    match cfg.field {
        FieldSpec::Rationals => run_in(Rationals, cfg),
        FieldSpec::Prime(p) => run_in(PrimeField::new(p)?, cfg),
    }
}

pub fn exit_code(doc: &Document) -> i32 {
    if doc.verdict == Some(Verdict::Mismatch) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Text => render_text(doc),
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable document") + "\n",
    }
}

#[derive(Clone, Debug)]
pub struct SelftestCase {
    pub name: &'static str,
    pub field: FieldSpec,
    pub gens: &'static [&'static str],
    pub n_total: u64,
    pub m: u64,
    pub invariant_factors: &'static [u128],
}

pub fn selftest_cases() -> Vec<SelftestCase> {
    let case = |name, field, gens, n_total, m, invariant_factors| SelftestCase {
        name,
        field,
        gens,
        n_total,
        m,
        invariant_factors,
    };
    let f5 = FieldSpec::Prime(5);
    vec![
        case("2t^2 over F5, N = 4", f5, &["2*t^2"], 4, 4, &[4]),
        case("t over F5, N = 4", f5, &["t"], 4, 4, &[4]),
        case("constant 2 over F5, N = 4", f5, &["2"], 4, 4, &[4]),
        case("constant 4 over F5, N = 4", f5, &["4"], 4, 4, &[2]),
        case("t over Q, N = 6", FieldSpec::Rationals, &["t"], 6, 6, &[6]),
        case("t, t^3 over Q, N = 3", FieldSpec::Rationals, &["t", "t^3"], 3, 3, &[3]),
        case("4t^4 over Q, N = 2", FieldSpec::Rationals, &["4*t^4"], 2, 2, &[]),
        case("-4 over Q, N = 4", FieldSpec::Rationals, &["-4"], 4, 4, &[]),
        case("2 over Q, N = 2, M = 8", FieldSpec::Rationals, &["2"], 2, 8, &[]),
        case("2 over Q, N = 3, M = 9", FieldSpec::Rationals, &["2"], 3, 9, &[3]),
        case("t, 2t(t+1)^2 over F5, N = 2", f5, &["t", "2*t*(t+1)^2"], 2, 2, &[2, 2]),
        case("2t, 2t(t+1)^2 over F5, N = 2", f5, &["2*t", "2*t*(t+1)^2"], 2, 2, &[2]),
        case("t, 2t(t+1)^2 over F5, N = 4", f5, &["t", "2*t*(t+1)^2"], 4, 4, &[4, 4]),
        case("2t, 2t(t+1)^2 over F5, N = 4", f5, &["2*t", "2*t*(t+1)^2"], 4, 4, &[2, 4]),
        case("t, 2t(t+1)^2 over F5, N = 8", f5, &["t", "2*t*(t+1)^2"], 8, 8, &[4, 8]),
        case("2t, 2t(t+1)^2 over F5, N = 8", f5, &["2*t", "2*t*(t+1)^2"], 8, 8, &[4, 8]),
    ]
}

/// One line per case; returns the exit code.
pub fn selftest(out: &mut dyn Write) -> std::io::Result<i32> {
    let mut failures = 0;
    for case in selftest_cases() {
        let cfg = JobConfig {
            field: case.field,
            gens: case.gens.iter().map(|s| s.to_string()).collect(),
            n_total: case.n_total,
            m: case.m,
            mode: Mode::Both,
            seed: 0,
            budget: DEFAULT_BUDGET,
            timings: false,
        };
        let line = match run(&cfg) {
            Ok(doc) => {
                let engine = doc.engine.as_ref().expect("engine ran");
                let ok = doc.verdict == Some(Verdict::Match) && engine.invariant_factors == case.invariant_factors;
                if !ok {
                    failures += 1;
                }
                format!(
                    "{} {}: {}",
                    if ok { "pass" } else { "FAIL" },
                    case.name,
                    crate::report::group(&engine.invariant_factors)
                )
            }
            Err(e) => {
                failures += 1;
                format!("FAIL {}: error[{}] {e}", case.name, e.code())
            }
        };
        writeln!(out, "{line}")?;
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (job, mode) = match &cli.command {
        Command::Selftest => return selftest(out).unwrap_or(EXIT_USAGE),
        Command::Compute(job) => (job, Mode::Compute),
        Command::Verify { job, oracle_only } => (job, if *oracle_only { Mode::OracleOnly } else { Mode::Both }),
    };
    let result = job.to_config(mode).and_then(|cfg| run(&cfg));
    match result {
        Ok(doc) => {
            let _ = write!(out, "{}", render(&doc, job.format));
            exit_code(&doc)
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            EXIT_USAGE
        }
    }
}
