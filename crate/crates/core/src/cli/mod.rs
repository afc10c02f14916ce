//! The `braidw` command line: operator ingestion, verification suites, rank
//! tables and matrix dumps.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on input
//! or configuration errors.

pub mod cache;
pub mod opfile;
pub mod report;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use thiserror::Error;

use crate::antisym::{
    build_hom, check_against_direct, check_biideal, check_factorizations, kernel_analysis, next_w,
    w_recursive, AntisymError, AntisymmetrizerFamily, Provenance,
};
use crate::bialgebra::{
    check_associativity, check_coassociativity, check_compatibility, check_deconcat_coassociativity,
    check_duality, check_unit_counit, BialgebraError, TruncationConfig,
};
use crate::braidperm::DEFAULT_ENUMERATION_CAP;
use crate::scalar::{format_scalar, parse_scalar, Ring, Scalar, ScalarError};
use crate::tensorlin::ExactMatrix;
use crate::yb::{catalog, matsumoto_defect, verify_braid_equation, CatalogParams, YbError, YbOperator, CATALOG};

use cache::WCache;
use opfile::{format_machine, format_text, parse_operator_file, OpFileError};
use report::Report;

/// Default truncation degree.
pub const DEFAULT_MAX_DEGREE: usize = 4;
/// Largest truncation degree `verify-identities` accepts without `--allow-large`.
pub const SUITE_DEGREE_CAP: usize = 5;
/// Largest degree for which the representation property is checked over all reduced words.
const MATSUMOTO_DEGREE: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "braidw",
    version,
    about = "Braided shuffle bialgebras and the braided antisymmetrizer in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the built-in Yang-Baxter operators.
    Catalog,
    /// Check the braid equation and invertibility of an operator.
    VerifyYb(OperatorArgs),
    /// Ranks and kernel dimensions of W_n, and the resulting Hilbert series.
    Ranks(RanksArgs),
    /// Run every identity check up to the truncation degree.
    VerifyIdentities(SuiteArgs),
    /// Print the matrix of W_n.
    W(WArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OperatorArgs {
    /// Catalog name or path to an operator file.
    #[arg(long)]
    pub op: String,
    /// Rank of V for catalog operators.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Coefficient ring: integer, rational, laurent, or "gf <p>".
    #[arg(long)]
    pub ring: Option<String>,
    /// Scalar parameter of the `diagonal` catalog operator.
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
    /// Accept an operator that fails validation; all output is stamped UNVERIFIED-OPERATOR.
    #[arg(long)]
    pub skip_yb_check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CacheArgs {
    /// Directory for cached W_n matrices.
    #[arg(long, env = "BRAIDW_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RanksArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Also report ranks with q specialized to this nonzero rational (repeatable).
    #[arg(long = "q", allow_hyphen_values = true)]
    pub q: Vec<String>,
    /// Print a kernel basis for every degree.
    #[arg(long)]
    pub bases: bool,
    #[command(flatten)]
    pub cache: CacheArgs,
    /// Largest degree for which W_n may be built.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enum_cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Permit truncation degrees above 5.
    #[arg(long)]
    pub allow_large: bool,
    /// Largest degree summed directly over all permutations.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enum_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Args, Debug, Clone)]
pub struct WArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub cache: CacheArgs,
    /// Largest degree for which W_n may be built.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enum_cap: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    OpFile { path: String, source: OpFileError },
    #[error("{0}")]
    Usage(String),
    #[error("cache: {0}")]
    Cache(io::Error),
    #[error(transparent)]
    Output(#[from] io::Error),
    #[error(transparent)]
    Yb(#[from] YbError),
    #[error(transparent)]
    Antisym(#[from] AntisymError),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Catalog => cmd_catalog(out),
        Command::VerifyYb(args) => cmd_verify_yb(args, out),
        Command::Ranks(args) => cmd_ranks(args, out),
        Command::VerifyIdentities(args) => cmd_verify_identities(args, out),
        Command::W(args) => cmd_w(args, out),
    }
}

/// An operator matrix before validation.
#[derive(Clone, Debug)]
pub struct RawOperator {
    pub label: String,
    pub dim: usize,
    pub matrix: ExactMatrix,
}

impl RawOperator {
    fn header(&self) -> String {
        format!(
            "OPERATOR {} ring={} dim={}",
            self.label,
            self.matrix.ring().token(),
            self.dim
        )
    }
}

fn parse_ring(text: &str) -> Result<Ring, CliError> {
    text.parse()
        .map_err(|e: ScalarError| CliError::Usage(format!("--ring: {e}")))
}

/// Resolves `--op` to a catalog operator or reads an operator file.
pub fn load_raw(args: &OperatorArgs) -> Result<RawOperator, CliError> {
    let ring = args.ring.as_deref().map(parse_ring).transpose()?;
    if let Some(entry) = CATALOG.iter().find(|e| e.name == args.op) {
        let ring = ring.unwrap_or(if entry.rings == "laurent" {
            Ring::Laurent
        } else {
            Ring::Rationals
        });
        let param = args
            .param
            .as_deref()
            .map(|p| parse_scalar(p, ring))
            .transpose()?;
        let op = catalog(entry.name, ring, &CatalogParams { dim: args.dim, param })?;
        return Ok(RawOperator {
            label: entry.name.to_string(),
            dim: op.dim(),
            matrix: op.matrix().clone(),
        });
    }
    let text = std::fs::read_to_string(&args.op).map_err(|source| CliError::Read {
        path: args.op.clone(),
        source,
    })?;
    let file = parse_operator_file(&text).map_err(|source| CliError::OpFile {
        path: args.op.clone(),
        source,
    })?;
    if let Some(r) = ring.filter(|&r| r != file.ring) {
        return Err(CliError::Usage(format!(
            "--ring {} does not match the operator file ring {}",
            r.token(),
            file.ring.token()
        )));
    }
    if let Some(d) = args.dim.filter(|&d| d != file.dim) {
        return Err(CliError::Usage(format!(
            "--dim {d} does not match the operator file dimension {}",
            file.dim
        )));
    }
    if args.param.is_some() {
        return Err(CliError::Usage("--param applies to catalog operators only".into()));
    }
    Ok(RawOperator {
        label: args.op.clone(),
        dim: file.dim,
        matrix: file.matrix,
    })
}

/// Loads and validates an operator, or accepts it unvalidated with `--skip-yb-check`.
pub fn load_operator(args: &OperatorArgs) -> Result<(RawOperator, YbOperator), CliError> {
    let raw = load_raw(args)?;
    let name = Some(raw.label.clone());
    let op = if args.skip_yb_check {
        YbOperator::new_unchecked(raw.matrix.clone(), raw.dim, name)?
    } else {
        YbOperator::new(raw.matrix.clone(), raw.dim, name).map_err(|e| match e {
            YbError::BraidEquation(_) | YbError::NotInvertible { .. } => CliError::Usage(format!(
                "{e}; run verify-yb for details or pass --skip-yb-check"
            )),
            other => other.into(),
        })?
    };
    Ok((raw, op))
}

fn format_index(digits: &[usize]) -> String {
    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn format_rational(q: &BigRational) -> String {
    format_scalar(&Scalar::Rat(q.clone()))
}

fn cmd_catalog(out: &mut dyn Write) -> Result<Outcome, CliError> {
    for e in CATALOG {
        writeln!(
            out,
            "{:<12} ring={:<8} params={}  {}",
            e.name, e.rings, e.params, e.summary
        )?;
    }
    Ok(Outcome::Pass)
}

/// Braid-equation and invertibility verdict lines for a raw operator.
fn operator_checks(raw: &RawOperator, report: &mut Report) -> Result<(), CliError> {
    let check = verify_braid_equation(&raw.matrix, raw.dim)?;
    match check.failing_index() {
        None => report.check("CHECK braid-equation PASS", true),
        Some(idx) => report.check(
            format!("CHECK braid-equation FAIL at index {}", format_index(&idx)),
            false,
        ),
    }
    let rank = raw.matrix.rank();
    let full = raw.dim * raw.dim;
    if rank == full {
        report.check("CHECK invertible PASS", true);
    } else {
        report.check(format!("CHECK invertible FAIL rank={rank} of {full}"), false);
    }
    Ok(())
}

fn cmd_verify_yb(args: &OperatorArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let raw = load_raw(args)?;
    let mut report = Report::new(false);
    report.line(raw.header());
    operator_checks(&raw, &mut report)?;
    out.write_all(report.render().as_bytes())?;
    Ok(if report.failed() == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn degree_guard(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        return Err(CliError::Usage(format!(
            "degree {n} exceeds the enumeration cap {cap}; raise --enum-cap to proceed"
        )));
    }
    Ok(())
}

/// `W_0..W_N` by the recurrence, reading and filling the cache when given.
fn antisymmetrizers(
    op: &YbOperator,
    max_degree: usize,
    cache_dir: Option<&PathBuf>,
) -> Result<AntisymmetrizerFamily, CliError> {
    let cache = cache_dir
        .map(|dir| WCache::open(dir, op))
        .transpose()
        .map_err(CliError::Cache)?;
    let mut ws: Vec<ExactMatrix> = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        if let Some(hit) = cache.as_ref().and_then(|c| c.load(n)) {
            ws.push(hit);
            continue;
        }
        let w = match n {
            0 => op.identity(0),
            _ => next_w(op, &ws[n - 1], n - 1)?,
        };
        if let Some(c) = &cache {
            c.store(n, &w).map_err(CliError::Cache)?;
        }
        ws.push(w);
    }
    Ok(AntisymmetrizerFamily::from_parts(op, Provenance::Recursive, ws)?)
}

fn parse_q_values(values: &[String], ring: Ring) -> Result<Vec<BigRational>, CliError> {
    if !values.is_empty() && ring != Ring::Laurent {
        return Err(CliError::Usage(format!(
            "--q needs an operator over the laurent ring, not {}",
            ring.token()
        )));
    }
    values
        .iter()
        .map(|text| {
            let value = parse_scalar(text, Ring::Rationals)
                .map_err(|e| CliError::Usage(format!("--q {text}: {e}")))?;
            let q = value.as_rational().cloned().expect("rational scalar");
            if value.is_zero() {
                return Err(CliError::Usage("--q must be nonzero".into()));
            }
            Ok(q)
        })
        .collect()
}

fn join_numbers(values: &[usize]) -> String {
    values.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_ranks(args: &RanksArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    degree_guard(args.max_degree, args.enum_cap)?;
    let (raw, op) = load_operator(&args.operator)?;
    let qs = parse_q_values(&args.q, op.ring())?;
    let family = antisymmetrizers(&op, args.max_degree, args.cache.cache_dir.as_ref())?;
    let analysis = kernel_analysis(&family, args.bases, &qs)?;
    let mut report = Report::new(!op.is_verified());
    report.line(raw.header());
    for d in &analysis.degrees {
        if op.dim() == 1 {
            let w = family.get(d.degree)?;
            report.line(format!("W n={} value={}", d.degree, format_scalar(w.get(0, 0))));
        }
        report.line(format!(
            "RANK n={} dim={} rank={} kernel={}",
            d.degree, d.dim, d.rank, d.kernel_dim
        ));
        if let Some(basis) = &d.basis {
            for v in &basis.vectors {
                let entries: Vec<String> = v.iter().map(format_scalar).collect();
                report.line(format!("KERNEL n={} ({})", d.degree, entries.join(", ")));
            }
        }
    }
    report.line(format!("HILBERT {}", join_numbers(&analysis.hilbert())));
    for s in &analysis.specializations {
        let q = format_rational(&s.q);
        for (n, rank) in s.ranks.iter().enumerate() {
            let dim = op.dim().pow(n as u32);
            report.line(format!(
                "SPECIALIZED q={q} RANK n={n} dim={dim} rank={rank} kernel={}",
                dim - rank
            ));
        }
        report.line(format!("SPECIALIZED q={q} HILBERT {}", join_numbers(&s.ranks)));
    }
    out.write_all(report.render().as_bytes())?;
    Ok(Outcome::Pass)
}

/// Every identity check for one operator, in a fixed order.
pub fn identity_suite(
    raw: &RawOperator,
    op: &YbOperator,
    max_degree: usize,
    cap: usize,
) -> Result<Report, CliError> {
    let mut report = Report::new(!op.is_verified());
    report.line(raw.header());
    report.line(format!("TRUNCATION max-degree={max_degree}"));
    operator_checks(raw, &mut report)?;
    for n in 0..=max_degree.min(MATSUMOTO_DEGREE) {
        match matsumoto_defect(op, n, cap)? {
            None => report.check(format!("CHECK matsumoto ({n}) PASS"), true),
            Some((r, c)) => report.check(
                format!("CHECK matsumoto ({n}) FAIL at entry ({},{})", r + 1, c + 1),
                false,
            ),
        }
    }
    let cfg = TruncationConfig::for_operator(op, max_degree);
    report.checks(&check_unit_counit(op, max_degree)?);
    report.checks(&check_associativity(op, max_degree)?);
    report.checks(&check_coassociativity(op, max_degree)?);
    report.checks(&check_deconcat_coassociativity(&cfg)?);
    report.checks(&check_compatibility(op, max_degree)?);
    report.checks(&check_duality(op, max_degree)?);
    let (family, right) = w_recursive(op, max_degree)?;
    report.checks(&check_against_direct(&family, cap)?);
    report.checks(&right);
    report.checks(&check_factorizations(&family)?);
    report.checks(&build_hom(op, max_degree, cap)?.report);
    report.checks(&check_biideal(&family)?);
    let verdict = if report.failed() == 0 { "PASS" } else { "FAIL" };
    let summary = format!(
        "SUITE {verdict} total={} failed={}",
        report.total(),
        report.failed()
    );
    report.line(summary);
    Ok(report)
}

fn cmd_verify_identities(args: &SuiteArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.max_degree > SUITE_DEGREE_CAP && !args.allow_large {
        return Err(CliError::Usage(format!(
            "--max-degree {} exceeds {SUITE_DEGREE_CAP}; pass --allow-large to proceed",
            args.max_degree
        )));
    }
    degree_guard(args.max_degree, args.enum_cap)?;
    let (raw, op) = load_operator(&args.operator)?;
    let report = identity_suite(&raw, &op, args.max_degree, args.enum_cap)?;
    out.write_all(report.render().as_bytes())?;
    Ok(if report.failed() == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn cmd_w(args: &WArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    degree_guard(args.degree, args.enum_cap)?;
    let (_, op) = load_operator(&args.operator)?;
    let family = antisymmetrizers(&op, args.degree, args.cache.cache_dir.as_ref())?;
    let w = family.get(args.degree)?;
    let body = match args.format {
        Format::Text => format_text(w),
        Format::Machine => format_machine(w),
    };
    let mut report = Report::new(!op.is_verified());
    for line in body.lines() {
        report.line(line);
    }
    out.write_all(report.render().as_bytes())?;
    Ok(Outcome::Pass)
}
