//! The `csm` command line. Commands render into an [`Outcome`] so they can
//! be driven in-process by tests as well as by the binary.
//!
//! Exit status: 0 success, 1 a check failed, 2 bad arguments, 3 `β` not
//! contained in `α`, 4 unreadable sweep cache.

use std::ffi::OsString;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use csm_core::{gamma, gamma_terms, Error as CoreError, GammaTerm, Partition};
use num_bigint::BigInt;
use serde_json::json;

use crate::cache::{self, SweepCache};
use crate::golden;
use crate::parallel::csm_cell_parallel;
use crate::table::{TableDocument, TableKind};
use crate::verify::{sweep_box_cached, Check, CheckSet, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CACHE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "csm", version, about = "Exact CSM classes of Schubert cells and varieties in Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one coefficient gamma(alpha, beta).
    Gamma(GammaArgs),
    /// Print the full Schubert expansion of a cell or variety class.
    Table(TableArgs),
    /// Check positivity and normalizations for every alpha in a d x n box.
    Sweep(SweepArgs),
    /// Reproduce the published worked example and closed forms.
    Selfcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Pretty,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// Partition such as "3,2,1" or "3 2 1".
    #[arg(long)]
    pub alpha: Partition,
    #[arg(long)]
    pub beta: Partition,
    /// List every summand: L, its binomial matrix and determinant.
    #[arg(long)]
    pub show_terms: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["cell", "variety"])))]
pub struct TableArgs {
    #[arg(long)]
    pub alpha: Partition,
    /// Class of the open cell.
    #[arg(long)]
    pub cell: bool,
    /// Class of the closed Schubert variety.
    #[arg(long)]
    pub variety: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Omit the timestamp from the metadata.
    #[arg(long)]
    pub deterministic: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Number of parts.
    #[arg(long = "d", value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    /// Largest allowed part.
    #[arg(long = "n")]
    pub n: u32,
    /// Comma-separated subset of: positivity, degree-one, leading-one, term-count, variety-degree.
    #[arg(long, value_delimiter = ',', default_value = "positivity,degree-one,leading-one,term-count,variety-degree")]
    pub checks: Vec<Check>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Skip partitions recorded in the cache, and record new ones
    /// ($CSM_CACHE_DIR, default ./.csm-cache).
    #[arg(long)]
    pub resume: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
    /// Leave timing out of the report.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Gamma(args) => cmd_gamma(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Selfcheck => cmd_selfcheck(),
    }
}

fn core_failure(e: CoreError) -> Outcome {
    let code = match e {
        CoreError::NotSubpartition { .. } => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    };
    Outcome::fail(code, format!("error: {e}"))
}

fn l_rows(term: &GammaTerm) -> Vec<Vec<u32>> {
    let d = term.l.order();
    (0..d).map(|p| (0..d).map(|q| term.l.entry(p, q)).collect()).collect()
}

fn matrix_rows(term: &GammaTerm) -> Vec<Vec<String>> {
    term.matrix.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// `3+2+2+(-1)+2 = 8`
fn sum_line(dets: &[BigInt], total: &BigInt) -> String {
    let parts: Vec<String> = dets
        .iter()
        .map(|d| if *d < BigInt::default() { format!("({d})") } else { d.to_string() })
        .collect();
    format!("{} = {total}", parts.join("+"))
}

pub fn cmd_gamma(args: &GammaArgs) -> Outcome {
    let (alpha, beta) = (&args.alpha, &args.beta);
    let terms: Option<Vec<GammaTerm>> = if args.show_terms {
        match gamma_terms(alpha, beta) {
            Ok(t) => Some(t.collect()),
            Err(e) => return core_failure(e),
        }
    } else {
        None
    };
    let value = match &terms {
        Some(t) => t.iter().map(|t| t.det.clone()).sum(),
        None => match gamma(alpha, beta) {
            Ok(v) => v,
            Err(e) => return core_failure(e),
        },
    };

    let out = match (args.format, &terms) {
        (Format::Pretty, None) => format!("{value}\n"),
        (Format::Pretty, Some(terms)) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                out += &format!("term {}\nL:\n{}\nmatrix:\n{}\ndet = {}\n\n", i + 1, t.l, t.matrix, t.det);
            }
            let dets: Vec<_> = terms.iter().map(|t| t.det.clone()).collect();
            out += &sum_line(&dets, &value);
            out.push('\n');
            out
        }
        (Format::Json, terms) => {
            let mut doc = json!({
                "alpha": alpha.parts(),
                "beta": beta.parts(),
                "gamma": value.to_string(),
            });
            if let Some(terms) = terms {
                doc["terms"] = terms
                    .iter()
                    .map(|t| json!({ "l": l_rows(t), "matrix": matrix_rows(t), "det": t.det.to_string() }))
                    .collect();
            }
            serde_json::to_string(&doc).expect("json") + "\n"
        }
        (Format::Csv, None) => format!("alpha,beta,gamma\n\"{alpha}\",\"{beta}\",{value}\n"),
        (Format::Csv, Some(terms)) => {
            let flat = |rows: Vec<Vec<String>>| rows.iter().map(|r| r.join(",")).collect::<Vec<_>>().join(";");
            let mut out = String::from("term,l,matrix,det\n");
            for (i, t) in terms.iter().enumerate() {
                let l = l_rows(t).into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                out += &format!("{},\"{}\",\"{}\",{}\n", i + 1, flat(l), flat(matrix_rows(t)), t.det);
            }
            out
        }
    };
    Outcome::ok(out)
}

pub fn cmd_table(args: &TableArgs) -> Outcome {
    let alpha = &args.alpha;
    let (kind, expansion) = if args.variety {
        (TableKind::Variety, csm_core::csm_variety(alpha))
    } else {
        (TableKind::Cell, csm_cell_parallel(alpha, args.jobs))
    };
    let timestamp = (!args.deterministic).then(|| chrono::Utc::now().to_rfc3339());
    let doc = TableDocument::from_expansion(&expansion, kind, timestamp);
    Outcome::ok(match args.format {
        Format::Pretty => doc.to_pretty(),
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    })
}

pub fn cmd_sweep(args: &SweepArgs) -> Outcome {
    let checks: CheckSet = args.checks.iter().copied().collect();
    let config = SweepConfig {
        d: args.d as usize,
        n: args.n,
        checks,
        jobs: args.jobs,
        deterministic: args.deterministic,
    };
    let result = if args.resume {
        match SweepCache::open(&cache::default_dir()) {
            Ok(mut c) => sweep_box_cached(&config, Some(&mut c)),
            Err(e) => Err(e),
        }
    } else {
        sweep_box_cached(&config, None)
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_CACHE, format!("error: {e}")),
    };
    let text = match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Pretty => report.to_pretty(),
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Outcome { code, stdout: text, stderr: String::new() }
}

pub fn cmd_selfcheck() -> Outcome {
    let results = golden::selfcheck();
    let mut out = String::new();
    for r in &results {
        let status = if r.passed { "ok  " } else { "FAIL" };
        out += &format!("{status} {} ({})\n", r.name, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out += &format!("selfcheck: {passed}/{} passed\n", results.len());
    let code = if passed == results.len() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Outcome { code, stdout: out, stderr: String::new() }
}
