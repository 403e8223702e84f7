use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pillai_core::algebraic::{mult_independent, Independence};
use pillai_core::analysis::{AnalysisConfig, SequenceAnalysis};
use pillai_core::bound_chain::derive_all;
use pillai_core::error::Error;
use pillai_core::recurrence::RecurrenceSpec;
use pillai_core::search::{enumerate_threads, parse_expected, verify_against, SearchBox, DEFAULT_CELL_CEILING};

const EXIT_IO: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Certified bounds and exhaustive search for `U_n − V_m = c` with two
/// representations.
#[derive(Parser, Debug)]
#[command(name = "pillai", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse one recurrence: roots, Binet data, growth constants, thresholds.
    Analyze {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the dominant roots of two recurrences are multiplicatively independent.
    Independence {
        u: PathBuf,
        v: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Derive the explicit bound on the indices of every solution.
    Bound {
        u: PathBuf,
        v: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate U_n − V_m over a box and list the values represented at least twice.
    Search {
        u: PathBuf,
        v: PathBuf,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        common: Common,
    },
    /// Search, then compare the multiply represented values with an expected set.
    Verify {
        u: PathBuf,
        v: PathBuf,
        #[command(flatten)]
        range: Range,
        /// File with one integer per line.
        #[arg(long)]
        expected: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in bits.
    #[arg(long, default_value_t = 128)]
    precision: u32,
    /// Worker threads for enumeration; 1 runs serially.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct Range {
    /// Index range for U, as LO:HI.
    #[arg(long = "n", default_value = "2:200", value_parser = parse_range)]
    n: (u64, u64),
    /// Index range for V, as LO:HI.
    #[arg(long = "m", default_value = "2:150", value_parser = parse_range)]
    m: (u64, u64),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad lower index {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad upper index {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Io(String),
    Hypothesis(String),
    Usage(String),
    Mismatch,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(s) | Failure::Hypothesis(s) | Failure::Usage(s) => f.write_str(s),
            Failure::Mismatch => f.write_str("found set differs from the expected set"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoxTooLarge { .. } => Failure::Usage(e.to_string()),
            e if e.is_hypothesis_failure() => Failure::Hypothesis(e.to_string()),
            e => Failure::Io(e.to_string()),
        }
    }
}

fn load_spec(path: &Path) -> Result<RecurrenceSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut spec = RecurrenceSpec::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    if spec.label.is_empty() {
        spec.label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(spec)
}

fn config(common: &Common) -> AnalysisConfig {
    AnalysisConfig { bits: common.precision.max(64), ..AnalysisConfig::default() }
}

fn analyze(path: &Path, common: &Common) -> Result<SequenceAnalysis, Failure> {
    let spec = load_spec(path)?;
    Ok(SequenceAnalysis::new(&spec, &config(common))?)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn emit_json(common: &Common, v: &Value) -> Result<(), Failure> {
    if common.format == Format::Csv {
        return Err(Failure::Usage("CSV output is only available for search and verify".into()));
    }
    emit(common, &serde_json::to_string_pretty(v).expect("serializable"))
}

fn search_box(range: &Range) -> SearchBox {
    SearchBox::new(range.n.0..=range.n.1, range.m.0..=range.m.1)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { spec, common } => {
            let an = analyze(&spec, &common)?;
            eprintln!("{}: σ = {}, N₀ = {}, N₁ = {}, N₂ = {}", an.spec.label, an.sigma, an.n0, an.n1, an.growth.n2);
            emit_json(&common, &an.to_json())
        }
        Command::Independence { u, v, common } => {
            let (a, b) = (analyze(&u, &common)?, analyze(&v, &common)?);
            let verdict = mult_independent(&a.alpha, &b.alpha)?;
            let mut out = serde_json::to_value(&verdict).expect("serializable");
            out["u"] = json!(a.spec.label);
            out["v"] = json!(b.spec.label);
            out["alpha"] = json!(a.alpha.to_string());
            out["beta"] = json!(b.alpha.to_string());
            if let Independence::Dependent { p, q } = verdict {
                out["witness"] = json!(format!("({})^{p} = ({})^{q}", a.alpha, b.alpha));
            }
            emit_json(&common, &out)?;
            match verdict {
                Independence::Dependent { .. } => {
                    Err(Failure::Hypothesis(format!("dominant roots are dependent: {}", out["witness"])))
                }
                _ => Ok(()),
            }
        }
        Command::Bound { u, v, common } => {
            let (a, b) = (analyze(&u, &common)?, analyze(&v, &common)?);
            let report = derive_all(&a, &b, &config(&common))?;
            eprintln!("{} / {}: every solution has both indices at most {}", a.spec.label, b.spec.label, report.bound);
            emit_json(&common, &report.to_json())
        }
        Command::Search { u, v, range, common } => {
            let (su, sv) = (load_spec(&u)?, load_spec(&v)?);
            let table = enumerate_threads(&su, &sv, search_box(&range), DEFAULT_CELL_CEILING, common.threads)?;
            let multi = table.multi_represented();
            let b = table.search_box;
            eprintln!(
                "{} values with at least two representations for n in {}..={}, m in {}..={}",
                multi.len(),
                b.n_lo,
                b.n_hi,
                b.m_lo,
                b.m_hi
            );
            match common.format {
                Format::Json => {
                    emit(&common, &serde_json::to_string_pretty(&table.summary_json()).expect("serializable"))
                }
                Format::Csv => emit(&common, &table.to_csv(true)),
            }
        }
        Command::Verify { u, v, range, expected, common } => {
            let (su, sv) = (load_spec(&u)?, load_spec(&v)?);
            let text =
                fs::read_to_string(&expected).map_err(|e| Failure::Io(format!("{}: {e}", expected.display())))?;
            let want: BTreeSet<_> =
                parse_expected(&text).map_err(|e| Failure::Io(format!("{}: {e}", expected.display())))?;
            let table = enumerate_threads(&su, &sv, search_box(&range), DEFAULT_CELL_CEILING, common.threads)?;
            let diff = verify_against(&table.multi_represented(), &want);
            match common.format {
                Format::Json => {
                    let mut out = diff.to_json();
                    out["found"] = table.summary_json()["multi_represented"].clone();
                    emit(&common, &serde_json::to_string_pretty(&out).expect("serializable"))?;
                }
                Format::Csv => {
                    let mut csv = String::from("status,c\n");
                    for c in &diff.missing {
                        csv.push_str(&format!("missing,{c}\n"));
                    }
                    for c in &diff.extra {
                        csv.push_str(&format!("extra,{c}\n"));
                    }
                    emit(&common, &csv)?;
                }
            }
            if diff.is_pass() {
                eprintln!("pass: {} values match", want.len());
                Ok(())
            } else {
                eprintln!("missing {:?}, extra {:?}", diff.missing, diff.extra);
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Io(_) => EXIT_IO,
                Failure::Hypothesis(_) | Failure::Mismatch => EXIT_HYPOTHESIS,
                Failure::Usage(_) => EXIT_USAGE,
            })
        }
    }
}
