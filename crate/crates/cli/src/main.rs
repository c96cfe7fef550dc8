//! `dshuffle`: relation export, rank computation, verification sweeps and
//! point evaluations.

mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dshuffle::numeric::mzv_estimate;
use dshuffle::padic::{eval_li2_padic, is_prime, parse_point, point};
use dshuffle::relations::{is_supported_on, read_jsonl, relation_matrix, relations_of_weight, write_csv, write_jsonl};
use dshuffle::suites::{self, Check};
use dshuffle::words::admissible_indices;
use dshuffle::{Error, Index};

use report::RunReport;

#[derive(Parser)]
#[command(name = "dshuffle", version, about = "Double shuffle relations and the identities behind them")]
struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write every convergent double shuffle relation of one weight
    Relations {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an exhaustive verification sweep
    Verify(VerifyArgs),
    /// Rank of the relation matrix of one weight
    Rank {
        #[arg(long)]
        weight: u32,
    },
    /// Evaluate a single value
    #[command(subcommand)]
    Eval(EvalCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    StuffleSeries,
    ShuffleSeries,
    Ode,
    Charts,
    Padic,
    Truncated,
    Numeric,
    Counts,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest total weight swept (suite default if omitted)
    #[arg(long)]
    max_weight: Option<u32>,
    /// Series truncation degree
    #[arg(long)]
    cap: Option<u32>,
    /// Primes, comma separated
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u64>>,
    /// p-adic digits
    #[arg(long)]
    prec: Option<i64>,
    /// Truncation point of the sums
    #[arg(long)]
    n: Option<u32>,
    /// Numeric tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Partial sum of a multiple zeta value with an error bound
    Mzv {
        #[arg(long)]
        index: Index,
        #[arg(long, default_value_t = 100_000)]
        n: u32,
    },
    /// Two-variable polylogarithm at p-adic points
    Li2Padic {
        #[arg(long)]
        a: Index,
        #[arg(long)]
        b: Index,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 12)]
        prec: i64,
    },
}

/// Parameter problems are usage errors, not verification failures.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Usage> {
    Err(Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    if let Err(Usage(msg)) = run(cli.command, &mut report) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if cli.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let rendered = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    print!("{rendered}");
    ExitCode::from(report.exit_code() as u8)
}

fn run(command: Command, report: &mut RunReport) -> Result<(), Usage> {
    match command {
        Command::Relations { weight, format, out } => relations(weight, format, &out, report),
        Command::Verify(args) => verify(args, report),
        Command::Rank { weight } => rank(weight, report),
        Command::Eval(e) => eval(e, report),
    }
}

fn relations(weight: u32, format: Format, out: &PathBuf, report: &mut RunReport) -> Result<(), Usage> {
    let rels = relations_of_weight(weight)?;
    let mut bytes = Vec::new();
    match format {
        Format::Jsonl => write_jsonl(&rels, &mut bytes)?,
        Format::Csv => write_csv(&rels, &mut bytes)?,
    }
    let mut file = File::create(out).map(BufWriter::new).map_err(|e| Usage(format!("{}: {e}", out.display())))?;
    file.write_all(&bytes).and_then(|_| file.flush()).map_err(|e| Usage(format!("{}: {e}", out.display())))?;

    let columns = admissible_indices(weight);
    let support = rels
        .iter()
        .map(|r| if is_supported_on(r, &columns) { Ok(()) } else { Err(format!("a={:?} b={:?}", r.a, r.b)) })
        .collect();
    report.value("weight", weight);
    report.value("relations", rels.len());
    report.value("out", out.display().to_string());
    let mut checks = vec![check("terms supported on admissible indices", support)];
    if let Format::Jsonl = format {
        let text = String::from_utf8(bytes).expect("writer emits UTF-8");
        let back = read_jsonl(&text).map_err(|e| e.to_string()).and_then(|parsed| {
            if parsed == rels {
                Ok(())
            } else {
                Err("re-read relations differ".to_string())
            }
        });
        checks.push(check("output parses back", vec![back]));
    }
    report.extend(checks);
    Ok(())
}

fn check(name: &str, outcomes: Vec<Result<(), String>>) -> Check {
    let total = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first_failure = outcomes.into_iter().find_map(Result::err);
    Check { name: name.to_string(), passed, total, first_failure }
}

fn rank(weight: u32, report: &mut RunReport) -> Result<(), Usage> {
    let m = relation_matrix(weight)?;
    let expected_columns = 1usize << (weight - 2);
    report.value("weight", weight);
    report.value("rank", m.rank());
    report.value("rows", m.provenance.len());
    report.value("columns", m.columns.len());
    let count = if m.columns.len() == expected_columns {
        Ok(())
    } else {
        Err(format!("{} columns, expected 2^(W-2) = {expected_columns}", m.columns.len()))
    };
    report.extend(vec![check("column count is 2^(W-2)", vec![count])]);
    Ok(())
}

struct Defaults {
    max_weight: u32,
    cap: Option<u32>,
    n: Option<u32>,
}

fn defaults(suite: Suite) -> Defaults {
    let d = |max_weight, cap, n| Defaults { max_weight, cap, n };
    match suite {
        Suite::StuffleSeries | Suite::ShuffleSeries => d(6, Some(25), None),
        Suite::Ode => d(5, Some(20), None),
        Suite::Charts | Suite::Padic => d(5, None, None),
        Suite::Truncated => d(6, None, Some(30)),
        Suite::Numeric => d(5, None, Some(100_000)),
        Suite::Counts => d(10, None, None),
    }
}

fn verify(args: VerifyArgs, report: &mut RunReport) -> Result<(), Usage> {
    let suite = args.suite;
    let d = defaults(suite);
    let is_padic = suite == Suite::Padic;
    if args.cap.is_some() && d.cap.is_none() {
        return usage("--cap applies only to the series and ode suites");
    }
    if args.n.is_some() && d.n.is_none() {
        return usage("--n applies only to the truncated and numeric suites");
    }
    if (args.p.is_some() || args.prec.is_some()) && !is_padic {
        return usage("--p and --prec apply only to the padic suite");
    }
    if args.tol.is_some() && suite != Suite::Numeric {
        return usage("--tol applies only to the numeric suite");
    }
    let w = args.max_weight.unwrap_or(d.max_weight);
    if w < 2 {
        return usage("--max-weight must be at least 2");
    }
    let cap = args.cap.or(d.cap).unwrap_or(0);
    if d.cap.is_some() && cap == 0 {
        return usage("--cap must be positive");
    }
    let n = args.n.or(d.n).unwrap_or(0);
    if d.n.is_some() && n == 0 {
        return usage("--n must be positive");
    }
    let checks = match suite {
        Suite::StuffleSeries => suites::stuffle_series(w, cap),
        Suite::ShuffleSeries => suites::shuffle_series(w, cap),
        Suite::Ode => suites::ode(w, cap),
        Suite::Charts => suites::charts(w),
        Suite::Padic => {
            let primes = args.p.unwrap_or_else(|| vec![3, 5, 7]);
            if let Some(q) = primes.iter().find(|&&q| !is_prime(q)) {
                return usage(format!("{q} is not a prime"));
            }
            let prec = args.prec.unwrap_or(12);
            if prec < 1 {
                return usage("--prec must be positive");
            }
            suites::padic(w, &primes, prec)
        }
        Suite::Truncated => suites::truncated(w, n),
        Suite::Numeric => {
            let tol = args.tol.unwrap_or(1e-3);
            if !(tol >= 0.0 && tol.is_finite()) {
                return usage("--tol must be a finite nonnegative number");
            }
            if w < 4 {
                return usage("--max-weight must be at least 4 for the numeric suite");
            }
            suites::numeric(w, n, tol)
        }
        Suite::Counts => suites::counts(6, w),
    };
    report.extend(checks);
    Ok(())
}

fn eval(command: EvalCommand, report: &mut RunReport) -> Result<(), Usage> {
    match command {
        EvalCommand::Mzv { index, n } => {
            let e = mzv_estimate(&index, n)?;
            report.value("value", format!("{:.15e}", e.value));
            report.value("error_bound", format!("{:.3e}", e.error_bound));
        }
        EvalCommand::Li2Padic { a, b, x, y, p, prec } => {
            let w = a.weight() + b.weight();
            let xp = point(&parse_point(&x)?, p, w, prec)?;
            let yp = point(&parse_point(&y)?, p, w, prec)?;
            let v = eval_li2_padic(&a, &b, &xp, &yp, prec)?;
            report.value("value", v.to_digit_string());
            report.value("residue", v.to_string());
        }
    }
    Ok(())
}
