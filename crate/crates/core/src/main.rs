//! `rankfold`: seeded experiment campaigns, benchmarks and self-tests.
//!
//! Reports are JSON lines with `"schema": 1`; wall-clock numbers sit under a
//! separate `"timing"` key so the rest is reproducible byte for byte. Exit
//! codes: 0 success, 1 validation or test failure, 2 I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rankfold::experiments::{plotkin_roundtrip, rm_roundtrip, syndrome_bench, RmFixture, SyndromeTiming};
use rankfold::gf::PrimeField;
use rankfold::plotkin::fold_probability_experiment;
use rankfold::selftest;

#[derive(Parser)]
#[command(name = "rankfold", version, about = "Rank-metric Reed-Muller, Gabidulin and Plotkin experiments")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode, corrupt and decode RM(r, m) codewords over the first-primes tower.
    RmRoundtrip {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: i32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Entries of messages and error factors are drawn from [−bound, bound] and [0, bound].
        #[arg(long, default_value_t = 50)]
        bound: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round trips through the Gabidulin Plotkin code.
    PlotkinRoundtrip {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long, default_value_t = 4)]
        a: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo rank-drop rate of the Plotkin fold.
    FoldProb(FoldArgs),
    /// Median timings of fast and naive syndromes, as CSV.
    SyndromeBench {
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure, duality, field-axiom and encoder suites.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write or check a frozen RM decoding instance.
    RmFixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Args)]
struct FoldArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Use a square a (4 unless --a is given); otherwise the smallest non-residue.
    #[arg(long)]
    square: bool,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FixtureAction {
    Write {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: i32,
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Check { path: PathBuf },
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn emit(report: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let line = serde_json::to_string(report).expect("JSON values serialize");
    println!("{line}");
    if let Some(path) = out {
        write_file(path, &format!("{line}\n"))?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|e| io_error(path, e))
}

fn fold_prob(args: &FoldArgs) -> Result<Value, Failure> {
    let f = PrimeField::new(args.q).map_err(invalid)?;
    if args.t > args.m {
        return Err(invalid(format!("t = {} exceeds m = {}", args.t, args.m)));
    }
    let a = match (args.a, args.square) {
        (Some(a), square) => {
            let a = a % args.q;
            if square && f.legendre(a) != 1 {
                return Err(invalid(format!("--square given but {a} is not a square mod {}", args.q)));
            }
            a
        }
        (None, true) => 4 % args.q,
        (None, false) => f.smallest_nonresidue(),
    };
    let stats = fold_probability_experiment(args.q, args.m, args.t, a, args.trials, args.seed).map_err(invalid)?;
    let mut report = stats.to_json();
    let obj = report.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(1));
    obj.insert("kind".into(), json!("fold-prob"));
    obj.insert("seed".into(), json!(args.seed));
    Ok(report)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::RmRoundtrip { m, r, trials, bound, seed, out } => {
            let rt = rm_roundtrip(m, r, trials, bound, seed).map_err(invalid)?;
            emit(&rt.to_json(), out.as_deref())?;
            if rt.unsound > 0 {
                return Err(invalid("decoder returned a word outside its radius"));
            }
        }
        Command::PlotkinRoundtrip { q, m, k1, k2, a, trials, seed, out } => {
            let rt = plotkin_roundtrip(q, m, k1, k2, a, trials, seed).map_err(invalid)?;
            emit(&rt.to_json(), out.as_deref())?;
            if rt.unsound > 0 {
                return Err(invalid("decoder returned a word outside its radius"));
            }
        }
        Command::FoldProb(args) => emit(&fold_prob(&args)?, args.out.as_deref())?,
        Command::SyndromeBench { m_max, reps, seed, out } => {
            let rows = syndrome_bench(m_max, reps, seed).map_err(invalid)?;
            let mut csv = String::from(SyndromeTiming::CSV_HEADER);
            csv.push('\n');
            for row in &rows {
                csv.push_str(&row.csv_row());
                csv.push('\n');
            }
            print!("{csv}");
            if let Some(path) = out {
                write_file(&path, &csv)?;
            }
            if rows.iter().any(|r| !r.agree) {
                return Err(invalid("fast and naive syndromes disagree"));
            }
        }
        Command::Selftest { seed, inject_fault } => {
            let results = selftest::run(seed, inject_fault);
            let ok = results.iter().all(selftest::SuiteResult::passed);
            let suites: Vec<_> = results.iter().map(selftest::SuiteResult::to_json).collect();
            emit(&json!({ "schema": 1, "kind": "selftest", "passed": ok, "suites": suites }), None)?;
            if !ok {
                return Err(invalid("self-test failed"));
            }
        }
        Command::RmFixture { action: FixtureAction::Write { m, r, bound, seed, out } } => {
            let fx = RmFixture::generate(m, r, bound, seed).map_err(invalid)?;
            let text = serde_json::to_string_pretty(&fx.to_json()).expect("JSON values serialize");
            write_file(&out, &format!("{text}\n"))?;
        }
        Command::RmFixture { action: FixtureAction::Check { path } } => {
            let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| io_error(&path, e))?;
            let fx = RmFixture::from_json(&value).map_err(invalid)?;
            let problems = fx.check();
            emit(&json!({ "schema": 1, "kind": "rm-fixture", "path": path.display().to_string(), "ok": problems.is_empty(), "problems": problems }), None)?;
            if !problems.is_empty() {
                return Err(invalid("fixture check failed"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("rankfold: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Invalid(msg) | Failure::Io(msg) => eprintln!("rankfold: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
