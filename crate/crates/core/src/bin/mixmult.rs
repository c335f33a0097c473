//! Command line front end: compute fits, verify identities, inspect
//! support, dump raw samples, and run seeded corpora.
//!
//! Exit codes: 0 success/verified, 1 violated, 2 invalid input or internal
//! error, 3 inconclusive or non-stabilized.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mixmult::corpus::{run_corpus, CorpusConfig};
use mixmult::instance::{
    effective_verify_spec, run_compute, run_hilbert, run_primes, run_verify, InstanceDocument,
    MonomialSpec, VerifySpec,
};
use mixmult::verify::Verdict;
use mixmult::Error;

#[derive(Parser)]
#[command(
    name = "mixmult",
    version,
    about = "Exact mixed multiplicities of monomial ideal systems, with mechanical verification of the identities relating them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file, or '-' for stdin.
    instance: String,
    /// Override the first sampling offset.
    #[arg(long)]
    offset: Option<u64>,
    /// Override the largest offset tried before giving up.
    #[arg(long)]
    cap: Option<u64>,
    /// Override the window side used by the filter-regular checks.
    #[arg(long)]
    window: Option<u64>,
    /// Emit compact single-line JSON instead of pretty-printed JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Interpolate the stable polynomial and report the mixed values.
    Compute(InstanceArgs),
    /// Verify one identity on the instance.
    Verify {
        #[command(flatten)]
        common: InstanceArgs,
        /// Which identity: additivity, scaling, exactseq, recursion, chain.
        /// Optional when the instance embeds a request.
        theorem: Option<String>,
        /// Scaling exponents, one per scaling ideal (e.g. 2,3).
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<u64>>,
        /// Candidate variable name for the recursion.
        #[arg(long)]
        candidate: Option<String>,
        /// Index of the scaling ideal the candidate belongs to.
        #[arg(long)]
        index: Option<usize>,
        /// Fold exponent for the dropped ideal in the recursion.
        #[arg(long)]
        v: Option<u64>,
        /// Intermediate denominator generators for exactseq (e.g. x^2,x*y).
        #[arg(long, value_delimiter = ',')]
        lprime: Option<Vec<String>>,
        /// Chain element variable names (e.g. x,y).
        #[arg(long, value_delimiter = ',')]
        chain: Option<Vec<String>>,
    },
    /// Dimension, minimal primes, and top-dimensional support lengths.
    Primes(InstanceArgs),
    /// Dump raw graded-piece lengths on a cube of exponents.
    Hilbert {
        #[command(flatten)]
        common: InstanceArgs,
        /// Side length of the sampled cube.
        #[arg(long, default_value_t = 3)]
        extent: u64,
    },
    /// Generate and verify a seeded random corpus; writes TSV.
    Corpus {
        /// Seed for the deterministic generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of instances.
        #[arg(long, default_value_t = 25)]
        size: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
}

fn read_instance(path: &str) -> Result<InstanceDocument, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    InstanceDocument::from_json(&text)
}

fn apply_overrides(doc: &mut InstanceDocument, args: &InstanceArgs) {
    if let Some(o) = args.offset {
        doc.options.offset = o;
    }
    if let Some(c) = args.cap {
        doc.options.cap = c;
    }
    if let Some(w) = args.window {
        doc.options.window = w;
    }
}

fn print_json(value: &serde_json::Value, compact: bool) {
    if compact {
        println!("{value}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }
}

fn error_exit(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::NonStabilized { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn init_threads() {
    if let Ok(text) = std::env::var("MIXMULT_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Compute(args) => {
            let mut doc = match read_instance(&args.instance) {
                Ok(d) => d,
                Err(e) => return error_exit(&e),
            };
            apply_overrides(&mut doc, &args);
            match run_compute(&doc) {
                Ok(out) => {
                    print_json(&out, args.json);
                    ExitCode::SUCCESS
                }
                Err(e) => error_exit(&e),
            }
        }
        Command::Verify {
            common,
            theorem,
            u,
            candidate,
            index,
            v,
            lprime,
            chain,
        } => {
            let mut doc = match read_instance(&common.instance) {
                Ok(d) => d,
                Err(e) => return error_exit(&e),
            };
            apply_overrides(&mut doc, &common);
            let explicit = theorem.map(|name| VerifySpec {
                theorem: name,
                u,
                candidate,
                index,
                v,
                lprime: lprime.map(|gens| gens.into_iter().map(MonomialSpec::Text).collect()),
                chain,
            });
            let spec = match effective_verify_spec(&doc, explicit) {
                Ok(s) => s,
                Err(e) => return error_exit(&e),
            };
            match run_verify(&doc, &spec) {
                Ok(report) => {
                    let value = serde_json::to_value(&report).expect("serializable");
                    print_json(&value, common.json);
                    match report.verdict {
                        Verdict::Verified => ExitCode::SUCCESS,
                        Verdict::Violated => ExitCode::from(1),
                        Verdict::Inconclusive => ExitCode::from(3),
                    }
                }
                Err(e) => error_exit(&e),
            }
        }
        Command::Primes(args) => {
            let mut doc = match read_instance(&args.instance) {
                Ok(d) => d,
                Err(e) => return error_exit(&e),
            };
            apply_overrides(&mut doc, &args);
            match run_primes(&doc) {
                Ok(out) => {
                    print_json(&out, args.json);
                    ExitCode::SUCCESS
                }
                Err(e) => error_exit(&e),
            }
        }
        Command::Hilbert { common, extent } => {
            let mut doc = match read_instance(&common.instance) {
                Ok(d) => d,
                Err(e) => return error_exit(&e),
            };
            apply_overrides(&mut doc, &common);
            match run_hilbert(&doc, extent) {
                Ok(out) => {
                    print_json(&out, common.json);
                    ExitCode::SUCCESS
                }
                Err(e) => error_exit(&e),
            }
        }
        Command::Corpus { seed, size, out } => match run_corpus(&CorpusConfig { seed, size }) {
            Ok(outcome) => {
                let mut verified = 0usize;
                let mut violated = 0usize;
                let mut inconclusive = 0usize;
                let mut errors = 0usize;
                for row in &outcome.rows {
                    match row.verdict.as_str() {
                        "verified" => verified += 1,
                        "violated" => violated += 1,
                        "inconclusive" => inconclusive += 1,
                        _ => errors += 1,
                    }
                }
                eprintln!(
                    "corpus: {} rows; {verified} verified, {violated} violated, \
                         {inconclusive} inconclusive, {errors} errors",
                    outcome.rows.len()
                );
                if let Some(path) = out {
                    if let Err(e) = fs::write(&path, &outcome.tsv) {
                        return error_exit(&Error::InvalidInput(format!("writing {path}: {e}")));
                    }
                } else {
                    print!("{}", outcome.tsv);
                }
                if violated > 0 || errors > 0 {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => error_exit(&e),
        },
    }
}
