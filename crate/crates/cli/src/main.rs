use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use safa_cli::{
    run_bench, run_empty, run_equiv, run_ltlf_sat, run_regex, BenchOpts, CliError, Engine,
    RunOpts, RunRecord, DEFAULT_TIMEOUT_MS, LTLF_TIMEOUT_MS,
};

/// Decision procedures for symbolic alternating finite automata.
#[derive(Parser)]
#[command(name = "safa", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Decision engine to run.
    #[arg(long, value_enum, default_value_t = Engine::Bisim)]
    engine: Engine,
    /// Per-case timeout in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Emit the run record as JSON instead of human-readable text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check language equivalence of two automata, or of two
    /// configurations of one automaton.
    Equiv {
        file_a: PathBuf,
        file_b: Option<PathBuf>,
        /// Left configuration formula (with FILE_B omitted).
        #[arg(long)]
        left: Option<String>,
        /// Right configuration formula (with FILE_B omitted).
        #[arg(long)]
        right: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check language emptiness of an automaton.
    Empty {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check satisfiability of a finite-trace temporal formula.
    LtlfSat {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the `check:` equations of a regex query file.
    Regex {
        query: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a manifest of cases under one or more engines.
    Bench {
        manifest: PathBuf,
        /// Comma-separated engine list; every case runs under each.
        #[arg(long, value_enum, value_delimiter = ',',
              default_values_t = [Engine::Bisim, Engine::ReverseSfa])]
        engines: Vec<Engine>,
        #[arg(long)]
        timeout_ms: Option<u64>,
        /// Seed for generated cases.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Emit records as CSV rows instead of text or JSON.
        #[arg(long)]
        csv: bool,
    },
}

fn opts(common: &Common, default_ms: u64) -> RunOpts {
    RunOpts {
        engine: common.engine,
        timeout_ms: common.timeout_ms.unwrap_or(default_ms),
    }
}

fn emit(records: &[RunRecord], json: bool) {
    if json {
        let body = if records.len() == 1 {
            serde_json::to_string_pretty(&records[0])
        } else {
            serde_json::to_string_pretty(&records)
        };
        println!("{}", body.expect("record serialization"));
    } else {
        for r in records {
            print!("{}", r.print_human());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Equiv {
            file_a,
            file_b,
            left,
            right,
            common,
        } => {
            let r = run_equiv(
                &file_a,
                file_b.as_deref(),
                left.as_deref(),
                right.as_deref(),
                opts(&common, DEFAULT_TIMEOUT_MS),
            )?;
            emit(&[r], common.json);
        }
        Cmd::Empty { file, common } => {
            let r = run_empty(&file, opts(&common, DEFAULT_TIMEOUT_MS))?;
            emit(&[r], common.json);
        }
        Cmd::LtlfSat { file, common } => {
            let r = run_ltlf_sat(&file, opts(&common, LTLF_TIMEOUT_MS))?;
            emit(&[r], common.json);
        }
        Cmd::Regex { query, common } => {
            let rs = run_regex(&query, opts(&common, DEFAULT_TIMEOUT_MS))?;
            emit(&rs, common.json);
        }
        Cmd::Bench {
            manifest,
            engines,
            timeout_ms,
            seed,
            json,
            csv,
        } => {
            let report = run_bench(
                &manifest,
                &BenchOpts {
                    engines,
                    timeout_ms,
                    seed,
                },
            )?;
            if csv {
                println!("{}", RunRecord::csv_header());
                for r in &report.cases {
                    println!("{}", r.csv_line());
                }
            } else if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serialization")
                );
            } else {
                for r in &report.cases {
                    print!("{}", r.print_human());
                }
                for s in &report.summary {
                    println!(
                        "{}: {} cases, {} equivalent, {} inequivalent, {} timeouts, \
                         {} errors, {} ms total, {} pairs explored",
                        s.engine,
                        s.cases,
                        s.equivalent,
                        s.inequivalent,
                        s.timeouts,
                        s.errors,
                        s.total_wall_ms,
                        s.total_pairs_explored
                    );
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
