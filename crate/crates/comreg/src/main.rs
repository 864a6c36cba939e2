use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use comreg::expr::{parse_and_eval, Alphabet};
use comreg::fuzz::{self, FuzzConfig};
use comreg::{dot, json, report, summary};
use comreg_core::dfa::grids_equivalent;
use comreg_core::sample::SampleParams;
use comreg_core::witnesses::{run_report, suite, Suite, Verdict};
use comreg_core::Dfa;

#[derive(Parser)]
#[command(
    name = "comreg",
    version,
    about = "Commutative regular languages as grid automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its state complexity and vectors
    Eval {
        expr: String,
        #[arg(long)]
        alphabet: String,
        /// Print the canonical grid as JSON
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Print the grid automaton as Graphviz DOT
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether two expressions denote the same language
    Equiv {
        left: String,
        right: String,
        #[arg(long)]
        alphabet: String,
    },
    /// Measure the witness families against their claimed values
    Report {
        #[arg(long, value_enum, default_value_t = SuiteArg::Default)]
        suite: SuiteArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Compare every operation with the brute-force oracle on random grids
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Largest alphabet size
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
        #[arg(long, default_value_t = 3)]
        max_period: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Default,
    Group,
    Aperiodic,
}

const USAGE: u8 = 2;
const FAILED: u8 = 1;

fn alphabet(text: &str) -> Result<Alphabet, ExitCode> {
    Alphabet::new(text).map_err(|e| {
        eprintln!("invalid alphabet: {e}");
        ExitCode::from(USAGE)
    })
}

fn run(command: Command) -> Result<(), ExitCode> {
    match command {
        Command::Eval {
            expr,
            alphabet: letters,
            json: as_json,
            dot: as_dot,
        } => {
            let alphabet = alphabet(&letters)?;
            let g = parse_and_eval(&expr, &alphabet).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(USAGE)
            })?;
            if as_json {
                println!("{}", json::to_string(&g, &alphabet));
            } else if as_dot {
                print!("{}", dot::to_dot(&Dfa::from_grid(&g), &alphabet));
            } else {
                println!("{}", summary(&g, &alphabet));
            }
        }
        Command::Equiv {
            left,
            right,
            alphabet: letters,
        } => {
            let alphabet = alphabet(&letters)?;
            let eval = |text: &str| {
                parse_and_eval(text, &alphabet).map_err(|e| {
                    eprintln!("{e}");
                    ExitCode::from(USAGE)
                })
            };
            let (a, b) = (eval(&left)?, eval(&right)?);
            let same = grids_equivalent(&a, &b).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(USAGE)
            })?;
            if same {
                println!("equivalent");
            } else {
                println!("not equivalent");
                return Err(ExitCode::from(FAILED));
            }
        }
        Command::Report {
            suite: which,
            json: as_json,
            csv: as_csv,
        } => {
            let which = match which {
                SuiteArg::Default => Suite::Default,
                SuiteArg::Group => Suite::Group,
                SuiteArg::Aperiodic => Suite::Aperiodic,
            };
            let reports = suite(which)
                .map_err(|e| e.to_string())
                .and_then(|cases| run_report(&cases).map_err(|e| e.to_string()))
                .map_err(|e| {
                    eprintln!("{e}");
                    ExitCode::from(FAILED)
                })?;
            if as_json {
                print!("{}", report::json(&reports));
            } else if as_csv {
                print!("{}", report::csv(&reports));
            } else {
                print!("{}", report::markdown(&reports));
            }
            if reports.iter().any(|r| r.verdict == Verdict::Violates) {
                return Err(ExitCode::from(FAILED));
            }
        }
        Command::Fuzz {
            seed,
            cases,
            k,
            max_index,
            max_period,
        } => {
            if k == 0 || max_period == 0 {
                eprintln!("--k and --max-period must be positive");
                return Err(ExitCode::from(USAGE));
            }
            let config = FuzzConfig {
                seed,
                cases,
                max_k: k,
                params: SampleParams {
                    max_index,
                    max_period,
                    ..SampleParams::default()
                },
            };
            let outcome = fuzz::run(&config).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(FAILED)
            })?;
            print!("{}", fuzz::render(&config, &outcome));
            if !outcome.passed() {
                return Err(ExitCode::from(FAILED));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
