use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use omniscience::{Instance, Strategy, Variant};
use omniscience_cli::bench::{self, BenchConfig};
use omniscience_cli::gen::{generate_json, GenConfig};
use omniscience_cli::solve::{self, SolveOptions, SolveReport};
use omniscience_cli::{parse, CliError, ExitCode, Result};

/// Minimum sum-rate and optimal rates for communication for omniscience.
///
/// Exit status: 0 ok, 1 infeasible rates, 2 bad input, 3 internal error.
#[derive(Parser)]
#[command(name = "omniscience", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Fused,
    Unfused,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        /// Linear ordering of the users, 1-based, e.g. 4,3,2,5,1.
        #[arg(long, conflicts_with = "weights")]
        ordering: Option<String>,
        /// Per-user weights (p/q or exact decimals); picks a weight-consistent ordering.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Integral rates (packets cannot be split).
        #[arg(long)]
        non_asymptotic: bool,
        #[arg(long, value_enum, default_value = "fused")]
        variant: VariantArg,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Accept entropy tables without the polymatroid check.
        #[arg(long)]
        no_validate: bool,
    },
    /// Check a rate vector against the Slepian-Wolf constraints.
    Validate {
        file: PathBuf,
        /// Comma-separated rates.
        #[arg(
            long,
            requires = "alpha",
            conflicts_with = "report",
            allow_hyphen_values = true
        )]
        rates: Option<String>,
        /// Required sum-rate.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// A `solve --json` report to check instead.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a random packet instance.
    Gen {
        #[arg(long)]
        users: usize,
        #[arg(long)]
        packets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare fused and unfused SFM sizes over random instances, as CSV.
    ///
    /// Columns: kind (run|mean), n, repetition, seed, fused_summed_size,
    /// unfused_summed_size, fused_calls, unfused_calls, fused_evals,
    /// unfused_evals, r_aco. Means are exact rationals p/q.
    Bench {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        packets: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run everything on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            file,
            ordering,
            weights,
            non_asymptotic,
            variant,
            json,
            no_validate,
        } => {
            let instance = Instance::load(&file, !no_validate)?;
            let opts = SolveOptions {
                ordering: ordering.as_deref().map(parse::ordering).transpose()?,
                weights: weights.as_deref().map(parse::rationals).transpose()?,
                non_asymptotic,
                variant: match variant {
                    VariantArg::Fused => Variant::Fused,
                    VariantArg::Unfused => Variant::Unfused,
                },
            };
            let report = solve::solve(&instance, &opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", solve::render(&report));
            }
        }
        Command::Validate {
            file,
            rates,
            alpha,
            report,
        } => {
            let instance = Instance::load(&file, true)?;
            match (rates, report) {
                (Some(rates), None) => {
                    let alpha = parse::rational(alpha.as_deref().unwrap_or_default())?;
                    solve::validate(&instance, &parse::rationals(&rates)?, alpha)?;
                }
                (None, Some(path)) => {
                    let report: SolveReport = serde_json::from_reader(File::open(path)?)?;
                    solve::validate_report(&instance, &report)?;
                }
                _ => {
                    return Err(CliError::Input(
                        "give either --rates with --alpha, or --report".into(),
                    ))
                }
            }
            println!("feasible");
        }
        Command::Gen {
            users,
            packets,
            seed,
            out,
        } => {
            let mut w = output(out)?;
            writeln!(
                w,
                "{}",
                generate_json(GenConfig {
                    users,
                    packets,
                    seed
                })?
            )?;
            w.flush()?;
        }
        Command::Bench {
            n_min,
            n_max,
            packets,
            reps,
            seed,
            sequential,
            out,
        } => {
            let strategy = if sequential {
                Strategy::Sequential
            } else {
                Strategy::default()
            };
            let report = bench::run(&BenchConfig {
                n_min,
                n_max,
                packets,
                reps,
                seed,
                strategy,
            })?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            bench::write_csv(&report, output(out)?)?;
        }
    }
    Ok(())
}

fn main() {
    let code = match run(Cli::parse()) {
        Ok(()) => ExitCode::Ok,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code as i32);
}
