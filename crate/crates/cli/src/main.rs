//! `bisieve` command-line front end.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use bisieve::primality::is_known_carmichael;
use bisieve::{
    carmichael_scan, crossbar_metrics, fermat_test_with, hypercube_metrics, omega_metrics,
    run_benchmark, run_cluster_sieve, run_serial_baseline, trial_division_is_prime, FermatOptions,
    RandomSource,
};
use clap::{Parser, Subcommand, ValueEnum};

use report::{CarmichaelReport, FermatReport, IsPrimeReport, Render, SieveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "bisieve", version, about = "Bidirectional cluster sieve and primality tools")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the primes up to n with the simulated cluster.
    Sieve {
        #[arg(long)]
        n: u64,
        /// Segment length per node.
        #[arg(long, default_value_t = 10_000)]
        k: u64,
        /// Concurrent node workers.
        #[arg(long, env = "BISIEVE_WORKERS", default_value_t = 4)]
        workers: usize,
        /// Use the plain sequential sieve instead of the cluster.
        #[arg(long)]
        serial: bool,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Deterministic primality by trial division.
    Isprime {
        #[arg(long)]
        n: u64,
    },
    /// Fermat's probabilistic primality test.
    Fermat {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        iters: u32,
        /// Seed for the base generator; omitted means a fresh random seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Draw bases from [2, p-1] instead of [1, p-1].
        #[arg(long)]
        exclude_trivial_base: bool,
    },
    /// Interconnect cost and connectivity figures.
    Topo {
        #[command(subcommand)]
        kind: Topo,
    },
    /// Time the serial sieve against the cluster sieve.
    Bench {
        /// Comma-separated upper bounds.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        k: u64,
        /// Comma-separated worker counts.
        #[arg(long, value_delimiter = ',', env = "BISIEVE_WORKERS", default_value = "4")]
        workers: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Carmichael numbers up to a limit (at most 10^6).
    Carmichael {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Topo {
    Hypercube {
        #[arg(long)]
        d: u32,
    },
    Omega {
        #[arg(long)]
        p: u64,
    },
    Crossbar {
        #[arg(long)]
        p: u64,
    },
}

fn run(cli: Cli) -> bisieve::Result<Box<dyn Render>> {
    Ok(match cli.command {
        Command::Sieve { n, k, workers, serial, count_only } => {
            let result = if serial {
                run_serial_baseline(n)?
            } else {
                run_cluster_sieve(n, k, workers)?
            };
            Box::new(SieveReport {
                n,
                k: (!serial).then_some(k),
                workers: (!serial).then_some(workers),
                count: result.count,
                primes: (!count_only).then_some(result.primes),
            })
        }
        Command::Isprime { n } => Box::new(IsPrimeReport { n, prime: trial_division_is_prime(n) }),
        Command::Fermat { p, iters, seed, exclude_trivial_base } => {
            let seed = seed.unwrap_or_else(rand::random);
            let mut rng = RandomSource::new(seed);
            let options = FermatOptions { exclude_trivial_base };
            let probably_prime = fermat_test_with(p, iters, &mut rng, options)?;
            let carmichael = is_known_carmichael(p);
            Box::new(FermatReport {
                p,
                iterations: iters,
                seed,
                probably_prime,
                carmichael,
                warning: (carmichael == Some(true)).then(|| {
                    format!("{p} is a Carmichael number: every coprime base passes, so a 'probably prime' verdict is unreliable")
                }),
            })
        }
        Command::Topo { kind } => Box::new(match kind {
            Topo::Hypercube { d } => hypercube_metrics(d)?,
            Topo::Omega { p } => omega_metrics(p)?,
            Topo::Crossbar { p } => crossbar_metrics(p)?,
        }),
        Command::Bench { n, k, workers, reps } => Box::new(run_benchmark(&n, k, &workers, reps)?),
        Command::Carmichael { limit } => {
            Box::new(CarmichaelReport { limit, numbers: carmichael_scan(limit)? })
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let format = cli.output;
    let rendered = match run(cli).and_then(|r| r.render(format)) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut out = io::stdout().lock();
    if out.write_all(rendered.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
