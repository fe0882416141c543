use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gwpskit::exactla::{Primes, DEFAULT_PRIMES};
use gwpskit::report::{self, OutputFormat, RunConfig};
use gwpskit::WeightedSpace;

#[derive(Parser)]
#[command(name = "gwpskit", version, about = "Tables for the Gorenstein weighted projective 3-spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest weight enumerated
    #[arg(long, global = true, default_value_t = 50)]
    bound: u32,
    /// Run the degree-3 and quartic-syzygy checks (betti)
    #[arg(long, global = true)]
    verify: bool,
    /// Include spaces above the genus budget
    #[arg(long, global = true)]
    all: bool,
    /// Impose the quartic syzygies as redundant constraints (alpha)
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES.0)]
    prime: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES.1)]
    prime2: u64,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// tsv, markdown or latex
    #[arg(long, global = true, default_value = "markdown")]
    format: String,
    /// Cache directory (overridden by GWPSKIT_CACHE)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Exit nonzero unless every value matches the expected-values table
    #[arg(long, global = true)]
    check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Weights and invariants of every Gorenstein space
    Classify,
    /// Genus and the first two Betti numbers
    Betti,
    /// alpha(S), alpha(P) and extendability
    Alpha,
    /// Generator and relation degrees of a Veronese subring
    Veronese {
        /// e.g. 1,1,4,6
        weights: WeightedSpace,
        d: u32,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, gwpskit::Error> {
    let defaults = RunConfig::default();
    Ok(RunConfig {
        bound: cli.bound,
        verify: cli.verify,
        all: cli.all,
        strict: cli.strict,
        check: cli.check,
        primes: Primes::new(cli.prime, cli.prime2)?,
        threads: cli.threads.unwrap_or(defaults.threads),
        cache_dir: cli.cache.clone(),
        format: cli.format.parse::<OutputFormat>()?,
        ..defaults
    }
    .with_env())
}

fn run(cli: &Cli) -> Result<bool, gwpskit::Error> {
    let config = config(cli)?;
    if let Command::Veronese { weights, d, cutoff } = &cli.command {
        println!("{}", report::cmd_veronese(weights, *d, *cutoff)?);
        return Ok(true);
    }
    let outcome = config.install(|| match cli.command {
        Command::Classify => report::cmd_classify(&config),
        Command::Betti => report::cmd_betti(&config),
        Command::Alpha => report::cmd_alpha(&config),
        Command::Veronese { .. } => unreachable!(),
    })??;
    print!("{}", outcome.render(config.format));
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    for failure in &outcome.failures {
        eprintln!("FAIL: {failure}");
    }
    Ok(outcome.success())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
