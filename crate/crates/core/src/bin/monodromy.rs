use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monodromy_core::cli::{self, JobSpec, Mode};

/// Exact homology-level certificates for handlebody-bundle monodromies and
/// thickness-polytope queries.
#[derive(Parser, Debug)]
#[command(name = "monodromy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify one monodromy given as a matrix or a free-group word map.
    Certify(Common),
    /// Evaluate thickness, cones and fiber Euler characteristics of covectors.
    Polytope(Common),
    /// Certify seeded random GL_g(Z) instances.
    Batch(Common),
    /// Re-check every invariant of a certificate or batch file.
    Verify(Common),
    /// Run a job selected by --mode.
    Run {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Certify,
    Polytope,
    Batch,
    Verify,
}

#[derive(Args, Debug)]
struct Common {
    /// Input JSON file.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Overwrite an existing output file.
    #[arg(long)]
    force: bool,
    /// Seed for batch generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of batch instances.
    #[arg(long, default_value_t = 0)]
    count: usize,
    /// Genus, or an inclusive range such as 2-6, for batch instances.
    #[arg(long, default_value = "3", value_parser = cli::parse_genus_range)]
    genus: std::ops::RangeInclusive<usize>,
    /// Omit the torsion of H_1(M; Z) from certificates.
    #[arg(long)]
    no_torsion: bool,
    /// Debug logging plus a human-readable report on stderr.
    #[arg(long, short)]
    verbose: bool,
}

fn main() {
    // Usage errors are parse errors (exit 1); exit 2 is reserved for
    // rejected input.
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    let (mode, common) = match cli.command {
        Command::Certify(c) => (Mode::Certify, c),
        Command::Polytope(c) => (Mode::Polytope, c),
        Command::Batch(c) => (Mode::Batch, c),
        Command::Verify(c) => (Mode::Verify, c),
        Command::Run { mode, common } => {
            let mode = match mode {
                ModeArg::Certify => Mode::Certify,
                ModeArg::Polytope => Mode::Polytope,
                ModeArg::Batch => Mode::Batch,
                ModeArg::Verify => Mode::Verify,
            };
            (mode, common)
        }
    };

    let default_level = if common.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MONODROMY_LOG", default_level))
        .format_timestamp(None)
        .init();

    let spec = JobSpec {
        mode,
        input: common.input,
        output: common.output,
        force: common.force,
        torsion: !common.no_torsion,
        seed: common.seed,
        count: common.count,
        genus: common.genus,
        verbose: common.verbose,
    };
    std::process::exit(cli::run(&spec));
}
