use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toral_zeta::cli::{self, CliConfig, Command, Format, MatrixSource, EXIT_INPUT_ERROR};
use toral_zeta::zeta::Fault;

#[derive(Parser)]
#[command(
    name = "toral-zeta",
    version,
    about = "Zeta functions of toral endomorphisms"
)]
struct Opts {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Artin-Mazur zeta function
    Zeta(Common),
    /// Lefschetz zeta function
    Lefschetz(Common),
    /// Periodic point counts
    Counts(Common),
    /// Euler product exponents
    Exponents(Common),
    /// Hyperbolicity and root-of-unity classification
    Classify(Common),
    /// Cross-check every result against independent oracles
    Check(Common),
    /// Everything at once
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Matrix as nested brackets, e.g. [[2,1],[1,1]]
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    matrix: Option<String>,
    /// Read the matrix from a file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    max_m: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Print the factor-by-factor product instead of the reduced form
    #[arg(long)]
    unreduced: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FlipEpsilon,
}

fn main() -> ExitCode {
    let opts = match Opts::try_parse() {
        Ok(o) => o,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INPUT_ERROR as u8
            } else {
                0
            });
        }
    };
    let (command, common) = match opts.command {
        Cmd::Zeta(c) => (Command::Zeta, c),
        Cmd::Lefschetz(c) => (Command::Lefschetz, c),
        Cmd::Counts(c) => (Command::Counts, c),
        Cmd::Exponents(c) => (Command::Exponents, c),
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Check(c) => (Command::Check, c),
        Cmd::Report(c) => (Command::Report, c),
    };
    let source = match (common.matrix, common.file) {
        (Some(m), _) => MatrixSource::Inline(m),
        (None, Some(f)) => MatrixSource::File(f),
        (None, None) => unreachable!("clap enforces one source"),
    };
    let mut config = CliConfig::new(command, source);
    config.max_m = common.max_m;
    config.tolerance = common.tolerance;
    config.unreduced = common.unreduced;
    config.format = match common.format {
        FormatArg::Plain => Format::Plain,
        FormatArg::Latex => Format::Latex,
        FormatArg::Json => Format::Json,
    };
    config.fault = common
        .inject_fault
        .map(|FaultArg::FlipEpsilon| Fault::FlipEpsilon);

    let out = cli::run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit_code as u8)
}
