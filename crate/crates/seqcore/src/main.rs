use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seqcore::driver::{exit, execute, Command, RunConfig};
use seqcore_core::check::DEFAULT_FUEL;

/// Compile, check and run programs in the focused sequent calculus.
#[derive(Parser)]
#[command(name = "seqcore", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Typecheck every declaration.
    Check(Opts),
    /// Print the compiled signature in core syntax.
    Core(Opts),
    /// Normalize an entry point.
    Run(Opts),
    /// Normalize an entry point, printing every step.
    Trace(Opts),
}

#[derive(Args)]
struct Opts {
    file: PathBuf,
    /// Declaration to run.
    #[arg(long)]
    entry: Option<String>,
    /// Surface expression passed as the first argument.
    #[arg(long, allow_hyphen_values = true)]
    arg: Option<String>,
    /// Use the dependent rules.
    #[arg(long)]
    dependent: bool,
    /// Allow `_` and `p @ q` patterns in core terms.
    #[arg(long)]
    structural_patterns: bool,
    /// Reduction step bound.
    #[arg(long, env = "SEQCORE_FUEL", default_value_t = DEFAULT_FUEL, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    fuel: usize,
    /// Print the step trace (same as the trace command).
    #[arg(long)]
    trace: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            return ExitCode::from(code as u8);
        }
    };
    let (command, o) = match cli.command {
        Cmd::Check(o) => (Command::Check, o),
        Cmd::Core(o) => (Command::Core, o),
        Cmd::Run(o) => (if o.trace { Command::Trace } else { Command::Run }, o),
        Cmd::Trace(o) => (Command::Trace, o),
    };
    let cfg = RunConfig {
        command,
        file: o.file,
        entry: o.entry,
        arg: o.arg,
        dependent: o.dependent,
        structural_patterns: o.structural_patterns,
        fuel: o.fuel,
    };
    let out = execute(&cfg);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
