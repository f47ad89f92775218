//! `wallman`: finite lattices, their filter spaces and covering
//! certificates from the command line.
//!
//! Exit status is 0 when every requested check passes, 1 when a check
//! fails and 2 on unreadable input.

mod cert_cmds;
mod gen_cmds;
mod hom_cmds;
mod input;
mod lattice_cmds;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wallman_core::wallman::SpaceKind;
use wallman_core::{FilterClass, Strategy};

use cert_cmds::{CertCheck, CertOptions, Style};
use gen_cmds::GenKind;
use hom_cmds::HomFlags;
use input::CliError;
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "wallman",
    version,
    about = "Finite lattices and their Wallman spaces"
)]
struct Cli {
    /// Human-readable output instead of canonical JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Leave out timing fields.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Prime,
    Ultra,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Brute,
    Fast,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Prime,
    Ultra,
}

#[derive(Subcommand)]
enum Command {
    /// Structural predicates of a lattice.
    Check {
        lattice: String,
        /// Predicates that must hold: distributive, normal, separative, boolean.
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
        /// Print the Hasse diagram in dot format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate filters.
    Filters {
        lattice: String,
        #[arg(long, value_enum, default_value = "prime")]
        class: ClassArg,
        #[arg(long, value_enum, default_value = "brute")]
        strategy: StrategyArg,
        /// Cross-check against the brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// The space of prime filters or ultrafilters.
    Space {
        lattice: String,
        #[arg(long, value_enum, default_value = "ultra")]
        kind: KindArg,
        /// Also decide T0, T1 and Hausdorff.
        #[arg(long)]
        axioms: bool,
    },
    /// Finite form of the prime-filter and ultrafilter space theorem.
    Suite { lattice: String },
    /// Check a homomorphism fixture and the map it induces.
    Hom {
        hom: String,
        /// Second homomorphism composed after the first, for --laws.
        #[arg(long)]
        then: Option<String>,
        /// Directories searched for the lattices a fixture names.
        #[arg(long = "lattices")]
        lattice_dirs: Vec<PathBuf>,
        #[arg(long)]
        induced: bool,
        #[arg(long)]
        separative: bool,
        #[arg(long)]
        mbeer: bool,
        #[arg(long)]
        laws: bool,
        /// Skip the normality requirement.
        #[arg(long)]
        unchecked: bool,
    },
    /// Boolean algebra generated by the sets a⁺.
    Stone { lattice: String },
    /// Checks on a covering family.
    Cert {
        family: String,
        #[arg(value_enum)]
        check: CertCheck,
        /// JSON object mapping member ids to lists of naturals.
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        member: Option<String>,
        #[arg(long)]
        k_cap: Option<usize>,
        /// Cover m only by members with φ(v) = {m}.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "wiec")]
        style: Style,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Write a seeded random fixture.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        target_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time brute-force against fast enumeration.
    Bench {
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Output {
    Report(RunReport),
    Text(String),
    /// Report for JSON output, text for the pretty view.
    Both(RunReport, String),
}

fn run(cmd: Command) -> Result<Output, CliError> {
    Ok(match cmd {
        Command::Check {
            lattice,
            require,
            dot,
        } => match lattice_cmds::check(&lattice, &require, dot)? {
            (_, Some(dot)) => Output::Text(dot),
            (r, None) => Output::Report(r),
        },
        Command::Filters {
            lattice,
            class,
            strategy,
            oracle,
        } => {
            let class = match class {
                ClassArg::All => FilterClass::All,
                ClassArg::Prime => FilterClass::Prime,
                ClassArg::Ultra => FilterClass::Ultra,
            };
            let strategy = match strategy {
                StrategyArg::Brute => Strategy::Brute,
                StrategyArg::Fast => Strategy::Fast,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
            };
            Output::Report(lattice_cmds::filters(&lattice, class, strategy, oracle)?)
        }
        Command::Space {
            lattice,
            kind,
            axioms,
        } => {
            let kind = match kind {
                KindArg::Prime => SpaceKind::Prime,
                KindArg::Ultra => SpaceKind::Ultra,
            };
            Output::Report(lattice_cmds::space(&lattice, kind, axioms)?)
        }
        Command::Suite { lattice } => Output::Report(lattice_cmds::suite(&lattice)?),
        Command::Stone { lattice } => Output::Report(lattice_cmds::stone(&lattice)?),
        Command::Hom {
            hom,
            then,
            lattice_dirs,
            induced,
            separative,
            mbeer,
            laws,
            unchecked,
        } => {
            let flags = HomFlags {
                induced,
                separative,
                mbeer,
                laws,
                unchecked,
            };
            Output::Report(hom_cmds::hom(&hom, then.as_deref(), &lattice_dirs, flags)?)
        }
        Command::Cert {
            family,
            check,
            phi,
            member,
            k_cap,
            strict,
            style,
            threshold,
        } => {
            let opts = CertOptions {
                phi,
                member,
                k_cap,
                strict,
                threshold,
            };
            Output::Report(cert_cmds::cert(&family, check, style, &opts)?)
        }
        Command::Gen {
            kind,
            size,
            target_size,
            seed,
            out,
        } => {
            let text = gen_cmds::gen(kind, size, target_size, seed)?;
            match out {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    Output::Text(String::new())
                }
                None => Output::Text(text),
            }
        }
        Command::Bench {
            max_size,
            repeats,
            seed,
        } => {
            let (r, table) = gen_cmds::bench(max_size, repeats, seed)?;
            Output::Both(r, table)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (pretty, timings) = (cli.pretty, !cli.no_timings);
    let emit = |r: &RunReport| {
        print!("{}", r.render(pretty, timings));
        ExitCode::from(if r.passed { 0 } else { 1 })
    };
    match run(cli.command) {
        Ok(Output::Report(r)) => emit(&r),
        Ok(Output::Both(r, table)) if pretty => {
            print!("{table}");
            ExitCode::from(if r.passed { 0 } else { 1 })
        }
        Ok(Output::Both(r, _)) => emit(&r),
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(CliError::Check(r)) => emit(&r),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
