use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cwkit_cli::dot::{write_dot, DotKind};
use cwkit_cli::limits::{Budget, Limits, MAX_DEPTH_ENV};
use cwkit_cli::query::run_query;
use cwkit_cli::render::{verify_table, write_level, LevelFormat};
use cwkit_cli::{CliError, CliResult};
use cwkit_core::verify::{check_golden, run_suite, CheckReport, SuiteConfig};

#[derive(Parser)]
#[command(name = "cwkit", version, about = "Exact Calkin-Wilf tree toolkit")]
struct Cli {
    /// Refuse depths above this value (defaults: 20 for streaming, 14 for ? exports).
    #[arg(long, global = true, env = MAX_DEPTH_ENV)]
    max_depth: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every fraction of level N, left to right.
    Level {
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: LevelFormat,
    },
    /// Graphviz rendering of the tree or the diagonal trees.
    Dot {
        #[arg(value_enum)]
        kind: DotKind,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Answer one query, e.g. `cf 7/5` or `diag 6 2`.
    Query {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Run the identity suite; JSON report on stdout, table on stderr.
    Verify {
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Comma-separated identity names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        select: Vec<String>,
        /// Also compare against the reference renderings.
        #[arg(long)]
        seed_check: bool,
    },
}

fn run(cli: Cli) -> CliResult<bool> {
    let limits = Limits::with_override(cli.max_depth);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Level { n, format } => {
            if n == 0 {
                return Err(CliError::Usage("level must be >= 1, got `0`".into()));
            }
            limits.check(Budget::Streaming, n)?;
            write_level(&mut out, n, format)?;
        }
        Command::Dot { kind, depth } => {
            let budget = match kind {
                DotKind::QmarkDiagonals => Budget::Qmark,
                _ => Budget::Streaming,
            };
            limits.check(budget, depth)?;
            write_dot(&mut out, kind, depth)?;
        }
        Command::Query { expr } => {
            let mut notices = Vec::new();
            let answer = run_query(&expr, &mut notices);
            for n in notices {
                eprintln!("{n}");
            }
            writeln!(out, "{}", answer?)?;
        }
        Command::Verify {
            depth,
            select,
            seed_check,
        } => {
            limits.check(Budget::Streaming, depth)?;
            let selection = if select.iter().any(|s| s == "all") {
                None
            } else {
                Some(select.as_slice())
            };
            let mut report = run_suite(&SuiteConfig::new(depth), selection)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if seed_check {
                report.checks.push(CheckReport::from_outcome(
                    "golden-renderings",
                    "tree rows 1-5, diagonal tree labels, ? diagonal maps",
                    check_golden(),
                ));
            }
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
            eprint!("{}", verify_table(&report));
            return Ok(report.all_passed());
        }
    }
    out.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cwkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
