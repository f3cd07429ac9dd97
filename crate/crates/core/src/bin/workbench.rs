use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lie_workbench::catalog::catalog_list;
use lie_workbench::dsl::{run, Report, RunOptions, MAX_ORDER};
use lie_workbench::suite::paper_suite;
use lie_workbench::Error;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact checks for Lie bialgebras, r-matrices and twists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a definition file.
    Run {
        file: PathBuf,
        /// Truncation degree for twist expansions.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=MAX_ORDER as i64))]
        order: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Comma-separated conditions, e.g. `h!=0,xi!=0`.
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-check wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List the built-in algebras, tensors and cochains.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full acceptance battery and print a one-page verdict.
    PaperSuite {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=MAX_ORDER as i64))]
        order: u32,
    },
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), std::io::Error> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run {
            file,
            order,
            format,
            assume,
            out,
            timing,
        } => {
            let src = match fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return usage(format!("{}: {e}", file.display())),
            };
            let options = RunOptions {
                order,
                assume,
                timing,
            };
            let report: Report = match run(&src, &options) {
                Ok(r) => r,
                Err(e @ Error::Parse { .. }) => return usage(format!("{}:{e}", file.display())),
                Err(e) => return usage(e),
            };
            let text = match format {
                Format::Text => report.render_text(),
                Format::Structured => report.render_structured(),
            };
            if let Err(e) = emit(&text, out.as_ref()) {
                return usage(e);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Catalog { format } => {
            let text = match format {
                Format::Text => catalog_list()
                    .iter()
                    .map(|e| {
                        let kind = format!("{:?}", e.kind).to_lowercase();
                        let host = e.host.map(|h| format!(" on {h}")).unwrap_or_default();
                        format!("{:<20} {:<8} {}{host}\n", e.name, kind, e.description)
                    })
                    .collect(),
                Format::Structured => {
                    serde_json::to_string_pretty(catalog_list()).expect("catalog serializes") + "\n"
                }
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Command::PaperSuite { order } => {
            let verdict = paper_suite(order);
            print!("{}", verdict.render());
            ExitCode::from(if verdict.all_passed() { 0 } else { 1 })
        }
    }
}
