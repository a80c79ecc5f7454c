use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use powerlaw_bl::reference_table;
use powerlaw_bl_cli::commands::{POHLHAUSEN_COLUMNS, TABLE_COLUMNS, VALIDATE_COLUMNS};
use powerlaw_bl_cli::{
    cmd_pohlhausen, cmd_solve, cmd_table, cmd_validate, default_table_ps, EtaInf, GridOptions,
    RunReport,
};

/// Power-law boundary layers past a flat plate, solved by the non-iterative
/// transformation method.
#[derive(Parser)]
#[command(name = "powerlaw-bl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for one power-law index and print λ, η*∞ and f''(0).
    Solve {
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        grid: GridArgs,
        /// Write <prefix>_starred.csv and <prefix>_physical.csv.
        #[arg(long, value_name = "PATH-PREFIX")]
        out: Option<PathBuf>,
    },
    /// Compare f''(0) against the reference table.
    Table {
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<f64>>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Cross-check the transformation method against shooting.
    Validate {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Evaluate the Pohlhausen estimate of f''(0).
    Pohlhausen {
        #[arg(long, conflicts_with = "p_list")]
        p: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<f64>>,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Integration step Δη* (default 1e-3, or 1e-4 for P ≤ 0.1).
    #[arg(long)]
    step: Option<f64>,
    /// Truncated boundary η*∞, or `auto` for the plateau search.
    #[arg(long, default_value = "10")]
    eta_inf: EtaInf,
    /// Plateau tolerance used with `--eta-inf auto`.
    #[arg(long, default_value_t = GridOptions::default().tol)]
    tol: f64,
}

impl From<GridArgs> for GridOptions {
    fn from(a: GridArgs) -> Self {
        GridOptions {
            step: a.step,
            eta_inf: a.eta_inf,
            tol: a.tol,
        }
    }
}

fn emit(report: &RunReport, columns: &[powerlaw_bl_cli::Column]) -> ExitCode {
    print!("{}", report.render(columns));
    let _ = io::stdout().flush();
    exit(report.exit_code())
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { p, grid, out } => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            match cmd_solve(p, &grid.into(), out.as_deref(), &mut lock) {
                Ok(_) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    exit(e.exit_code())
                }
            }
        }
        Command::Table { p_list, grid } => {
            let ps = p_list.unwrap_or_else(default_table_ps);
            emit(&cmd_table(&ps, &grid.into()), &TABLE_COLUMNS)
        }
        Command::Validate { p_list, grid } => {
            emit(&cmd_validate(&p_list, &grid.into()), &VALIDATE_COLUMNS)
        }
        Command::Pohlhausen { p, p_list } => {
            let ps = match (p, p_list) {
                (Some(p), _) => vec![p],
                (None, Some(list)) => list,
                (None, None) => reference_table().iter().map(|r| r.p).collect(),
            };
            emit(&cmd_pohlhausen(&ps), &POHLHAUSEN_COLUMNS)
        }
    }
}
