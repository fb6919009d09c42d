use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ideal_roots_cli::{
    cmd_fill, cmd_ptb, cmd_search, cmd_solve, cmd_tangent, cmd_validate, text, CliError, Mode, RunReport, Settings,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

/// Locate ideal points of deformation varieties and identify their roots of unity.
#[derive(Debug, Parser)]
#[command(name = "ideal-roots", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Output,
    /// Newton residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Step budget for filling continuations.
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a triangulation file and summarize its edge classes.
    Validate { path: String },
    /// Solve for the complete hyperbolic structure.
    Solve {
        path: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Starting shapes, e.g. "0.5+0.5i, 1+i, 0.5+0.5i, 1+i".
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
    },
    /// Follow the 1/n orbifold filling of a cusp curve.
    Fill {
        path: String,
        /// Curve label from the file.
        #[arg(long)]
        curve: String,
        /// Cone angle 2π/n.
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
    },
    /// Run fillings for every curve and order and tabulate the outcomes.
    Search {
        path: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        orders: Vec<u32>,
        /// Defaults to every curve in the file.
        #[arg(long, value_delimiter = ',')]
        curves: Option<Vec<String>>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
    },
    /// Dimension of the Zariski tangent space of the edge equations at a point.
    Tangent {
        path: String,
        /// Shapes, e.g. "(exp(i*pi/6)/sqrt(3), 1, 1, 0)".
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Verification suite for the punctured-torus bundle component.
    Ptb {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// RNG seed for the sampled points.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let settings = Settings::new(cli.tol, cli.max_steps);
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, &settings),
        Command::Solve { path, mode, seed } => cmd_solve(path, *mode, seed.as_deref(), &settings),
        Command::Fill {
            path,
            curve,
            n,
            mode,
            seed,
        } => cmd_fill(path, curve, *n, *mode, seed.as_deref(), &settings),
        Command::Search {
            path,
            orders,
            curves,
            mode,
            seed,
        } => cmd_search(path, orders, curves.as_deref(), *mode, seed.as_deref(), &settings),
        Command::Tangent { path, at, mode } => cmd_tangent(path, at, *mode, &settings),
        Command::Ptb { samples, seed } => cmd_ptb(*samples, *seed, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if !cli.quiet {
                match cli.output {
                    Output::Json => println!("{}", report.to_json()),
                    Output::Text => print!("{}", text::render(&report)),
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
