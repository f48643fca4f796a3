use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Robin eigenvalues with negative impedance -1/δ on the disk.
///
/// Exit status: 0 when every check of the study passes, 2 when a check
/// fails, 1 on usage or runtime errors.
#[derive(Debug, Parser)]
#[command(name = "robinlab", version)]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Linear,
    Quadratic,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Disk radius R.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Number of radial elements.
    #[arg(long, default_value_t = robin_core::experiments::DEFAULT_ELEMENTS)]
    elements: usize,
    /// Element order.
    #[arg(long, value_enum, default_value_t = OrderArg::Quadratic)]
    element_order: OrderArg,
    /// Width of the graded boundary layer as a fraction of R; 0 for a uniform grid.
    #[arg(long, default_value_t = robin_core::experiments::DEFAULT_LAYER_FRACTION)]
    layer: f64,
    /// Write the study table to this CSV file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dirichlet eigenvalues of one sector: Bessel zeros against finite elements.
    Dirichlet {
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Number of eigenvalues.
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Robin eigenvalues of one sector: secular roots against finite elements.
    Robin {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Surface-mode limit δ²λ → -1.
    Surface {
        /// Angular wavenumbers, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        m: Vec<u32>,
        /// A single δ (overrides --deltas).
        #[arg(long)]
        delta: Option<f64>,
        /// δ values: `a:b:logK` or a comma list [default: 0.1:0.001:log6].
        #[arg(long)]
        deltas: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficients λ_k of the expansion about a Dirichlet eigenvalue.
    Expand {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = robin_core::expansion::DEFAULT_ORDER)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Rate of |λ^δ - Λ_N^δ| over a δ sweep.
    Converge {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// δ values: `a:b:logK` or a comma list [default depends on --order].
        #[arg(long)]
        deltas: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Rate of the dual-norm residual of the truncated expansion.
    Residual {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        order: usize,
        /// δ values [default: 0.1:0.01:log6].
        #[arg(long)]
        deltas: Option<String>,
        /// Shift α of the coercive form.
        #[arg(long, default_value_t = robin_core::experiments::DEFAULT_RESIDUAL_ALPHA)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Interior and boundary mass of both eigenfunction branches.
    Concentrate {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// δ values [default: 0.05:0.005:log6].
        #[arg(long)]
        deltas: Option<String>,
        /// Radius of the inner disk K [default: R/2].
        #[arg(long)]
        rho: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest eigenvalue θ of the shifted form relative to the H¹_δ norm.
    Coercivity {
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// α values, comma separated and increasing [default: 0.5,1,2,4,8].
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// δ values [default: 0.1,0.05,0.02,0.01].
        #[arg(long)]
        deltas: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
