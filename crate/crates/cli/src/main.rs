use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

/// Stability analysis and solvers for the L2 discrete Caputo derivative.
#[derive(Parser, Debug)]
#[command(name = "l2stab", version)]
pub struct Cli {
    /// Flat `key = value` settings; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for parallel studies (1 forces serial execution).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory (default: $L2STAB_OUT, else ./out).
    #[arg(long = "out-dir", global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct MeshArgs {
    /// uniform | graded | rvariable
    #[arg(long)]
    pub kind: Option<String>,
    /// Number of steps.
    #[arg(long = "K", alias = "n")]
    pub k: Option<usize>,
    /// Grading exponent of graded meshes.
    #[arg(long)]
    pub r: Option<f64>,
    /// Final time.
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    /// Read the mesh from a CSV file instead.
    #[arg(long = "in", alias = "mesh-file")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate or check time meshes.
    #[command(subcommand)]
    Mesh(MeshCommand),
    /// Print the ratio-constraint constants.
    Constants,
    /// Dump L2 coefficients as CSV.
    Coeffs {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long)]
        alpha: Option<f64>,
        /// Only this row.
        #[arg(long = "k")]
        row: Option<usize>,
        /// Compute rows by adaptive quadrature.
        #[arg(long)]
        oracle: bool,
        /// Also evaluate the sign and monotonicity properties of the weights.
        #[arg(long)]
        lemma: bool,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify positive semidefiniteness of the bilinear form.
    Psd {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long)]
        alpha: Option<f64>,
        /// Matrix order (default: number of steps).
        #[arg(long)]
        order: Option<usize>,
        /// Also report the diagonal lower-bound gap.
        #[arg(long)]
        gap: bool,
    },
    /// Sweep graded meshes over grading exponents and orders.
    PsdSweep {
        #[arg(long = "r-values", value_delimiter = ',', required = true)]
        r_values: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long)]
        n: usize,
    },
    /// Solve the subdiffusion problem and write field and trajectory CSV.
    Solve {
        #[command(flatten)]
        mesh: MeshArgs,
        #[command(flatten)]
        pde: PdeArgs,
    },
    /// Temporal convergence table with log-log plots.
    Convergence {
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        #[arg(long = "Ks", value_delimiter = ',')]
        ks: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        #[arg(long = "N")]
        grid: Option<usize>,
        #[arg(long = "rhs-mode")]
        rhs_mode: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long = "T")]
        horizon: Option<f64>,
    },
    /// Long run with square-wave forcing and an H1 boundedness verdict.
    Stability {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long = "N")]
        grid: Option<usize>,
        /// Angular frequency of the square wave.
        #[arg(long, default_value_t = 10.0)]
        omega: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum MeshCommand {
    /// Write a mesh CSV.
    Gen {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a mesh against a ratio criterion; exit 2 on failure.
    Check {
        #[command(flatten)]
        mesh: MeshArgs,
        /// thm1 | corollary | rho-condition
        #[arg(long, default_value = "thm1")]
        criterion: String,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct PdeArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long = "N")]
    pub grid: Option<usize>,
    /// single-laplacian | exact-manufactured | semidiscrete-manufactured
    #[arg(long = "rhs-mode")]
    pub rhs_mode: Option<String>,
    #[arg(long = "cg-tol")]
    pub cg_tol: Option<f64>,
    /// Use quadrature-computed weights.
    #[arg(long)]
    pub oracle: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(cli))
}
