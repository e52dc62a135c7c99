//! `causalreg`: command-line access to every computation, with CSV/JSON
//! output. Exit status 0 on success, 1 on a computation error, 2 on a
//! usage error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use causalreg::testfn::Shape;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "causalreg", version, about = "Causal regularization numerics: QED2 polarization, anomalies, smearing")]
struct Cli {
    /// Output format; defaults to JSON for single records and CSV for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// γ-matrix identities and their defects (CSV).
    Clifford {
        #[arg(long, value_enum, default_value_t = CliffordCheck::All)]
        check: CliffordCheck,
    },
    /// Sample a bump profile and its first two derivatives (CSV x,f,df,d2f).
    Testfn {
        #[arg(long, value_parser = args::shape, default_value = "bump")]
        shape: Shape,
        #[arg(long, value_parser = args::positive, default_value = "1")]
        radius: f64,
        #[arg(long, value_parser = args::finite, default_value = "0")]
        center: f64,
        /// Number of sample points across the support.
        #[arg(long, default_value_t = 101)]
        sample: usize,
    },
    /// Finite-part extension of x^(-k).
    Distext {
        #[command(subcommand)]
        op: DistextOp,
    },
    /// Causal vacuum polarization of QED2.
    Schwinger {
        #[command(subcommand)]
        op: SchwingerOp,
    },
    /// Anomaly density from the regulated radial integral (JSON).
    Anomaly(AnomalyArgs),
    /// Gauge-covariant smearing on a periodic grid (JSON).
    Smear {
        #[command(subcommand)]
        op: SmearOp,
    },
    /// Run the acceptance criteria and print a pass/fail table.
    Verify {
        /// `all` or a comma-separated list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Append wall-clock times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliffordCheck {
    All,
    Clifford,
    Gamma5,
    Projectors,
    Chirality,
    Duality,
    Traces,
    Epsilon,
}

#[derive(Debug, Subcommand)]
enum DistextOp {
    /// Pair x^(-k) with a bump test function (JSON {value, error, order}).
    Pair {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=5))]
        k: u32,
        /// Subtraction order; defaults to the singular order k - 1.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_parser = args::shape, default_value = "bump")]
        shape: Shape,
        #[arg(long, value_parser = args::positive, default_value = "1")]
        radius: f64,
        #[arg(long, value_parser = args::finite, default_value = "0")]
        center: f64,
        #[arg(long, value_parser = args::shape, default_value = "flattop")]
        weight_shape: Shape,
        /// Defaults to twice the test-function radius.
        #[arg(long, value_parser = args::positive)]
        weight_radius: Option<f64>,
    },
    /// Log-divergent integral with and without subtraction (CSV).
    Bphz {
        #[arg(long, value_parser = args::positive, default_value = "1")]
        m: f64,
        #[arg(long, value_parser = args::positive, default_value = "2")]
        mu: f64,
        #[arg(long, value_parser = args::positive, value_delimiter = ',', default_value = "1e2,1e4,1e6")]
        cutoffs: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum SchwingerOp {
    /// r̂ along log-spaced m²/k² (CSV msq,re,im,dist_massless[,quad_re,quad_im,quad_error]).
    Rhat {
        #[arg(long, value_parser = args::positive, default_value = "1")]
        ksq: f64,
        /// Smallest m²/k².
        #[arg(long, value_parser = args::positive, default_value = "1e-6")]
        min: f64,
        /// Largest m²/k² (below 1/4).
        #[arg(long, value_parser = args::positive, default_value = "0.24")]
        max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Also evaluate the dispersion integral by quadrature.
        #[arg(long)]
        quadrature: bool,
    },
    /// Induced photon mass² at m = 0 (JSON).
    Mass {
        #[arg(long, value_parser = args::positive, default_value = "1")]
        e: f64,
    },
    /// Naive cutoff loop against the causal tensor (CSV).
    GaugeCheck {
        /// Euclidean momentum components.
        #[arg(long, value_parser = args::finite, default_value = "0.6")]
        k0: f64,
        #[arg(long, value_parser = args::finite, default_value = "0.8")]
        k1: f64,
        #[arg(long, value_parser = args::positive, default_value = "0.05")]
        m: f64,
        #[arg(long, value_parser = args::positive, value_delimiter = ',', default_value = "10,100,1000")]
        cutoffs: Vec<f64>,
    },
    /// Smeared-δ brute force for P̂ against k² d̂ (JSON).
    Oracle {
        #[arg(long, value_parser = args::positive, default_value = "2")]
        ksq: f64,
        #[arg(long, value_parser = args::finite, default_value = "0")]
        eta: f64,
        #[arg(long, value_parser = args::nonnegative, default_value = "0.4")]
        m: f64,
        /// Largest δ width; defaults to 2% of k²/4 - m².
        #[arg(long, value_parser = args::positive)]
        width: Option<f64>,
    },
}

#[derive(Debug, Args)]
struct AnomalyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "4"]), default_value = "4")]
    dim: String,
    #[arg(long, value_parser = args::shape, default_value = "bump")]
    profile: Shape,
    /// Nonzero components, e.g. `01=1,23=1`.
    #[arg(long = "F", value_parser = args::field_component, value_delimiter = ',', default_value = "01=1,23=1")]
    f: Vec<(usize, usize, f64)>,
    #[arg(long, value_parser = args::finite, default_value = "1")]
    e: f64,
    /// Momentum scale Λ of the regulator.
    #[arg(long, value_parser = args::positive, default_value = "1")]
    scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairingArg {
    Forward,
    Backward,
}

#[derive(Debug, Subcommand)]
enum SmearOp {
    /// Gauge covariance defect for random (ψ, A, Λ).
    Covariance {
        #[arg(long, value_parser = args::grid_size, default_value = "64")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smearing radius in units of the box side.
        #[arg(long, value_parser = args::positive, default_value = "0.2")]
        radius: f64,
        #[arg(long, value_parser = args::finite, default_value = "1")]
        e: f64,
        /// `backward` is the mismatched-difference control.
        #[arg(long, value_enum, default_value_t = PairingArg::Forward)]
        pairing: PairingArg,
    },
    /// Bosonization ansatz against the dual-kernel form for a single mode φ.
    Bosonization {
        #[arg(long, value_parser = args::grid_size, default_value = "64")]
        n: usize,
        #[arg(long, value_parser = args::mode, default_value = "3,1")]
        mode: (i64, i64),
        #[arg(long, value_parser = args::finite, default_value = "1")]
        amplitude: f64,
        #[arg(long, value_parser = args::positive, default_value = "0.15")]
        radius: f64,
        #[arg(long, value_parser = args::finite, default_value = "1")]
        e: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the wrong duality sign (control).
        #[arg(long)]
        flip_sign: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Compute(#[from] causalreg::Error),
    #[error("invalid value for '{flag}': {reason}")]
    Usage { flag: &'static str, reason: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} acceptance criteria failed")]
    VerifyFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = &commands::Emitter { format: cli.format };
    let res = match cli.command {
        Command::Clifford { check } => commands::clifford(out, check),
        Command::Testfn {
            shape,
            radius,
            center,
            sample,
        } => commands::testfn(out, shape, radius, center, sample),
        Command::Distext { op } => commands::distext(out, op),
        Command::Schwinger { op } => commands::schwinger(out, op),
        Command::Anomaly(a) => commands::anomaly(out, a),
        Command::Smear { op } => commands::smear(out, op),
        Command::Verify { suite, seed, timings } => commands::verify(out, &suite, seed, timings),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
