mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clifford_codes::Error;

#[derive(Parser, Debug)]
#[command(name = "cliffcodes", version, about = "Clifford codes over finite error groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Error group: pauli:n, weyl:d:n or file:PATH.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Seed for the random splitting vector of the isotypic decomposition.
    #[arg(long, global = true, env = "CLIFFCODES_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Eigenvalue clustering tolerance.
    #[arg(long, global = true, env = "CLIFFCODES_TOL", default_value_t = 1e-8)]
    pub tol: f64,
    /// Decomposition attempts before giving up.
    #[arg(long, global = true, env = "CLIFFCODES_RETRIES", default_value_t = 5)]
    pub retries: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CLIFFCODES_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, global = true, env = "CLIFFCODES_CLOSURE_CAP", default_value_t = clifford_codes::rep::DEFAULT_CLOSURE_CAP)]
    pub closure_cap: usize,
    #[arg(long, global = true, env = "CLIFFCODES_NORMAL_CAP", default_value_t = clifford_codes::group::DEFAULT_NORMAL_CAP)]
    pub normal_cap: usize,
    #[arg(long, global = true, env = "CLIFFCODES_CONDUCTOR_CAP", default_value_t = clifford_codes::cyclo::DEFAULT_CONDUCTOR_CAP)]
    pub conductor_cap: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SubgroupArgs {
    /// Comma-separated generator labels, e.g. `Z,-1` or `XZZXI,IXZZX`.
    /// Repeat for several subgroups.
    #[arg(long = "subgroup")]
    pub subgroups: Vec<String>,
    /// JSON file `{"conductor": m, "generators": [matrix, ...]}`; the
    /// generators must be group elements.
    #[arg(long = "subgroup-matrices")]
    pub subgroup_matrices: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group facts and error-group checks.
    Info,
    /// List all normal subgroups.
    NormalSubgroups,
    /// Homogeneous components of the representation restricted to N.
    Decompose {
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// One Clifford code.
    Code {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, default_value_t = 0)]
        component: usize,
        /// Print the detection verdict for every error.
        #[arg(long)]
        detect_table: bool,
        /// Error set to test for correctability: `weight:K` or labels `a,b,c`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Lemma and theorem checks over all (or the given) normal subgroups.
    Verify {
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// Enumerate and rank all codes.
    Search {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long)]
        min_dim: Option<u32>,
        #[arg(long)]
        min_distance: Option<u32>,
        #[arg(long)]
        only_nonabelian: bool,
        /// Only the Pareto front of (dim, distance).
        #[arg(long)]
        pareto: bool,
    },
}

/// Exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const COMPUTATION: u8 = 2;
    pub const VERIFICATION: u8 = 3;
}

pub enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownGroupSpec(_)
            | Error::Parse(_)
            | Error::ComponentOutOfRange { .. }
            | Error::InvalidGroup(_)
            | Error::NonUnitary { .. }
            | Error::ShapeMismatch(_)
            | Error::NotSubgroup(_)
            | Error::NotNormal(_)
            | Error::Io { .. }
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    if let Some(jobs) = cli.common.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    clifford_codes::cyclo::set_conductor_cap(cli.common.conductor_cap);
    let result = match &cli.command {
        Command::Info => commands::info(&cli.common),
        Command::NormalSubgroups => commands::normal_subgroups(&cli.common),
        Command::Decompose { subgroup } => commands::decompose(&cli.common, subgroup),
        Command::Code {
            subgroup,
            component,
            detect_table,
            sigma,
        } => commands::code(&cli.common, subgroup, *component, *detect_table, sigma.as_deref()),
        Command::Verify { subgroup } => commands::verify(&cli.common, subgroup),
        Command::Search {
            subgroup,
            min_dim,
            min_distance,
            only_nonabelian,
            pareto,
        } => commands::search(
            &cli.common,
            subgroup,
            clifford_codes::search::SearchFilters {
                min_dim: *min_dim,
                min_distance: *min_distance,
                only_nonabelian_n: *only_nonabelian,
            },
            *pareto,
        ),
    };
    match result {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::USAGE)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::COMPUTATION)
        }
    }
}
