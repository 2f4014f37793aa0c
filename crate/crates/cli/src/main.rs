//! `ranksat`: construct, check and search rank-saturating systems.
//!
//! Exit status: 0 success or all claims verified, 1 a claim was falsified,
//! 2 usage error, 3 budget exceeded.

mod commands;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ranksat_core::config::{set_config, Config};
use ranksat_core::par;

#[derive(Parser, Debug)]
#[command(name = "ranksat", version, about = "Rank-saturating systems and linear sets over finite fields")]
pub struct Cli {
    /// TOML file with budget caps, table threshold and thread count.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (overrides the config file and RANKSAT_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run every data-parallel loop sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Base field F_q with q = (--q)^(--a); --q may itself be a prime power.
#[derive(Args, Debug, Clone)]
pub struct BaseArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub a: u32,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Degree of F_{q^m} over F_q.
    #[arg(long)]
    pub m: u32,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CertOut {
    /// Write a certificate to this file.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the field line, generator and sizes of F_{q^m}.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Defining polynomial over F_p, little-endian, comma separated.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Build a system and emit its certificate.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Decide a property of the system stored in a certificate file.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[arg(long)]
        system: PathBuf,
        /// Expected base field size; checked against the file.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        a: Option<u32>,
        /// Expected extension degree; checked against the file.
        #[arg(long)]
        m: Option<u32>,
        /// Expected ambient dimension; checked against the file.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        rho: Option<u32>,
        #[arg(long)]
        h: Option<usize>,
        #[command(flatten)]
        out: CertOut,
    },
    /// Rank covering radius of a code, or of the dual of a system's code.
    Covrad {
        /// Certificate file; the radius of the dual of its associated code.
        #[arg(long, conflicts_with = "code", required_unless_present = "code")]
        system: Option<PathBuf>,
        /// Code file (`%RANKSAT-CODE v1`, field line, `n N`, `row` lines).
        #[arg(long)]
        code: Option<PathBuf>,
        /// Use the pairwise definition instead of coset leaders.
        #[arg(long)]
        naive: bool,
    },
    /// Lower bound, upper bound and known value of s_{q^m/q}(k, rho).
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        rho: u32,
    },
    /// Least rank of a rho-saturating system in a rank range.
    Search(SearchArgs),
    /// Checks of the rank-4 families in PG(2, q^4), q even.
    Appendix {
        #[arg(value_enum)]
        what: AppendixWhat,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = 1)]
        beta: u32,
        /// Point parameter for delta (default: every z in the set).
        #[arg(long)]
        z: Option<u32>,
        /// Restrict identities and findings to one C.
        #[arg(long = "c")]
        c: Option<u32>,
        #[command(flatten)]
        out: CertOut,
    },
    /// Run a named batch and write one certificate per claim.
    Reproduce {
        suite: String,
        /// Output directory (default: $RANKSAT_OUT or ./ranksat-out).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base field size for case-sweep.
        #[arg(long, default_value_t = 2)]
        case_q: u64,
        /// Sampled C per pair for appendix-q4.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Sampled beta for delta-q64.
        #[arg(long, default_value_t = 5)]
        betas: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Re-verify every claim of a certificate.
    VerifyCert { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// {(x_1, x_1^q, ..., a_1, ..., a_rho)} of rank m(t-1)+rho in V(rho t, q^m).
    Moore {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',')]
        shifts: Option<Vec<u32>>,
        #[command(flatten)]
        out: CertOut,
    },
    /// One of the four rank-4 families in V(3, q^4).
    Case {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long = "case")]
        case: u8,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        beta: u32,
        #[command(flatten)]
        out: CertOut,
    },
    /// The rank-5 2-saturating system in V(3, q^4).
    Rank5 {
        #[command(flatten)]
        base: BaseArgs,
        #[command(flatten)]
        out: CertOut,
    },
    /// Maximum h-scattered {(x_1, ..., x_1^{q^h}, ...)} in V((h+1)t, q^m).
    Hscattered {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        t: usize,
        /// Keep only enough generators to be (h+1)-saturating.
        #[arg(long)]
        thin: bool,
        #[command(flatten)]
        out: CertOut,
    },
    /// F_q^k inside F_{q^m}^k.
    Subgeometry {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: CertOut,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub rho: u32,
    #[arg(long)]
    pub rank_min: usize,
    #[arg(long)]
    pub rank_max: usize,
    #[arg(long, default_value = "canonical")]
    pub reduction: String,
    #[arg(long, default_value_t = 1)]
    pub shards: u32,
    #[arg(long, default_value_t = 0)]
    pub shard_id: u32,
    /// Continue from a checkpoint file.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Stop after this many candidates and write a checkpoint.
    #[arg(long, default_value_t = 0)]
    pub node_cap: u64,
    /// Where to write the checkpoint if the run stops early.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[command(flatten)]
    pub out: CertOut,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Saturating,
    Index,
    Scattered,
    HScattered,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppendixWhat {
    Gamma,
    Identities,
    GammaUnsat,
    Delta,
    Findings,
    Case3,
}

/// Outcome of a command, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Falsified(String),
    Usage(String),
    Budget(String),
}

impl From<ranksat_core::Error> for Failure {
    fn from(e: ranksat_core::Error) -> Self {
        use ranksat_core::Error as E;
        match e {
            E::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            E::AssertionFailed(_) | E::IdentityViolation(_) | E::InternalInconsistency(_) | E::NoWitness => {
                Failure::Falsified(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn setup(cli: &Cli) -> CmdResult {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Config::from_toml(&text)?
        }
        None => Config::default(),
    };
    if let Ok(t) = std::env::var("RANKSAT_THREADS") {
        cfg.threads = t.parse().map_err(|_| Failure::Usage(format!("RANKSAT_THREADS={t} is not a number")))?;
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    par::init_threads(cfg.threads);
    par::set_sequential(cli.sequential);
    set_config(cfg);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = setup(&cli).and_then(|_| commands::run(cli.command));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified(m)) => {
            eprintln!("falsified: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
