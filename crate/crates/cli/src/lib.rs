//! `qmass`: batch commands over qmass-core, one JSON record per output line.

mod cache;
mod commands;
mod output;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qmass_core::Capacity;

pub use record::ResultRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "qmass", version, about = "Norm-squares in SL(2, Z[i]) and the local densities behind them")]
pub struct Cli {
    /// Worker threads (defaults to the available parallelism)
    #[arg(long, env = "QMASS_JOBS", global = true)]
    pub jobs: Option<usize>,

    /// JSON-lines result cache
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub output_format: OutputFormat,

    /// Largest n for the exhaustive global counts
    #[arg(long, global = true)]
    pub max_n_count: Option<u64>,

    /// Largest p^(8t) for the naive density oracle
    #[arg(long, global = true)]
    pub max_pt_naive: Option<u128>,

    /// Largest p^(2t) for the reduced density oracle
    #[arg(long, global = true)]
    pub max_pt_reduced: Option<u128>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Find gamma in SL(2, Z[i]) with norm-square n
    Witness {
        n: u64,
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Witness every odd n in a range
    Verify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Count gamma in SL(2, Z[i]) with norm-square n
    CountGamma { n: u64 },
    /// Count integer X with X X^t = diag(n+2, n-2), and those with a Gaussian preimage
    CountXf { n: u64 },
    /// Local density at an odd prime (or p = 2 with --method oracle)
    Density {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value = "closed")]
        method: String,
        #[arg(long, default_value = "reduced")]
        mode: String,
    },
    /// Density at 2 from the count modulo 8
    Dyadic { n: u64 },
    /// 2 pi^3 sqrt(n^2 - 4)
    Archimedean { n: u64 },
    /// Product of all local densities
    Mass {
        n: u64,
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
    },
    /// Exact mass against the exact solution count
    Compare { n: u64 },
    /// Check that no local density vanishes, for n (or every odd n up to --to)
    Audit {
        n: u64,
        #[arg(long)]
        to: Option<u64>,
    },
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub jobs: usize,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub capacity: Capacity,
}

impl CliConfig {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        let jobs = match cli.jobs {
            Some(0) => return Err("--jobs must be ≥ 1".into()),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let mut capacity = Capacity::default();
        if let Some(v) = cli.max_n_count {
            capacity.max_n_count = v;
        }
        if let Some(v) = cli.max_pt_naive {
            capacity.max_pt_naive = v;
        }
        if let Some(v) = cli.max_pt_reduced {
            capacity.max_pt_reduced = v;
        }
        if capacity.max_n_count == 0 || capacity.max_pt_naive == 0 || capacity.max_pt_reduced == 0 {
            return Err("capacity overrides must be positive".into());
        }
        Ok(CliConfig {
            jobs,
            cache_path: cli.cache.clone(),
            output_format: cli.output_format,
            capacity,
        })
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 success, 1 verification failure, 2 usage or
/// capacity error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let config = match CliConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    // a global pool may already exist when run is called twice in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build_global();
    commands::execute(&cli.command, &config, out, err)
}
