mod cache;
mod commands;
mod golden;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "conekit",
    version,
    about = "Cones of divisors and curves on blow-ups of projective space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Compare the JSON output with the golden files under this directory.
    #[arg(long, global = true, value_name = "DIR")]
    golden: Option<PathBuf>,

    /// With --golden, rewrite the golden files instead of comparing.
    #[arg(long, global = true, requires = "golden")]
    update_golden: bool,

    /// Cache directory for duality reports; overrides CONEKIT_CACHE_DIR.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Record wall-clock time in duality reports (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inequalities and extremal rays of D_k on X^n_s.
    Dk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// The effective cone D_0 on X^n_s.
    Eff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Compare the dual of D_k with the cone of the curve generators.
    Duality {
        #[arg(long, required_unless_present = "all")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "all")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "all")]
        k: Option<usize>,
        /// Every (n, s, k) with 2 <= n <= max-n.
        #[arg(long, conflicts_with_all = ["n", "s", "k"])]
        all: bool,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Chambers of the kappa arrangement in the effective cone.
    Chambers {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Search the Weyl orbit of a curve class for a target class.
    Weyl {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        s: usize,
        /// `FAMILY:i,j,...` on X^4_8 (e.g. `mu15:1`), or `delta,mu_1,...,mu_s`.
        #[arg(long)]
        class: String,
        /// `conic` (2h minus three distinct e_i) or `delta,mu_1,...,mu_s`.
        #[arg(long, default_value = "conic")]
        target: String,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
    },
    /// Losev-Manin 3-space.
    Lm {
        #[arg(value_enum)]
        action: LmAction,
    },
    /// Dualize a cone given as a JSON cone document.
    Dual {
        /// Path to the cone document; `-` reads stdin.
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LmAction {
    /// Fan validation, movable dual, flop and re-flop.
    Verify,
    /// Print the fan as JSON.
    Fan,
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub golden: Option<PathBuf>,
    pub update_golden: bool,
    pub timing: bool,
}

/// A command's outcome, mapped onto the exit code contract.
#[derive(Debug)]
pub enum Failure {
    /// A verdict failed; the report has been printed. Exit 1.
    Verdict,
    /// Bad parameters or unreadable input. Exit 2.
    Usage(String),
}

impl From<conekit::Error> for Failure {
    fn from(e: conekit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let config = RunConfig {
        format: cli.run.format,
        cache_dir: cli
            .run
            .cache_dir
            .or_else(|| std::env::var_os("CONEKIT_CACHE_DIR").map(PathBuf::from)),
        golden: cli.run.golden,
        update_golden: cli.run.update_golden,
        timing: cli.run.timing,
    };
    let outcome = match cli.command {
        Command::Dk { n, s, k } => commands::dk(&config, n, s, k),
        Command::Eff { n, s } => commands::dk(&config, n, s, 0),
        Command::Duality {
            n,
            s,
            k,
            all,
            max_n,
        } => {
            if all {
                commands::duality_all(&config, max_n)
            } else {
                // clap guarantees all three when --all is absent
                commands::duality(&config, n.unwrap(), s.unwrap(), k.unwrap())
            }
        }
        Command::Chambers { n, s } => commands::chambers(&config, n, s),
        Command::Weyl {
            n,
            s,
            class,
            target,
            max_depth,
        } => commands::weyl(&config, n, s, &class, &target, max_depth),
        Command::Lm { action } => match action {
            LmAction::Verify => commands::lm_verify(&config),
            LmAction::Fan => commands::lm_fan(&config),
        },
        Command::Dual { input } => commands::dual(&config, &input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
