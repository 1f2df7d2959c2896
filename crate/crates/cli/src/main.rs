mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "diffkit", version, about = "Law checks for Cartesian difference categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `findiff`, `smooth`, `module:r=<int>` or `streams:k=<int>`.
    #[arg(long, default_value = "findiff")]
    pub model: String,
    /// Base space such as `Z7`, `Int[-9,9]`, `R^2`, `Stream(Z3,8)` or `(Z5 x Z5)`.
    #[arg(long)]
    pub space: Option<String>,
    /// Seed for subjects and sampling; `DIFFKIT_SEED` takes precedence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Points drawn per law when a domain is too large to enumerate.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Largest domain that is checked exhaustively.
    #[arg(long, default_value_t = 100_000)]
    pub bound: u128,
}

#[derive(Args, Debug, Clone)]
pub struct Pool {
    /// Number of random subjects.
    #[arg(long, default_value_t = 10)]
    pub subjects: usize,
    /// Leave the registered primitives out of the subject pool.
    #[arg(long)]
    pub no_primitives: bool,
    /// JSON file with a lookup-table subject.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interpret a term and evaluate it at a point.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        term: String,
        #[arg(long)]
        at: String,
    },
    /// Print the symbolic derivative of a term.
    Derive {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Run an axiom suite over a pool of subjects.
    Check {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pool: Pool,
        /// Comma-separated axiom names, or `all`, `cdc`, `flatness`, `every`.
        #[arg(long, default_value = "all")]
        axioms: String,
    },
    /// Unit, associativity and naturality of the tangent monad.
    MonadLaws {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pool: Pool,
    },
    /// Closed-form Kleisli composition, the extension operator and the Kleisli axioms.
    KleisliCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        subjects: usize,
        #[arg(long, default_value = "cdc")]
        axioms: String,
    },
    /// Linear algebra laws for the free algebra and an optional structure map.
    AlgebraCheck {
        #[command(flatten)]
        common: Common,
        /// JSON file with a `nu` table on `T(space) -> space`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Currying laws on finite spaces of bounded size.
    LambdaCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_size: u128,
        #[arg(long, default_value_t = 20)]
        subjects: usize,
    },
    /// The flatness conditions on a space.
    Flatness {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(cli.command, echo) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.violations { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
