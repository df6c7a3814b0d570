mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::CliError;

pub const ARTIFACT_VERSION: &str = concat!("fovec-", env!("CARGO_PKG_VERSION"));

#[derive(Parser, Debug)]
#[command(name = "fovec", version, about = "Exact cohomology of formal vector fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Cache directory; defaults to $FOVEC_CACHE. No caching if neither is set.
    #[arg(long, global = true, env = "FOVEC_CACHE")]
    cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// H(W_n; S^m W_n*), absolute or relative to gl_n.
    WnCohomology {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        sym: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        relative: bool,
    },
    /// Absolute or relative cohomology of the flag algebra W(n_0, …, n_k).
    FlagCohomology {
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        shape: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        sym: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        relative: bool,
    },
    /// Relative cohomology of a family with respect to its linear part.
    Relative {
        #[arg(long, value_enum)]
        family: Family,
        /// `n` for W_n, or the second block for WL(m|n).
        #[arg(long)]
        n: Option<usize>,
        /// First block for WL(m|n).
        #[arg(long)]
        m: Option<usize>,
        /// Block sizes for flag algebras.
        #[arg(long, value_delimiter = ',')]
        shape: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        sym: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Relative cohomology of WL(m|n) with respect to gl_m ⊕ gl_n.
    WlCohomology {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        absolute: bool,
    },
    /// Cohomology of W(1, …, 1) from its truncated Weyl model, with the monomial basis.
    WeylGl1 {
        #[arg(long = "N", short = 'N')]
        big_n: usize,
    },
    /// Cohomology of the transgression model of W(shape).
    Transgression {
        #[arg(long, value_delimiter = ',')]
        shape: Vec<usize>,
    },
    /// Vanishing and degeneration checks for b ⊂ gl_{m+n}.
    ParabolicVerify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Partition for S^λ U, comma separated; empty for λ = ∅.
        #[arg(long, value_delimiter = ',', default_value = "")]
        lambda: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModuleKind::Trivial)]
        module: ModuleKind,
        #[arg(long, value_enum, default_value_t = ParabolicCheck::All)]
        check: ParabolicCheck,
    },
    /// Closed-form Poincaré polynomials.
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        #[arg(long = "N", short = 'N')]
        big_n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        shape: Vec<usize>,
    },
    /// Closedness and non-triviality of the explicit cocycles.
    CocycleVerify {
        #[arg(long, value_enum)]
        kind: CocycleKind,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// The full acceptance suite.
    VerifyAll {
        #[arg(long, default_value = "quick")]
        level: String,
    },
    /// Degree bound for obstructions to flag structures.
    Obstruction {
        #[arg(long)]
        n: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    W,
    Flag,
    Wl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Trivial,
    Tautological,
    Adjoint,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicCheck {
    Vanishing,
    Degeneration,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Poincaré polynomial of H(W(1, …, 1)).
    Flag,
    Grassmannian,
    /// Relative cohomology of W(shape) relative to its Levi part.
    RelativeFlag,
    Catalan,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    A,
    Wheel,
    Xi,
}

fn emit_error(format: Format, err: &CliError) {
    let body = json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&body).expect("serializable")),
        _ => eprintln!("{body}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let body = json!({ "error": { "kind": "invalid_parameters", "message": e.to_string().trim() } });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
    };
    let format = cli.global.format;
    let start = Instant::now();
    let (name, params) = match commands::validate(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            emit_error(format, &e);
            return ExitCode::from(e.exit_code());
        }
    };
    let cache = cli.global.cache_dir.as_deref().map(|d| cache::Cache::new(d, ARTIFACT_VERSION));
    let result: Result<Value, CliError> = match cache.as_ref().and_then(|c| c.get(name, &params)) {
        Some(hit) => Ok(hit),
        None => commands::run(&cli.command).inspect(|r| {
            if let Some(c) = &cache {
                if let Err(e) = c.put(name, &params, r) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
        }),
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => {
            emit_error(format, &e);
            return ExitCode::from(e.exit_code());
        }
    };
    let doc = json!({
        "command": name,
        "params": params,
        "result": result,
        "wall_time_ms": start.elapsed().as_millis() as u64,
        "artifact_version": ARTIFACT_VERSION,
    });
    print!("{}", output::render(format, &doc));
    if commands::verification_failed(&doc["result"]) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
