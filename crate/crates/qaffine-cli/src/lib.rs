//! Command-line front end: argument parsing, configuration merging, exit
//! codes and JSON-lines report output.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{parse_complex, resolve, Overrides, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: msg.into() }
    }

    pub fn check(msg: impl Into<String>) -> Self {
        Self { code: EXIT_FAIL, message: msg.into() }
    }
}

impl From<qaffine::Error> for Failure {
    fn from(e: qaffine::Error) -> Self {
        use qaffine::Error as E;
        let code = match &e {
            _ if e.is_degenerate() => EXIT_DEGENERATE,
            E::Continuity(_) => EXIT_DEGENERATE,
            E::Usage(_) | E::Precondition(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        let mut message = e.to_string();
        if let E::DegenerateNullSpace { singular_values, .. } = &e {
            message.push_str(&format!("\nsingular values: {singular_values:?}"));
        }
        Self { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::check(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::check(format!("json: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "qaffine", version, about = "Verification engine for the quantum affine algebra on centrally extended sl(2|2)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Flat key=value configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of sampled points (pairs, triples).
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// standard (f64) or extended (f256).
    #[arg(long, global = true)]
    pub precision: Option<String>,
    /// Pass threshold for every check of the command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Directory receiving `<command>.jsonl`; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alphatilde: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xplus: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// x⁻ root: big or small.
    #[arg(long, global = true)]
    pub branch: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full relation catalog at sampled or explicit points.
    VerifyRelations,
    /// R-matrix of two points given as `XPLUS,GAMMA[,big|small]`; put specs
    /// starting with `-` after `--`.
    SolveR {
        #[arg(value_name = "POINT")]
        specs: Vec<String>,
    },
    /// Yang–Baxter residual on sampled or explicit point triples.
    Ybe {
        #[arg(value_name = "POINT")]
        specs: Vec<String>,
    },
    /// g → 0 limit suite.
    LimitConv,
    /// q → 1 limit suite.
    LimitYangian {
        /// Include the full generator table.
        #[arg(long)]
        appendix: bool,
    },
    /// Quantum affine gl(n) control suite.
    Gln {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            precision: self.precision.clone(),
            tol: self.tol,
            seed: self.seed,
            points: self.points,
            out: self.out.clone(),
            q: self.q.clone(),
            g: self.g.clone(),
            alpha: self.alpha.clone(),
            alphatilde: self.alphatilde.clone(),
            xplus: self.xplus.clone(),
            gamma: self.gamma.clone(),
            branch: self.branch.clone(),
        }
    }
}

/// JSON-lines destination.
pub struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    pub fn open(cfg: &RunConfig, name: &str) -> Result<Self, Failure> {
        let out: Box<dyn Write> = match &cfg.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                Box::new(BufWriter::new(File::create(dir.join(format!("{name}.jsonl")))?))
            }
            None => Box::new(BufWriter::new(std::io::stdout())),
        };
        Ok(Self { out })
    }

    pub fn line<T: Serialize>(&mut self, item: &T) -> Result<(), Failure> {
        serde_json::to_writer(&mut self.out, item)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), Failure> {
        self.out.flush()?;
        Ok(())
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn execute(cli: &Cli) -> Result<bool, Failure> {
    let cfg = resolve(cli.global.config.as_deref(), &cli.global.overrides())?;
    commands::dispatch(&cli.command, &cfg)
}
