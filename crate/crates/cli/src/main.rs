//! `happy`: explore fixed points of augmented happy functions from the shell.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use happy_core::HappyError;

use output::Format;

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "happy", version, about = "Fixed points of S[c,b](a) = c + (sum of squared base-b digits of a)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads for scans (output is identical for every value).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S[c,b](a) with its digit breakdown.
    Eval {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        a: u64,
    },
    /// Iterate S[c,b] from a until the orbit cycles.
    Orbit {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
    },
    /// Enumerate all fixed points for one c, or for every c in --from..=--to.
    #[command(group(ArgGroup::new("which").required(true).args(["c", "from"])))]
    FixedPoints {
        #[arg(long)]
        b: u64,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        c: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
    },
    /// Closed-form fixed-point counts next to the enumerated count.
    Count {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        b: u64,
    },
    /// Scan a window of c for deserts, or construct a desert of length ≥ k.
    #[command(group(ArgGroup::new("mode").required(true).args(["from", "at_least"])))]
    Deserts {
        #[arg(long)]
        b: u64,
        #[arg(long, requires = "to", conflicts_with = "at_least")]
        from: Option<u64>,
        #[arg(long, requires = "from", conflicts_with = "at_least")]
        to: Option<u64>,
        #[arg(long)]
        at_least: Option<u64>,
    },
    /// Bounds on c admitting an (n+1)-digit fixed point, with witnesses.
    Bounds {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u32,
    },
    /// Check the structural facts and closed forms against enumeration over a grid.
    Verify {
        /// pairs, reflections, parity, counts, two-digit, f1, fn-formula,
        /// bounds, deserts, r2, or all. The r2 suite covers n ≤ 100·c-max.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 12)]
        b_max: u64,
        #[arg(long, default_value_t = 500)]
        c_max: u64,
    },
    /// Number of ordered signed representations of n as x² + y².
    R2 {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

/// Command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<HappyError> for Failure {
    fn from(e: HappyError) -> Self {
        let code = match &e {
            HappyError::Overflow(_) | HappyError::BoundExceeded { .. } => EXIT_OVERFLOW,
            HappyError::Internal(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    pub fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let cap = commands::max_bound_from_env()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::domain("--threads must be ≥ 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::domain(e.to_string()))?;

    let start = Instant::now();
    let out = pool.install(|| dispatch(cli.command, cap))?;
    let rendered = out.render(cli.format, start.elapsed()).map_err(Failure::domain)?;
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(rendered.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure { code: EXIT_VERIFY_FAILED, message: e.to_string() })?;
    Ok(out.exit_code)
}

fn dispatch(command: Command, cap: u64) -> Result<output::Output, Failure> {
    match command {
        Command::Eval { c, b, a } => commands::eval(c, b, a),
        Command::Orbit { c, b, a, max_steps } => commands::orbit(c, b, a, max_steps),
        Command::FixedPoints { b, c, from, to } => match (c, from, to) {
            (Some(c), _, _) => commands::fixed_points(b, c, c, cap, true),
            (None, Some(lo), Some(hi)) => commands::fixed_points(b, lo, hi, cap, false),
            _ => Err(Failure::domain("give --c or both --from and --to")),
        },
        Command::Count { c, b } => commands::count(c, b, cap),
        Command::Deserts { b, from, to, at_least } => match (from, to, at_least) {
            (Some(lo), Some(hi), None) => commands::desert_scan(b, lo, hi, cap),
            (None, None, Some(k)) => commands::desert_construct(b, k),
            _ => Err(Failure::domain("give either --from/--to or --at-least")),
        },
        Command::Bounds { b, n } => commands::bounds(b, n),
        Command::Verify { suite, b_max, c_max } => commands::verify(&suite, b_max, c_max, cap),
        Command::R2 { n } => commands::r2(n),
    }
}
