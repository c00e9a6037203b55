//! `norman`: Jordan partitions of `J_r (x) J_s` over GF(p), Norman
//! involutions and the groups they generate.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use norman_core::Error;

#[derive(Parser)]
#[command(name = "norman", version, about = "Jordan partitions of tensor products of Jordan blocks over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `r`, `s` and `p`. `r > s` is accepted and swapped.
#[derive(Args, Clone, Copy)]
pub struct Triple {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MethodArg {
    /// Kummer carries of the determinants `D_n`.
    Delta,
    /// Closed-form identities; fails if none applies.
    Fast,
    /// Ranks of matrix powers.
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Unipotent,
    Nilpotent,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EngineArg {
    Dense,
    Graded,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableName {
    Pi3,
    SmallS,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// The partition lambda(r,s,p).
    Lambda {
        #[command(flatten)]
        t: Triple,
        #[arg(long, value_enum, default_value = "delta")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// The Norman permutation pi(r,s,p) in cycle notation.
    Pi {
        #[command(flatten)]
        t: Triple,
        #[arg(long, value_enum, default_value = "delta")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Standardness by the congruence table, cross-checked six ways.
    Standard {
        #[command(flatten)]
        t: Triple,
        #[arg(long)]
        json: bool,
    },
    /// The delta profile with its gap sequences L and R.
    Delta {
        #[command(flatten)]
        t: Triple,
        #[arg(long)]
        json: bool,
    },
    /// Jordan form of `J_r (x) J_s` or `N_r (x) N_s` by brute force.
    Oracle {
        #[command(flatten)]
        t: Triple,
        #[arg(long, value_enum, default_value = "unipotent")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Largest matrix dimension `rs` (default: NORMAN_CAP or 4096).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// `V_r (x) V_s` as a sum of indecomposables.
    Green {
        #[command(flatten)]
        t: Triple,
        /// Also check the p-power tensor identities up to `p^emax`.
        #[arg(long)]
        emax: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// The group generated by `pi(r,s,p)` over all `s >= r`.
    Group {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: usize,
        /// Check the wreath-product structure (default when no flag is given).
        #[arg(long)]
        verify: bool,
        /// List the distinct values of `pi(r,s,p)` over one period.
        #[arg(long)]
        census: bool,
        /// Show the blocks of imprimitivity.
        #[arg(long)]
        blocks: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recompute a published table and compare it entry by entry.
    Table {
        #[arg(long, value_enum)]
        name: TableName,
        /// Primes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<usize>,
        /// Largest `r` for `small-s`.
        #[arg(long, default_value_t = 25)]
        rmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run checks over a range of cells.
    Sweep {
        #[arg(long)]
        rmax: usize,
        /// Largest `s`; without it each `r` runs over one period `r..=r+p^m`.
        #[arg(long)]
        smax: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<usize>,
        /// Comma separated, from: oracle-equiv, involution, six-way,
        /// identities, wreath, bijection-roundtrip, nilpotent.
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write records here instead of stdout; the summary still goes to stderr.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Convert between cut sets, deviation vectors and reversal products.
    Corr {
        #[arg(long)]
        r: Option<usize>,
        /// Cut set, a subset of `1..r-1`, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with_all = ["eps", "perm"])]
        subset: Option<Vec<usize>>,
        /// Deviation vector, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "perm")]
        eps: Option<Vec<i64>>,
        /// Permutation in cycle notation; needs `--r`.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// What a command produced: text or JSON on stdout and an exit status.
pub struct Output {
    pub stdout: String,
    pub ok: bool,
}

impl Output {
    pub fn pass(stdout: String) -> Self {
        Output { stdout, ok: true }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    use commands::*;
    match command {
        Command::Lambda { t, method, json } => jordan(t, method, json, Shown::Lambda),
        Command::Pi { t, method, json } => jordan(t, method, json, Shown::Pi),
        Command::Standard { t, json } => standard(t, json),
        Command::Delta { t, json } => delta(t, json),
        Command::Oracle { t, kind, engine, cap, json } => oracle(t, kind, engine, cap, json),
        Command::Green { t, emax, json } => green(t, emax, json),
        Command::Group { r, p, verify, census, blocks, json } => group(r, p, verify, census, blocks, json),
        Command::Table { name, p, rmax, json } => table(name, &p, rmax, json),
        Command::Sweep { rmax, smax, primes, checks, format, out, sequential } => {
            sweep(rmax, smax, &primes, &checks, format, out.as_deref(), sequential)
        }
        Command::Corr { r, subset, eps, perm, json } => corr(r, subset, eps, perm, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(
        &cli.command,
        Command::Lambda { json: true, .. }
            | Command::Pi { json: true, .. }
            | Command::Standard { json: true, .. }
            | Command::Delta { json: true, .. }
            | Command::Oracle { json: true, .. }
            | Command::Green { json: true, .. }
            | Command::Group { json: true, .. }
            | Command::Table { json: true, .. }
            | Command::Corr { json: true, .. }
    );
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(if e.is_verification_failure() { 1 } else { 2 })
        }
    }
}
