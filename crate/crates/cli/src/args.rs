use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qfib",
    version,
    about = "Exact q-Fibonacci polynomial computations and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a sequence value or a truncated generating function.
    Eval(EvalArgs),
    /// Print a binomial-type coefficient or factorial product.
    Coeff(CoeffArgs),
    /// Check catalog identities over parameter grids.
    Verify(VerifyArgs),
    /// Print reference tables.
    Tables(TablesArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalKind {
    Fib,
    Lucas,
    Qfib,
    QfibNegClosed,
    Gf,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub kind: EvalKind,
    /// Index n; not used by `gf`.
    #[arg(allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Replace s by q^shift·s (qfib only).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub shift: i64,
    /// Truncation order in s (gf only).
    #[arg(long, default_value_t = 8)]
    pub order_s: i32,
    /// Truncation order in q (gf only).
    #[arg(long, default_value_t = 12)]
    pub order_q: i32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// qbinom N K
    Qbinom,
    /// fibonomial N K
    Fibonomial,
    /// fibonomial-ell K J ELL
    FibonomialEll,
    /// qfibonomial K J
    Qfibonomial,
    /// qfibonomial-ell M J ELL
    QfibonomialEll,
    /// fac N SHIFT ELL
    Fac,
    /// fac-classical N ELL
    FacClassical,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    pub kind: CoeffKind,
    #[arg(allow_negative_numbers = true, required = true)]
    pub params: Vec<i64>,
    /// Substitute integer values, e.g. `x=1,s=1`.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity ids, or `all`.
    #[arg(required = true)]
    pub ids: Vec<String>,
    /// Inclusive range `a..b` or a single value.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub n: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub k: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub ell: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub m: Option<RangeInclusive<i64>>,
    /// Range for N in gen_cassini.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub big_n: Option<RangeInclusive<i64>>,
    /// Series order in s for gf_limit.
    #[arg(long)]
    pub order_s: Option<i64>,
    /// Series order in q for gf_limit.
    #[arg(long)]
    pub order_q: Option<i64>,
    /// Upper bound on k for every entry.
    #[arg(long)]
    pub max_k: Option<i64>,
    /// Upper bound on ell for every entry.
    #[arg(long)]
    pub max_ell: Option<i64>,
    /// Try to fit a monomial correction for every failing cell.
    #[arg(long)]
    pub fit: bool,
    /// Count fitted cells as success for the exit code.
    #[arg(long)]
    pub fit_ok: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report 0 ms for every cell.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[command(subcommand)]
    pub table: TableKind,
}

#[derive(Subcommand, Debug)]
pub enum TableKind {
    /// det(f(k+i-j, x, q^j s)^k) for k = 1..max-k.
    DetTable {
        #[arg(long, default_value_t = 3)]
        max_k: i64,
        /// Allow k = 5, which takes minutes.
        #[arg(long)]
        slow: bool,
    },
    /// Rows 0..=rows of the fibonomial triangle.
    FibonomialTriangle {
        #[arg(long, default_value_t = 5)]
        rows: i64,
        #[arg(long)]
        at: Option<String>,
    },
    /// Characteristic polynomial of the n×n Hoggatt matrix.
    HoggattCharpoly { n: usize },
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bound = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("invalid bound {t:?} in range {s:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (bound(a)?, bound(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = bound(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}
