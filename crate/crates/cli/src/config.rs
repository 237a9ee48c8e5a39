use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclo_core::identities::Identity;
use cyclo_core::{DivisorSet, RegularSystem};

/// Range cap for `phi`, `factor`, `table` and single-identity `verify`.
pub const DEFAULT_COMPUTE_MAX: u64 = 500;
/// Range cap for `verify --identity all`.
pub const DEFAULT_FULL_VERIFY_MAX: u64 = 120;

#[derive(Parser, Debug)]
#[command(name = "cyclo", version, about = "Generalized cyclotomic polynomials over regular divisor systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print Phi_(A,S,n) with ascending coefficients and its expansion.
    Phi(Common),
    /// Factor Phi_(A,S,n) into classical cyclotomic polynomials.
    Factor(Common),
    /// Check identities over a range and report counterexamples.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated identity ids, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
    },
    /// Tabulate phi_(A,S), mu_(A,S), h_(A,S) and c_(A,S,n)(k).
    Table(Common),
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = SystemArg::D)]
    pub system: SystemArg,
    /// one | nonone | squares | primes | list:<ascending csv>
    #[arg(long, default_value = "one", value_parser = parse_set)]
    pub set: SetArg,
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    pub n: Option<u64>,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<RangeArg>,
    /// Fix `k` for Ramanujan-sum columns and `k`-indexed identities.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..=65536))]
    pub precision_bits: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SystemArg {
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "E", alias = "e")]
    E,
}

impl SystemArg {
    pub fn system(self) -> RegularSystem {
        match self {
            SystemArg::D => RegularSystem::all_divisors(),
            SystemArg::U => RegularSystem::unitary(),
            SystemArg::E => RegularSystem::even_odd(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub enum SetArg {
    One,
    NonOne,
    Squares,
    Primes,
    List(Vec<u64>),
}

impl SetArg {
    pub fn set(&self) -> DivisorSet {
        match self {
            SetArg::One => DivisorSet::one(),
            SetArg::NonOne => DivisorSet::non_one(),
            SetArg::Squares => DivisorSet::squares(),
            SetArg::Primes => DivisorSet::primes(),
            SetArg::List(v) => DivisorSet::explicit(v),
        }
    }
}

fn parse_set(s: &str) -> Result<SetArg, String> {
    match s {
        "one" => Ok(SetArg::One),
        "nonone" => Ok(SetArg::NonOne),
        "squares" => Ok(SetArg::Squares),
        "primes" => Ok(SetArg::Primes),
        _ => {
            let csv = s.strip_prefix("list:").ok_or_else(|| format!("unknown set `{s}`"))?;
            let values = csv
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad list entry `{t}`: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            if values.contains(&0) {
                return Err("list entries must be positive".into());
            }
            if values.windows(2).any(|w| w[0] >= w[1]) {
                return Err("list entries must be strictly ascending".into());
            }
            Ok(SetArg::List(values))
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RangeArg {
    pub start: u64,
    pub end: u64,
}

fn parse_range(s: &str) -> Result<RangeArg, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let start: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let end: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if start == 0 || start > end {
        return Err(format!("range must satisfy 1 <= A <= B, got {start}..{end}"));
    }
    Ok(RangeArg { start, end })
}

impl Common {
    /// The requested `n` values, checked against `cap` (or `CYCLO_MAX_N`).
    pub fn range(&self, cap: u64) -> Result<RangeInclusive<u64>, String> {
        let cap = match std::env::var("CYCLO_MAX_N") {
            Ok(v) => v.parse().map_err(|_| format!("CYCLO_MAX_N must be a positive integer, got `{v}`"))?,
            Err(_) => cap,
        };
        let (start, end) = match (self.n, self.range) {
            (Some(n), _) => (n, n),
            (None, Some(r)) => (r.start, r.end),
            (None, None) => unreachable!("clap requires --n or --range"),
        };
        if start == 0 {
            return Err("n must be positive".into());
        }
        if end > cap {
            return Err(format!("n = {end} exceeds the cap {cap} (set CYCLO_MAX_N to raise it)"));
        }
        Ok(start..=end)
    }
}

pub fn parse_identities(s: &str) -> Result<Vec<Identity>, String> {
    if s == "all" {
        return Ok(Identity::ALL.to_vec());
    }
    s.split(',').map(|t| t.trim().parse::<Identity>().map_err(|e| e.to_string())).collect()
}
