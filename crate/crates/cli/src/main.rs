mod config;

use std::process::ExitCode;

use clap::Parser;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use cyclo_core::cyclotomic::classical_factors;
use cyclo_core::divisor_set::{euler_phi_as, h_as, mobius_as, ramanujan_as};
use cyclo_core::identities::{sweep, CheckOptions};
use cyclo_core::{cyclotomic, phi_as, DivisorSet, Error, IntPolynomial, RegularSystem};

use config::{parse_identities, Cli, Command, Common, Format, DEFAULT_COMPUTE_MAX, DEFAULT_FULL_VERIFY_MAX};

enum Failure {
    /// Exit 1: some identity did not hold.
    Verification,
    /// Exit 2: bad flags or arguments.
    Usage(String),
    /// Exit 3: a library invariant broke.
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroArgument | Error::InvalidArgument(_) | Error::SetExcludesOne(_) => Failure::Usage(e.to_string()),
            e => Failure::Internal(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Phi(c) => cmd_phi(c),
        Command::Factor(c) => cmd_factor(c),
        Command::Verify { common, identity } => cmd_verify(common, identity),
        Command::Table(c) => cmd_table(c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal invariant violated: {e}");
            ExitCode::from(3)
        }
    }
}

/// Run `f` over every requested `n` in parallel, keeping input order.
fn per_n<T: Send>(
    c: &Common,
    f: impl Fn(&RegularSystem, &DivisorSet, u64) -> Result<T, Failure> + Sync,
) -> Result<Vec<T>, Failure> {
    let range = c.range(DEFAULT_COMPUTE_MAX).map_err(Failure::Usage)?;
    let (sys, set) = (c.system.system(), c.set.set());
    range.into_par_iter().map(|n| f(&sys, &set, n)).collect()
}

fn emit_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string(value).expect("plain data serializes"));
}

#[derive(Serialize)]
struct PhiRecord {
    n: u64,
    system: String,
    set: String,
    degree: usize,
    coeffs: Vec<String>,
}

fn cmd_phi(c: &Common) -> Result<(), Failure> {
    let polys = per_n(c, |sys, set, n| Ok((n, phi_as(sys, set, n)?)))?;
    for (n, p) in polys {
        let degree = p.degree().expect("Phi_(A,S,n) is monic");
        let coeffs: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
        match c.format {
            Format::Json => emit_json(&PhiRecord {
                n,
                system: c.system.system().name().to_string(),
                set: c.set.set().name().to_string(),
                degree,
                coeffs,
            }),
            Format::Text => {
                println!("n={n} system={} set={} degree={degree}", c.system.system().name(), c.set.set().name());
                println!("coeffs: {}", coeffs.join(" "));
                println!("poly: {p}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Factor {
    d: u64,
    multiplicity: u32,
}

#[derive(Serialize)]
struct FactorRecord {
    n: u64,
    system: String,
    set: String,
    factors: Vec<Factor>,
}

fn cmd_factor(c: &Common) -> Result<(), Failure> {
    let rows = per_n(c, |sys, set, n| {
        let factors = classical_factors(sys, set, n)?;
        let product: IntPolynomial = factors.iter().map(|(&d, &m)| cyclotomic(d).pow(m)).product();
        let direct = phi_as(sys, set, n)?;
        if product != direct {
            return Err(Failure::Internal(Error::RouteMismatch {
                n,
                detail: format!("product of classical factors {product} differs from {direct}"),
            }));
        }
        Ok((n, factors))
    })?;
    for (n, factors) in rows {
        let system = c.system.system().name().to_string();
        let set = c.set.set().name().to_string();
        match c.format {
            Format::Json => emit_json(&FactorRecord {
                n,
                system,
                set,
                factors: factors.into_iter().map(|(d, multiplicity)| Factor { d, multiplicity }).collect(),
            }),
            Format::Text => {
                let list: Vec<String> =
                    factors.iter().map(|(d, m)| if *m == 1 { d.to_string() } else { format!("{d}^{m}") }).collect();
                println!("n={n} system={system} set={set} factors: [{}]", list.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_verify(c: &Common, identity: &str) -> Result<(), Failure> {
    let identities = parse_identities(identity).map_err(Failure::Usage)?;
    let cap = if identity == "all" { DEFAULT_FULL_VERIFY_MAX } else { DEFAULT_COMPUTE_MAX };
    let range = c.range(cap).map_err(Failure::Usage)?;
    let opts = CheckOptions { precision_bits: c.precision_bits as usize, k: c.k, ..CheckOptions::default() };
    let reports = sweep(&identities, &c.system.system(), &c.set.set(), range, &opts)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for r in &reports {
        match c.format {
            Format::Json => emit_json(r),
            Format::Text => println!("{r}"),
        }
    }
    if c.format == Format::Text {
        println!("{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed);
    }
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    system: String,
    set: String,
    phi: u64,
    mu: i64,
    /// Absent when `1` is not in the set.
    h: Option<String>,
    /// `(k, c_(A,S,n)(k))` pairs.
    c: Vec<(u64, i64)>,
}

fn cmd_table(c: &Common) -> Result<(), Failure> {
    let rows = per_n(c, |sys, set, n| {
        let h = match h_as(sys, set, n) {
            Ok(h) => Some(h.to_string()),
            Err(Error::SetExcludesOne(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let ks: Vec<u64> = c.k.map_or_else(|| (1..=n).collect(), |k| vec![k]);
        Ok(TableRow {
            n,
            system: sys.name().to_string(),
            set: set.name().to_string(),
            phi: euler_phi_as(sys, set, n),
            mu: mobius_as(sys, set, n),
            h,
            c: ks.into_iter().map(|k| (k, ramanujan_as(sys, set, n, k))).collect(),
        })
    })?;
    match c.format {
        Format::Json => rows.iter().for_each(emit_json),
        Format::Text => {
            let c_head = c.k.map_or_else(|| "c(1..n)".to_string(), |k| format!("c({k})"));
            println!("{:>6} {:>6} {:>4} {:>12}  {c_head}", "n", "phi", "mu", "h");
            for r in rows {
                let cs: Vec<String> = r.c.iter().map(|(_, v)| v.to_string()).collect();
                let h = r.h.unwrap_or_else(|| "-".into());
                println!("{:>6} {:>6} {:>4} {:>12}  {}", r.n, r.phi, r.mu, h, cs.join(" "));
            }
        }
    }
    Ok(())
}
