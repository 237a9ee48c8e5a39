//! Divisor-value sets `S` and the `(A, S)`-generalized arithmetic functions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::system::{positive, RegularSystem};

pub type MemberFn = dyn Fn(u64) -> bool + Send + Sync;

/// A set `S` of positive integers given by its characteristic function.
#[derive(Clone)]
pub struct DivisorSet {
    name: String,
    member: Arc<MemberFn>,
    multiplicative: bool,
}

impl fmt::Debug for DivisorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DivisorSet").field("name", &self.name).field("multiplicative", &self.multiplicative).finish()
    }
}

impl fmt::Display for DivisorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl DivisorSet {
    pub fn new(
        name: impl Into<String>,
        member: impl Fn(u64) -> bool + Send + Sync + 'static,
        claims_multiplicative: bool,
    ) -> Self {
        DivisorSet { name: name.into(), member: Arc::new(member), multiplicative: claims_multiplicative }
    }

    /// `{1}`
    pub fn one() -> Self {
        Self::new("one", |n| n == 1, true)
    }

    /// `N \ {1}`
    pub fn non_one() -> Self {
        Self::new("nonone", |n| n != 1, false)
    }

    /// Perfect squares.
    pub fn squares() -> Self {
        Self::new("squares", arith::is_square, true)
    }

    pub fn primes() -> Self {
        Self::new("primes", arith::is_prime, false)
    }

    /// A finite set. Never flagged multiplicative.
    pub fn explicit(values: &[u64]) -> Self {
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        let name = format!("list:{}", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        Self::new(name, move |n| v.binary_search(&n).is_ok(), false)
    }

    pub fn builtins() -> [DivisorSet; 4] {
        [Self::one(), Self::non_one(), Self::squares(), Self::primes()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, n: u64) -> bool {
        (self.member)(n)
    }

    /// `rho_S(n)` as 0/1.
    pub fn rho(&self, n: u64) -> i64 {
        self.contains(n) as i64
    }

    pub fn claims_multiplicative(&self) -> bool {
        self.multiplicative
    }

    /// Spot-check the multiplicativity claim on coprime pairs with product
    /// at most `bound`.
    pub fn validate_multiplicative(&self, bound: u64) -> Result<()> {
        if !self.multiplicative {
            return Ok(());
        }
        if !self.contains(1) {
            return Err(Error::InvalidArgument(format!("multiplicative set `{}` must contain 1", self.name)));
        }
        for m in 2..=bound {
            for n in m + 1..=bound / m {
                if arith::gcd(m, n) == 1 && self.contains(m * n) != (self.contains(m) && self.contains(n)) {
                    return Err(Error::InvalidArgument(format!(
                        "set `{}` is not multiplicative at {m} * {n}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `mu_(A,S)(n) = sum_{d in A(n)} mu_A(d) rho_S(n/d)`.
pub fn mobius_as(sys: &RegularSystem, set: &DivisorSet, n: u64) -> i64 {
    sys.convolve(|d| sys.mobius_a(d), |m| set.rho(m), n)
}

/// The `A`-convolution inverse of `mu_(A,S)`, by recursion over `A(n)`.
pub fn h_as(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<BigInt> {
    positive(n)?;
    if !set.contains(1) {
        return Err(Error::SetExcludesOne(set.name().to_string()));
    }
    let members = sys.a_divisors(n)?;
    let mut memo: HashMap<u64, BigInt> = HashMap::with_capacity(members.len());
    // A(d) is a subset of A(n) for d in A(n), so ascending order suffices
    for &d in &members {
        let value = if d == 1 {
            BigInt::one()
        } else {
            let partial = sys
                .members(d)
                .into_iter()
                .filter(|&e| e < d)
                .fold(BigInt::zero(), |acc, e| acc + &memo[&e] * mobius_as(sys, set, d / e));
            -partial
        };
        memo.insert(d, value);
    }
    Ok(memo.remove(&n).expect("n is in A(n)"))
}

/// `phi_(A,S)(n) = sum_{d in A(n)} d mu_(A,S)(n/d)`.
pub fn euler_phi_as(sys: &RegularSystem, set: &DivisorSet, n: u64) -> u64 {
    let v: i64 = sys.convolve(|d| d as i64, |m| mobius_as(sys, set, m), n);
    debug_assert!(v >= 0);
    v as u64
}

/// `c_(A,S,n)(k) = sum_{d in A(n), d | k} d mu_(A,S)(n/d)`; `k = 0` is allowed.
pub fn ramanujan_as(sys: &RegularSystem, set: &DivisorSet, n: u64, k: u64) -> i64 {
    sys.members(n).into_iter().filter(|&d| k.is_multiple_of(d)).map(|d| d as i64 * mobius_as(sys, set, n / d)).sum()
}

/// Hoelder-type closed form for `c_(A,n)(k)` with `S = {1}`.
pub fn ramanujan_a_holder(sys: &RegularSystem, n: u64, k: u64) -> Result<i64> {
    positive(n)?;
    let m = n / sys.gcd_a(k, n);
    let num = sys.euler_phi_a(n) as i64 * sys.mobius_a(m);
    let den = sys.euler_phi_a(m) as i64;
    if num % den != 0 {
        return Err(Error::InternalInconsistency(format!(
            "phi_A({n}) mu_A({m}) is not divisible by phi_A({m}) in system {sys}"
        )));
    }
    Ok(num / den)
}

/// `c_(A,n)(k)` as a sum of classical Ramanujan sums over the core divisors.
pub fn ramanujan_via_gamma(sys: &RegularSystem, n: u64, k: u64) -> i64 {
    sys.lift_via_core(|d| arith::ramanujan_classical(d, k), n)
}
