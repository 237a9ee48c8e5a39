//! Elementary multiplicative number theory on `u64`.

use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Canonical prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(p, a)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` in `n` (0 if `p` does not divide `n`).
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, a)| a)
    }
}

/// Smallest-prime-factor table; factorizations below this bound are read
/// off the table, larger ones fall back to wheel trial division.
const SIEVE_LIMIT: usize = 1 << 20;

fn spf_table() -> &'static [u32] {
    static SPF: OnceLock<Vec<u32>> = OnceLock::new();
    SPF.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut take = |n: &mut u64, p: u64| {
        let mut a = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
    };
    for p in [2u64, 3, 5] {
        take(&mut n, p);
    }
    // 2*3*5 wheel
    const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= n {
        take(&mut n, p);
        p += GAPS[i];
        i = (i + 1) % GAPS.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let factors = if (n as usize) <= SIEVE_LIMIT {
        let spf = spf_table();
        let mut m = n as usize;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = spf[m] as usize;
            let mut a = 0;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            out.push((p as u64, a));
        }
        out
    } else {
        trial_division(n)
    };
    Ok(Factorization { n, factors })
}

/// Factorization of a value already known to be positive.
pub(crate) fn fact(n: u64) -> Factorization {
    factorize(n).expect("positive argument")
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    divisors_of(&fact(n))
}

pub fn divisors_of(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, a) in f.factors() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    fact(n).factors().iter().map(|&(p, a)| (p - 1) * p.pow(a - 1)).product()
}

/// Number of divisors.
pub fn tau(n: u64) -> u64 {
    fact(n).factors().iter().map(|&(_, a)| a as u64 + 1).product()
}

pub fn mobius(n: u64) -> i64 {
    let f = fact(n);
    if f.factors().iter().any(|&(_, a)| a > 1) {
        0
    } else if f.factors().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn omega_small(n: u64) -> u32 {
    fact(n).factors().len() as u32
}

pub fn omega_big(n: u64) -> u32 {
    fact(n).factors().iter().map(|&(_, a)| a).sum()
}

pub fn liouville(n: u64) -> i64 {
    if omega_big(n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn squarefree_kernel(n: u64) -> u64 {
    fact(n).primes().product()
}

/// True iff every exponent in the factorization of `n` is odd (vacuously for 1).
pub fn is_exponentially_odd(n: u64) -> bool {
    fact(n).factors().iter().all(|&(_, a)| a % 2 == 1)
}

pub fn is_squarefree(n: u64) -> bool {
    fact(n).factors().iter().all(|&(_, a)| a == 1)
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && fact(n).factors() == [(n, 1)]
}

pub fn is_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Classical Ramanujan sum `c_n(k) = sum_{d | (k, n)} d mu(n/d)`.
pub fn ramanujan_classical(n: u64, k: u64) -> i64 {
    let g = gcd(k, n);
    divisors(g).into_iter().map(|d| d as i64 * mobius(n / d)).sum()
}
