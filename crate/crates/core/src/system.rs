//! Regular systems of divisors.
//!
//! A system `A` is given by its type function `t_A(p^a)`; the divisor set
//! `A(n)` is always synthesized multiplicatively from the per-prime chains
//! `A(p^a) = {1, p^t, p^{2t}, ..., p^a}`.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Num;

use crate::arith::{self, fact, Factorization};
use crate::error::{Error, Result, Violation, ViolationReason};

pub type TypeFn = dyn Fn(u64, u32) -> u32 + Send + Sync;

#[derive(Clone)]
pub struct RegularSystem {
    name: String,
    type_fn: Arc<TypeFn>,
    /// Built-in systems are regular for every prime power and skip checks.
    trusted: bool,
    checked: Arc<RwLock<HashSet<(u64, u32)>>>,
}

impl fmt::Debug for RegularSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegularSystem").field("name", &self.name).finish()
    }
}

impl fmt::Display for RegularSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl RegularSystem {
    fn builtin(name: &str, f: impl Fn(u64, u32) -> u32 + Send + Sync + 'static) -> Self {
        RegularSystem { name: name.to_string(), type_fn: Arc::new(f), trusted: true, checked: Arc::default() }
    }

    /// `D`: all divisors, `t(p^a) = 1`.
    pub fn all_divisors() -> Self {
        Self::builtin("D", |_, _| 1)
    }

    /// `U`: unitary divisors, `t(p^a) = a`.
    pub fn unitary() -> Self {
        Self::builtin("U", |_, a| a)
    }

    /// `E`: `t(p^a) = 2` for even `a`, `a` for odd `a`.
    pub fn even_odd() -> Self {
        Self::builtin("E", |_, a| if a % 2 == 0 { 2 } else { a })
    }

    pub fn builtins() -> [RegularSystem; 3] {
        [Self::all_divisors(), Self::unitary(), Self::even_odd()]
    }

    /// Look up a built-in system by its one-letter name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "D" | "d" => Some(Self::all_divisors()),
            "U" | "u" => Some(Self::unitary()),
            "E" | "e" => Some(Self::even_odd()),
            _ => None,
        }
    }

    /// A system from a user type function. Prime powers are checked lazily
    /// on first use; call [`RegularSystem::validate`] to check a range
    /// eagerly.
    pub fn custom(name: impl Into<String>, type_fn: impl Fn(u64, u32) -> u32 + Send + Sync + 'static) -> Self {
        RegularSystem { name: name.into(), type_fn: Arc::new(type_fn), trusted: false, checked: Arc::default() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn check_prime_power(&self, p: u64, a: u32) -> Result<u32, Violation> {
        let t = (self.type_fn)(p, a);
        if self.trusted || self.checked.read().unwrap().contains(&(p, a)) {
            return Ok(t);
        }
        let violation = |reason, t| Violation { system: self.name.clone(), p, a, t, reason };
        if t == 0 || !a.is_multiple_of(t) {
            return Err(violation(ViolationReason::TypeNotDivisor, t));
        }
        for i in 1..=a / t {
            let ti = (self.type_fn)(p, i * t);
            if ti != t {
                return Err(violation(ViolationReason::ChainBroken, ti));
            }
        }
        self.checked.write().unwrap().insert((p, a));
        Ok(t)
    }

    /// Check both regularity conditions for every prime power `p^a <= max_n`,
    /// primes ascending then exponents ascending.
    pub fn validate(&self, max_n: u64) -> Result<(), Violation> {
        for p in (2..=max_n).filter(|&p| arith::is_prime(p)) {
            let mut pa = p;
            let mut a = 1u32;
            loop {
                self.check_prime_power(p, a)?;
                match pa.checked_mul(p) {
                    Some(next) if next <= max_n => {
                        pa = next;
                        a += 1;
                    }
                    _ => break,
                }
            }
        }
        Ok(())
    }

    /// The type `t_A(p^a)`.
    ///
    /// # Panics
    /// If a custom type function violates regularity at `p^a`.
    pub fn type_of(&self, p: u64, a: u32) -> u32 {
        self.check_prime_power(p, a).unwrap_or_else(|v| panic!("{v}"))
    }

    /// `(p, a, t)` for every `p^a || n`.
    fn typed_factors(&self, f: &Factorization) -> Vec<(u64, u32, u32)> {
        f.factors().iter().map(|&(p, a)| (p, a, self.type_of(p, a))).collect()
    }

    /// `A(n)` in ascending order.
    pub fn a_divisors(&self, n: u64) -> Result<Vec<u64>> {
        let f = arith::factorize(n)?;
        let mut out = vec![1u64];
        for &(p, a) in f.factors() {
            let t = self.check_prime_power(p, a)?;
            let step = p.pow(t);
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..a / t {
                pk *= step;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `A(n)`, panicking where [`RegularSystem::a_divisors`] would fail.
    pub fn members(&self, n: u64) -> Vec<u64> {
        self.a_divisors(n).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Whether `d` is in `A(n)`.
    pub fn contains(&self, n: u64, d: u64) -> bool {
        if d == 0 || !n.is_multiple_of(d) {
            return false;
        }
        let fd = fact(d);
        self.typed_factors(&fact(n)).into_iter().all(|(p, _, t)| fd.valuation(p).is_multiple_of(t))
    }

    /// `(j, n)_A`: the largest `d` in `A(n)` dividing `j`; `(0, n)_A = n`.
    pub fn gcd_a(&self, j: u64, n: u64) -> u64 {
        assert!(n > 0, "gcd_A needs n >= 1");
        let g = fact(arith::gcd(j, n));
        self.typed_factors(&fact(n)).into_iter().map(|(p, _, t)| p.pow(g.valuation(p) / t * t)).product()
    }

    /// Generalized Moebius function: `-1` per A-primitive prime power, 0 if any
    /// prime power is not A-primitive.
    pub fn mobius_a(&self, n: u64) -> i64 {
        let mut mu = 1;
        for (_, a, t) in self.typed_factors(&fact(n)) {
            if t != a {
                return 0;
            }
            mu = -mu;
        }
        mu
    }

    /// `A(n) = {1, n}` with `n > 1`.
    pub fn is_primitive(&self, n: u64) -> bool {
        let f = fact(n);
        f.factors().len() == 1 && {
            let (p, a) = f.factors()[0];
            self.type_of(p, a) == a
        }
    }

    /// `kappa_A(n) = prod p^t`.
    pub fn kappa_a(&self, n: u64) -> u64 {
        self.typed_factors(&fact(n)).into_iter().map(|(p, _, t)| p.pow(t)).product()
    }

    /// `gamma_A(n) = n kappa(n) / kappa_A(n) = prod p^(a - t + 1)`.
    pub fn gamma_a(&self, n: u64) -> u64 {
        self.typed_factors(&fact(n)).into_iter().map(|(p, a, t)| p.pow(a - t + 1)).product()
    }

    /// `phi_A(n) = n prod (1 - p^-t)`.
    pub fn euler_phi_a(&self, n: u64) -> u64 {
        self.typed_factors(&fact(n)).into_iter().map(|(p, a, t)| p.pow(a) - p.pow(a - t)).product()
    }

    /// `(f *_A g)(n) = sum_{d in A(n)} f(d) g(n/d)`.
    pub fn convolve<T, F, G>(&self, f: F, g: G, n: u64) -> T
    where
        T: Num + Clone,
        F: Fn(u64) -> T,
        G: Fn(u64) -> T,
    {
        self.members(n).into_iter().fold(T::zero(), |acc, d| acc + f(d) * g(n / d))
    }

    /// Divisors `d | n` with `gamma_A(n) | d`.
    pub fn core_divisors(&self, n: u64) -> Vec<u64> {
        let gamma = self.gamma_a(n);
        arith::divisors(n / gamma).into_iter().map(|e| e * gamma).collect()
    }

    /// `g_A(n) = sum_{d | n, gamma_A(n) | d} g(d)`, the unique function with
    /// `sum_{d | n} g(d) = sum_{d in A(n)} g_A(d)`.
    pub fn lift_via_core<T, G>(&self, g: G, n: u64) -> T
    where
        T: Num + Clone,
        G: Fn(u64) -> T,
    {
        self.core_divisors(n).into_iter().fold(T::zero(), |acc, d| acc + g(d))
    }

    /// `(mu_A *_A f)(n)`.
    pub fn mobius_transform<T, F>(&self, f: F, n: u64) -> T
    where
        T: Num + Clone + From<i64>,
        F: Fn(u64) -> T,
    {
        self.convolve(|d| T::from(self.mobius_a(d)), f, n)
    }
}

/// Rejects 0 where a positive integer is required.
pub(crate) fn positive(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::ZeroArgument)
    } else {
        Ok(n)
    }
}
