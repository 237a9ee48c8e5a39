//! Dirichlet characters with exact values in cyclotomic integers.
//!
//! `(Z/n)^x` is split by CRT into prime-power components, each with one
//! generator (two for `2^a`, `a >= 3`: `-1` and `5`) and a discrete-log
//! table. A character is an exponent vector on the generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{self, fact};
use crate::cyclo_int::CycloInt;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::system::{positive, RegularSystem};

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut r = 1u128 % m128;
    let mut b128 = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

fn primitive_root(p: u64, q: u64) -> u64 {
    let order = q / p * (p - 1);
    let primes: Vec<u64> = fact(order).primes().collect();
    (2..q)
        .find(|&g| g % p != 0 && primes.iter().all(|&r| pow_mod(g, order / r, q) != 1))
        .expect("odd prime powers have primitive roots")
}

#[derive(Debug)]
struct Component {
    modulus: u64,
    /// `logs[x]` holds the exponents of `x` on this component's generators,
    /// empty for non-units.
    logs: Vec<Vec<u64>>,
}

#[derive(Debug)]
struct Generator {
    order: u64,
    /// Generator residue mod `n`: the component generator, `1` elsewhere.
    residue: u64,
}

/// The character group of `(Z/n)^x`, shared by all characters mod `n`.
#[derive(Debug)]
pub struct DirichletGroup {
    n: u64,
    components: Vec<Component>,
    gens: Vec<Generator>,
    exponent: u64,
}

type GroupCache = RwLock<HashMap<u64, Arc<DirichletGroup>>>;

impl DirichletGroup {
    /// The (cached) group mod `n`.
    pub fn get(n: u64) -> Result<Arc<DirichletGroup>> {
        static CACHE: OnceLock<GroupCache> = OnceLock::new();
        let cache = CACHE.get_or_init(GroupCache::default);
        positive(n)?;
        if let Some(g) = cache.read().unwrap().get(&n) {
            return Ok(g.clone());
        }
        let group = Arc::new(Self::build(n));
        Ok(cache.write().unwrap().entry(n).or_insert(group).clone())
    }

    fn build(n: u64) -> DirichletGroup {
        let mut components = Vec::new();
        let mut gens = Vec::new();
        for &(p, a) in fact(n).factors() {
            let q = p.pow(a);
            let mut logs = vec![Vec::new(); q as usize];
            let local: Vec<(u64, u64)> = if p != 2 {
                let g = primitive_root(p, q);
                let order = q / p * (p - 1);
                let mut x = 1;
                for e in 0..order {
                    logs[x as usize] = vec![e];
                    x = x * g % q;
                }
                vec![(g, order)]
            } else if a == 1 {
                logs[1] = vec![];
                vec![]
            } else if a == 2 {
                logs[1] = vec![0];
                logs[3] = vec![1];
                vec![(3, 2)]
            } else {
                let half = q / 4;
                let mut x = 1;
                for t in 0..half {
                    logs[x as usize] = vec![0, t];
                    logs[(q - x) as usize] = vec![1, t];
                    x = x * 5 % q;
                }
                vec![(q - 1, 2), (5, half)]
            };
            let cofactor = n / q;
            for (g, order) in local {
                // x = 1 + cofactor * t with x = g (mod q)
                let t = (g + q - 1) % q * inverse_mod(cofactor % q, q) % q;
                let residue = (1 + cofactor as u128 * t as u128) as u64 % n.max(2);
                gens.push(Generator { order, residue });
            }
            components.push(Component { modulus: q, logs });
        }
        let exponent = gens.iter().fold(1, |l, g| l.lcm(&g.order));
        DirichletGroup { n, components, gens, exponent }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Orders of the generators, in the order of the exponent vectors.
    pub fn generator_orders(&self) -> Vec<u64> {
        self.gens.iter().map(|g| g.order).collect()
    }

    /// Residues mod `n` of the generators.
    pub fn generators(&self) -> Vec<u64> {
        self.gens.iter().map(|g| g.residue).collect()
    }

    /// Exponent of the group (the Carmichael function of `n`).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Discrete logarithms of a unit on the generators, `None` for non-units.
    fn logs(&self, k: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.gens.len());
        for c in &self.components {
            let l = &c.logs[(k % c.modulus) as usize];
            if l.is_empty() && c.modulus > 2 {
                return None;
            }
            if c.modulus == 2 && k.is_multiple_of(2) {
                return None;
            }
            out.extend_from_slice(l);
        }
        Some(out)
    }
}

/// All `phi(n)` characters mod `n`, principal first.
pub fn enumerate_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    let group = DirichletGroup::get(n)?;
    let orders = group.generator_orders();
    let mut out = Vec::new();
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter { group: group.clone(), exps: exps.clone() });
        // mixed-radix increment
        let mut i = 0;
        while i < exps.len() {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == exps.len() {
            return Ok(out);
        }
    }
}

#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<DirichletGroup>,
    /// `chi(g_i) = zeta_{o_i}^{e_i}`.
    exps: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.n == other.group.n && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} {:?}", self.group.n, self.exps)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl DirichletCharacter {
    pub fn principal(n: u64) -> Result<Self> {
        let group = DirichletGroup::get(n)?;
        let exps = vec![0; group.gens.len()];
        Ok(DirichletCharacter { group, exps })
    }

    /// The character with the given generator exponents (reduced mod the
    /// generator orders).
    pub fn from_exponents(n: u64, exps: &[u64]) -> Result<Self> {
        let group = DirichletGroup::get(n)?;
        if exps.len() != group.gens.len() {
            return Err(Error::InvalidArgument(format!(
                "characters mod {n} take {} generator exponents, got {}",
                group.gens.len(),
                exps.len()
            )));
        }
        let exps = exps.iter().zip(&group.gens).map(|(e, g)| e % g.order).collect();
        Ok(DirichletCharacter { group, exps })
    }

    pub fn modulus(&self) -> u64 {
        self.group.n
    }

    pub fn group(&self) -> &Arc<DirichletGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Order of `chi` in the character group.
    pub fn order(&self) -> u64 {
        self.exps.iter().zip(&self.group.gens).fold(1, |l, (&e, g)| l.lcm(&(g.order / e.gcd(&g.order))))
    }

    /// `chi(k) = zeta_ord^r`, returned as `Some(r)` with `ord = self.order()`,
    /// or `None` when `gcd(k, n) > 1`.
    pub fn exponent_at(&self, k: u64) -> Option<u64> {
        let logs = self.group.logs(k % self.group.n)?;
        let l = self.group.exponent;
        let s = logs
            .iter()
            .zip(&self.exps)
            .zip(&self.group.gens)
            .fold(0u128, |acc, ((&lg, &e), g)| (acc + lg as u128 * e as u128 * (l / g.order) as u128) % l as u128)
            as u64;
        let step = l / self.order();
        debug_assert_eq!(s % step, 0);
        Some(s / step)
    }

    /// `chi(k)` in `Z[zeta_ord]`.
    pub fn value(&self, k: u64) -> CycloInt<BigInt> {
        let ord = self.order();
        match self.exponent_at(k) {
            Some(r) => CycloInt::root_of_unity(ord, r),
            None => CycloInt::zero(ord),
        }
    }

    /// The complex conjugate character.
    pub fn conj(&self) -> Self {
        let exps = self.exps.iter().zip(&self.group.gens).map(|(&e, g)| (g.order - e) % g.order).collect();
        DirichletCharacter { group: self.group.clone(), exps }
    }

    /// The least `d | n` such that `chi` is trivial on units `k = 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        let n = self.group.n;
        let units: Vec<u64> = (1..=n).filter(|&k| arith::gcd(k, n) == 1).collect();
        arith::divisors(n)
            .into_iter()
            .find(|&d| units.iter().filter(|&&k| k % d == 1 % d).all(|&k| self.exponent_at(k) == Some(0)))
            .expect("d = n always qualifies")
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.group.n
    }

    /// The primitive character mod the conductor agreeing with `chi` on
    /// integers coprime to `n`.
    pub fn induced_primitive(&self) -> Result<DirichletCharacter> {
        let n = self.group.n;
        let d = self.conductor();
        let target = DirichletGroup::get(d)?;
        let ord = self.order();
        let mut exps = Vec::with_capacity(target.gens.len());
        for g in &target.gens {
            let k = (0..n / d)
                .map(|i| g.residue % d + i * d)
                .find(|&k| arith::gcd(k, n) == 1)
                .expect("units mod d lift to units mod n");
            let r = self.exponent_at(k).expect("k is a unit");
            if !(r * g.order).is_multiple_of(ord) {
                return Err(Error::InternalInconsistency(format!(
                    "{self} does not factor through (Z/{d})^x at generator {}",
                    g.residue
                )));
            }
            exps.push(r * g.order / ord);
        }
        Ok(DirichletCharacter { group: target, exps })
    }
}

/// `sum_{k <= n, k = s (mod d)} chi(k)` for primitive `chi` and a proper
/// divisor `d` of `n`; the sum vanishes for every such `d` and `s`.
pub fn char_residue_class_sum(chi: &DirichletCharacter, d: u64, s: i64) -> Result<CycloInt<BigInt>> {
    let n = chi.modulus();
    if d == 0 || !n.is_multiple_of(d) || d == n {
        return Err(Error::InvalidArgument(format!("{d} is not a proper divisor of {n}")));
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(n));
    }
    let start = s.rem_euclid(d as i64) as u64;
    let class = (0..n / d).map(|i| start + i * d).filter_map(|k| chi.exponent_at(k));
    Ok(CycloInt::from_exponents(chi.order(), class))
}

fn check_crt_args(n: u64, d: u64, e: u64, r: u64) -> Result<()> {
    positive(n)?;
    if d == 0 || e == 0 || !n.is_multiple_of(d) || !n.is_multiple_of(e) || r == 0 || r > d {
        return Err(Error::InvalidArgument(format!("need d | n, e | n, 1 <= r <= d; got n={n} d={d} e={e} r={r}")));
    }
    Ok(())
}

/// `#{j <= n : (j, n) = 1, j = r (mod d), j = 1 (mod e)}` by direct count.
pub fn count_crt_coprime_brute(n: u64, d: u64, e: u64, r: u64) -> Result<u64> {
    check_crt_args(n, d, e, r)?;
    Ok((1..=n).filter(|&j| arith::gcd(j, n) == 1 && j % d == r % d && j % e == 1 % e).count() as u64)
}

/// Closed form `phi(n) phi((d, e)) / (phi(d) phi(e))` when `(r, d) = 1` and
/// `(d, e) | r - 1`, zero otherwise.
pub fn count_crt_coprime_closed(n: u64, d: u64, e: u64, r: u64) -> Result<u64> {
    check_crt_args(n, d, e, r)?;
    let g = arith::gcd(d, e);
    if arith::gcd(r, d) != 1 || !(r - 1).is_multiple_of(g) {
        return Ok(0);
    }
    Ok(arith::euler_phi(n) * arith::euler_phi(g) / (arith::euler_phi(d) * arith::euler_phi(e)))
}

/// The count computed both ways; a disagreement is an internal error.
pub fn count_crt_coprime(n: u64, d: u64, e: u64, r: u64) -> Result<u64> {
    let brute = count_crt_coprime_brute(n, d, e, r)?;
    let closed = count_crt_coprime_closed(n, d, e, r)?;
    if brute != closed {
        return Err(Error::InternalInconsistency(format!(
            "CRT count n={n} d={d} e={e} r={r}: brute {brute}, closed form {closed}"
        )));
    }
    Ok(brute)
}

/// `sum_{j=1}^n f((j-1, n)_A) chi(j)` in `Z[zeta_ord]`.
pub fn menon_char_lhs<T, F>(sys: &RegularSystem, f: F, n: u64, chi: &DirichletCharacter) -> Result<CycloInt<T>>
where
    T: Coefficient,
    F: Fn(u64) -> T,
{
    positive(n)?;
    sys.a_divisors(n)?;
    if chi.modulus() != n {
        return Err(Error::InvalidArgument(format!("{chi} is not a character mod {n}")));
    }
    let terms = (1..=n).filter_map(|j| chi.exponent_at(j).map(|r| (r, f(sys.gcd_a(j - 1, n)))));
    Ok(CycloInt::from_weighted_exponents(chi.order(), terms))
}

/// The left-hand side reduced to a rational integer; `NonRationalResult`
/// if it is not one.
pub fn menon_char_sum<T, F>(sys: &RegularSystem, f: F, n: u64, chi: &DirichletCharacter) -> Result<T>
where
    T: Coefficient,
    F: Fn(u64) -> T,
{
    menon_char_lhs(sys, f, n, chi)?.as_integer().ok_or(Error::NonRationalResult { modulus: n })
}

/// `phi(n) sum_{e in A(n), cond(chi) | e} (mu_A *_A f)(e) / phi(e)`.
pub fn menon_char_rhs<T, F>(sys: &RegularSystem, f: F, n: u64, chi: &DirichletCharacter) -> Result<BigRational>
where
    T: Coefficient,
    F: Fn(u64) -> T,
{
    positive(n)?;
    let cond = chi.conductor();
    let mut total = BigRational::zero();
    for e in sys.a_divisors(n)?.into_iter().filter(|e| e % cond == 0) {
        let conv: T = sys.convolve(|d| T::from_i64(sys.mobius_a(d)), &f, e);
        total += BigRational::new(conv.to_bigint(), BigInt::from(arith::euler_phi(e)));
    }
    Ok(total * BigInt::from(arith::euler_phi(n)))
}
