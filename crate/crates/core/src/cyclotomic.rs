//! Classical and generalized cyclotomic polynomials.
//!
//! `Phi_(A,S,n)` has three exact constructions which must agree:
//! the signed product of binomials `x^d - 1` ([`phi_as_mobius_product`]),
//! the product of `Phi_(A,d)` over `d in A(n)` with `n/d in S`
//! ([`phi_as_via_phi_a`]) and the multiset of classical factors `Phi_e`
//! ([`phi_as_classical_product`]).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::arith;
use crate::divisor_set::{mobius_as, DivisorSet};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalFunctionProduct};
use crate::scalar::Coefficient;
use crate::system::{positive, RegularSystem};

type Cache = RwLock<HashMap<u64, Arc<Poly<BigInt>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Cache::default)
}

/// `Phi_n`, memoized; computed as `x^n - 1` divided by `Phi_d` for every
/// proper divisor `d`. Each division is checked to be exact.
pub fn cyclotomic(n: u64) -> Arc<Poly<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial index must be positive");
    if let Some(p) = cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = Poly::x_pow_minus_one(n as usize);
    for d in arith::divisors(n).into_iter().filter(|&d| d < n) {
        p = p.exact_div(&cyclotomic(d)).unwrap_or_else(|e| panic!("Phi_{d} does not divide x^{n} - 1: {e}"));
    }
    let p = Arc::new(p);
    cache().write().unwrap().entry(n).or_insert(p).clone()
}

/// `Phi_n` with coefficients in `T`.
pub fn cyclotomic_in<T: Coefficient>(n: u64) -> Poly<T> {
    cyclotomic(n).convert().expect("cyclotomic coefficients fit the scalar type")
}

/// `Psi_n = (x^n - 1) / Phi_n = prod_{d | n, d < n} Phi_d`.
pub fn inverse_cyclotomic(n: u64) -> Poly<BigInt> {
    arith::divisors(n).into_iter().filter(|&d| d < n).map(|d| (*cyclotomic(d)).clone()).product()
}

/// `Phi_(A,n) = prod_{d | n, gamma_A(n) | d} Phi_d`.
pub fn phi_a(sys: &RegularSystem, n: u64) -> Poly<BigInt> {
    sys.core_divisors(n).into_iter().map(|d| (*cyclotomic(d)).clone()).product()
}

/// The signed binomial product `prod_{d in A(n)} (x^d - 1)^{mu_(A,S)(n/d)}`
/// as an unresolved formal product.
pub fn mobius_product_factors(sys: &RegularSystem, set: &DivisorSet, n: u64) -> RationalFunctionProduct<BigInt> {
    sys.members(n).into_iter().map(|d| (Poly::x_pow_minus_one(d as usize), mobius_as(sys, set, n / d))).collect()
}

/// Route one: resolve the binomial product by multiply-then-divide.
pub fn phi_as_mobius_product(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
    positive(n)?;
    sys.a_divisors(n)?;
    mobius_product_factors(sys, set, n).resolve()
}

/// Route two: `prod_{d in A(n), n/d in S} Phi_(A,d)`.
pub fn phi_as_via_phi_a(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
    positive(n)?;
    Ok(sys.a_divisors(n)?.into_iter().filter(|&d| set.contains(n / d)).map(|d| phi_a(sys, d)).product())
}

/// Multiplicities of the classical factors `Phi_e` of `Phi_(A,S,n)`.
pub fn classical_factors(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<BTreeMap<u64, u32>> {
    positive(n)?;
    let mut out = BTreeMap::new();
    for d in sys.a_divisors(n)?.into_iter().filter(|&d| set.contains(n / d)) {
        for e in sys.core_divisors(d) {
            *out.entry(e).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Route three: the double product of classical cyclotomic polynomials.
pub fn phi_as_classical_product(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
    Ok(classical_factors(sys, set, n)?.into_iter().map(|(e, mult)| cyclotomic(e).pow(mult)).product())
}

/// `Phi_(A,S,n)`, built by all three routes and checked for agreement.
pub fn phi_as(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
    let r1 = phi_as_mobius_product(sys, set, n)?;
    let r2 = phi_as_via_phi_a(sys, set, n)?;
    let r3 = phi_as_classical_product(sys, set, n)?;
    if r1 != r2 {
        return Err(Error::RouteMismatch { n, detail: format!("binomial product {r1} != product of Phi_(A,d) {r2}") });
    }
    if r1 != r3 {
        return Err(Error::RouteMismatch { n, detail: format!("binomial product {r1} != classical factors {r3}") });
    }
    Ok(r1)
}

/// Unitary analogue of `Q_n`: roots `zeta_n^j` with `(j, n)_*` a square.
pub fn q_star(n: u64) -> Result<Poly<BigInt>> {
    phi_as(&RegularSystem::unitary(), &DivisorSet::squares(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor_set::euler_phi_as;

    fn p(c: &[i64]) -> Poly<BigInt> {
        Poly::from_i64s(c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic(105).coeffs().contains(&BigInt::from(-2)));
        for n in 1..=300u64 {
            let c = cyclotomic(n);
            assert!(c.is_monic());
            assert_eq!(c.degree(), Some(arith::euler_phi(n) as usize));
        }
    }

    #[test]
    fn cyclotomic_product_over_divisors() {
        for n in 1..=300u64 {
            let prod: Poly<BigInt> = arith::divisors(n).into_iter().map(|d| (*cyclotomic(d)).clone()).product();
            assert_eq!(prod, Poly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn inverse_cyclotomic_examples() {
        assert_eq!(inverse_cyclotomic(1), p(&[1]));
        assert_eq!(inverse_cyclotomic(4), p(&[-1, 0, 1]));
        for n in 1..=300u64 {
            let psi = inverse_cyclotomic(n);
            assert_eq!(&psi * &cyclotomic(n), Poly::x_pow_minus_one(n as usize));
            assert_eq!(psi.degree(), Some((n - arith::euler_phi(n)) as usize));
        }
    }

    #[test]
    fn phi_a_examples() {
        let d = RegularSystem::all_divisors();
        for n in 1..=300u64 {
            assert_eq!(phi_a(&d, n), *cyclotomic(n));
        }
        let u = RegularSystem::unitary();
        assert_eq!(phi_a(&u, 12), &p(&[1, -1, 1]) * &p(&[1, 0, -1, 0, 1]));
        let e = RegularSystem::even_odd();
        assert_eq!(phi_a(&e, 16), &*cyclotomic(8) * &*cyclotomic(16));
    }

    #[test]
    fn phi_a_matches_mobius_route_and_degree() {
        for sys in RegularSystem::builtins() {
            for n in 1..=200u64 {
                let a = phi_a(&sys, n);
                assert!(a.is_monic());
                assert_eq!(a.degree(), Some(sys.euler_phi_a(n) as usize));
                assert_eq!(a, phi_as_mobius_product(&sys, &DivisorSet::one(), n).unwrap(), "{sys} n={n}");
            }
        }
    }

    #[test]
    fn unitary_factorization_by_kernel() {
        // Phi*_n = prod_{d | n, kappa(d) = kappa(n)} Phi_d
        let u = RegularSystem::unitary();
        for n in 1..=200u64 {
            let k = arith::squarefree_kernel(n);
            let prod: Poly<BigInt> = arith::divisors(n)
                .into_iter()
                .filter(|&d| arith::squarefree_kernel(d) == k)
                .map(|d| (*cyclotomic(d)).clone())
                .product();
            assert_eq!(phi_a(&u, n), prod);
        }
    }

    #[test]
    fn phi_as_examples() {
        let d = RegularSystem::all_divisors();
        assert_eq!(phi_as(&d, &DivisorSet::squares(), 4).unwrap(), p(&[-1, 1, -1, 1]));
        assert_eq!(classical_factors(&d, &DivisorSet::squares(), 4).unwrap(), BTreeMap::from([(1, 1), (4, 1)]));
        for n in 1..=200u64 {
            assert_eq!(phi_as(&d, &DivisorSet::non_one(), n).unwrap(), inverse_cyclotomic(n));
        }
        for sys in RegularSystem::builtins() {
            for set in DivisorSet::builtins() {
                let expected = if set.contains(1) { p(&[-1, 1]) } else { p(&[1]) };
                assert_eq!(phi_as(&sys, &set, 1).unwrap(), expected);
            }
        }
    }

    #[test]
    fn q_n_matches_square_divisor_product() {
        let d = RegularSystem::all_divisors();
        for n in 1..=150u64 {
            let prod: Poly<BigInt> = arith::divisors(n)
                .into_iter()
                .filter(|&e| n % (e * e) == 0)
                .map(|e| (*cyclotomic(n / (e * e))).clone())
                .product();
            assert_eq!(phi_as(&d, &DivisorSet::squares(), n).unwrap(), prod);
            // Liouville form: Q_n = prod_{d | n} (x^d - 1)^lambda(n/d)
            let liouville: RationalFunctionProduct<BigInt> = arith::divisors(n)
                .into_iter()
                .map(|e| (Poly::x_pow_minus_one(e as usize), arith::liouville(n / e)))
                .collect();
            assert_eq!(liouville.resolve().unwrap(), prod);
        }
    }

    #[test]
    fn q_star_examples() {
        assert_eq!(q_star(1).unwrap(), p(&[-1, 1]));
        for q in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(q_star(q).unwrap(), *cyclotomic(q));
        }
    }

    #[test]
    fn routes_agree_and_degree_is_phi_as() {
        for sys in RegularSystem::builtins() {
            for set in DivisorSet::builtins().into_iter().chain([DivisorSet::explicit(&[2, 3, 4, 9])]) {
                for n in 1..=60u64 {
                    let poly = phi_as(&sys, &set, n).unwrap();
                    assert!(poly.is_monic());
                    assert_eq!(poly.degree(), Some(euler_phi_as(&sys, &set, n) as usize));
                }
            }
        }
    }

    #[test]
    fn invalid_custom_system_propagates() {
        let bad = RegularSystem::custom("bad", |_, _| 2);
        assert!(matches!(phi_as(&bad, &DivisorSet::one(), 6), Err(Error::Violation(_))));
        assert_eq!(phi_as(&RegularSystem::unitary(), &DivisorSet::one(), 0), Err(Error::ZeroArgument));
    }
}
